#!/usr/bin/env python3
"""Build manifest CSVs from the TID2013 database layout.

Expected layout:
    <root>/reference_images/I01.BMP ... I25.BMP
    <root>/distorted_images/iRR_DD_L.bmp   (RR reference, DD distortion type, L level)
    <root>/mos_with_names.txt              lines: "<mos> <filename>"

Scores are MOS (higher is better). By default every row's category is its
distortion type number (`type_DD`), which needs no grouping convention; the
overall "All" statistics are grouping-independent either way.

With --subset NAME one manifest restricted to that distortion-type group is
written instead, labeled with the group name. The groups below overlap (a
type may belong to several), which is why they cannot be expressed as a
single-category column of one manifest. Edit GROUPS if your reference uses a
different breakdown.

Usage:
    make_tid2013_manifest.py <tid_root> <out.csv> [--subset NAME]
"""

import sys
from pathlib import Path

GROUPS = {
    "Noise": {1, 2, 3, 4, 5, 6, 7, 19, 20, 21},
    "Actual": {1, 2, 3, 4, 5, 6, 7, 8, 9, 19, 20, 21},
    "Simple": {1, 2, 8, 9, 10, 11},
    "Exotic": {12, 13, 14, 15, 16, 17},
    "New": {18, 19, 20, 21, 22, 23, 24},
    "Color": {2, 7, 10, 18, 22, 23},
}


def main():
    args = sys.argv[1:]
    subset = None
    if "--subset" in args:
        i = args.index("--subset")
        subset = args[i + 1]
        del args[i : i + 2]
        if subset not in GROUPS:
            sys.exit(f"unknown subset '{subset}'; choose from {sorted(GROUPS)}")
    if len(args) != 2:
        sys.exit(__doc__)
    root = Path(args[0])
    out = Path(args[1])

    mos_file = root / "mos_with_names.txt"
    rows = []
    for line in mos_file.read_text().splitlines():
        line = line.strip()
        if not line:
            continue
        score, name = line.split()
        stem = name.lower().removesuffix(".bmp")  # iRR_DD_L
        ref_no, dist_no, _level = stem.lstrip("i").split("_")
        dist_type = int(dist_no)
        if subset and dist_type not in GROUPS[subset]:
            continue
        category = subset if subset else f"type_{dist_no}"
        rows.append((
            f"reference_images/I{ref_no}.BMP",
            f"distorted_images/{name}",
            score,
            f"type_{dist_no}",
            category,
        ))

    fixed = []
    for row in rows:
        ref, dist = row[0], row[1]
        if not (root / ref).is_file():
            alt = ref.replace(".BMP", ".bmp")
            if (root / alt).is_file():
                ref = alt
        if not (root / dist).is_file():
            alt = dist.replace(".bmp", ".BMP")
            if (root / alt).is_file():
                dist = alt
        fixed.append((ref, dist) + row[2:])
    missing = [p for row in fixed for p in row[:2] if not (root / p).is_file()]
    if missing:
        sys.exit(f"{len(missing)} image paths do not resolve, e.g. {missing[0]}")

    with open(out, "w", encoding="utf-8") as f:
        f.write(f"# database = TID2013{'-' + subset if subset else ''}\n")
        f.write("# convention = mos\n")
        f.write("ref,dist,score,distortion,category\n")
        for row in fixed:
            f.write(",".join(row) + "\n")
    print(f"wrote {len(fixed)} rows to {out}" + ("" if subset else " (expected 3000)"))


if __name__ == "__main__":
    main()
