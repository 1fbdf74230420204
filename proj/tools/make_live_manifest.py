#!/usr/bin/env python3
"""Build a manifest CSV from the LIVE release-2 database layout.

Expected layout (as distributed):
    <root>/refimgs/*.bmp
    <root>/jp2k/img1.bmp ... img227.bmp
    <root>/jpeg/img1.bmp ... img233.bmp
    <root>/wn/img1.bmp ... img174.bmp
    <root>/gblur/img1.bmp ... img174.bmp
    <root>/fastfading/img1.bmp ... img174.bmp
    <root>/dmos.mat           (dmos, orgs)
    <root>/refnames_all.mat   (refnames_all)

Rows flagged as originals (orgs == 1) are dropped, leaving the 779 distorted
images. Scores are DMOS, so the manifest carries `convention = dmos`.

Usage: make_live_manifest.py <live_root> <out.csv>
"""

import sys
from pathlib import Path

import scipy.io

FOLDERS = [
    ("jp2k", 227, "Jp2k"),
    ("jpeg", 233, "Jpeg"),
    ("wn", 174, "Wn"),
    ("gblur", 174, "Gblur"),
    ("fastfading", 174, "FF"),
]


def main():
    if len(sys.argv) != 3:
        sys.exit(__doc__)
    root = Path(sys.argv[1])
    out = Path(sys.argv[2])

    dmos_mat = scipy.io.loadmat(root / "dmos.mat")
    dmos = dmos_mat["dmos"].ravel()
    orgs = dmos_mat["orgs"].ravel()
    refnames = [
        str(cell[0]) for cell in scipy.io.loadmat(root / "refnames_all.mat")["refnames_all"].ravel()
    ]
    total = sum(count for _, count, _ in FOLDERS)
    if not (len(dmos) == len(orgs) == len(refnames) == total):
        sys.exit(f"unexpected metadata sizes: dmos={len(dmos)} orgs={len(orgs)} "
                 f"refnames={len(refnames)} expected={total}")

    rows = []
    index = 0
    for folder, count, category in FOLDERS:
        for i in range(1, count + 1):
            if not orgs[index]:
                rows.append((
                    f"refimgs/{refnames[index]}",
                    f"{folder}/img{i}.bmp",
                    f"{dmos[index]:.6f}",
                    folder,
                    category,
                ))
            index += 1

    missing = [p for row in rows for p in row[:2] if not (root / p).is_file()]
    if missing:
        sys.exit(f"{len(missing)} image paths do not resolve, e.g. {missing[0]}")

    with open(out, "w", encoding="utf-8") as f:
        f.write("# database = LIVE\n# convention = dmos\n")
        f.write("ref,dist,score,distortion,category\n")
        for row in rows:
            f.write(",".join(row) + "\n")
    print(f"wrote {len(rows)} rows to {out} (expected 779)")


if __name__ == "__main__":
    main()
