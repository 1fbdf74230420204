#include "persim/image_io.hpp"

#include <cmath>
#include <csetjmp>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <vector>

#include <jpeglib.h>
#include <png.h>

namespace persim {

namespace {

RgbImage from_rgb8(const std::vector<unsigned char>& buf, int rows, int cols) {
    RgbImage img{ImagePlane(rows, cols), ImagePlane(rows, cols), ImagePlane(rows, cols)};
    const unsigned char* p = buf.data();
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            img.r.at(r, c) = p[0];
            img.g.at(r, c) = p[1];
            img.b.at(r, c) = p[2];
            p += 3;
        }
    }
    return img;
}

RgbImage decode_png(const std::filesystem::path& path) {
    png_image image;
    std::memset(&image, 0, sizeof(image));
    image.version = PNG_IMAGE_VERSION;

    if (!png_image_begin_read_from_file(&image, path.string().c_str()))
        throw DecodeError("png: " + path.string() + ": " + image.message);

    image.format = PNG_FORMAT_RGB;
    std::vector<unsigned char> buf(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, buf.data(), 0, nullptr)) {
        const std::string msg = image.message;
        png_image_free(&image);
        throw DecodeError("png: " + path.string() + ": " + msg);
    }
    return from_rgb8(buf, static_cast<int>(image.height), static_cast<int>(image.width));
}

struct JpegErrorMgr {
    jpeg_error_mgr pub;
    std::jmp_buf jump;
    char message[JMSG_LENGTH_MAX];
};

void jpeg_error_exit(j_common_ptr cinfo) {
    auto* err = reinterpret_cast<JpegErrorMgr*>(cinfo->err);
    (*cinfo->err->format_message)(cinfo, err->message);
    std::longjmp(err->jump, 1);
}

RgbImage decode_jpeg(const std::filesystem::path& path) {
    std::FILE* fp = std::fopen(path.string().c_str(), "rb");
    if (!fp) throw IoError("cannot open " + path.string());

    jpeg_decompress_struct cinfo;
    JpegErrorMgr err;
    cinfo.err = jpeg_std_error(&err.pub);
    err.pub.error_exit = jpeg_error_exit;

    if (setjmp(err.jump)) {
        jpeg_destroy_decompress(&cinfo);
        std::fclose(fp);
        throw DecodeError("jpeg: " + path.string() + ": " + err.message);
    }

    jpeg_create_decompress(&cinfo);
    jpeg_stdio_src(&cinfo, fp);
    jpeg_read_header(&cinfo, TRUE);
    cinfo.out_color_space = JCS_RGB;
    jpeg_start_decompress(&cinfo);

    const int cols = static_cast<int>(cinfo.output_width);
    const int rows = static_cast<int>(cinfo.output_height);
    std::vector<unsigned char> buf(static_cast<std::size_t>(rows) * cols * 3);
    while (cinfo.output_scanline < cinfo.output_height) {
        unsigned char* dst = buf.data() + std::size_t(cinfo.output_scanline) * cols * 3;
        jpeg_read_scanlines(&cinfo, &dst, 1);
    }
    jpeg_finish_decompress(&cinfo);
    jpeg_destroy_decompress(&cinfo);
    std::fclose(fp);
    return from_rgb8(buf, rows, cols);
}

std::uint32_t read_u32(const unsigned char* p) {
    return std::uint32_t(p[0]) | std::uint32_t(p[1]) << 8 | std::uint32_t(p[2]) << 16 |
           std::uint32_t(p[3]) << 24;
}

std::uint16_t read_u16(const unsigned char* p) {
    return std::uint16_t(p[0] | p[1] << 8);
}

// Uncompressed BI_RGB bitmaps: 8-bit paletted, 24-bit and 32-bit.
RgbImage decode_bmp(const std::filesystem::path& path, const std::vector<unsigned char>& data) {
    auto fail = [&](const char* why) -> RgbImage {
        throw DecodeError("bmp: " + path.string() + ": " + why);
    };

    if (data.size() < 54) return fail("truncated header");
    const std::uint32_t pixel_offset = read_u32(&data[10]);
    const std::uint32_t dib_size = read_u32(&data[14]);
    if (dib_size < 40) return fail("unsupported DIB header");

    const std::int32_t width = static_cast<std::int32_t>(read_u32(&data[18]));
    const std::int32_t height_raw = static_cast<std::int32_t>(read_u32(&data[22]));
    const bool top_down = height_raw < 0;
    const std::int32_t height = top_down ? -height_raw : height_raw;
    const std::uint16_t bpp = read_u16(&data[28]);
    const std::uint32_t compression = read_u32(&data[30]);

    if (width <= 0 || height <= 0) return fail("bad dimensions");
    if (compression != 0) return fail("compressed bitmaps not supported");
    if (bpp != 8 && bpp != 24 && bpp != 32) return fail("unsupported bit depth");

    const unsigned char* palette = nullptr;
    std::uint32_t palette_entries = 0;
    if (bpp == 8) {
        palette_entries = read_u32(&data[46]);
        if (palette_entries == 0) palette_entries = 256;
        const std::size_t pal_off = 14 + dib_size;
        if (pal_off + palette_entries * 4ull > data.size()) return fail("truncated palette");
        palette = &data[pal_off];
    }

    const std::size_t stride = ((std::size_t(width) * bpp + 31) / 32) * 4;
    if (pixel_offset + stride * height > data.size()) return fail("truncated pixel data");

    RgbImage img{ImagePlane(height, width), ImagePlane(height, width), ImagePlane(height, width)};
    for (std::int32_t row = 0; row < height; ++row) {
        const std::int32_t src_row = top_down ? row : height - 1 - row;
        const unsigned char* p = &data[pixel_offset + std::size_t(src_row) * stride];
        for (std::int32_t col = 0; col < width; ++col) {
            unsigned char r, g, b;
            if (bpp == 8) {
                const unsigned char idx = p[col];
                if (idx >= palette_entries) return fail("palette index out of range");
                b = palette[idx * 4 + 0];
                g = palette[idx * 4 + 1];
                r = palette[idx * 4 + 2];
            } else {
                const unsigned char* px = p + std::size_t(col) * (bpp / 8);
                b = px[0];
                g = px[1];
                r = px[2];
            }
            img.r.at(row, col) = r;
            img.g.at(row, col) = g;
            img.b.at(row, col) = b;
        }
    }
    return img;
}

}  // namespace

RgbImage decode_image(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::vector<unsigned char> data((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (data.size() < 4) throw DecodeError("not an image: " + path.string());

    if (data[0] == 0x89 && data[1] == 'P' && data[2] == 'N' && data[3] == 'G')
        return decode_png(path);
    if (data[0] == 'B' && data[1] == 'M')
        return decode_bmp(path, data);
    if (data[0] == 0xFF && data[1] == 0xD8)
        return decode_jpeg(path);
    throw DecodeError("unrecognized image format: " + path.string());
}

void write_bmp(const std::filesystem::path& path, const RgbImage& img) {
    img.validate();
    const int rows = img.rows();
    const int cols = img.cols();
    const std::size_t stride = ((std::size_t(cols) * 24 + 31) / 32) * 4;
    const std::size_t pixel_bytes = stride * rows;
    const std::uint32_t file_size = static_cast<std::uint32_t>(54 + pixel_bytes);

    std::vector<unsigned char> out(54 + pixel_bytes, 0);
    auto put_u32 = [&](std::size_t off, std::uint32_t v) {
        out[off] = v & 0xFF;
        out[off + 1] = (v >> 8) & 0xFF;
        out[off + 2] = (v >> 16) & 0xFF;
        out[off + 3] = (v >> 24) & 0xFF;
    };
    out[0] = 'B';
    out[1] = 'M';
    put_u32(2, file_size);
    put_u32(10, 54);
    put_u32(14, 40);
    put_u32(18, static_cast<std::uint32_t>(cols));
    put_u32(22, static_cast<std::uint32_t>(rows));
    out[26] = 1;                      // planes
    out[28] = 24;                     // bpp
    put_u32(34, static_cast<std::uint32_t>(pixel_bytes));
    put_u32(38, 2835);                // 72 dpi
    put_u32(42, 2835);

    auto to_byte = [](double v) {
        const long q = std::lround(v);
        return static_cast<unsigned char>(q < 0 ? 0 : (q > 255 ? 255 : q));
    };
    for (int row = 0; row < rows; ++row) {
        unsigned char* p = &out[54 + std::size_t(rows - 1 - row) * stride];
        for (int col = 0; col < cols; ++col) {
            p[col * 3 + 0] = to_byte(img.b.at(row, col));
            p[col * 3 + 1] = to_byte(img.g.at(row, col));
            p[col * 3 + 2] = to_byte(img.r.at(row, col));
        }
    }

    std::ofstream fs(path, std::ios::binary | std::ios::trunc);
    if (!fs) throw IoError("cannot write " + path.string());
    fs.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
    if (!fs) throw IoError("short write: " + path.string());
}

}  // namespace persim
