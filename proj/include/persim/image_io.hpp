#pragma once

#include <filesystem>

#include "persim/image.hpp"

namespace persim {

// Decodes PNG, BMP or JPEG by magic-byte sniffing. Grayscale sources are
// promoted to three identical channels. Throws IoError / DecodeError.
RgbImage decode_image(const std::filesystem::path& path);

// 24-bit uncompressed BMP; samples are rounded and clamped to [0,255].
void write_bmp(const std::filesystem::path& path, const RgbImage& img);

}  // namespace persim
