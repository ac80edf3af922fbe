#pragma once

#include <texkit/image.hpp>

#include <filesystem>

namespace texkit {

/// Loads a grayscale image from a PGM (P2 ASCII or P5 binary, maxval 255) or
/// an 8-bit PNG (gray, gray+alpha, RGB, RGBA). Color is converted with
/// Rec.601 luma; alpha is ignored. The format is sniffed from the file's
/// magic bytes, not its extension. 16-bit and palette PNGs are rejected.
GrayImage load_image(const std::filesystem::path& path);

/// Parses a PGM image from an in-memory buffer (same contract as load_image).
GrayImage decode_pgm(const std::uint8_t* bytes, std::size_t size);

/// Writes binary PGM (P5, maxval 255). Round-trips exactly through load_image.
void save_pgm(const GrayImage& img, const std::filesystem::path& path);

} // namespace texkit
