#include "png_fixture.hpp"

#include <png.h>

#include <cstdio>
#include <stdexcept>

namespace testutil {

namespace {

struct FileCloser {
    std::FILE* fp = nullptr;
    ~FileCloser()
    {
        if (fp != nullptr) std::fclose(fp);
    }
};

struct LayoutInfo {
    int color_type = PNG_COLOR_TYPE_GRAY;
    int bit_depth = 8;
    std::size_t channels = 1;
};

LayoutInfo layout_info(PngLayout layout)
{
    switch (layout) {
    case PngLayout::GrayAlpha8: return {PNG_COLOR_TYPE_GRAY_ALPHA, 8, 2};
    case PngLayout::Rgb8: return {PNG_COLOR_TYPE_RGB, 8, 3};
    case PngLayout::Rgba8: return {PNG_COLOR_TYPE_RGB_ALPHA, 8, 4};
    case PngLayout::Palette8: return {PNG_COLOR_TYPE_PALETTE, 8, 1};
    case PngLayout::Gray16: return {PNG_COLOR_TYPE_GRAY, 16, 1};
    case PngLayout::Gray8: break;
    }
    return {};
}

} // namespace

void write_png(const std::filesystem::path& path, std::size_t width,
               std::size_t height, PngLayout layout,
               const std::vector<std::uint16_t>& samples, bool interlaced)
{
    const LayoutInfo fmt = layout_info(layout);
    // volatile: these stay live across libpng's setjmp error handling
    const volatile int color_type = fmt.color_type;
    const volatile int bit_depth = fmt.bit_depth;
    const volatile std::size_t channels = fmt.channels;
    if (samples.size() != width * height * channels) {
        throw std::runtime_error("png fixture: sample count mismatch");
    }

    FileCloser file{std::fopen(path.string().c_str(), "wb")};
    if (file.fp == nullptr) throw std::runtime_error("png fixture: cannot open " + path.string());

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (png == nullptr) throw std::runtime_error("png fixture: create_write_struct failed");
    png_infop info = png_create_info_struct(png);
    if (info == nullptr) {
        png_destroy_write_struct(&png, nullptr);
        throw std::runtime_error("png fixture: create_info_struct failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw std::runtime_error("png fixture: libpng write error");
    }

    png_init_io(png, file.fp);
    png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height),
                 bit_depth, color_type,
                 interlaced ? PNG_INTERLACE_ADAM7 : PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);

    png_color palette[4];
    if (layout == PngLayout::Palette8) {
        for (int i = 0; i < 4; ++i) {
            const auto v = static_cast<png_byte>(i * 85);
            palette[i].red = v;
            palette[i].green = v;
            palette[i].blue = v;
        }
        png_set_PLTE(png, info, palette, 4);
    }
    png_write_info(png, info);

    const std::size_t bytes_per_sample = (bit_depth == 16) ? 2 : 1;
    const std::size_t row_bytes = width * channels * bytes_per_sample;
    std::vector<std::uint8_t> row(row_bytes);
    std::vector<png_bytep> row_ptrs(height);
    std::vector<std::vector<std::uint8_t>> rows(height, row);
    for (std::size_t y = 0; y < height; ++y) {
        for (std::size_t i = 0; i < width * channels; ++i) {
            const std::uint16_t v = samples[y * width * channels + i];
            if (bit_depth == 16) {
                rows[y][2 * i] = static_cast<std::uint8_t>(v >> 8);
                rows[y][2 * i + 1] = static_cast<std::uint8_t>(v & 0xff);
            } else {
                rows[y][i] = static_cast<std::uint8_t>(v & 0xff);
            }
        }
        row_ptrs[y] = rows[y].data();
    }
    png_write_image(png, row_ptrs.data());
    png_write_end(png, info);
    png_destroy_write_struct(&png, &info);
}

} // namespace testutil
