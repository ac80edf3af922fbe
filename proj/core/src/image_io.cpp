#include <texkit/image_io.hpp>

#include <texkit/error.hpp>

#include <png.h>

#include <cctype>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

namespace texkit {

namespace {

std::string quoted(const std::filesystem::path& path) {
    return "'" + path.string() + "'";
}

std::vector<std::uint8_t> read_all_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        raise(Errc::IoError, "cannot open " + quoted(path));
    }
    std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(in),
                                    std::istreambuf_iterator<char>()};
    if (in.bad()) {
        raise(Errc::IoError, "read failed for " + quoted(path));
    }
    return bytes;
}

// ---------------------------------------------------------------------------
// PGM
// ---------------------------------------------------------------------------

class PgmScanner {
public:
    PgmScanner(const std::uint8_t* bytes, std::size_t size) : bytes_(bytes), size_(size) {}

    // Next whitespace-delimited token, skipping '#' comments that run to EOL.
    int next_int(const char* what) {
        skip_separators();
        if (pos_ >= size_ || !std::isdigit(bytes_[pos_])) {
            raise(Errc::CorruptFile, std::string("expected ") + what + " in PGM header");
        }
        long value = 0;
        while (pos_ < size_ && std::isdigit(bytes_[pos_])) {
            value = value * 10 + (bytes_[pos_] - '0');
            if (value > 1'000'000'000L) {
                raise(Errc::CorruptFile, std::string(what) + " out of range in PGM header");
            }
            ++pos_;
        }
        return static_cast<int>(value);
    }

    // P5 payload starts after exactly one whitespace byte following maxval.
    std::size_t binary_payload_offset() {
        if (pos_ >= size_ || !std::isspace(bytes_[pos_])) {
            raise(Errc::CorruptFile, "missing separator before PGM payload");
        }
        return pos_ + 1;
    }

private:
    void skip_separators() {
        while (pos_ < size_) {
            if (std::isspace(bytes_[pos_])) {
                ++pos_;
            } else if (bytes_[pos_] == '#') {
                while (pos_ < size_ && bytes_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    const std::uint8_t* bytes_;
    std::size_t size_;
    std::size_t pos_ = 2; // past the magic
};

GrayImage decode_pgm_impl(const std::uint8_t* bytes, std::size_t size) {
    const bool ascii = bytes[1] == '2';
    PgmScanner scan(bytes, size);
    const int width = scan.next_int("width");
    const int height = scan.next_int("height");
    const int maxval = scan.next_int("maxval");
    if (width < 1 || height < 1) {
        raise(Errc::CorruptFile, "PGM dimensions must be positive");
    }
    if (maxval != 255) {
        raise(Errc::CorruptFile, "PGM maxval must be 255, got " + std::to_string(maxval));
    }

    GrayImage img = make_gray(width, height);
    const std::size_t n = img.pixel_count();

    if (ascii) {
        for (std::size_t i = 0; i < n; ++i) {
            const int v = scan.next_int("pixel value");
            if (v > maxval) {
                raise(Errc::CorruptFile, "PGM pixel value exceeds maxval");
            }
            img.data[i] = static_cast<std::uint8_t>(v);
        }
    } else {
        const std::size_t offset = scan.binary_payload_offset();
        if (size - offset < n) {
            raise(Errc::CorruptFile, "truncated PGM payload");
        }
        std::memcpy(img.data.data(), bytes + offset, n);
    }
    return img;
}

// ---------------------------------------------------------------------------
// PNG (decode via libpng)
// ---------------------------------------------------------------------------

struct PngMemoryReader {
    const std::uint8_t* bytes;
    std::size_t size;
    std::size_t pos;
};

extern "C" void texkit_png_read_fn(png_structp png, png_bytep out, png_size_t count) {
    auto* reader = static_cast<PngMemoryReader*>(png_get_io_ptr(png));
    if (reader->pos + count > reader->size) {
        png_error(png, "unexpected end of PNG data");
    }
    std::memcpy(out, reader->bytes + reader->pos, count);
    reader->pos += count;
}

extern "C" void texkit_png_error_fn(png_structp png, png_const_charp message) {
    // Stash the message; control returns to the setjmp point below.
    auto* error_out = static_cast<std::string*>(png_get_error_ptr(png));
    if (error_out) *error_out = message;
    png_longjmp(png, 1);
}

extern "C" void texkit_png_warning_fn(png_structp, png_const_charp) {}

GrayImage decode_png(const std::uint8_t* bytes, std::size_t size) {
    std::string libpng_message;
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &libpng_message,
                                             texkit_png_error_fn, texkit_png_warning_fn);
    if (!png) {
        raise(Errc::IoError, "libpng initialization failed");
    }
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        raise(Errc::IoError, "libpng initialization failed");
    }

    std::vector<std::uint8_t> pixels;
    std::vector<png_bytep> row_pointers;
    // Everything below the setjmp must keep its state in the declarations
    // above so cleanup after a longjmp stays well-defined.
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        raise(Errc::CorruptFile, "PNG decode failed: " + libpng_message);
    }

    PngMemoryReader reader{bytes, size, 0};
    png_set_read_fn(png, &reader, texkit_png_read_fn);
    png_read_info(png, info);

    const png_uint_32 width = png_get_image_width(png, info);
    const png_uint_32 height = png_get_image_height(png, info);
    const int bit_depth = png_get_bit_depth(png, info);
    const int color_type = png_get_color_type(png, info);

    if (bit_depth != 8 || color_type == PNG_COLOR_TYPE_PALETTE) {
        png_destroy_read_struct(&png, &info, nullptr);
        raise(Errc::UnsupportedFormat,
              "only 8-bit gray/RGB/RGBA PNG is supported (bit depth " +
                  std::to_string(bit_depth) + ", color type " + std::to_string(color_type) +
                  ")");
    }
    if (width < 1 || height < 1 || width > 1u << 24 || height > 1u << 24) {
        png_destroy_read_struct(&png, &info, nullptr);
        raise(Errc::CorruptFile, "PNG dimensions out of range");
    }

    png_set_interlace_handling(png);
    png_read_update_info(png, info);

    const std::size_t stride = png_get_rowbytes(png, info);
    pixels.resize(stride * height);
    row_pointers.resize(height);
    for (png_uint_32 y = 0; y < height; ++y) {
        row_pointers[y] = pixels.data() + y * stride;
    }
    png_read_image(png, row_pointers.data());
    png_read_end(png, nullptr);

    const int channels = png_get_channels(png, info);
    png_destroy_read_struct(&png, &info, nullptr);

    GrayImage img = make_gray(static_cast<int>(width), static_cast<int>(height));
    for (png_uint_32 y = 0; y < height; ++y) {
        const std::uint8_t* row = pixels.data() + y * stride;
        for (png_uint_32 x = 0; x < width; ++x) {
            const std::uint8_t* px = row + static_cast<std::size_t>(x) * channels;
            std::uint8_t value = 0;
            switch (channels) {
                case 1: value = px[0]; break;
                case 2: value = px[0]; break; // gray + alpha; alpha ignored
                case 3:
                case 4: value = luma601(px[0], px[1], px[2]); break;
                default:
                    raise(Errc::UnsupportedFormat,
                          "unexpected PNG channel count " + std::to_string(channels));
            }
            img.at(static_cast<int>(x), static_cast<int>(y)) = value;
        }
    }
    return img;
}

constexpr std::uint8_t kPngSignature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};

} // namespace

GrayImage decode_pgm(const std::uint8_t* bytes, std::size_t size) {
    if (size < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5')) {
        raise(Errc::UnsupportedFormat, "buffer is not a P2/P5 PGM");
    }
    return decode_pgm_impl(bytes, size);
}

GrayImage load_image(const std::filesystem::path& path) {
    const std::vector<std::uint8_t> bytes = read_all_bytes(path);
    try {
        if (bytes.size() >= 8 && std::memcmp(bytes.data(), kPngSignature, 8) == 0) {
            return decode_png(bytes.data(), bytes.size());
        }
        if (bytes.size() >= 2 && bytes[0] == 'P' && (bytes[1] == '2' || bytes[1] == '5')) {
            return decode_pgm_impl(bytes.data(), bytes.size());
        }
    } catch (const Error& e) {
        // Re-raise with the path appended; drop the category prefix the
        // constructor is about to add again.
        std::string message = e.what();
        const auto colon = message.find(": ");
        if (colon != std::string::npos) message.erase(0, colon + 2);
        raise(e.code(), message + " [" + path.string() + "]");
    }
    raise(Errc::UnsupportedFormat, quoted(path) + " is neither PGM (P2/P5) nor PNG");
}

void save_pgm(const GrayImage& img, const std::filesystem::path& path) {
    if (img.width < 1 || img.height < 1 ||
        img.data.size() != static_cast<std::size_t>(img.width) * img.height) {
        raise(Errc::InvalidDimensions, "refusing to write malformed image");
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        raise(Errc::IoError, "cannot create " + quoted(path));
    }
    out << "P5\n" << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.data.data()),
              static_cast<std::streamsize>(img.data.size()));
    if (!out) {
        raise(Errc::IoError, "write failed for " + quoted(path));
    }
}

} // namespace texkit
