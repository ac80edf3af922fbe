#include <doctest.h>

#include "support/png_fixture.hpp"
#include "support/tmpdir.hpp"

#include <texkit/error.hpp>
#include <texkit/image.hpp>
#include <texkit/image_io.hpp>
#include <texkit/rng.hpp>

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

using namespace texkit;
using testutil::PngLayout;
using testutil::TempDir;

namespace {

GrayImage random_image(int w, int h, std::uint64_t seed) {
    GrayImage img = make_gray(w, h);
    Rng rng(seed);
    for (auto& p : img.data) p = static_cast<std::uint8_t>(rng.uniform_index(256));
    return img;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

Errc code_of(const std::filesystem::path& path) {
    try {
        load_image(path);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected load_image to throw for ", path.string());
    return Errc::IoError;
}

} // namespace

TEST_SUITE("image_io") {

TEST_CASE("binary pgm round-trips exactly") {
    TempDir dir;
    const GrayImage img = random_image(17, 11, 42);
    const auto path = dir.file("img.pgm");
    save_pgm(img, path);
    CHECK(load_image(path) == img);
}

TEST_CASE("ascii pgm with comments and odd whitespace parses") {
    TempDir dir;
    const auto path = dir.file("ascii.pgm");
    write_text(path,
               "P2\n# a comment line\n 3   2 # trailing comment\n255\n"
               "0 10 20\n30 40   50\n");
    const GrayImage img = load_image(path);
    CHECK(img.width == 3);
    CHECK(img.height == 2);
    CHECK(img.data == std::vector<std::uint8_t>{0, 10, 20, 30, 40, 50});
}

TEST_CASE("pgm maxval other than 255 is rejected") {
    TempDir dir;
    const auto path = dir.file("maxval.pgm");
    write_text(path, "P2\n2 1\n65535\n0 1\n");
    CHECK(code_of(path) == Errc::CorruptFile);
}

TEST_CASE("ascii pgm sample above 255 is rejected") {
    TempDir dir;
    const auto path = dir.file("overflow.pgm");
    write_text(path, "P2\n2 1\n255\n0 256\n");
    CHECK(code_of(path) == Errc::CorruptFile);
}

TEST_CASE("truncated binary pgm is rejected") {
    TempDir dir;
    const auto path = dir.file("short.pgm");
    write_text(path, "P5\n4 4\n255\nab"); // promises 16 bytes, carries 2
    CHECK(code_of(path) == Errc::CorruptFile);
}

TEST_CASE("unknown magic bytes are rejected as unsupported") {
    TempDir dir;
    const auto path = dir.file("mystery.bin");
    write_text(path, "BM000000000000");
    CHECK(code_of(path) == Errc::UnsupportedFormat);
}

TEST_CASE("missing file raises IoError naming the path") {
    TempDir dir;
    const auto path = dir.file("not_there.pgm");
    try {
        load_image(path);
        FAIL("expected IoError");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::IoError);
        CHECK(std::string(e.what()).find("not_there.pgm") != std::string::npos);
    }
}

TEST_CASE("decode_pgm parses an in-memory buffer") {
    const GrayImage img = random_image(5, 4, 7);
    TempDir dir;
    const auto path = dir.file("mem.pgm");
    save_pgm(img, path);
    std::ifstream in(path, std::ios::binary);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    CHECK(decode_pgm(bytes.data(), bytes.size()) == img);
}

TEST_CASE("gray png loads back identically") {
    TempDir dir;
    const GrayImage img = random_image(9, 6, 3);
    std::vector<std::uint16_t> samples(img.data.begin(), img.data.end());
    const auto path = dir.file("gray.png");
    testutil::write_png(path, 9, 6, PngLayout::Gray8, samples);
    CHECK(load_image(path) == img);
}

TEST_CASE("rgb png converts with rec601 luma") {
    TempDir dir;
    // 3 pixels: pure red, pure green, pure blue
    const std::vector<std::uint16_t> samples = {255, 0, 0, 0, 255, 0, 0, 0, 255};
    const auto path = dir.file("rgb.png");
    testutil::write_png(path, 3, 1, PngLayout::Rgb8, samples);
    const GrayImage img = load_image(path);
    CHECK(img.data == std::vector<std::uint8_t>{76, 150, 29});
}

TEST_CASE("rgba png ignores alpha") {
    TempDir dir;
    const std::vector<std::uint16_t> samples = {200, 40, 90, 0, 200, 40, 90, 255};
    const auto path = dir.file("rgba.png");
    testutil::write_png(path, 2, 1, PngLayout::Rgba8, samples);
    const GrayImage img = load_image(path);
    CHECK(img.data[0] == img.data[1]);
    CHECK(img.data[0] == luma601(200, 40, 90));
}

TEST_CASE("gray+alpha png keeps the gray channel") {
    TempDir dir;
    const std::vector<std::uint16_t> samples = {10, 0, 250, 128};
    const auto path = dir.file("ga.png");
    testutil::write_png(path, 2, 1, PngLayout::GrayAlpha8, samples);
    const GrayImage img = load_image(path);
    CHECK(img.data == std::vector<std::uint8_t>{10, 250});
}

TEST_CASE("interlaced png decodes like its plain counterpart") {
    TempDir dir;
    const GrayImage img = random_image(8, 8, 21);
    std::vector<std::uint16_t> samples(img.data.begin(), img.data.end());
    const auto plain = dir.file("plain.png");
    const auto adam7 = dir.file("adam7.png");
    testutil::write_png(plain, 8, 8, PngLayout::Gray8, samples, false);
    testutil::write_png(adam7, 8, 8, PngLayout::Gray8, samples, true);
    CHECK(load_image(plain) == load_image(adam7));
}

TEST_CASE("palette png is rejected") {
    TempDir dir;
    const std::vector<std::uint16_t> samples = {0, 1, 2, 3};
    const auto path = dir.file("pal.png");
    testutil::write_png(path, 2, 2, PngLayout::Palette8, samples);
    CHECK(code_of(path) == Errc::UnsupportedFormat);
}

TEST_CASE("16-bit png is rejected") {
    TempDir dir;
    const std::vector<std::uint16_t> samples = {0, 1000, 40000, 65535};
    const auto path = dir.file("deep.png");
    testutil::write_png(path, 2, 2, PngLayout::Gray16, samples);
    CHECK(code_of(path) == Errc::UnsupportedFormat);
}

TEST_CASE("corrupt png body is rejected") {
    TempDir dir;
    const GrayImage img = random_image(16, 16, 5);
    std::vector<std::uint16_t> samples(img.data.begin(), img.data.end());
    const auto good = dir.file("good.png");
    testutil::write_png(good, 16, 16, PngLayout::Gray8, samples);
    std::ifstream in(good, std::ios::binary);
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    in.close();
    const auto bad = dir.file("bad.png");
    write_text(bad, bytes.substr(0, bytes.size() / 2)); // drop the tail
    CHECK(code_of(bad) == Errc::CorruptFile);
}

TEST_CASE("pgm save then png-free reload keeps every byte stable") {
    TempDir dir;
    const GrayImage img = random_image(33, 2, 100);
    const auto a = dir.file("a.pgm");
    const auto b = dir.file("b.pgm");
    save_pgm(img, a);
    save_pgm(load_image(a), b);
    std::ifstream fa(a, std::ios::binary);
    std::ifstream fb(b, std::ios::binary);
    const std::string ba((std::istreambuf_iterator<char>(fa)), std::istreambuf_iterator<char>());
    const std::string bb((std::istreambuf_iterator<char>(fb)), std::istreambuf_iterator<char>());
    CHECK(ba == bb);
}

} // TEST_SUITE("image_io")
