#include "hogsvm/image.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <string>

#include "hogsvm/errors.hpp"

namespace hogsvm {

namespace {

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return bytes;
}

// Cursor over the raw file bytes; every error names the byte offset.
class PnmParser {
public:
    PnmParser(const std::filesystem::path& path, std::vector<std::uint8_t> bytes)
        : path_(path.string()), bytes_(std::move(bytes)) {}

    std::string magic() {
        if (bytes_.size() < 2) {
            fail("missing magic", 0);
        }
        std::string m(reinterpret_cast<const char*>(bytes_.data()), 2);
        pos_ = 2;
        return m;
    }

    // Whitespace and "#" comments separate header tokens.
    long next_int(const char* what) {
        skip_separators();
        last_token_at_ = pos_;
        long value = 0;
        bool any = false;
        while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
            value = value * 10 + (bytes_[pos_] - '0');
            if (value > 1'000'000'000L) {
                fail(std::string(what) + " out of range", last_token_at_);
            }
            ++pos_;
            any = true;
        }
        if (!any) {
            fail(std::string("malformed header: expected ") + what, last_token_at_);
        }
        return value;
    }

    // Offset of the most recent header token, for error messages that blame
    // a token after parsing it.
    std::size_t last_token_at() const { return last_token_at_; }

    // Exactly one whitespace byte sits between the maxval and the payload.
    void consume_payload_separator() {
        if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
            fail("malformed header: expected single whitespace after maxval", pos_);
        }
        ++pos_;
    }

    std::vector<std::uint8_t> payload(std::size_t expected, const char* what) {
        if (bytes_.size() - pos_ < expected) {
            fail(std::string("truncated ") + what + ": need " + std::to_string(expected) +
                     " payload bytes, have " + std::to_string(bytes_.size() - pos_),
                 pos_);
        }
        return std::vector<std::uint8_t>(bytes_.begin() + static_cast<long>(pos_),
                                         bytes_.begin() + static_cast<long>(pos_ + expected));
    }

    [[noreturn]] void fail(const std::string& why, std::size_t offset) const {
        throw IoError(path_ + ": " + why + " (byte offset " + std::to_string(offset) + ")");
    }

    std::size_t pos() const { return pos_; }

private:
    void skip_separators() {
        while (pos_ < bytes_.size()) {
            if (std::isspace(bytes_[pos_])) {
                ++pos_;
            } else if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') {
                    ++pos_;
                }
            } else {
                break;
            }
        }
    }

    std::string path_;
    std::vector<std::uint8_t> bytes_;
    std::size_t pos_ = 0;
    std::size_t last_token_at_ = 0;
};

constexpr long kMaxDimension = 1 << 20;

} // namespace

GrayWindow::GrayWindow(GrayImage img) : pixels_(std::move(img.pixels)) {
    if (img.width != kWidth || img.height != kHeight ||
        pixels_.size() != static_cast<std::size_t>(kWidth) * kHeight) {
        throw GeometryError("window must be 66x130, got " + std::to_string(img.width) + "x" +
                            std::to_string(img.height));
    }
}

LoadedImage load_image(const std::filesystem::path& path) {
    PnmParser p(path, read_file(path));

    const std::string magic = p.magic();
    if (magic != "P5" && magic != "P6") {
        p.fail("unsupported magic \"" + magic + "\" (want P5 or P6)", 0);
    }

    const long width = p.next_int("width");
    const long height = p.next_int("height");
    if (width < 1 || height < 1 || width > kMaxDimension || height > kMaxDimension) {
        p.fail("bad dimensions " + std::to_string(width) + "x" + std::to_string(height), p.pos());
    }
    const long maxval = p.next_int("maxval");
    if (maxval != 255) {
        p.fail("unsupported maxval " + std::to_string(maxval) + " (only 255)", p.last_token_at());
    }
    p.consume_payload_separator();

    const std::size_t n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    if (magic == "P5") {
        GrayImage img{static_cast<int>(width), static_cast<int>(height), p.payload(n, "P5")};
        return img;
    }
    RgbImage img{static_cast<int>(width), static_cast<int>(height), p.payload(n * 3, "P6")};
    return img;
}

namespace {

void write_pnm(const std::filesystem::path& path, const char* magic, int width, int height,
               const std::vector<std::uint8_t>& payload) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    out << magic << "\n" << width << " " << height << "\n255\n";
    out.write(reinterpret_cast<const char*>(payload.data()),
              static_cast<std::streamsize>(payload.size()));
    if (!out) {
        throw IoError("write failed: " + path.string());
    }
}

} // namespace

void save_pgm(const std::filesystem::path& path, const GrayImage& img) {
    write_pnm(path, "P5", img.width, img.height, img.pixels);
}

void save_ppm(const std::filesystem::path& path, const RgbImage& img) {
    write_pnm(path, "P6", img.width, img.height, img.pixels);
}

GrayImage rgb_to_gray(const RgbImage& img) {
    GrayImage gray{img.width, img.height, {}};
    gray.pixels.resize(static_cast<std::size_t>(img.width) * img.height);
    for (std::size_t i = 0; i < gray.pixels.size(); ++i) {
        const double r = img.pixels[3 * i];
        const double g = img.pixels[3 * i + 1];
        const double b = img.pixels[3 * i + 2];
        long v = std::lround(0.2989 * r + 0.5870 * g + 0.1140 * b);
        if (v < 0) v = 0;
        if (v > 255) v = 255;
        gray.pixels[i] = static_cast<std::uint8_t>(v);
    }
    return gray;
}

GrayWindow to_window(const GrayImage& img, CropMode mode) {
    constexpr int w = GrayWindow::kWidth;
    constexpr int h = GrayWindow::kHeight;
    if (mode == CropMode::exact) {
        if (img.width != w || img.height != h) {
            throw GeometryError("window must be 66x130, got " + std::to_string(img.width) + "x" +
                                std::to_string(img.height) + " (exact mode)");
        }
        return GrayWindow(img);
    }
    if (img.width < w || img.height < h) {
        throw GeometryError("image " + std::to_string(img.width) + "x" +
                            std::to_string(img.height) + " too small to center-crop to 66x130");
    }
    const int ox = (img.width - w) / 2;  // floor: odd margin's extra pixel lands right/bottom
    const int oy = (img.height - h) / 2;
    GrayImage out{w, h, {}};
    out.pixels.resize(static_cast<std::size_t>(w) * h);
    for (int y = 0; y < h; ++y) {
        const std::uint8_t* src = img.pixels.data() + static_cast<std::size_t>(y + oy) * img.width + ox;
        std::copy(src, src + w, out.pixels.begin() + static_cast<std::size_t>(y) * w);
    }
    return GrayWindow(std::move(out));
}

GrayWindow load_window(const std::filesystem::path& path, CropMode mode) {
    LoadedImage img = load_image(path);
    if (std::holds_alternative<RgbImage>(img)) {
        return to_window(rgb_to_gray(std::get<RgbImage>(img)), mode);
    }
    return to_window(std::get<GrayImage>(img), mode);
}

} // namespace hogsvm
