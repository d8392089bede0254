#pragma once

#include <cstdint>
#include <filesystem>
#include <variant>
#include <vector>

namespace hogsvm {

struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels; // row-major R,G,B triples
};

struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels; // row-major

    std::uint8_t at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
};

// The fixed 66x130 detection window. The outermost 1-pixel ring only feeds
// the central differences; features are computed over the 64x128 interior.
class GrayWindow {
public:
    static constexpr int kWidth = 66;
    static constexpr int kHeight = 130;

    explicit GrayWindow(GrayImage img);

    std::uint8_t at(int x, int y) const { return pixels_[static_cast<std::size_t>(y) * kWidth + x]; }
    const std::vector<std::uint8_t>& pixels() const { return pixels_; }

private:
    std::vector<std::uint8_t> pixels_;
};

enum class CropMode {
    exact,       // input must already be 66x130
    center_crop, // take the centered 66x130 region, extra margin pixel on right/bottom
};

using LoadedImage = std::variant<GrayImage, RgbImage>;

// Binary PGM (P5) / PPM (P6), maxval 255 only. "#" comments are skipped in
// the header; exactly one whitespace byte separates the maxval from the
// pixel payload. Parse errors carry the byte offset.
LoadedImage load_image(const std::filesystem::path& path);

void save_pgm(const std::filesystem::path& path, const GrayImage& img);
void save_ppm(const std::filesystem::path& path, const RgbImage& img);

// round(0.2989 R + 0.5870 G + 0.1140 B), half away from zero, clamped to [0,255]
GrayImage rgb_to_gray(const RgbImage& img);

GrayWindow to_window(const GrayImage& img, CropMode mode);

// Loads, converts P6 to gray, and crops in one step.
GrayWindow load_window(const std::filesystem::path& path, CropMode mode);

} // namespace hogsvm
