#pragma once

#include <array>
#include <string>
#include <vector>

#include "hogsvm/exec.hpp"
#include "hogsvm/gradient.hpp"
#include "hogsvm/image.hpp"

namespace hogsvm {

// 8x8 cells over the 64x128 interior give an 8x16 cell grid; 2x2-cell blocks
// at 1-cell stride give 7x15 blocks; 105 blocks x 36 values = 3780 features.
struct HogGeometry {
    int cell_size = 8;
    int bins = 9;
    int block_cells = 2; // per side
    int block_stride = 1;
    int cells_x = 8;
    int cells_y = 16;
    int blocks_x = 7;
    int blocks_y = 15;

    int cell_count() const { return cells_x * cells_y; }
    int block_count() const { return blocks_x * blocks_y; }
    int block_len() const { return block_cells * block_cells * bins; }
    int descriptor_len() const { return block_count() * block_len(); }
};

using CellHistogram = std::array<float, 9>;

struct CellGrid {
    int cells_x = 0;
    int cells_y = 0;
    std::vector<CellHistogram> cells; // row-major

    const CellHistogram& at(int cx, int cy) const { return cells[static_cast<std::size_t>(cy) * cells_x + cx]; }
};

using BlockDescriptor = std::array<float, 36>;

// Feature order (fixed, recorded in model files as kFeatureOrderVersion):
// blocks row-major top-left to bottom-right, cells row-major within the
// block, bins 0..8 within the cell.
struct WindowDescriptor {
    std::vector<float> features;
};

inline constexpr const char* kFeatureOrderVersion = "hog66x130-blockmajor-v1";
inline constexpr float kDefaultEps = 0.01f;

// Hard assignment: each pixel votes its full magnitude into the single bin
// covering its orientation; bin k covers [20k, 20(k+1)) degrees.
CellGrid cell_histograms(const GradientField& field, const HogGeometry& geom,
                         Exec exec = Exec::parallel);

// v = 36 concatenated bin values, output v_i / sqrt(|v|^2 + eps^2). The
// hardware backend multiplies by rsqrt_newton of the divisor; the reference
// backend divides by the exact square root (double internally). A block
// whose divisor is exactly zero yields the zero vector.
BlockDescriptor normalize_block(const CellHistogram& top_left, const CellHistogram& top_right,
                                const CellHistogram& bottom_left, const CellHistogram& bottom_right,
                                Backend backend, float eps);

// Full pipeline: gradients -> polarize -> cell histograms -> block
// normalization -> concatenation in canonical feature order.
WindowDescriptor assemble_descriptor(const GrayWindow& window, Backend backend,
                                     const HogGeometry& geom = HogGeometry{},
                                     float eps = kDefaultEps, Exec exec = Exec::parallel);

// One line: the features comma-separated, each as the shortest decimal string
// that round-trips the binary32 value.
std::string descriptor_to_line(const WindowDescriptor& desc);

} // namespace hogsvm
