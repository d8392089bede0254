#pragma once

#include <cstdint>
#include <vector>

#include "hogsvm/approx.hpp"
#include "hogsvm/exec.hpp"
#include "hogsvm/image.hpp"

namespace hogsvm {

// Numeric backend selector: reference = exact sqrt/atan2, hardware = CORDIC
// vectoring and Newton-Raphson normalization in binary32.
enum class Backend {
    reference,
    hardware,
};

// Central-difference pairs over the 64x128 window interior. Differences of
// 8-bit pixels lie in [-255, 255], so they are stored as exact integers.
struct GradientPairs {
    int width = 0;
    int height = 0;
    std::vector<std::int16_t> dx;
    std::vector<std::int16_t> dy;
};

// Per-interior-pixel magnitude and folded orientation, row-major 64x128.
struct GradientField {
    int width = 0;
    int height = 0;
    std::vector<float> magnitude;
    std::vector<float> angle_deg;
};

GradientPairs compute_gradients(const GrayWindow& window, Exec exec = Exec::parallel);

GradientField polarize(const GradientPairs& grads, Backend backend, Exec exec = Exec::parallel,
                       const CordicConfig& cfg = default_cordic_config());

} // namespace hogsvm
