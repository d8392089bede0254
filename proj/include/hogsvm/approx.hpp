#pragma once

#include <vector>

namespace hogsvm {

// Joint magnitude/orientation result. The angle is an unsigned orientation:
// opposite vectors are identified, so it always lies in [0, 180).
struct PolarResult {
    float magnitude = 0.0f;
    float angle_deg = 0.0f;
};

// CORDIC vectoring-mode configuration: 15 micro-rotations by default, an
// arctan(2^-i) lookup table in degrees, and the accumulated rotation gain
// K = prod sqrt(1 + 2^-2i) that the raw magnitude must be divided by.
struct CordicConfig {
    int iterations = 0;
    std::vector<float> angle_lut;
    float gain = 0.0f;

    static CordicConfig make(int iterations = 15);
};

const CordicConfig& default_cordic_config();

// Rotates (x, y) onto the positive x-axis with shift-and-add micro-rotations,
// accumulating the angle from the lookup table. Runs exactly cfg.iterations
// rotations in binary32 arithmetic. (0, 0) is defined to return (0, 0).
// Vectors with x < 0 are negated first (valid under the unsigned-orientation
// fold), which keeps the rotation within the CORDIC convergence range.
PolarResult cordic_vectoring(float x, float y, const CordicConfig& cfg = default_cordic_config());

// Exact-math counterpart of cordic_vectoring: sqrt(x^2 + y^2) and the
// atan2 orientation folded into [0, 180). Computed in double internally,
// rounded to binary32 on return.
PolarResult reference_polar(float x, float y);

// Newton-Raphson reciprocal square root, y <- y(1.5 - 0.5 a y^2), seeded by
// halving the binary exponent of a (with a parity-corrected mantissa constant,
// see the implementation). Three iterations reach <= 1e-4 relative error.
// Throws std::domain_error for a <= 0 or non-finite a.
float rsqrt_newton(float a, int iterations = 3);

} // namespace hogsvm
