#include "hogsvm/approx.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hogsvm {

namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

// Orientations within this of the 0/180 seam are rounding residue of a
// zero-angle vector: the 15-rotation residual is <= arctan(2^-14) ~ 0.0035
// degrees, and folding it across the seam would flip the histogram bin.
constexpr float kSeamToleranceDeg = 0.01f;

// Seed mantissas for the exponent-halving reciprocal-sqrt seed: 2^(1/4) when
// the exponent is even after halving, 2^(3/4) when the halved exponent loses
// a half step. Centers the seed ratio in [2^-1/4, 2^1/4], which three Newton
// iterations pull below 1e-4 relative error. A plain reset-to-1 mantissa
// worst-cases at ~6e-4 after three iterations, which misses that bound.
constexpr float kSeedEven = 1.18920708f; // 2^0.25
constexpr float kSeedOdd = 1.68179283f;  // 2^0.75

} // namespace

CordicConfig CordicConfig::make(int iterations) {
    if (iterations < 1 || iterations > 30) {
        throw std::invalid_argument("cordic iterations must be in [1, 30]");
    }
    CordicConfig cfg;
    cfg.iterations = iterations;
    cfg.angle_lut.resize(static_cast<std::size_t>(iterations));
    double gain = 1.0;
    for (int i = 0; i < iterations; ++i) {
        const double t = std::ldexp(1.0, -i);
        cfg.angle_lut[static_cast<std::size_t>(i)] = static_cast<float>(std::atan(t) * kRadToDeg);
        gain *= std::sqrt(1.0 + t * t);
    }
    cfg.gain = static_cast<float>(gain);
    return cfg;
}

const CordicConfig& default_cordic_config() {
    static const CordicConfig cfg = CordicConfig::make();
    return cfg;
}

PolarResult cordic_vectoring(float x, float y, const CordicConfig& cfg) {
    if (x == 0.0f && y == 0.0f) {
        return {0.0f, 0.0f};
    }
    if (x < 0.0f) { // unsigned orientation: (x, y) and (-x, -y) are the same line
        x = -x;
        y = -y;
    }
    float z = 0.0f;
    for (int i = 0; i < cfg.iterations; ++i) {
        const float p = std::ldexp(1.0f, -i); // exact 2^-i
        const float xi = x;
        const float yi = y;
        if (yi < 0.0f) {
            x = xi - yi * p;
            y = yi + xi * p;
            z -= cfg.angle_lut[static_cast<std::size_t>(i)];
        } else {
            x = xi + yi * p;
            y = yi - xi * p;
            z += cfg.angle_lut[static_cast<std::size_t>(i)];
        }
    }
    const float magnitude = x / cfg.gain;
    if (z < 0.0f) {
        z = (z > -kSeamToleranceDeg) ? 0.0f : z + 180.0f;
    }
    if (z >= 180.0f) {
        z -= 180.0f;
    }
    return {magnitude, z};
}

PolarResult reference_polar(float x, float y) {
    if (x == 0.0f && y == 0.0f) {
        return {0.0f, 0.0f};
    }
    double xd = x;
    double yd = y;
    if (xd < 0.0) { // same canonicalization as the CORDIC path
        xd = -xd;
        yd = -yd;
    }
    const double mag = std::hypot(xd, yd);
    double ang = std::atan2(yd, xd) * kRadToDeg; // in [-90, 90]
    if (ang < 0.0) {
        ang += 180.0;
    }
    float angle = static_cast<float>(ang);
    if (angle >= 180.0f) { // float rounding can land on the open bound
        angle -= 180.0f;
    }
    return {static_cast<float>(mag), angle};
}

float rsqrt_newton(float a, int iterations) {
    if (!std::isfinite(a) || a <= 0.0f) {
        throw std::domain_error("rsqrt_newton requires a finite positive argument");
    }
    if (iterations < 0) {
        throw std::invalid_argument("rsqrt_newton iterations must be >= 0");
    }
    int k = 0;
    (void)std::frexp(a, &k); // a = f * 2^k, f in [0.5, 1)
    const bool odd = (k & 1) != 0;
    const int halved = odd ? -(k + 1) / 2 : -k / 2;
    float y = std::ldexp(odd ? kSeedOdd : kSeedEven, halved);
    for (int i = 0; i < iterations; ++i) {
        y = y * (1.5f - 0.5f * a * y * y);
    }
    return y;
}

} // namespace hogsvm
