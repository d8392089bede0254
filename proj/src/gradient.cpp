#include "hogsvm/gradient.hpp"

namespace hogsvm {

GradientPairs compute_gradients(const GrayWindow& window, Exec exec) {
    constexpr int iw = GrayWindow::kWidth - 2;   // 64
    constexpr int ih = GrayWindow::kHeight - 2;  // 128
    GradientPairs g;
    g.width = iw;
    g.height = ih;
    g.dx.resize(static_cast<std::size_t>(iw) * ih);
    g.dy.resize(static_cast<std::size_t>(iw) * ih);

    const bool par = exec == Exec::parallel;
#pragma omp parallel for if (par) schedule(static)
    for (int y = 1; y <= ih; ++y) {
        const std::size_t row = static_cast<std::size_t>(y - 1) * iw;
        for (int x = 1; x <= iw; ++x) {
            const int fx = static_cast<int>(window.at(x + 1, y)) - window.at(x - 1, y);
            const int fy = static_cast<int>(window.at(x, y + 1)) - window.at(x, y - 1);
            g.dx[row + (x - 1)] = static_cast<std::int16_t>(fx);
            g.dy[row + (x - 1)] = static_cast<std::int16_t>(fy);
        }
    }
    return g;
}

GradientField polarize(const GradientPairs& grads, Backend backend, Exec exec,
                       const CordicConfig& cfg) {
    GradientField field;
    field.width = grads.width;
    field.height = grads.height;
    const std::size_t n = grads.dx.size();
    field.magnitude.resize(n);
    field.angle_deg.resize(n);

    const bool par = exec == Exec::parallel;
    const long long count = static_cast<long long>(n);
#pragma omp parallel for if (par) schedule(static)
    for (long long i = 0; i < count; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        const float fx = grads.dx[idx];
        const float fy = grads.dy[idx];
        const PolarResult p =
            backend == Backend::reference ? reference_polar(fx, fy) : cordic_vectoring(fx, fy, cfg);
        field.magnitude[idx] = p.magnitude;
        field.angle_deg[idx] = p.angle_deg;
    }
    return field;
}

} // namespace hogsvm
