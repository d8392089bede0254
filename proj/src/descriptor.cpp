#include "hogsvm/descriptor.hpp"

#include <charconv>
#include <cmath>

#include "hogsvm/approx.hpp"
#include "hogsvm/errors.hpp"

namespace hogsvm {

CellGrid cell_histograms(const GradientField& field, const HogGeometry& geom, Exec exec) {
    if (field.width != geom.cells_x * geom.cell_size ||
        field.height != geom.cells_y * geom.cell_size) {
        throw GeometryError("gradient field does not tile the cell grid");
    }
    CellGrid grid;
    grid.cells_x = geom.cells_x;
    grid.cells_y = geom.cells_y;
    grid.cells.assign(static_cast<std::size_t>(geom.cell_count()), CellHistogram{});

    const float bin_width = 180.0f / static_cast<float>(geom.bins);
    const int cell_count = geom.cell_count();
    const bool par = exec == Exec::parallel;

    // Gather per cell: each cell accumulates its own 64 pixels in row-major
    // order, so there are no cross-cell writes and the sums are independent
    // of the schedule.
#pragma omp parallel for if (par) schedule(static)
    for (int c = 0; c < cell_count; ++c) {
        const int cx = c % geom.cells_x;
        const int cy = c / geom.cells_x;
        CellHistogram& hist = grid.cells[static_cast<std::size_t>(c)];
        for (int py = cy * geom.cell_size; py < (cy + 1) * geom.cell_size; ++py) {
            const std::size_t row = static_cast<std::size_t>(py) * field.width;
            for (int px = cx * geom.cell_size; px < (cx + 1) * geom.cell_size; ++px) {
                const float angle = field.angle_deg[row + px];
                int bin = static_cast<int>(angle / bin_width);
                if (bin >= geom.bins) bin = geom.bins - 1;
                hist[static_cast<std::size_t>(bin)] += field.magnitude[row + px];
            }
        }
    }
    return grid;
}

namespace {

void normalize_span(const float* v, std::size_t n, Backend backend, float eps, float* out) {
    if (backend == Backend::reference) {
        double sumsq = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            sumsq += static_cast<double>(v[i]) * v[i];
        }
        const double divisor = std::sqrt(sumsq + static_cast<double>(eps) * eps);
        if (divisor == 0.0) {
            for (std::size_t i = 0; i < n; ++i) out[i] = 0.0f;
            return;
        }
        for (std::size_t i = 0; i < n; ++i) {
            float f = static_cast<float>(v[i] / divisor);
            out[i] = f > 1.0f ? 1.0f : f;
        }
        return;
    }
    // hardware: binary32 accumulation, divisor applied as a Newton-Raphson
    // reciprocal square root
    float sumsq = 0.0f;
    for (std::size_t i = 0; i < n; ++i) {
        sumsq += v[i] * v[i];
    }
    const float arg = sumsq + eps * eps;
    if (arg == 0.0f) {
        for (std::size_t i = 0; i < n; ++i) out[i] = 0.0f;
        return;
    }
    const float r = rsqrt_newton(arg, 3);
    for (std::size_t i = 0; i < n; ++i) {
        float f = v[i] * r;
        out[i] = f > 1.0f ? 1.0f : f; // saturate the invariant bound
    }
}

} // namespace

BlockDescriptor normalize_block(const CellHistogram& top_left, const CellHistogram& top_right,
                                const CellHistogram& bottom_left, const CellHistogram& bottom_right,
                                Backend backend, float eps) {
    float v[36];
    const CellHistogram* cells[4] = {&top_left, &top_right, &bottom_left, &bottom_right};
    for (int c = 0; c < 4; ++c) {
        for (int b = 0; b < 9; ++b) {
            v[c * 9 + b] = (*cells[c])[static_cast<std::size_t>(b)];
        }
    }
    BlockDescriptor out{};
    normalize_span(v, 36, backend, eps, out.data());
    return out;
}

WindowDescriptor assemble_descriptor(const GrayWindow& window, Backend backend,
                                     const HogGeometry& geom, float eps, Exec exec) {
    const GradientPairs grads = compute_gradients(window, exec);
    const GradientField field = polarize(grads, backend, exec);
    const CellGrid cells = cell_histograms(field, geom, exec);

    WindowDescriptor desc;
    desc.features.resize(static_cast<std::size_t>(geom.descriptor_len()));
    const int block_count = geom.block_count();
    const int block_len = geom.block_len();
    const bool par = exec == Exec::parallel;

#pragma omp parallel for if (par) schedule(static)
    for (int blk = 0; blk < block_count; ++blk) {
        const int bx = blk % geom.blocks_x;
        const int by = blk / geom.blocks_x;
        const BlockDescriptor block =
            normalize_block(cells.at(bx, by), cells.at(bx + 1, by), cells.at(bx, by + 1),
                            cells.at(bx + 1, by + 1), backend, eps);
        std::copy(block.begin(), block.end(),
                  desc.features.begin() + static_cast<std::size_t>(blk) * block_len);
    }
    return desc;
}

std::string descriptor_to_line(const WindowDescriptor& desc) {
    std::string line;
    line.reserve(desc.features.size() * 10);
    char buf[32];
    for (std::size_t i = 0; i < desc.features.size(); ++i) {
        if (i != 0) line.push_back(',');
        const auto res = std::to_chars(buf, buf + sizeof(buf), desc.features[i]);
        line.append(buf, res.ptr);
    }
    return line;
}

} // namespace hogsvm
