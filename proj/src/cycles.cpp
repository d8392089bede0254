#include "hogsvm/cycles.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace hogsvm {

namespace {

std::string with_thousands(std::uint64_t v) {
    std::string digits = std::to_string(v);
    std::string out;
    out.reserve(digits.size() + digits.size() / 3);
    const std::size_t lead = digits.size() % 3 == 0 ? 3 : digits.size() % 3;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (i != 0 && (i - lead) % 3 == 0 && i >= lead) {
            out.push_back(',');
        }
        out.push_back(digits[i]);
    }
    return out;
}

std::string fmt_ms(double seconds) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f ms", seconds * 1e3);
    return buf;
}

std::string fmt_pct(double frac) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%+.2f%%", frac * 100.0);
    return buf;
}

const char* mode_name(OverlapMode m) {
    return m == OverlapMode::sequential ? "sequential" : "cell_norm_overlapped";
}

} // namespace

CycleReport estimate(const HogGeometry& geom, const CyclePlan& plan) {
    if (plan.clock_hz == 0) {
        throw std::invalid_argument("clock_hz must be nonzero");
    }
    CycleReport r;
    r.clock_hz = plan.clock_hz;
    r.overlap = plan.overlap;

    const std::uint64_t cells = static_cast<std::uint64_t>(geom.cell_count());
    const std::uint64_t blocks = static_cast<std::uint64_t>(geom.block_count());
    const std::uint64_t macs = static_cast<std::uint64_t>(geom.descriptor_len());

    r.cell_stage_cycles = cells * plan.cycles_per_cell;
    r.norm_stage_cycles = blocks * plan.cycles_per_block_norm;
    r.svm_stage_cycles = macs * plan.cycles_per_mac + plan.svm_pipeline_fill;

    const std::uint64_t sequential = r.cell_stage_cycles + r.norm_stage_cycles;
    if (plan.overlap == OverlapMode::sequential) {
        r.total_extract_cycles = sequential;
    } else {
        const std::uint64_t streamed =
            std::max(r.cell_stage_cycles, r.norm_stage_cycles) + plan.cycles_per_block_norm;
        r.total_extract_cycles = std::min(sequential, streamed);
    }
    r.total_detect_cycles = r.total_extract_cycles + r.svm_stage_cycles;

    const double hz = static_cast<double>(plan.clock_hz);
    r.extract_time_s = static_cast<double>(r.total_extract_cycles) / hz;
    r.svm_time_s = static_cast<double>(r.svm_stage_cycles) / hz;
    r.detect_time_s = static_cast<double>(r.total_detect_cycles) / hz;
    return r;
}

ReportedComparison compare_to_reported(const CycleReport& report) {
    constexpr double kReportedSvmSeconds = kReportedDetectSeconds - kReportedExtractSeconds;
    ReportedComparison cmp;
    cmp.rows[0] = {"extract", kReportedExtractSeconds, report.extract_time_s, 0.0};
    cmp.rows[1] = {"detect", kReportedDetectSeconds, report.detect_time_s, 0.0};
    cmp.rows[2] = {"svm", kReportedSvmSeconds, report.svm_time_s, 0.0};
    for (ComparisonRow& row : cmp.rows) {
        row.rel_diff = (row.model_s - row.reported_s) / row.reported_s;
    }
    return cmp;
}

std::string format_cycle_table(const CycleReport& report, const ReportedComparison& cmp) {
    std::ostringstream out;
    out << "stage cycles (" << mode_name(report.overlap) << ", "
        << with_thousands(report.clock_hz) << " Hz)\n";
    out << "  cell histograms      " << with_thousands(report.cell_stage_cycles) << "\n";
    out << "  block normalization  " << with_thousands(report.norm_stage_cycles) << "\n";
    out << "  svm evaluation       " << with_thousands(report.svm_stage_cycles) << "\n";
    out << "  extract total        " << with_thousands(report.total_extract_cycles) << "  ("
        << fmt_ms(report.extract_time_s) << ")\n";
    out << "  detect total         " << with_thousands(report.total_detect_cycles) << "  ("
        << fmt_ms(report.detect_time_s) << ")\n";
    out << "comparison to reported timings\n";
    for (const ComparisonRow& row : cmp.rows) {
        out << "  " << row.name;
        for (std::size_t pad = row.name.size(); pad < 9; ++pad) {
            out << ' ';
        }
        out << "reported " << fmt_ms(row.reported_s) << "  model " << fmt_ms(row.model_s)
            << "  rel " << fmt_pct(row.rel_diff) << "\n";
    }
    return out.str();
}

std::string format_cycle_kv(const CycleReport& report, const ReportedComparison& cmp) {
    std::ostringstream out;
    out << "overlap=" << mode_name(report.overlap) << "\n";
    out << "clock_hz=" << report.clock_hz << "\n";
    out << "cell_stage_cycles=" << report.cell_stage_cycles << "\n";
    out << "norm_stage_cycles=" << report.norm_stage_cycles << "\n";
    out << "svm_stage_cycles=" << report.svm_stage_cycles << "\n";
    out << "total_extract_cycles=" << report.total_extract_cycles << "\n";
    out << "total_detect_cycles=" << report.total_detect_cycles << "\n";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9e", report.extract_time_s);
    out << "extract_time_s=" << buf << "\n";
    std::snprintf(buf, sizeof(buf), "%.9e", report.svm_time_s);
    out << "svm_time_s=" << buf << "\n";
    std::snprintf(buf, sizeof(buf), "%.9e", report.detect_time_s);
    out << "detect_time_s=" << buf << "\n";
    for (const ComparisonRow& row : cmp.rows) {
        std::snprintf(buf, sizeof(buf), "%.9e", row.reported_s);
        out << row.name << "_reported_s=" << buf << "\n";
        std::snprintf(buf, sizeof(buf), "%.9e", row.model_s);
        out << row.name << "_model_s=" << buf << "\n";
        std::snprintf(buf, sizeof(buf), "%.6f", row.rel_diff);
        out << row.name << "_rel_diff=" << buf << "\n";
    }
    return out.str();
}

} // namespace hogsvm
