#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "hogsvm/descriptor.hpp"

namespace hogsvm {

enum class OverlapMode {
    sequential,            // stages run back to back
    cell_norm_overlapped,  // block normalization overlaps the cell stream
};

// Per-unit clock budgets of the modeled datapath. Defaults: 108 cycles per
// cell, 47 per block normalization, 1 per SVM MAC (a placeholder; the MAC is
// plausibly multi-cycle and is exposed so the totals can be fitted), 50 MHz.
struct CyclePlan {
    std::uint64_t cycles_per_cell = 108;
    std::uint64_t cycles_per_block_norm = 47;
    std::uint64_t cycles_per_mac = 1;
    std::uint64_t svm_pipeline_fill = 0;
    std::uint64_t clock_hz = 50'000'000;
    OverlapMode overlap = OverlapMode::sequential;
};

struct CycleReport {
    std::uint64_t cell_stage_cycles = 0;
    std::uint64_t norm_stage_cycles = 0;
    std::uint64_t svm_stage_cycles = 0;
    std::uint64_t total_extract_cycles = 0;
    std::uint64_t total_detect_cycles = 0;
    double extract_time_s = 0.0;
    double svm_time_s = 0.0;
    double detect_time_s = 0.0;
    std::uint64_t clock_hz = 0;
    OverlapMode overlap = OverlapMode::sequential;
};

// All cycle arithmetic is exact integer math; the only division is
// cycles / clock_hz when deriving the wall times.
//
// sequential: extract = cell + norm. cell_norm_overlapped: the normalizer
// consumes cells as they stream, so extract = max(cell, norm) plus one
// block-normalization latency to drain the final block, capped by the
// sequential total. detect = extract + svm in both modes.
CycleReport estimate(const HogGeometry& geom, const CyclePlan& plan);

// Reported timings of the modeled hardware at 50 MHz, used as comparison
// targets (never asserted as equalities; the stage composition between the
// published per-unit budgets is not specified, so the model brackets them).
inline constexpr double kReportedExtractSeconds = 0.411e-3;
inline constexpr double kReportedDetectSeconds = 0.757e-3;

struct ComparisonRow {
    std::string name;
    double reported_s = 0.0;
    double model_s = 0.0;
    double rel_diff = 0.0; // (model - reported) / reported
};

// Three readings: extract vs 0.411 ms, full detect vs 0.757 ms, and the SVM
// stage vs 0.346 ms (the detect-minus-extract reading, in case the reported
// detect time includes extraction).
struct ReportedComparison {
    std::array<ComparisonRow, 3> rows;
};

ReportedComparison compare_to_reported(const CycleReport& report);

// Human-readable table (thousands-separated cycle counts) and line-oriented
// key=value pairs for scripting.
std::string format_cycle_table(const CycleReport& report, const ReportedComparison& cmp);
std::string format_cycle_kv(const CycleReport& report, const ReportedComparison& cmp);

} // namespace hogsvm
