#include <doctest.h>

#include <random>
#include <stdexcept>
#include <string>

#include "hogsvm/cycles.hpp"

using namespace hogsvm;

TEST_CASE("default plan reproduces the per-unit budgets") {
    const CycleReport r = estimate(HogGeometry{}, CyclePlan{});
    CHECK(r.cell_stage_cycles == 13824); // 128 cells x 108
    CHECK(r.norm_stage_cycles == 4935);  // 105 blocks x 47
    CHECK(r.svm_stage_cycles == 3780);   // 3780 MACs x 1
    CHECK(r.total_extract_cycles == 18759);
    CHECK(r.total_detect_cycles == 22539);
    CHECK(r.extract_time_s == 18759.0 / 50'000'000.0);
    CHECK(r.detect_time_s == 22539.0 / 50'000'000.0);
    CHECK(r.clock_hz == 50'000'000);
}

TEST_CASE("comparison rows never assert equality, only deltas") {
    const CycleReport r = estimate(HogGeometry{}, CyclePlan{});
    const ReportedComparison cmp = compare_to_reported(r);
    CHECK(cmp.rows[0].name == "extract");
    CHECK(cmp.rows[0].reported_s == 0.411e-3);
    CHECK(cmp.rows[0].model_s == r.extract_time_s);
    CHECK(cmp.rows[1].name == "detect");
    CHECK(cmp.rows[1].reported_s == 0.757e-3);
    CHECK(cmp.rows[2].name == "svm");
    CHECK(cmp.rows[2].reported_s == doctest::Approx(0.346e-3));
    for (const ComparisonRow& row : cmp.rows) {
        CHECK(row.rel_diff == (row.model_s - row.reported_s) / row.reported_s);
    }
}

TEST_CASE("a tuned multi-cycle MAC lands exactly on the reported detect time") {
    CyclePlan plan;
    plan.cycles_per_mac = 5;
    plan.svm_pipeline_fill = 191;
    const CycleReport r = estimate(HogGeometry{}, plan);
    CHECK(r.total_detect_cycles == 37850); // 18759 + 5*3780 + 191
    CHECK(r.detect_time_s == 0.757e-3);
    const ReportedComparison cmp = compare_to_reported(r);
    CHECK(cmp.rows[1].rel_diff == 0.0);
}

TEST_CASE("doubling the clock halves every time") {
    CyclePlan fast;
    fast.clock_hz = 100'000'000;
    const CycleReport slow = estimate(HogGeometry{}, CyclePlan{});
    const CycleReport quick = estimate(HogGeometry{}, fast);
    CHECK(quick.total_detect_cycles == slow.total_detect_cycles);
    CHECK(quick.extract_time_s == slow.extract_time_s / 2.0);
    CHECK(quick.svm_time_s == slow.svm_time_s / 2.0);
    CHECK(quick.detect_time_s == slow.detect_time_s / 2.0);
}

TEST_CASE("a free SVM stage reads as minus one hundred percent") {
    CyclePlan plan;
    plan.cycles_per_mac = 0;
    plan.svm_pipeline_fill = 0;
    const CycleReport r = estimate(HogGeometry{}, plan);
    CHECK(r.svm_stage_cycles == 0);
    CHECK(r.svm_time_s == 0.0);
    CHECK(compare_to_reported(r).rows[2].rel_diff == -1.0);
}

TEST_CASE("overlapped extraction hides the shorter stage") {
    CyclePlan plan;
    plan.overlap = OverlapMode::cell_norm_overlapped;
    const CycleReport r = estimate(HogGeometry{}, plan);
    // normalization streams behind the cells: max(13824, 4935) + one final
    // 47-cycle drain
    CHECK(r.total_extract_cycles == 13871);
    CHECK(r.total_detect_cycles == 13871 + 3780);

    SUBCASE("never exceeds the sequential schedule") {
        std::mt19937_64 rng(8);
        for (int i = 0; i < 500; ++i) {
            CyclePlan p;
            p.cycles_per_cell = rng() % 1000;
            p.cycles_per_block_norm = rng() % 1000;
            p.cycles_per_mac = rng() % 16;
            p.overlap = OverlapMode::cell_norm_overlapped;
            CyclePlan seq = p;
            seq.overlap = OverlapMode::sequential;
            const CycleReport over = estimate(HogGeometry{}, p);
            const CycleReport base = estimate(HogGeometry{}, seq);
            CHECK(over.total_extract_cycles <= base.total_extract_cycles);
            CHECK(over.total_extract_cycles >=
                  std::max(over.cell_stage_cycles, over.norm_stage_cycles));
        }
    }
}

TEST_CASE("a zero clock is rejected") {
    CyclePlan plan;
    plan.clock_hz = 0;
    CHECK_THROWS_AS(estimate(HogGeometry{}, plan), std::invalid_argument);
}

TEST_CASE("table format carries thousands separators") {
    const CycleReport r = estimate(HogGeometry{}, CyclePlan{});
    const std::string table = format_cycle_table(r, compare_to_reported(r));
    CHECK(table.find("13,824") != std::string::npos);
    CHECK(table.find("4,935") != std::string::npos);
    CHECK(table.find("18,759") != std::string::npos);
    CHECK(table.find("50,000,000") != std::string::npos);
    CHECK(table.find("reported") != std::string::npos);
}

TEST_CASE("kv format is line-oriented and script-friendly") {
    const CycleReport r = estimate(HogGeometry{}, CyclePlan{});
    const std::string kv = format_cycle_kv(r, compare_to_reported(r));
    CHECK(kv.find("cell_stage_cycles=13824\n") != std::string::npos);
    CHECK(kv.find("norm_stage_cycles=4935\n") != std::string::npos);
    CHECK(kv.find("total_detect_cycles=22539\n") != std::string::npos);
    CHECK(kv.find("overlap=sequential\n") != std::string::npos);
    CHECK(kv.find("detect_reported_s=7.570000000e-04\n") != std::string::npos);
}
