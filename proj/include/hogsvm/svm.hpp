#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "hogsvm/descriptor.hpp"

namespace hogsvm {

struct SvmModel {
    std::vector<float> weights;
    float bias = 0.0f;
    std::string feature_order_version = kFeatureOrderVersion;
};

struct LabeledSample {
    WindowDescriptor descriptor;
    int label = 0; // 1 = person, 0 = non-person
};

struct EvalReport {
    std::int64_t true_pos = 0;
    std::int64_t false_neg = 0;
    std::int64_t true_neg = 0;
    std::int64_t false_pos = 0;

    std::int64_t positives() const { return true_pos + false_neg; }
    std::int64_t negatives() const { return true_neg + false_pos; }
    std::int64_t total() const { return positives() + negatives(); }
    double accuracy_person() const;
    double accuracy_non_person() const;
    double accuracy_total() const;
};

// W . X + b accumulated sequentially in binary32, features in canonical
// order, bias added last. The accumulation order is part of the contract:
// repeated runs are bit-identical.
float decision_value(const SvmModel& model, const WindowDescriptor& x);

// 1 iff the decision value is strictly positive. The boundary D(X) = 0 is
// classified as non-person.
int classify(const SvmModel& model, const WindowDescriptor& x);

// Pegasos-style hinge-loss subgradient descent. Labels map to +/-1, the bias
// rides along unregularized, the step size is 1/(lambda t), and each epoch
// visits the samples in a freshly shuffled order drawn from a generator
// seeded with `seed` (hand-rolled Fisher-Yates so the permutation sequence
// does not depend on the standard library build). Deterministic: identical
// inputs and seed give a bit-identical model.
SvmModel train(const std::vector<LabeledSample>& samples, double lambda, int epochs,
               std::uint64_t seed);

// lambda/2 |w|^2 + mean hinge loss, evaluated in double.
double hinge_objective(const SvmModel& model, const std::vector<LabeledSample>& samples,
                       double lambda);

EvalReport evaluate(const SvmModel& model, const std::vector<LabeledSample>& samples);

// Bit-exact model file:
//   "HOGSVM01" . u32le feature count . u32le version length L . L version
//   bytes . count x f32le weights . f32le bias
// No padding, no checksum. load(save(m)) reproduces m bit for bit.
void save_model(const SvmModel& model, const std::filesystem::path& path);

// expected_features > 0 enforces the declared feature count (the usual call
// passes the geometry's descriptor length); 0 accepts any count.
SvmModel load_model(const std::filesystem::path& path, int expected_features = 3780);

} // namespace hogsvm
