#include "hogsvm/svm.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>
#include <random>

#include "hogsvm/errors.hpp"

namespace hogsvm {

namespace {

constexpr char kMagic[8] = {'H', 'O', 'G', 'S', 'V', 'M', '0', '1'};

void check_dims(const SvmModel& model, const WindowDescriptor& x) {
    if (model.weights.size() != x.features.size()) {
        throw ModelError("dimension mismatch: model has " + std::to_string(model.weights.size()) +
                         " weights, descriptor has " + std::to_string(x.features.size()));
    }
}

double dot_double(const std::vector<double>& w, const std::vector<float>& x) {
    double acc = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        acc += w[i] * x[i];
    }
    return acc;
}

// Permutation order must not depend on the standard library build, so the
// shuffle is spelled out instead of using std::shuffle.
void fisher_yates(std::vector<std::uint32_t>& idx, std::mt19937_64& rng) {
    for (std::size_t i = idx.size() - 1; i > 0; --i) {
        const std::size_t j = static_cast<std::size_t>(rng() % (i + 1));
        std::swap(idx[i], idx[j]);
    }
}

void put_u32le(std::ostream& out, std::uint32_t v) {
    const char bytes[4] = {static_cast<char>(v & 0xFF), static_cast<char>((v >> 8) & 0xFF),
                           static_cast<char>((v >> 16) & 0xFF), static_cast<char>((v >> 24) & 0xFF)};
    out.write(bytes, 4);
}

void put_f32le(std::ostream& out, float f) {
    put_u32le(out, std::bit_cast<std::uint32_t>(f));
}

class ByteReader {
public:
    explicit ByteReader(std::vector<char> bytes) : bytes_(std::move(bytes)) {}

    void raw(char* dst, std::size_t n, const char* what) {
        if (bytes_.size() - pos_ < n) {
            throw ModelError(std::string("truncated model file: ") + what);
        }
        std::memcpy(dst, bytes_.data() + pos_, n);
        pos_ += n;
    }

    std::uint32_t u32le(const char* what) {
        unsigned char b[4];
        raw(reinterpret_cast<char*>(b), 4, what);
        return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
               (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
    }

    float f32le(const char* what) { return std::bit_cast<float>(u32le(what)); }

private:
    std::vector<char> bytes_;
    std::size_t pos_ = 0;
};

} // namespace

double EvalReport::accuracy_person() const {
    return positives() == 0 ? 0.0 : static_cast<double>(true_pos) / static_cast<double>(positives());
}

double EvalReport::accuracy_non_person() const {
    return negatives() == 0 ? 0.0 : static_cast<double>(true_neg) / static_cast<double>(negatives());
}

double EvalReport::accuracy_total() const {
    return total() == 0 ? 0.0
                        : static_cast<double>(true_pos + true_neg) / static_cast<double>(total());
}

float decision_value(const SvmModel& model, const WindowDescriptor& x) {
    check_dims(model, x);
    float acc = 0.0f;
    for (std::size_t i = 0; i < model.weights.size(); ++i) {
        acc += model.weights[i] * x.features[i];
    }
    return acc + model.bias;
}

int classify(const SvmModel& model, const WindowDescriptor& x) {
    return decision_value(model, x) > 0.0f ? 1 : 0;
}

SvmModel train(const std::vector<LabeledSample>& samples, double lambda, int epochs,
               std::uint64_t seed) {
    if (samples.empty()) {
        throw DatasetError("training set is empty");
    }
    if (!(lambda > 0.0)) {
        throw DatasetError("lambda must be positive");
    }
    const std::size_t dim = samples[0].descriptor.features.size();
    bool has_pos = false;
    bool has_neg = false;
    for (const LabeledSample& s : samples) {
        if (s.descriptor.features.size() != dim) {
            throw DatasetError("inconsistent descriptor lengths in training set");
        }
        for (float f : s.descriptor.features) {
            if (!std::isfinite(f)) {
                throw DatasetError("non-finite feature value in training set");
            }
        }
        (s.label == 1 ? has_pos : has_neg) = true;
    }
    if (!has_pos || !has_neg) {
        throw DatasetError("training set must contain both classes");
    }

    std::vector<double> w(dim, 0.0);
    double b = 0.0;
    std::mt19937_64 rng(seed);
    std::vector<std::uint32_t> idx(samples.size());
    std::iota(idx.begin(), idx.end(), 0u);

    std::uint64_t t = 1;
    for (int epoch = 0; epoch < epochs; ++epoch) {
        fisher_yates(idx, rng);
        for (std::uint32_t i : idx) {
            const LabeledSample& s = samples[i];
            const double y = s.label == 1 ? 1.0 : -1.0;
            const double eta = 1.0 / (lambda * static_cast<double>(t));
            const double margin = y * (dot_double(w, s.descriptor.features) + b);
            const double shrink = 1.0 - eta * lambda; // = 1 - 1/t
            if (margin < 1.0) {
                const double step = eta * y;
                for (std::size_t j = 0; j < dim; ++j) {
                    w[j] = w[j] * shrink + step * s.descriptor.features[j];
                }
                b += step; // bias is unregularized
            } else {
                for (std::size_t j = 0; j < dim; ++j) {
                    w[j] *= shrink;
                }
            }
            ++t;
        }
    }

    SvmModel model;
    model.weights.resize(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        model.weights[j] = static_cast<float>(w[j]);
    }
    model.bias = static_cast<float>(b);
    return model;
}

double hinge_objective(const SvmModel& model, const std::vector<LabeledSample>& samples,
                       double lambda) {
    if (samples.empty()) {
        throw DatasetError("cannot evaluate objective on an empty sample list");
    }
    double wsq = 0.0;
    for (float wi : model.weights) {
        wsq += static_cast<double>(wi) * wi;
    }
    double hinge = 0.0;
    for (const LabeledSample& s : samples) {
        const double y = s.label == 1 ? 1.0 : -1.0;
        double d = 0.0;
        for (std::size_t i = 0; i < model.weights.size(); ++i) {
            d += static_cast<double>(model.weights[i]) * s.descriptor.features[i];
        }
        d += model.bias;
        hinge += std::max(0.0, 1.0 - y * d);
    }
    return 0.5 * lambda * wsq + hinge / static_cast<double>(samples.size());
}

EvalReport evaluate(const SvmModel& model, const std::vector<LabeledSample>& samples) {
    if (samples.empty()) {
        throw DatasetError("cannot evaluate on an empty sample list");
    }
    EvalReport r;
    for (const LabeledSample& s : samples) {
        const int predicted = classify(model, s.descriptor);
        if (s.label == 1) {
            (predicted == 1 ? r.true_pos : r.false_neg) += 1;
        } else {
            (predicted == 0 ? r.true_neg : r.false_pos) += 1;
        }
    }
    return r;
}

void save_model(const SvmModel& model, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    out.write(kMagic, sizeof(kMagic));
    put_u32le(out, static_cast<std::uint32_t>(model.weights.size()));
    put_u32le(out, static_cast<std::uint32_t>(model.feature_order_version.size()));
    out.write(model.feature_order_version.data(),
              static_cast<std::streamsize>(model.feature_order_version.size()));
    for (float wi : model.weights) {
        put_f32le(out, wi);
    }
    put_f32le(out, model.bias);
    if (!out) {
        throw IoError("write failed: " + path.string());
    }
}

SvmModel load_model(const std::filesystem::path& path, int expected_features) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::vector<char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    ByteReader r(std::move(bytes));

    char magic[8];
    r.raw(magic, sizeof(magic), "magic");
    if (std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
        throw ModelError("bad magic in " + path.string());
    }
    const std::uint32_t count = r.u32le("feature count");
    if (expected_features > 0 && count != static_cast<std::uint32_t>(expected_features)) {
        throw ModelError("feature count mismatch: file declares " + std::to_string(count) +
                         ", expected " + std::to_string(expected_features));
    }
    const std::uint32_t version_len = r.u32le("version length");
    SvmModel model;
    model.feature_order_version.resize(version_len);
    if (version_len > 0) {
        r.raw(model.feature_order_version.data(), version_len, "version string");
    }
    model.weights.resize(count);
    for (std::uint32_t i = 0; i < count; ++i) {
        model.weights[i] = r.f32le("weights");
    }
    model.bias = r.f32le("bias");
    return model;
}

} // namespace hogsvm
