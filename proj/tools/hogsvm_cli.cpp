// Batch front end: extract | train | detect | eval | cycles.
//
// Exit codes are a stable contract: 0 success, 1 usage, 2 I/O, 3 geometry,
// 4 dataset, 5 model mismatch. Per-image work runs in parallel but output is
// emitted in manifest order, so repeated runs are byte-identical.

#include <charconv>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hogsvm/cycles.hpp"
#include "hogsvm/descriptor.hpp"
#include "hogsvm/errors.hpp"
#include "hogsvm/image.hpp"
#include "hogsvm/manifest.hpp"
#include "hogsvm/svm.hpp"

namespace {

using namespace hogsvm;

std::string float_to_shortest(float v) {
    char buf[64];
    const std::to_chars_result res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

// Run fn(i) for each index, in parallel, deferring exceptions so the first
// failing input (in manifest order, not completion order) is reported.
template <typename Fn>
void for_each_indexed(std::size_t count, Fn&& fn) {
    std::vector<std::exception_ptr> errors(count);
#pragma omp parallel for schedule(dynamic) if (count > 1)
    for (long long i = 0; i < static_cast<long long>(count); ++i) {
        try {
            fn(static_cast<std::size_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (const std::exception_ptr& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

GrayWindow load_window_named(const ManifestEntry& entry, CropMode crop) {
    try {
        return load_window(entry.path, crop);
    } catch (const GeometryError& e) {
        throw GeometryError(entry.as_written + ": " + e.what());
    }
}

// Writes to `path`, or to stdout when no path was given.
class OutputSink {
public:
    explicit OutputSink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary | std::ios::trunc);
            if (!file_) {
                throw IoError("cannot write " + path);
            }
            out_ = &file_;
        }
    }

    std::ostream& stream() { return *out_; }

    void finish(const std::string& path) {
        out_->flush();
        if (!*out_) {
            throw IoError("write failed" + (path.empty() ? "" : ": " + path));
        }
    }

private:
    std::ofstream file_;
    std::ostream* out_ = &std::cout;
};

struct CommonOpts {
    std::string manifest_path;
    std::string output_path;
    Backend backend = Backend::reference;
    CropMode crop = CropMode::exact;
    float eps = kDefaultEps;
};

SvmModel load_checked_model(const std::string& path) {
    const HogGeometry geom;
    SvmModel model = load_model(path, geom.descriptor_len());
    if (model.feature_order_version != kFeatureOrderVersion) {
        throw ModelError("feature order version mismatch: model file carries '" +
                         model.feature_order_version + "', this build expects '" +
                         kFeatureOrderVersion + "'");
    }
    return model;
}

std::vector<ManifestEntry> entries_for(const CommonOpts& opts,
                                       const std::vector<std::string>& images) {
    if (!opts.manifest_path.empty()) {
        return load_manifest(opts.manifest_path);
    }
    std::vector<ManifestEntry> entries;
    for (const std::string& img : images) {
        ManifestEntry e;
        e.path = img;
        e.as_written = img;
        entries.push_back(std::move(e));
    }
    if (entries.empty()) {
        throw DatasetError("no inputs: pass --manifest or image paths");
    }
    return entries;
}

std::vector<LabeledSample> extract_labeled(const std::vector<ManifestEntry>& entries,
                                           const CommonOpts& opts, const char* need_labels_for) {
    std::vector<LabeledSample> samples(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (!entries[i].label) {
            throw DatasetError(entries[i].as_written + ": missing label (required for " +
                               need_labels_for + ")");
        }
        samples[i].label = *entries[i].label;
    }
    for_each_indexed(entries.size(), [&](std::size_t i) {
        const GrayWindow w = load_window_named(entries[i], opts.crop);
        samples[i].descriptor = assemble_descriptor(w, opts.backend, HogGeometry{}, opts.eps,
                                                    Exec::serial);
    });
    return samples;
}

int run_extract(const CommonOpts& opts, const std::vector<std::string>& images) {
    const std::vector<ManifestEntry> entries = entries_for(opts, images);
    std::vector<std::string> lines(entries.size());
    for_each_indexed(entries.size(), [&](std::size_t i) {
        const GrayWindow w = load_window_named(entries[i], opts.crop);
        const WindowDescriptor d =
            assemble_descriptor(w, opts.backend, HogGeometry{}, opts.eps, Exec::serial);
        lines[i] = descriptor_to_line(d);
    });

    OutputSink sink(opts.output_path);
    for (const std::string& line : lines) {
        sink.stream() << line << '\n';
    }
    sink.finish(opts.output_path);
    return 0;
}

int run_train(const CommonOpts& opts, double lambda, int epochs, std::uint64_t seed) {
    const std::vector<ManifestEntry> entries = load_manifest(opts.manifest_path);
    const std::vector<LabeledSample> samples = extract_labeled(entries, opts, "train");

    const SvmModel model = train(samples, lambda, epochs, seed);
    save_model(model, opts.output_path);

    const EvalReport r = evaluate(model, samples);
    std::printf("trained on %lld samples (%lld person, %lld non-person)\n",
                static_cast<long long>(r.total()), static_cast<long long>(r.positives()),
                static_cast<long long>(r.negatives()));
    std::printf("training accuracy %lld/%lld (%.2f%%)\n",
                static_cast<long long>(r.true_pos + r.true_neg),
                static_cast<long long>(r.total()), r.accuracy_total() * 100.0);
    std::printf("model written to %s\n", opts.output_path.c_str());
    return 0;
}

int run_detect(const CommonOpts& opts, const std::string& model_path,
               const std::vector<std::string>& images) {
    const SvmModel model = load_checked_model(model_path);
    const std::vector<ManifestEntry> entries = entries_for(opts, images);

    std::vector<float> decisions(entries.size());
    for_each_indexed(entries.size(), [&](std::size_t i) {
        const GrayWindow w = load_window_named(entries[i], opts.crop);
        const WindowDescriptor d =
            assemble_descriptor(w, opts.backend, HogGeometry{}, opts.eps, Exec::serial);
        decisions[i] = decision_value(model, d);
    });

    OutputSink sink(opts.output_path);
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const int label = decisions[i] > 0.0f ? 1 : 0;
        sink.stream() << entries[i].as_written << ',' << float_to_shortest(decisions[i]) << ','
                      << label << '\n';
    }
    sink.finish(opts.output_path);
    return 0;
}

int run_eval(const CommonOpts& opts, const std::string& model_path) {
    const SvmModel model = load_checked_model(model_path);
    const std::vector<ManifestEntry> entries = load_manifest(opts.manifest_path);
    const std::vector<LabeledSample> samples = extract_labeled(entries, opts, "eval");
    const EvalReport r = evaluate(model, samples);

    std::printf("%-16s %6lld/%lld  %6.2f%%\n", "with person", static_cast<long long>(r.true_pos),
                static_cast<long long>(r.positives()), r.accuracy_person() * 100.0);
    std::printf("%-16s %6lld/%lld  %6.2f%%\n", "without person",
                static_cast<long long>(r.true_neg), static_cast<long long>(r.negatives()),
                r.accuracy_non_person() * 100.0);
    std::printf("%-16s %6lld/%lld  %6.2f%%\n", "total",
                static_cast<long long>(r.true_pos + r.true_neg),
                static_cast<long long>(r.total()), r.accuracy_total() * 100.0);
    return 0;
}

int run_cycles(const CyclePlan& plan, const std::string& format) {
    const CycleReport report = estimate(HogGeometry{}, plan);
    const ReportedComparison cmp = compare_to_reported(report);
    std::cout << (format == "kv" ? format_cycle_kv(report, cmp)
                                 : format_cycle_table(report, cmp));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"HOG + linear SVM pedestrian detection engine for 66x130 windows"};
    app.require_subcommand(1);

    const std::map<std::string, Backend> backend_names{{"reference", Backend::reference},
                                                       {"hardware", Backend::hardware}};
    const std::map<std::string, CropMode> crop_names{{"exact", CropMode::exact},
                                                     {"center", CropMode::center_crop}};
    const std::map<std::string, OverlapMode> overlap_names{
        {"sequential", OverlapMode::sequential}, {"overlapped", OverlapMode::cell_norm_overlapped}};

    CommonOpts extract_opts;
    std::vector<std::string> extract_images;
    CLI::App* extract = app.add_subcommand("extract", "Write one descriptor line per window");
    extract->add_option("--manifest", extract_opts.manifest_path, "Manifest of input images");
    extract->add_option("images", extract_images, "Image paths (alternative to --manifest)");
    extract->add_option("--out", extract_opts.output_path, "Output file (default stdout)");
    extract->add_option("--backend", extract_opts.backend, "Numeric backend")
        ->transform(CLI::CheckedTransformer(backend_names))
        ->default_str("reference");
    extract->add_option("--crop", extract_opts.crop, "Window crop mode")
        ->transform(CLI::CheckedTransformer(crop_names))
        ->default_str("exact");
    extract->add_option("--eps", extract_opts.eps, "Block normalization epsilon")->capture_default_str();

    CommonOpts train_opts;
    double lambda = 1e-4;
    int epochs = 20;
    std::uint64_t seed = 1;
    CLI::App* train_cmd = app.add_subcommand("train", "Train a linear SVM from a labeled manifest");
    train_cmd->add_option("--manifest", train_opts.manifest_path, "Labeled manifest")->required();
    train_cmd->add_option("--out", train_opts.output_path, "Model file to write")->required();
    train_cmd->add_option("--backend", train_opts.backend, "Numeric backend")
        ->transform(CLI::CheckedTransformer(backend_names))
        ->default_str("reference");
    train_cmd->add_option("--crop", train_opts.crop, "Window crop mode")
        ->transform(CLI::CheckedTransformer(crop_names))
        ->default_str("exact");
    train_cmd->add_option("--eps", train_opts.eps, "Block normalization epsilon")->capture_default_str();
    train_cmd->add_option("--lambda", lambda, "Regularization strength")->capture_default_str();
    train_cmd->add_option("--epochs", epochs, "Training epochs")->capture_default_str();
    train_cmd->add_option("--seed", seed, "Shuffle seed")->capture_default_str();

    CommonOpts detect_opts;
    detect_opts.backend = Backend::hardware;
    std::vector<std::string> detect_images;
    std::string detect_model;
    CLI::App* detect = app.add_subcommand("detect", "Classify windows with a trained model");
    detect->add_option("--model", detect_model, "Model file")->required();
    detect->add_option("--manifest", detect_opts.manifest_path, "Manifest of input images");
    detect->add_option("images", detect_images, "Image paths (alternative to --manifest)");
    detect->add_option("--out", detect_opts.output_path, "Output file (default stdout)");
    detect->add_option("--backend", detect_opts.backend, "Numeric backend")
        ->transform(CLI::CheckedTransformer(backend_names))
        ->default_str("hardware");
    detect->add_option("--crop", detect_opts.crop, "Window crop mode")
        ->transform(CLI::CheckedTransformer(crop_names))
        ->default_str("exact");
    detect->add_option("--eps", detect_opts.eps, "Block normalization epsilon")->capture_default_str();

    CommonOpts eval_opts;
    eval_opts.backend = Backend::hardware;
    std::string eval_model;
    CLI::App* eval_cmd = app.add_subcommand("eval", "Score a model against a labeled manifest");
    eval_cmd->add_option("--model", eval_model, "Model file")->required();
    eval_cmd->add_option("--manifest", eval_opts.manifest_path, "Labeled manifest")->required();
    eval_cmd->add_option("--backend", eval_opts.backend, "Numeric backend")
        ->transform(CLI::CheckedTransformer(backend_names))
        ->default_str("hardware");
    eval_cmd->add_option("--crop", eval_opts.crop, "Window crop mode")
        ->transform(CLI::CheckedTransformer(crop_names))
        ->default_str("exact");
    eval_cmd->add_option("--eps", eval_opts.eps, "Block normalization epsilon")->capture_default_str();

    CyclePlan plan;
    std::string cycles_format = "table";
    CLI::App* cycles = app.add_subcommand("cycles", "Print the clock-budget model");
    cycles->add_option("--clock-hz", plan.clock_hz, "Clock frequency")->capture_default_str();
    cycles->add_option("--cycles-per-cell", plan.cycles_per_cell, "Cycles per cell histogram")
        ->capture_default_str();
    cycles->add_option("--cycles-per-block-norm", plan.cycles_per_block_norm,
                       "Cycles per block normalization")->capture_default_str();
    cycles->add_option("--cycles-per-mac", plan.cycles_per_mac, "Cycles per SVM MAC")->capture_default_str();
    cycles->add_option("--svm-fill", plan.svm_pipeline_fill, "SVM pipeline fill cycles")->capture_default_str();
    cycles->add_option("--overlap", plan.overlap, "Stage overlap mode")
        ->transform(CLI::CheckedTransformer(overlap_names))
        ->default_str("sequential");
    cycles->add_option("--format", cycles_format, "Output format")
        ->check(CLI::IsMember({"table", "kv"}))
        ->default_str("table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (extract->parsed()) {
            return run_extract(extract_opts, extract_images);
        }
        if (train_cmd->parsed()) {
            return run_train(train_opts, lambda, epochs, seed);
        }
        if (detect->parsed()) {
            return run_detect(detect_opts, detect_model, detect_images);
        }
        if (eval_cmd->parsed()) {
            return run_eval(eval_opts, eval_model);
        }
        if (cycles->parsed()) {
            return run_cycles(plan, cycles_format);
        }
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const GeometryError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const DatasetError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const ModelError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
