// tsexplain: detect, explain, inject and benchmark time-series anomalies.
//
// Subcommands:
//   detect   find anomalous windows in a test series against training data
//   explain  detect, then produce a counterfactual explanation per anomaly
//   corrupt  inject a synthetic corruption into a series (with ground truth)
//   bench    detect-then-explain study over synthetic or user sources
//   init-config  print a fully commented default config file
//
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tsexplain/bench.hpp"
#include "tsexplain/config.hpp"
#include "tsexplain/csv.hpp"
#include "tsexplain/json_io.hpp"
#include "tsexplain/time_utils.hpp"

namespace {

using tsexplain::Config;
using tsexplain::DataError;
using tsexplain::TimeSeries;

struct CommonArgs {
    std::string train_path;
    std::string test_path;
    std::string config_path;
    std::string out_path;
    std::string format = "json";
    std::optional<std::size_t> window;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> workers;
    bool emit_plot_data = false;
};

Config effective_config(const CommonArgs& args) {
    Config cfg = args.config_path.empty() ? Config{} : tsexplain::load_config(args.config_path);
    if (args.window) {
        cfg.window = *args.window;
    }
    if (args.seed) {
        cfg.seed = *args.seed;
    }
    if (args.workers) {
        cfg.workers = *args.workers;
    }
    cfg.validate();
    return cfg;
}

void write_text_file(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw DataError("cannot write file: " + path);
    }
    out << text;
    if (!out) {
        throw DataError("failed writing file: " + path);
    }
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

double resolve_threshold(const Config& cfg, const TimeSeries& train) {
    if (cfg.threshold_value) {
        return *cfg.threshold_value;
    }
    return tsexplain::train_threshold(train, cfg.window, cfg.threshold_mode);
}

std::vector<tsexplain::AnomalyCandidate> run_detect(const Config& cfg, const TimeSeries& train,
                                                    const TimeSeries& test, double threshold) {
    const std::size_t exclusion = cfg.exclusion == 0 ? cfg.window : cfg.exclusion;
    return tsexplain::find_anomalies(test, train, cfg.window, threshold, exclusion);
}

/// Tab-separated overlay of the anomaly, its neighbor and the transformed
/// anomaly (all z-normalized), one row per sample.
void emit_overlay(const std::string& base, std::size_t index,
                  const tsexplain::AnomalyCandidate& cand, const TimeSeries& train,
                  const tsexplain::Explanation& e) {
    const TimeSeries neighbor = train.slice(e.neighbor_location, e.window_length);
    const std::vector<double> za = tsexplain::znormalize(cand.window.span());
    const std::vector<double> zn = tsexplain::znormalize(neighbor.span());
    std::vector<double> zt;
    if (e.best.transformed && e.best.transformed->size() >= 2) {
        zt = tsexplain::znormalize(e.best.transformed->span());
    }
    std::string path = base + ".cand" + std::to_string(index) + ".overlay.tsv";
    std::ofstream out(path);
    if (!out) {
        throw DataError("cannot write file: " + path);
    }
    out.precision(17);
    out << "sample\tanomaly\tneighbor\ttransformed\n";
    for (std::size_t i = 0; i < za.size(); ++i) {
        out << i << '\t' << za[i] << '\t' << zn[i] << '\t';
        if (i < zt.size()) {
            out << zt[i];
        }
        out << '\n';
    }
}

int cmd_detect(const CommonArgs& args) {
    const Config cfg = effective_config(args);
    const TimeSeries train = tsexplain::load_csv(args.train_path);
    const TimeSeries test = tsexplain::load_csv(args.test_path);
    tsexplain::validate_series(train, "train");
    tsexplain::validate_series(test, "test");
    const double threshold = resolve_threshold(cfg, train);
    const auto candidates = run_detect(cfg, train, test, threshold);

    if (args.format == "json") {
        write_json_file(args.out_path, tsexplain::detect_document(candidates, cfg.window,
                                                                  threshold, args.test_path,
                                                                  args.train_path));
    } else {
        std::string text = "threshold " + std::to_string(threshold) + "\n";
        for (const auto& c : candidates) {
            text += "candidate at " + std::to_string(c.location) + " score " +
                    std::to_string(c.score) + " neighbor " +
                    std::to_string(c.neighbor_location) + "\n";
        }
        write_text_file(args.out_path, text);
    }
    return 0;
}

int cmd_explain(const CommonArgs& args) {
    const Config cfg = effective_config(args);
    const TimeSeries train = tsexplain::load_csv(args.train_path);
    const TimeSeries test = tsexplain::load_csv(args.test_path);
    tsexplain::validate_series(train, "train");
    tsexplain::validate_series(test, "test");
    const double threshold = resolve_threshold(cfg, train);
    const auto candidates = run_detect(cfg, train, test, threshold);

    nlohmann::json docs = nlohmann::json::array();
    std::string text;
    std::size_t idx = 0;
    for (const auto& cand : candidates) {
        const tsexplain::Explanation e =
            tsexplain::explain(cand.window, cand.location, train, cfg.explain, threshold);
        if (e.below_threshold) {
            std::cerr << "warning: candidate at " << cand.location
                      << " does not exceed the anomaly threshold\n";
        }
        docs.push_back(tsexplain::explanation_document(e, cand, args.test_path, args.train_path));
        text += e.text + "\n";
        if (args.emit_plot_data) {
            const std::string base = args.out_path.empty() ? "tsexplain" : args.out_path;
            emit_overlay(base, idx, cand, train, e);
        }
        ++idx;
    }

    if (args.format == "json") {
        write_json_file(args.out_path, docs);
    } else {
        write_text_file(args.out_path, text);
    }
    return 0;
}

int cmd_bench(const CommonArgs& args) {
    const Config cfg = effective_config(args);
    tsexplain::BenchConfig bcfg = cfg.bench_config();
    for (const std::string& src : cfg.bench_sources) {
        bcfg.sources.push_back(tsexplain::load_csv(src));
    }
    bcfg.validate();
    const tsexplain::BenchReport report = tsexplain::run_benchmark(bcfg);
    if (args.format == "json") {
        write_json_file(args.out_path, tsexplain::to_json(report));
    } else {
        write_text_file(args.out_path, tsexplain::format_confusion_table(report));
    }
    return 0;
}

struct CorruptArgs {
    std::string kind = "Spike";
    std::size_t location = 0;
    std::size_t length = 1;
    double magnitude = 4.0;
};

int cmd_corrupt(const CommonArgs& args, const CorruptArgs& cargs) {
    const Config cfg = effective_config(args);
    const TimeSeries host = tsexplain::load_csv(args.test_path);
    tsexplain::validate_series(host, "input");

    tsexplain::CorruptionSpec spec;
    const auto kind = tsexplain::corruption_kind_from_name(cargs.kind);
    if (!kind) {
        throw CLI::ValidationError("--kind", "unknown corruption kind '" + cargs.kind + "'");
    }
    spec.kind = *kind;
    spec.location = cargs.location;
    spec.length = cargs.length;
    spec.magnitude = cargs.magnitude;
    spec.seed = cfg.seed;

    auto [corrupted, truth] = tsexplain::corrupt(host, spec);
    const std::string base = args.out_path.empty() ? "corrupted" : args.out_path;
    tsexplain::write_csv(base + ".csv", corrupted);
    write_json_file(base + ".truth.json", tsexplain::to_json(truth));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Counterfactual explanations for time-series anomalies"};
    app.require_subcommand(1);

    CommonArgs args;
    CorruptArgs cargs;

    auto add_common = [&](CLI::App* sub, bool needs_train, bool needs_test) {
        if (needs_train) {
            sub->add_option("--train", args.train_path, "Training (anomaly-free) series CSV")
                ->required();
        }
        if (needs_test) {
            sub->add_option("--test", args.test_path, "Test series CSV")->required();
        }
        sub->add_option("--config", args.config_path, "Config file (see init-config)");
        sub->add_option("--out", args.out_path, "Output path ('-' or empty: stdout)");
        sub->add_option("--window", args.window, "Anomaly window length (default 64)");
        sub->add_option("--seed", args.seed, "Master RNG seed (default 1)");
        sub->add_option("--workers", args.workers, "Worker threads (default 1)");
        sub->add_option("--format", args.format, "Output format: json or text (default json)")
            ->check(CLI::IsMember({"json", "text"}));
    };

    CLI::App* detect = app.add_subcommand("detect", "Find anomalous windows in a test series");
    add_common(detect, true, true);

    CLI::App* explain_cmd =
        app.add_subcommand("explain", "Detect anomalies and explain each one");
    add_common(explain_cmd, true, true);
    explain_cmd->add_flag("--emit-plot-data", args.emit_plot_data,
                          "Also write per-candidate overlay TSV files "
                          "(anomaly, neighbor, transformed anomaly)");

    CLI::App* bench = app.add_subcommand(
        "bench", "Inject corruptions, detect and explain them, tally a confusion matrix");
    add_common(bench, false, false);

    CLI::App* corrupt_cmd =
        app.add_subcommand("corrupt", "Inject one corruption into a series");
    add_common(corrupt_cmd, false, true);
    corrupt_cmd->add_option("--kind", cargs.kind,
                            "Spike, Dropout, NoisyRegion, NoisyGlobal, LRFlip, UDFlip, "
                            "UniformScale, Step, LinearTrend or Warp");
    corrupt_cmd->add_option("--location", cargs.location, "Region start index")->required();
    corrupt_cmd->add_option("--length", cargs.length, "Region length in samples");
    corrupt_cmd->add_option("--magnitude", cargs.magnitude,
                            "Corruption magnitude in window-sigma units "
                            "(Warp: displacement in samples)");

    CLI::App* init_config =
        app.add_subcommand("init-config", "Print a commented default config file");
    init_config->add_option("--out", args.out_path, "Output path ('-' or empty: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);  // prints usage or help text
        return code == 0 ? 0 : 1;
    }

    try {
        if (detect->parsed()) {
            return cmd_detect(args);
        }
        if (explain_cmd->parsed()) {
            return cmd_explain(args);
        }
        if (bench->parsed()) {
            return cmd_bench(args);
        }
        if (corrupt_cmd->parsed()) {
            return cmd_corrupt(args, cargs);
        }
        if (init_config->parsed()) {
            write_text_file(args.out_path, tsexplain::default_config_text());
            return 0;
        }
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
