// atse: adaptive time-series estimation of a monthly target from web search
// query frequencies, with lasso/elastic-net baselines, a synthetic data
// generator, random hyperparameter search and comparison reports.

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "atse/config_io.hpp"
#include "atse/ensemble.hpp"
#include "atse/errors.hpp"
#include "atse/evaluation.hpp"
#include "atse/ingestion.hpp"
#include "atse/online_estimator.hpp"
#include "atse/synthgen.hpp"

namespace {

constexpr const char* kVersion = "atse 1.0.0";

using nlohmann::json;

bool g_quiet = false;

void log_line(const std::string& msg) {
    if (!g_quiet) std::cerr << msg << '\n';
}

std::string format_number(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw atse::FormatError("cannot open '" + path + "'");
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

// FNV-1a 64 content digest, enough to tie outputs to their exact inputs in
// the manifest.
std::string digest(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[24];
    std::snprintf(buf, sizeof(buf), "fnv1a:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// All outputs go through write-temp-then-rename.
void atomic_write(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw atse::Error("cannot write '" + tmp + "'");
        out << content;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw atse::Error("cannot rename '" + tmp + "' to '" + path + "'");
}

json config_to_json(const atse::EstimatorConfig& cfg) {
    return {{"eta", cfg.eta},
            {"n_trees", cfg.n_trees},
            {"warmup", cfg.warmup},
            {"window_lo", cfg.window_lo},
            {"window_hi", cfg.window_hi},
            {"n_lags", cfg.n_lags},
            {"n_web", cfg.n_web},
            {"max_depth", cfg.tree_params.max_depth},
            {"min_samples_leaf", cfg.tree_params.min_samples_leaf},
            {"min_impurity_decrease", cfg.tree_params.min_impurity_decrease},
            {"master_seed", cfg.master_seed}};
}

void write_manifest(const std::string& out_path, const std::string& command,
                    const json& inputs, const json& outputs, std::uint64_t seed,
                    const json& extra) {
    json manifest = {{"artifact_version", kVersion},
                     {"command", command},
                     {"seed", seed},
                     {"inputs", inputs},
                     {"outputs", outputs}};
    for (auto it = extra.begin(); it != extra.end(); ++it) manifest[it.key()] = it.value();
    atomic_write(out_path, manifest.dump(2) + "\n");
}

json input_entry(const std::string& path) {
    return {{"path", path}, {"digest", digest(read_file(path))}};
}

std::string trace_csv(const atse::Dataset& ds, const atse::EstimationTrace& trace,
                      bool dump_weights) {
    std::ostringstream out;
    out << "t,month,prediction,observation,abs_error";
    if (dump_weights && !trace.weights_history.empty())
        for (std::size_t n = 0; n < trace.weights_history[0].size(); ++n) out << ",w_" << n;
    out << '\n';
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const auto& s = trace.steps[i];
        out << s.t << ',' << ds.uptake().month_at(s.t).str() << ','
            << format_number(s.prediction) << ',' << format_number(s.observation) << ','
            << format_number(std::abs(s.prediction - s.observation));
        if (dump_weights && !trace.weights_history.empty())
            for (double w : trace.weights_history[i].w) out << ',' << format_number(w);
        out << '\n';
    }
    return out.str();
}

atse::Dataset load_dataset(const std::string& uptake_path, const std::string& query_path) {
    atse::UptakeSeries uptake = atse::load_uptake_csv(uptake_path);
    atse::QueryPanel panel = atse::load_query_csv(query_path);
    return atse::align(uptake, panel);
}

atse::Scenario scenario_from_json(const json& j) {
    atse::Scenario sc;
    if (j.contains("length")) sc.length = j.at("length").get<std::size_t>();
    if (j.contains("base_level")) sc.base_level = j.at("base_level").get<double>();
    if (j.contains("seasonal_amplitude"))
        sc.seasonal_amplitude = j.at("seasonal_amplitude").get<double>();
    if (j.contains("noise_std")) sc.noise_std = j.at("noise_std").get<double>();
    if (j.contains("n_terms")) sc.n_terms = j.at("n_terms").get<std::size_t>();
    if (j.contains("term_lag")) sc.term_lag = j.at("term_lag").get<std::size_t>();
    if (j.contains("term_noise_std")) sc.term_noise_std = j.at("term_noise_std").get<double>();
    if (j.contains("seed")) sc.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("start")) sc.start = atse::MonthIndex::parse(j.at("start").get<std::string>());
    if (j.contains("change_points"))
        for (const auto& cp : j.at("change_points"))
            sc.change_points.emplace_back(cp.at(0).get<std::size_t>(), cp.at(1).get<double>());
    return sc;
}

atse::Scenario resolve_scenario(const std::string& name_or_path) {
    for (const auto& [name, sc] : atse::canonical_scenarios())
        if (name == name_or_path) return sc;
    std::ifstream in(name_or_path);
    if (!in) {
        std::string presets;
        for (const auto& [name, sc] : atse::canonical_scenarios()) presets += " " + name;
        throw atse::FormatError("scenario '" + name_or_path +
                                "' is neither a readable file nor a preset (presets:" +
                                presets + ")");
    }
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw atse::FormatError(name_or_path + ": " + e.what());
    }
    return scenario_from_json(j);
}

// Shared defaults; subcommand flags fill these in.
struct GlobalOpts {
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::size_t warmup = 24;
};

void add_global_flags(CLI::App* cmd, GlobalOpts& opts) {
    cmd->add_option("--seed", opts.seed, "Master RNG seed")
        ->each([&](const std::string&) { opts.seed_given = true; });
    cmd->add_option("--warmup", opts.warmup, "Initial training samples before predictions")
        ->capture_default_str();
    cmd->add_flag("--quiet", g_quiet, "Suppress progress logging");
}

std::pair<std::size_t, std::size_t> parse_range(const std::string& text,
                                                const std::string& what) {
    std::size_t colon = text.find(':');
    if (colon == std::string::npos)
        throw CLI::ValidationError(what, "expected lo:hi, got '" + text + "'");
    std::size_t lo = 0;
    std::size_t hi = 0;
    try {
        lo = std::stoull(text.substr(0, colon));
        hi = std::stoull(text.substr(colon + 1));
    } catch (const std::exception&) {
        throw CLI::ValidationError(what, "expected lo:hi, got '" + text + "'");
    }
    return {lo, hi};
}

int cmd_synth(const std::string& scenario_arg, const std::string& out_prefix,
              const GlobalOpts& opts) {
    atse::Scenario sc = resolve_scenario(scenario_arg);
    if (opts.seed_given) sc.seed = opts.seed;
    atse::Dataset ds = atse::generate(sc);

    std::ostringstream uptake_csv;
    atse::write_uptake_csv(uptake_csv, ds.uptake());
    std::ostringstream query_csv;
    atse::write_query_csv(query_csv, ds.panel());

    std::string uptake_path = out_prefix + "_uptake.csv";
    std::string query_path = out_prefix + "_queries.csv";
    atomic_write(uptake_path, uptake_csv.str());
    atomic_write(query_path, query_csv.str());

    json scenario_json = {{"length", sc.length},
                          {"base_level", sc.base_level},
                          {"seasonal_amplitude", sc.seasonal_amplitude},
                          {"noise_std", sc.noise_std},
                          {"n_terms", sc.n_terms},
                          {"term_lag", sc.term_lag},
                          {"term_noise_std", sc.term_noise_std},
                          {"seed", sc.seed},
                          {"start", sc.start.str()},
                          {"change_points", json::array()}};
    for (const auto& [step, level] : sc.change_points)
        scenario_json["change_points"].push_back({step, level});
    write_manifest(out_prefix + "_manifest.json", "synth", json::array(),
                   json::array({uptake_path, query_path}), sc.seed,
                   {{"scenario", scenario_json}});
    log_line("wrote " + uptake_path + ", " + query_path);
    return 0;
}

int cmd_run(const std::string& uptake_path, const std::string& query_path,
            const std::string& config_path, const std::string& out_path,
            bool dump_weights, const GlobalOpts& opts, CLI::App* cmd) {
    atse::Dataset ds = load_dataset(uptake_path, query_path);
    atse::EstimatorConfig cfg = atse::load_config(config_path);
    if (opts.seed_given) cfg.master_seed = opts.seed;
    if (cmd->count("--warmup") > 0) cfg.warmup = opts.warmup;

    atse::EstimationTrace trace = atse::run(ds, cfg, dump_weights);
    atomic_write(out_path, trace_csv(ds, trace, dump_weights));
    write_manifest(out_path + ".manifest.json", "run",
                   json::array({input_entry(uptake_path), input_entry(query_path),
                                input_entry(config_path)}),
                   json::array({out_path}), cfg.master_seed,
                   {{"config", config_to_json(cfg)}, {"rmse", trace.rmse}});
    log_line("rmse " + format_number(trace.rmse) + " over " +
             std::to_string(trace.steps.size()) + " predictions -> " + out_path);
    return 0;
}

int cmd_baseline(const std::string& kind_name, const std::string& uptake_path,
                 const std::string& query_path, std::size_t n_lags, std::size_t n_web,
                 const std::string& out_path, const GlobalOpts& opts) {
    atse::Dataset ds = load_dataset(uptake_path, query_path);
    atse::BaselineKind kind =
        kind_name == "lasso" ? atse::BaselineKind::lasso : atse::BaselineKind::elastic_net;
    atse::FeatureSchema schema = atse::FeatureSchema::make(
        ds, n_lags, std::min(n_web, ds.panel().n_terms()), opts.warmup);

    atse::EstimationTrace trace = atse::run_baseline(ds, kind, schema, opts.warmup);
    atomic_write(out_path, trace_csv(ds, trace, false));
    write_manifest(out_path + ".manifest.json", "baseline",
                   json::array({input_entry(uptake_path), input_entry(query_path)}),
                   json::array({out_path}), opts.seed,
                   {{"kind", kind_name},
                    {"n_lags", n_lags},
                    {"n_web", n_web},
                    {"warmup", opts.warmup},
                    {"rmse", trace.rmse}});
    log_line("rmse " + format_number(trace.rmse) + " -> " + out_path);
    return 0;
}

int cmd_tune(const std::string& uptake_path, const std::string& query_path,
             std::size_t trials, const std::string& tune_range_arg,
             const std::string& out_config, const std::string& trials_log,
             const atse::SearchIntervals& intervals, const GlobalOpts& opts) {
    atse::Dataset ds = load_dataset(uptake_path, query_path);

    std::size_t first = opts.warmup + 1;
    std::size_t tune_begin;
    std::size_t tune_end;
    if (tune_range_arg.empty()) {
        // Default: first half of the post-warmup steps, leaving the rest for
        // held-out comparison.
        tune_begin = first;
        tune_end = first + (ds.size() - first) / 2;
    } else {
        std::tie(tune_begin, tune_end) = parse_range(tune_range_arg, "--tune-range");
    }

    atse::SearchResult result = atse::random_search(ds, intervals, trials, tune_begin,
                                                    tune_end, opts.seed, opts.warmup);

    std::ostringstream cfg_text;
    atse::write_config(cfg_text, result.best);
    atomic_write(out_config, cfg_text.str());

    json trials_json = json::array();
    std::ostringstream log_csv;
    log_csv << "trial,rmse,eta,n_trees,window_lo,window_hi,n_lags,n_web,master_seed\n";
    for (const auto& trial : result.trials) {
        log_csv << trial.index << ',' << format_number(trial.rmse) << ','
                << format_number(trial.config.eta) << ',' << trial.config.n_trees << ','
                << trial.config.window_lo << ',' << trial.config.window_hi << ','
                << trial.config.n_lags << ',' << trial.config.n_web << ','
                << trial.config.master_seed << '\n';
        trials_json.push_back({{"trial", trial.index},
                               {"rmse", trial.rmse},
                               {"config", config_to_json(trial.config)}});
    }
    if (!trials_log.empty()) atomic_write(trials_log, log_csv.str());

    json outputs = json::array({out_config});
    if (!trials_log.empty()) outputs.push_back(trials_log);
    write_manifest(out_config + ".manifest.json", "tune",
                   json::array({input_entry(uptake_path), input_entry(query_path)}),
                   outputs, opts.seed,
                   {{"trials", trials},
                    {"tune_range", {tune_begin, tune_end}},
                    {"warmup", opts.warmup},
                    {"best", config_to_json(result.best)}});
    log_line("best config -> " + out_config);
    return 0;
}

int cmd_compare(const std::string& spec_path, const std::string& out_path,
                const std::string& json_path, const GlobalOpts& opts) {
    json spec;
    {
        std::ifstream in(spec_path);
        if (!in) throw atse::FormatError("cannot open '" + spec_path + "'");
        try {
            in >> spec;
        } catch (const json::exception& e) {
            throw atse::FormatError(spec_path + ": " + e.what());
        }
    }

    std::vector<std::pair<std::string, atse::Dataset>> datasets;
    json inputs = json::array();
    for (const auto& d : spec.at("datasets")) {
        std::string uptake_path = d.at("uptake").get<std::string>();
        std::string query_path = d.at("queries").get<std::string>();
        datasets.emplace_back(d.at("name").get<std::string>(),
                              load_dataset(uptake_path, query_path));
        inputs.push_back(input_entry(uptake_path));
        inputs.push_back(input_entry(query_path));
    }

    std::vector<atse::MethodSpec> methods;
    for (const auto& m : spec.at("methods")) {
        atse::MethodSpec method;
        method.name = m.at("name").get<std::string>();
        method.warmup = opts.warmup;
        std::string kind = m.at("kind").get<std::string>();
        if (kind == "atse") {
            method.kind = atse::MethodSpec::Kind::atse;
            method.config = atse::load_config(m.at("config").get<std::string>());
            method.config.warmup = opts.warmup;
            inputs.push_back(input_entry(m.at("config").get<std::string>()));
        } else if (kind == "lasso" || kind == "enet") {
            method.kind = kind == "lasso" ? atse::MethodSpec::Kind::lasso
                                          : atse::MethodSpec::Kind::elastic_net;
            if (m.contains("n_lags")) method.n_lags = m.at("n_lags").get<std::size_t>();
            if (m.contains("n_web")) method.n_web = m.at("n_web").get<std::size_t>();
        } else {
            throw atse::ParameterError("compare spec: unknown method kind '" + kind + "'");
        }
        methods.push_back(std::move(method));
    }

    std::optional<std::pair<std::size_t, std::size_t>> eval_range;
    if (spec.contains("eval_range"))
        eval_range = {spec.at("eval_range").at(0).get<std::size_t>(),
                      spec.at("eval_range").at(1).get<std::size_t>()};

    atse::ComparisonReport report = atse::compare(datasets, methods, eval_range);
    std::ostringstream csv;
    atse::write_report_csv(csv, report);
    atomic_write(out_path, csv.str());
    json outputs = json::array({out_path});
    if (!json_path.empty()) {
        std::ostringstream js;
        atse::write_report_json(js, report);
        atomic_write(json_path, js.str());
        outputs.push_back(json_path);
    }
    inputs.push_back(input_entry(spec_path));
    write_manifest(out_path + ".manifest.json", "compare", inputs, outputs, opts.seed,
                   json::object());
    log_line("report -> " + out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Adaptive time-series estimation from web search signals"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    GlobalOpts opts;

    auto* synth = app.add_subcommand("synth", "Generate a synthetic dataset");
    std::string scenario_arg;
    std::string out_prefix;
    synth->add_option("--scenario", scenario_arg, "Preset name or scenario JSON file")
        ->required();
    synth->add_option("--out-prefix", out_prefix, "Output path prefix")->required();
    add_global_flags(synth, opts);

    auto* run_cmd = app.add_subcommand("run", "Run the adaptive estimator");
    std::string uptake_path;
    std::string query_path;
    std::string config_path;
    std::string out_path;
    bool dump_weights = false;
    run_cmd->add_option("--uptake", uptake_path, "Uptake CSV")->required();
    run_cmd->add_option("--queries", query_path, "Query panel CSV")->required();
    run_cmd->add_option("--config", config_path, "Estimator config file")->required();
    run_cmd->add_option("--out", out_path, "Trace CSV output")->required();
    run_cmd->add_flag("--dump-weights", dump_weights, "Append per-expert weight columns");
    add_global_flags(run_cmd, opts);

    auto* baseline = app.add_subcommand("baseline", "Run a linear baseline");
    std::string kind_name;
    std::size_t bl_n_lags = 3;
    std::size_t bl_n_web = 3;
    baseline->add_option("--kind", kind_name, "lasso or enet")
        ->required()
        ->check(CLI::IsMember({"lasso", "enet"}));
    baseline->add_option("--uptake", uptake_path, "Uptake CSV")->required();
    baseline->add_option("--queries", query_path, "Query panel CSV")->required();
    baseline->add_option("--n-lags", bl_n_lags, "Lag features")->capture_default_str();
    baseline->add_option("--n-web", bl_n_web, "Web term features")->capture_default_str();
    baseline->add_option("--out", out_path, "Trace CSV output")->required();
    add_global_flags(baseline, opts);

    auto* tune = app.add_subcommand("tune", "Random hyperparameter search");
    std::size_t trials = 100;
    std::string tune_range_arg;
    std::string out_config;
    std::string trials_log;
    std::string window_arg;
    std::string lags_arg;
    std::string web_arg;
    std::string trees_arg;
    std::string eta_arg;
    tune->add_option("--uptake", uptake_path, "Uptake CSV")->required();
    tune->add_option("--queries", query_path, "Query panel CSV")->required();
    tune->add_option("--trials", trials, "Number of sampled configs")->capture_default_str();
    tune->add_option("--tune-range", tune_range_arg,
                     "Steps a:b scored by the search (default: first half after warmup)");
    tune->add_option("--out-config", out_config, "Winning config output")->required();
    tune->add_option("--trials-log", trials_log, "Optional per-trial CSV log");
    tune->add_option("--window", window_arg, "Window interval lo:hi (default 1:46)");
    tune->add_option("--n-lags-range", lags_arg, "Lag feature interval lo:hi (default 0:45)");
    tune->add_option("--n-web-range", web_arg, "Web feature interval lo:hi (default 0:30)");
    tune->add_option("--n-trees-range", trees_arg, "Tree count interval lo:hi (default 500:10000)");
    tune->add_option("--eta-range", eta_arg, "Learning rate interval lo:hi (default 0.001:0.25)");
    add_global_flags(tune, opts);

    auto* compare_cmd = app.add_subcommand("compare", "Multi-method comparison report");
    std::string spec_path;
    std::string json_path;
    compare_cmd->add_option("--spec", spec_path, "Comparison spec JSON")->required();
    compare_cmd->add_option("--out", out_path, "Report CSV output")->required();
    compare_cmd->add_option("--json", json_path, "Optional JSON report output");
    add_global_flags(compare_cmd, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (synth->parsed()) return cmd_synth(scenario_arg, out_prefix, opts);
        if (run_cmd->parsed())
            return cmd_run(uptake_path, query_path, config_path, out_path, dump_weights,
                           opts, run_cmd);
        if (baseline->parsed())
            return cmd_baseline(kind_name, uptake_path, query_path, bl_n_lags, bl_n_web,
                                out_path, opts);
        if (tune->parsed()) {
            atse::SearchIntervals intervals;
            if (!window_arg.empty()) intervals.window = parse_range(window_arg, "--window");
            if (!lags_arg.empty()) intervals.n_lags = parse_range(lags_arg, "--n-lags-range");
            if (!web_arg.empty()) intervals.n_web = parse_range(web_arg, "--n-web-range");
            if (!trees_arg.empty())
                intervals.n_trees = parse_range(trees_arg, "--n-trees-range");
            if (!eta_arg.empty()) {
                auto [lo, hi] = std::pair<std::string, std::string>{
                    eta_arg.substr(0, eta_arg.find(':')),
                    eta_arg.substr(eta_arg.find(':') + 1)};
                intervals.eta = {std::stod(lo), std::stod(hi)};
            }
            return cmd_tune(uptake_path, query_path, trials, tune_range_arg, out_config,
                            trials_log, intervals, opts);
        }
        if (compare_cmd->parsed()) return cmd_compare(spec_path, out_path, json_path, opts);
    } catch (const atse::FormatError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const atse::ValueError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const atse::AlignmentError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const atse::ParameterError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 1;
}
