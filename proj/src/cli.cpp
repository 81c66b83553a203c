#include "gibbsqaoa/cli.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "gibbsqaoa/errors.hpp"
#include "gibbsqaoa/ising_model.hpp"
#include "gibbsqaoa/sweep_io.hpp"

namespace gibbsqaoa {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

template <class T> T get_field(const json &j, const char *key, const std::string &where) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception &e) {
        throw ParseError(where + key + ": " + e.what());
    }
}

AngleRange range_from_json(const json &j, const std::string &field) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ParseError(field + ": expected [lo, hi]");
    return {j[0].get<double>(), j[1].get<double>()};
}

std::string utc_timestamp(std::chrono::system_clock::time_point tp) {
    const std::time_t t = std::chrono::system_clock::to_time_t(tp);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream ss;
    ss << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return ss.str();
}

IsingModel resolve_model(const RunConfig &config) {
    if (config.model_path)
        return load_model(*config.model_path);
    return generate_sk(*config.n, *config.seed);
}

} // namespace

void RunConfig::validate() const {
    const bool has_generated = n.has_value() || seed.has_value();
    if (model_path && has_generated)
        throw std::invalid_argument("supply either model_path or (n, seed), not both");
    if (!model_path && !(n && seed))
        throw std::invalid_argument("supply model_path or both n and seed");
    if (n && *n < 1)
        throw std::invalid_argument("n must be >= 1, got " + std::to_string(*n));
    grid.validate();
    fit.validate();
}

ordered_json to_json(const FitConfig &fit) {
    return ordered_json{
        {"initial_guesses", fit.initial_guesses},
        {"log_grid",
         {{"count", fit.log_grid.count}, {"first", fit.log_grid.first}, {"last", fit.log_grid.last}}},
        {"linear_grid",
         {{"start", fit.linear_grid.start},
          {"step", fit.linear_grid.step},
          {"beta_max", fit.linear_grid.beta_max}}},
        {"rounding_decimals", fit.rounding_decimals},
        {"minimizer_max_iters", fit.minimizer_max_iters},
        {"minimizer_tolerance", fit.minimizer_tolerance},
    };
}

FitConfig fit_config_from_json(const json &j) {
    if (!j.is_object())
        throw ParseError("fit: expected an object");
    FitConfig fit;
    const std::string where = "fit.";
    if (j.contains("initial_guesses"))
        fit.initial_guesses = get_field<std::vector<double>>(j, "initial_guesses", where);
    if (j.contains("log_grid")) {
        const auto &g = j["log_grid"];
        const std::string w = where + "log_grid.";
        if (g.contains("count"))
            fit.log_grid.count = get_field<std::size_t>(g, "count", w);
        if (g.contains("first"))
            fit.log_grid.first = get_field<double>(g, "first", w);
        if (g.contains("last"))
            fit.log_grid.last = get_field<double>(g, "last", w);
    }
    if (j.contains("linear_grid")) {
        const auto &g = j["linear_grid"];
        const std::string w = where + "linear_grid.";
        if (g.contains("start"))
            fit.linear_grid.start = get_field<double>(g, "start", w);
        if (g.contains("step"))
            fit.linear_grid.step = get_field<double>(g, "step", w);
        if (g.contains("beta_max"))
            fit.linear_grid.beta_max = get_field<double>(g, "beta_max", w);
    }
    if (j.contains("rounding_decimals"))
        fit.rounding_decimals = get_field<int>(j, "rounding_decimals", where);
    if (j.contains("minimizer_max_iters"))
        fit.minimizer_max_iters = get_field<int>(j, "minimizer_max_iters", where);
    if (j.contains("minimizer_tolerance"))
        fit.minimizer_tolerance = get_field<double>(j, "minimizer_tolerance", where);
    return fit;
}

ordered_json to_json(const RunConfig &config) {
    ordered_json j;
    if (config.model_path)
        j["model_path"] = config.model_path->string();
    if (config.n)
        j["n"] = *config.n;
    if (config.seed)
        j["seed"] = *config.seed;
    j["mixer"] = std::string(to_string(config.mixer));
    j["grid"] = {
        {"gamma_range", {config.grid.gamma_range.lo, config.grid.gamma_range.hi}},
        {"beta_range", {config.grid.beta_range.lo, config.grid.beta_range.hi}},
        {"resolution", {config.grid.n_gamma, config.grid.n_beta}},
    };
    j["fit"] = to_json(config.fit);
    j["fit_enabled"] = config.fit_enabled;
    j["output_dir"] = config.output_dir.string();
    j["threads"] = config.threads;
    return j;
}

RunConfig run_config_from_json(const json &doc) {
    const json &j = (doc.is_object() && doc.contains("config")) ? doc["config"] : doc;
    if (!j.is_object())
        throw ParseError("config: expected an object");

    RunConfig c;
    if (j.contains("model_path"))
        c.model_path = get_field<std::string>(j, "model_path", "");
    if (j.contains("n"))
        c.n = get_field<int>(j, "n", "");
    if (j.contains("seed"))
        c.seed = get_field<std::uint64_t>(j, "seed", "");
    if (j.contains("mixer")) {
        const auto name = get_field<std::string>(j, "mixer", "");
        const auto kind = parse_mixer(name);
        if (!kind)
            throw ParseError("mixer: unknown mixer '" + name + "' (expected x or grover)");
        c.mixer = *kind;
    }
    c.grid = GridSpec::defaults_for(c.mixer);
    if (j.contains("grid")) {
        const auto &g = j["grid"];
        if (!g.is_object())
            throw ParseError("grid: expected an object");
        if (g.contains("gamma_range"))
            c.grid.gamma_range = range_from_json(g["gamma_range"], "grid.gamma_range");
        if (g.contains("beta_range"))
            c.grid.beta_range = range_from_json(g["beta_range"], "grid.beta_range");
        if (g.contains("resolution")) {
            const auto res = get_field<std::vector<std::size_t>>(g, "resolution", "grid.");
            if (res.size() != 2)
                throw ParseError("grid.resolution: expected [n_gamma, n_beta]");
            c.grid.n_gamma = res[0];
            c.grid.n_beta = res[1];
        }
    }
    if (j.contains("fit"))
        c.fit = fit_config_from_json(j["fit"]);
    if (j.contains("fit_enabled"))
        c.fit_enabled = get_field<bool>(j, "fit_enabled", "");
    if (j.contains("output_dir"))
        c.output_dir = get_field<std::string>(j, "output_dir", "");
    if (j.contains("threads"))
        c.threads = get_field<unsigned>(j, "threads", "");
    return c;
}

void cmd_gen(int n, std::uint64_t seed, const std::filesystem::path &out_path) {
    save_model(generate_sk(n, seed), out_path);
}

SweepOutputs cmd_sweep(const RunConfig &config) {
    config.validate();
    const auto started = std::chrono::system_clock::now();
    const auto t0 = std::chrono::steady_clock::now();

    const IsingModel model = resolve_model(config);
    const EnergyTable energies = enumerate_energies(model);
    const auto records = sweep(energies, config.grid, config.mixer, config.fit,
                               {config.fit_enabled, config.threads});

    std::filesystem::create_directories(config.output_dir);
    SweepOutputs outputs{config.output_dir / "sweep.csv", config.output_dir / "meta.json",
                         records.size()};
    write_sweep_csv(outputs.sweep_csv, records);

    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ordered_json meta;
    meta["config"] = to_json(config);
    meta["version"] = kToolkitVersion;
    meta["started_at"] = utc_timestamp(started);
    meta["wall_seconds"] = wall;
    std::ofstream out(outputs.meta_json);
    if (!out)
        throw std::runtime_error("cannot open " + outputs.meta_json.string() + " for writing");
    out << meta.dump(2) << '\n';
    return outputs;
}

AnalyzeOutputs cmd_analyze(const std::filesystem::path &sweep_csv,
                           const std::vector<double> &thresholds, double t_eff_max,
                           const std::filesystem::path &out_dir, std::ostream &report) {
    const auto records = read_sweep_csv(sweep_csv);
    if (records.empty())
        throw ParseError(sweep_csv.string() + ": no data rows");
    for (std::size_t k = 0; k < records.size(); ++k)
        if (!records[k].beta_eff || !records[k].tvd_min)
            throw ParseError(sweep_csv.string() + ": row " + std::to_string(k + 1) +
                             " has no beta_eff/tvd_min; rerun the sweep with fitting enabled");

    AnalyzeOutputs outputs;
    outputs.thresholds = threshold_analysis(records, thresholds);
    const auto tradeoff = tradeoff_extract(records, t_eff_max);

    std::filesystem::create_directories(out_dir);
    outputs.thresholds_csv = out_dir / "thresholds.csv";
    outputs.tradeoff_csv = out_dir / "tradeoff.csv";
    write_thresholds_csv(outputs.thresholds_csv, outputs.thresholds, records);
    write_tradeoff_csv(outputs.tradeoff_csv, tradeoff, records);

    report << std::left << std::setw(12) << "threshold" << std::setw(14) << "T_eff"
           << std::setw(14) << "beta_angle" << "gamma" << '\n';
    for (const auto &pt : outputs.thresholds) {
        report << std::setw(12) << pt.threshold;
        if (pt.best_beta_eff && pt.record_index) {
            const auto &r = records[*pt.record_index];
            const double t_eff = *pt.best_beta_eff > 0.0 ? 1.0 / *pt.best_beta_eff
                                                          : std::numeric_limits<double>::infinity();
            report << std::setw(14) << std::setprecision(6) << t_eff << std::setw(14)
                   << r.beta_angle << r.gamma << '\n';
        } else {
            report << "absent (no record with tvd_min <= threshold)\n";
        }
    }
    report << "tradeoff points with T_eff <= " << t_eff_max << ": " << tradeoff.size() << '\n';
    return outputs;
}

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Depth-p QAOA thermal sampling toolkit: instance generation, angle sweeps, "
                 "Boltzmann fitting and threshold analysis"};
    app.require_subcommand(1);

    int gen_n = 0;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    auto *gen = app.add_subcommand("gen", "Generate a +/-1 Sherrington-Kirkpatrick instance");
    gen->add_option("--n", gen_n, "Spin count")->required();
    gen->add_option("--seed", gen_seed, "PRNG seed")->required();
    gen->add_option("--out", gen_out, "Output model file (JSON)")->required();

    std::string config_path, model_path, mixer_name, out_dir;
    int sweep_n = 0;
    std::uint64_t sweep_seed = 0;
    std::vector<double> gamma_range, beta_range;
    std::vector<std::size_t> resolution;
    double fit_beta_max = 0.0;
    unsigned threads = 0;
    auto *sw = app.add_subcommand("sweep", "Sweep depth-one angles; write sweep.csv and meta.json");
    sw->add_option("--config", config_path, "RunConfig JSON or a previous meta.json");
    auto *opt_model = sw->add_option("--model", model_path, "Model file");
    auto *opt_n = sw->add_option("--n", sweep_n, "Generate an SK instance with this many spins");
    auto *opt_seed = sw->add_option("--seed", sweep_seed, "Seed for the generated instance");
    auto *opt_mixer = sw->add_option("--mixer", mixer_name, "x or grover");
    auto *opt_gamma = sw->add_option("--gamma-range", gamma_range, "LO HI")->expected(2);
    auto *opt_beta = sw->add_option("--beta-range", beta_range, "LO HI (mixer angle)")->expected(2);
    auto *opt_res = sw->add_option("--resolution", resolution, "N_GAMMA N_BETA")->expected(2);
    bool fit_flag = true;
    auto *opt_fit = sw->add_flag("--fit,!--no-fit", fit_flag, "Fit beta_eff per cell (default on)");
    auto *opt_bmax = sw->add_option("--fit-beta-max", fit_beta_max, "Linear-grid cap on beta");
    auto *opt_threads = sw->add_option("--threads", threads, "Worker threads (0 = auto)");
    auto *opt_out = sw->add_option("--out-dir", out_dir, "Output directory");

    std::string analyze_in, analyze_out;
    std::vector<double> thresholds{0.1, 0.01, 0.001};
    double t_eff_max = 100.0;
    auto *an = app.add_subcommand("analyze", "Threshold and tradeoff analysis of a fitted sweep");
    an->add_option("--in", analyze_in, "sweep.csv")->required();
    an->add_option("--thresholds", thresholds, "Comma-separated TVD thresholds")->delimiter(',');
    an->add_option("--t-eff-max", t_eff_max, "Largest effective temperature in tradeoff.csv");
    an->add_option("--out-dir", analyze_out, "Output directory (default: next to --in)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    try {
        if (*gen) {
            if (gen_n < 1)
                throw std::invalid_argument("n must be >= 1, got " + std::to_string(gen_n));
            cmd_gen(gen_n, gen_seed, gen_out);
            out << "wrote " << gen_out << '\n';
            return kExitOk;
        }

        if (*sw) {
            RunConfig config;
            if (!config_path.empty()) {
                std::ifstream in(config_path);
                if (!in)
                    throw ParseError("cannot open config " + config_path);
                json doc;
                try {
                    doc = json::parse(in);
                } catch (const json::parse_error &e) {
                    throw ParseError(config_path + ": " + e.what());
                }
                config = run_config_from_json(doc);
            }
            if (opt_model->count()) {
                config.model_path = std::filesystem::absolute(model_path);
                config.n.reset();
                config.seed.reset();
            }
            if (opt_n->count() || opt_seed->count()) {
                config.model_path.reset();
                if (opt_n->count())
                    config.n = sweep_n;
                if (opt_seed->count())
                    config.seed = sweep_seed;
            }
            if (opt_mixer->count()) {
                const auto kind = parse_mixer(mixer_name);
                if (!kind)
                    throw std::invalid_argument("--mixer: unknown mixer '" + mixer_name + "'");
                const bool beta_was_default =
                    config.grid.beta_range == GridSpec::defaults_for(config.mixer).beta_range;
                config.mixer = *kind;
                if (beta_was_default)
                    config.grid.beta_range = GridSpec::defaults_for(*kind).beta_range;
            }
            if (opt_gamma->count())
                config.grid.gamma_range = {gamma_range[0], gamma_range[1]};
            if (opt_beta->count())
                config.grid.beta_range = {beta_range[0], beta_range[1]};
            if (opt_res->count()) {
                config.grid.n_gamma = resolution[0];
                config.grid.n_beta = resolution[1];
            }
            if (opt_fit->count())
                config.fit_enabled = fit_flag;
            if (opt_bmax->count())
                config.fit.linear_grid.beta_max = fit_beta_max;
            if (opt_threads->count())
                config.threads = threads;
            if (opt_out->count())
                config.output_dir = out_dir;

            config.validate();
            const auto result = cmd_sweep(config);
            out << "wrote " << result.rows << " rows to " << result.sweep_csv.string() << '\n';
            return kExitOk;
        }

        if (*an) {
            const std::filesystem::path in_path = analyze_in;
            const std::filesystem::path dir =
                analyze_out.empty() ? in_path.parent_path() : std::filesystem::path(analyze_out);
            cmd_analyze(in_path, thresholds, t_eff_max, dir.empty() ? "." : dir, out);
            return kExitOk;
        }
    } catch (const ComputeError &e) {
        err << "error: " << e.what() << '\n';
        return kExitComputeError;
    } catch (const ParseError &e) {
        err << "error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const ResourceLimitError &e) {
        err << "error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitComputeError;
    }
    return kExitConfigError;
}

} // namespace gibbsqaoa
