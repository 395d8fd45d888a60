// phtqc: Monte Carlo simulator and analytic planner for hybrid-qubit
// topological error correction on the Raussendorf lattice.
//
// Subcommands: noise | channel | threshold | run | resources | alpha-for-loss
// Data goes to stdout (or --out); logs go to stderr. Options resolve as
// command-line flags > PHTQC_* environment variables > --config file
// (flat key=value, '#' comments) > built-in defaults.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "phtqc/decoder.hpp"
#include "phtqc/io.hpp"
#include "phtqc/noise.hpp"
#include "phtqc/resources.hpp"
#include "phtqc/threshold.hpp"

using json = nlohmann::ordered_json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNoCrossing = 3;
constexpr int kExitPercolation = 4;

std::map<std::string, std::string> load_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw CLI::ValidationError("--config", "cannot open " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError(
                "--config", path + ":" + std::to_string(lineno) + ": expected key=value");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t");
            const auto e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

void parse_into(const std::string& s, double& t) { t = std::stod(s); }
void parse_into(const std::string& s, int& t) { t = std::stoi(s); }
void parse_into(const std::string& s, std::int64_t& t) { t = std::stoll(s); }
void parse_into(const std::string& s, std::uint64_t& t) { t = std::stoull(s); }
void parse_into(const std::string& s, std::string& t) { t = s; }
void parse_into(const std::string& s, bool& t) {
    t = s == "1" || s == "true" || s == "yes" || s == "on";
}
void parse_into(const std::string& s, std::vector<int>& t) {
    t.clear();
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) t.push_back(std::stoi(item));
}

// Declares an option and remembers how to fill it from a config file when
// neither a flag nor an environment variable set it.
class ConfigBinder {
public:
    template <typename T>
    CLI::Option* option(CLI::App* cmd, const std::string& flag, T& target,
                        const std::string& desc, const char* env = nullptr) {
        auto* opt = cmd->add_option(flag, target, desc);
        if (env) opt->envname(env);
        remember(opt, flag, target);
        return opt;
    }

    CLI::Option* flag(CLI::App* cmd, const std::string& name, bool& target,
                      const std::string& desc) {
        auto* opt = cmd->add_flag(name, target, desc);
        remember(opt, name, target);
        return opt;
    }

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config_path_,
                        "flat key=value config file; flags and PHTQC_* win");
    }

    void apply() const {
        if (config_path_.empty()) return;
        const auto kv = load_config_file(config_path_);
        for (const auto& [key, value] : kv) {
            const auto it = appliers_.find(key);
            if (it == appliers_.end())
                throw CLI::ValidationError("--config", "unknown key: " + key);
            it->second(value);
        }
    }

private:
    template <typename T>
    void remember(CLI::Option* opt, const std::string& flag, T& target) {
        std::string key = flag.substr(flag.find_first_not_of('-'));
        appliers_[key] = [opt, &target](const std::string& value) {
            if (opt->count() > 0) return;  // flag or env already set it
            parse_into(value, target);
        };
    }

    std::string config_path_;
    std::map<std::string, std::function<void(const std::string&)>> appliers_;
};

struct OutputTarget {
    std::string path;  // empty = stdout

    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            std::cout.flush();
            return;
        }
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open output file: " + path);
        f << text;
    }
};

std::string envelope(const char* command, const json& config, const json& payload) {
    json doc;
    doc["version"] = phtqc::kVersion;
    doc["command"] = command;
    doc["config"] = config;
    for (auto it = payload.begin(); it != payload.end(); ++it) doc[it.key()] = it.value();
    return doc.dump(2) + "\n";
}

std::string config_comment(const char* command, const json& config) {
    std::ostringstream os;
    os << "# phtqc " << phtqc::kVersion << "\n# command=" << command;
    for (auto it = config.begin(); it != config.end(); ++it) {
        os << ' ' << it.key() << '=';
        if (it.value().is_string())
            os << it.value().get<std::string>();
        else
            os << it.value().dump();
    }
    os << "\n";
    return os.str();
}

std::vector<double> parse_grid(const std::string& text) {
    // lo:hi:count, geometrically spaced
    const auto a = text.find(':');
    const auto b = text.rfind(':');
    if (a == std::string::npos || b == a)
        throw CLI::ValidationError("--pz-grid", "expected lo:hi:count");
    const double lo = std::stod(text.substr(0, a));
    const double hi = std::stod(text.substr(a + 1, b - a - 1));
    const int count = std::stoi(text.substr(b + 1));
    return phtqc::geometric_grid(lo, hi, count);
}

json curve_point_json(const phtqc::CurvePoint& p) {
    return json{{"d", p.d},
                {"p_z", p.p_z},
                {"trials", p.trials},
                {"failures", p.failures},
                {"aborts", p.aborts},
                {"p_L", p.p_l},
                {"stderr", p.std_err}};
}

std::string curve_csv_row(const phtqc::CurvePoint& p) {
    std::ostringstream os;
    os << p.d << ',' << phtqc::fmt_double(p.p_z) << ',' << p.trials << ','
       << p.failures << ',' << phtqc::fmt_double(p.p_l) << ','
       << phtqc::fmt_double(p.std_err) << '\n';
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hybrid-qubit topological QEC simulator and planner"};
    app.require_subcommand(1);

    // ---- noise ----------------------------------------------------------
    struct {
        double alpha = 0.84;
        double eta = 0.0;
        int n = 2;
        OutputTarget out;
        std::string format = "json";
        ConfigBinder cfg;
    } noise_opts;
    {
        auto& o = noise_opts;
        auto* cmd = app.add_subcommand("noise", "closed-form noise rates for one configuration");
        o.cfg.option(cmd, "--alpha", o.alpha, "coherent amplitude", "PHTQC_ALPHA");
        o.cfg.option(cmd, "--eta", o.eta, "photon loss rate", "PHTQC_ETA");
        o.cfg.option(cmd, "--n", o.n, "Bell measurement attempts per edge", "PHTQC_N");
        o.cfg.option(cmd, "--out", o.out.path, "write data here instead of stdout", "PHTQC_OUT");
        o.cfg.option(cmd, "--format", o.format, "json or csv", "PHTQC_FORMAT")
            ->check(CLI::IsMember({"json", "csv"}));
        o.cfg.attach(cmd);
    }

    // ---- channel --------------------------------------------------------
    struct {
        double alpha = 0.84;
        double eta = 0.0;
        OutputTarget out;
        std::string format = "json";
        ConfigBinder cfg;
    } chan_opts;
    {
        auto& o = chan_opts;
        auto* cmd = app.add_subcommand("channel", "loss-channel decomposition weights");
        o.cfg.option(cmd, "--alpha", o.alpha, "coherent amplitude", "PHTQC_ALPHA");
        o.cfg.option(cmd, "--eta", o.eta, "photon loss rate", "PHTQC_ETA");
        o.cfg.option(cmd, "--out", o.out.path, "write data here instead of stdout", "PHTQC_OUT");
        o.cfg.option(cmd, "--format", o.format, "json", "PHTQC_FORMAT");
        o.cfg.attach(cmd);
    }

    // ---- alpha-for-loss -------------------------------------------------
    struct {
        double ploss = 0.03;
        int n = 2;
        double eta = 0.0;
        OutputTarget out;
        std::string format = "json";
        ConfigBinder cfg;
    } afl_opts;
    {
        auto& o = afl_opts;
        auto* cmd =
            app.add_subcommand("alpha-for-loss", "amplitude that meets a qubit-loss budget");
        o.cfg.option(cmd, "--ploss", o.ploss, "target qubit loss rate", "PHTQC_PLOSS")
            ->required();
        o.cfg.option(cmd, "--n", o.n, "Bell measurement attempts per edge", "PHTQC_N");
        o.cfg.option(cmd, "--eta", o.eta, "photon loss rate", "PHTQC_ETA");
        o.cfg.option(cmd, "--out", o.out.path, "write data here instead of stdout", "PHTQC_OUT");
        o.cfg.option(cmd, "--format", o.format, "json", "PHTQC_FORMAT");
        o.cfg.attach(cmd);
    }

    // ---- run ------------------------------------------------------------
    struct {
        int d = 5;
        double pz = 0.006;
        double ploss = 0.03;
        double navg = 1.0;
        double alpha = -1.0;  // <0 = not given
        double eta = 0.0;
        int n = 2;
        std::string loss_mode = "direct";
        double pedge = -1.0;
        std::int64_t trials = 10000;
        std::uint64_t seed = 0;
        int threads = 0;
        std::string debug_dump;
        OutputTarget out;
        std::string format = "json";
        ConfigBinder cfg;
    } run_opts;
    {
        auto& o = run_opts;
        auto* cmd = app.add_subcommand("run", "single logical-error-rate point");
        o.cfg.option(cmd, "--d", o.d, "code distance (odd, >= 3)", "PHTQC_D");
        o.cfg.option(cmd, "--pz", o.pz, "per-event dephasing rate", "PHTQC_PZ");
        o.cfg.option(cmd, "--ploss", o.ploss, "direct qubit loss rate", "PHTQC_PLOSS");
        o.cfg.option(cmd, "--navg", o.navg, "link noise multiplier", "PHTQC_NAVG");
        o.cfg.option(cmd, "--alpha", o.alpha, "derive navg (and edge rate) from this amplitude",
                     "PHTQC_ALPHA");
        o.cfg.option(cmd, "--eta", o.eta, "photon loss rate for the derivation", "PHTQC_ETA");
        o.cfg.option(cmd, "--n", o.n, "Bell measurement attempts per edge", "PHTQC_N");
        o.cfg.option(cmd, "--loss-mode", o.loss_mode, "direct or edge", "PHTQC_LOSS_MODE")
            ->check(CLI::IsMember({"direct", "edge"}));
        o.cfg.option(cmd, "--pedge", o.pedge, "edge mode: per-link failure rate", "PHTQC_PEDGE");
        o.cfg.option(cmd, "--trials", o.trials, "Monte Carlo trials", "PHTQC_TRIALS")
            ->check(CLI::PositiveNumber);
        o.cfg.option(cmd, "--seed", o.seed, "base RNG seed", "PHTQC_SEED");
        o.cfg.option(cmd, "--threads", o.threads, "worker threads (0 = auto)", "PHTQC_THREADS");
        o.cfg.option(cmd, "--debug-dump", o.debug_dump,
                     "write a JSONL record per trial to this file");
        o.cfg.option(cmd, "--out", o.out.path, "write data here instead of stdout", "PHTQC_OUT");
        o.cfg.option(cmd, "--format", o.format, "json or csv", "PHTQC_FORMAT")
            ->check(CLI::IsMember({"json", "csv"}));
        o.cfg.attach(cmd);
    }

    // ---- threshold ------------------------------------------------------
    struct {
        std::vector<int> distances{5, 7, 9};
        std::string pz_grid;
        double pz_center = 0.006;
        double ploss = -1.0;  // <0 = derive from alpha when given, else 0.03
        double navg = -1.0;
        double alpha = -1.0;
        double eta = 0.0;
        int n = 2;
        std::int64_t trials = 10000;
        std::uint64_t seed = 0;
        int threads = 0;
        OutputTarget out;
        std::string format = "csv";
        ConfigBinder cfg;
    } th_opts;
    {
        auto& o = th_opts;
        auto* cmd =
            app.add_subcommand("threshold", "sweep p_z across distances and fit the crossing");
        o.cfg.option(cmd, "--distances", o.distances, "code distances", "PHTQC_DISTANCES")
            ->delimiter(',');
        o.cfg.option(cmd, "--pz-grid", o.pz_grid, "lo:hi:count geometric grid", "PHTQC_PZ_GRID");
        o.cfg.option(cmd, "--pz-center", o.pz_center,
                     "expected crossing; default grid spans [0.5,1.5]x this", "PHTQC_PZ_CENTER");
        o.cfg.option(cmd, "--ploss", o.ploss,
                     "qubit loss rate; default derives from --alpha/--n, else 0.03",
                     "PHTQC_PLOSS");
        o.cfg.option(cmd, "--navg", o.navg, "link noise multiplier (overrides --alpha)",
                     "PHTQC_NAVG");
        o.cfg.option(cmd, "--alpha", o.alpha, "derive navg from this amplitude", "PHTQC_ALPHA");
        o.cfg.option(cmd, "--eta", o.eta, "photon loss rate for the derivation", "PHTQC_ETA");
        o.cfg.option(cmd, "--n", o.n, "Bell measurement attempts per edge", "PHTQC_N");
        o.cfg.option(cmd, "--trials", o.trials, "trials per grid point", "PHTQC_TRIALS")
            ->check(CLI::PositiveNumber);
        o.cfg.option(cmd, "--seed", o.seed, "base RNG seed", "PHTQC_SEED");
        o.cfg.option(cmd, "--threads", o.threads, "worker threads (0 = auto)", "PHTQC_THREADS");
        o.cfg.option(cmd, "--out", o.out.path, "write data here instead of stdout", "PHTQC_OUT");
        o.cfg.option(cmd, "--format", o.format, "csv or json", "PHTQC_FORMAT")
            ->check(CLI::IsMember({"json", "csv"}));
        o.cfg.attach(cmd);
    }

    // ---- resources ------------------------------------------------------
    struct {
        double alpha = 0.84;
        double eta = 0.0;
        int n = 2;
        double a = 1.2e-3;
        double b = 2e-4;
        int d_b = 9;
        double target_pl = -1.0;
        std::string mode = "as_printed";
        bool parity_free = false;
        bool table = false;
        OutputTarget out;
        std::string format = "json";
        ConfigBinder cfg;
    } res_opts;
    {
        auto& o = res_opts;
        auto* cmd =
            app.add_subcommand("resources", "hybrid-qubit overhead for a target logical rate");
        o.cfg.option(cmd, "--alpha", o.alpha, "coherent amplitude", "PHTQC_ALPHA");
        o.cfg.option(cmd, "--eta", o.eta, "operational photon loss rate", "PHTQC_ETA");
        o.cfg.option(cmd, "--n", o.n, "Bell measurement attempts per edge", "PHTQC_N");
        o.cfg.option(cmd, "--a", o.a, "logical rate at the second-highest simulated d",
                     "PHTQC_A");
        o.cfg.option(cmd, "--b", o.b, "logical rate at the highest simulated d", "PHTQC_B");
        o.cfg.option(cmd, "--d-b", o.d_b, "distance the rate b was measured at", "PHTQC_D_B");
        auto* target = o.cfg.option(cmd, "--target-pl", o.target_pl,
                                    "target logical error rate", "PHTQC_TARGET_PL");
        o.cfg.option(cmd, "--mode", o.mode, "star counting mode", "PHTQC_MODE")
            ->check(CLI::IsMember({"as_printed", "explicit_6l3"}));
        o.cfg.flag(cmd, "--parity-free", o.parity_free, "allow even distances");
        auto* table = o.cfg.flag(cmd, "--table", o.table,
                                 "emit the reference comparison table instead");
        target->excludes(table);
        o.cfg.option(cmd, "--out", o.out.path, "write data here instead of stdout", "PHTQC_OUT");
        o.cfg.option(cmd, "--format", o.format, "json or csv", "PHTQC_FORMAT");
        o.cfg.attach(cmd);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        // ---- noise ------------------------------------------------------
        if (app.got_subcommand("noise")) {
            auto& o = noise_opts;
            o.cfg.apply();
            const phtqc::NoiseRates r = phtqc::noise_rates({o.alpha, o.eta, o.n});
            const json config{{"alpha", o.alpha}, {"eta", o.eta}, {"n", o.n}};
            if (o.format == "csv") {
                std::string s = config_comment("noise", config);
                s += "p_z,p_f,n_avg,p_loss,alpha_prime\n";
                s += phtqc::fmt_double(r.p_z) + ',' + phtqc::fmt_double(r.p_f) + ',' +
                     phtqc::fmt_double(r.n_avg) + ',' + phtqc::fmt_double(r.p_loss) + ',' +
                     phtqc::fmt_double(r.alpha_prime) + '\n';
                o.out.write(s);
            } else {
                const json payload{{"p_z", r.p_z},
                                   {"p_f", r.p_f},
                                   {"n_avg", r.n_avg},
                                   {"p_loss", r.p_loss},
                                   {"alpha_prime", r.alpha_prime}};
                o.out.write(envelope("noise", config, payload));
            }
            return 0;
        }

        // ---- channel ----------------------------------------------------
        if (app.got_subcommand("channel")) {
            auto& o = chan_opts;
            o.cfg.apply();
            const auto c = phtqc::channel_decomposition(o.alpha, o.eta);
            const json config{{"alpha", o.alpha}, {"eta", o.eta}};
            const json payload{{"w_psi_plus", c.w_psi_plus},
                               {"w_psi_minus", c.w_psi_minus},
                               {"w_phi_plus", c.w_phi_plus},
                               {"w_phi_minus", c.w_phi_minus},
                               {"alpha_prime", c.alpha_prime},
                               {"weight_sum", c.w_psi_plus + c.w_psi_minus + c.w_phi_plus +
                                                  c.w_phi_minus}};
            o.out.write(envelope("channel", config, payload));
            return 0;
        }

        // ---- alpha-for-loss ----------------------------------------------
        if (app.got_subcommand("alpha-for-loss")) {
            auto& o = afl_opts;
            o.cfg.apply();
            const double alpha = phtqc::alpha_for_loss_budget(o.ploss, o.n, o.eta);
            const double roundtrip =
                phtqc::edge_loss_to_qubit_loss(phtqc::hbsm_failure_rate(alpha, o.eta), o.n);
            const json config{{"ploss", o.ploss}, {"n", o.n}, {"eta", o.eta}};
            o.out.write(envelope("alpha-for-loss", config,
                                 json{{"alpha", alpha}, {"roundtrip_p_loss", roundtrip}}));
            return 0;
        }

        // ---- run ---------------------------------------------------------
        if (app.got_subcommand("run")) {
            auto& o = run_opts;
            o.cfg.apply();
            if (o.alpha >= 0.0) {
                const double pf = phtqc::hbsm_failure_rate(o.alpha, o.eta);
                o.navg = phtqc::avg_bsm_attempts(pf);
                if (o.pedge < 0.0) o.pedge = std::pow(pf, o.n);
            }
            const phtqc::Lattice lattice = phtqc::build_lattice(o.d);
            phtqc::SampleParams params;
            params.p_z = o.pz;
            params.n_avg = o.navg;
            params.p_loss = o.ploss;
            params.loss_mode =
                o.loss_mode == "edge" ? phtqc::LossMode::edge : phtqc::LossMode::direct;
            params.p_edge = o.pedge < 0.0 ? 0.0 : o.pedge;
            params.seed = o.seed;

            if (!o.debug_dump.empty()) {
                std::ofstream dump(o.debug_dump, std::ios::binary);
                if (!dump) throw std::runtime_error("cannot open " + o.debug_dump);
                for (std::int64_t t = 0; t < o.trials; ++t) {
                    const auto sample = phtqc::sample_trial(lattice, params, t);
                    const auto syn = phtqc::extract_syndrome(lattice, sample);
                    const auto res = phtqc::decode_trial(lattice, sample);
                    json defects = json::array();
                    for (auto b : syn.defect_nodes) defects.push_back(syn.block_cells[b]);
                    json rec{{"trial", t},
                             {"lost", sample.lost},
                             {"flips", sample.flips},
                             {"defects", defects},
                             {"matching", res.matching},
                             {"correction", res.correction},
                             {"failure",
                              {{"x", res.logical_failure[0]},
                               {"y", res.logical_failure[1]},
                               {"z", res.logical_failure[2]},
                               {"aborted", res.aborted}}}};
                    dump << rec.dump() << '\n';
                }
            }

            const phtqc::CurvePoint pt =
                phtqc::estimate_logical_rate(lattice, params, o.trials, o.threads);
            const json config{{"d", o.d},
                              {"pz", o.pz},
                              {"ploss", o.ploss},
                              {"navg", o.navg},
                              {"loss_mode", o.loss_mode},
                              {"pedge", params.p_edge},
                              {"trials", o.trials},
                              {"seed", o.seed}};
            if (o.format == "csv") {
                std::string s = config_comment("run", config);
                s += "d,p_z,trials,failures,p_L,stderr\n";
                s += curve_csv_row(pt);
                o.out.write(s);
            } else {
                o.out.write(envelope("run", config, curve_point_json(pt)));
            }
            if (pt.aborts * 2 > pt.trials) {
                std::cerr << "warning: " << pt.aborts << "/" << pt.trials
                          << " trials aborted on percolated loss\n";
                return kExitPercolation;
            }
            return 0;
        }

        // ---- threshold -----------------------------------------------------
        if (app.got_subcommand("threshold")) {
            auto& o = th_opts;
            o.cfg.apply();
            if (o.navg < 0.0) {
                if (o.alpha >= 0.0)
                    o.navg = phtqc::avg_bsm_attempts(phtqc::hbsm_failure_rate(o.alpha, o.eta));
                else
                    o.navg = 1.0;
            }
            if (o.ploss < 0.0) {
                o.ploss = o.alpha >= 0.0
                              ? phtqc::edge_loss_to_qubit_loss(
                                    phtqc::hbsm_failure_rate(o.alpha, o.eta), o.n)
                              : 0.03;
            }
            phtqc::SweepConfig cfg;
            cfg.distances = o.distances;
            cfg.p_z_center = o.pz_center;
            if (!o.pz_grid.empty()) cfg.p_z_grid = parse_grid(o.pz_grid);
            cfg.n_avg = o.navg;
            cfg.p_loss = o.ploss;
            cfg.trials = o.trials;
            cfg.seed = o.seed;
            cfg.threads = o.threads;

            const json config{{"distances", o.distances},
                              {"pz_grid", o.pz_grid.empty() ? json(nullptr) : json(o.pz_grid)},
                              {"pz_center", o.pz_center},
                              {"ploss", o.ploss},
                              {"navg", o.navg},
                              {"alpha", o.alpha},
                              {"eta", o.eta},
                              {"n", o.n},
                              {"trials", o.trials},
                              {"seed", o.seed}};

            const auto points = phtqc::run_sweep(cfg, [](const phtqc::CurvePoint& p) {
                std::cerr << "point d=" << p.d << " p_z=" << p.p_z << " p_L=" << p.p_l << "\n";
            });

            std::int64_t total_trials = 0, total_aborts = 0;
            for (const auto& p : points) {
                total_trials += p.trials;
                total_aborts += p.aborts;
            }

            json estimate_json;
            bool no_crossing = false;
            std::string no_crossing_what;
            try {
                phtqc::ThresholdEstimate est = phtqc::find_crossing(points);
                est.p_loss = o.ploss;
                est.n_bsm = o.n;
                if (o.alpha >= 0.0) {
                    est.alpha = o.alpha;
                    est.eta_th = phtqc::eta_from_dephasing(est.p_z_th, est.alpha);
                }
                estimate_json = json{{"p_z_th", est.p_z_th},
                                     {"ci", {est.ci_lo, est.ci_hi}},
                                     {"nu", est.nu},
                                     {"eta_th", o.alpha >= 0.0 ? json(est.eta_th) : json(nullptr)},
                                     {"alpha", o.alpha >= 0.0 ? json(est.alpha) : json(nullptr)},
                                     {"p_loss", est.p_loss},
                                     {"n", est.n_bsm}};
            } catch (const phtqc::NoCrossingError& e) {
                no_crossing = true;
                no_crossing_what = e.what();
            }

            if (o.format == "csv") {
                std::string s = config_comment("threshold", config);
                s += "d,p_z,trials,failures,p_L,stderr\n";
                for (const auto& p : points) s += curve_csv_row(p);
                if (!no_crossing)
                    s += "# estimate: " + estimate_json.dump() + "\n";
                else
                    s += "# no-crossing: " + no_crossing_what + "\n";
                o.out.write(s);
            } else {
                json payload;
                payload["points"] = json::array();
                for (const auto& p : points) payload["points"].push_back(curve_point_json(p));
                payload["estimate"] = no_crossing ? json(nullptr) : estimate_json;
                if (no_crossing) payload["no_crossing"] = no_crossing_what;
                o.out.write(envelope("threshold", config, payload));
            }

            if (no_crossing) {
                std::cerr << "no crossing: " << no_crossing_what << "\n";
                return kExitNoCrossing;
            }
            if (total_aborts * 2 > total_trials) {
                std::cerr << "warning: runs dominated by percolated loss\n";
                return kExitPercolation;
            }
            return 0;
        }

        // ---- resources -----------------------------------------------------
        if (app.got_subcommand("resources")) {
            auto& o = res_opts;
            o.cfg.apply();
            const phtqc::CountingMode mode = o.mode == "explicit_6l3"
                                                 ? phtqc::CountingMode::explicit_6l3
                                                 : phtqc::CountingMode::as_printed;
            if (o.table) {
                const json config{{"mode", o.mode}};
                std::string s = config_comment("resources-table", config);
                s += "scheme,eta_th,eta,error_rate,n_1e6,n_1e15,n_published_1e6,n_published_1e15\n";
                for (const auto& row : phtqc::kReferenceRows) {
                    const phtqc::HybridParams hp{row.alpha, row.eta_op, row.n_bsm};
                    const auto r6 = phtqc::resource_report(hp, row.a, row.b, row.d_b, 1e-6,
                                                           mode, row.use_parity_free);
                    const auto r15 = phtqc::resource_report(hp, row.a, row.b, row.d_b, 1e-15,
                                                            mode, row.use_parity_free);
                    const double eta_th = phtqc::eta_from_dephasing(row.p_z_th, row.alpha);
                    const double err_rate = phtqc::dephasing_rate(row.alpha, row.eta_op);
                    s += std::string(row.scheme) + ',' + phtqc::fmt_double(eta_th) + ',' +
                         phtqc::fmt_double(row.eta_op) + ',' + phtqc::fmt_double(err_rate) +
                         ',' + phtqc::fmt_double(r6.total) + ',' +
                         phtqc::fmt_double(r15.total) + ',' +
                         phtqc::fmt_double(row.n_published_1e6) + ',' +
                         phtqc::fmt_double(row.n_published_1e15) + '\n';
                    if (row.a != row.a_as_listed)
                        s += "# " + std::string(row.scheme) + ": extrapolation uses a=" +
                             phtqc::fmt_double(row.a) + "; the published table lists " +
                             phtqc::fmt_double(row.a_as_listed) +
                             ", which does not reproduce the published distances\n";
                }
                o.out.write(s);
                return 0;
            }

            if (o.target_pl <= 0.0) throw CLI::RequiredError("--target-pl");
            const phtqc::HybridParams hp{o.alpha, o.eta, o.n};
            const auto r =
                phtqc::resource_report(hp, o.a, o.b, o.d_b, o.target_pl, mode, o.parity_free);
            const json config{{"alpha", o.alpha},
                              {"eta", o.eta},
                              {"n", o.n},
                              {"a", o.a},
                              {"b", o.b},
                              {"d_b", o.d_b},
                              {"target_pl", o.target_pl},
                              {"mode", o.mode},
                              {"parity_free", o.parity_free}};
            json payload{{"d", r.d},
                         {"alpha_prime", r.alpha_prime},
                         {"qubits_per_star", r.qubits_per_star},
                         {"stars", r.stars},
                         {"total", r.total},
                         {"achieved_pl", r.achieved_pl}};
            // side-by-side with the published figures when the row matches
            for (const auto& row : phtqc::kReferenceRows) {
                if (row.n_bsm == o.n && std::fabs(row.alpha - o.alpha) < 1e-9) {
                    const double published = o.target_pl == 1e-6    ? row.n_published_1e6
                                             : o.target_pl == 1e-15 ? row.n_published_1e15
                                                                    : 0.0;
                    if (published > 0.0) {
                        payload["published_total"] = published;
                        payload["ratio_to_published"] = r.total / published;
                    }
                }
            }
            o.out.write(envelope("resources", config, payload));
            return 0;
        }
    } catch (const CLI::Error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const phtqc::NoCrossingError& e) {
        std::cerr << "no crossing: " << e.what() << "\n";
        return kExitNoCrossing;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
