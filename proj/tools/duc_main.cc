#include <omp.h>

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "commands.h"

namespace {

using nlohmann::json;
using duc::cli::RunConfig;
using duc::cli::UsageError;

// A subcommand parameter: its CLI option and the default its value takes.
struct Param {
    CLI::Option *opt = nullptr;
    json fallback;
    bool flag = false;
};

class Subcommand {
   public:
    Subcommand(CLI::App &app, const std::string &name, const std::string &help)
        : sub_(app.add_subcommand(name, help)) {
        sub_->fallthrough();
    }

    CLI::App *app() { return sub_; }

    void input_flags(RunConfig &cfg, bool allow_gate) {
        sub_->add_option("--builtin", cfg.builtin, "named built-in map");
        sub_->add_option("--map", cfg.map_path, "permutation map in the CD text format");
        if (allow_gate) sub_->add_option("--gate", cfg.gate_path, "gate JSON {n, m, re, im}");
        labels_flag(cfg);
    }

    void labels_flag(RunConfig &cfg) {
        sub_->add_option("--labels", cfg.labels, "label convention of map tables: offset or vacuum");
    }

    void option(const std::string &name, json fallback, const std::string &help) {
        auto &p = params_[name];
        p.fallback = std::move(fallback);
        p.opt = sub_->add_option("--" + name)->description(help + " (default " + p.fallback.dump() + ")");
    }

    void flag(const std::string &name, const std::string &help) {
        auto &p = params_[name];
        p.fallback = false;
        p.flag = true;
        p.opt = sub_->add_flag("--" + name, help);
    }

    /// Every parameter with its effective value, so the config is complete.
    json collect() const {
        json out = json::object();
        for (const auto &[name, p] : params_) {
            if (p.flag) {
                out[name] = p.opt->count() > 0;
            } else if (p.opt->count() == 0) {
                out[name] = p.fallback;
            } else {
                const std::string raw = p.opt->as<std::string>();
                try {
                    if (p.fallback.is_number_integer()) out[name] = std::stoll(raw);
                    else if (p.fallback.is_number_float()) out[name] = std::stod(raw);
                    else if (p.fallback.is_array()) out[name] = parse_list(raw, p.fallback);
                    else out[name] = raw;
                } catch (const std::invalid_argument &) {
                    throw UsageError("--" + name + ": cannot parse '" + raw + "'");
                } catch (const std::out_of_range &) {
                    throw UsageError("--" + name + ": value out of range");
                }
            }
        }
        return out;
    }

   private:
    static json parse_list(const std::string &raw, const json &like) {
        json out = json::array();
        std::stringstream ss(raw);
        std::string item;
        const bool floats = !like.empty() && like[0].is_number_float();
        while (std::getline(ss, item, ',')) {
            if (floats) out.push_back(std::stod(item));
            else out.push_back(std::stoll(item));
        }
        return out;
    }

    CLI::App *sub_;
    std::map<std::string, Param> params_;
};

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Dual-unitary circuit analyses"};
    app.require_subcommand(0, 1);

    RunConfig cfg;
    std::string out_path;
    std::string config_path;
    int threads = 0;
    bool as_json = false, as_csv = false;
    app.add_option("--format", cfg.format, "json or csv");
    app.add_flag("--json", as_json, "same as --format json");
    app.add_flag("--csv", as_csv, "same as --format csv");
    app.add_option("--out", out_path, "write the report to a file instead of stdout");
    app.add_option("--threads", threads, "OpenMP thread count (0 keeps the runtime default)");
    app.add_option("--seed", cfg.seed, "random seed");
    app.add_option("--max-dim", cfg.max_dim, "largest dense matrix or state-vector dimension");
    app.add_option("--state-cap", cfg.state_cap, "largest state space handled exhaustively");
    app.add_option("--budget", cfg.budget, "step budget for orbit iteration and direct matrix orders");
    app.add_option("--config", config_path, "rerun a serialized RunConfig (other run flags are ignored)");

    std::vector<std::unique_ptr<Subcommand>> subs;
    auto make = [&](const std::string &name, const std::string &help) -> Subcommand & {
        subs.push_back(std::make_unique<Subcommand>(app, name, help));
        return *subs.back();
    };

    auto &verify = make("verify", "check bijectivity, dual unitarity and perfectness");
    verify.input_flags(cfg, true);

    auto &construct = make("construct", "build a gate or map from a construction");
    construct.option("kind", "", "n2, dressed-swap, graph-state, p-state, kicked-ising, fourier-reduce, ring-linear");
    construct.option("n", 2, "local dimension");
    construct.option("j", 0.0, "coupling of the qubit family");
    construct.option("coeffs", json::array({0}), "comma-separated integer coefficients");
    construct.option("phases", json::array({0.0}), "comma-separated diagonal phases");
    construct.labels_flag(cfg);

    auto &enumerate = make("enumerate", "enumerate DU permutation maps up to equivalence");
    enumerate.option("n", 2, "local dimension");
    enumerate.flag("allow-n4", "permit the N=4 enumeration");
    enumerate.labels_flag(cfg);

    auto &gliders = make("gliders", "count gliders from the light-cone transfer matrices");
    gliders.input_flags(cfg, true);
    gliders.option("alpha", "1..3", "range of alpha");
    gliders.flag("extract", "extract and verify glider operators");
    gliders.flag("dense", "use the dense eigensolver even for permutation gates");
    gliders.flag("spectrum", "include raw transfer-matrix eigenvalues");

    auto &correlate = make("correlate", "two-point correlators of traceless basis operators");
    correlate.input_flags(cfg, true);
    correlate.option("L", 8, "chain length");
    correlate.option("t", "0..4", "range of times in layers");
    correlate.option("y", 0, "site of the second operator");
    correlate.option("o2", 0, "index of the second operator in the traceless basis");

    auto &orbits = make("orbits", "average orbit lengths of random product states");
    orbits.input_flags(cfg, false);
    orbits.option("L", "8..16", "range of even volumes");
    orbits.option("samples", 200, "samples per repetition");
    orbits.option("repetitions", 10, "repetitions");

    auto &recurrence = make("recurrence", "recurrence time of the classical circuit");
    recurrence.input_flags(cfg, false);
    recurrence.option("L", "2..12", "range of even volumes");
    recurrence.option("method", "auto", "auto, exhaustive, matrix or sampled");
    recurrence.option("samples", 200, "samples for the sampled lower bound");

    auto &ffield = make("ffield", "orders of the linear brickwork matrix over F_p");
    ffield.app()->add_option("action")->description("order or verify")->required();
    ffield.option("p", 3, "odd prime");
    ffield.option("L", "", "range of even volumes; empty picks a per-check range");
    ffield.option("method", "auto", "auto, direct or descent");
    ffield.option("corollary", "2pm", "2pm, div, repunit, coprime, kernel or blocks");
    ffield.option("m_max", 3, "largest m for the 2p^m check");
    ffield.option("a", 4, "first coprime factor");
    ffield.option("b", 3, "second coprime factor");
    ffield.option("L_single", 0, "volume for kernel and blocks; 0 picks 2p and 10");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (threads > 0) omp_set_num_threads(threads);
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw UsageError("cannot read " + config_path);
            try {
                cfg = RunConfig::from_json(json::parse(in));
            } catch (const json::exception &e) {
                throw UsageError(std::string("--config: ") + e.what());
            }
        } else {
            const auto chosen = app.get_subcommands();
            if (chosen.empty()) throw UsageError("missing subcommand; see --help");
            if (as_json && as_csv) throw UsageError("--json and --csv are exclusive");
            if (as_json) cfg.format = "json";
            if (as_csv) cfg.format = "csv";
            cfg.subcommand = chosen.front()->get_name();
            for (const auto &s : subs) {
                if (s->app() == chosen.front()) cfg.params = s->collect();
            }
            if (cfg.subcommand == "ffield") {
                cfg.params["action"] = chosen.front()->get_option("action")->as<std::string>();
            }
        }
        const std::string text = duc::cli::render(cfg, duc::cli::run(cfg));
        if (out_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(out_path, std::ios::binary);
            if (!out) throw UsageError("cannot write " + out_path);
            out << text;
        }
        return 0;
    } catch (const UsageError &e) {
        std::cerr << "duc: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument &e) {
        std::cerr << "duc: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "duc: computation failed: " << e.what() << "\n";
        return 1;
    }
}
