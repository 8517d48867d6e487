#include "commands.h"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "duc/builtins.h"
#include "duc/ca_sim.h"
#include "duc/constructions.h"
#include "duc/ergodicity.h"
#include "duc/linear_ca.h"
#include "duc/perm_map.h"

namespace duc::cli {

namespace {

using nlohmann::json;

constexpr const char *kSchema = "duc/1";

std::string big(const BigInt &v) { return v.str(); }

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

std::vector<int> range_param(const RunConfig &cfg, const char *key, const std::string &fallback, int step);

template <typename T>
T param(const RunConfig &cfg, const char *key, T fallback) {
    return cfg.params.contains(key) ? cfg.params.at(key).get<T>() : fallback;
}

std::vector<int> range_param(const RunConfig &cfg, const char *key, const std::string &fallback, int step) {
    const std::string text = param<std::string>(cfg, key, "");
    return parse_range(text.empty() ? fallback : text, step);
}

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

LabelConvention label_convention(const RunConfig &cfg) {
    if (cfg.labels == "offset") return LabelConvention::offset_one;
    if (cfg.labels == "vacuum") return LabelConvention::vacuum;
    throw UsageError("--labels must be offset or vacuum");
}

int input_count(const RunConfig &cfg) {
    return !cfg.builtin.empty() + !cfg.map_path.empty() + !cfg.gate_path.empty();
}

PermMap input_map(const RunConfig &cfg) {
    if (input_count(cfg) != 1 || !cfg.gate_path.empty()) {
        throw UsageError(cfg.subcommand + ": give exactly one of --builtin or --map");
    }
    if (!cfg.builtin.empty()) {
        try {
            return builtin_map(cfg.builtin);
        } catch (const std::exception &e) {
            throw UsageError(e.what());
        }
    }
    try {
        return parse_perm_map(read_file(cfg.map_path), label_convention(cfg));
    } catch (const UsageError &) {
        throw;
    } catch (const std::exception &e) {
        throw UsageError(std::string("--map: ") + e.what());
    }
}

Gate input_gate(const RunConfig &cfg) {
    if (input_count(cfg) != 1) throw UsageError(cfg.subcommand + ": give exactly one of --builtin, --map or --gate");
    if (cfg.gate_path.empty()) return input_map(cfg).to_gate();
    try {
        return gate_from_json(json::parse(read_file(cfg.gate_path)));
    } catch (const UsageError &) {
        throw;
    } catch (const std::exception &e) {
        throw UsageError(std::string("--gate: ") + e.what());
    }
}

json flags_json(const PredicateFlags &f) {
    return {{"invertible", f.invertible}, {"dual_unitary", f.dual_unitary}, {"perfect", f.perfect}};
}

void add_kv_rows(Report &rep) {
    rep.csv_header = {"key", "value"};
    for (const auto &[k, v] : rep.result.items()) {
        rep.csv_rows.push_back({k, v.is_string() ? v.get<std::string>() : v.dump()});
    }
}

Report run_verify(const RunConfig &cfg) {
    Report rep;
    if (cfg.gate_path.empty()) {
        const PermMap m = input_map(cfg);
        const PermFlags f = check_flags(m);
        rep.result = {{"kind", "perm_map"},
                      {"n", m.n()},
                      {"table", render(m, label_convention(cfg))},
                      {"bijective", f.bijective},
                      {"dual_unitary", f.dual_unitary},
                      {"perfect", f.perfect},
                      {"self_orthogonal", f.self_orthogonal},
                      {"non_interacting", f.non_interacting},
                      {"yang_baxter", f.bijective && yang_baxter(m)}};
        // The matrix-level predicates must agree with the combinatorial ones.
        if (f.bijective) {
            const Gate g = m.to_gate();
            if (is_dual_unitary(g) != f.dual_unitary || is_perfect(g) != f.perfect) {
                throw std::logic_error("verify: gate and map predicates disagree");
            }
        }
    } else {
        const Gate g = input_gate(cfg);
        const bool unitary = is_unitary(g);
        rep.result = {{"kind", "gate"},
                      {"n", g.n()},
                      {"m", g.m()},
                      {"unitary", unitary},
                      {"dual_unitary", unitary && is_dual_unitary(g)},
                      {"perfect", unitary && g.homogeneous() && is_perfect(g)},
                      {"permutation", is_permutation_matrix(g.matrix())}};
        if (unitary && g.homogeneous()) {
            const auto e = diagonal_entanglement(g);
            rep.result["diagonal_entropy"] = e.entropy;
            rep.result["diagonal_entropy_max"] = e.maximum;
        }
    }
    add_kv_rows(rep);
    return rep;
}

Report run_construct(const RunConfig &cfg) {
    Report rep;
    const std::string kind = param<std::string>(cfg, "kind", "");
    const int n = param<int>(cfg, "n", 2);
    const auto coeffs = param<std::vector<int>>(cfg, "coeffs", {});
    const auto phases = param<std::vector<double>>(cfg, "phases", {});
    rep.result["kind"] = kind;
    auto graph_params = [&]() {
        if (kind == "p-state") return GraphStateParams::p_state(n);
        if (kind == "kicked-ising") return GraphStateParams::kicked_ising(n);
        if (coeffs.size() != 6) throw UsageError("--coeffs needs alpha1,alpha2,beta1,beta2,gamma1,gamma2");
        return GraphStateParams{n, coeffs[0], coeffs[1], coeffs[2], coeffs[3], coeffs[4], coeffs[5]};
    };
    if (kind == "n2") {
        const Gate g = n2_family(param<double>(cfg, "j", 0.0));
        rep.result["gate"] = g;
        rep.result["flags"] = {{"dual_unitary", is_dual_unitary(g)}, {"perfect", is_perfect(g)}};
    } else if (kind == "dressed-swap") {
        if (static_cast<int>(phases.size()) != n * n) throw UsageError("--phases needs N*N entries");
        Matrix d = Matrix::Zero(n * n, n * n);
        for (int k = 0; k < n * n; k++) d(k, k) = std::polar(1.0, phases[k]);
        const Gate g = dressed_swap(d);
        rep.result["gate"] = g;
        rep.result["flags"] = {{"dual_unitary", is_dual_unitary(g)}, {"perfect", is_perfect(g)}};
    } else if (kind == "graph-state" || kind == "p-state" || kind == "kicked-ising") {
        const GraphStateParams p = graph_params();
        rep.result["coefficients"] = {p.alpha1, p.alpha2, p.beta1, p.beta2, p.gamma1, p.gamma2};
        rep.result["flags"] = flags_json(graph_state_flags(p));
        rep.result["gate"] = graph_state_gate(p);
    } else if (kind == "fourier-reduce") {
        const GraphStateParams p = graph_params();
        const PermMap m = fourier_reduce(p);
        rep.result["table"] = render(m, label_convention(cfg));
        rep.result["flags"] = flags_json(graph_state_flags(p));
    } else if (kind == "ring-linear") {
        if (coeffs.size() != 4) throw UsageError("--coeffs needs alpha,beta,gamma,delta");
        const RingLinearParams p{n, coeffs[0], coeffs[1], coeffs[2], coeffs[3]};
        rep.result["flags"] = flags_json(ring_linear_flags(p));
        if (ring_linear_flags(p).invertible) rep.result["table"] = render(ring_linear(p), label_convention(cfg));
    } else {
        throw UsageError("--kind must be n2, dressed-swap, graph-state, p-state, kicked-ising, fourier-reduce or "
                         "ring-linear");
    }
    rep.csv_header = {"key", "value"};
    for (const auto &[k, v] : rep.result["flags"].items()) rep.csv_rows.push_back({k, v.dump()});
    if (rep.result.contains("table")) rep.csv_rows.push_back({"table", rep.result["table"].get<std::string>()});
    return rep;
}

Report run_enumerate(const RunConfig &cfg) {
    Report rep;
    const int n = param<int>(cfg, "n", 2);
    EnumerateOptions opts;
    opts.allow_n4 = param<bool>(cfg, "allow-n4", false);
    EquivClassReport r;
    try {
        r = enumerate_du(n, opts);
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
    rep.result = {{"n", r.n},
                  {"total_maps", r.total_maps},
                  {"class_count", r.class_count},
                  {"non_interacting_classes", r.non_interacting_classes},
                  {"perfect_classes", r.perfect_classes},
                  {"reshuffle_inclusive_count", r.reshuffle_inclusive_count}};
    rep.caveats.push_back("equivalence: space reflection, time reflection and diagonal similarity by permutations; "
                          "reshuffle_inclusive_count also quotients by U^R");
    json reps = json::array();
    rep.csv_header = {"class", "size", "perfect", "non_interacting", "table"};
    for (size_t i = 0; i < r.representatives.size(); i++) {
        const auto f = check_flags(r.representatives[i]);
        const std::string table = render(r.representatives[i], label_convention(cfg));
        reps.push_back({{"table", table},
                        {"size", r.class_sizes[i]},
                        {"perfect", f.perfect},
                        {"non_interacting", f.non_interacting}});
        rep.csv_rows.push_back({std::to_string(i), std::to_string(r.class_sizes[i]), f.perfect ? "true" : "false",
                                f.non_interacting ? "true" : "false", table});
    }
    rep.result["classes"] = reps;
    rep.caveats.push_back("class_count=" + std::to_string(r.class_count) +
                          ", reshuffle_inclusive_count=" + std::to_string(r.reshuffle_inclusive_count));
    return rep;
}

Report run_gliders(const RunConfig &cfg) {
    Report rep;
    const Gate g = input_gate(cfg);
    const auto alphas = range_param(cfg, "alpha", "1..3", 1);
    GliderOptions opts;
    opts.transfer.max_dim = cfg.max_dim;
    opts.allow_exact = !param<bool>(cfg, "dense", false);
    const bool extract = param<bool>(cfg, "extract", false);
    const bool spectra = param<bool>(cfg, "spectrum", false);
    json rows = json::array();
    rep.csv_header = {"alpha", "right", "left", "total", "method"};
    bool dense_used = false;
    for (int a : alphas) {
        GliderCount c;
        try {
            c = glider_count(g, a, opts);
        } catch (const std::invalid_argument &e) {
            throw UsageError(e.what());
        }
        dense_used = dense_used || c.method == "dense_zgeev";
        json row = {{"alpha", a}, {"right", c.right}, {"left", c.left}, {"total", c.total}, {"method", c.method}};
        if (spectra) {
            json spec = json::object();
            for (auto dir : {Direction::right, Direction::left}) {
                const auto t = transfer_matrix(g, a, dir, opts.transfer);
                json eig = json::array();
                for (cplx z : spectrum(t.matrix).eigenvalues) eig.push_back(complex_json(z));
                spec[dir == Direction::right ? "right" : "left"] = eig;
            }
            row["eigenvalues"] = spec;
        }
        if (extract) {
            ExtractOptions eo;
            eo.max_dim = cfg.max_dim;
            eo.seed = cfg.seed;
            json cands = json::array();
            for (auto dir : {Direction::right, Direction::left}) {
                for (const auto &cand : extract_gliders(g, a, dir, eo)) {
                    const auto ph = rational_phase(cand.phase, 64);
                    cands.push_back({{"direction", dir == Direction::right ? "right" : "left"},
                                     {"support_range", cand.support_range},
                                     {"lambda", complex_json(cand.lambda)},
                                     {"phase", {ph.p, ph.q}},
                                     {"residual", cand.residual},
                                     {"verified", cand.verified}});
                    if (!cand.verified) rep.caveats.push_back("unverified glider candidate at alpha=" + std::to_string(a));
                }
            }
            row["candidates"] = cands;
        }
        rep.csv_rows.push_back({std::to_string(a), std::to_string(c.right), std::to_string(c.left),
                                std::to_string(c.total), c.method});
        rows.push_back(row);
    }
    rep.result["gliders"] = rows;
    if (dense_used) rep.caveats.push_back("dense counts classify |lambda| within 1e-9 of 1 as unimodular");
    return rep;
}

Report run_correlate(const RunConfig &cfg) {
    Report rep;
    const Gate g = input_gate(cfg);
    const int L = param<int>(cfg, "L", 8);
    const int y = param<int>(cfg, "y", 0);
    const auto times = range_param(cfg, "t", "0..4", 1);
    const auto basis = traceless_basis(g.n());
    const int o2 = param<int>(cfg, "o2", 0);
    if (o2 < 0 || o2 >= static_cast<int>(basis.size())) throw UsageError("--o2 outside the traceless basis");
    CorrelatorOptions opts;
    opts.max_states = cfg.max_dim;
    json rows = json::array();
    rep.csv_header = {"t", "x", "o1", "re", "im"};
    for (int t : times) {
        std::vector<std::vector<cplx>> row;
        try {
            row = correlator_row(g, L, t, basis, basis[o2], y, opts);
        } catch (const std::invalid_argument &e) {
            throw UsageError(e.what());
        }
        for (int x = 0; x < L; x++)
            for (size_t k = 0; k < basis.size(); k++) {
                rows.push_back({{"t", t}, {"x", x}, {"o1", k}, {"value", complex_json(row[x][k])}});
                rep.csv_rows.push_back({std::to_string(t), std::to_string(x), std::to_string(k),
                                        fmt(row[x][k].real()), fmt(row[x][k].imag())});
            }
        if (t > L / 2) rep.caveats.push_back("t=" + std::to_string(t) + " exceeds L/2; light cones wrap around");
    }
    rep.result = {{"L", L}, {"y", y}, {"o2", o2}, {"basis_size", basis.size()}, {"correlators", rows}};
    return rep;
}

Report run_orbits(const RunConfig &cfg) {
    Report rep;
    const PermMap m = input_map(cfg);
    const auto volumes = range_param(cfg, "L", "8..16", 2);
    OrbitOptions opts;
    opts.samples = param<int>(cfg, "samples", 200);
    opts.repetitions = param<int>(cfg, "repetitions", 10);
    opts.seed = cfg.seed;
    opts.budget = cfg.budget;
    opts.table_cap = cfg.state_cap;
    std::vector<OrbitStats> all;
    json rows = json::array();
    rep.csv_header = {"L", "mean", "log_mean", "rel_variance", "method", "budget_exceeded"};
    for (int L : volumes) {
        OrbitStats s;
        try {
            s = average_orbit_length(m, L, opts);
        } catch (const std::invalid_argument &e) {
            throw UsageError(e.what());
        }
        rows.push_back({{"L", L},
                        {"mean", s.mean},
                        {"log_mean", s.log_mean},
                        {"rel_variance", s.rel_variance_log},
                        {"repetition_log_means", s.repetition_log_means},
                        {"method", s.method},
                        {"budget_exceeded", s.budget_exceeded}});
        rep.csv_rows.push_back({std::to_string(L), fmt(s.mean), fmt(s.log_mean), fmt(s.rel_variance_log), s.method,
                                std::to_string(s.budget_exceeded)});
        if (s.budget_exceeded > 0) {
            rep.caveats.push_back("L=" + std::to_string(L) + ": " + std::to_string(s.budget_exceeded) +
                                  " samples hit the step budget; their lengths are lower bounds");
        }
        all.push_back(std::move(s));
    }
    rep.result = {{"n", m.n()}, {"samples", opts.samples}, {"repetitions", opts.repetitions}, {"volumes", rows}};
    if (all.size() >= 2) rep.result["log_slope"] = log_slope(all);
    return rep;
}

Report run_recurrence(const RunConfig &cfg) {
    Report rep;
    const PermMap m = input_map(cfg);
    const auto volumes = range_param(cfg, "L", "2..12", 2);
    const std::string method = param<std::string>(cfg, "method", "auto");
    RecurrenceOptions opts;
    opts.table_cap = cfg.state_cap;
    opts.seed = cfg.seed;
    opts.budget = cfg.budget;
    opts.samples = param<int>(cfg, "samples", 200);
    json rows = json::array();
    rep.csv_header = {"L", "T", "method", "lower_bound"};
    for (int L : volumes) {
        RecurrenceMethod rm;
        if (method == "exhaustive") rm = RecurrenceMethod::exhaustive_lcm;
        else if (method == "matrix") rm = RecurrenceMethod::matrix_order;
        else if (method == "sampled") rm = RecurrenceMethod::sampled_lower_bound;
        else if (method == "auto") {
            long double states = 1;
            for (int i = 0; i < L; i++) states *= m.n();
            rm = linear_prime(m) ? RecurrenceMethod::matrix_order
                 : states <= static_cast<long double>(cfg.state_cap) ? RecurrenceMethod::exhaustive_lcm
                                                                      : RecurrenceMethod::sampled_lower_bound;
        } else {
            throw UsageError("--method must be auto, exhaustive, matrix or sampled");
        }
        RecurrenceResult r;
        try {
            r = recurrence_time(m, L, rm, opts);
        } catch (const std::invalid_argument &e) {
            throw UsageError(e.what());
        }
        rows.push_back({{"L", L}, {"T", big(r.T)}, {"method", to_string(r.method)}, {"lower_bound", r.lower_bound}});
        rep.csv_rows.push_back({std::to_string(L), big(r.T), to_string(r.method), r.lower_bound ? "true" : "false"});
        for (const auto &c : r.caveats) rep.caveats.push_back("L=" + std::to_string(L) + ": " + c);
    }
    rep.result = {{"n", m.n()}, {"recurrence", rows}};
    return rep;
}

json factors_json(const Factorization &f) {
    json out = json::array();
    for (const auto &[q, e] : f) out.push_back({q, e});
    return out;
}

int single_volume(const RunConfig &cfg, int fallback) {
    const int L = param<int>(cfg, "L_single", 0);
    return L == 0 ? fallback : L;
}

Report run_ffield(const RunConfig &cfg) {
    Report rep;
    const std::string action = param<std::string>(cfg, "action", "order");
    const int64_t p = param<int64_t>(cfg, "p", 3);
    if (p < 3 || !is_prime(static_cast<uint64_t>(p))) throw UsageError("--p must be an odd prime");
    OrderOptions oo;
    oo.direct_budget = cfg.budget;
    const std::string method = param<std::string>(cfg, "method", "auto");
    if (method == "direct") oo.method = OrderMethod::direct;
    else if (method == "descent") oo.method = OrderMethod::descent;
    else if (method != "auto") throw UsageError("--method must be auto, direct or descent");
    rep.result["p"] = p;

    if (action == "order") {
        const auto volumes = range_param(cfg, "L", "2..48", 2);
        json rows = json::array();
        rep.csv_header = {"L", "T", "method", "n", "s", "certified"};
        for (int L : volumes) {
            OrderReport r;
            try {
                r = matrix_order(L, p, oo);
            } catch (const std::invalid_argument &e) {
                throw UsageError(e.what());
            }
            rows.push_back({{"L", L},
                            {"T", big(r.T)},
                            {"method", r.method},
                            {"n", r.n},
                            {"s", r.s},
                            {"s_field", r.s_field},
                            {"bound", big(r.bound)},
                            {"bound_factors", factors_json(r.bound_factors)},
                            {"certified", r.certified}});
            rep.csv_rows.push_back({std::to_string(L), big(r.T), r.method, std::to_string(r.n), std::to_string(r.s),
                                    r.certified ? "true" : "false"});
            for (const auto &c : r.caveats) rep.caveats.push_back("L=" + std::to_string(L) + ": " + c);
        }
        rep.result["orders"] = rows;
        return rep;
    }
    if (action != "verify") throw UsageError("ffield action must be order or verify");

    const std::string which = param<std::string>(cfg, "corollary", "2pm");
    rep.result["check"] = which;
    rep.csv_header = {"key", "value"};
    if (which == "2pm") {
        const auto r = verify_corollary_2pm(p, param<int>(cfg, "m_max", 3), oo);
        json rows = json::array();
        for (const auto &row : r.rows) {
            rows.push_back({{"m", row.m},
                            {"L", row.L},
                            {"T", big(row.T)},
                            {"mu", row.mu ? json(*row.mu) : json(nullptr)},
                            {"in_range", row.in_range},
                            {"lower_bound", row.lower_bound}});
            rep.csv_rows.push_back({"T(" + std::to_string(row.L) + ")", big(row.T)});
        }
        rep.result["a"] = r.a;
        rep.result["rows"] = rows;
        rep.result["holds"] = r.holds;
        rep.csv_rows.push_back({"holds", r.holds ? "true" : "false"});
    } else if (which == "div" || which == "repunit") {
        std::vector<int> volumes = range_param(cfg, "L", which == "div" ? "2..48" : "8,26", 2);
        json rows = json::array();
        for (int L : volumes) {
            if ((L / 2) % p == 0) continue;
            const auto r = verify_divisibility(p, L, oo);
            json row = {{"L", L},
                        {"T", big(r.T)},
                        {"s", r.s},
                        {"multiple", big(r.multiple)},
                        {"divides", r.divides},
                        {"s_field", r.s_field},
                        {"field_multiple", big(r.field_multiple)},
                        {"divides_field", r.divides_field}};
            if (r.exponential_bound) row["exponential_bound"] = *r.exponential_bound;
            if (r.repunit_bound) {
                row["repunit_bound"] = big(*r.repunit_bound);
                row["repunit_bound_holds"] = *r.repunit_bound_holds;
            }
            if (!r.divides) {
                rep.caveats.push_back("L=" + std::to_string(L) + ": T does not divide p(p^{2s}-1); it divides "
                                      "p(p^{2s'}-1) with s' = s_field");
            }
            rows.push_back(row);
            rep.csv_rows.push_back({"divides(" + std::to_string(L) + ")", r.divides ? "true" : "false"});
        }
        rep.result["rows"] = rows;
    } else if (which == "coprime") {
        const auto r = coprime_decomposition_check(p, param<int>(cfg, "a", 4), param<int>(cfg, "b", 3), oo);
        rep.result.update({{"a", r.a},
                           {"b", r.b},
                           {"T_a", big(r.t_a)},
                           {"T_b", big(r.t_b)},
                           {"T_ab", big(r.t_ab)},
                           {"lcm", big(r.lcm)},
                           {"d", big(r.d)},
                           {"d_divides_p_minus_1", r.d_divides_p_minus_1}});
        add_kv_rows(rep);
    } else if (which == "kernel") {
        const auto r = kernel_check(p, single_volume(cfg, 2 * static_cast<int>(p)));
        rep.result.update({{"L", r.L},
                           {"kernel_dim", r.kernel_dim},
                           {"commutes", r.commutes},
                           {"v_squared_minus_four", r.v_squared_minus_four}});
        add_kv_rows(rep);
    } else if (which == "blocks") {
        const auto r = block_spectrum(p, single_volume(cfg, 10));
        json blocks = json::array();
        const FiniteField f(p, static_cast<int>(r.n));
        for (const auto &b : r.blocks) {
            blocks.push_back({{"k", b.k},
                              {"omega", f.to_string(b.omega)},
                              {"charpoly_ok", b.charpoly_ok},
                              {"minus_one", b.minus_one},
                              {"trace_six", b.trace_six},
                              {"order", big(b.order)}});
        }
        rep.result.update({{"L", r.L}, {"n", r.n}, {"modulus", r.modulus}, {"lcm_order", big(r.lcm_order)}});
        rep.result["blocks"] = blocks;
        rep.csv_rows.push_back({"lcm_order", big(r.lcm_order)});
    } else {
        throw UsageError("--corollary must be 2pm, div, repunit, coprime, kernel or blocks");
    }
    return rep;
}

std::string csv_escape(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

json RunConfig::to_json() const {
    return {{"subcommand", subcommand},
            {"builtin", builtin},
            {"map", map_path},
            {"gate", gate_path},
            {"labels", labels},
            {"seed", seed},
            {"max_dim", max_dim},
            {"state_cap", state_cap},
            {"budget", budget},
            {"format", format},
            {"params", params}};
}

RunConfig RunConfig::from_json(const json &j) {
    RunConfig c;
    c.subcommand = j.at("subcommand").get<std::string>();
    c.builtin = j.value("builtin", "");
    c.map_path = j.value("map", "");
    c.gate_path = j.value("gate", "");
    c.labels = j.value("labels", "offset");
    c.seed = j.value("seed", c.seed);
    c.max_dim = j.value("max_dim", c.max_dim);
    c.state_cap = j.value("state_cap", c.state_cap);
    c.budget = j.value("budget", c.budget);
    c.format = j.value("format", "json");
    c.params = j.value("params", json::object());
    return c;
}

std::vector<int> parse_range(const std::string &text, int default_step) {
    std::vector<int> out;
    try {
        const auto dots = text.find("..");
        if (dots != std::string::npos) {
            const auto colon = text.find(':', dots);
            const int lo = std::stoi(text.substr(0, dots));
            const int hi = std::stoi(text.substr(dots + 2, colon == std::string::npos ? std::string::npos : colon - dots - 2));
            const int step = colon == std::string::npos ? default_step : std::stoi(text.substr(colon + 1));
            if (step <= 0 || hi < lo) throw UsageError("bad range " + text);
            for (int v = lo; v <= hi; v += step) out.push_back(v);
        } else {
            std::stringstream ss(text);
            std::string item;
            while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
        }
    } catch (const UsageError &) {
        throw;
    } catch (const std::exception &) {
        throw UsageError("bad range " + text);
    }
    if (out.empty()) throw UsageError("empty range " + text);
    return out;
}

Report run(const RunConfig &cfg) {
    if (cfg.format != "json" && cfg.format != "csv") throw UsageError("--format must be json or csv");
    if (cfg.subcommand == "verify") return run_verify(cfg);
    if (cfg.subcommand == "construct") return run_construct(cfg);
    if (cfg.subcommand == "enumerate") return run_enumerate(cfg);
    if (cfg.subcommand == "gliders") return run_gliders(cfg);
    if (cfg.subcommand == "correlate") return run_correlate(cfg);
    if (cfg.subcommand == "orbits") return run_orbits(cfg);
    if (cfg.subcommand == "recurrence") return run_recurrence(cfg);
    if (cfg.subcommand == "ffield") return run_ffield(cfg);
    throw UsageError("unknown subcommand " + cfg.subcommand);
}

std::string render(const RunConfig &cfg, const Report &rep) {
    if (cfg.format == "csv") {
        std::ostringstream os;
        os << "# " << kSchema << " " << cfg.subcommand << "\n";
        for (size_t i = 0; i < rep.csv_header.size(); i++) os << (i ? "," : "") << rep.csv_header[i];
        os << "\n";
        for (const auto &row : rep.csv_rows) {
            for (size_t i = 0; i < row.size(); i++) os << (i ? "," : "") << csv_escape(row[i]);
            os << "\n";
        }
        for (const auto &c : rep.caveats) os << "# caveat: " << c << "\n";
        return os.str();
    }
    json out = {{"schema", kSchema}, {"config", cfg.to_json()}, {"result", rep.result}, {"caveats", rep.caveats}};
    return out.dump(2) + "\n";
}

}  // namespace duc::cli
