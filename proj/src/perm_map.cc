#include "duc/perm_map.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace duc {

PermMap::PermMap(int n, std::vector<int> c, std::vector<int> d) : n_(n), c_(std::move(c)), d_(std::move(d)) {
    if (n < 1) {
        throw std::invalid_argument("PermMap: N must be positive");
    }
    const size_t cells = static_cast<size_t>(n) * n;
    if (c_.size() != cells || d_.size() != cells) {
        throw std::invalid_argument("PermMap: squares must have N*N entries");
    }
    for (size_t k = 0; k < cells; k++) {
        if (c_[k] < 0 || c_[k] >= n || d_[k] < 0 || d_[k] >= n) {
            throw std::invalid_argument("PermMap: square entry out of range");
        }
    }
}

PermMap PermMap::from_function(int n, const std::function<std::pair<int, int>(int, int)> &f) {
    std::vector<int> c(n * n);
    std::vector<int> d(n * n);
    for (int a = 0; a < n; a++) {
        for (int b = 0; b < n; b++) {
            auto [x, y] = f(a, b);
            c[a * n + b] = x;
            d[a * n + b] = y;
        }
    }
    return PermMap(n, std::move(c), std::move(d));
}

PermMap PermMap::swap(int n) {
    return from_function(n, [](int a, int b) { return std::pair{b, a}; });
}

PermMap PermMap::from_gate(const Gate &g) {
    if (!g.homogeneous() || !is_permutation_matrix(g.matrix())) {
        throw std::invalid_argument("PermMap::from_gate: not a homogeneous permutation gate");
    }
    const int n = g.n();
    const auto &u = g.matrix();
    return from_function(n, [&](int a, int b) {
        Eigen::Index row = 0;
        u.col(a * n + b).cwiseAbs().maxCoeff(&row);
        return std::pair{static_cast<int>(row) / n, static_cast<int>(row) % n};
    });
}

Gate PermMap::to_gate() const {
    Gate g(n_, n_);
    for (int a = 0; a < n_; a++) {
        for (int b = 0; b < n_; b++) {
            g.set(a, b, c(a, b), d(a, b), 1.0);
        }
    }
    return g;
}

PermMap PermMap::inverse() const {
    const int cells = n_ * n_;
    std::vector<int> c(cells, -1);
    std::vector<int> d(cells, -1);
    for (int ab = 0; ab < cells; ab++) {
        const int cd = apply_packed(ab);
        if (c[cd] >= 0) {
            throw std::invalid_argument("PermMap::inverse: map is not bijective");
        }
        c[cd] = ab / n_;
        d[cd] = ab % n_;
    }
    return PermMap(n_, std::move(c), std::move(d));
}

std::vector<uint8_t> PermMap::serialize() const {
    std::vector<uint8_t> out(2 * c_.size());
    for (size_t k = 0; k < c_.size(); k++) {
        out[2 * k] = static_cast<uint8_t>(c_[k]);
        out[2 * k + 1] = static_cast<uint8_t>(d_[k]);
    }
    return out;
}

namespace {

/// True iff the pair (quartet[i], quartet[j]) takes distinct values on all N² quartets.
bool pairing_bijective(const PermMap &m, int i, int j) {
    const int n = m.n();
    std::vector<char> seen(n * n, 0);
    for (int a = 0; a < n; a++) {
        for (int b = 0; b < n; b++) {
            const int q[4] = {a, b, m.c(a, b), m.d(a, b)};
            char &s = seen[q[i] * n + q[j]];
            if (s) {
                return false;
            }
            s = 1;
        }
    }
    return true;
}

}  // namespace

PermFlags check_flags(const PermMap &m) {
    const int n = m.n();
    PermFlags f;
    f.bijective = pairing_bijective(m, 2, 3);
    f.dual_unitary = f.bijective && pairing_bijective(m, 0, 2) && pairing_bijective(m, 1, 3);
    f.perfect = f.dual_unitary && pairing_bijective(m, 0, 3) && pairing_bijective(m, 1, 2);
    f.self_orthogonal = true;
    f.non_interacting = true;
    for (int a = 0; a < n; a++) {
        for (int b = 0; b < n; b++) {
            f.self_orthogonal = f.self_orthogonal && m.c(a, b) == m.d(b, a);
            f.non_interacting = f.non_interacting && m.c(a, b) == m.c(0, b) && m.d(a, b) == m.d(a, 0);
        }
    }
    f.non_interacting = f.non_interacting && f.bijective;
    return f;
}

bool yang_baxter(const PermMap &m) {
    const int n = m.n();
    for (int x = 0; x < n; x++) {
        for (int y = 0; y < n; y++) {
            for (int z = 0; z < n; z++) {
                std::array<int, 3> l{x, y, z};
                std::array<int, 3> r{x, y, z};
                auto act = [&](std::array<int, 3> &s, int k) {
                    const int c = m.c(s[k], s[k + 1]);
                    const int d = m.d(s[k], s[k + 1]);
                    s[k] = c;
                    s[k + 1] = d;
                };
                act(l, 0), act(l, 1), act(l, 0);
                act(r, 1), act(r, 0), act(r, 1);
                if (l != r) {
                    return false;
                }
            }
        }
    }
    return true;
}

PermMap permute_legs(const PermMap &m, const LegPermutation &legs) {
    const int n = m.n();
    std::vector<int> c(n * n, -1);
    std::vector<int> d(n * n, -1);
    for (int a = 0; a < n; a++) {
        for (int b = 0; b < n; b++) {
            const int q[4] = {a, b, m.c(a, b), m.d(a, b)};
            const int k = q[legs[0]] * n + q[legs[1]];
            if (c[k] >= 0) {
                throw std::invalid_argument("permute_legs: image is not a map");
            }
            c[k] = q[legs[2]];
            d[k] = q[legs[3]];
        }
    }
    return PermMap(n, std::move(c), std::move(d));
}

PermMap space_reflect(const PermMap &m) { return permute_legs(m, D4Element::space_reflect().legs); }

PermMap time_reflect(const PermMap &m) { return m.inverse(); }

PermMap diag_sim(const PermMap &m, const std::vector<int> &a, const std::vector<int> &b) {
    const int n = m.n();
    if (static_cast<int>(a.size()) != n || static_cast<int>(b.size()) != n) {
        throw std::invalid_argument("diag_sim: permutations must have N entries");
    }
    std::vector<int> c(n * n);
    std::vector<int> d(n * n);
    for (int x = 0; x < n; x++) {
        for (int y = 0; y < n; y++) {
            const int k = b[x] * n + a[y];
            c[k] = a[m.c(x, y)];
            d[k] = b[m.d(x, y)];
        }
    }
    return PermMap(n, std::move(c), std::move(d));
}

namespace {

std::vector<std::vector<int>> all_permutations(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

std::vector<uint8_t> canonical_key(const PermMap &m, const std::vector<std::vector<int>> &perms,
                                   const CanonicalOptions &opts) {
    const int n = m.n();
    std::vector<PermMap> bases;
    if (opts.include_reshuffle) {
        for (const auto &e : d4_group()) {
            bases.push_back(permute_legs(m, e.legs));
        }
    } else {
        bases.push_back(m);
        bases.push_back(space_reflect(m));
        bases.push_back(time_reflect(m));
        bases.push_back(time_reflect(bases[1]));
    }
    std::vector<uint8_t> best;
    std::vector<uint8_t> cur(2 * n * n);
    for (const auto &base : bases) {
        for (const auto &a : perms) {
            for (const auto &b : perms) {
                for (int x = 0; x < n; x++) {
                    for (int y = 0; y < n; y++) {
                        const int k = b[x] * n + a[y];
                        cur[2 * k] = static_cast<uint8_t>(a[base.c(x, y)]);
                        cur[2 * k + 1] = static_cast<uint8_t>(b[base.d(x, y)]);
                    }
                }
                if (best.empty() || cur < best) {
                    best = cur;
                }
            }
        }
    }
    return best;
}

PermMap deserialize(int n, const std::vector<uint8_t> &key) {
    std::vector<int> c(n * n);
    std::vector<int> d(n * n);
    for (int k = 0; k < n * n; k++) {
        c[k] = key[2 * k];
        d[k] = key[2 * k + 1];
    }
    return PermMap(n, std::move(c), std::move(d));
}

/// Completes D for a fixed row-Latin C, cell by cell in row-major order.
void extend_d(int n, const std::vector<int> &c, std::vector<int> &d, int cell, std::vector<char> &col_used,
              std::vector<char> &pair_used, std::vector<PermMap> &out) {
    if (cell == n * n) {
        out.emplace_back(n, c, d);
        return;
    }
    const int b = cell % n;
    const int cv = c[cell];
    for (int v = 0; v < n; v++) {
        if (col_used[b * n + v] || pair_used[cv * n + v]) {
            continue;
        }
        col_used[b * n + v] = pair_used[cv * n + v] = 1;
        d[cell] = v;
        extend_d(n, c, d, cell + 1, col_used, pair_used, out);
        col_used[b * n + v] = pair_used[cv * n + v] = 0;
    }
}

}  // namespace

PermMap canonical_form(const PermMap &m, const CanonicalOptions &opts) {
    return deserialize(m.n(), canonical_key(m, all_permutations(m.n()), opts));
}

std::vector<PermMap> all_du_maps(int n, bool parallel) {
    const auto perms = all_permutations(n);
    const int64_t rows = static_cast<int64_t>(perms.size());
    int64_t total_c = 1;
    for (int a = 0; a < n; a++) {
        total_c *= rows;
    }
    std::vector<std::vector<PermMap>> per_c(total_c);
#pragma omp parallel for schedule(dynamic, 16) if (parallel)
    for (int64_t idx = 0; idx < total_c; idx++) {
        std::vector<int> c(n * n);
        int64_t rem = idx;
        for (int a = n - 1; a >= 0; a--) {
            const auto &row = perms[rem % rows];
            rem /= rows;
            std::copy(row.begin(), row.end(), c.begin() + a * n);
        }
        std::vector<int> d(n * n);
        std::vector<char> col_used(n * n, 0);
        std::vector<char> pair_used(n * n, 0);
        extend_d(n, c, d, 0, col_used, pair_used, per_c[idx]);
    }
    std::vector<PermMap> out;
    for (auto &v : per_c) {
        for (auto &m : v) {
            out.push_back(std::move(m));
        }
    }
    return out;
}

EquivClassReport enumerate_du(int n, const EnumerateOptions &opts) {
    if (n < 1) {
        throw std::invalid_argument("enumerate_du: N must be positive");
    }
    if (n > 4 || (n == 4 && !opts.allow_n4)) {
        std::ostringstream msg;
        msg << "enumerate_du: N=" << n << " refused; the search visits (N!)^N = ";
        double cands = 1;
        double fact = 1;
        for (int k = 2; k <= n; k++) {
            fact *= k;
        }
        for (int k = 0; k < n; k++) {
            cands *= fact;
        }
        msg << cands << " row-Latin squares and canonicalizes each DU map over " << 4 * fact * fact
            << " group elements";
        throw std::invalid_argument(msg.str());
    }
    const auto maps = all_du_maps(n, opts.parallel);
    const auto perms = all_permutations(n);
    const int64_t count = static_cast<int64_t>(maps.size());
    std::vector<std::vector<uint8_t>> keys(count);
    std::vector<std::vector<uint8_t>> keys_r(count);
    CanonicalOptions with_r;
    with_r.include_reshuffle = true;
#pragma omp parallel for schedule(dynamic, 64) if (opts.parallel)
    for (int64_t i = 0; i < count; i++) {
        keys[i] = canonical_key(maps[i], perms, {});
        keys_r[i] = canonical_key(maps[i], perms, with_r);
    }
    std::map<std::vector<uint8_t>, int64_t> classes;
    std::map<std::vector<uint8_t>, int64_t> classes_r;
    for (int64_t i = 0; i < count; i++) {
        classes[keys[i]]++;
        classes_r[keys_r[i]]++;
    }
    EquivClassReport rep;
    rep.n = n;
    rep.total_maps = count;
    rep.class_count = static_cast<int64_t>(classes.size());
    rep.reshuffle_inclusive_count = static_cast<int64_t>(classes_r.size());
    for (const auto &[key, size] : classes) {
        PermMap m = deserialize(n, key);
        const auto f = check_flags(m);
        rep.non_interacting_classes += f.non_interacting;
        rep.perfect_classes += f.perfect;
        rep.representatives.push_back(std::move(m));
        rep.class_sizes.push_back(size);
    }
    return rep;
}

namespace {

int to_label(int v, int n, LabelConvention conv) {
    if (conv == LabelConvention::offset_one) {
        return v + 1;
    }
    return v == 0 ? n : v;
}

int from_label(int label, int n, LabelConvention conv) {
    if (label < 1 || label > n) {
        throw std::invalid_argument("parse_perm_map: label out of range");
    }
    return conv == LabelConvention::offset_one ? label - 1 : label % n;
}

/// Row/column order of the printed table: labels 1..N.
int value_at_position(int pos, int n, LabelConvention conv) { return from_label(pos + 1, n, conv); }

}  // namespace

std::string render(const PermMap &m, LabelConvention conv) {
    const int n = m.n();
    std::ostringstream out;
    for (int i = 0; i < n; i++) {
        if (i) {
            out << " / ";
        }
        const int a = value_at_position(i, n, conv);
        for (int j = 0; j < n; j++) {
            const int b = value_at_position(j, n, conv);
            if (j) {
                out << ' ';
            }
            const int c = to_label(m.c(a, b), n, conv);
            const int d = to_label(m.d(a, b), n, conv);
            if (n <= 9) {
                out << c << d;
            } else {
                out << '(' << c << ',' << d << ')';
            }
        }
    }
    return out.str();
}

PermMap parse_perm_map(const std::string &text, LabelConvention conv) {
    std::vector<std::vector<std::pair<int, int>>> rows;
    std::string row_text;
    std::istringstream rows_in(text);
    while (std::getline(rows_in, row_text, '/')) {
        std::vector<std::pair<int, int>> row;
        size_t i = 0;
        while (i < row_text.size()) {
            const char ch = row_text[i];
            if (std::isspace(static_cast<unsigned char>(ch))) {
                i++;
            } else if (ch == '(') {
                const size_t close = row_text.find(')', i);
                const size_t comma = row_text.find(',', i);
                if (close == std::string::npos || comma == std::string::npos || comma > close) {
                    throw std::invalid_argument("parse_perm_map: malformed (c,d) pair");
                }
                row.emplace_back(std::stoi(row_text.substr(i + 1, comma - i - 1)),
                                 std::stoi(row_text.substr(comma + 1, close - comma - 1)));
                i = close + 1;
            } else if (std::isdigit(static_cast<unsigned char>(ch)) && i + 1 < row_text.size() &&
                       std::isdigit(static_cast<unsigned char>(row_text[i + 1]))) {
                row.emplace_back(ch - '0', row_text[i + 1] - '0');
                i += 2;
            } else {
                throw std::invalid_argument("parse_perm_map: unexpected character in table");
            }
        }
        rows.push_back(std::move(row));
    }
    const int n = static_cast<int>(rows.size());
    if (n == 0) {
        throw std::invalid_argument("parse_perm_map: empty table");
    }
    std::vector<int> c(n * n);
    std::vector<int> d(n * n);
    for (int i = 0; i < n; i++) {
        if (static_cast<int>(rows[i].size()) != n) {
            throw std::invalid_argument("parse_perm_map: table is not square");
        }
        const int a = value_at_position(i, n, conv);
        for (int j = 0; j < n; j++) {
            const int b = value_at_position(j, n, conv);
            c[a * n + b] = from_label(rows[i][j].first, n, conv);
            d[a * n + b] = from_label(rows[i][j].second, n, conv);
        }
    }
    return PermMap(n, std::move(c), std::move(d));
}

}  // namespace duc
