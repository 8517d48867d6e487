#include <numbers>
#include <random>

#include <unsupported/Eigen/KroneckerProduct>

#include "doctest.h"
#include "duc/builtins.h"
#include "duc/constructions.h"
#include "duc/ergodicity.h"
#include "duc/kernels.h"
#include "duc/linalg.h"
#include "test_util.h"

using namespace duc;
using duc::testing::max_abs_diff;
using duc::testing::random_unitary;

namespace {

Gate random_du_n2(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(-3, 3);
    return dress(n2_family(u(rng)), random_unitary(2, rng), random_unitary(2, rng), random_unitary(2, rng),
                 random_unitary(2, rng));
}

Gate random_du_n3(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(0, 6.3);
    std::vector<double> ph(9);
    for (auto &p : ph) p = u(rng);
    return dress(phase_dress_perm(builtin_map("table1"), ph), random_unitary(3, rng), random_unitary(3, rng),
                 random_unitary(3, rng), random_unitary(3, rng));
}

Matrix vec_apply(const Matrix &s, const Matrix &o) {
    const int n = static_cast<int>(o.rows());
    Eigen::VectorXcd v(n * n);
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) v(i * n + j) = o(i, j);
    Eigen::VectorXcd w = s * v;
    Matrix out(n, n);
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) out(i, j) = w(i * n + j);
    return out;
}

// Heisenberg path of a one-site operator through the layers, last layer first.
Matrix channel_prediction(const Gate &g, int L, int t, const Matrix &o1, int x, int &end) {
    const Matrix mp = channel_m(g, ChannelSign::plus);
    const Matrix mm = channel_m(g, ChannelSign::minus);
    Matrix o = o1;
    int pos = x;
    for (int l = t; l >= 1; l--) {
        const bool v1 = l % 2 == 1;
        const bool left_site = (pos % 2 == 0) == v1;
        o = vec_apply(left_site ? mp : mm, o);
        pos = (pos + (left_site ? 1 : -1) + L) % L;
    }
    end = pos;
    return o;
}

}  // namespace

TEST_CASE("channels") {
    std::mt19937_64 rng(1);
    for (int rep = 0; rep < 10; rep++) {
        Gate g = rep % 2 ? random_du_n3(rng) : random_du_n2(rng);
        const int n = g.n();
        for (auto sign : {ChannelSign::plus, ChannelSign::minus}) {
            Matrix s = channel_m(g, sign);
            CHECK(max_abs_diff(vec_apply(s, Matrix::Identity(n, n)), Matrix::Identity(n, n)) < 1e-12);
            Matrix o = random_unitary(n, rng) + Matrix::Identity(n, n) * cplx(0.3, 0.1);
            CHECK(std::abs(vec_apply(s, o).trace() - o.trace()) < 1e-12);
        }
    }
    // Direct partial-trace oracle for M_+.
    Gate g = random_du_n3(rng);
    Matrix o = random_unitary(3, rng);
    Matrix big = g.matrix().adjoint() * Eigen::kroneckerProduct(o, Matrix::Identity(3, 3)).eval() * g.matrix();
    Matrix red = Matrix::Zero(3, 3);
    for (int a = 0; a < 3; a++) red += big.block(a * 3, a * 3, 3, 3);
    CHECK(max_abs_diff(vec_apply(channel_m(g, ChannelSign::plus), o), red / 3.0) < 1e-12);
    Matrix perfect = channel_m(builtin_map("z3").to_gate(), ChannelSign::plus);
    auto ev = eigenvalues(perfect);
    int ones = 0;
    for (auto l : ev) {
        if (std::abs(l - 1.0) < 1e-12) ones++;
        else CHECK(std::abs(l) < 1e-12);
    }
    CHECK(ones == 1);
    CHECK_THROWS(channel_m(Gate(2, 2, 2.0 * Matrix::Identity(4, 4)), ChannelSign::plus));
}

TEST_CASE("t_1 equals the M_+ superoperator") {
    std::mt19937_64 rng(2);
    std::vector<Gate> gates;
    for (const auto &name : builtin_names()) {
        PermMap m = builtin_map(name);
        if (check_flags(m).dual_unitary) gates.push_back(m.to_gate());
    }
    for (int k = 0; k < 5; k++) gates.push_back(random_du_n3(rng));
    for (const auto &g : gates) {
        Matrix t1 = transfer_matrix(g, 1, Direction::right).matrix;
        Matrix mp = channel_m(g, ChannelSign::plus);
        CHECK(max_abs_diff(t1, mp) < 1e-12);
        CHECK(multiset_distance(eigenvalues(t1), eigenvalues(mp)) < 1e-9);
    }
}

TEST_CASE("transfer kernels agree and bound the spectrum") {
    std::mt19937_64 rng(3);
    Gate g = random_du_n3(rng);
    TransferOptions serial{6561, Exec::serial};
    Matrix a = transfer_matrix(g, 2, Direction::right, serial).matrix;
    Matrix b = transfer_matrix(g, 2, Direction::right).matrix;
    CHECK(a == b);
    for (auto l : eigenvalues(a)) CHECK(std::abs(l) <= 1 + 1e-9);
    CHECK(spectrum(a).unimodular_count >= 1);
    CHECK_THROWS(transfer_matrix(g, 5, Direction::right));
}

TEST_CASE("integer transfer graph matches the dense matrix") {
    for (const auto &name : {"E1", "I2", "C1"}) {
        PermMap m = builtin_map(name);
        for (auto dir : {Direction::right, Direction::left}) {
            Matrix t = transfer_matrix(m.to_gate(), 2, dir).matrix * 3.0;
            for (Eigen::Index r = 0; r < t.rows(); r++)
                for (Eigen::Index c = 0; c < t.cols(); c++) {
                    const double v = t(r, c).real();
                    CHECK(std::abs(t(r, c) - std::round(v)) < 1e-12);
                    CHECK(v >= -1e-12);
                }
            GliderOptions dense;
            dense.allow_exact = false;
            CHECK(spectrum(t / 3.0).unimodular_count == unimodular_count_exact(m, 2, dir));
        }
    }
}

TEST_CASE("published glider counts, alpha up to 3") {
    struct Row {
        const char *name;
        int64_t counts[3];
    };
    const Row rows[] = {{"C1", {0, 0, 0}}, {"C2", {0, 0, 0}},     {"I1", {4, 40, 364}},
                        {"I2", {8, 80, 728}}, {"E1", {0, 2, 11}}, {"E2", {0, 0, 1}}};
    for (const auto &row : rows) {
        Gate g = builtin_map(row.name).to_gate();
        int64_t prev = -1;
        for (int a = 1; a <= 3; a++) {
            auto c = glider_count(g, a);
            CHECK_MESSAGE(c.total == row.counts[a - 1], row.name << " alpha=" << a);
            CHECK(c.total >= prev);
            prev = c.total;
        }
    }
    GliderOptions dense;
    dense.allow_exact = false;
    CHECK(glider_count(builtin_map("E1").to_gate(), 2, dense).total == 2);
    CHECK(glider_count(builtin_map("E1").to_gate(), 2, dense).method == "dense_zgeev");
}

TEST_CASE("exact and dense counts agree on enumerated maps") {
    auto maps = all_du_maps(3, true);
    GliderOptions dense;
    dense.allow_exact = false;
    for (size_t k = 0; k < maps.size(); k += 97) {
        Gate g = maps[k].to_gate();
        for (int a = 1; a <= 2; a++) {
            auto e = glider_count(g, a);
            auto d = glider_count(g, a, dense);
            CHECK(e.right == d.right);
            CHECK(e.left == d.left);
        }
    }
}

TEST_CASE("perfect maps have trivial transfer spectra") {
    for (const auto &name : {"z3", "V1", "mols7"}) {
        PermMap m = builtin_map(name);
        for (int a = 1; a <= 2; a++) {
            if (m.n() == 7 && a == 2) continue;  // nontrivial, checked below
            for (auto dir : {Direction::right, Direction::left}) {
                auto s = exact_spectrum_summary(m, a, dir);
                CHECK_MESSAGE(s.trivial, std::string(name) << " alpha=" << a);
                CHECK(s.unimodular_count == 1);
            }
        }
    }
    // Perfect maps unrelated to a linear one keep decaying modes at alpha = 2 in both directions.
    for (const auto &name : {"V2", "mols7"})
        for (auto dir : {Direction::right, Direction::left}) {
            PermMap m = builtin_map(name);
            CHECK(exact_spectrum_summary(m, 1, dir).trivial);
            const auto s = exact_spectrum_summary(m, 2, dir);
            CHECK_FALSE(s.trivial);
            CHECK(s.unimodular_count == 1);
            double largest = 0;
            for (auto l : eigenvalues(transfer_matrix(m.to_gate(), 2, dir).matrix))
                if (std::abs(l - 1.0) > 1e-6) largest = std::max(largest, std::abs(l));
            CHECK_MESSAGE(largest > 0.3, std::string(name));
        }
    CHECK_FALSE(exact_spectrum_summary(builtin_map("I1"), 1, Direction::right).trivial);
    CHECK_FALSE(exact_spectrum_summary(builtin_map("C1"), 2, Direction::right).trivial);
}

TEST_CASE("chain map counts match the transfer matrices") {
    std::mt19937_64 rng(4);
    for (int rep = 0; rep < 6; rep++) {
        Gate g = rep < 3 ? random_du_n2(rng) : builtin_map(rep == 3 ? "E1" : rep == 4 ? "I1" : "C2").to_gate();
        for (int a = 1; a <= (g.n() == 2 ? 3 : 2); a++) {
            auto tc = spectrum(transfer_matrix(g, a, Direction::right).matrix).unimodular_count;
            auto pc = spectrum(chain_map(g, a)).unimodular_count;
            CHECK(tc == pc);
        }
    }
}

TEST_CASE("glider extraction") {
    auto e1 = extract_gliders(builtin_map("E1").to_gate(), 2, Direction::right);
    auto e1l = extract_gliders(builtin_map("E1").to_gate(), 2, Direction::left);
    CHECK(e1.size() == 3);
    CHECK(e1l.size() == 1);
    Eigen::MatrixXcd span(27 * 27, static_cast<Eigen::Index>(e1.size()));
    for (size_t k = 0; k < e1.size(); k++) {
        const auto &c = e1[k];
        CHECK(c.verified);
        CHECK(c.residual < 1e-8);
        CHECK(std::abs(c.op.norm() - 1) < 1e-12);
        span.col(static_cast<Eigen::Index>(k)) = c.op.reshaped();
    }
    // The identity sits inside the candidate span.
    Eigen::VectorXcd id = Matrix::Identity(27, 27).reshaped() / std::sqrt(27.0);
    Eigen::VectorXcd coef = span.colPivHouseholderQr().solve(id);
    CHECK((span * coef - id).norm() < 1e-10);
    // E2 at range 5 takes the sparse path; one nontrivial candidate overall.
    size_t total = 0;
    for (auto dir : {Direction::right, Direction::left}) {
        auto c = extract_gliders(builtin_map("E2").to_gate(), 3, dir);
        for (const auto &x : c) CHECK(x.verified);
        total += c.size();
    }
    CHECK(total == 3);
    // Generic qubit gates: every unimodular eigen-operator is a glider.
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 4; rep++) {
        Gate g = random_du_n2(rng);
        for (auto dir : {Direction::right, Direction::left})
            for (const auto &c : extract_gliders(g, 2, dir)) CHECK(c.verified);
    }
}

TEST_CASE("exchange residual rejects non-gliders") {
    std::mt19937_64 rng(6);
    Gate g = builtin_map("E1").to_gate();
    Matrix op = random_unitary(27, rng);
    CHECK(exchange_residual(g, op, 3, 1.0, 8, 1) > 1e-3);
}

TEST_CASE("correlator: light-cone contraction equals the dense reference") {
    std::mt19937_64 rng(7);
    Gate du = random_du_n2(rng);
    Gate generic(2, 2, random_unitary(4, rng));
    Gate du3 = random_du_n3(rng);
    auto basis2 = traceless_basis(2);
    auto basis3 = traceless_basis(3);
    for (int t = 0; t <= 4; t++)
        for (int x = 0; x < 6; x++)
            for (int y : {0, 1}) {
                const Matrix &o1 = basis2[(x + t) % 3];
                const Matrix &o2 = basis2[(y + 1) % 3];
                CHECK(std::abs(correlator(du, 6, t, o1, o2, x, y) - correlator_dense(du, 6, t, o1, o2, x, y)) <
                      1e-12);
                CHECK(std::abs(correlator(generic, 6, t, o1, o2, x, y) -
                               correlator_dense(generic, 6, t, o1, o2, x, y)) < 1e-12);
            }
    for (int t = 0; t <= 3; t++)
        for (int x = 0; x < 4; x++) {
            const Matrix &o1 = basis3[(x + t) % 8];
            const Matrix &o2 = basis3[5];
            CHECK(std::abs(correlator(du3, 4, t, o1, o2, x, 1) - correlator_dense(du3, 4, t, o1, o2, x, 1)) < 1e-12);
        }
    // Identity pieces: ⟨1 · o⟩ = Tr(o)/N.
    Matrix o = Matrix::Zero(2, 2);
    o(0, 0) = 2;
    CHECK(std::abs(correlator(du, 6, 2, Matrix::Identity(2, 2), o, 3, 0) - 1.0) < 1e-12);
}

TEST_CASE("correlator: light cone and channel formula") {
    std::mt19937_64 rng(8);
    Gate g = random_du_n2(rng);
    auto basis = traceless_basis(2);
    const int L = 8;
    for (int t = 1; t <= 4; t++)
        for (int y : {0, 1})
            for (const auto &o2 : basis) {
                auto row = correlator_row(g, L, t, basis, o2, y);
                for (int x = 0; x < L; x++) {
                    int end = 0;
                    for (size_t k = 0; k < basis.size(); k++) {
                        Matrix pred = channel_prediction(g, L, t, basis[k], x, end);
                        const cplx expected = end == y ? (pred * o2).trace() / 2.0 : cplx(0);
                        CHECK(std::abs(row[x][k] - expected) < 1e-10);
                    }
                    int dist = std::abs(x - y);
                    dist = std::min(dist, L - dist);
                    if (dist != t) {
                        for (const auto &v : row[x]) CHECK(std::abs(v) < 1e-10);
                    }
                }
            }
    // Serial and parallel rows agree exactly.
    CorrelatorOptions serial;
    serial.exec = Exec::serial;
    CHECK(correlator_row(g, L, 3, basis, basis[0], 1, serial) == correlator_row(g, L, 3, basis, basis[0], 1));
    // A generic unitary leaks off the light cone.
    Gate generic(2, 2, random_unitary(4, rng));
    double off = 0;
    for (int x = 0; x < L; x++) off = std::max(off, std::abs(correlator(generic, L, 2, basis[2], basis[2], x, 0)));
    CHECK(off > 1e-3);
    CHECK_THROWS(correlator(g, 7, 1, basis[0], basis[0], 0, 0));
    CHECK_THROWS(correlator(builtin_map("z3").to_gate(), 10, 1, Matrix::Identity(3, 3), Matrix::Identity(3, 3), 0, 0));
}

TEST_CASE("correlator: perfect gate kills non-equal-time correlations") {
    Gate z = builtin_map("z3").to_gate();
    auto basis = traceless_basis(3);
    for (int t = 1; t <= 4; t++)
        for (const auto &o2 : basis) {
            auto row = correlator_row(z, 8, t, basis, o2, 0);
            for (const auto &r : row)
                for (const auto &v : r) CHECK(std::abs(v) < 1e-10);
        }
}

TEST_CASE("rational phases") {
    auto p = rational_phase(std::polar(1.0, 2 * std::numbers::pi / 3), 18);
    CHECK(p.p == 1);
    CHECK(p.q == 3);
    auto one = rational_phase(1.0, 10);
    CHECK(one.p == 0);
    CHECK(one.q == 1);
}

TEST_CASE("transfer graph kernels agree") {
    for (const auto &name : {"I1", "E1", "V2"}) {
        const PermMap u = builtin_map(name);
        const int n = u.n();
        std::vector<int> v(n * n), vp(n * n);
        for (int a = 0; a < n; a++)
            for (int b = 0; b < n; b++) {
                v[u.c(a, b) * n + u.d(a, b)] = b * n + a;
                vp[u.c(a, b) * n + a] = b * n + u.d(a, b);
            }
        for (int alpha = 1; alpha <= (n == 3 ? 3 : 2); alpha++) {
            const auto s = kernels::transfer_graph_serial(v, vp, n, alpha);
            const auto p = kernels::transfer_graph_omp(v, vp, n, alpha);
            CHECK(s.nodes == p.nodes);
            CHECK(s.offsets == p.offsets);
            CHECK(s.targets == p.targets);
        }
    }
}
