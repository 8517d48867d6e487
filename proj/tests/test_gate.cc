#include <random>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "duc/builtins.h"
#include "duc/gate.h"
#include "test_util.h"

using namespace duc;
using duc::testing::max_abs_diff;
using duc::testing::random_gate;
using duc::testing::random_unitary;

namespace {

// Independent reshuffle built straight from matrix entries.
Matrix reshuffle_oracle(const Gate &g) {
    const int n = g.n();
    const int m = g.m();
    Matrix r = Matrix::Zero(n * m, n * m);
    for (int a = 0; a < n; a++)
        for (int b = 0; b < m; b++)
            for (int c = 0; c < m; c++)
                for (int d = 0; d < n; d++) r(d * m + b, c * n + a) = g.matrix()(c * n + d, a * m + b);
    return r;
}

Gate kicked_n2(double j) {
    // exp(-i(π/4)(XX+YY) - iJ ZZ) is SWAP up to a phase structure and a ZZ coupling.
    Matrix u = Matrix::Zero(4, 4);
    const cplx i(0, 1);
    u(0, 0) = std::exp(-i * j);
    u(3, 3) = std::exp(-i * j);
    u(1, 2) = -i * std::exp(i * j);
    u(2, 1) = -i * std::exp(i * j);
    return Gate(2, 2, u);
}

}  // namespace

TEST_CASE("swap gate entries and predicates") {
    Gate p = Gate::swap(3);
    for (int a = 0; a < 3; a++)
        for (int b = 0; b < 3; b++)
            for (int c = 0; c < 3; c++)
                for (int d = 0; d < 3; d++) CHECK(p.at(a, b, c, d) == cplx(a == d && b == c ? 1.0 : 0.0));
    CHECK(is_unitary(p));
    CHECK(is_dual_unitary(p));
    CHECK_FALSE(is_perfect(p));
    CHECK(reshuffle_r(p) == p);
    CHECK_FALSE(is_unitary(reshuffle_d(p)));

    Gate broken = p;
    broken.set(0, 1, 1, 0, 0.0);
    CHECK_FALSE(is_unitary(broken));
}

TEST_CASE("non-homogeneous swap and reshuffle types") {
    Gate p = Gate::swap(2, 3);
    CHECK(p.n() == 2);
    CHECK(p.m() == 3);
    CHECK(is_dual_unitary(p));
    Gate r = reshuffle_r(p);
    CHECK(r.n() == 3);
    CHECK(r.m() == 2);
    CHECK_THROWS_AS(reshuffle_d(p), std::invalid_argument);
}

TEST_CASE("reshuffle maps match the index oracle and invert exactly") {
    std::mt19937_64 rng(11);
    for (auto [n, m] : {std::pair{2, 2}, std::pair{3, 3}, std::pair{2, 3}, std::pair{3, 2}}) {
        Gate g = random_gate(n, m, rng);
        CHECK(reshuffle_r(g).matrix() == reshuffle_oracle(g));
        CHECK(reshuffle_r(reshuffle_r_inverse(g)) == g);
        CHECK(reshuffle_r_inverse(reshuffle_r(g)) == g);
        if (n == m) {
            CHECK(reshuffle_d(reshuffle_d_inverse(g)) == g);
            CHECK(reshuffle_d_inverse(reshuffle_d(g)) == g);
        }
    }
}

TEST_CASE("reshuffle_d entries") {
    std::mt19937_64 rng(3);
    Gate g = random_gate(3, 3, rng);
    Gate d = reshuffle_d(g);
    for (int a = 0; a < 3; a++)
        for (int b = 0; b < 3; b++)
            for (int c = 0; c < 3; c++)
                for (int e = 0; e < 3; e++) CHECK(d.at(a, e, b, c) == g.at(a, b, c, e));
}

TEST_CASE("N=2 coupled swap is dual unitary and not perfect") {
    for (double j : {0.0, 0.3, 0.7, 1.2}) {
        Gate g = kicked_n2(j);
        CHECK(is_unitary(reshuffle_oracle(g)));
        CHECK(is_dual_unitary(g));
        CHECK_FALSE(is_perfect(g));
    }
}

TEST_CASE("Z3 linear map is perfect and its U^D is a permutation") {
    Gate z = builtin_map("z3").to_gate();
    CHECK(is_perfect(z));
    CHECK(is_permutation_matrix(reshuffle_d(z).matrix()));
}

TEST_CASE("dress") {
    std::mt19937_64 rng(5);
    Gate z = builtin_map("z3").to_gate();
    Matrix id = Matrix::Identity(3, 3);
    CHECK(dress(z, id, id, id, id) == z);
    for (int rep = 0; rep < 100; rep++) {
        Gate d = dress(z, random_unitary(3, rng), random_unitary(3, rng), random_unitary(3, rng),
                       random_unitary(3, rng));
        CHECK(is_perfect(d));
    }
    Gate t = builtin_map("table1").to_gate();
    for (int rep = 0; rep < 100; rep++) {
        Gate d = dress(t, random_unitary(3, rng), random_unitary(3, rng), random_unitary(3, rng),
                       random_unitary(3, rng));
        CHECK(is_dual_unitary(d));
    }
    CHECK_THROWS_AS(dress(z, Matrix::Identity(2, 2), id, id, id), std::invalid_argument);
}

TEST_CASE("diagonal similarity with permutations keeps permutation gates") {
    Gate t = builtin_map("table1").to_gate();
    Matrix a = Matrix::Zero(3, 3);
    Matrix b = Matrix::Zero(3, 3);
    a(1, 0) = a(2, 1) = a(0, 2) = 1;
    b(0, 0) = b(2, 1) = b(1, 2) = 1;
    Gate d = dress(t, a, b, b.adjoint(), a.adjoint());
    CHECK(is_permutation_matrix(d.matrix()));
    CHECK(is_dual_unitary(d));
}

TEST_CASE("D4 group structure") {
    auto group = d4_group();
    CHECK(group[0] == D4Element::identity());
    // Closure and uniqueness, checked by brute force over composition.
    for (const auto &x : group) {
        int found = 0;
        for (const auto &y : group) found += (x == y);
        CHECK(found == 1);
        for (const auto &y : group) {
            bool closed = false;
            for (const auto &z : group) closed = closed || (x.after(y) == z);
            CHECK(closed);
        }
        // Every element preserves the diagonal partition {0,3},{1,2}.
        CHECK((x.legs[0] + x.legs[3] == 3));
    }
    std::mt19937_64 rng(8);
    Gate g = random_gate(2, 2, rng);
    for (const auto &x : group)
        for (const auto &y : group) CHECK(d4_transform(d4_transform(g, y), x) == d4_transform(g, x.after(y)));

    auto s = D4Element::space_reflect();
    CHECK(d4_transform(d4_transform(g, s), s) == g);
    CHECK(d4_transform(Gate::swap(3), s) == Gate::swap(3));

    // Space reflection is P U P.
    Matrix p = Gate::swap(2).matrix();
    CHECK(max_abs_diff(d4_transform(g, s).matrix(), p * g.matrix() * p) == 0.0);
    // Time reflection is the plain transpose.
    CHECK(d4_transform(g, D4Element::time_reflect()).matrix() == g.matrix().transpose());

    Gate t = builtin_map("table1").to_gate();
    for (const auto &x : group) CHECK(is_dual_unitary(d4_transform(t, x)));
}

TEST_CASE("reduced densities and diagonal entanglement") {
    std::mt19937_64 rng(21);
    const Matrix flat = Matrix::Identity(9, 9) / 9.0;
    Gate t = dress(builtin_map("table1").to_gate(), random_unitary(3, rng), random_unitary(3, rng),
                   random_unitary(3, rng), random_unitary(3, rng));
    for (auto pair : {PartyPair::p12, PartyPair::p34, PartyPair::p13, PartyPair::p24}) {
        CHECK(max_abs_diff(reduced_density(t, pair), flat) < 1e-10);
    }
    for (auto pair : {PartyPair::p14, PartyPair::p23}) {
        Matrix rho = reduced_density(t, pair);
        CHECK(max_abs_diff(rho, rho.adjoint()) < 1e-12);
        CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
    }
    // A generic unitary has flat ρ_12 but not ρ_13.
    Gate u(3, 3, random_unitary(9, rng));
    CHECK(max_abs_diff(reduced_density(u, PartyPair::p12), flat) < 1e-10);
    CHECK(max_abs_diff(reduced_density(u, PartyPair::p13), flat) > 1e-3);

    Matrix rho_swap = reduced_density(Gate::swap(3), PartyPair::p14);
    CHECK(std::abs((rho_swap * rho_swap).trace() - 1.0) < 1e-12);
    auto e_swap = diagonal_entanglement(Gate::swap(3));
    CHECK(e_swap.entropy == doctest::Approx(0.0).epsilon(1e-12));
    auto e_z3 = diagonal_entanglement(builtin_map("z3").to_gate());
    CHECK(e_z3.entropy == doctest::Approx(2 * std::log(3.0)).epsilon(1e-10));
    CHECK(e_z3.maximum == doctest::Approx(2 * std::log(3.0)));
}

TEST_CASE("json round trip is bit exact") {
    Matrix u(4, 4);
    for (int r = 0; r < 4; r++)
        for (int c = 0; c < 4; c++) u(r, c) = cplx(0.125 * (r - c), -0.5 * r * c);
    Gate g(2, 2, u);
    nlohmann::json j = g;
    CHECK(gate_from_json(nlohmann::json::parse(j.dump())) == g);
    CHECK_THROWS(gate_from_json(nlohmann::json{{"n", 2}, {"re", {{1, 0}}}}));
}
