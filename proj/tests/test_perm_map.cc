#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "duc/builtins.h"
#include "duc/perm_map.h"

using namespace duc;

namespace {

std::vector<int> random_perm(int n, std::mt19937_64 &rng) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

PermMap random_du(int n, std::mt19937_64 &rng) {
    // Random dressing of a linear perfect map stays DU.
    PermMap base = n == 3 ? builtin_map("table1") : builtin_map("V1");
    return diag_sim(base, random_perm(n, rng), random_perm(n, rng));
}

}  // namespace

TEST_CASE("text format round trip") {
    PermMap t = builtin_map("table1");
    CHECK(render(t) == "33 23 13 / 31 12 21 / 32 11 22");
    CHECK(parse_perm_map(render(t)) == t);
    CHECK(t.c(0, 0) == 2);
    CHECK(t.d(0, 1) == 2);
    for (const auto &name : builtin_names()) {
        PermMap m = builtin_map(name);
        CHECK(parse_perm_map(render(m)) == m);
        CHECK(parse_perm_map(render(m, LabelConvention::vacuum), LabelConvention::vacuum) == m);
    }
    PermMap big = PermMap::from_function(11, [](int a, int b) { return std::pair{(a + b) % 11, (a + 2 * b) % 11}; });
    std::string s = render(big);
    CHECK(s.substr(0, 12) == "(1,1) (2,3) ");
    CHECK(parse_perm_map(s) == big);
    CHECK_THROWS(parse_perm_map("33 23/31"));
    CHECK_THROWS(parse_perm_map("34 12/21 11"));
    CHECK_THROWS(builtin_map("nonexistent"));
}

TEST_CASE("builtin flags") {
    auto t = check_flags(builtin_map("table1"));
    CHECK(t.bijective);
    CHECK(t.dual_unitary);
    CHECK_FALSE(t.perfect);
    CHECK(check_flags(builtin_map("z3")).perfect);
    CHECK(check_flags(builtin_map("mols7")).perfect);
    CHECK(check_flags(builtin_map("V1")).perfect);
    CHECK(check_flags(builtin_map("V2")).perfect);
    auto z4 = check_flags(builtin_map("z4"));
    CHECK(z4.dual_unitary);
    CHECK_FALSE(z4.perfect);
    for (const auto &name : {"C1", "C2", "I1", "I2", "E1", "E2", "U1", "U2"}) {
        CHECK_MESSAGE(check_flags(builtin_map(name)).dual_unitary, name);
    }
    CHECK(check_flags(PermMap::swap(4)).non_interacting);
    CHECK_FALSE(check_flags(builtin_map("table1")).non_interacting);
    PermMap so = PermMap::from_function(5, [](int a, int b) { return std::pair{(a + 2 * b) % 5, (2 * a + b) % 5}; });
    CHECK(check_flags(so).self_orthogonal);
    CHECK(check_flags(so).perfect);
    CHECK_FALSE(check_flags(builtin_map("z3")).self_orthogonal);
    CHECK_FALSE(check_flags(PermMap(2, {0, 0, 0, 0}, {0, 0, 0, 0})).bijective);
    CHECK_THROWS(PermMap(2, {0, 2, 0, 0}, {0, 0, 0, 0}));
}

TEST_CASE("V2 is V1 relabelled on the first outgoing leg") {
    const std::vector<int> s{0, 4, 2, 1, 3};
    PermMap v1 = builtin_map("V1");
    PermMap dressed = PermMap::from_function(5, [&](int a, int b) { return std::pair{s[v1.c(a, b)], v1.d(a, b)}; });
    CHECK(dressed == builtin_map("V2"));
}

TEST_CASE("Yang-Baxter") {
    CHECK(yang_baxter(builtin_map("I1")));
    CHECK_FALSE(yang_baxter(builtin_map("I2")));
    CHECK(yang_baxter(PermMap::swap(3)));
    CHECK_FALSE(yang_baxter(builtin_map("C1")));
}

TEST_CASE("transforms") {
    std::mt19937_64 rng(2);
    PermMap t = builtin_map("table1");
    PermMap s = space_reflect(t);
    for (int a = 0; a < 3; a++)
        for (int b = 0; b < 3; b++) {
            CHECK(s.c(a, b) == t.d(b, a));
            CHECK(s.d(a, b) == t.c(b, a));
        }
    CHECK(space_reflect(s) == t);
    CHECK(time_reflect(time_reflect(t)) == t);
    CHECK(s.to_gate() == d4_transform(t.to_gate(), D4Element::space_reflect()));
    CHECK(time_reflect(t).to_gate() == d4_transform(t.to_gate(), D4Element::time_reflect()));
    std::vector<int> id{0, 1, 2};
    CHECK(diag_sim(t, id, id) == t);
    for (int rep = 0; rep < 50; rep++) {
        auto a = random_perm(3, rng);
        auto b = random_perm(3, rng);
        PermMap m = diag_sim(t, a, b);
        CHECK(check_flags(m).dual_unitary);
        // Gate-level oracle: (A⊗B) U (B^{-1}⊗A^{-1}).
        Matrix pa = Matrix::Zero(3, 3);
        Matrix pb = Matrix::Zero(3, 3);
        for (int k = 0; k < 3; k++) pa(a[k], k) = pb(b[k], k) = 1;
        CHECK(m.to_gate() == dress(t.to_gate(), pa, pb, pb.adjoint(), pa.adjoint()));
        for (const auto &e : d4_group()) {
            CHECK(permute_legs(m, e.legs).to_gate() == d4_transform(m.to_gate(), e));
        }
    }
}

TEST_CASE("canonical form is an orbit invariant") {
    std::mt19937_64 rng(9);
    for (int rep = 0; rep < 30; rep++) {
        PermMap m = random_du(rep % 2 ? 3 : 5, rng);
        if (m.n() == 5 && rep > 6) continue;
        PermMap c = canonical_form(m);
        CHECK(canonical_form(c) == c);
        CHECK(canonical_form(space_reflect(m)) == c);
        CHECK(canonical_form(time_reflect(m)) == c);
        CHECK(canonical_form(diag_sim(m, random_perm(m.n(), rng), random_perm(m.n(), rng))) == c);
        CHECK(!(c.serialize() > m.serialize()));
    }
    CHECK_FALSE(canonical_form(builtin_map("E1")) == canonical_form(builtin_map("E2")));
}

TEST_CASE("N=2 enumeration") {
    auto rep = enumerate_du(2);
    CHECK(rep.total_maps == 12);
    CHECK(rep.class_count == 5);
    CHECK(rep.non_interacting_classes == 3);
    CHECK(rep.perfect_classes == 0);
    int64_t sum = 0;
    for (auto s : rep.class_sizes) sum += s;
    CHECK(sum == rep.total_maps);
    std::set<std::vector<uint8_t>> reps;
    for (const auto &m : rep.representatives) reps.insert(m.serialize());
    CHECK(reps.count(canonical_form(builtin_map("U1")).serialize()) == 1);
    CHECK(reps.count(canonical_form(builtin_map("U2")).serialize()) == 1);
}

TEST_CASE("N=3 enumeration: oracle agreement and orbit-stabilizer") {
    auto maps = all_du_maps(3, false);
    CHECK(maps.size() == 8784);
    // Combinatorial flag vs. numeric predicate on the 0/1 gate.
    for (size_t k = 0; k < maps.size(); k += 7) {
        auto f = check_flags(maps[k]);
        Gate g = maps[k].to_gate();
        CHECK(f.dual_unitary == is_dual_unitary(g));
        CHECK(f.perfect == is_perfect(g));
    }
    auto rep = enumerate_du(3);
    CHECK(rep.total_maps == 8784);
    int64_t sum = 0;
    for (auto s : rep.class_sizes) {
        sum += s;
        CHECK(144 % s == 0);
    }
    CHECK(sum == 8784);
    // Perfect maps are orthogonal Latin square pairs: both squares Latin.
    for (const auto &m : rep.representatives) {
        if (!check_flags(m).perfect) continue;
        for (int a = 0; a < 3; a++) {
            std::set<int> col_c, row_d;
            for (int b = 0; b < 3; b++) col_c.insert(m.c(b, a)), row_d.insert(m.d(a, b));
            CHECK(col_c.size() == 3);
            CHECK(row_d.size() == 3);
        }
    }
    auto serial = enumerate_du(3, {false, false});
    CHECK(serial.class_count == rep.class_count);
    CHECK(serial.class_sizes == rep.class_sizes);
}

TEST_CASE("enumeration refuses large N") {
    CHECK_THROWS_AS(enumerate_du(5), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_du(4), std::invalid_argument);
}
