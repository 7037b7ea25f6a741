#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "gerbecalc/centralizer.hpp"
#include "gerbecalc/errors.hpp"

using namespace gerbecalc;

namespace {

std::vector<std::string> all_types_rank_le8() {
    std::vector<std::string> v;
    for (int d = 1; d <= 8; ++d) v.push_back("A" + std::to_string(d));
    for (int d = 2; d <= 8; ++d) v.push_back("B" + std::to_string(d));
    for (int d = 2; d <= 8; ++d) v.push_back("C" + std::to_string(d));
    for (int d = 3; d <= 8; ++d) v.push_back("D" + std::to_string(d));
    v.insert(v.end(), {"E6", "E7", "E8", "F4", "G2"});
    return v;
}

std::vector<std::string> all_types_rank_le4() {
    std::vector<std::string> v;
    for (int d = 1; d <= 4; ++d) v.push_back("A" + std::to_string(d));
    for (int d = 2; d <= 4; ++d) v.push_back("B" + std::to_string(d));
    for (int d = 2; d <= 4; ++d) v.push_back("C" + std::to_string(d));
    v.insert(v.end(), {"D3", "D4", "F4", "G2"});
    return v;
}

AlcoveModel model(const std::string& name) {
    return alcove_vertices(build_root_system(LieType::parse(name)));
}

ZVec simple_root(int d, int i) {
    ZVec v(d, Int(0));
    v[i - 1] = 1;
    return v;
}

ZVec lowest_root(const RootSystem& rs) {
    ZVec v(rs.rank);
    for (int i = 0; i < rs.rank; ++i) v[i] = -rs.highest_root[i];
    return v;
}

QVec scale(const Rat& c, const QVec& v) {
    QVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
    return r;
}

QVec diff(const QVec& a, const QVec& b) {
    QVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Rat frac(int p, int q) {
    Rat r(p, q);
    r.canonicalize();
    return r;
}

std::set<ZVec> as_set(const std::vector<ZVec>& v) { return {v.begin(), v.end()}; }

bool trivial(const AbelianGroupInvariants& g) {
    return g.free_rank == 0 && g.torsion.empty();
}

/// Smallest m > 0 with m * mu_j in the weight lattice for every vertex.
Int k0_of(const AlcoveModel& am) {
    auto wl = weight_lattice(am.rs);
    for (Int m = 1;; ++m) {
        bool ok = true;
        for (int j = 1; j <= am.rs.rank && ok; ++j)
            ok = lattice_membership(wl, scale(Rat(m), am.vertices[j]));
        if (ok) return m;
    }
}

}  // namespace

TEST_CASE("make_face sorts, deduplicates, and validates the index range") {
    auto am = model("B3");
    auto f = make_face(am, {3, 0, 3, 1});
    CHECK(f.indices == std::vector<int>{0, 1, 3});
    CHECK_THROWS_AS(make_face(am, {}), DimensionError);
    CHECK_THROWS_AS(make_face(am, {4}), DimensionError);
    CHECK_THROWS_AS(make_face(am, {-1}), DimensionError);
}

TEST_CASE("the face at the origin has the full root system and trivial pi1") {
    for (const auto& name : all_types_rank_le8()) {
        auto am = model(name);
        INFO(name);
        auto cd = centralizer_roots(am, make_face(am, {0}));
        CHECK(cd.roots_sub == am.rs.roots);
        CHECK(trivial(cd.pi1));
        std::set<ZVec> expect;
        for (int i = 1; i <= am.rs.rank; ++i) expect.insert(simple_root(am.rs.rank, i));
        CHECK(as_set(cd.simple_system) == expect);
        CHECK(fundamental_group(cd) == cd.pi1);
    }
}

TEST_CASE("vertex centralizers are the extended-diagram node deletions") {
    for (const auto& name : all_types_rank_le8()) {
        auto am = model(name);
        int d = am.rs.rank;
        auto low = lowest_root(am.rs);
        for (int j = 1; j <= d; ++j) {
            INFO(name << " vertex " << j);
            auto cd = centralizer_roots(am, make_face(am, {j}));

            // Every centralizer root pairs integrally with the vertex through
            // its coroot, and the lowest root pairs to exactly -1.
            for (const auto& r : cd.roots_sub)
                CHECK(is_integer(am.rs.pair(am.vertices[j], am.rs.coroot_ambient(r))));
            CHECK(std::binary_search(cd.roots_sub.begin(), cd.roots_sub.end(), low));
            CHECK(am.rs.pair(am.vertices[j], am.rs.coroot_ambient(low)) == Rat(-1));

            std::set<ZVec> expect;
            for (int i = 1; i <= d; ++i)
                if (i != j) expect.insert(simple_root(d, i));
            expect.insert(low);
            CHECK(as_set(cd.simple_system) == expect);

            // Node deletion keeps full rank, so pi1 is finite.
            CHECK(cd.pi1.free_rank == 0);
            CHECK(fundamental_group(cd) == cd.pi1);
            if (am.rs.type.series == Series::A) CHECK(trivial(cd.pi1));
        }
    }
}

TEST_CASE("centralizer roots form a closed subsystem with a genuine base") {
    for (const auto& name : all_types_rank_le4()) {
        auto am = model(name);
        int d = am.rs.rank;
        std::vector<std::vector<int>> faces;
        for (int j = 0; j <= d; ++j) faces.push_back({j});
        for (int i = 0; i <= d; ++i)
            for (int j = i + 1; j <= d; ++j) faces.push_back({i, j});
        std::vector<int> full(d + 1);
        for (int j = 0; j <= d; ++j) full[j] = j;
        faces.push_back(full);
        for (const auto& idx : faces) {
            auto cd = centralizer_roots(am, make_face(am, idx));
            INFO(name << " face size " << idx.size());
            auto sub = as_set(cd.roots_sub);
            for (const auto& a : cd.roots_sub) {
                ZVec neg(d);
                for (int k = 0; k < d; ++k) neg[k] = -a[k];
                CHECK(sub.count(neg) == 1);
                for (const auto& b : cd.roots_sub) {
                    ZVec sum(d);
                    for (int k = 0; k < d; ++k) sum[k] = a[k] + b[k];
                    if (am.rs.is_root(sum)) CHECK(sub.count(sum) == 1);
                }
            }

            // The simple system is a base: it has one root per lattice rank,
            // and every subsystem root is a one-signed integer combination.
            CHECK(cd.simple_system.size() == cd.coroot_lattice_sub.basis.cols);
            if (!cd.simple_system.empty()) {
                QMat base(d, cd.simple_system.size());
                for (std::size_t c = 0; c < cd.simple_system.size(); ++c)
                    for (int k = 0; k < d; ++k) base.at(k, c) = Rat(cd.simple_system[c][k]);
                for (const auto& r : cd.roots_sub) {
                    QVec rhs(d);
                    for (int k = 0; k < d; ++k) rhs[k] = Rat(r[k]);
                    auto x = solve(base, rhs);
                    REQUIRE(x.has_value());
                    int sign = 0;
                    bool ok = true;
                    for (const auto& c : *x) {
                        if (!is_integer(c)) ok = false;
                        if (c > 0 && sign < 0) ok = false;
                        if (c < 0 && sign > 0) ok = false;
                        if (c > 0) sign = 1;
                        if (c < 0) sign = -1;
                    }
                    CHECK(ok);
                }
            }
            CHECK(cd.pi1.free_rank ==
                  static_cast<long>(d - cd.coroot_lattice_sub.basis.cols));
        }
    }
}

TEST_CASE("the full face leaves only the torus: no roots, free pi1") {
    for (const auto& name : {"A3", "B3", "C4", "D4", "F4", "G2"}) {
        auto am = model(name);
        int d = am.rs.rank;
        std::vector<int> full(d + 1);
        for (int j = 0; j <= d; ++j) full[j] = j;
        auto cd = centralizer_roots(am, make_face(am, full));
        INFO(name);
        CHECK(cd.roots_sub.empty());
        CHECK(cd.simple_system.empty());
        CHECK(cd.pi1.free_rank == d);
        CHECK(cd.pi1.torsion.empty());

        // Any weight is admissible on a torus face, and every class on it
        // is trivial because there are no torsion generators.
        auto cls = extension_class(am, make_face(am, full), am.vertices[1]);
        CHECK(cls.generators.empty());
        CHECK(cls.values_all_zero());
        CHECK(extension_is_trivial(cd, cls));
    }
}

TEST_CASE("B2 vertex 2: the centralizer is all of B2 and pi1 is trivial") {
    auto am = model("B2");
    auto cd = centralizer_roots(am, make_face(am, {2}));
    std::set<ZVec> expect = {{1, 0}, {-1, 0}, {1, 2}, {-1, -2}};
    CHECK(as_set(cd.roots_sub) == expect);
    CHECK(trivial(cd.pi1));
    CHECK(as_set(cd.simple_system) == std::set<ZVec>{{1, 0}, {-1, -2}});
    auto cls = extension_class(am, make_face(am, {2}), am.vertices[2]);
    CHECK(cls.generators.empty());
    CHECK(cls.values_all_zero());
    CHECK(extension_is_trivial(cd, cls));
}

TEST_CASE("G2 vertex 2: pi1 is Z/2 and the vertex weight has value 1/2") {
    auto am = model("G2");
    auto face = make_face(am, {2});
    auto cd = centralizer_roots(am, face);
    std::set<ZVec> expect = {{1, 0}, {-1, 0}, {3, 2}, {-3, -2}};
    CHECK(as_set(cd.roots_sub) == expect);
    CHECK(cd.pi1.free_rank == 0);
    CHECK(cd.pi1.torsion == std::vector<Int>{2});
    CHECK(as_set(cd.simple_system) == std::set<ZVec>{{1, 0}, {-3, -2}});

    CHECK(am.vertices[2] == QVec{frac(1, 2), Rat(1)});
    auto cls = extension_class(am, face, am.vertices[2]);
    REQUIRE(cls.orders == std::vector<Int>{2});
    CHECK(cls.values == std::vector<Rat>{frac(1, 2)});
    CHECK_FALSE(cls.values_all_zero());
    CHECK_FALSE(extension_is_trivial(cd, cls));

    // Doubling the weight kills the class.
    auto dbl = extension_class(am, face, scale(Rat(2), am.vertices[2]));
    CHECK(dbl.values_all_zero());
    CHECK(extension_is_trivial(cd, dbl));

    // Vertex 1 of G2 is already a weight, so its class is trivial at level 1.
    auto cd1 = centralizer_roots(am, make_face(am, {1}));
    auto cls1 = extension_class(am, make_face(am, {1}), am.vertices[1]);
    CHECK(cls1.values_all_zero());
    CHECK(extension_is_trivial(cd1, cls1));
    CHECK(lattice_membership(weight_lattice(am.rs), am.vertices[1]));
    CHECK_FALSE(lattice_membership(weight_lattice(am.rs), am.vertices[2]));
}

TEST_CASE("weights must pair integrally with the centralizer coroots") {
    auto am = model("G2");
    CHECK_THROWS_AS(extension_class(am, make_face(am, {2}), QVec{frac(1, 5), Rat(0)}),
                    NotAdmissibleWeight);
    auto am2 = model("A2");
    CHECK_THROWS_AS(extension_class(am2, make_face(am2, {0}), QVec{frac(1, 3), Rat(0)}),
                    NotAdmissibleWeight);
}

TEST_CASE("G2 edge {1,2}: the centralizer keeps only the highest root pair") {
    auto am = model("G2");
    auto cd = centralizer_roots(am, make_face(am, {1, 2}));
    CHECK(as_set(cd.roots_sub) == std::set<ZVec>{{3, 2}, {-3, -2}});
    CHECK(cd.pi1.free_rank == 1);
    CHECK(cd.pi1.torsion.empty());

    auto cls = rho_edge(am, 1, 2);
    CHECK(cls.weight == QVec{frac(-1, 6), Rat(0)});
    CHECK(cls.generators.empty());
    CHECK(cls.values_all_zero());
    CHECK(extension_is_trivial(cd, cls));
}

TEST_CASE("edge weights are orthogonal to the edge centralizer and trivial") {
    for (const auto& name : all_types_rank_le4()) {
        auto am = model(name);
        int d = am.rs.rank;
        for (int i = 0; i <= d; ++i)
            for (int j = 0; j <= d; ++j) {
                if (i == j) continue;
                INFO(name << " edge " << i << "," << j);
                auto cls = rho_edge(am, i, j);
                auto cd = centralizer_roots(am, cls.face);
                for (const auto& r : cd.roots_sub)
                    CHECK(am.rs.pair_root(r, cls.weight) == Rat(0));
                CHECK(extension_is_trivial(cd, cls));
            }
        CHECK_THROWS_AS(rho_edge(am, 1, 1), DimensionError);
    }
}

TEST_CASE("edge classes telescope around triangles") {
    for (const auto& name : all_types_rank_le4()) {
        auto am = model(name);
        int d = am.rs.rank;
        if (d < 2) continue;
        for (int i = 0; i <= d; ++i)
            for (int j = i + 1; j <= d; ++j)
                for (int k = j + 1; k <= d; ++k) {
                    auto face = make_face(am, {i, j, k});
                    auto ij = extension_class(am, face, diff(am.vertices[j], am.vertices[i]));
                    auto jk = extension_class(am, face, diff(am.vertices[k], am.vertices[j]));
                    auto ki = extension_class(am, face, diff(am.vertices[i], am.vertices[k]));
                    INFO(name << " triangle " << i << j << k);
                    REQUIRE(ij.values.size() == jk.values.size());
                    REQUIRE(jk.values.size() == ki.values.size());
                    for (std::size_t t = 0; t < ij.values.size(); ++t)
                        CHECK(mod1(ij.values[t] + jk.values[t] + ki.values[t]) == Rat(0));
                }
    }
}

TEST_CASE("vertex classes scale linearly and die exactly at multiples of k0") {
    for (const auto& name : all_types_rank_le8()) {
        auto am = model(name);
        int d = am.rs.rank;
        Int k = k0_of(am);
        INFO(name << " k0 = " << k.get_str());

        std::vector<ExtensionClass> base;
        for (int j = 1; j <= d; ++j)
            base.push_back(extension_class(am, make_face(am, {j}), am.vertices[j]));

        // Spot-check the scaling law against the direct computation.
        for (const Int& m : std::vector<Int>{Int(2), k, Int(k + 1)}) {
            for (int j = 1; j <= d; ++j) {
                auto cls = extension_class(am, make_face(am, {j}),
                                           scale(Rat(m), am.vertices[j]));
                REQUIRE(cls.values.size() == base[j - 1].values.size());
                for (std::size_t t = 0; t < cls.values.size(); ++t)
                    CHECK(cls.values[t] == mod1(Rat(m) * base[j - 1].values[t]));
            }
        }

        // Using linearity, sweep every level up to 2 k0.
        for (Int m = 1; m <= 2 * k; ++m) {
            bool all = true;
            for (const auto& b : base)
                for (const auto& v : b.values)
                    if (mod1(Rat(m) * v) != 0) all = false;
            CHECK(all == (m % k == 0));
        }
    }
}
