#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <string>

#include "gerbecalc/alcove.hpp"
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

AlcoveModel model(const std::string& name) {
    return alcove_vertices(build_root_system(LieType::parse(name)));
}

ZVec simple_root(int d, int i) {
    ZVec v(d, Int(0));
    v[i - 1] = 1;
    return v;
}

QVec qv(std::initializer_list<Rat> xs) { return QVec(xs); }

QVec scale(const Rat& c, const QVec& v) {
    QVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
    return r;
}

Rat frac(int p, int q) {
    Rat r(p, q);
    r.canonicalize();
    return r;
}

}  // namespace

TEST_CASE("alcove vertices satisfy their defining constraints exactly") {
    for (const auto& name : all_types_rank_le8()) {
        auto am = model(name);
        INFO(name);
        int d = am.rs.rank;
        CHECK(am.vertices.size() == static_cast<std::size_t>(d) + 1);
        CHECK(am.vertices[0] == QVec(d, Rat(0)));
        ZVec lowest(d);
        for (int i = 0; i < d; ++i) lowest[i] = -am.rs.highest_root[i];
        for (int j = 1; j <= d; ++j) {
            for (int i = 1; i <= d; ++i) {
                Rat p = am.rs.pair_root(simple_root(d, i), am.vertices[j]);
                if (i == j)
                    CHECK(p > 0);
                else
                    CHECK(p == 0);
            }
            CHECK(am.rs.pair_root(am.rs.highest_root, am.vertices[j]) == 1);
            CHECK(am.rs.pair_root(lowest, am.vertices[j]) == -1);
        }
        // The normalizers c_j coincide with the marks (highest-root coefficients).
        for (int j = 1; j <= d; ++j) CHECK(am.marks[j - 1] == Rat(am.rs.highest_root[j - 1]));
    }
}

TEST_CASE("frozen vertex coordinates") {
    auto a1 = model("A1");
    CHECK(a1.vertices[1] == qv({Rat(1, 2)}));

    auto b2 = model("B2");
    CHECK(b2.vertices[1] == qv({Rat(1), Rat(1, 2)}));
    CHECK(b2.vertices[2] == qv({Rat(1, 2), Rat(1, 2)}));

    auto g2 = model("G2");
    CHECK(g2.vertices[1] == qv({Rat(2, 3), Rat(1)}));
    CHECK(g2.vertices[2] == qv({Rat(1, 2), Rat(1)}));
}

TEST_CASE("k0 matches the oracle-verified values for every type of rank <= 8") {
    std::map<std::string, int> expected;
    for (int d = 1; d <= 8; ++d) expected["A" + std::to_string(d)] = 1;
    expected["B2"] = 1;  // B2 alcove vertices are weights (B2 = C2)
    for (int d = 3; d <= 8; ++d) expected["B" + std::to_string(d)] = 2;
    for (int d = 2; d <= 8; ++d) expected["C" + std::to_string(d)] = 1;
    expected["D3"] = 1;  // D3 = A3
    for (int d = 4; d <= 8; ++d) expected["D" + std::to_string(d)] = 2;
    expected["E6"] = 6;
    expected["E7"] = 12;
    expected["E8"] = 60;
    expected["F4"] = 6;
    expected["G2"] = 2;
    for (const auto& [name, want] : expected) {
        auto rs = build_root_system(LieType::parse(name));
        INFO(name);
        CHECK(k0(rs) == want);
        CHECK(k0_weight_oracle(rs) == want);
    }
}

TEST_CASE("highest-root pairings with fundamental weights are the dual marks") {
    for (const auto& name : all_types_rank_le8()) {
        auto rs = build_root_system(LieType::parse(name));
        INFO(name);
        QMat winv = inverse(rs.coroot_gram);
        for (int j = 0; j < rs.rank; ++j) {
            Rat v = rs.pair_root(rs.highest_root, winv.col(j));
            CHECK(v == Rat(rs.highest_root[j]) * rs.half_norms[j]);
            CHECK(is_integer(v));
        }
    }
}

TEST_CASE("level_weights enumerates the level-m weights") {
    for (const char* name : {"A1", "A2", "B2", "G2", "C3"}) {
        auto rs = build_root_system(LieType::parse(name));
        INFO(name);
        auto zero = level_weights(rs, Int(0));
        CHECK(zero.size() == 1);
        CHECK(zero[0] == QVec(rs.rank, Rat(0)));
        std::size_t prev = 1;
        for (int m = 1; m <= 5; ++m) {
            auto cur = level_weights(rs, Int(m));
            auto prev_set = level_weights(rs, Int(m - 1));
            CHECK(cur.size() >= prev);
            prev = cur.size();
            // Containment: every level-(m-1) weight appears at level m.
            for (const auto& w : prev_set)
                CHECK(std::binary_search(cur.begin(), cur.end(), w));
            // Each weight certifies its defining inequalities.
            auto wl = weight_lattice(rs);
            for (const auto& w : cur) {
                CHECK(lattice_membership(wl, w));
                for (int i = 1; i <= rs.rank; ++i)
                    CHECK(rs.pair_root(simple_root(rs.rank, i), w) >= 0);
                CHECK(rs.pair_root(rs.highest_root, w) <= m);
            }
        }
    }

    auto a1 = build_root_system(LieType::parse("A1"));
    auto lw1 = level_weights(a1, Int(1));
    CHECK(lw1 == std::vector<QVec>{qv({Rat(0)}), qv({Rat(1, 2)})});

    auto a2 = build_root_system(LieType::parse("A2"));
    auto lw2 = level_weights(a2, Int(1));
    CHECK(lw2.size() == 3);
    CHECK(std::binary_search(lw2.begin(), lw2.end(), qv({Rat(1, 3), Rat(2, 3)})));
    CHECK(std::binary_search(lw2.begin(), lw2.end(), qv({Rat(2, 3), Rat(1, 3)})));

    auto g2 = build_root_system(LieType::parse("G2"));
    CHECK(level_weights(g2, Int(1)).size() == 2);
    CHECK(level_weights(g2, Int(2)).size() == 4);
}

TEST_CASE("star membership at vertices and the barycenter") {
    for (const char* name : {"A1", "A2", "B2", "G2", "A3"}) {
        auto am = model(name);
        INFO(name);
        int d = am.rs.rank;
        for (int j = 0; j <= d; ++j) {
            auto vj = face_point(am, am.vertices[j]);
            for (int i = 0; i <= d; ++i) CHECK(star_membership(am, i, vj) == (i == j));
        }
        QVec bary(d + 1, Rat(1, d + 1));
        auto center = face_point(am, from_barycentric(am, bary));
        for (int j = 0; j <= d; ++j) CHECK(star_membership(am, j, center));
        auto t = barycentric_coords(am, center.coords);
        for (int j = 0; j <= d; ++j) CHECK(t[j] == Rat(1, d + 1));
    }
}

TEST_CASE("points outside the alcove are rejected") {
    auto am = model("A2");
    QVec outside = scale(Rat(2), am.vertices[1]);
    CHECK_THROWS_AS(face_point(am, outside), NotInAlcove);
    CHECK_THROWS_AS(star_membership(am, 0, FacePoint{outside, false}), NotInAlcove);
    QVec neg = scale(Rat(-1, 2), am.vertices[1]);
    CHECK_THROWS_AS(face_point(am, neg), NotInAlcove);
    auto ok = face_point(am, am.vertices[1]);
    CHECK_THROWS_AS(star_membership(am, 5, ok), DimensionError);
}

TEST_CASE("moment values on open stars") {
    for (const char* name : {"A2", "B2", "G2"}) {
        auto am = model(name);
        INFO(name);
        int d = am.rs.rank;
        for (int j = 0; j <= d; ++j) {
            auto vj = face_point(am, am.vertices[j]);
            CHECK(moment_value(am, j, vj) == QVec(d, Rat(0)));
        }
        // On the barycenter (inside every star), differences of moment values
        // recover vertex differences.
        QVec bary(d + 1, Rat(1, d + 1));
        auto center = face_point(am, from_barycentric(am, bary));
        for (int i = 0; i <= d; ++i)
            for (int j = 0; j <= d; ++j) {
                QVec diff = moment_value(am, i, center);
                QVec mj = moment_value(am, j, center);
                for (int k = 0; k < d; ++k) diff[k] -= mj[k];
                QVec want(d);
                for (int k = 0; k < d; ++k) want[k] = am.vertices[j][k] - am.vertices[i][k];
                CHECK(diff == want);
            }
    }

    auto a1 = model("A1");
    auto xi = face_point(a1, qv({Rat(1, 4)}));
    CHECK(moment_value(a1, 1, xi) == qv({Rat(-1, 4)}));

    auto a2 = model("A2");
    auto v1 = face_point(a2, a2.vertices[1]);
    CHECK_THROWS_AS(moment_value(a2, 2, v1), NotInStar);
}

TEST_CASE("prequantizability on the A1 grid and at G2 vertices") {
    auto a1 = model("A1");
    for (int m = 1; m <= 6; ++m) {
        for (int n = 1; n <= 12; ++n) {
            for (int k = 0; k <= n; ++k) {
                auto xi = face_point(a1, scale(frac(k, n), a1.vertices[1]));
                bool want = is_integer(Rat(m) * frac(k, n));
                CHECK(is_prequantizable(a1, Int(m), xi) == want);
            }
        }
        // Native grid: exactly m+1 prequantizable classes.
        int count = 0;
        for (int k = 0; k <= m; ++k) {
            auto xi = face_point(a1, scale(frac(k, m), a1.vertices[1]));
            if (is_prequantizable(a1, Int(m), xi)) ++count;
        }
        CHECK(count == m + 1);
    }

    auto g2 = model("G2");
    auto wl = weight_lattice(g2.rs);
    // Vertex 1 is itself a weight; vertex 2 only becomes one after doubling.
    CHECK(lattice_membership(wl, g2.vertices[1]));
    CHECK_FALSE(lattice_membership(wl, g2.vertices[2]));
    auto v1 = face_point(g2, g2.vertices[1]);
    auto v2 = face_point(g2, g2.vertices[2]);
    CHECK(is_prequantizable(g2, Int(1), v1));
    CHECK_FALSE(is_prequantizable(g2, Int(1), v2));
    CHECK(is_prequantizable(g2, Int(2), v1));
    CHECK(is_prequantizable(g2, Int(2), v2));

    auto zero = face_point(g2, QVec(2, Rat(0)));
    for (int m = 1; m <= 4; ++m) CHECK(is_prequantizable(g2, Int(m), zero));
}
