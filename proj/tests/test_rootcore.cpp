#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "gerbecalc/errors.hpp"
#include "gerbecalc/lattice.hpp"
#include "gerbecalc/root_system.hpp"

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

std::size_t expected_root_count(LieType t) {
    std::size_t d = t.rank;
    switch (t.series) {
        case Series::A: return d * (d + 1);
        case Series::B:
        case Series::C: return 2 * d * d;
        case Series::D: return 2 * d * (d - 1);
        case Series::E: return d == 6 ? 72 : (d == 7 ? 126 : 240);
        case Series::F: return 48;
        case Series::G: return 12;
    }
    return 0;
}

ZVec zv(std::initializer_list<int> xs) {
    ZVec v;
    for (int x : xs) v.emplace_back(x);
    return v;
}

QVec qv(std::initializer_list<Rat> xs) { return QVec(xs); }

QMat qmat(std::initializer_list<std::initializer_list<Rat>> rows) {
    QMat m(rows.size(), rows.begin()->size());
    std::size_t i = 0;
    for (const auto& r : rows) {
        std::size_t j = 0;
        for (const auto& x : r) m.at(i, j++) = x;
        ++i;
    }
    return m;
}

ZMat random_unimodular(std::mt19937& rng, std::size_t n) {
    ZMat u = ZMat::identity(n);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(n) - 1);
    std::uniform_int_distribution<int> coef(-2, 2);
    std::uniform_int_distribution<int> op(0, 2);
    for (int step = 0; step < 20; ++step) {
        std::size_t i = pick(rng), j = pick(rng);
        Int q(coef(rng));
        switch (op(rng)) {
            case 0:
                if (i != j)
                    for (std::size_t c = 0; c < n; ++c) u.at(i, c) += q * u.at(j, c);
                break;
            case 1:
                if (i != j)
                    for (std::size_t c = 0; c < n; ++c) std::swap(u.at(i, c), u.at(j, c));
                break;
            case 2:
                for (std::size_t c = 0; c < n; ++c) u.at(i, c) = -u.at(i, c);
                break;
        }
    }
    return u;
}

}  // namespace

TEST_CASE("LieType parses valid names and rejects invalid ones") {
    CHECK(LieType::parse("A1").rank == 1);
    CHECK(LieType::parse("A12").rank == 12);
    CHECK(LieType::parse("D3").series == Series::D);
    CHECK(LieType::parse("E7").str() == "E7");
    CHECK(LieType::parse("G2").str() == "G2");
    for (const char* bad : {"X9", "E5", "E9", "F3", "F5", "G3", "B1", "C1", "D2", "A0",
                            "", "A", "A-1", "a2", "A2x", "2A", "AA", "A 2"}) {
        CHECK_THROWS_AS(LieType::parse(bad), InvalidType);
    }
}

TEST_CASE("root counts match the classical values for every type of rank <= 8") {
    for (const auto& name : all_types_rank_le8()) {
        auto t = LieType::parse(name);
        auto rs = build_root_system(t);
        INFO(name);
        CHECK(rs.roots.size() == expected_root_count(t));
    }
}

TEST_CASE("root sets are symmetric, reflection-closed, with integral Cartan pairings") {
    for (const auto& name : all_types_rank_le8()) {
        auto rs = build_root_system(LieType::parse(name));
        INFO(name);
        std::set<ZVec> rootset(rs.roots.begin(), rs.roots.end());
        for (const auto& r : rs.roots) {
            ZVec neg(r.size());
            for (std::size_t i = 0; i < r.size(); ++i) neg[i] = -r[i];
            CHECK(rootset.count(neg) == 1);
            for (int j = 0; j < rs.rank; ++j) {
                Int p(0);
                for (int i = 0; i < rs.rank; ++i) p += r[i] * rs.cartan.at(i, j);
                ZVec refl = r;
                refl[j] -= p;
                CHECK(rootset.count(refl) == 1);
            }
        }
        for (const auto& a : rs.roots) {
            QVec amb_a = rs.ambient(a);
            for (const auto& b : rs.roots) {
                Rat p = 2 * rs.pair(amb_a, rs.ambient(b)) / rs.root_normsq(b);
                CHECK(is_integer(p));
            }
        }
    }
}

TEST_CASE("frozen small root systems") {
    auto a1 = build_root_system(LieType::parse("A1"));
    CHECK(a1.roots == std::vector<ZVec>{zv({-1}), zv({1})});
    CHECK(a1.root_normsq(zv({1})) == 2);

    auto a2 = build_root_system(LieType::parse("A2"));
    std::set<ZVec> a2set(a2.roots.begin(), a2.roots.end());
    std::set<ZVec> a2want = {zv({1, 0}), zv({0, 1}), zv({1, 1}),
                             zv({-1, 0}), zv({0, -1}), zv({-1, -1})};
    CHECK(a2set == a2want);
    CHECK(a2.highest_root == zv({1, 1}));

    auto b2 = build_root_system(LieType::parse("B2"));
    std::set<ZVec> b2set(b2.roots.begin(), b2.roots.end());
    std::set<ZVec> b2want = {zv({1, 0}), zv({0, 1}), zv({1, 1}), zv({1, 2}),
                             zv({-1, 0}), zv({0, -1}), zv({-1, -1}), zv({-1, -2})};
    CHECK(b2set == b2want);
    CHECK(b2.highest_root == zv({1, 2}));

    auto g2 = build_root_system(LieType::parse("G2"));
    std::set<ZVec> g2set(g2.roots.begin(), g2.roots.end());
    std::set<ZVec> g2want;
    for (auto r : {zv({1, 0}), zv({0, 1}), zv({1, 1}), zv({2, 1}), zv({3, 1}), zv({3, 2})}) {
        g2want.insert(r);
        ZVec neg(2);
        neg[0] = -r[0];
        neg[1] = -r[1];
        g2want.insert(neg);
    }
    CHECK(g2set == g2want);
    CHECK(g2.highest_root == zv({3, 2}));

    int g2_long = 0, g2_short = 0;
    for (const auto& r : g2.roots) {
        Rat n = g2.root_normsq(r);
        if (n == 2) ++g2_long;
        if (n == Rat(2, 3)) ++g2_short;
    }
    CHECK(g2_long == 6);
    CHECK(g2_short == 6);
}

TEST_CASE("highest root dominates all roots and is long") {
    std::map<std::string, ZVec> frozen_marks = {
        {"A5", zv({1, 1, 1, 1, 1})},
        {"B5", zv({1, 2, 2, 2, 2})},
        {"C5", zv({2, 2, 2, 2, 1})},
        {"D5", zv({1, 2, 2, 1, 1})},
        {"E6", zv({1, 2, 2, 3, 2, 1})},
        {"E7", zv({2, 2, 3, 4, 3, 2, 1})},
        {"E8", zv({2, 3, 4, 6, 5, 4, 3, 2})},
        {"F4", zv({2, 3, 4, 2})},
        {"G2", zv({3, 2})},
    };
    for (const auto& name : all_types_rank_le8()) {
        auto rs = build_root_system(LieType::parse(name));
        INFO(name);
        CHECK(rs.root_normsq(rs.highest_root) == 2);
        for (const auto& r : rs.roots) {
            for (int i = 0; i < rs.rank; ++i) CHECK(rs.highest_root[i] - r[i] >= 0);
        }
        // Coxeter number: 1 + sum of the marks = |roots| / rank.
        Int mark_sum(0);
        for (const auto& m : rs.highest_root) mark_sum += m;
        CHECK(mark_sum + 1 == Int(rs.roots.size()) / rs.rank);
        auto it = frozen_marks.find(name);
        if (it != frozen_marks.end()) CHECK(rs.highest_root == it->second);
    }
}

TEST_CASE("basic_gram frozen values and positive definiteness") {
    CHECK(basic_gram(LieType::parse("A1")) == qmat({{2}}));
    CHECK(basic_gram(LieType::parse("A2")) == qmat({{2, -1}, {-1, 2}}));
    CHECK(basic_gram(LieType::parse("B2")) == qmat({{2, -2}, {-2, 4}}));
    CHECK(basic_gram(LieType::parse("C2")) == qmat({{4, -2}, {-2, 2}}));
    CHECK(basic_gram(LieType::parse("G2")) == qmat({{6, -3}, {-3, 2}}));

    auto g2 = basic_gram(LieType::parse("G2"));
    CHECK(det(g2) > 0);
    CHECK(g2.at(0, 0) > 2);  // short coroot has norm-square 6

    for (const auto& name : all_types_rank_le8()) {
        auto rs = build_root_system(LieType::parse(name));
        INFO(name);
        CHECK(rs.coroot_gram == basic_gram(rs.type));
        for (int k = 1; k <= rs.rank; ++k) {
            QMat minor(k, k);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) minor.at(i, j) = rs.coroot_gram.at(i, j);
            CHECK(det(minor) > 0);
        }
    }
}

TEST_CASE("coroots have integer coordinates over the simple coroots") {
    for (const auto& name : all_types_rank_le8()) {
        auto rs = build_root_system(LieType::parse(name));
        INFO(name);
        for (const auto& r : rs.roots) {
            QVec cr = rs.coroot_ambient(r);
            for (const auto& c : cr) CHECK(is_integer(c));
            // The coroot pairs to 2 with its own root.
            CHECK(rs.pair_root(r, cr) == 2);
        }
    }
}

TEST_CASE("weight/root lattice index equals the Cartan determinant") {
    for (const auto& name : all_types_rank_le8()) {
        auto rs = build_root_system(LieType::parse(name));
        INFO(name);
        for (int i = 0; i < rs.rank; ++i) {
            CHECK(rs.cartan.at(i, i) == 2);
            for (int j = 0; j < rs.rank; ++j)
                if (i != j) CHECK(rs.cartan.at(i, j) <= 0);
        }
        auto inv = lattice_quotient(root_lattice(rs), weight_lattice(rs));
        CHECK(inv.free_rank == 0);
        Rat index(1);
        for (const auto& t : inv.torsion) index *= Rat(t);
        CHECK(index == det(to_qmat(rs.cartan)));
    }
}

TEST_CASE("lattice_membership frozen examples") {
    // A1 weight lattice is spanned by w = coroot/2.
    auto a1 = build_root_system(LieType::parse("A1"));
    auto w = weight_lattice(a1);
    CHECK(w.basis == qmat({{Rat(1, 2)}}));
    CHECK(lattice_membership(w, qv({Rat(1)})));  // the coroot
    CHECK(lattice_membership(w, qv({Rat(0)})));
    auto rt = root_lattice(a1);
    CHECK(rt.basis == qmat({{Rat(1)}}));
    CHECK_FALSE(lattice_membership(rt, qv({Rat(1, 2)})));
    CHECK_THROWS_AS(lattice_membership(rt, qv({Rat(1), Rat(2)})), DimensionError);
}

TEST_CASE("lattice_membership agrees with brute-force coefficient search") {
    std::mt19937 rng(23);
    std::uniform_int_distribution<int> num(-12, 12);
    std::uniform_int_distribution<int> den(1, 4);
    for (const char* name : {"A1", "A2", "B2", "A3", "C3", "G2", "D4", "F4", "B4"}) {
        auto rs = build_root_system(LieType::parse(name));
        for (const auto& lat : {coroot_lattice(rs), weight_lattice(rs), root_lattice(rs)}) {
            for (int it = 0; it < 12; ++it) {
                QVec c(rs.rank);
                for (auto& x : c) {
                    x = Rat(num(rng), den(rng));
                    x.canonicalize();
                    if (x < -3) x = -3;
                    if (x > 3) x = 3;
                }
                QVec v = mat_vec(lat.basis, c);
                // Brute force: search integer coefficients in [-3, 3]^d.
                bool brute = false;
                std::vector<int> k(rs.rank, -3);
                while (true) {
                    QVec cand(rs.rank, Rat(0));
                    for (int i = 0; i < rs.rank; ++i)
                        for (int j = 0; j < rs.rank; ++j)
                            cand[j] += Rat(k[i]) * lat.basis.at(j, i);
                    if (cand == v) {
                        brute = true;
                        break;
                    }
                    int p = 0;
                    while (p < rs.rank && k[p] == 3) k[p++] = -3;
                    if (p == rs.rank) break;
                    ++k[p];
                }
                INFO(name);
                CHECK(lattice_membership(lat, v) == brute);
            }
        }
    }
}

TEST_CASE("lattice_quotient frozen invariants") {
    auto check_weight_over_root = [](const char* name, std::vector<Int> torsion) {
        auto rs = build_root_system(LieType::parse(name));
        auto inv = lattice_quotient(root_lattice(rs), weight_lattice(rs));
        INFO(name);
        CHECK(inv.free_rank == 0);
        CHECK(inv.torsion == torsion);
    };
    check_weight_over_root("A1", {Int(2)});
    check_weight_over_root("A2", {Int(3)});
    check_weight_over_root("A3", {Int(4)});
    check_weight_over_root("A4", {Int(5)});
    check_weight_over_root("A5", {Int(6)});
    check_weight_over_root("B2", {Int(2)});
    check_weight_over_root("B3", {Int(2)});
    check_weight_over_root("C3", {Int(2)});
    check_weight_over_root("D3", {Int(4)});
    check_weight_over_root("D4", {Int(2), Int(2)});
    check_weight_over_root("D5", {Int(4)});
    check_weight_over_root("D6", {Int(2), Int(2)});
    check_weight_over_root("E6", {Int(3)});
    check_weight_over_root("E7", {Int(2)});
    check_weight_over_root("E8", {});
    check_weight_over_root("F4", {});
    check_weight_over_root("G2", {});

    auto a2 = build_root_system(LieType::parse("A2"));
    auto self = lattice_quotient(coroot_lattice(a2), coroot_lattice(a2));
    CHECK(self == AbelianGroupInvariants{0, {}});

    // Index-2 sublattice of rank 1 inside the rank-2 coroot lattice.
    Lattice sub = make_lattice(qmat({{Rat(2)}, {Rat(0)}}));
    auto inv = lattice_quotient(sub, coroot_lattice(a2));
    CHECK(inv.free_rank == 1);
    CHECK(inv.torsion == std::vector<Int>{Int(2)});

    CHECK_THROWS_AS(lattice_quotient(weight_lattice(a2), root_lattice(a2)), NotSublattice);
}

TEST_CASE("lattice_quotient is invariant under unimodular basis changes") {
    std::mt19937 rng(29);
    for (const char* name : {"A3", "B3", "D4", "G2"}) {
        auto rs = build_root_system(LieType::parse(name));
        auto sub = root_lattice(rs);
        auto sup = weight_lattice(rs);
        auto base = lattice_quotient(sub, sup);
        for (int it = 0; it < 10; ++it) {
            auto u1 = to_qmat(random_unimodular(rng, rs.rank));
            auto u2 = to_qmat(random_unimodular(rng, rs.rank));
            Lattice sub2 = make_lattice(mat_mul(sub.basis, u1));
            Lattice sup2 = make_lattice(mat_mul(sup.basis, u2));
            CHECK(lattice_quotient(sub2, sup2) == base);
        }
    }
}
