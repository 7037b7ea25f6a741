#include "gerbecalc/alcove.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "gerbecalc/errors.hpp"

namespace gerbecalc {

namespace {

/// Row vector of the functional xi -> (alpha, xi) on coroot coordinates.
QVec pairing_row(const RootSystem& rs, const ZVec& root) {
    QVec row(rs.rank, Rat(0));
    for (int i = 0; i < rs.rank; ++i) {
        if (root[i] == 0) continue;
        for (int k = 0; k < rs.rank; ++k)
            row[k] += Rat(root[i]) * rs.half_norms[i] * rs.coroot_gram.at(i, k);
    }
    return row;
}

}  // namespace

AlcoveModel alcove_vertices(const RootSystem& rs) {
    AlcoveModel am;
    am.rs = rs;
    int d = rs.rank;
    am.vertices.push_back(QVec(d, Rat(0)));
    ZVec simple(d, Int(0));
    for (int j = 1; j <= d; ++j) {
        QMat a(d, d);
        QVec b(d, Rat(0));
        int r = 0;
        for (int i = 1; i <= d; ++i) {
            if (i == j) continue;
            simple.assign(d, Int(0));
            simple[i - 1] = 1;
            QVec row = pairing_row(rs, simple);
            for (int k = 0; k < d; ++k) a.at(r, k) = row[k];
            ++r;
        }
        QVec top = pairing_row(rs, rs.highest_root);
        for (int k = 0; k < d; ++k) a.at(r, k) = top[k];
        b[r] = 1;
        if (rank(a) != d) throw std::logic_error("degenerate vertex system");
        auto mu = solve(a, b);
        if (!mu) throw std::logic_error("inconsistent vertex system");
        am.vertices.push_back(*mu);

        simple.assign(d, Int(0));
        simple[j - 1] = 1;
        am.marks.push_back(Rat(1) / rs.pair_root(simple, am.vertices.back()));
    }
    return am;
}

bool in_alcove(const AlcoveModel& am, const QVec& xi) {
    if (xi.size() != static_cast<std::size_t>(am.rs.rank))
        throw DimensionError("point has wrong dimension");
    ZVec simple(am.rs.rank, Int(0));
    for (int i = 0; i < am.rs.rank; ++i) {
        simple.assign(am.rs.rank, Int(0));
        simple[i] = 1;
        if (am.rs.pair_root(simple, xi) < 0) return false;
    }
    return am.rs.pair_root(am.rs.highest_root, xi) <= 1;
}

FacePoint face_point(const AlcoveModel& am, QVec coords) {
    if (!in_alcove(am, coords)) throw NotInAlcove("point lies outside the alcove");
    return FacePoint{std::move(coords), true};
}

QVec barycentric_coords(const AlcoveModel& am, const QVec& xi) {
    int d = am.rs.rank;
    QVec t(d + 1, Rat(0));
    ZVec simple(d, Int(0));
    Rat sum(0);
    for (int j = 1; j <= d; ++j) {
        simple.assign(d, Int(0));
        simple[j - 1] = 1;
        t[j] = am.marks[j - 1] * am.rs.pair_root(simple, xi);
        sum += t[j];
    }
    t[0] = 1 - sum;
    return t;
}

QVec from_barycentric(const AlcoveModel& am, const QVec& coeffs) {
    int d = am.rs.rank;
    if (coeffs.size() != static_cast<std::size_t>(d) + 1)
        throw DimensionError("expected d+1 barycentric coefficients");
    QVec xi(d, Rat(0));
    for (int j = 1; j <= d; ++j)
        for (int k = 0; k < d; ++k) xi[k] += coeffs[j] * am.vertices[j][k];
    return xi;
}

Int k0(const RootSystem& rs) {
    QMat winv = inverse(rs.coroot_gram);
    Int result(1);
    for (int j = 0; j < rs.rank; ++j) {
        Rat v = rs.pair_root(rs.highest_root, winv.col(j));
        if (!is_integer(v) || v <= 0)
            throw std::logic_error("highest-root pairing with a fundamental weight "
                                   "is not a positive integer");
        result = lcm(result, v.get_num());
    }
    if (result != k0_weight_oracle(rs))
        throw std::logic_error("k0 cross-check failed: lcm formula disagrees with "
                               "the direct weight-lattice minimum");
    return result;
}

Int k0_weight_oracle(const RootSystem& rs) {
    auto am = alcove_vertices(rs);
    auto wl = weight_lattice(rs);
    for (Int m(1); m <= 10000; ++m) {
        bool all = true;
        for (int j = 1; j <= rs.rank && all; ++j) {
            QVec scaled(rs.rank);
            for (int k = 0; k < rs.rank; ++k) scaled[k] = Rat(m) * am.vertices[j][k];
            all = lattice_membership(wl, scaled);
        }
        if (all) return m;
    }
    throw std::logic_error("no scale below 10000 maps every vertex into the weight lattice");
}

std::vector<QVec> level_weights(const RootSystem& rs, const Int& m) {
    if (m < 0) throw std::logic_error("negative level");
    QMat winv = inverse(rs.coroot_gram);
    ZVec dual_marks(rs.rank);
    for (int j = 0; j < rs.rank; ++j) {
        Rat v = rs.pair_root(rs.highest_root, winv.col(j));
        dual_marks[j] = v.get_num();
    }
    std::vector<QVec> out;
    ZVec n(rs.rank, Int(0));
    auto emit = [&]() {
        QVec lam(rs.rank, Rat(0));
        for (int j = 0; j < rs.rank; ++j)
            for (int k = 0; k < rs.rank; ++k) lam[k] += Rat(n[j]) * winv.at(k, j);
        out.push_back(std::move(lam));
    };
    // Enumerate n >= 0 with sum n_j * dual_marks[j] <= m.
    std::function<void(int, Int)> rec = [&](int idx, Int budget) {
        if (idx == rs.rank) {
            emit();
            return;
        }
        for (Int v(0); v * dual_marks[idx] <= budget; ++v) {
            n[idx] = v;
            rec(idx + 1, budget - v * dual_marks[idx]);
        }
        n[idx] = 0;
    };
    rec(0, m);
    std::sort(out.begin(), out.end());
    return out;
}

bool star_membership(const AlcoveModel& am, int j, const FacePoint& xi) {
    if (j < 0 || j > am.rs.rank) throw DimensionError("vertex index out of range");
    if (!xi.certifies_alcove && !in_alcove(am, xi.coords))
        throw NotInAlcove("point lies outside the alcove");
    return barycentric_coords(am, xi.coords)[j] > 0;
}

QVec moment_value(const AlcoveModel& am, int j, const FacePoint& xi) {
    if (!star_membership(am, j, xi))
        throw NotInStar("point lies outside the open star of the vertex");
    QVec v(xi.coords);
    for (int k = 0; k < am.rs.rank; ++k) v[k] -= am.vertices[j][k];
    return v;
}

bool is_prequantizable(const AlcoveModel& am, const Int& m, const FacePoint& xi) {
    if (m < 1) throw std::logic_error("level must be positive");
    if (!xi.certifies_alcove && !in_alcove(am, xi.coords))
        throw NotInAlcove("point lies outside the alcove");
    QVec scaled(xi.coords.size());
    for (std::size_t k = 0; k < scaled.size(); ++k) scaled[k] = Rat(m) * xi.coords[k];
    return lattice_membership(weight_lattice(am.rs), scaled);
}

}  // namespace gerbecalc
