#include "gerbecalc/centralizer.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>

#include "gerbecalc/errors.hpp"

namespace gerbecalc {

FaceIndexSet make_face(const AlcoveModel& am, std::vector<int> indices) {
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    if (indices.empty()) throw DimensionError("face index set must be nonempty");
    for (int j : indices)
        if (j < 0 || j > am.rs.rank) throw DimensionError("face index out of range");
    return FaceIndexSet{std::move(indices)};
}

namespace {

/// Common integer pairing of a root with every vertex of the face, if any.
std::optional<Int> face_pairing(const AlcoveModel& am, const FaceIndexSet& I,
                                const ZVec& root) {
    std::optional<Rat> common;
    for (int j : I.indices) {
        Rat p = am.rs.pair_root(root, am.vertices[j]);
        if (common && *common != p) return std::nullopt;
        common = p;
    }
    if (!is_integer(*common)) return std::nullopt;
    return common->get_num();
}

}  // namespace

CentralizerData centralizer_roots(const AlcoveModel& am, const FaceIndexSet& I) {
    CentralizerData cd;
    cd.rs = am.rs;
    cd.face = I;
    int d = am.rs.rank;

    std::vector<Int> levels;  // aligned with roots_sub
    for (const auto& r : am.rs.roots) {
        auto n = face_pairing(am, I, r);
        if (!n) continue;
        cd.roots_sub.push_back(r);
        levels.push_back(*n);
    }

    // Positive system for the subsystem: a root is positive when its face
    // pairing is -1, or when it is 0 and the root is positive globally.
    // This choice makes the simple system at a vertex j the node deletion
    // {alpha_i : i != j} together with the lowest root alpha_0.
    std::set<ZVec> positives;
    for (std::size_t i = 0; i < cd.roots_sub.size(); ++i) {
        const auto& r = cd.roots_sub[i];
        if (levels[i] == -1 || (levels[i] == 0 && am.rs.is_positive(r)))
            positives.insert(r);
    }
    for (const auto& r : positives) {
        bool decomposable = false;
        for (const auto& b : positives) {
            if (b == r) continue;
            ZVec diff(d);
            for (int k = 0; k < d; ++k) diff[k] = r[k] - b[k];
            if (positives.count(diff)) {
                decomposable = true;
                break;
            }
        }
        if (!decomposable) cd.simple_system.push_back(r);
    }

    ZMat coroots(d, cd.roots_sub.size());
    for (std::size_t c = 0; c < cd.roots_sub.size(); ++c) {
        QVec cr = am.rs.coroot_ambient(cd.roots_sub[c]);
        for (int k = 0; k < d; ++k) {
            if (!is_integer(cr[k])) throw std::logic_error("non-integral coroot");
            coroots.at(k, c) = cr[k].get_num();
        }
    }
    cd.coroot_lattice_sub = lattice_from_integer_columns(d, coroots);
    cd.pi1 = lattice_quotient(cd.coroot_lattice_sub, coroot_lattice(am.rs));
    return cd;
}

AbelianGroupInvariants fundamental_group(const CentralizerData& cd) {
    return lattice_quotient(cd.coroot_lattice_sub, coroot_lattice(cd.rs));
}

ExtensionClass extension_class(const AlcoveModel& am, const FaceIndexSet& I, const QVec& mu) {
    if (mu.size() != static_cast<std::size_t>(am.rs.rank))
        throw DimensionError("weight has wrong dimension");
    CentralizerData cd = centralizer_roots(am, I);
    for (const auto& r : cd.roots_sub) {
        Rat p = am.rs.pair(mu, am.rs.coroot_ambient(r));
        if (!is_integer(p))
            throw NotAdmissibleWeight("weight does not pair integrally with the "
                                      "centralizer coroots");
    }

    int d = am.rs.rank;
    ZMat x(d, cd.coroot_lattice_sub.basis.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t j = 0; j < x.cols; ++j)
            x.at(i, j) = cd.coroot_lattice_sub.basis.at(i, j).get_num();
    auto s = smith_normal_form(x);
    QMat uinv = inverse(to_qmat(s.u));

    ExtensionClass cls;
    cls.face = I;
    cls.weight = mu;
    for (std::size_t i = 0; i < s.rank; ++i) {
        if (s.diag[i] < 2) continue;
        ZVec gen(d);
        QVec genq(d);
        for (int k = 0; k < d; ++k) {
            if (!is_integer(uinv.at(k, i))) throw std::logic_error("non-integral generator");
            gen[k] = uinv.at(k, i).get_num();
            genq[k] = uinv.at(k, i);
        }
        Rat v = mod1(am.rs.pair(mu, genq));
        if (!is_integer(v * Rat(s.diag[i])))
            throw std::logic_error("rotation number is not torsion of the right order");
        cls.generators.push_back(std::move(gen));
        cls.orders.push_back(s.diag[i]);
        cls.values.push_back(v);
    }
    return cls;
}

ExtensionClass rho_edge(const AlcoveModel& am, int i, int j) {
    if (i == j) throw DimensionError("edge requires two distinct vertices");
    FaceIndexSet I = make_face(am, {i, j});
    int d = am.rs.rank;
    QVec mu(d);
    for (int k = 0; k < d; ++k) mu[k] = am.vertices[j][k] - am.vertices[i][k];
    CentralizerData cd = centralizer_roots(am, I);
    for (const auto& r : cd.roots_sub)
        if (am.rs.pair_root(r, mu) != 0)
            throw std::logic_error("vertex difference is not fixed by the edge "
                                   "centralizer");
    return extension_class(am, I, mu);
}

bool extension_is_trivial(const CentralizerData& cd, const ExtensionClass& cls) {
    int d = cd.rs.rank;
    const QVec& mu = cls.weight;

    QMat rows(cd.roots_sub.size(), d);
    for (std::size_t r = 0; r < cd.roots_sub.size(); ++r)
        for (int k = 0; k < d; ++k) {
            Rat e(0);
            for (int i = 0; i < d; ++i)
                e += Rat(cd.roots_sub[r][i]) * cd.rs.half_norms[i] * cd.rs.coroot_gram.at(i, k);
            rows.at(r, k) = e;
        }
    QMat p = nullspace(rows);  // zeta = p * t ranges over the root-orthogonal space
    QMat m = mat_mul(cd.rs.coroot_gram, p);
    QVec g = mat_vec(cd.rs.coroot_gram, mu);

    // Need an integer z and rational t with m t = g - z; equivalently
    // k z = k g for a basis k of the left kernel of m.
    QMat kcols = nullspace(transpose(m));
    if (kcols.cols == 0) return true;
    ZMat k = scale_rows_integral(transpose(kcols));
    ZVec rhs(k.rows);
    for (std::size_t r = 0; r < k.rows; ++r) {
        Rat e(0);
        for (int c = 0; c < d; ++c) e += Rat(k.at(r, c)) * g[c];
        if (!is_integer(e)) return false;
        rhs[r] = e.get_num();
    }
    return solve_integer(k, rhs).has_value();
}

}  // namespace gerbecalc
