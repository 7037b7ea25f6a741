#pragma once

#include <string>
#include <vector>

#include "gerbecalc/linalg.hpp"

namespace gerbecalc {

enum class Series { A, B, C, D, E, F, G };

struct LieType {
    Series series;
    int rank = 0;

    /// Parses "A1".."A99", "B2".., "E6", "E7", "E8", "F4", "G2"; throws InvalidType.
    static LieType parse(const std::string& s);
    std::string str() const;
    bool operator==(const LieType& o) const { return series == o.series && rank == o.rank; }
};

/// Root system in the basic normalization: long roots have norm-square 2.
/// Roots are stored as integer coefficient vectors over the simple roots.
/// Ambient vectors use coordinates over the simple coroots; the inner product
/// of ambient vectors x, y is x^T * coroot_gram * y.
struct RootSystem {
    LieType type;
    int rank = 0;
    QMat simple_gram;        // (alpha_i, alpha_j)
    QVec half_norms;         // d_i = (alpha_i, alpha_i)/2
    QMat coroot_gram;        // (coroot_i, coroot_j) = simple_gram[i][j]/(d_i d_j)
    ZMat cartan;             // cartan[i][j] = <alpha_i, coroot_j> = simple_gram[i][j]/d_j
    std::vector<ZVec> roots; // all roots, sorted lexicographically
    ZVec highest_root;       // coefficients of the highest root (the marks)

    /// Ambient (simple-coroot basis) coordinates of a root given by coefficients.
    QVec ambient(const ZVec& root) const;
    /// Ambient coordinates of the coroot of a root; entries are integers.
    QVec coroot_ambient(const ZVec& root) const;
    /// Inner product of two ambient vectors.
    Rat pair(const QVec& x, const QVec& y) const;
    /// Inner product (alpha, xi) of a root with an ambient vector.
    Rat pair_root(const ZVec& root, const QVec& xi) const;
    Rat root_normsq(const ZVec& root) const;
    bool is_root(const ZVec& v) const;
    bool is_positive(const ZVec& root) const;
};

RootSystem build_root_system(LieType type);

/// Gram matrix of the simple coroots under the basic inner product.
QMat basic_gram(LieType type);

}  // namespace gerbecalc
