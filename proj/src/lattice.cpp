#include "gerbecalc/lattice.hpp"

#include <stdexcept>

#include "gerbecalc/errors.hpp"

namespace gerbecalc {

Lattice make_lattice(QMat basis) {
    if (basis.cols > 0 && rank(basis) != static_cast<long>(basis.cols))
        throw std::logic_error("lattice basis columns are dependent");
    return Lattice{basis.rows, std::move(basis)};
}

Lattice lattice_from_integer_columns(std::size_t ambient_dim, const ZMat& columns) {
    if (columns.rows != ambient_dim) throw DimensionError("column length != ambient dim");
    ZMat h = column_hermite(columns);
    return Lattice{ambient_dim, to_qmat(h)};
}

bool lattice_membership(const Lattice& l, const QVec& v) {
    if (v.size() != l.ambient_dim) throw DimensionError("vector length != ambient dim");
    auto x = solve(l.basis, v);
    if (!x) return false;
    for (const auto& c : *x)
        if (!is_integer(c)) return false;
    return true;
}

AbelianGroupInvariants lattice_quotient(const Lattice& sub, const Lattice& sup) {
    if (sub.ambient_dim != sup.ambient_dim)
        throw DimensionError("lattices live in different ambient spaces");
    auto x = solve_matrix(sup.basis, sub.basis);
    if (!x) throw NotSublattice("sub is not contained in sup");
    ZMat xi(x->rows, x->cols);
    for (std::size_t i = 0; i < x->rows; ++i)
        for (std::size_t j = 0; j < x->cols; ++j) {
            if (!is_integer(x->at(i, j))) throw NotSublattice("sub is not contained in sup");
            xi.at(i, j) = x->at(i, j).get_num();
        }
    auto s = smith_normal_form(xi);
    AbelianGroupInvariants inv;
    inv.free_rank = static_cast<long>(sup.basis.cols) - static_cast<long>(s.rank);
    for (const auto& d : s.diag)
        if (d >= 2) inv.torsion.push_back(d);
    return inv;
}

Lattice coroot_lattice(const RootSystem& rs) {
    return Lattice{static_cast<std::size_t>(rs.rank),
                   QMat::identity(static_cast<std::size_t>(rs.rank))};
}

Lattice weight_lattice(const RootSystem& rs) {
    return Lattice{static_cast<std::size_t>(rs.rank), inverse(rs.coroot_gram)};
}

Lattice root_lattice(const RootSystem& rs) {
    std::size_t d = static_cast<std::size_t>(rs.rank);
    QMat b(d, d);
    for (std::size_t i = 0; i < d; ++i) b.at(i, i) = rs.half_norms[i];
    return Lattice{d, b};
}

}  // namespace gerbecalc
