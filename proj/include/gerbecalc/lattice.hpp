#pragma once

#include <vector>

#include "gerbecalc/linalg.hpp"
#include "gerbecalc/root_system.hpp"

namespace gerbecalc {

/// A full- or lower-rank lattice inside the ambient rational space
/// (coordinates over the simple coroots). Basis columns are independent.
struct Lattice {
    std::size_t ambient_dim = 0;
    QMat basis;  // ambient_dim x rank(lattice)
};

struct AbelianGroupInvariants {
    long free_rank = 0;
    std::vector<Int> torsion;  // invariant factors >= 2, t1 | t2 | ...
    bool operator==(const AbelianGroupInvariants& o) const {
        return free_rank == o.free_rank && torsion == o.torsion;
    }
};

/// Builds a lattice, checking that the basis columns are independent.
Lattice make_lattice(QMat basis);

/// Canonical lattice spanned by the (possibly dependent) integer columns.
Lattice lattice_from_integer_columns(std::size_t ambient_dim, const ZMat& columns);

/// True iff v is an integer combination of the basis columns.
bool lattice_membership(const Lattice& l, const QVec& v);

/// Invariant factors and free rank of sup/sub.
AbelianGroupInvariants lattice_quotient(const Lattice& sub, const Lattice& sup);

Lattice coroot_lattice(const RootSystem& rs);
Lattice weight_lattice(const RootSystem& rs);
Lattice root_lattice(const RootSystem& rs);

}  // namespace gerbecalc
