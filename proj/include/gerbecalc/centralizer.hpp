#pragma once

#include <vector>

#include "gerbecalc/alcove.hpp"
#include "gerbecalc/lattice.hpp"

namespace gerbecalc {

/// Nonempty subset of {0, ..., d} indexing an open face of the alcove.
struct FaceIndexSet {
    std::vector<int> indices;  // sorted, duplicate-free
};

FaceIndexSet make_face(const AlcoveModel& am, std::vector<int> indices);

/// Root data of the centralizer of the open face I: its roots pair with
/// every vertex of the face in one and the same integer.
struct CentralizerData {
    RootSystem rs;  // ambient root system
    FaceIndexSet face;
    std::vector<ZVec> roots_sub;      // sorted
    std::vector<ZVec> simple_system;  // indecomposable positive subsystem roots
    Lattice coroot_lattice_sub;       // spanned by the coroots of roots_sub
    AbelianGroupInvariants pi1;       // invariants of Lambda / coroot_lattice_sub
};

/// A homomorphism pi1 -> U(1) presented by its defining weight and its
/// rotation numbers on the torsion generators of pi1.
struct ExtensionClass {
    FaceIndexSet face;
    QVec weight;                  // the defining mu, ambient coordinates
    std::vector<ZVec> generators; // torsion generators of pi1 (vectors in Lambda)
    std::vector<Int> orders;      // invariant factor of each generator (>= 2)
    std::vector<Rat> values;      // mu . generator mod 1, in [0, 1)

    bool values_all_zero() const {
        for (const auto& v : values)
            if (v != 0) return false;
        return true;
    }
};

CentralizerData centralizer_roots(const AlcoveModel& am, const FaceIndexSet& I);

/// Invariants of Lambda / coroot_lattice_sub, recomputed from the data.
AbelianGroupInvariants fundamental_group(const CentralizerData& cd);

/// The homomorphism lambda -> mu . lambda mod 1 on the torsion generators.
/// Requires mu to pair integrally with every coroot of the centralizer.
ExtensionClass extension_class(const AlcoveModel& am, const FaceIndexSet& I, const QVec& mu);

/// The class of mu_j - mu_i on the edge face {i, j}.
ExtensionClass rho_edge(const AlcoveModel& am, int i, int j);

/// True iff the class is the image of an invariant covector: there is a
/// rational zeta orthogonal to all centralizer roots with
/// (mu - zeta) . lambda integral for every lambda in Lambda.
bool extension_is_trivial(const CentralizerData& cd, const ExtensionClass& cls);

}  // namespace gerbecalc
