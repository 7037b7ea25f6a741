#pragma once

// Cover shrinking on finite topological spaces.
//
// A finite poset is treated as a finite T0 space. Convention, fixed for the
// whole library: the OPEN sets are exactly the up-closed subsets, so the
// minimal open neighbourhood of an element is its up-set and the closure of a
// subset is its down-closure. With this convention the open star of a vertex
// in a simplicial face poset (all faces containing that vertex) is open,
// matching the geometric picture of the star in the realization.

#include <string>
#include <utility>
#include <vector>

#include "gerbecalc/alcove.hpp"

namespace gerbecalc {

/// Subset of poset elements; entry e is nonzero iff element e belongs to the
/// set. Always sized to the ambient poset.
using ElemSet = std::vector<char>;

struct FinitePoset {
    std::vector<std::string> names;      ///< element labels, indices 0..n-1
    std::vector<std::vector<char>> leq;  ///< leq[a][b] != 0  <=>  a <= b

    int size() const { return static_cast<int>(names.size()); }
};

/// Builds a poset from generating relations (pairs (a, b) meaning a <= b).
/// Computes the reflexive-transitive closure and rejects antisymmetry
/// violations (order cycles) and duplicate or empty names.
FinitePoset make_poset(std::vector<std::string> names,
                       const std::vector<std::pair<int, int>>& below);

bool poset_open(const FinitePoset& p, const ElemSet& s);    ///< up-closed?
bool poset_closed(const FinitePoset& p, const ElemSet& s);  ///< down-closed?

/// Smallest closed superset: the down-closure.
ElemSet poset_closure(const FinitePoset& p, const ElemSet& s);
/// Largest open subset.
ElemSet poset_interior(const FinitePoset& p, const ElemSet& s);
/// Smallest open superset: the up-closure.
ElemSet poset_min_open(const FinitePoset& p, const ElemSet& s);
ElemSet set_complement(const FinitePoset& p, const ElemSet& s);

struct OpenCover {
    FinitePoset poset;
    std::vector<ElemSet> sets;  ///< V_0..V_d, each open, union = everything
};

/// Validates that every member is open and that the union is the whole space.
OpenCover make_cover(FinitePoset poset, std::vector<ElemSet> sets);

/// Output of shrink_cover. Index sets run over the nerve of the input cover
/// (the nonempty I with V_I := intersection of the V_i nonempty), ordered by
/// cardinality and then lexicographically; U_I is empty whenever V_I is.
struct ShrinkResult {
    std::vector<std::vector<int>> index_sets;  ///< nerve subsets I
    std::vector<ElemSet> u_sets;               ///< U_I, aligned with index_sets
    std::vector<ElemSet> v_prime;              ///< V'_i, one per cover member
};

/// Face poset of the d-simplex carrying its open-star cover: one element per
/// nonempty subset of the d+1 vertices, ordered by inclusion (2^(d+1) - 1
/// elements), with V_j = open star of vertex j = all faces containing j.
/// Only the rank of the model is used.
OpenCover alcove_star_cover(const AlcoveModel& am);

/// Shrinks a cover by induction on the cardinality k of the index set I:
///   A_I = intersection of V_i (i in I) minus union of V_j (j not in I),
///   B_I = A_I minus the union of the already chosen U_J for J strictly
///         contained in I,
///   C_I = union of the closures of U_J for J of smaller cardinality not
///         contained in I, together with the closures of A_K for K not
///         containing I,
///   U_I = the minimal open set containing B_I (its up-closure), accepted
///         only if its closure avoids C_I and stays disjoint from the
///         closures of the other U_J of the same cardinality.
/// Finally V'_i = complement of the union of the closures of U_J over J not
/// containing i. The chooser is deterministic; when the minimal open set
/// violates a disjointness constraint the function throws NoValidShrinking
/// (existence is guaranteed for covers of manifolds, not for arbitrary
/// finite spaces). The result is re-checked with verify_shrink before it is
/// returned.
ShrinkResult shrink_cover(const OpenCover& cover);

/// Checks every property promised by shrink_cover:
///   - index_sets is exactly the nerve of the cover,
///   - each U_I is open with closure contained in V_I,
///   - closures of U_I and U_J are disjoint unless one index set contains
///     the other,
///   - the closure of each A_I is covered by the U_J with J contained in I,
///   - V'_i equals the complement of the union of closures of U_J with J not
///     containing i, the V'_i cover the space, and each closure of V'_i is
///     contained in V_i.
/// Malformed results (wrong sizes, out-of-range entries) verify as false.
bool verify_shrink(const OpenCover& cover, const ShrinkResult& result);

/// Orbit-invariance check: elem_image must be a poset automorphism and
/// index_image a permutation of the cover members with
/// elem_image(V_i) = V_{index_image(i)} (otherwise DimensionError). Returns
/// true iff elem_image(U_I) = U_{index_image(I)} for every nerve subset I and
/// elem_image(V'_i) = V'_{index_image(i)}. The minimal-open-superset rule is
/// canonical, so results of shrink_cover always pass.
bool shrink_equivariant(const OpenCover& cover, const ShrinkResult& result,
                        const std::vector<int>& elem_image,
                        const std::vector<int>& index_image);

}  // namespace gerbecalc
