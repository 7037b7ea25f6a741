#pragma once

#include <vector>

#include "gerbecalc/lattice.hpp"
#include "gerbecalc/root_system.hpp"

namespace gerbecalc {

/// The fundamental alcove {xi : (alpha_i, xi) >= 0, (alpha_max, xi) <= 1}.
/// vertices[0] = 0 and vertices[j] solves (alpha_i, mu) = 0 for i != j,
/// (alpha_max, mu) = 1. marks[j-1] is the rational c_j with
/// vertices[j] = b_j / c_j, b_j the basis dual to the simple roots.
struct AlcoveModel {
    RootSystem rs;
    std::vector<QVec> vertices;
    QVec marks;
};

/// A rational point of the alcove, with a cached certificate.
struct FacePoint {
    QVec coords;
    bool certifies_alcove = false;
};

AlcoveModel alcove_vertices(const RootSystem& rs);

bool in_alcove(const AlcoveModel& am, const QVec& xi);

/// Checks alcove membership and caches the certificate; throws NotInAlcove.
FacePoint face_point(const AlcoveModel& am, QVec coords);

/// Barycentric coordinates (t_0, ..., t_d) of an ambient point.
QVec barycentric_coords(const AlcoveModel& am, const QVec& xi);

/// Ambient point with the given barycentric coordinates (length d+1).
QVec from_barycentric(const AlcoveModel& am, const QVec& coeffs);

/// Smallest positive integer m such that m times every vertex is a weight,
/// computed as lcm_j (alpha_max, w_j) over the fundamental weights w_j and
/// cross-checked against the direct minimum.
Int k0(const RootSystem& rs);

/// The direct oracle: min{m > 0 : m * mu_j in the weight lattice for all j}.
Int k0_weight_oracle(const RootSystem& rs);

/// The level-m weights: {lambda in weight lattice : (alpha_i, lambda) >= 0,
/// (alpha_max, lambda) <= m}, sorted lexicographically by coordinates.
std::vector<QVec> level_weights(const RootSystem& rs, const Int& m);

/// True iff the barycentric coordinate of xi at vertex j is positive.
bool star_membership(const AlcoveModel& am, int j, const FacePoint& xi);

/// xi - mu_j, defined on the open star of vertex j.
QVec moment_value(const AlcoveModel& am, int j, const FacePoint& xi);

/// True iff m * xi lies in the weight lattice.
bool is_prequantizable(const AlcoveModel& am, const Int& m, const FacePoint& xi);

}  // namespace gerbecalc
