#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gerbecalc/centralizer.hpp"
#include "gerbecalc/deltacalc.hpp"

namespace gerbecalc {

/// Declarative description of gluing data over a finite chart set {0..charts-1}:
/// bundle gerbes (L_i, t_i) per chart, pseudo-line bundles (E_ij, s_ij) per
/// pair with E_ij = E_ji^{-1} and s_ij = s_ji^{-1} enforced structurally,
/// line bundles F_ijk with pi*F_ijk = E_ij E_jk E_ki and unitary sections
/// u_ijk, both stored alternating. Relations are declared by flags; the
/// F-definition relator is structural and always in force.
struct GluingData {
    int charts = 4;

    bool rel_t_gerbe = true;    // delta t_i = 1
    bool rel_s_pseudo = true;   // delta s_ij = t_j t_i^{-1}
    bool rel_s_cocycle = true;  // s_ij s_jk s_ki = 1
    bool rel_u_cocycle = true;  // u_jkl u_ikl^{-1} u_ijl u_ijk^{-1} = 1

    std::set<int> trivial_L, trivial_t;
    std::set<std::pair<int, int>> trivial_E, trivial_s;  // increasing pairs
    std::set<std::array<int, 3>> trivial_u;              // increasing triples

    bool has_connection = false;
    std::set<int> zero_B;                       // charts with B_i = 0
    std::set<std::pair<int, int>> zero_omega;   // pairs with error 2-form 0

    bool operator==(const GluingData&) const = default;
};

/// Fully generic data: nothing trivial, all relations declared, connection
/// declarations present with every error 2-form zero.
GluingData standard_gluing(int charts = 4);

/// Generator words. Antisymmetric and alternating families are canonicalized
/// to increasing index tuples; a repeated index yields the empty word.
Word chart_L(const GluingData& gd, int i);
Word chart_t(const GluingData& gd, int i);
Word pair_E(const GluingData& gd, int i, int j);
Word pair_s(const GluingData& gd, int i, int j);
Word triple_F(const GluingData& gd, int i, int j, int k);
Word triple_u(const GluingData& gd, int i, int j, int k);

/// Home bundles of t_i, s_ij, u_ijk.
SymbolTable gluing_symbols(const GluingData& gd);

/// The glued gerbe: L_ij = L_j (x) d_1* E_ij over every chart pair, and
/// t_ijk = t_k (x) d_2* s_kj (x) d_2* d_1* pi* u_ijk over every chart triple,
/// together with both sides of the proof's intermediate identity
/// (delta L)_ijk = (delta L_k) (x) d_2*(L_j L_k^{-1} delta E_kj^{-1})
///                 (x) d_2* d_1* pi* F_ijk
/// at (i,j,k) = (0,1,2), or (0,1,0) when only two charts exist.
struct GluedGerbe {
    std::map<std::pair<int, int>, Word> line_bundles;
    std::map<std::array<int, 3>, Word> sections;
    Word delta_l_direct;    // (delta L)_012 expanded from the L_ij
    Word delta_l_factored;  // the three-factor right-hand side
};

/// Builds the glued gerbe and checks, for every chart triple, that t_ijk is a
/// section of (delta L)_ijk modulo the structural F-relation, and that the
/// intermediate identity holds. A failure throws GlueTypeError and indicates
/// a rewriting bug, never a property of valid data.
GluedGerbe glue(const GluingData& gd);

/// True iff (delta t)_ijkl reduces to the empty section word under the
/// declared relations, for every chart quadruple.
bool verify_cocycle(const GluingData& gd);

/// Canonical residual of (delta t) at the given quadruple modulo the declared
/// relations; empty iff that quadruple's cocycle equation reduces to 1.
Word cocycle_residual(const GluingData& gd, const std::array<int, 4>& quad);

/// Canonical residual of an arbitrary level-3 section word modulo the declared
/// relations. Two words have equal residuals iff they differ by a product of
/// integer powers of relation instances.
Word section_relation_residual(const GluingData& gd, const Word& target);

/// True iff the glued connection nabla^{L_ij} = nabla^{L_j} (x) d_1* nabla^{E_ij}
/// with the 2-forms B_i defines a gerbe connection: the curvature identity
/// curv(nabla^{L_ij}) - (delta B)_ij leaves exactly the d_1* pi* omega_ij
/// residual, which vanishes iff omega_ij is declared zero; the three-factor
/// decomposition of (delta nabla^L)_ijk is checked as an identity.
bool verify_connection(const GluingData& gd);

/// The curvature residual d_1* pi* omega_ij for one chart pair.
Word connection_residual(const GluingData& gd, int i, int j);

/// Symbolic gerbe (L, t) attached to a central-extension class, tagged with
/// the class data. When the class lies in the image of the invariant
/// covectors there is a distinguished pseudo-line bundle: a trivial E and a
/// section generator s with delta s = t.
struct GerbeFragment {
    FaceIndexSet face;
    Gen L;                       // level 1
    Gen t;                       // level 2, section of delta L
    std::vector<Rat> class_values;
    bool class_trivial = false;        // all rotation numbers vanish
    bool pseudo_line_bundle = false;   // distinguished trivialization declared
    std::optional<Gen> s;              // level 1, section of L, delta s = t
};

GerbeFragment gerbe_from_extension(const CentralizerData& cd, const ExtensionClass& cls);

/// Fragments for every alcove vertex at level m, assembled over the chart set
/// {0..d}: E_ij is always trivial; L_i, t_i and u_ijk are trivial when every
/// vertex class is trivial, leaving the data in the s_ij as for the A-series.
struct AssembledGluing {
    GluingData data;
    std::vector<GerbeFragment> fragments;
};

AssembledGluing assemble_alcove_gluing(const AlcoveModel& am, const Int& m);

/// Text declarations, version 1; see the repository documentation for the
/// exact grammar. Parsing validates against the gluing symbol set and the
/// known relation shapes (up to renaming of the index variables).
GluingData parse_gluing_decls(const std::string& text);
std::string render_gluing_decls(const GluingData& gd);

}  // namespace gerbecalc
