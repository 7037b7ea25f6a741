#include "gerbecalc/gluing.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

#include "gerbecalc/errors.hpp"
#include "gerbecalc/linalg.hpp"

namespace gerbecalc {

namespace {

void check_chart(const GluingData& gd, int i) {
    if (i < 0 || i >= gd.charts) throw DimensionError("chart index out of range");
}

std::string fam_name(const std::string& fam, std::initializer_list<int> idx) {
    std::string s = fam + "(";
    bool first = true;
    for (int i : idx) {
        if (!first) s += ",";
        s += std::to_string(i);
        first = false;
    }
    return s + ")";
}

/// Sign of the permutation sorting (a, b, c); zero on a repeated index.
int sort3(int& a, int& b, int& c) {
    if (a == b || b == c || a == c) return 0;
    int sign = 1;
    if (a > b) { std::swap(a, b); sign = -sign; }
    if (b > c) { std::swap(b, c); sign = -sign; }
    if (a > b) { std::swap(a, b); sign = -sign; }
    return sign;
}

Word signed_gen(const Gen& g, int sign) {
    return sign >= 0 ? gen_word(g) : inv(gen_word(g));
}

/// All normal-form face words from one level down to another.
std::vector<FaceWord> words_between(int from, int to) {
    std::vector<FaceWord> out;
    std::vector<int> acc;  // indices in application order (rightmost first)
    std::function<void(int)> rec = [&](int level) {
        if (level == to) {
            std::vector<int> idx(acc.rbegin(), acc.rend());
            if (std::is_sorted(idx.rbegin(), idx.rend()))
                out.push_back(FaceWord{from, idx});
            return;
        }
        for (int i = 0; i <= level; ++i) {
            acc.push_back(i);
            rec(level - 1);
            acc.pop_back();
        }
    };
    rec(from);
    return out;
}

/// Canonical residual calculator modulo the integer span of instance words.
struct Reducer {
    std::vector<Term> terms;
    std::map<Term, std::size_t> index;
    ZMat hnf;

    Reducer(const std::vector<Word>& instances, const std::vector<Word>& targets) {
        std::set<Term> uni;
        for (const auto& w : instances)
            for (const auto& [t, e] : w.terms) uni.insert(t);
        for (const auto& w : targets)
            for (const auto& [t, e] : w.terms) uni.insert(t);
        terms.assign(uni.begin(), uni.end());
        for (std::size_t i = 0; i < terms.size(); ++i) index[terms[i]] = i;
        ZMat m(terms.size(), instances.size());
        for (std::size_t j = 0; j < instances.size(); ++j)
            for (const auto& [t, e] : instances[j].terms) m.at(index.at(t), j) = e;
        hnf = column_hermite(m);
    }

    ZVec vec(const Word& w) const {
        ZVec v(terms.size(), Int(0));
        for (const auto& [t, e] : w.terms) v[index.at(t)] = e;
        return v;
    }

    ZVec reduce(ZVec v) const {
        for (std::size_t j = 0; j < hnf.cols; ++j) {
            std::size_t r = 0;
            while (r < hnf.rows && hnf.at(r, j) == 0) ++r;
            if (r == hnf.rows) continue;
            Int q = fdiv(v[r], hnf.at(r, j));
            if (q == 0) continue;
            for (std::size_t i = r; i < hnf.rows; ++i) v[i] -= q * hnf.at(i, j);
        }
        return v;
    }

    bool contains(const Word& w) const {
        ZVec v = reduce(vec(w));
        return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
    }

    Word to_word(const ZVec& v, int level) const {
        Word w{level, {}};
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] != 0) w.terms.emplace(terms[i], v[i]);
        return w;
    }
};

Word glued_line_bundle(const GluingData& gd, int a, int b) {
    return mul(chart_L(gd, b), pullback(pair_E(gd, a, b), face_word(1, {1})));
}

Word glued_section(const GluingData& gd, int a, int b, int c) {
    Word w = chart_t(gd, c);
    w = mul(w, pullback(pair_s(gd, c, b), face_word(2, {2})));
    return mul(w, pullback(triple_u(gd, a, b, c), face_word(2, {1, 2})));
}

template <class Member>
Word family_delta(int member_level, const std::vector<int>& tuple, Member member) {
    Word r = empty_word(member_level + 1);
    for (std::size_t a = 0; a < tuple.size(); ++a) {
        std::vector<int> sub;
        for (std::size_t i = 0; i < tuple.size(); ++i)
            if (i != a) sub.push_back(tuple[i]);
        Word p = pullback(member(sub),
                          face_word(member_level + 1, {static_cast<int>(a)}));
        r = mul(r, a % 2 == 0 ? p : inv(p));
    }
    return r;
}

/// Instances of pi* F_ijk = E_ij E_jk E_ki pulled back to the given level.
std::vector<Word> f_relation_instances(const GluingData& gd, int level) {
    std::vector<Word> out;
    for (int a = 0; a < gd.charts; ++a)
        for (int b = a + 1; b < gd.charts; ++b)
            for (int c = b + 1; c < gd.charts; ++c) {
                Word es = mul(pair_E(gd, a, b), mul(pair_E(gd, b, c), pair_E(gd, c, a)));
                Word base = mul(triple_F(gd, a, b, c), inv(es));
                if (base.empty()) continue;
                for (const auto& w : words_between(level, 0)) {
                    Word inst = pullback(base, w);
                    if (!inst.empty()) out.push_back(std::move(inst));
                }
            }
    return out;
}

/// Declared section relations, instantiated at level 3.
std::vector<Word> cocycle_instances(const GluingData& gd) {
    std::vector<Word> out;
    auto push = [&](Word w) {
        if (!w.empty()) out.push_back(std::move(w));
    };
    if (gd.rel_t_gerbe)
        for (int c = 0; c < gd.charts; ++c) push(delta(chart_t(gd, c)));
    if (gd.rel_s_pseudo)
        for (int a = 0; a < gd.charts; ++a)
            for (int b = a + 1; b < gd.charts; ++b) {
                Word base = mul(delta(pair_s(gd, a, b)),
                                mul(inv(chart_t(gd, b)), chart_t(gd, a)));
                if (base.empty()) continue;
                for (int f = 0; f <= 3; ++f) push(pullback(base, face_word(3, {f})));
            }
    if (gd.rel_s_cocycle)
        for (int a = 0; a < gd.charts; ++a)
            for (int b = a + 1; b < gd.charts; ++b)
                for (int c = b + 1; c < gd.charts; ++c) {
                    Word base = mul(pair_s(gd, a, b),
                                    mul(pair_s(gd, b, c), pair_s(gd, c, a)));
                    if (base.empty()) continue;
                    for (const auto& w : words_between(3, 1)) push(pullback(base, w));
                }
    if (gd.rel_u_cocycle)
        for (int a = 0; a < gd.charts; ++a)
            for (int b = a + 1; b < gd.charts; ++b)
                for (int c = b + 1; c < gd.charts; ++c)
                    for (int e = c + 1; e < gd.charts; ++e) {
                        Word base = mul(mul(triple_u(gd, b, c, e),
                                            inv(triple_u(gd, a, c, e))),
                                        mul(triple_u(gd, a, b, e),
                                            inv(triple_u(gd, a, b, c))));
                        if (base.empty()) continue;
                        push(pullback(base, words_between(3, 0).front()));
                    }
    return out;
}

Word delta_t_at(const GluedGerbe& g, const std::array<int, 4>& quad) {
    return family_delta(2, {quad.begin(), quad.end()}, [&](const std::vector<int>& s) {
        return g.sections.at({s[0], s[1], s[2]});
    });
}

Word b_form(const GluingData& gd, int c) {
    check_chart(gd, c);
    if (gd.zero_B.count(c)) return empty_word(0);
    return gen_word(Gen{fam_name("B", {c}), 0, false});
}

Word omega_form(const GluingData& gd, int a, int b) {
    check_chart(gd, a);
    check_chart(gd, b);
    if (a == b) return empty_word(0);
    int sign = a < b ? 1 : -1;
    int lo = std::min(a, b), hi = std::max(a, b);
    if (gd.zero_omega.count({lo, hi})) return empty_word(0);
    return signed_gen(Gen{fam_name("omega", {lo, hi}), 0, true}, sign);
}

Word nabla_L(const GluingData& gd, int c) {
    check_chart(gd, c);
    if (gd.trivial_L.count(c)) return empty_word(1);
    return gen_word(Gen{fam_name("nablaL", {c}), 1, false});
}

Word nabla_E(const GluingData& gd, int a, int b) {
    check_chart(gd, a);
    check_chart(gd, b);
    if (a == b) return empty_word(0);
    int sign = a < b ? 1 : -1;
    int lo = std::min(a, b), hi = std::max(a, b);
    if (gd.trivial_E.count({lo, hi})) return empty_word(0);
    return signed_gen(Gen{fam_name("nablaE", {lo, hi}), 0, false}, sign);
}

}  // namespace

GluingData standard_gluing(int charts) {
    if (charts < 2) throw DimensionError("need at least two charts");
    GluingData gd;
    gd.charts = charts;
    gd.has_connection = true;
    for (int a = 0; a < charts; ++a)
        for (int b = a + 1; b < charts; ++b) gd.zero_omega.insert({a, b});
    return gd;
}

Word chart_L(const GluingData& gd, int i) {
    check_chart(gd, i);
    if (gd.trivial_L.count(i)) return empty_word(1);
    return gen_word(Gen{fam_name("L", {i}), 1, false});
}

Word chart_t(const GluingData& gd, int i) {
    check_chart(gd, i);
    if (gd.trivial_t.count(i)) return empty_word(2);
    return gen_word(Gen{fam_name("t", {i}), 2, false});
}

Word pair_E(const GluingData& gd, int i, int j) {
    check_chart(gd, i);
    check_chart(gd, j);
    if (i == j) return empty_word(0);
    int lo = std::min(i, j), hi = std::max(i, j);
    if (gd.trivial_E.count({lo, hi})) return empty_word(0);
    return signed_gen(Gen{fam_name("E", {lo, hi}), 0, false}, i < j ? 1 : -1);
}

Word pair_s(const GluingData& gd, int i, int j) {
    check_chart(gd, i);
    check_chart(gd, j);
    if (i == j) return empty_word(1);
    int lo = std::min(i, j), hi = std::max(i, j);
    if (gd.trivial_s.count({lo, hi})) return empty_word(1);
    return signed_gen(Gen{fam_name("s", {lo, hi}), 1, false}, i < j ? 1 : -1);
}

Word triple_F(const GluingData& gd, int i, int j, int k) {
    check_chart(gd, i);
    check_chart(gd, j);
    check_chart(gd, k);
    int sign = sort3(i, j, k);
    if (sign == 0) return empty_word(0);
    bool all_e_trivial = gd.trivial_E.count({i, j}) && gd.trivial_E.count({j, k}) &&
                         gd.trivial_E.count({i, k});
    if (all_e_trivial) return empty_word(0);
    return signed_gen(Gen{fam_name("F", {i, j, k}), 0, true}, sign);
}

Word triple_u(const GluingData& gd, int i, int j, int k) {
    check_chart(gd, i);
    check_chart(gd, j);
    check_chart(gd, k);
    int sign = sort3(i, j, k);
    if (sign == 0) return empty_word(0);
    if (gd.trivial_u.count({i, j, k})) return empty_word(0);
    return signed_gen(Gen{fam_name("u", {i, j, k}), 0, true}, sign);
}

SymbolTable gluing_symbols(const GluingData& gd) {
    SymbolTable st;
    for (int c = 0; c < gd.charts; ++c)
        st.section_home[fam_name("t", {c})] = delta(chart_L(gd, c));
    for (int a = 0; a < gd.charts; ++a)
        for (int b = a + 1; b < gd.charts; ++b)
            st.section_home[fam_name("s", {a, b})] =
                mul(inv(delta(pair_E(gd, a, b))),
                    mul(chart_L(gd, b), inv(chart_L(gd, a))));
    for (int a = 0; a < gd.charts; ++a)
        for (int b = a + 1; b < gd.charts; ++b)
            for (int c = b + 1; c < gd.charts; ++c)
                st.section_home[fam_name("u", {a, b, c})] = triple_F(gd, a, b, c);
    return st;
}

GluedGerbe glue(const GluingData& gd) {
    if (gd.charts < 2) throw DimensionError("need at least two charts");
    GluedGerbe out;
    SymbolTable syms = gluing_symbols(gd);
    for (int a = 0; a < gd.charts; ++a)
        for (int b = 0; b < gd.charts; ++b)
            out.line_bundles[{a, b}] = glued_line_bundle(gd, a, b);
    for (int a = 0; a < gd.charts; ++a)
        for (int b = 0; b < gd.charts; ++b)
            for (int c = 0; c < gd.charts; ++c)
                out.sections[{a, b, c}] = glued_section(gd, a, b, c);

    std::vector<Word> diffs;
    for (const auto& [triple, t] : out.sections) {
        Word dl = family_delta(1, {triple[0], triple[1], triple[2]},
                               [&](const std::vector<int>& s) {
                                   return out.line_bundles.at({s[0], s[1]});
                               });
        diffs.push_back(mul(section_bundle(syms, t), inv(dl)));
    }
    Reducer red(f_relation_instances(gd, 2), diffs);
    for (const auto& d : diffs)
        if (!red.contains(d))
            throw GlueTypeError("glued section is not a section of delta L");

    int i = 0, j = 1, k = gd.charts >= 3 ? 2 : 0;
    out.delta_l_direct = family_delta(1, {i, j, k}, [&](const std::vector<int>& s) {
        return out.line_bundles.at({s[0], s[1]});
    });
    Word middle = mul(chart_L(gd, j),
                      mul(inv(chart_L(gd, k)), inv(delta(pair_E(gd, k, j)))));
    out.delta_l_factored =
        mul(delta(chart_L(gd, k)),
            mul(pullback(middle, face_word(2, {2})),
                pullback(triple_F(gd, i, j, k), face_word(2, {1, 2}))));
    return out;
}

bool verify_cocycle(const GluingData& gd) {
    GluedGerbe g = glue(gd);
    std::vector<Word> instances = cocycle_instances(gd);
    std::vector<Word> targets;
    for (int a = 0; a < gd.charts; ++a)
        for (int b = 0; b < gd.charts; ++b)
            for (int c = 0; c < gd.charts; ++c)
                for (int e = 0; e < gd.charts; ++e)
                    targets.push_back(delta_t_at(g, {a, b, c, e}));
    Reducer red(instances, targets);
    for (const auto& t : targets)
        if (!red.contains(t)) return false;
    return true;
}

Word cocycle_residual(const GluingData& gd, const std::array<int, 4>& quad) {
    GluedGerbe g = glue(gd);
    return section_relation_residual(gd, delta_t_at(g, quad));
}

Word section_relation_residual(const GluingData& gd, const Word& target) {
    if (target.level != 3)
        throw DimensionError("relation residuals are defined at level 3");
    Reducer red(cocycle_instances(gd), {target});
    return red.to_word(red.reduce(red.vec(target)), 3);
}

bool verify_connection(const GluingData& gd) {
    if (!gd.has_connection)
        throw GlueTypeError("no connection declarations present");
    glue(gd);
    bool ok = true;
    for (int a = 0; a < gd.charts; ++a)
        for (int b = 0; b < gd.charts; ++b) {
            Word curv_e = mul(b_form(gd, b), mul(inv(b_form(gd, a)), omega_form(gd, a, b)));
            Word lhs = mul(delta(b_form(gd, b)), pullback(curv_e, face_word(1, {1})));
            Word rhs = mul(pullback(b_form(gd, b), face_word(1, {0})),
                           inv(pullback(b_form(gd, a), face_word(1, {1}))));
            Word resid = mul(lhs, inv(rhs));
            if (resid != pullback(omega_form(gd, a, b), face_word(1, {1})))
                throw GlueTypeError("curvature residual is not the omega pullback");
            if (!resid.empty()) ok = false;
        }
    for (int a = 0; a < gd.charts; ++a)
        for (int b = 0; b < gd.charts; ++b)
            for (int c = 0; c < gd.charts; ++c) {
                Word lhs = family_delta(1, {a, b, c}, [&](const std::vector<int>& s) {
                    return mul(nabla_L(gd, s[1]),
                               pullback(nabla_E(gd, s[0], s[1]), face_word(1, {1})));
                });
                Word middle = mul(nabla_L(gd, b),
                                  mul(inv(nabla_L(gd, c)), delta(nabla_E(gd, b, c))));
                Word third = mul(nabla_E(gd, a, b),
                                 mul(nabla_E(gd, b, c), nabla_E(gd, c, a)));
                Word rhs = mul(delta(nabla_L(gd, c)),
                               mul(pullback(middle, face_word(2, {2})),
                                   pullback(third, face_word(2, {1, 2}))));
                if (lhs != rhs)
                    throw GlueTypeError("three-factor connection decomposition failed");
            }
    return ok;
}

Word connection_residual(const GluingData& gd, int i, int j) {
    if (!gd.has_connection)
        throw GlueTypeError("no connection declarations present");
    Word curv_e = mul(b_form(gd, j), mul(inv(b_form(gd, i)), omega_form(gd, i, j)));
    Word lhs = mul(delta(b_form(gd, j)), pullback(curv_e, face_word(1, {1})));
    Word rhs = mul(pullback(b_form(gd, j), face_word(1, {0})),
                   inv(pullback(b_form(gd, i), face_word(1, {1}))));
    return mul(lhs, inv(rhs));
}

GerbeFragment gerbe_from_extension(const CentralizerData& cd, const ExtensionClass& cls) {
    GerbeFragment g;
    g.face = cls.face;
    std::string tag;
    for (std::size_t i = 0; i < cls.face.indices.size(); ++i) {
        if (i) tag += ",";
        tag += std::to_string(cls.face.indices[i]);
    }
    g.L = Gen{"L(" + tag + ")", 1, false};
    g.t = Gen{"t(" + tag + ")", 2, false};
    g.class_values = cls.values;
    g.class_trivial = cls.values_all_zero();
    g.pseudo_line_bundle = extension_is_trivial(cd, cls);
    if (g.pseudo_line_bundle) g.s = Gen{"s(" + tag + ")", 1, false};
    return g;
}

AssembledGluing assemble_alcove_gluing(const AlcoveModel& am, const Int& m) {
    AssembledGluing out;
    int d = am.rs.rank;
    out.data.charts = d + 1;
    bool all_trivial = true;
    for (int j = 0; j <= d; ++j) {
        FaceIndexSet face = make_face(am, {j});
        CentralizerData cd = centralizer_roots(am, face);
        QVec mu(d);
        for (int k = 0; k < d; ++k) mu[k] = Rat(m) * am.vertices[j][k];
        ExtensionClass cls = extension_class(am, face, mu);
        GerbeFragment frag = gerbe_from_extension(cd, cls);
        all_trivial = all_trivial && frag.class_trivial;
        out.fragments.push_back(std::move(frag));
    }
    for (int a = 0; a <= d; ++a)
        for (int b = a + 1; b <= d; ++b) out.data.trivial_E.insert({a, b});
    if (all_trivial) {
        for (int a = 0; a <= d; ++a) {
            out.data.trivial_L.insert(a);
            out.data.trivial_t.insert(a);
        }
        for (int a = 0; a <= d; ++a)
            for (int b = a + 1; b <= d; ++b)
                for (int c = b + 1; c <= d; ++c) out.data.trivial_u.insert({a, b, c});
    }
    out.data.has_connection = true;
    for (int a = 0; a <= d; ++a)
        for (int b = a + 1; b <= d; ++b) out.data.zero_omega.insert({a, b});
    return out;
}

}  // namespace gerbecalc
