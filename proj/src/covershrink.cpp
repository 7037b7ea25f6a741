#include "gerbecalc/covershrink.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <sstream>
#include <utility>

#include "gerbecalc/errors.hpp"

namespace gerbecalc {

namespace {

bool set_empty(const ElemSet& s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return c == 0; });
}

bool any_common(const ElemSet& a, const ElemSet& b) {
    for (std::size_t e = 0; e < a.size(); ++e) {
        if (a[e] && b[e]) return true;
    }
    return false;
}

bool subset_of(const ElemSet& a, const ElemSet& b) {
    for (std::size_t e = 0; e < a.size(); ++e) {
        if (a[e] && !b[e]) return false;
    }
    return true;
}

bool sets_equal(const ElemSet& a, const ElemSet& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t e = 0; e < a.size(); ++e) {
        if (bool(a[e]) != bool(b[e])) return false;
    }
    return true;
}

void unite_into(ElemSet& a, const ElemSet& b) {
    for (std::size_t e = 0; e < a.size(); ++e) {
        if (b[e]) a[e] = 1;
    }
}

void subtract_from(ElemSet& a, const ElemSet& b) {
    for (std::size_t e = 0; e < a.size(); ++e) {
        if (b[e]) a[e] = 0;
    }
}

ElemSet intersect(const ElemSet& a, const ElemSet& b) {
    ElemSet out(a.size(), 0);
    for (std::size_t e = 0; e < a.size(); ++e) {
        out[e] = (a[e] && b[e]) ? 1 : 0;
    }
    return out;
}

std::vector<int> mask_list(std::uint32_t mask) {
    std::vector<int> out;
    for (int i = 0; mask >> i; ++i) {
        if ((mask >> i) & 1u) out.push_back(i);
    }
    return out;
}

std::string index_str(const std::vector<int>& idx) {
    std::ostringstream os;
    os << '{';
    for (std::size_t t = 0; t < idx.size(); ++t) {
        if (t) os << ',';
        os << idx[t];
    }
    os << '}';
    return os.str();
}

/// Nerve of a cover: the nonempty index sets I with V_I nonempty, ordered by
/// cardinality and then lexicographically on the sorted index list.
struct NerveData {
    std::vector<std::uint32_t> masks;
    std::vector<std::vector<int>> lists;
    std::vector<ElemSet> v_inter;  ///< V_I per nerve entry
};

NerveData compute_nerve(const OpenCover& cover) {
    const int m = static_cast<int>(cover.sets.size());
    if (m <= 0) throw DimensionError("cover has no members");
    if (m > 25) {
        throw DimensionError("cover has too many members for subset enumeration");
    }
    struct Entry {
        std::vector<int> list;
        std::uint32_t mask;
        ElemSet inter;
    };
    std::vector<Entry> entries;
    for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
        ElemSet inter(cover.poset.size(), 1);
        for (int i = 0; i < m; ++i) {
            if ((mask >> i) & 1u) inter = intersect(inter, cover.sets[i]);
        }
        if (set_empty(inter)) continue;
        entries.push_back(Entry{mask_list(mask), mask, std::move(inter)});
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.list.size() != b.list.size()) return a.list.size() < b.list.size();
        return a.list < b.list;
    });
    NerveData nd;
    for (auto& e : entries) {
        nd.masks.push_back(e.mask);
        nd.lists.push_back(std::move(e.list));
        nd.v_inter.push_back(std::move(e.inter));
    }
    return nd;
}

/// A_I = V_I minus the union of the V_j with j outside I, per nerve entry.
/// (For index sets outside the nerve A_I is empty, since A_I is contained in
/// the empty V_I.)
std::vector<ElemSet> compute_a_sets(const OpenCover& cover, const NerveData& nd) {
    const int m = static_cast<int>(cover.sets.size());
    std::vector<ElemSet> a_sets;
    a_sets.reserve(nd.masks.size());
    for (std::size_t t = 0; t < nd.masks.size(); ++t) {
        ElemSet a = nd.v_inter[t];
        for (int j = 0; j < m; ++j) {
            if (!((nd.masks[t] >> j) & 1u)) subtract_from(a, cover.sets[j]);
        }
        a_sets.push_back(std::move(a));
    }
    return a_sets;
}

}  // namespace

FinitePoset make_poset(std::vector<std::string> names,
                       const std::vector<std::pair<int, int>>& below) {
    const int n = static_cast<int>(names.size());
    for (int e = 0; e < n; ++e) {
        if (names[e].empty()) throw DimensionError("poset element names must be nonempty");
        for (int f = e + 1; f < n; ++f) {
            if (names[e] == names[f]) {
                throw DimensionError("duplicate poset element name '" + names[e] + "'");
            }
        }
    }
    FinitePoset p;
    p.names = std::move(names);
    p.leq.assign(n, std::vector<char>(n, 0));
    for (int e = 0; e < n; ++e) p.leq[e][e] = 1;
    for (const auto& [a, b] : below) {
        if (a < 0 || a >= n || b < 0 || b >= n) {
            throw DimensionError("order relation refers to an element out of range");
        }
        p.leq[a][b] = 1;
    }
    for (int k = 0; k < n; ++k) {
        for (int a = 0; a < n; ++a) {
            if (!p.leq[a][k]) continue;
            for (int b = 0; b < n; ++b) {
                if (p.leq[k][b]) p.leq[a][b] = 1;
            }
        }
    }
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            if (p.leq[a][b] && p.leq[b][a]) {
                throw DimensionError("order is not antisymmetric: '" + p.names[a] +
                                     "' and '" + p.names[b] + "' lie on a cycle");
            }
        }
    }
    return p;
}

bool poset_open(const FinitePoset& p, const ElemSet& s) {
    const int n = p.size();
    if (static_cast<int>(s.size()) != n) {
        throw DimensionError("element set does not match the poset size");
    }
    for (int a = 0; a < n; ++a) {
        if (!s[a]) continue;
        for (int b = 0; b < n; ++b) {
            if (p.leq[a][b] && !s[b]) return false;
        }
    }
    return true;
}

bool poset_closed(const FinitePoset& p, const ElemSet& s) {
    const int n = p.size();
    if (static_cast<int>(s.size()) != n) {
        throw DimensionError("element set does not match the poset size");
    }
    for (int a = 0; a < n; ++a) {
        if (!s[a]) continue;
        for (int b = 0; b < n; ++b) {
            if (p.leq[b][a] && !s[b]) return false;
        }
    }
    return true;
}

ElemSet poset_closure(const FinitePoset& p, const ElemSet& s) {
    const int n = p.size();
    if (static_cast<int>(s.size()) != n) {
        throw DimensionError("element set does not match the poset size");
    }
    ElemSet out(n, 0);
    for (int a = 0; a < n; ++a) {
        if (!s[a]) continue;
        for (int b = 0; b < n; ++b) {
            if (p.leq[b][a]) out[b] = 1;
        }
    }
    return out;
}

ElemSet poset_min_open(const FinitePoset& p, const ElemSet& s) {
    const int n = p.size();
    if (static_cast<int>(s.size()) != n) {
        throw DimensionError("element set does not match the poset size");
    }
    ElemSet out(n, 0);
    for (int a = 0; a < n; ++a) {
        if (!s[a]) continue;
        for (int b = 0; b < n; ++b) {
            if (p.leq[a][b]) out[b] = 1;
        }
    }
    return out;
}

ElemSet poset_interior(const FinitePoset& p, const ElemSet& s) {
    const int n = p.size();
    if (static_cast<int>(s.size()) != n) {
        throw DimensionError("element set does not match the poset size");
    }
    ElemSet out(n, 0);
    for (int a = 0; a < n; ++a) {
        if (!s[a]) continue;
        bool inside = true;
        for (int b = 0; b < n && inside; ++b) {
            if (p.leq[a][b] && !s[b]) inside = false;
        }
        if (inside) out[a] = 1;
    }
    return out;
}

ElemSet set_complement(const FinitePoset& p, const ElemSet& s) {
    const int n = p.size();
    if (static_cast<int>(s.size()) != n) {
        throw DimensionError("element set does not match the poset size");
    }
    ElemSet out(n, 0);
    for (int a = 0; a < n; ++a) out[a] = s[a] ? 0 : 1;
    return out;
}

OpenCover make_cover(FinitePoset poset, std::vector<ElemSet> sets) {
    ElemSet total(poset.size(), 0);
    for (std::size_t i = 0; i < sets.size(); ++i) {
        if (!poset_open(poset, sets[i])) {
            throw DimensionError("cover member " + std::to_string(i) + " is not open");
        }
        unite_into(total, sets[i]);
    }
    for (int e = 0; e < poset.size(); ++e) {
        if (!total[e]) {
            throw DimensionError("cover does not contain element '" + poset.names[e] + "'");
        }
    }
    OpenCover cover;
    cover.poset = std::move(poset);
    cover.sets = std::move(sets);
    return cover;
}

OpenCover alcove_star_cover(const AlcoveModel& am) {
    const int m = am.rs.rank + 1;  // number of vertices of the d-simplex
    if (m > 12) throw DimensionError("alcove star cover is too large beyond rank 11");
    struct Face {
        std::vector<int> list;
        std::uint32_t mask;
    };
    std::vector<Face> faces;
    for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
        faces.push_back(Face{mask_list(mask), mask});
    }
    std::sort(faces.begin(), faces.end(), [](const Face& a, const Face& b) {
        if (a.list.size() != b.list.size()) return a.list.size() < b.list.size();
        return a.list < b.list;
    });
    const int n = static_cast<int>(faces.size());
    FinitePoset p;
    p.names.reserve(n);
    for (const Face& f : faces) {
        std::string name;
        for (std::size_t t = 0; t < f.list.size(); ++t) {
            if (t) name += ',';
            name += std::to_string(f.list[t]);
        }
        p.names.push_back(std::move(name));
    }
    p.leq.assign(n, std::vector<char>(n, 0));
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            // a face precedes another iff its vertex set is contained in it
            p.leq[a][b] = ((faces[a].mask & ~faces[b].mask) == 0) ? 1 : 0;
        }
    }
    std::vector<ElemSet> stars;
    for (int j = 0; j < m; ++j) {
        ElemSet star(n, 0);
        for (int a = 0; a < n; ++a) {
            if ((faces[a].mask >> j) & 1u) star[a] = 1;
        }
        stars.push_back(std::move(star));
    }
    return make_cover(std::move(p), std::move(stars));
}

ShrinkResult shrink_cover(const OpenCover& cover) {
    const NerveData nd = compute_nerve(cover);
    const std::vector<ElemSet> a_sets = compute_a_sets(cover, nd);
    std::vector<ElemSet> a_closures;
    a_closures.reserve(a_sets.size());
    for (const ElemSet& a : a_sets) a_closures.push_back(poset_closure(cover.poset, a));

    const std::size_t count = nd.masks.size();
    std::vector<ElemSet> u_sets(count);
    std::vector<ElemSet> u_closures(count);
    for (std::size_t t = 0; t < count; ++t) {
        const std::uint32_t mi = nd.masks[t];
        ElemSet b = a_sets[t];
        for (std::size_t s = 0; s < t; ++s) {
            const std::uint32_t mj = nd.masks[s];
            if (mj != mi && (mj & ~mi) == 0) subtract_from(b, u_sets[s]);
        }
        ElemSet u = poset_min_open(cover.poset, b);
        ElemSet u_bar = poset_closure(cover.poset, u);

        ElemSet c(cover.poset.size(), 0);
        for (std::size_t s = 0; s < t; ++s) {
            const std::uint32_t mj = nd.masks[s];
            if (nd.lists[s].size() < nd.lists[t].size() && (mj & ~mi) != 0) {
                unite_into(c, u_closures[s]);
            }
        }
        for (std::size_t s = 0; s < count; ++s) {
            if ((mi & ~nd.masks[s]) != 0) unite_into(c, a_closures[s]);
        }
        if (any_common(u_bar, c)) {
            throw NoValidShrinking("closure of U_" + index_str(nd.lists[t]) +
                                   " meets its forbidden set");
        }
        for (std::size_t s = 0; s < t; ++s) {
            if (nd.lists[s].size() != nd.lists[t].size()) continue;
            if (any_common(u_bar, u_closures[s])) {
                throw NoValidShrinking("closures of U_" + index_str(nd.lists[s]) +
                                       " and U_" + index_str(nd.lists[t]) + " overlap");
            }
        }
        u_sets[t] = std::move(u);
        u_closures[t] = std::move(u_bar);
    }

    ShrinkResult result;
    result.index_sets = nd.lists;
    result.u_sets = std::move(u_sets);
    const int m = static_cast<int>(cover.sets.size());
    for (int i = 0; i < m; ++i) {
        ElemSet vp(cover.poset.size(), 1);
        for (std::size_t t = 0; t < count; ++t) {
            if (!((nd.masks[t] >> i) & 1u)) subtract_from(vp, u_closures[t]);
        }
        result.v_prime.push_back(std::move(vp));
    }
    if (!verify_shrink(cover, result)) {
        throw NoValidShrinking("constructed shrinking failed verification");
    }
    return result;
}

bool verify_shrink(const OpenCover& cover, const ShrinkResult& result) {
    const NerveData nd = compute_nerve(cover);
    const std::size_t count = nd.masks.size();
    const int n = cover.poset.size();
    const int m = static_cast<int>(cover.sets.size());

    if (result.index_sets != nd.lists) return false;
    if (result.u_sets.size() != count) return false;
    for (const ElemSet& u : result.u_sets) {
        if (static_cast<int>(u.size()) != n) return false;
    }
    if (result.v_prime.size() != static_cast<std::size_t>(m)) return false;
    for (const ElemSet& vp : result.v_prime) {
        if (static_cast<int>(vp.size()) != n) return false;
    }

    bool ok = true;
    std::vector<ElemSet> u_closures;
    u_closures.reserve(count);
    for (std::size_t t = 0; t < count; ++t) {
        ok = ok && poset_open(cover.poset, result.u_sets[t]);
        u_closures.push_back(poset_closure(cover.poset, result.u_sets[t]));
        ok = ok && subset_of(u_closures[t], nd.v_inter[t]);
    }

    for (std::size_t s = 0; s < count && ok; ++s) {
        for (std::size_t t = s + 1; t < count && ok; ++t) {
            const std::uint32_t ms = nd.masks[s];
            const std::uint32_t mt = nd.masks[t];
            if ((ms & ~mt) == 0 || (mt & ~ms) == 0) continue;
            if (any_common(u_closures[s], u_closures[t])) ok = false;
        }
    }

    const std::vector<ElemSet> a_sets = compute_a_sets(cover, nd);
    for (std::size_t t = 0; t < count && ok; ++t) {
        ElemSet covered(n, 0);
        for (std::size_t s = 0; s < count; ++s) {
            if ((nd.masks[s] & ~nd.masks[t]) == 0) unite_into(covered, result.u_sets[s]);
        }
        ok = ok && subset_of(poset_closure(cover.poset, a_sets[t]), covered);
    }

    ElemSet total(n, 0);
    for (int i = 0; i < m && ok; ++i) {
        ElemSet expected(n, 1);
        for (std::size_t t = 0; t < count; ++t) {
            if (!((nd.masks[t] >> i) & 1u)) subtract_from(expected, u_closures[t]);
        }
        ok = ok && sets_equal(result.v_prime[i], expected);
        unite_into(total, result.v_prime[i]);
        ok = ok && subset_of(poset_closure(cover.poset, result.v_prime[i]), cover.sets[i]);
    }
    for (int e = 0; e < n && ok; ++e) {
        if (!total[e]) ok = false;
    }
    return ok;
}

bool shrink_equivariant(const OpenCover& cover, const ShrinkResult& result,
                        const std::vector<int>& elem_image,
                        const std::vector<int>& index_image) {
    const int n = cover.poset.size();
    const int m = static_cast<int>(cover.sets.size());
    if (static_cast<int>(elem_image.size()) != n ||
        static_cast<int>(index_image.size()) != m) {
        throw DimensionError("automorphism data does not match the cover");
    }
    std::vector<char> seen(n, 0);
    for (int e : elem_image) {
        if (e < 0 || e >= n || seen[e]) {
            throw DimensionError("elem_image is not a permutation");
        }
        seen[e] = 1;
    }
    std::vector<char> seen_idx(m, 0);
    for (int i : index_image) {
        if (i < 0 || i >= m || seen_idx[i]) {
            throw DimensionError("index_image is not a permutation");
        }
        seen_idx[i] = 1;
    }
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (bool(cover.poset.leq[a][b]) !=
                bool(cover.poset.leq[elem_image[a]][elem_image[b]])) {
                throw DimensionError("elem_image is not a poset automorphism");
            }
        }
    }
    auto image = [&](const ElemSet& s) {
        ElemSet out(n, 0);
        for (int e = 0; e < n; ++e) {
            if (s[e]) out[elem_image[e]] = 1;
        }
        return out;
    };
    for (int i = 0; i < m; ++i) {
        if (!sets_equal(image(cover.sets[i]), cover.sets[index_image[i]])) {
            throw DimensionError("the map does not preserve the cover");
        }
    }
    std::map<std::vector<int>, std::size_t> position;
    for (std::size_t t = 0; t < result.index_sets.size(); ++t) {
        position[result.index_sets[t]] = t;
    }
    for (std::size_t t = 0; t < result.index_sets.size(); ++t) {
        std::vector<int> mapped;
        for (int i : result.index_sets[t]) mapped.push_back(index_image[i]);
        std::sort(mapped.begin(), mapped.end());
        auto it = position.find(mapped);
        if (it == position.end()) return false;
        if (!sets_equal(image(result.u_sets[t]), result.u_sets[it->second])) return false;
    }
    for (int i = 0; i < m; ++i) {
        if (!sets_equal(image(result.v_prime[i]), result.v_prime[index_image[i]])) {
            return false;
        }
    }
    return true;
}

}  // namespace gerbecalc
