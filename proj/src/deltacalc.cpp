#include "gerbecalc/deltacalc.hpp"

#include <utility>

#include "gerbecalc/errors.hpp"

namespace gerbecalc {

FaceWord face_word(int source_level, std::vector<int> indices) {
    FaceWord w{source_level, std::move(indices)};
    int level = w.source_level;
    for (int t = w.length() - 1; t >= 0; --t) {
        if (level < 1)
            throw IllFormedWord("face word descends below level 0");
        if (w.indices[t] < 0 || w.indices[t] > level)
            throw IllFormedWord("face index " + std::to_string(w.indices[t]) +
                                " exceeds level " + std::to_string(level));
        --level;
    }
    return w;
}

FaceWord normalize_face_word(FaceWord w, long long budget) {
    face_word(w.source_level, w.indices);
    long long steps = 0;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t t = 0; t + 1 < w.indices.size(); ++t) {
            if (w.indices[t] < w.indices[t + 1]) {
                int i = w.indices[t], j = w.indices[t + 1];
                w.indices[t] = j - 1;
                w.indices[t + 1] = i;
                changed = true;
                if (++steps > budget)
                    throw RewriteLimit("face word rewriting exceeded the step budget");
            }
        }
    }
    return w;
}

FaceWord compose_face_words(const FaceWord& outer, const FaceWord& inner,
                            long long budget) {
    if (inner.target_level() != outer.source_level)
        throw IllFormedWord("face words do not compose: inner target level " +
                            std::to_string(inner.target_level()) +
                            " does not match outer source level " +
                            std::to_string(outer.source_level));
    std::vector<int> idx = outer.indices;
    idx.insert(idx.end(), inner.indices.begin(), inner.indices.end());
    return normalize_face_word(face_word(inner.source_level, std::move(idx)), budget);
}

namespace {

/// Canonical pullback word for invisible generators: all indices zero.
FaceWord invisible_word(int source_level, int gen_level) {
    return FaceWord{source_level,
                    std::vector<int>(static_cast<std::size_t>(source_level - gen_level), 0)};
}

void add_term(Word& w, Term t, const Int& e) {
    if (e == 0) return;
    auto it = w.terms.find(t);
    if (it == w.terms.end()) {
        w.terms.emplace(std::move(t), e);
    } else {
        it->second += e;
        if (it->second == 0) w.terms.erase(it);
    }
}

}  // namespace

Word empty_word(int level) { return Word{level, {}}; }

Word gen_word(const Gen& g) {
    Word w{g.level, {}};
    w.terms.emplace(Term{g, FaceWord{g.level, {}}}, Int(1));
    return w;
}

Word mul(const Word& a, const Word& b) {
    if (a.level != b.level)
        throw DimensionError("cannot multiply words at different levels");
    Word r = a;
    for (const auto& [t, e] : b.terms) add_term(r, t, e);
    return r;
}

Word inv(const Word& a) { return pow_word(a, Int(-1)); }

Word pow_word(const Word& a, const Int& e) {
    Word r{a.level, {}};
    if (e == 0) return r;
    for (const auto& [t, x] : a.terms) r.terms.emplace(t, x * e);
    return r;
}

Word pullback(const Word& a, const FaceWord& by, long long budget) {
    if (by.target_level() != a.level)
        throw DimensionError("pullback word target level " +
                             std::to_string(by.target_level()) +
                             " does not match word level " + std::to_string(a.level));
    Word r{by.source_level, {}};
    for (const auto& [t, e] : a.terms) {
        Term nt{t.gen, {}};
        if (t.gen.invisible)
            nt.word = invisible_word(by.source_level, t.gen.level);
        else
            nt.word = compose_face_words(t.word, by, budget);
        add_term(r, std::move(nt), e);
    }
    return r;
}

Word delta(const Word& a, long long budget) {
    Word r{a.level + 1, {}};
    for (int i = 0; i <= a.level + 1; ++i) {
        FaceWord face{a.level + 1, {i}};
        Word p = pullback(a, face, budget);
        for (const auto& [t, e] : p.terms) add_term(r, t, i % 2 == 0 ? e : Int(-e));
    }
    return r;
}

Word section_bundle(const SymbolTable& st, const Word& sec, long long budget) {
    Word r{sec.level, {}};
    for (const auto& [t, e] : sec.terms) {
        auto it = st.section_home.find(t.gen.name);
        if (it == st.section_home.end())
            throw GlueTypeError("no home bundle declared for section generator " +
                                t.gen.name);
        const Word& home = it->second;
        if (home.level != t.gen.level)
            throw GlueTypeError("home bundle of " + t.gen.name +
                                " lives at the wrong level");
        if (t.gen.invisible)
            for (const auto& [ht, he] : home.terms)
                if (!ht.gen.invisible)
                    throw GlueTypeError("invisible section generator " + t.gen.name +
                                        " needs a home pulled back from the base");
        FaceWord by = t.gen.invisible
                          ? invisible_word(sec.level, t.gen.level)
                          : t.word;
        Word contrib = pow_word(pullback(home, by, budget), e);
        r = mul(r, contrib);
    }
    return r;
}

}  // namespace gerbecalc
