#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "gerbecalc/rational.hpp"

namespace gerbecalc {

inline constexpr long long kDefaultRewriteBudget = 1'000'000;

/// A composite of simplicial face maps d_{i_1} o ... o d_{i_k}, read right to
/// left, acting from the given source level. Step t leaves level
/// source_level - (k - t), and its index must lie in [0, that level].
struct FaceWord {
    int source_level = 0;
    std::vector<int> indices;

    int length() const { return static_cast<int>(indices.size()); }
    int target_level() const { return source_level - length(); }
    auto operator<=>(const FaceWord&) const = default;
};

/// Validates the index ranges; throws IllFormedWord.
FaceWord face_word(int source_level, std::vector<int> indices);

/// Unique normal form under d_i d_j -> d_{j-1} d_i for i < j; the result has
/// weakly decreasing indices. Throws RewriteLimit past the step budget.
FaceWord normalize_face_word(FaceWord w, long long budget = kDefaultRewriteBudget);

/// outer o inner, normalized.
FaceWord compose_face_words(const FaceWord& outer, const FaceWord& inner,
                            long long budget = kDefaultRewriteBudget);

/// A formal generator symbol living at a fixed simplicial level. Invisible
/// generators are pullbacks from the base: every face-map pullback of such a
/// generator is identified, so its face word is canonicalized.
struct Gen {
    std::string name;
    int level = 0;
    bool invisible = false;

    auto operator<=>(const Gen&) const = default;
};

/// A generator together with a normalized pullback word; word.target_level()
/// equals gen.level and word.source_level is the level the term lives at.
struct Term {
    Gen gen;
    FaceWord word;

    auto operator<=>(const Term&) const = default;
};

/// Formal product of pulled-back generators with integer exponents, in normal
/// form: terms sorted by (generator, face word), zero exponents removed. The
/// empty word is the canonical trivial bundle (or section, or 2-form).
struct Word {
    int level = 0;
    std::map<Term, Int> terms;

    bool empty() const { return terms.empty(); }
    bool operator==(const Word&) const = default;
};

Word empty_word(int level);
/// The generator as a word at its home level.
Word gen_word(const Gen& g);
Word mul(const Word& a, const Word& b);
Word inv(const Word& a);
Word pow_word(const Word& a, const Int& e);
/// Pullback along a face word whose target level is a.level.
Word pullback(const Word& a, const FaceWord& by,
              long long budget = kDefaultRewriteBudget);
/// The alternating face pullback product, fully normalized.
Word delta(const Word& a, long long budget = kDefaultRewriteBudget);

/// Home bundles of section generators, keyed by generator name.
struct SymbolTable {
    std::map<std::string, Word> section_home;
};

/// The bundle a section word is a section of: the product of the sections'
/// home bundles pulled back by the sections' face words.
Word section_bundle(const SymbolTable& st, const Word& sec,
                    long long budget = kDefaultRewriteBudget);

}  // namespace gerbecalc
