#include "gerbecalc/root_system.hpp"

#include <algorithm>
#include <cctype>
#include <queue>
#include <set>
#include <stdexcept>

#include "gerbecalc/errors.hpp"

namespace gerbecalc {

LieType LieType::parse(const std::string& s) {
    if (s.size() < 2) throw InvalidType("not a Lie type: '" + s + "'");
    char c = s[0];
    static const std::string letters = "ABCDEFG";
    auto pos = letters.find(c);
    if (pos == std::string::npos) throw InvalidType("unknown series in '" + s + "'");
    for (std::size_t i = 1; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            throw InvalidType("malformed rank in '" + s + "'");
    if (s.size() > 3) throw InvalidType("rank out of range in '" + s + "'");
    int rank = std::stoi(s.substr(1));
    LieType t{static_cast<Series>(pos), rank};
    bool ok = false;
    switch (t.series) {
        case Series::A: ok = rank >= 1; break;
        case Series::B: ok = rank >= 2; break;
        case Series::C: ok = rank >= 2; break;
        case Series::D: ok = rank >= 3; break;
        case Series::E: ok = rank == 6 || rank == 7 || rank == 8; break;
        case Series::F: ok = rank == 4; break;
        case Series::G: ok = rank == 2; break;
    }
    if (!ok) throw InvalidType("invalid rank for series: '" + s + "'");
    return t;
}

std::string LieType::str() const {
    static const char* letters = "ABCDEFG";
    return std::string(1, letters[static_cast<int>(series)]) + std::to_string(rank);
}

namespace {

/// Gram matrix of the simple roots, basic normalization (long roots norm-square 2).
QMat simple_root_gram(LieType t) {
    int d = t.rank;
    QMat r(d, d);
    auto set_diag = [&](int i, Rat v) { r.at(i - 1, i - 1) = v; };
    auto set_edge = [&](int i, int j, Rat v) {
        r.at(i - 1, j - 1) = v;
        r.at(j - 1, i - 1) = v;
    };
    switch (t.series) {
        case Series::A:
            for (int i = 1; i <= d; ++i) set_diag(i, 2);
            for (int i = 1; i < d; ++i) set_edge(i, i + 1, -1);
            break;
        case Series::B:
            // alpha_d is the short root.
            for (int i = 1; i < d; ++i) set_diag(i, 2);
            set_diag(d, 1);
            for (int i = 1; i < d; ++i) set_edge(i, i + 1, -1);
            break;
        case Series::C:
            // alpha_d is the long root.
            for (int i = 1; i < d; ++i) set_diag(i, 1);
            set_diag(d, 2);
            for (int i = 1; i + 1 < d; ++i) set_edge(i, i + 1, Rat(-1, 2));
            set_edge(d - 1, d, -1);
            break;
        case Series::D:
            for (int i = 1; i <= d; ++i) set_diag(i, 2);
            for (int i = 1; i + 1 < d; ++i) set_edge(i, i + 1, -1);
            set_edge(d - 2, d, -1);
            break;
        case Series::E:
            for (int i = 1; i <= d; ++i) set_diag(i, 2);
            set_edge(1, 3, -1);
            set_edge(3, 4, -1);
            set_edge(4, 5, -1);
            set_edge(5, 6, -1);
            set_edge(2, 4, -1);
            if (d >= 7) set_edge(6, 7, -1);
            if (d >= 8) set_edge(7, 8, -1);
            break;
        case Series::F:
            // alpha_1, alpha_2 long; alpha_3, alpha_4 short.
            set_diag(1, 2);
            set_diag(2, 2);
            set_diag(3, 1);
            set_diag(4, 1);
            set_edge(1, 2, -1);
            set_edge(2, 3, -1);
            set_edge(3, 4, Rat(-1, 2));
            break;
        case Series::G:
            // alpha_1 short, alpha_2 long.
            set_diag(1, Rat(2, 3));
            set_diag(2, 2);
            set_edge(1, 2, -1);
            break;
    }
    return r;
}

}  // namespace

QVec RootSystem::ambient(const ZVec& root) const {
    QVec v(rank);
    for (int i = 0; i < rank; ++i) v[i] = Rat(root[i]) * half_norms[i];
    return v;
}

Rat RootSystem::pair(const QVec& x, const QVec& y) const {
    Rat s(0);
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j) s += x[i] * coroot_gram.at(i, j) * y[j];
    return s;
}

Rat RootSystem::pair_root(const ZVec& root, const QVec& xi) const {
    // (alpha, xi) = sum_i c_i (alpha_i, xi) and (alpha_i, xi) = d_i (B xi)_i.
    Rat s(0);
    for (int i = 0; i < rank; ++i) {
        if (root[i] == 0) continue;
        Rat row(0);
        for (int j = 0; j < rank; ++j) row += coroot_gram.at(i, j) * xi[j];
        s += Rat(root[i]) * half_norms[i] * row;
    }
    return s;
}

Rat RootSystem::root_normsq(const ZVec& root) const {
    Rat s(0);
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j)
            s += Rat(root[i]) * simple_gram.at(i, j) * Rat(root[j]);
    return s;
}

QVec RootSystem::coroot_ambient(const ZVec& root) const {
    Rat half = root_normsq(root) / 2;
    QVec v = ambient(root);
    for (auto& x : v) x /= half;
    return v;
}

bool RootSystem::is_root(const ZVec& v) const {
    return std::binary_search(roots.begin(), roots.end(), v);
}

bool RootSystem::is_positive(const ZVec& root) const {
    for (const auto& c : root)
        if (c < 0) return false;
    return true;
}

RootSystem build_root_system(LieType type) {
    RootSystem rs;
    rs.type = type;
    rs.rank = type.rank;
    rs.simple_gram = simple_root_gram(type);
    int d = rs.rank;

    rs.half_norms.resize(d);
    for (int i = 0; i < d; ++i) rs.half_norms[i] = rs.simple_gram.at(i, i) / 2;

    rs.coroot_gram = QMat(d, d);
    rs.cartan = ZMat(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            rs.coroot_gram.at(i, j) =
                rs.simple_gram.at(i, j) / (rs.half_norms[i] * rs.half_norms[j]);
            Rat n = rs.simple_gram.at(i, j) / rs.half_norms[j];
            if (!is_integer(n)) throw std::logic_error("non-integral Cartan pairing");
            rs.cartan.at(i, j) = n.get_num();
        }

    // Closure of the simple roots under the simple reflections
    // s_j(beta) = beta - <beta, coroot_j> alpha_j.
    std::set<ZVec> seen;
    std::queue<ZVec> todo;
    for (int i = 0; i < d; ++i) {
        ZVec e(d, Int(0));
        e[i] = 1;
        seen.insert(e);
        todo.push(e);
    }
    while (!todo.empty()) {
        ZVec c = todo.front();
        todo.pop();
        for (int j = 0; j < d; ++j) {
            Int p(0);
            for (int i = 0; i < d; ++i) p += c[i] * rs.cartan.at(i, j);
            ZVec r = c;
            r[j] -= p;
            if (seen.insert(r).second) todo.push(r);
        }
    }
    rs.roots.assign(seen.begin(), seen.end());

    // Highest root: the positive root with maximal coefficient sum.
    bool have = false;
    Int best_sum(0);
    for (const auto& r : rs.roots) {
        if (!rs.is_positive(r)) continue;
        Int s(0);
        for (const auto& c : r) s += c;
        if (!have || s > best_sum) {
            have = true;
            best_sum = s;
            rs.highest_root = r;
        }
    }
    if (!have) throw std::logic_error("no positive root found");
    return rs;
}

QMat basic_gram(LieType type) {
    QMat r = simple_root_gram(type);
    int d = type.rank;
    QMat b(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            b.at(i, j) = r.at(i, j) / (r.at(i, i) / 2 * (r.at(j, j) / 2));
    return b;
}

}  // namespace gerbecalc
