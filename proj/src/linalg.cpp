#include "gerbecalc/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace gerbecalc {

namespace {

void swap_rows(QMat& a, std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < a.cols; ++c) std::swap(a.at(i, c), a.at(j, c));
}

/// Reduced row echelon form over the first `limit` columns; returns pivot columns.
std::vector<std::size_t> rref(QMat& a, std::size_t limit) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < limit && r < a.rows; ++c) {
        std::size_t p = r;
        while (p < a.rows && a.at(p, c) == 0) ++p;
        if (p == a.rows) continue;
        swap_rows(a, p, r);
        Rat inv = Rat(1) / a.at(r, c);
        for (std::size_t j = c; j < a.cols; ++j) a.at(r, j) *= inv;
        for (std::size_t i = 0; i < a.rows; ++i) {
            if (i == r || a.at(i, c) == 0) continue;
            Rat f = a.at(i, c);
            for (std::size_t j = c; j < a.cols; ++j) a.at(i, j) -= f * a.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

Rat det(QMat a) {
    if (a.rows != a.cols) throw std::logic_error("det: matrix not square");
    Rat d(1);
    for (std::size_t c = 0; c < a.cols; ++c) {
        std::size_t p = c;
        while (p < a.rows && a.at(p, c) == 0) ++p;
        if (p == a.rows) return Rat(0);
        if (p != c) {
            swap_rows(a, p, c);
            d = -d;
        }
        d *= a.at(c, c);
        for (std::size_t i = c + 1; i < a.rows; ++i) {
            if (a.at(i, c) == 0) continue;
            Rat f = a.at(i, c) / a.at(c, c);
            for (std::size_t j = c; j < a.cols; ++j) a.at(i, j) -= f * a.at(c, j);
        }
    }
    return d;
}

long rank(QMat a) { return static_cast<long>(rref(a, a.cols).size()); }

std::optional<QVec> solve(const QMat& a, const QVec& b) {
    if (b.size() != a.rows) throw std::logic_error("solve: size mismatch");
    QMat aug(a.rows, a.cols + 1);
    for (std::size_t i = 0; i < a.rows; ++i) {
        for (std::size_t j = 0; j < a.cols; ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, a.cols) = b[i];
    }
    auto pivots = rref(aug, a.cols);
    for (std::size_t i = pivots.size(); i < a.rows; ++i)
        if (aug.at(i, a.cols) != 0) return std::nullopt;
    QVec x(a.cols, Rat(0));
    for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = aug.at(k, a.cols);
    return x;
}

std::optional<QMat> solve_matrix(const QMat& a, const QMat& b) {
    if (b.rows != a.rows) throw std::logic_error("solve_matrix: size mismatch");
    QMat x(a.cols, b.cols);
    for (std::size_t j = 0; j < b.cols; ++j) {
        auto xj = solve(a, b.col(j));
        if (!xj) return std::nullopt;
        for (std::size_t i = 0; i < a.cols; ++i) x.at(i, j) = (*xj)[i];
    }
    return x;
}

QMat inverse(const QMat& a) {
    if (a.rows != a.cols) throw std::logic_error("inverse: matrix not square");
    std::size_t n = a.rows;
    QMat aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, n + i) = Rat(1);
    }
    auto pivots = rref(aug, n);
    if (pivots.size() != n) throw std::logic_error("inverse: singular matrix");
    QMat r(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r.at(i, j) = aug.at(i, n + j);
    return r;
}

QMat nullspace(const QMat& a0) {
    QMat a = a0;
    auto pivots = rref(a, a.cols);
    std::vector<bool> is_pivot(a.cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::size_t nullity = a.cols - pivots.size();
    QMat k(a.cols, nullity);
    std::size_t idx = 0;
    for (std::size_t f = 0; f < a.cols; ++f) {
        if (is_pivot[f]) continue;
        k.at(f, idx) = Rat(1);
        for (std::size_t r = 0; r < pivots.size(); ++r) k.at(pivots[r], idx) = -a.at(r, f);
        ++idx;
    }
    return k;
}

namespace {

void zswap_rows(ZMat& a, std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < a.cols; ++c) std::swap(a.at(i, c), a.at(j, c));
}

void zaddmul_row(ZMat& a, std::size_t dst, std::size_t src, const Int& q) {
    if (q == 0) return;
    for (std::size_t c = 0; c < a.cols; ++c) a.at(dst, c) += q * a.at(src, c);
}

void zswap_cols(ZMat& a, std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < a.rows; ++r) std::swap(a.at(r, i), a.at(r, j));
}

void zaddmul_col(ZMat& a, std::size_t dst, std::size_t src, const Int& q) {
    if (q == 0) return;
    for (std::size_t r = 0; r < a.rows; ++r) a.at(r, dst) += q * a.at(r, src);
}

void znegate_row(ZMat& a, std::size_t i) {
    for (std::size_t c = 0; c < a.cols; ++c) a.at(i, c) = -a.at(i, c);
}

}  // namespace

ZMat row_hermite(const ZMat& a0) {
    ZMat h = a0;
    std::size_t r = 0;
    for (std::size_t c = 0; c < h.cols && r < h.rows; ++c) {
        while (true) {
            std::size_t best = h.rows;
            for (std::size_t i = r; i < h.rows; ++i) {
                if (h.at(i, c) == 0) continue;
                if (best == h.rows || abs(h.at(i, c)) < abs(h.at(best, c))) best = i;
            }
            if (best == h.rows) break;
            zswap_rows(h, best, r);
            if (h.at(r, c) < 0) znegate_row(h, r);
            bool residue = false;
            for (std::size_t i = r + 1; i < h.rows; ++i) {
                if (h.at(i, c) == 0) continue;
                zaddmul_row(h, i, r, -fdiv(h.at(i, c), h.at(r, c)));
                if (h.at(i, c) != 0) residue = true;
            }
            if (!residue) {
                for (std::size_t i = 0; i < r; ++i)
                    zaddmul_row(h, i, r, -fdiv(h.at(i, c), h.at(r, c)));
                ++r;
                break;
            }
        }
    }
    ZMat out(r, h.cols);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < h.cols; ++j) out.at(i, j) = h.at(i, j);
    return out;
}

SmithResult smith_normal_form(const ZMat& a) {
    std::size_t m = a.rows, n = a.cols;
    SmithResult s;
    s.d = a;
    s.u = ZMat::identity(m);
    s.v = ZMat::identity(n);
    ZMat& d = s.d;

    std::size_t t = 0;
    std::size_t mn = std::min(m, n);
    while (t < mn) {
        std::size_t pi = m, pj = n;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j) {
                if (d.at(i, j) == 0) continue;
                if (pi == m || abs(d.at(i, j)) < abs(d.at(pi, pj))) {
                    pi = i;
                    pj = j;
                }
            }
        if (pi == m) break;
        zswap_rows(d, t, pi);
        zswap_rows(s.u, t, pi);
        zswap_cols(d, t, pj);
        zswap_cols(s.v, t, pj);

        bool stable = false;
        while (!stable) {
            stable = true;
            for (std::size_t i = t + 1; i < m && stable; ++i) {
                if (d.at(i, t) == 0) continue;
                Int q = -fdiv(d.at(i, t), d.at(t, t));
                zaddmul_row(d, i, t, q);
                zaddmul_row(s.u, i, t, q);
                if (d.at(i, t) != 0) {
                    zswap_rows(d, t, i);
                    zswap_rows(s.u, t, i);
                    stable = false;
                }
            }
            if (!stable) continue;
            for (std::size_t j = t + 1; j < n && stable; ++j) {
                if (d.at(t, j) == 0) continue;
                Int q = -fdiv(d.at(t, j), d.at(t, t));
                zaddmul_col(d, j, t, q);
                zaddmul_col(s.v, j, t, q);
                if (d.at(t, j) != 0) {
                    zswap_cols(d, t, j);
                    zswap_cols(s.v, t, j);
                    stable = false;
                }
            }
            if (!stable) continue;
            Int p = d.at(t, t);
            for (std::size_t i = t + 1; i < m && stable; ++i)
                for (std::size_t j = t + 1; j < n && stable; ++j)
                    if (d.at(i, j) % p != 0) {
                        zaddmul_row(d, t, i, Int(1));
                        zaddmul_row(s.u, t, i, Int(1));
                        stable = false;
                    }
        }
        if (d.at(t, t) < 0) {
            znegate_row(d, t);
            znegate_row(s.u, t);
        }
        ++t;
    }
    s.rank = t;
    for (std::size_t i = 0; i < t; ++i) s.diag.push_back(d.at(i, i));
    return s;
}

std::optional<ZVec> solve_integer(const ZMat& a, const ZVec& b) {
    if (b.size() != a.rows) throw std::logic_error("solve_integer: size mismatch");
    auto s = smith_normal_form(a);
    ZVec c = mat_vec(s.u, b);
    ZVec y(a.cols, Int(0));
    for (std::size_t i = 0; i < s.rank; ++i) {
        if (c[i] % s.diag[i] != 0) return std::nullopt;
        y[i] = c[i] / s.diag[i];
    }
    for (std::size_t i = s.rank; i < a.rows; ++i)
        if (c[i] != 0) return std::nullopt;
    return mat_vec(s.v, y);
}

ZMat integer_kernel(const ZMat& a) {
    auto s = smith_normal_form(a);
    std::size_t k = a.cols - s.rank;
    ZMat ker(a.cols, k);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < a.cols; ++i) ker.at(i, j) = s.v.at(i, s.rank + j);
    return ker;
}

ZMat scale_rows_integral(const QMat& a) {
    ZMat r(a.rows, a.cols);
    for (std::size_t i = 0; i < a.rows; ++i) {
        Int l(1);
        for (std::size_t j = 0; j < a.cols; ++j) l = lcm(l, a.at(i, j).get_den());
        for (std::size_t j = 0; j < a.cols; ++j) {
            Rat scaled = a.at(i, j) * Rat(l);
            r.at(i, j) = scaled.get_num();
        }
    }
    return r;
}

}  // namespace gerbecalc
