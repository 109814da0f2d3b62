// The GL_q(N) R-matrix and the numerical data derived from it: inverse,
// second inverse, the D matrix, and the Yang-Baxter / Hecke validations.
//
// Index convention: a 4-leg tensor entry R[{i,j,k,l}] is R^{ij}_{kl}, the
// matrix element with row (i,j) and column (k,l) on V (x) V. The deformed
// entry lambda = q - q^-1 sits at R^{ij}_{ji} for i > j; this is the choice
// that makes the pairing <T_1, L_2^+> = R_12 produce upper-triangular l^+
// functionals (the i < j placement also satisfies all validation conditions
// and can be supplied through an external tensor file).
#pragma once

#include <optional>
#include <string>

#include "qgx/tensor.hpp"

namespace qgx {

namespace detail {

inline int flat2(int n, int a, int b) { return (a - 1) * n + (b - 1); }

} // namespace detail

inline Matrix to_matrix2(const IndexedTensor& t) {
    const int n = t.n();
    Matrix m(static_cast<std::size_t>(n) * n, std::vector<RatFunc>(static_cast<std::size_t>(n) * n, RatFunc(0)));
    for (const auto& [idx, val] : t.entries())
        m[detail::flat2(n, idx[0], idx[1])][detail::flat2(n, idx[2], idx[3])] = val;
    return m;
}

inline IndexedTensor from_matrix2(int n, const Matrix& m) {
    IndexedTensor t(n, 4);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k)
                for (int l = 1; l <= n; ++l) {
                    const RatFunc& v = m[detail::flat2(n, i, j)][detail::flat2(n, k, l)];
                    if (!v.is_zero()) t.set({i, j, k, l}, v);
                }
    return t;
}

// R_21 = P R P (swap both index pairs).
inline IndexedTensor swap_legs(const IndexedTensor& t) {
    IndexedTensor r(t.n(), 4);
    for (const auto& [idx, val] : t.entries()) r.set({idx[1], idx[0], idx[3], idx[2]}, val);
    return r;
}

// Transpose in the second tensor factor: (M^{t2})^{ij}_{kl} = M^{il}_{kj}.
inline IndexedTensor transpose2(const IndexedTensor& t) {
    IndexedTensor r(t.n(), 4);
    for (const auto& [idx, val] : t.entries()) r.set({idx[0], idx[3], idx[2], idx[1]}, val);
    return r;
}

inline IndexedTensor build_r(int n) {
    IndexedTensor r(n, 4);
    RatFunc q = RatFunc::q();
    RatFunc lam = RatFunc::lambda();
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) r.set({i, j, i, j}, i == j ? q : RatFunc(1));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (i > j) r.set({i, j, j, i}, lam);
    return r;
}

inline IndexedTensor invert_r(const IndexedTensor& r) {
    return from_matrix2(r.n(), exact_inverse(to_matrix2(r), "R as an n^2 x n^2 matrix"));
}

// ---- Yang-Baxter ------------------------------------------------------------

namespace detail {

inline int flat3(int n, int a, int b, int c) { return ((a - 1) * n + (b - 1)) * n + (c - 1); }

// Lift a 4-leg tensor to an operator on V^{(x)3} acting on legs (p,r).
inline Matrix lift3(const IndexedTensor& t, int p, int r) {
    const int n = t.n();
    const std::size_t dim = static_cast<std::size_t>(n) * n * n;
    Matrix m(dim, std::vector<RatFunc>(dim, RatFunc(0)));
    for (const auto& [idx, val] : t.entries()) {
        for (int s = 1; s <= n; ++s) {
            int row[3], col[3];
            row[p] = idx[0];
            row[r] = idx[1];
            col[p] = idx[2];
            col[r] = idx[3];
            int spect = 3 - p - r;
            row[spect] = s;
            col[spect] = s;
            m[flat3(n, row[0], row[1], row[2])][flat3(n, col[0], col[1], col[2])] = val;
        }
    }
    return m;
}

} // namespace detail

// Returns the first index tuple where R12 R13 R23 and R23 R13 R12 differ.
inline std::optional<MultiIndex> ybe_witness(const IndexedTensor& r) {
    const int n = r.n();
    Matrix r12 = detail::lift3(r, 0, 1), r13 = detail::lift3(r, 0, 2), r23 = detail::lift3(r, 1, 2);
    Matrix lhs = matrix_product(matrix_product(r12, r13), r23);
    Matrix rhs = matrix_product(matrix_product(r23, r13), r12);
    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b)
            for (int c = 1; c <= n; ++c)
                for (int x = 1; x <= n; ++x)
                    for (int y = 1; y <= n; ++y)
                        for (int z = 1; z <= n; ++z)
                            if (lhs[detail::flat3(n, a, b, c)][detail::flat3(n, x, y, z)] !=
                                rhs[detail::flat3(n, a, b, c)][detail::flat3(n, x, y, z)])
                                return MultiIndex{a, b, c, x, y, z};
    return std::nullopt;
}

inline bool check_ybe(const IndexedTensor& r) { return !ybe_witness(r).has_value(); }

// ---- Hecke ------------------------------------------------------------------

// R^{ij}_{pq} = (R^-1)^{ji}_{qp} + lambda d^i_q d^j_p, entrywise.
inline std::optional<MultiIndex> hecke_witness(const IndexedTensor& r, const IndexedTensor& rinv) {
    const int n = r.n();
    RatFunc lam = RatFunc::lambda();
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int p = 1; p <= n; ++p)
                for (int q = 1; q <= n; ++q) {
                    RatFunc rhs = rinv.get({j, i, q, p});
                    if (i == q && j == p) rhs += lam;
                    if (r.get({i, j, p, q}) != rhs) return MultiIndex{i, j, p, q};
                }
    return std::nullopt;
}

inline bool check_hecke(const IndexedTensor& r, const IndexedTensor& rinv) {
    return !hecke_witness(r, rinv).has_value();
}

inline bool check_hecke(const IndexedTensor& r) { return check_hecke(r, invert_r(r)); }

// ---- second inverse and D ----------------------------------------------------

// Solves R^{mj}_{pn} Rt^{in}_{mq} = d^i_p d^j_q (and the transposed order)
// exactly: Rt = ((R^{t2})^{-1})^{t2}.
inline IndexedTensor second_inverse(const IndexedTensor& r) {
    Matrix a = to_matrix2(transpose2(r));
    Matrix ainv = exact_inverse(a, "partial transpose R^{t2}");
    return transpose2(from_matrix2(r.n(), ainv));
}

// D^i_j = Rt^{mi}_{jm}.
inline IndexedTensor trace_d(const IndexedTensor& rtilde) {
    const int n = rtilde.n();
    IndexedTensor d(n, 2);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            RatFunc acc(0);
            for (int m = 1; m <= n; ++m) acc += rtilde.get({m, i, j, m});
            d.set({i, j}, acc);
        }
    return d;
}

inline IndexedTensor invert_2leg(const IndexedTensor& d, const std::string& what) {
    const int n = d.n();
    Matrix m(n, std::vector<RatFunc>(n, RatFunc(0)));
    for (const auto& [idx, val] : d.entries()) m[idx[0] - 1][idx[1] - 1] = val;
    Matrix inv = exact_inverse(m, what);
    IndexedTensor r(n, 2);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) r.set({i, j}, inv[i - 1][j - 1]);
    return r;
}

// Both contraction orders of the second-inverse definition.
inline bool check_second_inverse(const IndexedTensor& r, const IndexedTensor& rt) {
    const int n = r.n();
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int p = 1; p <= n; ++p)
                for (int q = 1; q <= n; ++q) {
                    RatFunc s1(0), s2(0);
                    for (int m = 1; m <= n; ++m)
                        for (int nn = 1; nn <= n; ++nn) {
                            s1 += r.get({m, j, p, nn}) * rt.get({i, nn, m, q});
                            s2 += rt.get({m, j, p, nn}) * r.get({i, nn, m, q});
                        }
                    RatFunc want(i == p && j == q ? 1 : 0);
                    if (s1 != want || s2 != want) return false;
                }
    return true;
}

// ---- bundle ------------------------------------------------------------------

// Everything numeric derived from one R, validated on construction paths
// that demand it.
struct RBundle {
    int n = 0;
    IndexedTensor R, Rinv, Rtilde;  // 4-leg
    IndexedTensor D, Dinv;          // 2-leg
    RatFunc lambda;

    static RBundle from_r(const IndexedTensor& r) {
        RBundle b;
        b.n = r.n();
        b.R = r;
        b.Rinv = invert_r(r);
        b.Rtilde = second_inverse(r);
        b.D = trace_d(b.Rtilde);
        b.Dinv = invert_2leg(b.D, "D matrix");
        b.lambda = RatFunc::lambda();
        return b;
    }

    static RBundle standard(int n) {
        RBundle b = from_r(build_r(n));
        if (!b.validate()) throw consistency_error("standard R bundle failed validation");
        return b;
    }

    bool validate() const {
        if (!check_ybe(R)) return false;
        if (!check_hecke(R, Rinv)) return false;
        if (!is_identity(matrix_product(to_matrix2(R), to_matrix2(Rinv)))) return false;
        if (!is_identity(matrix_product(to_matrix2(Rinv), to_matrix2(R)))) return false;
        if (!check_second_inverse(R, Rtilde)) return false;
        return true;
    }
};

} // namespace qgx
