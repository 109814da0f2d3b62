// Numerical structure constants of the calculus, all derived by pairing the
// f / phi / chi / chi-tilde functionals against the r words. Tensor indices
// are doubled matrix indices flattened row-major to 1..n^2 and listed in the
// order they are written in the defining equations:
//   sigma[{i,j,k,l}] = sigma_{ij}^{kl} = <f^k_j, r^l_i>
//   C[{i,j,k}]       = C_{ij}^k        = <chi_j, r^k_i>
// sigma-tilde is computed twice, as the inverse of sigma and by pairing phi
// against r; the two routes must agree exactly.
#pragma once

#include "qgx/pairing.hpp"

namespace qgx {

struct StructureConstants {
    int n = 0;
    IndexedTensor sigma;        // 4-leg over n^2
    IndexedTensor sigma_tilde;  // 4-leg over n^2
    IndexedTensor C;            // 3-leg over n^2
    IndexedTensor C_tilde;      // 3-leg over n^2

    RatFunc sigma_at(DIdx i, DIdx j, DIdx k, DIdx l) const {
        return sigma.get({flatten(i, n) + 1, flatten(j, n) + 1, flatten(k, n) + 1, flatten(l, n) + 1});
    }
    RatFunc sigma_tilde_at(DIdx i, DIdx j, DIdx k, DIdx l) const {
        return sigma_tilde.get({flatten(i, n) + 1, flatten(j, n) + 1, flatten(k, n) + 1, flatten(l, n) + 1});
    }
    RatFunc c_at(DIdx i, DIdx j, DIdx k) const {
        return C.get({flatten(i, n) + 1, flatten(j, n) + 1, flatten(k, n) + 1});
    }
    RatFunc c_tilde_at(DIdx i, DIdx j, DIdx k) const {
        return C_tilde.get({flatten(i, n) + 1, flatten(j, n) + 1, flatten(k, n) + 1});
    }
};

namespace detail {

// sigma as a matrix: row = flattened upper pair (k,l), col = lower pair (i,j).
inline Matrix sigma_matrix(const IndexedTensor& sigma) {
    const int m = sigma.n();  // n^2
    Matrix mat(static_cast<std::size_t>(m) * m, std::vector<RatFunc>(static_cast<std::size_t>(m) * m, RatFunc(0)));
    for (const auto& [idx, val] : sigma.entries()) {
        std::size_t row = static_cast<std::size_t>((idx[2] - 1) * m + (idx[3] - 1));
        std::size_t col = static_cast<std::size_t>((idx[0] - 1) * m + (idx[1] - 1));
        mat[row][col] = val;
    }
    return mat;
}

inline IndexedTensor sigma_from_matrix(int m, const Matrix& mat) {
    IndexedTensor t(m, 4);
    for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l)
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) {
                    const RatFunc& v = mat[static_cast<std::size_t>(k * m + l)][static_cast<std::size_t>(i * m + j)];
                    if (!v.is_zero()) t.set({i + 1, j + 1, k + 1, l + 1}, v);
                }
    return t;
}

} // namespace detail

inline StructureConstants derive_constants(const PairingEngine& e) {
    const int n = e.n();
    const int m = n * n;
    StructureConstants sc;
    sc.n = n;
    sc.sigma = IndexedTensor(m, 4);
    sc.sigma_tilde = IndexedTensor(m, 4);
    sc.C = IndexedTensor(m, 3);
    sc.C_tilde = IndexedTensor(m, 3);

    std::vector<DualElem> chi(static_cast<std::size_t>(m)), chit(static_cast<std::size_t>(m));
    for_each_didx(n, [&](DIdx a) {
        chi[static_cast<std::size_t>(flatten(a, n))] = e.chi(a);
        chit[static_cast<std::size_t>(flatten(a, n))] = e.chi_tilde(a);
    });

    for_each_didx(n, [&](DIdx i) {
        for_each_didx(n, [&](DIdx j) {
            AElem r_ki;  // r^k_i varies over k below; C uses the same loop
            for_each_didx(n, [&](DIdx k) {
                sc.C.set({flatten(i, n) + 1, flatten(j, n) + 1, flatten(k, n) + 1},
                         e.pair(chi[static_cast<std::size_t>(flatten(j, n))], e.r_word(k, i)));
                sc.C_tilde.set({flatten(i, n) + 1, flatten(j, n) + 1, flatten(k, n) + 1},
                               e.pair(chit[static_cast<std::size_t>(flatten(j, n))], e.r_word(k, i)));
                for_each_didx(n, [&](DIdx l) {
                    sc.sigma.set({flatten(i, n) + 1, flatten(j, n) + 1, flatten(k, n) + 1, flatten(l, n) + 1},
                                 e.pair(e.f(k, j), e.r_word(l, i)));
                });
            });
        });
    });

    // route 1: inverse of sigma
    Matrix inv = exact_inverse(detail::sigma_matrix(sc.sigma), "sigma as a map on the doubled square space");
    // route 2: sigma~_{jl}^{ki} = <phi^i_j, r^k_l>
    for_each_didx(n, [&](DIdx j) {
        for_each_didx(n, [&](DIdx l) {
            for_each_didx(n, [&](DIdx k) {
                for_each_didx(n, [&](DIdx i) {
                    RatFunc v = e.pair(e.phi(i, j), e.r_word(k, l));
                    const RatFunc& v1 =
                        inv[static_cast<std::size_t>(flatten(k, n) * m + flatten(i, n))]
                           [static_cast<std::size_t>(flatten(j, n) * m + flatten(l, n))];
                    if (v != v1)
                        throw consistency_error(
                            "sigma-tilde routes disagree (inverse vs <phi, r>); pairing tables are inconsistent");
                    if (!v.is_zero())
                        sc.sigma_tilde.set(
                            {flatten(j, n) + 1, flatten(l, n) + 1, flatten(k, n) + 1, flatten(i, n) + 1}, v);
                });
            });
        });
    });

    // C~ cross-check: C~_{jk}^i = C_{sl}^i sigma~_{kj}^{sl}
    for_each_didx(n, [&](DIdx j) {
        for_each_didx(n, [&](DIdx k) {
            for_each_didx(n, [&](DIdx i) {
                RatFunc acc(0);
                for_each_didx(n, [&](DIdx s) {
                    for_each_didx(n, [&](DIdx l) {
                        acc += sc.c_at(s, l, i) * sc.sigma_tilde_at(k, j, s, l);
                    });
                });
                if (acc != sc.c_tilde_at(j, k, i))
                    throw consistency_error("C-tilde routes disagree (<chi~, r> vs C sigma^-1)");
            });
        });
    });

    return sc;
}

// Braid relation s12 s23 s12 = s23 s12 s23 on three doubled-index legs.
inline bool check_braid(const IndexedTensor& sigma) {
    const int m = sigma.n();
    const std::size_t m2 = static_cast<std::size_t>(m) * m;
    Matrix s = detail::sigma_matrix(sigma);
    const std::size_t dim = m2 * static_cast<std::size_t>(m);
    Matrix s12(dim, std::vector<RatFunc>(dim, RatFunc(0)));
    Matrix s23(dim, std::vector<RatFunc>(dim, RatFunc(0)));
    for (std::size_t r = 0; r < m2; ++r)
        for (std::size_t c = 0; c < m2; ++c) {
            if (s[r][c].is_zero()) continue;
            for (std::size_t x = 0; x < static_cast<std::size_t>(m); ++x) {
                s12[r * m + x][c * m + x] = s[r][c];
                s23[x * m2 + r][x * m2 + c] = s[r][c];
            }
        }
    Matrix lhs = matrix_product(matrix_product(s12, s23), s12);
    Matrix rhs = matrix_product(matrix_product(s23, s12), s23);
    return lhs == rhs;
}

} // namespace qgx
