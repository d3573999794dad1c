#pragma once

#include <vector>

#include "teloinv/errors.hpp"
#include "teloinv/precision.hpp"

namespace teloinv {

/// Pascal-triangle binomial table C(i,j) for i,j <= n, in the scalar type T.
/// Entries are exact whenever T can represent the integers involved
/// (BigRat always; Real up to its mantissa width).
template <typename T>
std::vector<std::vector<T>> binomial_table(int n) {
    std::vector<std::vector<T>> c(n + 1);
    for (int i = 0; i <= n; ++i) {
        c[i].resize(i + 1);
        c[i][0] = c[i][i] = T(1);
        for (int j = 1; j < i; ++j) c[i][j] = c[i - 1][j - 1] + c[i - 1][j];
    }
    return c;
}

/// Full table of partial Bell polynomials B_{n,k}(x_1, ..., x_{n-k+1}) for
/// n <= nmax, via the recurrence
///   B_{n,k} = sum_{m=1}^{n-k+1} C(n-1, m-1) x_m B_{n-m,k-1},  B_{0,0} = 1.
/// Exact for exact scalar types; x needs at least nmax entries (x[0] = x_1).
template <typename T>
std::vector<std::vector<T>> bell_partial_table(int nmax, const std::vector<T>& x) {
    if (nmax > 0 && static_cast<int>(x.size()) < nmax)
        throw Error("bell_partial_table: need x_1..x_nmax");
    auto C = binomial_table<T>(nmax > 0 ? nmax - 1 : 0);
    std::vector<std::vector<T>> B(nmax + 1);
    for (int n = 0; n <= nmax; ++n) B[n].assign(n + 1, T(0));
    B[0][0] = T(1);
    for (int n = 1; n <= nmax; ++n) {
        for (int k = 1; k <= n; ++k) {
            T s(0);
            for (int m = 1; m <= n - k + 1; ++m) s += C[n - 1][m - 1] * x[m - 1] * B[n - m][k - 1];
            B[n][k] = s;
        }
    }
    return B;
}

/// Partial Bell polynomial B_{n,k}; x holds x_1..x_{n-k+1} (or more).
template <typename T>
T bell_partial(int n, int k, const std::vector<T>& x) {
    if (k < 0 || n < 0 || k > n) throw Error("bell_partial: need 0 <= k <= n");
    // Pad so the recurrence can index x_1..x_n even if the caller supplied
    // only the n-k+1 arguments that B_{n,k} actually depends on.
    std::vector<T> xp = x;
    while (static_cast<int>(xp.size()) < n) xp.push_back(T(0));
    return bell_partial_table(n, xp)[n][k];
}

/// Complete Bell polynomial B_n = sum_k B_{n,k}; B_0 = 1.
template <typename T>
T bell_complete(int n, const std::vector<T>& x) {
    if (n < 0) throw Error("bell_complete: n >= 0 required");
    std::vector<T> xp = x;
    while (static_cast<int>(xp.size()) < n) xp.push_back(T(0));
    auto B = bell_partial_table(n, xp);
    T s(0);
    if (n == 0) return T(1);
    for (int k = 0; k <= n; ++k) s += B[n][k];
    return s;
}

}  // namespace teloinv
