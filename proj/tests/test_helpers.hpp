#pragma once

// Shared fixtures: deterministic rngs and naive reference implementations the
// library paths are checked against. The references here stay independent of
// the kernel/bit-mask code under test.

#include <array>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tnvqe/tensor.hpp"

namespace testutil {

using tnvqe::cplx;

inline double urand(std::mt19937_64& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

inline cplx crand(std::mt19937_64& g) {
    return {2.0 * urand(g) - 1.0, 2.0 * urand(g) - 1.0};
}

inline std::vector<cplx> random_complex(std::size_t n, std::mt19937_64& g) {
    std::vector<cplx> v(n);
    for (auto& x : v) x = crand(g);
    return v;
}

// (A + A^dag) / 2
inline std::vector<cplx> random_hermitian(std::size_t dim, std::mt19937_64& g) {
    std::vector<cplx> a = random_complex(dim * dim, g);
    std::vector<cplx> h(dim * dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            h[i * dim + j] = 0.5 * (a[i * dim + j] + std::conj(a[j * dim + i]));
    return h;
}

inline std::vector<cplx> naive_matmul(const std::vector<cplx>& a,
                                      const std::vector<cplx>& b,
                                      std::size_t m, std::size_t k,
                                      std::size_t n) {
    std::vector<cplx> c(m * n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t l = 0; l < k; ++l)
            for (std::size_t j = 0; j < n; ++j)
                c[i * n + j] += a[i * k + l] * b[l * n + j];
    return c;
}

inline std::vector<cplx> naive_kron(const std::vector<cplx>& a, std::size_t da,
                                    const std::vector<cplx>& b,
                                    std::size_t db) {
    const std::size_t d = da * db;
    std::vector<cplx> out(d * d);
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < da; ++j)
            for (std::size_t k = 0; k < db; ++k)
                for (std::size_t l = 0; l < db; ++l)
                    out[(i * db + k) * d + (j * db + l)] =
                        a[i * da + j] * b[k * db + l];
    return out;
}

inline const std::vector<cplx>& pauli2(char c) {
    static const std::vector<cplx> id{1, 0, 0, 1};
    static const std::vector<cplx> x{0, 1, 1, 0};
    static const std::vector<cplx> y{0, {0, -1}, {0, 1}, 0};
    static const std::vector<cplx> z{1, 0, 0, -1};
    switch (c) {
        case 'X': return x;
        case 'Y': return y;
        case 'Z': return z;
        default: return id;
    }
}

// Kronecker chain, leftmost character most significant.
inline std::vector<cplx> naive_string_matrix(const std::string& word) {
    std::vector<cplx> m{1};
    std::size_t dm = 1;
    for (char c : word) {
        m = naive_kron(m, dm, pauli2(c), 2);
        dm *= 2;
    }
    return m;
}

inline double max_abs_diff(const std::vector<cplx>& a,
                           const std::vector<cplx>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace testutil
