#include "tnvqe/kernels.hpp"

#include <bit>
#include <cmath>

// Reference kernels. Complex arithmetic is spelled out on the re/im parts so
// the scalar lane computes exactly what the vector lanes compute, without the
// Annex-G overflow fixups a std::complex operator* would pull in.

namespace tnvqe::kernels {
namespace {

inline double parity_sign(std::uint64_t bits) {
    return (std::popcount(bits) & 1) ? -1.0 : 1.0;
}

// i^ny for ny mod 4
inline cplx quarter_phase(unsigned ny) {
    static const cplx table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[ny & 3u];
}

void matmul_scalar(const cplx* a, const cplx* b, cplx* c, std::size_t m,
                   std::size_t k, std::size_t n) {
    const double* ad = reinterpret_cast<const double*>(a);
    const double* bd = reinterpret_cast<const double*>(b);
    double* cd = reinterpret_cast<double*>(c);
    for (std::size_t i = 0; i < m; ++i) {
        double* crow = cd + 2 * i * n;
        for (std::size_t j = 0; j < 2 * n; ++j) crow[j] = 0.0;
        for (std::size_t l = 0; l < k; ++l) {
            const double ar = ad[2 * (i * k + l)];
            const double ai = ad[2 * (i * k + l) + 1];
            const double* brow = bd + 2 * l * n;
            for (std::size_t j = 0; j < n; ++j) {
                const double br = brow[2 * j];
                const double bi = brow[2 * j + 1];
                crow[2 * j] += ar * br - ai * bi;
                crow[2 * j + 1] += ar * bi + ai * br;
            }
        }
    }
}

cplx pauli_trace_scalar(const cplx* h, std::size_t dim, std::uint64_t mask_x,
                        std::uint64_t mask_z, unsigned ny) {
    const double* hd = reinterpret_cast<const double*>(h);
    double sr = 0.0, si = 0.0;
    for (std::uint64_t j = 0; j < dim; ++j) {
        const std::uint64_t idx = 2 * (j * dim + (j ^ mask_x));
        const double s = parity_sign(j & mask_z);
        sr += s * hd[idx];
        si += s * hd[idx + 1];
    }
    return quarter_phase(ny) * cplx{sr, si};
}

cplx pauli_expectation_scalar(const cplx* psi, std::size_t dim,
                              std::uint64_t mask_x, std::uint64_t mask_z,
                              unsigned ny) {
    const double* pd = reinterpret_cast<const double*>(psi);
    double sr = 0.0, si = 0.0;
    for (std::uint64_t j = 0; j < dim; ++j) {
        const std::uint64_t t = 2 * (j ^ mask_x);
        const double ar = pd[t], ai = pd[t + 1];     // psi[j ^ mx], conjugated
        const double br = pd[2 * j], bi = pd[2 * j + 1];
        const double s = parity_sign(j & mask_z);
        sr += s * (ar * br + ai * bi);
        si += s * (ar * bi - ai * br);
    }
    return quarter_phase(ny) * cplx{sr, si};
}

void apply_one_qubit_scalar(cplx* psi, std::size_t dim,
                            std::uint64_t target_mask, const cplx u[4]) {
    double* pd = reinterpret_cast<double*>(psi);
    const double u0r = u[0].real(), u0i = u[0].imag();
    const double u1r = u[1].real(), u1i = u[1].imag();
    const double u2r = u[2].real(), u2i = u[2].imag();
    const double u3r = u[3].real(), u3i = u[3].imag();
    for (std::uint64_t base = 0; base < dim; base += 2 * target_mask) {
        for (std::uint64_t off = 0; off < target_mask; ++off) {
            const std::uint64_t i0 = 2 * (base + off);
            const std::uint64_t i1 = 2 * (base + off + target_mask);
            const double xr = pd[i0], xi = pd[i0 + 1];
            const double yr = pd[i1], yi = pd[i1 + 1];
            pd[i0] = u0r * xr - u0i * xi + u1r * yr - u1i * yi;
            pd[i0 + 1] = u0r * xi + u0i * xr + u1r * yi + u1i * yr;
            pd[i1] = u2r * xr - u2i * xi + u3r * yr - u3i * yi;
            pd[i1 + 1] = u2r * xi + u2i * xr + u3r * yi + u3i * yr;
        }
    }
}

double max_abs_diff_scalar(const cplx* a, const cplx* b, std::size_t count) {
    const double* ad = reinterpret_cast<const double*>(a);
    const double* bd = reinterpret_cast<const double*>(b);
    double m = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        const double dr = ad[2 * i] - bd[2 * i];
        const double di = ad[2 * i + 1] - bd[2 * i + 1];
        const double d2 = dr * dr + di * di;
        if (d2 > m) m = d2;
    }
    return std::sqrt(m);
}

double sum_abs2_scalar(const cplx* a, std::size_t count) {
    const double* ad = reinterpret_cast<const double*>(a);
    double s = 0.0;
    for (std::size_t i = 0; i < 2 * count; ++i) s += ad[i] * ad[i];
    return s;
}

}  // namespace

const KernelTable& scalar_kernels() {
    static const KernelTable table{
        "scalar",
        matmul_scalar,
        pauli_trace_scalar,
        pauli_expectation_scalar,
        apply_one_qubit_scalar,
        max_abs_diff_scalar,
        sum_abs2_scalar,
    };
    return table;
}

}  // namespace tnvqe::kernels
