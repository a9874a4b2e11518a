#include "tnvqe/kernels.hpp"

// AVX2+FMA lane. Complex doubles are kept interleaved (re, im), two complex
// entries per 256-bit vector. Compiled with -mavx2 -mfma on x86-64; the
// dispatcher checks CPUID before handing out this table.

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

#include <bit>
#include <cmath>

namespace tnvqe::kernels {
namespace {

inline double parity_sign(std::uint64_t bits) {
    return (std::popcount(bits) & 1) ? -1.0 : 1.0;
}

inline cplx quarter_phase(unsigned ny) {
    static const cplx table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[ny & 3u];
}

// (re, im, re, im) * broadcast complex (ar + i*ai)
inline __m256d cmul_broadcast(__m256d ar, __m256d ai, __m256d v) {
    const __m256d vswap = _mm256_shuffle_pd(v, v, 0b0101);
    return _mm256_fmaddsub_pd(ar, v, _mm256_mul_pd(ai, vswap));
}

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

void matmul_avx2(const cplx* a, const cplx* b, cplx* c, std::size_t m,
                 std::size_t k, std::size_t n) {
    const double* ad = reinterpret_cast<const double*>(a);
    const double* bd = reinterpret_cast<const double*>(b);
    double* cd = reinterpret_cast<double*>(c);
    const std::size_t n2 = n & ~std::size_t{1};
    for (std::size_t i = 0; i < m; ++i) {
        double* crow = cd + 2 * i * n;
        for (std::size_t j = 0; j < 2 * n; ++j) crow[j] = 0.0;
        for (std::size_t l = 0; l < k; ++l) {
            const __m256d ar = _mm256_set1_pd(ad[2 * (i * k + l)]);
            const __m256d ai = _mm256_set1_pd(ad[2 * (i * k + l) + 1]);
            const double* brow = bd + 2 * l * n;
            std::size_t j = 0;
            for (; j < n2; j += 2) {
                const __m256d v = _mm256_loadu_pd(brow + 2 * j);
                const __m256d acc = _mm256_loadu_pd(crow + 2 * j);
                _mm256_storeu_pd(crow + 2 * j,
                                 _mm256_add_pd(acc, cmul_broadcast(ar, ai, v)));
            }
            if (j < n) {
                const double arr = ad[2 * (i * k + l)];
                const double aii = ad[2 * (i * k + l) + 1];
                const double br = brow[2 * j], bi = brow[2 * j + 1];
                crow[2 * j] += arr * br - aii * bi;
                crow[2 * j + 1] += arr * bi + aii * br;
            }
        }
    }
}

cplx pauli_trace_avx2(const cplx* h, std::size_t dim, std::uint64_t mask_x,
                      std::uint64_t mask_z, unsigned ny) {
    const double* hd = reinterpret_cast<const double*>(h);
    __m256d acc = _mm256_setzero_pd();
    const double flip = (mask_z & 1u) ? -1.0 : 1.0;
    std::uint64_t j = 0;
    for (; j + 2 <= dim; j += 2) {
        const double s0 = parity_sign(j & mask_z);
        const __m256d sign =
            _mm256_set_pd(flip * s0, flip * s0, s0, s0);
        const __m128d e0 = _mm_loadu_pd(hd + 2 * (j * dim + (j ^ mask_x)));
        const __m128d e1 =
            _mm_loadu_pd(hd + 2 * ((j + 1) * dim + ((j + 1) ^ mask_x)));
        const __m256d v = _mm256_set_m128d(e1, e0);
        acc = _mm256_fmadd_pd(sign, v, acc);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double sr = lanes[0] + lanes[2];
    double si = lanes[1] + lanes[3];
    for (; j < dim; ++j) {
        const std::uint64_t idx = 2 * (j * dim + (j ^ mask_x));
        const double s = parity_sign(j & mask_z);
        sr += s * hd[idx];
        si += s * hd[idx + 1];
    }
    return quarter_phase(ny) * cplx{sr, si};
}

cplx pauli_expectation_avx2(const cplx* psi, std::size_t dim,
                            std::uint64_t mask_x, std::uint64_t mask_z,
                            unsigned ny) {
    const double* pd = reinterpret_cast<const double*>(psi);
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    const double flip = (mask_z & 1u) ? -1.0 : 1.0;
    const bool swap_pair = (mask_x & 1u) != 0;
    std::uint64_t j = 0;
    for (; j + 2 <= dim; j += 2) {
        const double s0 = parity_sign(j & mask_z);
        const __m256d sign = _mm256_set_pd(flip * s0, flip * s0, s0, s0);
        __m256d a = _mm256_loadu_pd(pd + 2 * ((j ^ mask_x) & ~1ull));
        if (swap_pair) a = _mm256_permute2f128_pd(a, a, 0x01);
        const __m256d b = _mm256_loadu_pd(pd + 2 * j);
        const __m256d bswap = _mm256_shuffle_pd(b, b, 0b0101);
        acc_re = _mm256_fmadd_pd(_mm256_mul_pd(sign, a), b, acc_re);
        acc_im = _mm256_fmadd_pd(_mm256_mul_pd(sign, a), bswap, acc_im);
    }
    // re lanes: ar*br + ai*bi ; im lanes: (ar*bi) - (ai*br)
    alignas(32) double re4[4], im4[4];
    _mm256_store_pd(re4, acc_re);
    _mm256_store_pd(im4, acc_im);
    double sr = re4[0] + re4[1] + re4[2] + re4[3];
    double si = (im4[0] + im4[2]) - (im4[1] + im4[3]);
    for (; j < dim; ++j) {
        const std::uint64_t t = 2 * (j ^ mask_x);
        const double ar = pd[t], ai = pd[t + 1];
        const double br = pd[2 * j], bi = pd[2 * j + 1];
        const double s = parity_sign(j & mask_z);
        sr += s * (ar * br + ai * bi);
        si += s * (ar * bi - ai * br);
    }
    return quarter_phase(ny) * cplx{sr, si};
}

void apply_one_qubit_avx2(cplx* psi, std::size_t dim,
                          std::uint64_t target_mask, const cplx u[4]) {
    double* pd = reinterpret_cast<double*>(psi);
    if (target_mask < 2) {
        // neighbouring pairs; handled with the reference loop
        const double u0r = u[0].real(), u0i = u[0].imag();
        const double u1r = u[1].real(), u1i = u[1].imag();
        const double u2r = u[2].real(), u2i = u[2].imag();
        const double u3r = u[3].real(), u3i = u[3].imag();
        for (std::uint64_t i = 0; i < dim; i += 2) {
            const double xr = pd[2 * i], xi = pd[2 * i + 1];
            const double yr = pd[2 * i + 2], yi = pd[2 * i + 3];
            pd[2 * i] = u0r * xr - u0i * xi + u1r * yr - u1i * yi;
            pd[2 * i + 1] = u0r * xi + u0i * xr + u1r * yi + u1i * yr;
            pd[2 * i + 2] = u2r * xr - u2i * xi + u3r * yr - u3i * yi;
            pd[2 * i + 3] = u2r * xi + u2i * xr + u3r * yi + u3i * yr;
        }
        return;
    }
    const __m256d u0r = _mm256_set1_pd(u[0].real());
    const __m256d u0i = _mm256_set1_pd(u[0].imag());
    const __m256d u1r = _mm256_set1_pd(u[1].real());
    const __m256d u1i = _mm256_set1_pd(u[1].imag());
    const __m256d u2r = _mm256_set1_pd(u[2].real());
    const __m256d u2i = _mm256_set1_pd(u[2].imag());
    const __m256d u3r = _mm256_set1_pd(u[3].real());
    const __m256d u3i = _mm256_set1_pd(u[3].imag());
    for (std::uint64_t base = 0; base < dim; base += 2 * target_mask) {
        for (std::uint64_t off = 0; off < target_mask; off += 2) {
            double* p0 = pd + 2 * (base + off);
            double* p1 = pd + 2 * (base + off + target_mask);
            const __m256d v0 = _mm256_loadu_pd(p0);
            const __m256d v1 = _mm256_loadu_pd(p1);
            const __m256d n0 = _mm256_add_pd(cmul_broadcast(u0r, u0i, v0),
                                             cmul_broadcast(u1r, u1i, v1));
            const __m256d n1 = _mm256_add_pd(cmul_broadcast(u2r, u2i, v0),
                                             cmul_broadcast(u3r, u3i, v1));
            _mm256_storeu_pd(p0, n0);
            _mm256_storeu_pd(p1, n1);
        }
    }
}

double max_abs_diff_avx2(const cplx* a, const cplx* b, std::size_t count) {
    const double* ad = reinterpret_cast<const double*>(a);
    const double* bd = reinterpret_cast<const double*>(b);
    __m256d mx = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= count; i += 2) {
        const __m256d d =
            _mm256_sub_pd(_mm256_loadu_pd(ad + 2 * i), _mm256_loadu_pd(bd + 2 * i));
        const __m256d sq = _mm256_mul_pd(d, d);
        const __m256d s = _mm256_add_pd(sq, _mm256_shuffle_pd(sq, sq, 0b0101));
        mx = _mm256_max_pd(mx, s);
    }
    alignas(32) double m4[4];
    _mm256_store_pd(m4, mx);
    double m = std::max(std::max(m4[0], m4[1]), std::max(m4[2], m4[3]));
    for (; i < count; ++i) {
        const double dr = ad[2 * i] - bd[2 * i];
        const double di = ad[2 * i + 1] - bd[2 * i + 1];
        const double d2 = dr * dr + di * di;
        if (d2 > m) m = d2;
    }
    return std::sqrt(m);
}

double sum_abs2_avx2(const cplx* a, std::size_t count) {
    const double* ad = reinterpret_cast<const double*>(a);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= count; i += 2) {
        const __m256d v = _mm256_loadu_pd(ad + 2 * i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double s = hsum(acc);
    for (; i < count; ++i)
        s += ad[2 * i] * ad[2 * i] + ad[2 * i + 1] * ad[2 * i + 1];
    return s;
}

}  // namespace

const KernelTable* avx2_kernels() {
    static const KernelTable table{
        "avx2",
        matmul_avx2,
        pauli_trace_avx2,
        pauli_expectation_avx2,
        apply_one_qubit_avx2,
        max_abs_diff_avx2,
        sum_abs2_avx2,
    };
    return &table;
}

}  // namespace tnvqe::kernels

#else  // !(__AVX2__ && __FMA__)

namespace tnvqe::kernels {
const KernelTable* avx2_kernels() { return nullptr; }
}  // namespace tnvqe::kernels

#endif
