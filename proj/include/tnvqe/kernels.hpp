#pragma once

// Arithmetic inner loops shared by the tensor, Pauli and circuit layers.
// Every kernel has a portable scalar reference implementation and, on x86-64,
// an AVX2+FMA variant. The variant is picked once at runtime from CPUID and
// can be forced with TNVQE_KERNELS=scalar|avx2; both lanes are held to the
// same contract and cross-checked in the test suite.

#include <complex>
#include <cstddef>
#include <cstdint>

namespace tnvqe::kernels {

using cplx = std::complex<double>;

// C (m x n) = A (m x k) * B (k x n); dense row-major, C is overwritten.
using MatmulFn = void (*)(const cplx* a, const cplx* b, cplx* c,
                          std::size_t m, std::size_t k, std::size_t n);

// Pauli strings act on basis states as P|j> = phase(j) |j ^ mask_x| with
// phase(j) = i^ny * (-1)^popcount(j & mask_z).
//   pauli_trace:       sum_j phase(j) * h[j*dim + (j ^ mask_x)]   (= Tr[P H])
//   pauli_expectation: sum_j conj(psi[j ^ mask_x]) * phase(j) * psi[j]
using PauliTraceFn = cplx (*)(const cplx* h, std::size_t dim,
                              std::uint64_t mask_x, std::uint64_t mask_z,
                              unsigned ny);
using PauliExpectationFn = cplx (*)(const cplx* psi, std::size_t dim,
                                    std::uint64_t mask_x, std::uint64_t mask_z,
                                    unsigned ny);

// In-place 2x2 gate on one qubit. For every index i with (i & target_mask)==0:
//   psi[i]   <- u[0]*psi[i] + u[1]*psi[i|target_mask]
//   psi[i|m] <- u[2]*psi[i] + u[3]*psi[i|target_mask]
using ApplyOneQubitFn = void (*)(cplx* psi, std::size_t dim,
                                 std::uint64_t target_mask, const cplx u[4]);

// max_i |a[i] - b[i]| over complex entries.
using MaxAbsDiffFn = double (*)(const cplx* a, const cplx* b,
                                std::size_t count);
// sum_i |a[i]|^2.
using SumAbs2Fn = double (*)(const cplx* a, std::size_t count);

struct KernelTable {
    const char* name;
    MatmulFn matmul;
    PauliTraceFn pauli_trace;
    PauliExpectationFn pauli_expectation;
    ApplyOneQubitFn apply_one_qubit;
    MaxAbsDiffFn max_abs_diff;
    SumAbs2Fn sum_abs2;
};

// Reference lane; always available.
const KernelTable& scalar_kernels();

// AVX2+FMA lane, or nullptr when the build target lacks it.
const KernelTable* avx2_kernels();

// True when the running CPU can execute the AVX2 lane.
bool avx2_supported();

// Lane selected for this process (CPUID + TNVQE_KERNELS override).
const KernelTable& active();

}  // namespace tnvqe::kernels
