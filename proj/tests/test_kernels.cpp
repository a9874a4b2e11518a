#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "test_helpers.hpp"
#include "tnvqe/kernels.hpp"
#include "tnvqe/pauli.hpp"

using namespace tnvqe;
using testutil::crand;
using testutil::max_abs_diff;
using testutil::naive_kron;
using testutil::naive_string_matrix;
using testutil::random_complex;

namespace {

const std::vector<std::string> kWords{"IIII", "ZIII", "IXYZ", "XXXX",
                                      "YYII", "ZZZZ", "XYZI", "IIIY"};

cplx naive_trace(const std::vector<cplx>& p, const std::vector<cplx>& h,
                 std::size_t dim) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            s += p[i * dim + j] * h[j * dim + i];
    return s;
}

}  // namespace

TEST_CASE("kernels: matmul matches a naive complex reference") {
    std::mt19937_64 g(11);
    const std::size_t shapes[][3] = {{1, 1, 1},  {2, 3, 4},   {5, 5, 5},
                                     {7, 3, 9},  {16, 16, 16}, {17, 19, 23}};
    for (const auto& s : shapes) {
        const auto a = random_complex(s[0] * s[1], g);
        const auto b = random_complex(s[1] * s[2], g);
        std::vector<cplx> c(s[0] * s[2]);
        kernels::active().matmul(a.data(), b.data(), c.data(), s[0], s[1], s[2]);
        const auto ref = testutil::naive_matmul(a, b, s[0], s[1], s[2]);
        CHECK(max_abs_diff(c, ref) < 1e-12);
    }
}

TEST_CASE("kernels: pauli_trace equals the dense-matrix trace") {
    std::mt19937_64 g(12);
    const std::size_t dim = 16;
    const auto h = random_complex(dim * dim, g);
    for (const auto& w : kWords) {
        const PauliMasks m = pauli_masks(w);
        const cplx got =
            kernels::active().pauli_trace(h.data(), dim, m.x, m.z, m.y_count);
        const cplx ref = naive_trace(naive_string_matrix(w), h, dim);
        CHECK(std::abs(got - ref) < 1e-12);
    }
}

TEST_CASE("kernels: pauli_expectation equals the dense quadratic form") {
    std::mt19937_64 g(13);
    const std::size_t dim = 16;
    const auto psi = random_complex(dim, g);
    for (const auto& w : kWords) {
        const PauliMasks m = pauli_masks(w);
        const cplx got = kernels::active().pauli_expectation(psi.data(), dim,
                                                             m.x, m.z,
                                                             m.y_count);
        const auto p = naive_string_matrix(w);
        cplx ref = 0.0;
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j)
                ref += std::conj(psi[i]) * p[i * dim + j] * psi[j];
        CHECK(std::abs(got - ref) < 1e-12);
    }
}

TEST_CASE("kernels: apply_one_qubit equals the embedded dense gate") {
    std::mt19937_64 g(14);
    const std::size_t n = 4, dim = 16;
    for (std::size_t qubit = 0; qubit < n; ++qubit) {
        const auto psi0 = random_complex(dim, g);
        cplx u[4] = {crand(g), crand(g), crand(g), crand(g)};
        std::vector<cplx> psi = psi0;
        const std::uint64_t mask = std::uint64_t{1} << (n - 1 - qubit);
        kernels::active().apply_one_qubit(psi.data(), dim, mask, u);

        std::vector<cplx> gate{1};
        std::size_t gd = 1;
        for (std::size_t q = 0; q < n; ++q) {
            if (q == qubit) {
                gate = naive_kron(gate, gd, {u[0], u[1], u[2], u[3]}, 2);
            } else {
                gate = naive_kron(gate, gd, {1, 0, 0, 1}, 2);
            }
            gd *= 2;
        }
        std::vector<cplx> ref(dim);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j)
                ref[i] += gate[i * dim + j] * psi0[j];
        CHECK(max_abs_diff(psi, ref) < 1e-12);
    }
}

TEST_CASE("kernels: reductions match plain loops") {
    std::mt19937_64 g(15);
    const auto a = random_complex(33, g);
    const auto b = random_complex(33, g);
    double mref = 0.0, sref = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        mref = std::max(mref, std::abs(a[i] - b[i]));
        sref += std::norm(a[i]);
    }
    CHECK(kernels::active().max_abs_diff(a.data(), b.data(), a.size()) ==
          doctest::Approx(mref).epsilon(1e-13));
    CHECK(kernels::active().sum_abs2(a.data(), a.size()) ==
          doctest::Approx(sref).epsilon(1e-13));
}

TEST_CASE("kernels: scalar and avx2 lanes agree") {
    if (!kernels::avx2_supported()) {
        MESSAGE("avx2 lane unavailable on this host; skipping");
        return;
    }
    const auto& sc = kernels::scalar_kernels();
    const auto& vx = *kernels::avx2_kernels();
    std::mt19937_64 g(16);

    SUBCASE("matmul") {
        for (std::size_t dim : {2, 4, 5, 16, 31}) {
            const auto a = random_complex(dim * dim, g);
            const auto b = random_complex(dim * dim, g);
            std::vector<cplx> c1(dim * dim), c2(dim * dim);
            sc.matmul(a.data(), b.data(), c1.data(), dim, dim, dim);
            vx.matmul(a.data(), b.data(), c2.data(), dim, dim, dim);
            CHECK(max_abs_diff(c1, c2) < 1e-12);
        }
    }
    SUBCASE("pauli kernels") {
        const std::size_t dim = 16;
        const auto h = random_complex(dim * dim, g);
        const auto psi = random_complex(dim, g);
        for (const auto& w : kWords) {
            const PauliMasks m = pauli_masks(w);
            CHECK(std::abs(sc.pauli_trace(h.data(), dim, m.x, m.z, m.y_count) -
                           vx.pauli_trace(h.data(), dim, m.x, m.z, m.y_count)) <
                  1e-12);
            CHECK(std::abs(
                      sc.pauli_expectation(psi.data(), dim, m.x, m.z, m.y_count) -
                      vx.pauli_expectation(psi.data(), dim, m.x, m.z,
                                           m.y_count)) < 1e-12);
        }
    }
    SUBCASE("apply_one_qubit") {
        const std::size_t dim = 32;
        for (std::uint64_t mask : {1u, 2u, 4u, 8u, 16u}) {
            auto p1 = random_complex(dim, g);
            auto p2 = p1;
            cplx u[4] = {crand(g), crand(g), crand(g), crand(g)};
            sc.apply_one_qubit(p1.data(), dim, mask, u);
            vx.apply_one_qubit(p2.data(), dim, mask, u);
            CHECK(max_abs_diff(p1, p2) < 1e-12);
        }
    }
    SUBCASE("reductions") {
        const auto a = random_complex(65, g);
        const auto b = random_complex(65, g);
        CHECK(sc.max_abs_diff(a.data(), b.data(), a.size()) ==
              doctest::Approx(vx.max_abs_diff(a.data(), b.data(), a.size()))
                  .epsilon(1e-13));
        CHECK(sc.sum_abs2(a.data(), a.size()) ==
              doctest::Approx(vx.sum_abs2(a.data(), a.size())).epsilon(1e-13));
    }
}

TEST_CASE("kernels: dispatch names") {
    CHECK(std::string(kernels::scalar_kernels().name) == "scalar");
    const std::string active = kernels::active().name;
    CHECK((active == "scalar" || active == "avx2"));
    if (kernels::avx2_kernels() != nullptr)
        CHECK(std::string(kernels::avx2_kernels()->name) == "avx2");
}
