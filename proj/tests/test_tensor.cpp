#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "test_helpers.hpp"
#include "tnvqe/tensor.hpp"
#include "tnvqe/utn.hpp"

using namespace tnvqe;
using testutil::max_abs_diff;
using testutil::random_hermitian;

namespace {

const Tensor kSigmaX = Tensor::matrix(2, 2, {0, 1, 1, 0});
const Tensor kSigmaY = Tensor::matrix(2, 2, {0, cplx{0, -1}, cplx{0, 1}, 0});
const Tensor kSigmaZ = Tensor::matrix(2, 2, {1, 0, 0, -1});

}  // namespace

TEST_CASE("tensor: construction invariants") {
    CHECK_THROWS(Tensor({2, 2}, {1.0, 2.0}));  // wrong entry count
    CHECK_THROWS(Tensor({2}, {cplx{std::nan(""), 0.0}, 0.0}));
    CHECK(Tensor::scalar(3.0).rank() == 0);
    CHECK(Tensor::scalar(3.0).size() == 1);
}

TEST_CASE("tensor: tensor_product") {
    SUBCASE("identity times identity") {
        const Tensor t = tensor_product(Tensor::identity(2), Tensor::identity(2));
        CHECK(t.shape() == std::vector<std::size_t>{2, 2, 2, 2});
        const Tensor m = reshape(permute(t, {0, 2, 1, 3}), {4, 4});
        CHECK(max_abs_diff(m.data(), Tensor::identity(4).data()) == 0.0);
    }
    SUBCASE("sigma_z x sigma_z") {
        const Tensor t = tensor_product(kSigmaZ, kSigmaZ);
        const Tensor m = reshape(permute(t, {0, 2, 1, 3}), {4, 4});
        std::vector<cplx> expect(16);
        expect[0] = 1;
        expect[5] = -1;
        expect[10] = -1;
        expect[15] = 1;
        CHECK(max_abs_diff(m.data(), expect) == 0.0);
    }
    SUBCASE("scalar scaling") {
        const Tensor t = tensor_product(Tensor::scalar(cplx{0, 2}), kSigmaX);
        CHECK(t.shape() == std::vector<std::size_t>{2, 2});
        CHECK(t.at({0, 1}) == cplx{0, 2});
    }
}

TEST_CASE("tensor: contract as matrix multiply") {
    const Tensor b = Tensor::matrix(2, 2, {1, 2, 3, 4});
    const Tensor c = Tensor::matrix(2, 2, {5, 6, 7, 8});
    const Tensor a = contract(b, c, {{1, 0}});
    CHECK(a.at({0, 0}) == cplx{19});
    CHECK(a.at({0, 1}) == cplx{22});
    CHECK(a.at({1, 0}) == cplx{43});
    CHECK(a.at({1, 1}) == cplx{50});
}

TEST_CASE("tensor: contraction with the identity is the identity map") {
    std::mt19937_64 g(21);
    const Tensor m({2, 2}, testutil::random_complex(4, g));
    const Tensor r = contract(Tensor::identity(2), m, {{1, 0}});
    CHECK(max_abs_diff(r.data(), m.data()) < 1e-15);
}

TEST_CASE("tensor: contract error paths") {
    const Tensor a({2, 3}, std::vector<cplx>(6, 1.0));
    const Tensor b({4, 2}, std::vector<cplx>(8, 1.0));
    CHECK_THROWS_WITH_AS(contract(a, b, {{1, 0}}),
                         doctest::Contains("extent mismatch"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(contract(a, b, {{0, 1}, {0, 1}}),
                         doctest::Contains("repeated"), std::invalid_argument);
}

TEST_CASE("tensor: contract is bilinear") {
    std::mt19937_64 g(22);
    const Tensor a({2, 3}, testutil::random_complex(6, g));
    const Tensor b({3, 2}, testutil::random_complex(6, g));
    const cplx alpha{1.25, -0.5};
    Tensor a_scaled = a;
    for (auto& v : a_scaled.data()) v *= alpha;
    const Tensor lhs = contract(a_scaled, b, {{1, 0}});
    Tensor rhs = contract(a, b, {{1, 0}});
    for (auto& v : rhs.data()) v *= alpha;
    CHECK(max_abs_diff(lhs.data(), rhs.data()) < 1e-13);
}

TEST_CASE("tensor: five-brick network contraction matches the dense build") {
    // layer 1: M0 on (0,1), M1 on (2,3); layer 2: M2 on (1,2);
    // layer 3: M3 on (0,1), M4 on (2,3) -- six internal bonds in total
    std::mt19937_64 g(23);
    const UtnLayout layout(4, 3);
    ThetaVector theta(theta_size(layout, RotationMode::kOneParam));
    for (auto& t : theta) t = 2.0 * std::numbers::pi * testutil::urand(g);
    std::vector<Tensor> m;
    for (double t : theta) m.push_back(local_unitary(rot_matrix_1(t)));

    Tensor t01 = contract(m[0], m[1], {});
    Tensor t012 = contract(t01, m[2], {{1, 2}, {4, 3}});
    Tensor t0123 = contract(t012, m[3], {{0, 2}, {6, 3}});
    Tensor all = contract(t0123, m[4], {{5, 2}, {2, 3}});
    CHECK(all.rank() == 8);
    CHECK(all.shape() == std::vector<std::size_t>(8, 2));

    const Tensor dense = reshape(permute(all, {4, 5, 6, 7, 0, 1, 2, 3}), {16, 16});
    const Tensor u = build_utn(layout, RotationMode::kOneParam, theta);
    CHECK(max_abs_diff(dense.data(), u.data()) < 1e-13);
}

TEST_CASE("tensor: trace_axes") {
    CHECK(trace_axes(Tensor::identity(2), 0, 1).at({}) == cplx{2});
    CHECK(trace_axes(kSigmaX, 0, 1).at({}) == cplx{0});
    const Tensor zz =
        reshape(permute(tensor_product(kSigmaZ, kSigmaZ), {0, 2, 1, 3}), {4, 4});
    CHECK(trace_axes(zz, 0, 1).at({}) == cplx{0});
    CHECK_THROWS(trace_axes(Tensor({2, 3}), 0, 1));
    CHECK_THROWS(trace_axes(Tensor({2, 2}), 0, 0));
}

TEST_CASE("tensor: trace commutes with permutation") {
    std::mt19937_64 g(24);
    const Tensor t({3, 2, 3}, testutil::random_complex(18, g));
    const Tensor direct = trace_axes(t, 0, 2);
    const Tensor perm = permute(t, {2, 1, 0});
    const Tensor via = trace_axes(perm, 2, 0);
    CHECK(max_abs_diff(direct.data(), via.data()) < 1e-15);
}

TEST_CASE("tensor: permute") {
    const Tensor t = Tensor::matrix(2, 3, {1, 2, 3, 4, 5, 6});
    SUBCASE("identity order") {
        CHECK(max_abs_diff(permute(t, {0, 1}).data(), t.data()) == 0.0);
    }
    SUBCASE("transpose twice") {
        const Tensor tt = permute(permute(t, {1, 0}), {1, 0});
        CHECK(max_abs_diff(tt.data(), t.data()) == 0.0);
    }
    SUBCASE("explicit transpose values") {
        const Tensor tr = permute(t, {1, 0});
        CHECK(tr.shape() == std::vector<std::size_t>{3, 2});
        CHECK(tr.at({0, 0}) == cplx{1});
        CHECK(tr.at({0, 1}) == cplx{4});
        CHECK(tr.at({2, 1}) == cplx{6});
    }
}

TEST_CASE("tensor: conj_transpose") {
    CHECK(max_abs_diff(conj_transpose(kSigmaY).data(), kSigmaY.data()) == 0.0);
    const Tensor i_eye = Tensor::matrix(2, 2, {cplx{0, 1}, 0, 0, cplx{0, 1}});
    const Tensor dag = conj_transpose(i_eye);
    CHECK(dag.at({0, 0}) == cplx{0, -1});
    std::mt19937_64 g(25);
    const Tensor m({2, 2}, testutil::random_complex(4, g));
    CHECK(max_abs_diff(conj_transpose(conj_transpose(m)).data(), m.data()) ==
          0.0);
}

TEST_CASE("hermitian: validation") {
    CHECK_THROWS(HermitianMatrix(3, std::vector<cplx>(9, 0.0)));  // not 2^k
    std::vector<cplx> bad{1.0, cplx{0, 1}, cplx{0, 1}, 2.0};      // not Hermitian
    CHECK_THROWS(HermitianMatrix(2, bad));
}

TEST_CASE("eigensolver: fixed spectra") {
    const HermitianMatrix z(2, {1, 0, 0, -1});
    const auto ez = hermitian_eigenvalues(z);
    CHECK(ez[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(ez[1] == doctest::Approx(1.0).epsilon(1e-12));

    const HermitianMatrix x(2, {0, 1, 1, 0});
    const auto ex = hermitian_eigenvalues(x);
    CHECK(ex[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(ex[1] == doctest::Approx(1.0).epsilon(1e-12));

    const HermitianMatrix m(2, {2, 1, 1, 2});
    const auto em = hermitian_eigenvalues(m);
    CHECK(em[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(em[1] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("eigensolver: 2x2 closed form") {
    std::mt19937_64 g(26);
    for (int rep = 0; rep < 50; ++rep) {
        const auto h = random_hermitian(2, g);
        const double a = h[0].real(), d = h[3].real();
        const double b2 = std::norm(h[1]);
        const double mid = 0.5 * (a + d);
        const double rad = std::sqrt(0.25 * (a - d) * (a - d) + b2);
        const auto ev = hermitian_eigenvalues(HermitianMatrix(2, h));
        CHECK(std::abs(ev[0] - (mid - rad)) < 1e-12);
        CHECK(std::abs(ev[1] - (mid + rad)) < 1e-12);
    }
}

TEST_CASE("eigensolver: invariant under unitary conjugation") {
    std::mt19937_64 g(27);
    const UtnLayout layout(4, 2);
    for (int rep = 0; rep < 5; ++rep) {
        const auto h = random_hermitian(16, g);
        ThetaVector theta(theta_size(layout, RotationMode::kThreeParam));
        for (auto& t : theta) t = 2.0 * std::numbers::pi * testutil::urand(g);
        const Tensor v = build_utn(layout, RotationMode::kThreeParam, theta);
        const HermitianMatrix hm(16, h);
        const HermitianMatrix rotated = similarity_transform(hm, v);
        const auto e1 = hermitian_eigenvalues(hm);
        const auto e2 = hermitian_eigenvalues(rotated);
        for (std::size_t k = 0; k < e1.size(); ++k)
            CHECK(std::abs(e1[k] - e2[k]) < 1e-9);
    }
}

TEST_CASE("eigensolver: eigenvectors reproduce the matrix action") {
    std::mt19937_64 g(28);
    const auto h = random_hermitian(8, g);
    const HermitianMatrix hm(8, h);
    const Eigensystem es = hermitian_eigensystem(hm);
    for (std::size_t k = 0; k < 8; ++k) {
        const auto v = es.eigenvector(k);
        for (std::size_t i = 0; i < 8; ++i) {
            cplx hv = 0.0;
            for (std::size_t j = 0; j < 8; ++j) hv += hm(i, j) * v[j];
            CHECK(std::abs(hv - es.values[k] * v[i]) < 1e-10);
        }
    }
}
