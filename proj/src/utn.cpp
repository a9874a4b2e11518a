#include "tnvqe/utn.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "tnvqe/kernels.hpp"

namespace tnvqe {

std::size_t params_per_tensor(RotationMode mode) {
    return mode == RotationMode::kOneParam ? 1 : 3;
}

const char* rotation_mode_name(RotationMode mode) {
    return mode == RotationMode::kOneParam ? "one_param" : "three_param";
}

UtnLayout::UtnLayout(std::size_t n_sites, std::size_t n_layers)
    : n_sites_(n_sites), n_layers_(n_layers) {
    if (n_sites < 1) throw std::invalid_argument("UtnLayout: n_sites must be >= 1");
    if (n_layers > 0 && (n_sites < 2 || n_sites % 2 != 0))
        throw std::invalid_argument(
            "UtnLayout: brick layers require an even n_sites >= 2");
    for (std::size_t layer = 1; layer <= n_layers; ++layer) {
        const std::size_t first = (layer % 2 == 1) ? 0 : 1;
        for (std::size_t site = first; site + 1 < n_sites; site += 2)
            bricks_.push_back({layer, site});
    }
}

std::size_t theta_size(const UtnLayout& layout, RotationMode mode) {
    return layout.bricks().size() * params_per_tensor(mode);
}

Tensor rot_matrix_1(double t) {
    if (!std::isfinite(t)) throw std::invalid_argument("rot_matrix_1: non-finite angle");
    return Tensor::matrix(2, 2,
                          {cplx{std::cos(t), -std::sin(t)}, 0.0, 0.0,
                           cplx{std::cos(t), std::sin(t)}});
}

Tensor rot_matrix_3(double t1, double t2, double t3) {
    if (!std::isfinite(t1) || !std::isfinite(t2) || !std::isfinite(t3))
        throw std::invalid_argument("rot_matrix_3: non-finite angle");
    const double c = std::cos(t2 / 2), s = std::sin(t2 / 2);
    const double sum = (t1 + t3) / 2, dif = (t1 - t3) / 2;
    const cplx e_msum{std::cos(sum), -std::sin(sum)};
    const cplx e_mdif{std::cos(dif), -std::sin(dif)};
    return Tensor::matrix(2, 2,
                          {e_msum * c, -e_mdif * s, std::conj(e_mdif) * s,
                           std::conj(e_msum) * c});
}

namespace {

// row-major kron of (da x da) and (db x db)
std::vector<cplx> kron_square(const std::vector<cplx>& a, std::size_t da,
                              const std::vector<cplx>& b, std::size_t db) {
    const std::size_t d = da * db;
    std::vector<cplx> out(d * d);
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < da; ++j) {
            const cplx av = a[i * da + j];
            for (std::size_t k = 0; k < db; ++k)
                for (std::size_t l = 0; l < db; ++l)
                    out[(i * db + k) * d + (j * db + l)] = av * b[k * db + l];
        }
    return out;
}

double unitarity_deviation(const std::vector<cplx>& u, std::size_t dim) {
    std::vector<cplx> udag(dim * dim), g(dim * dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            udag[j * dim + i] = std::conj(u[i * dim + j]);
    kernels::active().matmul(udag.data(), u.data(), g.data(), dim, dim, dim);
    std::vector<cplx> eye(dim * dim);
    for (std::size_t i = 0; i < dim; ++i) eye[i * dim + i] = 1.0;
    return kernels::active().max_abs_diff(g.data(), eye.data(), g.size());
}

}  // namespace

Tensor local_unitary(const Tensor& r) {
    if (r.rank() != 2 || r.shape()[0] != 2 || r.shape()[1] != 2)
        throw std::invalid_argument("local_unitary: expected a 2x2 tensor");
    if (unitarity_deviation(r.data(), 2) > 1e-12)
        throw std::invalid_argument("local_unitary: input is not unitary");
    std::vector<cplx> m4 = kron_square(r.data(), 2, r.data(), 2);
    return Tensor({2, 2, 2, 2}, std::move(m4));
}

Tensor build_utn(const UtnLayout& layout, RotationMode mode,
                 const ThetaVector& theta) {
    if (theta.size() != theta_size(layout, mode))
        throw std::invalid_argument(
            "build_utn: theta length " + std::to_string(theta.size()) +
            " does not match layout (" +
            std::to_string(theta_size(layout, mode)) + " expected)");
    const std::size_t n = layout.n_sites();
    const std::size_t dim = std::size_t{1} << n;
    Tensor u = Tensor::identity(dim);
    std::size_t param = 0;
    std::size_t brick = 0;
    for (std::size_t layer = 1; layer <= layout.n_layers(); ++layer) {
        std::vector<cplx> layer_mat{1.0};
        std::size_t layer_dim = 1;
        std::size_t site = 0;
        while (site < n) {
            const bool brick_here = brick < layout.bricks().size() &&
                                    layout.bricks()[brick].layer == layer &&
                                    layout.bricks()[brick].site == site;
            if (brick_here) {
                Tensor r = (mode == RotationMode::kOneParam)
                               ? rot_matrix_1(theta[param])
                               : rot_matrix_3(theta[param], theta[param + 1],
                                              theta[param + 2]);
                param += params_per_tensor(mode);
                ++brick;
                const std::vector<cplx> m4 = kron_square(r.data(), 2, r.data(), 2);
                layer_mat = kron_square(layer_mat, layer_dim, m4, 4);
                layer_dim *= 4;
                site += 2;
            } else {
                static const std::vector<cplx> eye2{1.0, 0.0, 0.0, 1.0};
                layer_mat = kron_square(layer_mat, layer_dim, eye2, 2);
                layer_dim *= 2;
                site += 1;
            }
        }
        Tensor next({dim, dim});
        kernels::active().matmul(layer_mat.data(), u.data().data(),
                                 next.data().data(), dim, dim, dim);
        u = std::move(next);
    }
    return u;
}

HermitianMatrix similarity_transform(const HermitianMatrix& h, const Tensor& u) {
    if (u.rank() != 2 || u.shape()[0] != u.shape()[1])
        throw std::invalid_argument("similarity_transform: u must be square");
    const std::size_t dim = h.dim();
    if (u.shape()[0] != dim)
        throw std::invalid_argument(
            "similarity_transform: dimension mismatch (" +
            std::to_string(u.shape()[0]) + " vs " + std::to_string(dim) + ")");
    if (unitarity_deviation(u.data(), dim) > 1e-10)
        throw std::invalid_argument("similarity_transform: u is not unitary");
    std::vector<cplx> udag(dim * dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            udag[j * dim + i] = std::conj(u.data()[i * dim + j]);
    std::vector<cplx> hu(dim * dim), out(dim * dim);
    kernels::active().matmul(h.entries().data(), u.data().data(), hu.data(),
                             dim, dim, dim);
    kernels::active().matmul(udag.data(), hu.data(), out.data(), dim, dim, dim);
    // U^dag H U is Hermitian in exact arithmetic; symmetrize away the rounding
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i; j < dim; ++j) {
            const cplx v = 0.5 * (out[i * dim + j] + std::conj(out[j * dim + i]));
            out[i * dim + j] = v;
            out[j * dim + i] = std::conj(v);
        }
    return HermitianMatrix(dim, std::move(out));
}

UnitarityReport unitarity_report(const Tensor& u) {
    if (u.rank() != 2 || u.shape()[0] != u.shape()[1])
        throw std::invalid_argument("unitarity_report: expected a square matrix");
    const std::size_t dim = u.shape()[0];
    std::vector<cplx> udag(dim * dim), g(dim * dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            udag[j * dim + i] = std::conj(u.data()[i * dim + j]);
    kernels::active().matmul(udag.data(), u.data().data(), g.data(), dim, dim,
                             dim);
    std::vector<cplx> eye(dim * dim);
    for (std::size_t i = 0; i < dim; ++i) eye[i * dim + i] = 1.0;
    UnitarityReport rep{};
    rep.max_deviation =
        kernels::active().max_abs_diff(g.data(), eye.data(), g.size());
    double tr = 0.0;
    for (std::size_t i = 0; i < dim; ++i) tr += g[i * dim + i].real();
    rep.normalized_trace = tr / static_cast<double>(dim);
    rep.pass = rep.max_deviation < 1e-10 &&
               std::abs(rep.normalized_trace - 1.0) < 1e-10;
    return rep;
}

}  // namespace tnvqe
