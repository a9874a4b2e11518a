#include "tnvqe/tensor.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "tnvqe/kernels.hpp"

namespace tnvqe {
namespace {

std::size_t shape_size(const std::vector<std::size_t>& shape) {
    std::size_t n = 1;
    for (std::size_t e : shape) {
        if (e == 0) throw std::invalid_argument("tensor extent must be positive");
        n *= e;
    }
    return n;
}

void check_finite(const std::vector<cplx>& data) {
    for (const cplx& v : data) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument("tensor entries must be finite");
    }
}

std::vector<std::size_t> row_major_strides(
    const std::vector<std::size_t>& shape) {
    std::vector<std::size_t> strides(shape.size(), 1);
    for (std::size_t k = shape.size(); k-- > 1;)
        strides[k - 1] = strides[k] * shape[k];
    return strides;
}

}  // namespace

Tensor::Tensor(std::vector<std::size_t> shape)
    : shape_(std::move(shape)), data_(shape_size(shape_)) {}

Tensor::Tensor(std::vector<std::size_t> shape, std::vector<cplx> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
    if (data_.size() != shape_size(shape_))
        throw std::invalid_argument("tensor data size does not match shape");
    check_finite(data_);
}

Tensor Tensor::scalar(cplx value) { return Tensor({}, {value}); }

Tensor Tensor::identity(std::size_t dim) {
    Tensor t({dim, dim});
    for (std::size_t i = 0; i < dim; ++i) t.data_[i * dim + i] = 1.0;
    return t;
}

Tensor Tensor::matrix(std::size_t rows, std::size_t cols,
                      std::initializer_list<cplx> entries) {
    return Tensor({rows, cols}, std::vector<cplx>(entries));
}

std::size_t Tensor::extent(std::size_t axis) const {
    if (axis >= shape_.size()) throw std::out_of_range("tensor axis out of range");
    return shape_[axis];
}

std::size_t Tensor::offset(std::initializer_list<std::size_t> indices) const {
    if (indices.size() != shape_.size())
        throw std::invalid_argument("index rank does not match tensor rank");
    std::size_t off = 0, axis = 0;
    for (std::size_t idx : indices) {
        if (idx >= shape_[axis]) throw std::out_of_range("tensor index out of range");
        off = off * shape_[axis] + idx;
        ++axis;
    }
    return off;
}

cplx Tensor::at(std::initializer_list<std::size_t> indices) const {
    return data_[offset(indices)];
}

cplx& Tensor::at(std::initializer_list<std::size_t> indices) {
    return data_[offset(indices)];
}

Tensor tensor_product(const Tensor& a, const Tensor& b) {
    std::vector<std::size_t> shape = a.shape();
    shape.insert(shape.end(), b.shape().begin(), b.shape().end());
    Tensor out(std::move(shape));
    const std::size_t bn = b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
        const cplx av = a.data()[i];
        cplx* dst = out.data().data() + i * bn;
        for (std::size_t j = 0; j < bn; ++j) dst[j] = av * b.data()[j];
    }
    return out;
}

Tensor permute(const Tensor& a, const std::vector<std::size_t>& order) {
    const std::size_t r = a.rank();
    if (order.size() != r)
        throw std::invalid_argument("permutation size does not match rank");
    std::vector<bool> seen(r, false);
    for (std::size_t ax : order) {
        if (ax >= r || seen[ax])
            throw std::invalid_argument("invalid axis permutation");
        seen[ax] = true;
    }
    std::vector<std::size_t> shape(r);
    for (std::size_t k = 0; k < r; ++k) shape[k] = a.shape()[order[k]];
    Tensor out(shape);
    if (r == 0) {
        out.data() = a.data();
        return out;
    }
    const auto src_strides = row_major_strides(a.shape());
    // stride of result axis k in the source layout
    std::vector<std::size_t> strides(r);
    for (std::size_t k = 0; k < r; ++k) strides[k] = src_strides[order[k]];
    std::vector<std::size_t> idx(r, 0);
    std::size_t src = 0;
    for (std::size_t dst = 0; dst < out.size(); ++dst) {
        out.data()[dst] = a.data()[src];
        for (std::size_t k = r; k-- > 0;) {
            if (++idx[k] < shape[k]) {
                src += strides[k];
                break;
            }
            src -= strides[k] * (shape[k] - 1);
            idx[k] = 0;
        }
    }
    return out;
}

Tensor contract(const Tensor& a, const Tensor& b,
                const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
    std::vector<bool> used_a(a.rank(), false), used_b(b.rank(), false);
    for (const auto& [ax, bx] : pairs) {
        if (ax >= a.rank() || bx >= b.rank())
            throw std::invalid_argument("contract: axis out of range for pair (" +
                                        std::to_string(ax) + ", " +
                                        std::to_string(bx) + ")");
        if (used_a[ax] || used_b[bx])
            throw std::invalid_argument("contract: axis repeated in pair (" +
                                        std::to_string(ax) + ", " +
                                        std::to_string(bx) + ")");
        if (a.shape()[ax] != b.shape()[bx])
            throw std::invalid_argument(
                "contract: extent mismatch for pair (" + std::to_string(ax) +
                ", " + std::to_string(bx) + "): " +
                std::to_string(a.shape()[ax]) + " vs " +
                std::to_string(b.shape()[bx]));
        used_a[ax] = used_b[bx] = true;
    }
    std::vector<std::size_t> free_a, free_b;
    for (std::size_t k = 0; k < a.rank(); ++k)
        if (!used_a[k]) free_a.push_back(k);
    for (std::size_t k = 0; k < b.rank(); ++k)
        if (!used_b[k]) free_b.push_back(k);

    // reshape to matrices: a -> (free_a, contracted), b -> (contracted, free_b)
    std::vector<std::size_t> perm_a = free_a, perm_b;
    for (const auto& p : pairs) perm_a.push_back(p.first);
    for (const auto& p : pairs) perm_b.push_back(p.second);
    for (std::size_t k : free_b) perm_b.push_back(k);
    const Tensor pa = permute(a, perm_a);
    const Tensor pb = permute(b, perm_b);

    std::size_t rows = 1, inner = 1, cols = 1;
    std::vector<std::size_t> out_shape;
    for (std::size_t k : free_a) {
        rows *= a.shape()[k];
        out_shape.push_back(a.shape()[k]);
    }
    for (const auto& p : pairs) inner *= a.shape()[p.first];
    for (std::size_t k : free_b) {
        cols *= b.shape()[k];
        out_shape.push_back(b.shape()[k]);
    }
    Tensor out(out_shape);
    kernels::active().matmul(pa.data().data(), pb.data().data(),
                             out.data().data(), rows, inner, cols);
    return out;
}

Tensor trace_axes(const Tensor& a, std::size_t axis1, std::size_t axis2) {
    if (axis1 >= a.rank() || axis2 >= a.rank())
        throw std::invalid_argument("trace_axes: axis out of range");
    if (axis1 == axis2)
        throw std::invalid_argument("trace_axes: axes must differ");
    if (a.shape()[axis1] != a.shape()[axis2])
        throw std::invalid_argument(
            "trace_axes: extent mismatch: " + std::to_string(a.shape()[axis1]) +
            " vs " + std::to_string(a.shape()[axis2]));
    std::vector<std::size_t> keep;
    for (std::size_t k = 0; k < a.rank(); ++k)
        if (k != axis1 && k != axis2) keep.push_back(k);
    std::vector<std::size_t> shape;
    for (std::size_t k : keep) shape.push_back(a.shape()[k]);
    Tensor out(shape);
    const auto strides = row_major_strides(a.shape());
    const std::size_t diag_stride = strides[axis1] + strides[axis2];
    const std::size_t d = a.shape()[axis1];
    std::vector<std::size_t> idx(keep.size(), 0);
    std::size_t base = 0;
    for (std::size_t dst = 0; dst < out.size(); ++dst) {
        cplx s = 0.0;
        for (std::size_t k = 0; k < d; ++k) s += a.data()[base + k * diag_stride];
        out.data()[dst] = s;
        for (std::size_t k = keep.size(); k-- > 0;) {
            if (++idx[k] < shape[k]) {
                base += strides[keep[k]];
                break;
            }
            base -= strides[keep[k]] * (shape[k] - 1);
            idx[k] = 0;
        }
    }
    return out;
}

Tensor conj_transpose(const Tensor& m) {
    if (m.rank() != 2)
        throw std::invalid_argument("conj_transpose requires a rank-2 tensor");
    const std::size_t r = m.shape()[0], c = m.shape()[1];
    Tensor out({c, r});
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            out.data()[j * r + i] = std::conj(m.data()[i * c + j]);
    return out;
}

Tensor reshape(Tensor t, std::vector<std::size_t> shape) {
    if (shape_size(shape) != t.size())
        throw std::invalid_argument("reshape: size mismatch");
    return Tensor(std::move(shape), std::move(t.data()));
}

HermitianMatrix::HermitianMatrix(std::size_t dim, std::vector<cplx> entries)
    : dim_(dim), entries_(std::move(entries)) {
    if (dim == 0 || !std::has_single_bit(dim))
        throw std::invalid_argument("HermitianMatrix dimension must be a power of two");
    if (entries_.size() != dim * dim)
        throw std::invalid_argument("HermitianMatrix entry count mismatch");
    check_finite(entries_);
    double dev = 0.0;
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i; j < dim; ++j) {
            const cplx d = entries_[i * dim + j] - std::conj(entries_[j * dim + i]);
            dev = std::max(dev, std::abs(d));
        }
    if (dev > kHermiticityTolerance)
        throw std::invalid_argument("matrix is not Hermitian (max deviation " +
                                    std::to_string(dev) + ")");
}

HermitianMatrix HermitianMatrix::zero(std::size_t dim) {
    return HermitianMatrix(dim, std::vector<cplx>(dim * dim));
}

HermitianMatrix HermitianMatrix::from_tensor(const Tensor& t) {
    if (t.rank() != 2 || t.shape()[0] != t.shape()[1])
        throw std::invalid_argument("expected a square rank-2 tensor");
    return HermitianMatrix(t.shape()[0], t.data());
}

std::size_t HermitianMatrix::n_qubits() const {
    return static_cast<std::size_t>(std::countr_zero(dim_));
}

Tensor HermitianMatrix::as_tensor() const {
    return Tensor({dim_, dim_}, entries_);
}

std::vector<cplx> Eigensystem::eigenvector(std::size_t k) const {
    std::vector<cplx> v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = vectors[i * dim + k];
    return v;
}

namespace {

double off_diagonal_norm(const std::vector<cplx>& a, std::size_t d) {
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            if (i != j) s += std::norm(a[i * d + j]);
    return std::sqrt(s);
}

Eigensystem jacobi(const HermitianMatrix& m, bool want_vectors) {
    const std::size_t d = m.dim();
    std::vector<cplx> a = m.entries();
    std::vector<cplx> v;
    if (want_vectors) {
        v.assign(d * d, 0.0);
        for (std::size_t i = 0; i < d; ++i) v[i * d + i] = 1.0;
    }
    const double norm = std::sqrt(kernels::active().sum_abs2(a.data(), a.size()));
    const double tol = 1e-12 * std::max(1.0, norm);
    const double rotate_above = tol / (2.0 * static_cast<double>(d));
    bool converged = (d == 1);
    for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
        if (off_diagonal_norm(a, d) <= tol) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p < d; ++p) {
            for (std::size_t q = p + 1; q < d; ++q) {
                const cplx apq = a[p * d + q];
                const double beta = std::abs(apq);
                if (beta <= rotate_above) continue;
                const double app = a[p * d + p].real();
                const double aqq = a[q * d + q].real();
                const double tau = (aqq - app) / (2.0 * beta);
                const double t =
                    (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                 : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cplx alpha = apq / beta;
                const cplx gpp = alpha * c;  // G[p][p]
                const cplx gpq = alpha * s;  // G[p][q]
                for (std::size_t i = 0; i < d; ++i) {
                    if (i == p || i == q) continue;
                    const cplx aip = a[i * d + p];
                    const cplx aiq = a[i * d + q];
                    a[i * d + p] = gpp * aip - s * aiq;
                    a[i * d + q] = gpq * aip + c * aiq;
                    a[p * d + i] = std::conj(a[i * d + p]);
                    a[q * d + i] = std::conj(a[i * d + q]);
                }
                a[p * d + p] = app - t * beta;
                a[q * d + q] = aqq + t * beta;
                a[p * d + q] = 0.0;
                a[q * d + p] = 0.0;
                if (want_vectors) {
                    for (std::size_t i = 0; i < d; ++i) {
                        const cplx vip = v[i * d + p];
                        const cplx viq = v[i * d + q];
                        v[i * d + p] = gpp * vip - s * viq;
                        v[i * d + q] = gpq * vip + c * viq;
                    }
                }
            }
        }
    }
    if (!converged && off_diagonal_norm(a, d) > tol)
        throw std::runtime_error("Jacobi eigensolver did not converge");

    std::vector<std::size_t> perm(d);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t x, std::size_t y) {
        return a[x * d + x].real() < a[y * d + y].real();
    });
    Eigensystem out;
    out.dim = d;
    out.values.resize(d);
    for (std::size_t k = 0; k < d; ++k) out.values[k] = a[perm[k] * d + perm[k]].real();
    if (want_vectors) {
        out.vectors.resize(d * d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t k = 0; k < d; ++k)
                out.vectors[i * d + k] = v[i * d + perm[k]];
    }
    return out;
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const HermitianMatrix& m) {
    return jacobi(m, false).values;
}

Eigensystem hermitian_eigensystem(const HermitianMatrix& m) {
    return jacobi(m, true);
}

}  // namespace tnvqe
