#pragma once

// Dense complex tensors with row-major entry order (last index fastest), the
// contraction/trace/permutation operations built on them, and a cyclic Jacobi
// eigensolver for Hermitian matrices. All functions are pure; tensors are
// value types.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

namespace tnvqe {

using cplx = std::complex<double>;

class Tensor {
  public:
    Tensor() = default;

    // Zero-filled tensor. An empty shape is a rank-0 scalar with one entry.
    explicit Tensor(std::vector<std::size_t> shape);

    // Validates entry count against the shape and rejects non-finite data.
    Tensor(std::vector<std::size_t> shape, std::vector<cplx> data);

    static Tensor scalar(cplx value);
    static Tensor identity(std::size_t dim);
    static Tensor matrix(std::size_t rows, std::size_t cols,
                         std::initializer_list<cplx> entries);

    std::size_t rank() const { return shape_.size(); }
    const std::vector<std::size_t>& shape() const { return shape_; }
    std::size_t extent(std::size_t axis) const;
    std::size_t size() const { return data_.size(); }
    const std::vector<cplx>& data() const { return data_; }
    std::vector<cplx>& data() { return data_; }

    cplx at(std::initializer_list<std::size_t> indices) const;
    cplx& at(std::initializer_list<std::size_t> indices);

  private:
    std::size_t offset(std::initializer_list<std::size_t> indices) const;

    std::vector<std::size_t> shape_;
    std::vector<cplx> data_;
};

// Entry (i..., j...) = a(i...) * b(j...); shape is the concatenation.
Tensor tensor_product(const Tensor& a, const Tensor& b);

// Sums over the paired axes; result keeps the uncontracted axes of a followed
// by those of b, each in original order. Throws when a pair has mismatched
// extents (naming the pair) or an axis is repeated.
Tensor contract(const Tensor& a, const Tensor& b,
                const std::vector<std::pair<std::size_t, std::size_t>>& pairs);

// Removes axis1/axis2, summing entries along their diagonal.
Tensor trace_axes(const Tensor& a, std::size_t axis1, std::size_t axis2);

// order[k] = original axis that becomes axis k of the result.
Tensor permute(const Tensor& a, const std::vector<std::size_t>& order);

// Rank-2 only: (i, j) -> conj(a(j, i)).
Tensor conj_transpose(const Tensor& m);

// Same data, new shape; total size must match.
Tensor reshape(Tensor t, std::vector<std::size_t> shape);

// Square 2^k matrix, validated Hermitian (max |M - M^dag| <= 1e-12).
class HermitianMatrix {
  public:
    HermitianMatrix(std::size_t dim, std::vector<cplx> entries);
    static HermitianMatrix zero(std::size_t dim);
    static HermitianMatrix from_tensor(const Tensor& t);

    std::size_t dim() const { return dim_; }
    std::size_t n_qubits() const;
    const std::vector<cplx>& entries() const { return entries_; }
    cplx operator()(std::size_t row, std::size_t col) const {
        return entries_[row * dim_ + col];
    }
    Tensor as_tensor() const;

    static constexpr double kHermiticityTolerance = 1e-12;

  private:
    std::size_t dim_ = 0;
    std::vector<cplx> entries_;
};

struct Eigensystem {
    std::vector<double> values;  // ascending
    std::vector<cplx> vectors;   // row-major dim x dim, column k <-> values[k]
    std::size_t dim = 0;

    std::vector<cplx> eigenvector(std::size_t k) const;
};

// Cyclic Jacobi with deterministic sweep order; converged when the
// off-diagonal Frobenius norm drops below 1e-12 relative to ||M||_F.
std::vector<double> hermitian_eigenvalues(const HermitianMatrix& m);
Eigensystem hermitian_eigensystem(const HermitianMatrix& m);

}  // namespace tnvqe
