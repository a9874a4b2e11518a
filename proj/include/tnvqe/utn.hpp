#pragma once

// Parameterized unitary tensor network: brick-wall layout over site pairs,
// one- and three-angle rotation bricks, dense assembly of U(theta), and the
// similarity transform U^dag H U with its unitarity diagnostics.

#include <cstddef>
#include <vector>

#include "tnvqe/tensor.hpp"

namespace tnvqe {

enum class RotationMode { kOneParam, kThreeParam };

std::size_t params_per_tensor(RotationMode mode);
const char* rotation_mode_name(RotationMode mode);

// Brick on sites (site, site+1) of 1-based layer `layer`.
struct Brick {
    std::size_t layer;
    std::size_t site;
};

// Brick-wall pattern: odd layers pair (0,1),(2,3),...; even layers pair
// (1,2),(3,4),.... Sites must be even when any layer is present.
class UtnLayout {
  public:
    UtnLayout(std::size_t n_sites, std::size_t n_layers);

    std::size_t n_sites() const { return n_sites_; }
    std::size_t n_layers() const { return n_layers_; }
    const std::vector<Brick>& bricks() const { return bricks_; }

  private:
    std::size_t n_sites_;
    std::size_t n_layers_;
    std::vector<Brick> bricks_;
};

using ThetaVector = std::vector<double>;

std::size_t theta_size(const UtnLayout& layout, RotationMode mode);

// diag(e^{-it}, e^{it})
Tensor rot_matrix_1(double t);

// ZYZ rotation:
//   [ e^{-i(t1+t3)/2} cos(t2/2)   -e^{-i(t1-t3)/2} sin(t2/2) ]
//   [ e^{ i(t1-t3)/2} sin(t2/2)    e^{ i(t1+t3)/2} cos(t2/2) ]
Tensor rot_matrix_3(double t1, double t2, double t3);

// R (x) R as a rank-4 tensor with legs (in1, in2, out1, out2); throws when r
// is not unitary within 1e-12.
Tensor local_unitary(const Tensor& r);

// Dense 2^n x 2^n unitary; layer 1 is the rightmost factor. n_layers = 0
// yields the identity. Throws when theta length mismatches layout x mode.
Tensor build_utn(const UtnLayout& layout, RotationMode mode,
                 const ThetaVector& theta);

// U^dag H U; requires matching dimensions and u unitary within 1e-10.
HermitianMatrix similarity_transform(const HermitianMatrix& h, const Tensor& u);

struct UnitarityReport {
    double max_deviation;     // max |(U^dag U - I)_ij|
    double normalized_trace;  // Re Tr(U^dag U) / dim
    bool pass;                // both within 1e-10
};

UnitarityReport unitarity_report(const Tensor& u);

}  // namespace tnvqe
