#pragma once

// Transverse-field Ising chain H = -J (sum_i Z_i Z_{i+1} - g sum_i X_i) on
// open boundaries, in Pauli-sum and MPO form, with dense assembly and the
// exact ground-energy oracle. Note the sign convention: expanding the
// Hamiltonian gives coefficient -J on every ZZ bond and +J*g on every X term.

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "tnvqe/tensor.hpp"

namespace tnvqe {

struct TfimParams {
    std::size_t n_sites;
    double j;  // energy prefactor, nonzero
    double g;  // transverse coupling

    TfimParams(std::size_t n_sites, double j, double g);
};

class PauliSum {
  public:
    explicit PauliSum(std::size_t n);

    std::size_t n() const { return n_; }
    const std::map<std::string, double>& terms() const { return terms_; }

    // Accumulates onto the word; coefficients below 1e-12 are dropped.
    void add(std::string_view word, double coefficient);
    double coefficient(std::string_view word) const;

    static constexpr double kZeroThreshold = 1e-12;

  private:
    std::size_t n_;
    std::map<std::string, double> terms_;
};

// W tensors of the MPO. Boundary tensors have shape (3, 2, 2) indexed
// (bond, row, col); bulk tensors have shape (3, 3, 2, 2) indexed
// (left, right, row, col). The physical matrices are the row (I, -Z, gX),
// the bulk block [[I, -Z, gX], [0, 0, Z], [0, 0, I]] and the column
// (gX, Z, I); the energy prefactor J is applied at dense assembly.
struct MpoHamiltonian {
    std::vector<Tensor> tensors;
    std::size_t bond_dim = 3;
    double j = 1.0;
};

PauliSum build_tfim_pauli_sum(const TfimParams& p);
MpoHamiltonian build_tfim_mpo(const TfimParams& p);

HermitianMatrix dense_from_pauli_sum(const PauliSum& ps);
HermitianMatrix dense_from_mpo(const MpoHamiltonian& m);

// Minimum eigenvalue via the Jacobi eigensolver.
double exact_ground_energy(const HermitianMatrix& h);

}  // namespace tnvqe
