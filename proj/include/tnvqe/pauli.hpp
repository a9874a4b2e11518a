#pragma once

// Pauli strings over {I, X, Y, Z}, their dense matrices, and trace-projection
// decomposition of Hermitian matrices into Pauli coefficients.
//
// Qubit ordering convention, shared with the circuit module: character i of a
// word acts on qubit i, and qubit i maps to bit (n-1-i) of the basis index
// (leftmost character = most significant bit).

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "tnvqe/tensor.hpp"

namespace tnvqe {

struct PauliString {
    std::string word;

    explicit PauliString(std::string w);
    std::size_t size() const { return word.size(); }
};

// Symplectic form of a word: P|j> = phase(j) |j ^ x| with
// phase(j) = i^y_count * (-1)^popcount(j & z).
struct PauliMasks {
    std::uint64_t x = 0;  // bits carrying X or Y
    std::uint64_t z = 0;  // bits carrying Y or Z
    unsigned y_count = 0;
};

PauliMasks pauli_masks(std::string_view word);

// Masks of the index-th word of length n (see pauli_word_index) without
// materializing the word.
PauliMasks pauli_masks(std::uint64_t index, std::size_t n);

// Base-4 rank of the word in the lexicographic (I, X, Y, Z) enumeration.
std::uint64_t pauli_word_index(std::string_view word);

// All 4^n words in lexicographic order over (I, X, Y, Z).
std::vector<PauliString> enumerate_strings(std::size_t n);

// Dense 2^n x 2^n matrix of the word.
Tensor string_matrix(const PauliString& s);

class PauliDecomposition {
  public:
    explicit PauliDecomposition(std::size_t n);

    std::size_t n() const { return n_; }
    const std::map<std::string, cplx>& coefficients() const { return coeffs_; }

    // Stores the coefficient, dropping magnitudes below 1e-12.
    void set(std::string_view word, cplx coefficient);
    cplx coefficient(std::string_view word) const;

    static constexpr double kZeroThreshold = 1e-12;

  private:
    std::size_t n_;
    std::map<std::string, cplx> coeffs_;
};

// c_P = Tr[P h] / 2^n for every string P; near-zero coefficients dropped.
PauliDecomposition decompose(const HermitianMatrix& h);

// sum_P c_P * P as a dense matrix.
HermitianMatrix reconstruct(const PauliDecomposition& d);

// decompose(U^dag h U): the theta-dependent coefficients of the transformed
// Hamiltonian.
PauliDecomposition transformed_coefficients(const HermitianMatrix& h,
                                            const Tensor& u);

}  // namespace tnvqe
