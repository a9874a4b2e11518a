#pragma once

// Exact statevector simulator for the strongly-entangling-layers ansatz:
// per-qubit RZ-RY-RZ rotations followed by a ring of CNOT entanglers per
// layer, with Pauli expectation values and parameter-shift gradients.
// Qubit i maps to bit (n-1-i) of the amplitude index, matching the Pauli
// string convention.

#include <cstddef>
#include <vector>

#include "tnvqe/pauli.hpp"
#include "tnvqe/tensor.hpp"

namespace tnvqe {

struct Statevector {
    std::size_t n_qubits = 0;
    std::vector<cplx> amplitudes;

    double norm() const;
};

Statevector init_zero_state(std::size_t n_qubits);

// Applies RZ(c) * RY(b) * RZ(a) to the target qubit (a acts first).
void apply_rot(Statevector& s, std::size_t qubit, double a, double b, double c);

void apply_cnot(Statevector& s, std::size_t control, std::size_t target);

// layers x n_qubits x 3 rotation angles, flattened row-major.
struct AnsatzWeights {
    std::size_t layers = 0;
    std::size_t n_qubits = 0;
    std::vector<double> angles;

    AnsatzWeights() = default;
    AnsatzWeights(std::size_t layers, std::size_t n_qubits);

    double at(std::size_t layer, std::size_t qubit, std::size_t k) const;
    double& at(std::size_t layer, std::size_t qubit, std::size_t k);
    std::size_t size() const { return angles.size(); }
};

struct CircuitConfig {
    std::size_t n_qubits = 0;
    // Entangler range per layer; empty means range 1 everywhere. Each range
    // must satisfy 1 <= r < n_qubits. Single-qubit circuits have no
    // entanglers and ignore the ranges.
    std::vector<std::size_t> entangler_ranges;
};

// Per layer: rotations on every qubit, then CNOT(i, (i + r) mod n) for every
// i; applied to |0...0>.
Statevector run_ansatz(const AnsatzWeights& w, const CircuitConfig& cfg);

// <psi| P |psi>; real for any state.
double expectation(const Statevector& s, const PauliString& p);

// sum_P Re(c_P) <P>, iterated in word order.
double expectation(const Statevector& s, const PauliDecomposition& observable);

// d<observable>/d(angle) by the parameter-shift rule (+-pi/2), one entry per
// weight in the same flattened order.
std::vector<double> param_shift_grad(const AnsatzWeights& w,
                                     const CircuitConfig& cfg,
                                     const PauliDecomposition& observable);

}  // namespace tnvqe
