#include "tnvqe/circuit.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include "tnvqe/kernels.hpp"

namespace tnvqe {

double Statevector::norm() const {
    return std::sqrt(
        kernels::active().sum_abs2(amplitudes.data(), amplitudes.size()));
}

Statevector init_zero_state(std::size_t n_qubits) {
    if (n_qubits == 0 || n_qubits > 24)
        throw std::invalid_argument("init_zero_state: n_qubits must be in [1, 24]");
    Statevector s;
    s.n_qubits = n_qubits;
    s.amplitudes.assign(std::size_t{1} << n_qubits, cplx{0.0, 0.0});
    s.amplitudes[0] = 1.0;
    return s;
}

namespace {

std::uint64_t qubit_mask(const Statevector& s, std::size_t qubit) {
    if (qubit >= s.n_qubits)
        throw std::invalid_argument("qubit index " + std::to_string(qubit) +
                                    " out of range for " +
                                    std::to_string(s.n_qubits) + " qubits");
    return std::uint64_t{1} << (s.n_qubits - 1 - qubit);
}

}  // namespace

void apply_rot(Statevector& s, std::size_t qubit, double a, double b, double c) {
    const std::uint64_t mask = qubit_mask(s, qubit);
    const double cos_b = std::cos(b / 2), sin_b = std::sin(b / 2);
    const double sum = (a + c) / 2, dif = (a - c) / 2;
    // RZ(c) RY(b) RZ(a)
    const cplx u[4] = {
        cplx{std::cos(sum), -std::sin(sum)} * cos_b,
        -cplx{std::cos(dif), std::sin(dif)} * sin_b,
        cplx{std::cos(dif), -std::sin(dif)} * sin_b,
        cplx{std::cos(sum), std::sin(sum)} * cos_b,
    };
    kernels::active().apply_one_qubit(s.amplitudes.data(), s.amplitudes.size(),
                                      mask, u);
}

void apply_cnot(Statevector& s, std::size_t control, std::size_t target) {
    if (control == target)
        throw std::invalid_argument("apply_cnot: control and target must differ");
    const std::uint64_t cmask = qubit_mask(s, control);
    const std::uint64_t tmask = qubit_mask(s, target);
    const std::size_t dim = s.amplitudes.size();
    for (std::uint64_t i = 0; i < dim; ++i)
        if ((i & cmask) != 0 && (i & tmask) == 0)
            std::swap(s.amplitudes[i], s.amplitudes[i | tmask]);
}

AnsatzWeights::AnsatzWeights(std::size_t layers_, std::size_t n_qubits_)
    : layers(layers_), n_qubits(n_qubits_), angles(layers_ * n_qubits_ * 3) {
    if (layers == 0) throw std::invalid_argument("AnsatzWeights: layers must be >= 1");
    if (n_qubits == 0)
        throw std::invalid_argument("AnsatzWeights: n_qubits must be >= 1");
}

double AnsatzWeights::at(std::size_t layer, std::size_t qubit,
                         std::size_t k) const {
    return angles[(layer * n_qubits + qubit) * 3 + k];
}

double& AnsatzWeights::at(std::size_t layer, std::size_t qubit, std::size_t k) {
    return angles[(layer * n_qubits + qubit) * 3 + k];
}

Statevector run_ansatz(const AnsatzWeights& w, const CircuitConfig& cfg) {
    if (w.n_qubits != cfg.n_qubits)
        throw std::invalid_argument("run_ansatz: qubit count mismatch");
    if (w.angles.size() != w.layers * w.n_qubits * 3)
        throw std::invalid_argument("run_ansatz: weight shape mismatch");
    if (!cfg.entangler_ranges.empty() &&
        cfg.entangler_ranges.size() != w.layers)
        throw std::invalid_argument(
            "run_ansatz: entangler range count does not match layers");
    const std::size_t n = cfg.n_qubits;
    Statevector s = init_zero_state(n);
    for (std::size_t layer = 0; layer < w.layers; ++layer) {
        for (std::size_t q = 0; q < n; ++q)
            apply_rot(s, q, w.at(layer, q, 0), w.at(layer, q, 1),
                      w.at(layer, q, 2));
        if (n > 1) {
            const std::size_t r = cfg.entangler_ranges.empty()
                                      ? 1
                                      : cfg.entangler_ranges[layer];
            if (r < 1 || r >= n)
                throw std::invalid_argument(
                    "run_ansatz: entangler range must be in [1, n)");
            for (std::size_t i = 0; i < n; ++i)
                apply_cnot(s, i, (i + r) % n);
        }
    }
    return s;
}

double expectation(const Statevector& s, const PauliString& p) {
    if (p.size() != s.n_qubits)
        throw std::invalid_argument("expectation: word length mismatch");
    const PauliMasks m = pauli_masks(p.word);
    const cplx v = kernels::active().pauli_expectation(
        s.amplitudes.data(), s.amplitudes.size(), m.x, m.z, m.y_count);
    return v.real();
}

double expectation(const Statevector& s, const PauliDecomposition& observable) {
    if (observable.n() != s.n_qubits)
        throw std::invalid_argument("expectation: observable size mismatch");
    const auto& k = kernels::active();
    double e = 0.0;
    for (const auto& [word, c] : observable.coefficients()) {
        const PauliMasks m = pauli_masks(word);
        const cplx v = k.pauli_expectation(s.amplitudes.data(),
                                           s.amplitudes.size(), m.x, m.z,
                                           m.y_count);
        e += c.real() * v.real();
    }
    return e;
}

std::vector<double> param_shift_grad(const AnsatzWeights& w,
                                     const CircuitConfig& cfg,
                                     const PauliDecomposition& observable) {
    constexpr double kShift = std::numbers::pi / 2;
    std::vector<double> grad(w.size());
    AnsatzWeights shifted = w;
    for (std::size_t k = 0; k < w.size(); ++k) {
        shifted.angles[k] = w.angles[k] + kShift;
        const double plus = expectation(run_ansatz(shifted, cfg), observable);
        shifted.angles[k] = w.angles[k] - kShift;
        const double minus = expectation(run_ansatz(shifted, cfg), observable);
        shifted.angles[k] = w.angles[k];
        grad[k] = (plus - minus) / 2.0;
    }
    return grad;
}

}  // namespace tnvqe
