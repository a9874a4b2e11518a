#include "tnvqe/pauli.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "tnvqe/kernels.hpp"
#include "tnvqe/utn.hpp"

namespace tnvqe {
namespace {

constexpr const char* kAlphabet = "IXYZ";

cplx quarter_phase(unsigned ny) {
    static const cplx table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[ny & 3u];
}

std::string word_from_index(std::uint64_t idx, std::size_t n) {
    std::string w(n, 'I');
    for (std::size_t site = n; site-- > 0;) {
        w[site] = kAlphabet[idx & 3u];
        idx >>= 2;
    }
    return w;
}

}  // namespace

PauliString::PauliString(std::string w) : word(std::move(w)) {
    if (word.empty()) throw std::invalid_argument("PauliString: empty word");
    for (char c : word)
        if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z')
            throw std::invalid_argument(
                std::string("PauliString: invalid character '") + c + "'");
}

PauliMasks pauli_masks(std::string_view word) {
    PauliMasks m;
    const std::size_t n = word.size();
    for (std::size_t site = 0; site < n; ++site) {
        const std::uint64_t bit = std::uint64_t{1} << (n - 1 - site);
        switch (word[site]) {
            case 'I': break;
            case 'X': m.x |= bit; break;
            case 'Y': m.x |= bit; m.z |= bit; ++m.y_count; break;
            case 'Z': m.z |= bit; break;
            default:
                throw std::invalid_argument("pauli_masks: invalid character");
        }
    }
    return m;
}

PauliMasks pauli_masks(std::uint64_t index, std::size_t n) {
    PauliMasks m;
    for (std::size_t site = n; site-- > 0;) {
        const unsigned digit = index & 3u;
        index >>= 2;
        const std::uint64_t bit = std::uint64_t{1} << (n - 1 - site);
        if (digit == 1 || digit == 2) m.x |= bit;
        if (digit == 2 || digit == 3) m.z |= bit;
        if (digit == 2) ++m.y_count;
    }
    return m;
}

std::uint64_t pauli_word_index(std::string_view word) {
    std::uint64_t idx = 0;
    for (char c : word) {
        unsigned digit = 0;
        switch (c) {
            case 'I': digit = 0; break;
            case 'X': digit = 1; break;
            case 'Y': digit = 2; break;
            case 'Z': digit = 3; break;
            default:
                throw std::invalid_argument("pauli_word_index: invalid character");
        }
        idx = (idx << 2) | digit;
    }
    return idx;
}

std::vector<PauliString> enumerate_strings(std::size_t n) {
    if (n == 0 || n > 16)
        throw std::invalid_argument("enumerate_strings: n must be in [1, 16]");
    const std::uint64_t count = std::uint64_t{1} << (2 * n);
    std::vector<PauliString> out;
    out.reserve(count);
    for (std::uint64_t idx = 0; idx < count; ++idx)
        out.push_back(PauliString(word_from_index(idx, n)));
    return out;
}

Tensor string_matrix(const PauliString& s) {
    const std::size_t n = s.size();
    const std::size_t dim = std::size_t{1} << n;
    const PauliMasks m = pauli_masks(s.word);
    const cplx lead = quarter_phase(m.y_count);
    Tensor out({dim, dim});
    for (std::uint64_t col = 0; col < dim; ++col) {
        const double sign = (std::popcount(col & m.z) & 1) ? -1.0 : 1.0;
        out.data()[(col ^ m.x) * dim + col] = lead * sign;
    }
    return out;
}

PauliDecomposition::PauliDecomposition(std::size_t n) : n_(n) {
    if (n == 0) throw std::invalid_argument("PauliDecomposition: n must be >= 1");
}

void PauliDecomposition::set(std::string_view word, cplx coefficient) {
    if (word.size() != n_)
        throw std::invalid_argument("PauliDecomposition: word length mismatch");
    if (std::abs(coefficient) < kZeroThreshold) {
        coeffs_.erase(std::string(word));
        return;
    }
    coeffs_[std::string(word)] = coefficient;
}

cplx PauliDecomposition::coefficient(std::string_view word) const {
    const auto it = coeffs_.find(std::string(word));
    return it == coeffs_.end() ? cplx{0.0, 0.0} : it->second;
}

PauliDecomposition decompose(const HermitianMatrix& h) {
    const std::size_t n = h.n_qubits();
    if (n == 0 || n > 16)
        throw std::invalid_argument("decompose: dimension out of range");
    const std::size_t dim = h.dim();
    const std::uint64_t count = std::uint64_t{1} << (2 * n);
    PauliDecomposition out(n);
    const auto& k = kernels::active();
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        const PauliMasks m = pauli_masks(idx, n);
        const cplx tr =
            k.pauli_trace(h.entries().data(), dim, m.x, m.z, m.y_count);
        const cplx c = tr / static_cast<double>(dim);
        if (std::abs(c) >= PauliDecomposition::kZeroThreshold)
            out.set(word_from_index(idx, n), c);
    }
    return out;
}

HermitianMatrix reconstruct(const PauliDecomposition& d) {
    const std::size_t n = d.n();
    const std::size_t dim = std::size_t{1} << n;
    std::vector<cplx> entries(dim * dim);
    for (const auto& [word, c] : d.coefficients()) {
        const PauliMasks m = pauli_masks(word);
        const cplx lead = c * quarter_phase(m.y_count);
        for (std::uint64_t col = 0; col < dim; ++col) {
            const double sign = (std::popcount(col & m.z) & 1) ? -1.0 : 1.0;
            entries[(col ^ m.x) * dim + col] += lead * sign;
        }
    }
    return HermitianMatrix(dim, std::move(entries));
}

PauliDecomposition transformed_coefficients(const HermitianMatrix& h,
                                            const Tensor& u) {
    return decompose(similarity_transform(h, u));
}

}  // namespace tnvqe
