#include "tnvqe/hamiltonian.hpp"

#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "tnvqe/pauli.hpp"

namespace tnvqe {

TfimParams::TfimParams(std::size_t n_sites_, double j_, double g_)
    : n_sites(n_sites_), j(j_), g(g_) {
    if (n_sites < 2 || n_sites > 12)
        throw std::invalid_argument("TfimParams: n_sites must be in [2, 12]");
    if (!std::isfinite(j) || j == 0.0)
        throw std::invalid_argument("TfimParams: J must be finite and nonzero");
    if (!std::isfinite(g))
        throw std::invalid_argument("TfimParams: g must be finite");
}

PauliSum::PauliSum(std::size_t n) : n_(n) {
    if (n == 0) throw std::invalid_argument("PauliSum: n must be >= 1");
}

void PauliSum::add(std::string_view word, double coefficient) {
    if (word.size() != n_)
        throw std::invalid_argument("PauliSum: word length mismatch");
    [[maybe_unused]] PauliString validated{std::string(word)};
    const std::string key(word);
    const auto it = terms_.find(key);
    const double value =
        (it == terms_.end() ? 0.0 : it->second) + coefficient;
    if (std::abs(value) < kZeroThreshold)
        terms_.erase(key);
    else
        terms_[key] = value;
}

double PauliSum::coefficient(std::string_view word) const {
    const auto it = terms_.find(std::string(word));
    return it == terms_.end() ? 0.0 : it->second;
}

PauliSum build_tfim_pauli_sum(const TfimParams& p) {
    PauliSum sum(p.n_sites);
    for (std::size_t bond = 0; bond + 1 < p.n_sites; ++bond) {
        std::string w(p.n_sites, 'I');
        w[bond] = 'Z';
        w[bond + 1] = 'Z';
        sum.add(w, -p.j);
    }
    for (std::size_t site = 0; site < p.n_sites; ++site) {
        std::string w(p.n_sites, 'I');
        w[site] = 'X';
        sum.add(w, p.j * p.g);
    }
    return sum;
}

namespace {

// 2x2 operator entries used in the W tensors
struct Op2 {
    cplx e[4];
};

constexpr Op2 kId{{1.0, 0.0, 0.0, 1.0}};
constexpr Op2 kMinusZ{{-1.0, 0.0, 0.0, 1.0}};
constexpr Op2 kZ{{1.0, 0.0, 0.0, -1.0}};

Op2 scaled_x(double g) { return Op2{{0.0, g, g, 0.0}}; }

void put_block(Tensor& t, std::vector<std::size_t> prefix, const Op2& op) {
    std::size_t base = 0;
    for (std::size_t a = 0; a < prefix.size(); ++a)
        base = base * t.shape()[a] + prefix[a];
    cplx* dst = t.data().data() + base * 4;
    for (std::size_t k = 0; k < 4; ++k) dst[k] = op.e[k];
}

}  // namespace

MpoHamiltonian build_tfim_mpo(const TfimParams& p) {
    MpoHamiltonian mpo;
    mpo.bond_dim = 3;
    mpo.j = p.j;

    Tensor first({3, 2, 2});
    put_block(first, {0}, kId);
    put_block(first, {1}, kMinusZ);
    put_block(first, {2}, scaled_x(p.g));
    mpo.tensors.push_back(std::move(first));

    for (std::size_t site = 1; site + 1 < p.n_sites; ++site) {
        Tensor bulk({3, 3, 2, 2});
        put_block(bulk, {0, 0}, kId);
        put_block(bulk, {0, 1}, kMinusZ);
        put_block(bulk, {0, 2}, scaled_x(p.g));
        put_block(bulk, {1, 2}, kZ);
        put_block(bulk, {2, 2}, kId);
        mpo.tensors.push_back(std::move(bulk));
    }

    // boundary column reversed relative to the first tensor so the virtual
    // bond telescopes to the Hamiltonian
    Tensor last({3, 2, 2});
    put_block(last, {0}, scaled_x(p.g));
    put_block(last, {1}, kZ);
    put_block(last, {2}, kId);
    mpo.tensors.push_back(std::move(last));
    return mpo;
}

HermitianMatrix dense_from_pauli_sum(const PauliSum& ps) {
    const std::size_t n = ps.n();
    const std::size_t dim = std::size_t{1} << n;
    std::vector<cplx> entries(dim * dim);
    static const cplx phase_table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    for (const auto& [word, coeff] : ps.terms()) {
        const PauliMasks m = pauli_masks(word);
        const cplx lead = coeff * phase_table[m.y_count & 3u];
        for (std::uint64_t col = 0; col < dim; ++col) {
            const double sign = (std::popcount(col & m.z) & 1) ? -1.0 : 1.0;
            entries[(col ^ m.x) * dim + col] += lead * sign;
        }
    }
    return HermitianMatrix(dim, std::move(entries));
}

HermitianMatrix dense_from_mpo(const MpoHamiltonian& m) {
    const std::size_t n = m.tensors.size();
    if (n < 2) throw std::invalid_argument("dense_from_mpo: need >= 2 tensors");
    if (m.tensors.front().rank() != 3 || m.tensors.back().rank() != 3)
        throw std::invalid_argument("dense_from_mpo: boundary tensors must be rank 3");

    // (bond, row, col) -> (row, col, bond)
    Tensor acc = permute(m.tensors.front(), {1, 2, 0});
    for (std::size_t site = 1; site + 1 < n; ++site) {
        const Tensor& w = m.tensors[site];
        if (w.rank() != 4)
            throw std::invalid_argument("dense_from_mpo: bulk tensors must be rank 4");
        acc = contract(acc, w, {{acc.rank() - 1, 0}});
        // (..., right, row, col) -> (..., row, col, right)
        std::vector<std::size_t> order(acc.rank());
        std::iota(order.begin(), order.end(), std::size_t{0});
        const std::size_t r = acc.rank();
        order[r - 3] = r - 2;
        order[r - 2] = r - 1;
        order[r - 1] = r - 3;
        acc = permute(acc, order);
    }
    acc = contract(acc, m.tensors.back(), {{acc.rank() - 1, 0}});

    // interleaved (r1, c1, ..., rn, cn) -> (rows..., cols...)
    std::vector<std::size_t> order;
    for (std::size_t k = 0; k < n; ++k) order.push_back(2 * k);
    for (std::size_t k = 0; k < n; ++k) order.push_back(2 * k + 1);
    Tensor mat = reshape(permute(acc, order),
                         {std::size_t{1} << n, std::size_t{1} << n});
    for (cplx& v : mat.data()) v *= m.j;
    return HermitianMatrix::from_tensor(mat);
}

double exact_ground_energy(const HermitianMatrix& h) {
    return hermitian_eigenvalues(h).front();
}

}  // namespace tnvqe
