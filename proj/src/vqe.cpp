#include "tnvqe/vqe.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>

#include "tnvqe/kernels.hpp"

namespace tnvqe {

const char* termination_name(Termination t) {
    return t == Termination::kMaxIterations ? "max_iterations"
                                            : "vanishing_gradient";
}

double JointGradient::inf_norm() const {
    double m = 0.0;
    for (double v : theta) m = std::max(m, std::abs(v));
    for (double v : phi) m = std::max(m, std::abs(v));
    return m;
}

namespace {

double uniform_angle(std::mt19937_64& rng) {
    // 53-bit mantissa draw in [0, 1), scaled to [0, 2*pi)
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return 2.0 * std::numbers::pi * u;
}

PauliDecomposition coefficients_at(const JointProblem& p,
                                   const ThetaVector& theta) {
    return transformed_coefficients(p.hamiltonian,
                                    build_utn(p.layout, p.mode, theta));
}

// Energy of a coefficient map against precomputed per-string expectation
// values, summed in word order exactly like expectation(s, observable).
double energy_from_cached_expectations(const PauliDecomposition& coeffs,
                                       const std::vector<double>& exps) {
    double e = 0.0;
    for (const auto& [word, c] : coeffs.coefficients())
        e += c.real() * exps[pauli_word_index(word)];
    return e;
}

struct Evaluation {
    double energy;
    JointGradient grad;
};

Evaluation evaluate(const JointProblem& p, const ThetaVector& theta,
                    const AnsatzWeights& phi, double fd_step,
                    const PauliDecomposition* frozen_coeffs) {
    const PauliDecomposition coeffs =
        frozen_coeffs != nullptr ? *frozen_coeffs : coefficients_at(p, theta);
    const Statevector psi = run_ansatz(phi, p.circuit);
    Evaluation ev;
    ev.energy = expectation(psi, coeffs);
    ev.grad.phi = param_shift_grad(phi, p.circuit, coeffs);
    ev.grad.theta.assign(theta.size(), 0.0);
    if (!theta.empty()) {
        // <P>_psi for every string, reused across all finite-difference steps
        const std::size_t n = p.circuit.n_qubits;
        const std::size_t dim = psi.amplitudes.size();
        std::vector<double> exps(std::size_t{1} << (2 * n));
        const auto& k = kernels::active();
        for (std::uint64_t idx = 0; idx < exps.size(); ++idx) {
            const PauliMasks m = pauli_masks(idx, n);
            exps[idx] = k.pauli_expectation(psi.amplitudes.data(), dim, m.x,
                                            m.z, m.y_count)
                            .real();
        }
        ThetaVector shifted = theta;
        for (std::size_t i = 0; i < theta.size(); ++i) {
            shifted[i] = theta[i] + fd_step;
            const double ep = energy_from_cached_expectations(
                coefficients_at(p, shifted), exps);
            shifted[i] = theta[i] - fd_step;
            const double em = energy_from_cached_expectations(
                coefficients_at(p, shifted), exps);
            shifted[i] = theta[i];
            ev.grad.theta[i] = (ep - em) / (2.0 * fd_step);
        }
    }
    return ev;
}

void check_shapes(const JointProblem& p, const ThetaVector& theta,
                  const AnsatzWeights& phi) {
    if (theta.size() != theta_size(p.layout, p.mode))
        throw std::invalid_argument("theta length does not match the layout");
    if (phi.layers != p.circuit_layers || phi.n_qubits != p.circuit.n_qubits)
        throw std::invalid_argument("phi shape does not match the problem");
}

void check_config(const OptimizerConfig& cfg) {
    if (!(cfg.learning_rate > 0.0) || !std::isfinite(cfg.learning_rate))
        throw std::invalid_argument("learning_rate must be positive");
    if (cfg.max_iterations < 1)
        throw std::invalid_argument("max_iterations must be >= 1");
    if (!(cfg.grad_tolerance > 0.0))
        throw std::invalid_argument("grad_tolerance must be positive");
    if (!(cfg.theta_fd_step > 0.0) || !std::isfinite(cfg.theta_fd_step))
        throw std::invalid_argument("theta_fd_step must be positive");
}

}  // namespace

JointProblem make_tfim_problem(const TfimParams& params, std::size_t tn_layers,
                               RotationMode mode, std::size_t circuit_layers) {
    if (circuit_layers < 1)
        throw std::invalid_argument("make_tfim_problem: circuit_layers must be >= 1");
    HermitianMatrix h = dense_from_pauli_sum(build_tfim_pauli_sum(params));
    const double eg = exact_ground_energy(h);
    UtnLayout layout(params.n_sites, tn_layers);
    CircuitConfig circuit;
    circuit.n_qubits = params.n_sites;
    return JointProblem{std::move(h), eg,   std::move(layout),
                        mode,         circuit_layers, std::move(circuit)};
}

double energy(const JointProblem& p, const ThetaVector& theta,
              const AnsatzWeights& phi) {
    check_shapes(p, theta, phi);
    const PauliDecomposition coeffs = coefficients_at(p, theta);
    return expectation(run_ansatz(phi, p.circuit), coeffs);
}

JointGradient joint_gradient(const JointProblem& p, const ThetaVector& theta,
                             const AnsatzWeights& phi, double theta_fd_step) {
    check_shapes(p, theta, phi);
    return evaluate(p, theta, phi, theta_fd_step, nullptr).grad;
}

JointParams random_initial_params(const JointProblem& p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    ThetaVector theta(theta_size(p.layout, p.mode));
    for (double& t : theta) t = uniform_angle(rng);
    AnsatzWeights phi(p.circuit_layers, p.circuit.n_qubits);
    for (double& a : phi.angles) a = uniform_angle(rng);
    return JointParams{std::move(theta), std::move(phi)};
}

RunRecord optimize(const JointProblem& p, const JointParams& initial,
                   const OptimizerConfig& cfg) {
    check_config(cfg);
    check_shapes(p, initial.theta, initial.phi);
    ThetaVector theta = initial.theta;
    AnsatzWeights phi = initial.phi;
    std::optional<PauliDecomposition> frozen;
    if (theta.empty()) frozen = coefficients_at(p, theta);

    RunRecord rec;
    rec.termination = Termination::kMaxIterations;
    rec.rows.reserve(cfg.max_iterations);
    for (std::size_t it = 0; it < cfg.max_iterations; ++it) {
        const Evaluation ev = evaluate(p, theta, phi, cfg.theta_fd_step,
                                       frozen ? &*frozen : nullptr);
        const double ginf = ev.grad.inf_norm();
        const double rel =
            std::abs(ev.energy - p.exact_energy) / std::abs(p.exact_energy);
        rec.rows.push_back({it, ev.energy, rel, ginf});
        if (ginf < cfg.grad_tolerance) {
            rec.termination = Termination::kVanishingGradient;
            break;
        }
        if (it + 1 < cfg.max_iterations) {
            for (std::size_t i = 0; i < theta.size(); ++i)
                theta[i] -= cfg.learning_rate * ev.grad.theta[i];
            for (std::size_t i = 0; i < phi.angles.size(); ++i)
                phi.angles[i] -= cfg.learning_rate * ev.grad.phi[i];
        }
    }
    rec.final_params = JointParams{std::move(theta), std::move(phi)};
    return rec;
}

VarianceReport gradient_variance(const JointProblem& p,
                                 std::size_t sample_count, std::uint64_t seed,
                                 double theta_fd_step) {
    if (sample_count < 2)
        throw std::invalid_argument("gradient_variance: sample_count must be >= 2");
    std::mt19937_64 rng(seed);
    const std::size_t n_theta = theta_size(p.layout, p.mode);
    const std::size_t n_phi = p.circuit_layers * p.circuit.n_qubits * 3;
    VarianceReport rep;
    rep.sample_count = sample_count;
    rep.theta_variances.assign(n_theta, 0.0);
    rep.phi_variances.assign(n_phi, 0.0);
    std::optional<PauliDecomposition> frozen;
    ThetaVector theta(n_theta);
    if (theta.empty()) frozen = coefficients_at(p, theta);
    AnsatzWeights phi(p.circuit_layers, p.circuit.n_qubits);
    for (std::size_t s = 0; s < sample_count; ++s) {
        for (double& t : theta) t = uniform_angle(rng);
        for (double& a : phi.angles) a = uniform_angle(rng);
        const Evaluation ev =
            evaluate(p, theta, phi, theta_fd_step, frozen ? &*frozen : nullptr);
        for (std::size_t i = 0; i < n_theta; ++i)
            rep.theta_variances[i] += ev.grad.theta[i] * ev.grad.theta[i];
        for (std::size_t i = 0; i < n_phi; ++i)
            rep.phi_variances[i] += ev.grad.phi[i] * ev.grad.phi[i];
    }
    const double inv = 1.0 / static_cast<double>(sample_count);
    for (double& v : rep.theta_variances) v *= inv;
    for (double& v : rep.phi_variances) v *= inv;
    return rep;
}

namespace {

std::size_t worker_count(std::size_t max_workers, std::size_t tasks) {
    std::size_t workers = max_workers;
    if (workers == 0) {
        if (const char* env = std::getenv("TNVQE_WORKERS")) {
            const long v = std::atol(env);
            if (v > 0) workers = static_cast<std::size_t>(v);
        }
    }
    if (workers == 0) {
        workers = std::thread::hardware_concurrency();
        if (workers == 0) workers = 1;
    }
    return std::min(workers, std::max<std::size_t>(tasks, 1));
}

}  // namespace

std::vector<SweepRun> run_sweep(const TfimParams& params, const SweepGrid& grid,
                                const OptimizerConfig& cfg,
                                std::size_t max_workers) {
    if (grid.circuit_layers.empty() || grid.tn_layers.empty() ||
        grid.modes.empty() || grid.seeds == 0)
        throw std::invalid_argument("run_sweep: empty grid dimension");
    check_config(cfg);
    kernels::active();  // pick the lane before spawning workers

    struct CellProblem {
        SweepCell cell;
        JointProblem problem;
    };
    std::vector<CellProblem> cells;
    for (std::size_t cl : grid.circuit_layers)
        for (std::size_t tl : grid.tn_layers)
            for (RotationMode mode : grid.modes)
                cells.push_back(
                    {SweepCell{cl, tl, mode},
                     make_tfim_problem(params, tl, mode, cl)});

    struct Task {
        std::size_t cell_idx;
        std::uint64_t seed;
    };
    std::vector<Task> tasks;
    tasks.reserve(cells.size() * grid.seeds);
    for (std::size_t c = 0; c < cells.size(); ++c)
        for (std::uint64_t seed = 0; seed < grid.seeds; ++seed)
            tasks.push_back({c, seed});

    std::vector<std::optional<SweepRun>> results(tasks.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::string failure;
    std::mutex failure_mutex;

    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size() || failed.load()) break;
            const Task& t = tasks[i];
            const CellProblem& cp = cells[t.cell_idx];
            try {
                const JointParams initial =
                    random_initial_params(cp.problem, t.seed);
                RunRecord rec = optimize(cp.problem, initial, cfg);
                results[i] = SweepRun{cp.cell, t.seed, std::move(rec)};
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                failed.store(true);
                failure = "sweep run (cell " +
                          std::to_string(cp.cell.circuit_layers) + "/" +
                          std::to_string(cp.cell.tn_layers) + "/" +
                          rotation_mode_name(cp.cell.mode) + ", seed " +
                          std::to_string(t.seed) + ") failed: " + e.what();
            }
        }
    };

    const std::size_t workers = worker_count(max_workers, tasks.size());
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
    if (failed.load()) throw std::runtime_error(failure);

    std::vector<SweepRun> ordered;
    ordered.reserve(tasks.size());
    for (auto& r : results) ordered.push_back(std::move(*r));
    return ordered;
}

}  // namespace tnvqe
