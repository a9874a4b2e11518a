#pragma once

// Joint TN-VQE optimization: the cost E(theta, phi) = sum_P c_P(theta) <P>_phi,
// its gradient (parameter shift in phi, central finite differences in theta),
// plain gradient descent with vanishing-gradient termination, the
// gradient-variance diagnostic, and the multi-seed sweep driver.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "tnvqe/circuit.hpp"
#include "tnvqe/hamiltonian.hpp"
#include "tnvqe/pauli.hpp"
#include "tnvqe/utn.hpp"

namespace tnvqe {

struct JointParams {
    ThetaVector theta;
    AnsatzWeights phi;
};

enum class Termination { kMaxIterations, kVanishingGradient };

const char* termination_name(Termination t);

struct OptimizerConfig {
    double learning_rate = 0.1;
    std::size_t max_iterations = 200;
    double grad_tolerance = 1e-8;
    std::uint64_t seed = 0;
    double theta_fd_step = 1e-6;
};

struct IterationRow {
    std::size_t iteration;
    double energy;
    double relative_error;
    double grad_inf_norm;
};

struct RunRecord {
    std::vector<IterationRow> rows;
    Termination termination = Termination::kMaxIterations;
    JointParams final_params;
};

struct JointGradient {
    std::vector<double> theta;
    std::vector<double> phi;

    double inf_norm() const;
};

struct VarianceReport {
    std::vector<double> theta_variances;
    std::vector<double> phi_variances;
    std::size_t sample_count = 0;
};

struct JointProblem {
    HermitianMatrix hamiltonian;
    double exact_energy;  // ground energy from the dense eigensolver
    UtnLayout layout;
    RotationMode mode;
    std::size_t circuit_layers;
    CircuitConfig circuit;
};

JointProblem make_tfim_problem(const TfimParams& params, std::size_t tn_layers,
                               RotationMode mode, std::size_t circuit_layers);

// Pauli-path energy: coefficients from the transformed Hamiltonian, summed
// against circuit expectation values.
double energy(const JointProblem& p, const ThetaVector& theta,
              const AnsatzWeights& phi);

JointGradient joint_gradient(const JointProblem& p, const ThetaVector& theta,
                             const AnsatzWeights& phi,
                             double theta_fd_step = 1e-6);

// All angles uniform in [0, 2*pi); theta drawn before phi.
JointParams random_initial_params(const JointProblem& p, std::uint64_t seed);

RunRecord optimize(const JointProblem& p, const JointParams& initial,
                   const OptimizerConfig& cfg);

// Var[dE/dk] = <(dE/dk)^2> over parameters drawn uniformly from [0, 2*pi).
VarianceReport gradient_variance(const JointProblem& p,
                                 std::size_t sample_count, std::uint64_t seed,
                                 double theta_fd_step = 1e-6);

struct SweepCell {
    std::size_t circuit_layers;
    std::size_t tn_layers;
    RotationMode mode;
};

struct SweepGrid {
    std::vector<std::size_t> circuit_layers{1, 2, 3, 4};
    std::vector<std::size_t> tn_layers{0, 1, 2, 3};
    std::vector<RotationMode> modes{RotationMode::kOneParam,
                                    RotationMode::kThreeParam};
    std::size_t seeds = 20;  // seed values 0 .. seeds-1
};

struct SweepRun {
    SweepCell cell;
    std::uint64_t seed;
    RunRecord record;
};

// Independent seeded runs over the grid, in deterministic
// (circuit_layers, tn_layers, mode, seed) order. Runs execute on a worker
// pool; TNVQE_WORKERS caps the pool when max_workers is 0.
std::vector<SweepRun> run_sweep(const TfimParams& params, const SweepGrid& grid,
                                const OptimizerConfig& cfg,
                                std::size_t max_workers = 0);

}  // namespace tnvqe
