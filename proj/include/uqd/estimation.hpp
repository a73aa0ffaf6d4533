#pragma once

// Born-rule sampling through a universal detector and Monte Carlo estimation
// of Tr[rho O] as the empirical mean of the processing weights. Discrete
// detectors sample outcome indices by inverse CDF; continuous Bell detectors
// rejection-sample the group against its natural proposal measure with the
// certified density bound d.

#include <array>
#include <cstdint>
#include <optional>

#include "uqd/povm.hpp"
#include "uqd/spin.hpp"

namespace uqd {

struct OutcomeDistribution {
    bool continuous = false;

    // Discrete: exact Born probabilities, clipped at -1e-12 and renormalized.
    std::vector<double> probabilities;

    // Continuous: group descriptor plus the states needed to evaluate the
    // density p(U) = d Tr[U^dag rho U nu^T] <= bound = d.
    ContinuousBellPovm group;
    Matrix rho;
    Matrix nu;
    double density_bound = 0.0;
};

OutcomeDistribution outcome_distribution(const UniversalDetector& detector, const State& rho,
                                         kernels::Exec exec = kernels::Exec::Parallel);

// Outcomes of n Born-rule samples. Discrete: indices. Continuous SU(d):
// the sampled unitaries; continuous SU(2): (psi, theta, phi) parameters.
struct SampleResult {
    std::vector<std::uint32_t> indices;
    std::vector<Matrix> unitaries;
    std::vector<std::array<double, 3>> parameters;
    double acceptance_rate = 1.0;
};

SampleResult sample_outcomes(const OutcomeDistribution& dist, std::size_t n, std::uint64_t seed,
                             kernels::Exec exec = kernels::Exec::Parallel);

struct EstimationReport {
    Complex estimate{0.0, 0.0};
    double stderr_est = 0.0;  // sample standard deviation of f-values / sqrt(n)
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    std::optional<Complex> exact;
    double wall_seconds = 0.0;
    double acceptance_rate = 1.0;  // 1 for discrete detectors
};

EstimationReport estimate(const UniversalDetector& detector, const State& rho,
                          const Matrix& observable, std::size_t n, std::uint64_t seed,
                          kernels::Exec exec = kernels::Exec::Parallel);

// One report per entry of the (increasing) schedule, all from the same seed.
std::vector<EstimationReport> convergence_scan(const UniversalDetector& detector,
                                               const State& rho, const Matrix& observable,
                                               const std::vector<std::size_t>& schedule,
                                               std::uint64_t seed,
                                               kernels::Exec exec = kernels::Exec::Parallel);

}  // namespace uqd
