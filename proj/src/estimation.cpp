#include "uqd/estimation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>

namespace uqd {

namespace {

constexpr double tau = 2.0 * std::numbers::pi;

// Inverse CDF of the axis-angle density sin^2(psi/2)/pi on [0, 2 pi):
// solve (psi - sin psi) / (2 pi) = u by bisection (monotone).
double sample_axis_angle(double u) {
    double lo = 0.0, hi = tau;
    for (int iter = 0; iter < 64; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double cdf = (mid - std::sin(mid)) / tau;
        (cdf < u ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

OutcomeDistribution outcome_distribution(const UniversalDetector& detector, const State& rho,
                                         kernels::Exec exec) {
    OutcomeDistribution dist;
    if (rho.dim() != detector.dim_h())
        throw DimensionError("outcome_distribution: state dim " + std::to_string(rho.dim()) +
                             " != detector dim " + std::to_string(detector.dim_h()));
    if (detector.discrete()) {
        const auto& povm = detector.discrete_povm();
        const Matrix joint = tensor_product(rho.rho(), detector.ancilla.rho());
        auto probs = kernels::born_probabilities(povm.elements, joint, exec);
        double sum = 0.0;
        for (double& p : probs) {
            if (p < -1e-12)
                throw Error("outcome_distribution: negative probability " + std::to_string(p));
            p = std::max(0.0, p);
            sum += p;
        }
        if (sum <= 0.0) throw Error("outcome_distribution: all probabilities vanish");
        for (double& p : probs) p /= sum;
        dist.probabilities = std::move(probs);
        return dist;
    }
    dist.continuous = true;
    dist.group = detector.continuous_povm();
    dist.rho = rho.rho();
    dist.nu = detector.ancilla.rho();
    dist.density_bound = static_cast<double>(dist.group.dim_h);
    return dist;
}

SampleResult sample_outcomes(const OutcomeDistribution& dist, std::size_t n, std::uint64_t seed,
                             kernels::Exec exec) {
    SampleResult result;
    if (!dist.continuous) {
        result.indices = kernels::sample_categorical(dist.probabilities, n, seed, exec);
        return result;
    }

    const State rho(dist.rho);
    const State nu(dist.nu);
    kernels::RejectionStats stats;
    if (dist.group.group == BellGroup::SudHaar) {
        const Index d = dist.group.dim_h;
        auto propose = [&](std::mt19937_64& rng, Matrix& candidate) {
            const Matrix g = random_ginibre(d, d, rng);
            Eigen::HouseholderQR<Matrix> qr(g);
            Matrix q = qr.householderQ();
            const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
            for (Index i = 0; i < d; ++i) {
                const double mag = std::abs(r(i, i));
                q.col(i) *= (mag > 0.0) ? r(i, i) / mag : Complex(1.0, 0.0);
            }
            candidate = std::move(q);
            // acceptance = p(U)/bound = Tr[U^dag rho U nu^T] in [0, 1]
            return continuous_born_density(candidate, rho, nu) / dist.density_bound;
        };
        result.unitaries =
            kernels::rejection_sample<Matrix>(n, seed, propose, stats, exec);
    } else {
        const SpinSystem sys(dist.group.spin_j);
        auto propose = [&](std::mt19937_64& rng, std::array<double, 3>& candidate) {
            const double psi = sample_axis_angle(uniform01(rng));
            const double u = 2.0 * uniform01(rng) - 1.0;
            const double phi = tau * uniform01(rng);
            candidate = {psi, std::acos(std::clamp(u, -1.0, 1.0)), phi};
            const double sin_theta = std::sqrt(std::max(0.0, 1.0 - u * u));
            const Matrix unitary = su2_unitary(
                sys, psi, {sin_theta * std::cos(phi), sin_theta * std::sin(phi), u});
            return continuous_born_density(unitary, rho, nu) / dist.density_bound;
        };
        result.parameters =
            kernels::rejection_sample<std::array<double, 3>>(n, seed, propose, stats, exec);
    }
    result.acceptance_rate = stats.acceptance_rate;
    return result;
}

namespace {

EstimationReport estimate_discrete(const UniversalDetector& detector, const State& rho,
                                   const Matrix& observable, std::size_t n, std::uint64_t seed,
                                   kernels::Exec exec) {
    const auto dist = outcome_distribution(detector, rho, exec);
    const auto counts = kernels::sample_histogram(dist.probabilities, n, seed, exec);
    const Vector f = processing_coefficients(detector, observable);
    if (static_cast<std::size_t>(f.size()) != counts.size())
        throw Error("estimate: processing vector does not match outcome count");

    Complex mean(0.0, 0.0);
    for (std::size_t i = 0; i < counts.size(); ++i)
        mean += static_cast<double>(counts[i]) * f[static_cast<Index>(i)];
    mean /= static_cast<double>(n);

    double sq_dev = 0.0;
    for (std::size_t i = 0; i < counts.size(); ++i)
        sq_dev += static_cast<double>(counts[i]) * std::norm(f[static_cast<Index>(i)] - mean);

    EstimationReport report;
    report.estimate = mean;
    report.stderr_est =
        (n > 1) ? std::sqrt(sq_dev / static_cast<double>(n - 1) / static_cast<double>(n)) : 0.0;
    report.samples = n;
    report.seed = seed;
    return report;
}

EstimationReport estimate_continuous(const UniversalDetector& detector, const State& rho,
                                     const Matrix& observable, std::size_t n, std::uint64_t seed,
                                     kernels::Exec exec) {
    if (!detector.coefficient_at)
        throw Error("estimate: continuous detector lacks a processing rule");
    const auto dist = outcome_distribution(detector, rho, exec);
    const auto samples = sample_outcomes(dist, n, seed, exec);

    std::vector<Complex> values(n);
    const auto count = static_cast<Index>(n);
    const bool su2 = dist.group.group == BellGroup::Su2Uir;
    const SpinSystem sys(su2 ? dist.group.spin_j : 0.5);
    const bool par = exec == kernels::Exec::Parallel;
#pragma omp parallel for schedule(static) if (par)
    for (Index i = 0; i < count; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        Matrix unitary;
        if (su2) {
            const auto& [psi, theta, phi] = samples.parameters[idx];
            unitary = su2_unitary(sys, psi,
                                  {std::sin(theta) * std::cos(phi),
                                   std::sin(theta) * std::sin(phi), std::cos(theta)});
        } else {
            unitary = samples.unitaries[idx];
        }
        values[idx] = detector.coefficient_at(unitary, observable);
    }

    Complex mean(0.0, 0.0);
    for (const auto& v : values) mean += v;
    mean /= static_cast<double>(n);
    double sq_dev = 0.0;
    for (const auto& v : values) sq_dev += std::norm(v - mean);

    EstimationReport report;
    report.estimate = mean;
    report.stderr_est =
        (n > 1) ? std::sqrt(sq_dev / static_cast<double>(n - 1) / static_cast<double>(n)) : 0.0;
    report.samples = n;
    report.seed = seed;
    report.acceptance_rate = samples.acceptance_rate;
    return report;
}

}  // namespace

EstimationReport estimate(const UniversalDetector& detector, const State& rho,
                          const Matrix& observable, std::size_t n, std::uint64_t seed,
                          kernels::Exec exec) {
    if (n < 2) throw Error("estimate: need at least 2 samples");
    const auto start = std::chrono::steady_clock::now();
    EstimationReport report =
        detector.discrete() ? estimate_discrete(detector, rho, observable, n, seed, exec)
                            : estimate_continuous(detector, rho, observable, n, seed, exec);
    report.exact = (rho.rho() * observable).trace();
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

std::vector<EstimationReport> convergence_scan(const UniversalDetector& detector,
                                               const State& rho, const Matrix& observable,
                                               const std::vector<std::size_t>& schedule,
                                               std::uint64_t seed, kernels::Exec exec) {
    if (schedule.empty()) throw Error("convergence_scan: empty schedule");
    for (std::size_t i = 1; i < schedule.size(); ++i)
        if (schedule[i] <= schedule[i - 1])
            throw Error("convergence_scan: schedule must be strictly increasing");
    std::vector<EstimationReport> reports;
    reports.reserve(schedule.size());
    for (std::size_t n : schedule)
        reports.push_back(estimate(detector, rho, observable, n, seed, exec));
    return reports;
}

}  // namespace uqd
