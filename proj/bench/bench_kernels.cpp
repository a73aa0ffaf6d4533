// Serial vs OpenMP timing for the library's hot kernels. Synthetic sizes are
// larger than the desk-scale defaults so the parallel lane has work to chew.
//
//   bench_kernels [--quick]

#include <chrono>
#include <cstring>
#include <iomanip>
#include <iostream>

#include "uqd/estimation.hpp"
#include "uqd/kernels.hpp"
#include "uqd/spin.hpp"
#include "uqd/sud.hpp"
#include "uqd/weyl.hpp"

using namespace uqd;
using kernels::Exec;

namespace {

template <typename Fn>
double time_best_of(int reps, Fn&& fn) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto start = std::chrono::steady_clock::now();
        fn();
        best = std::min(best, std::chrono::duration<double>(
                                  std::chrono::steady_clock::now() - start)
                                  .count());
    }
    return best;
}

void row(const std::string& name, double serial_s, double parallel_s) {
    std::cout << std::left << std::setw(34) << name << std::right << std::fixed
              << std::setprecision(4) << std::setw(10) << serial_s << " s" << std::setw(10)
              << parallel_s << " s" << std::setw(9) << std::setprecision(2)
              << serial_s / parallel_s << "x\n";
}

}  // namespace

int main(int argc, char** argv) {
    const bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
    const int reps = quick ? 1 : 3;
    const double scale = quick ? 0.2 : 1.0;

    std::cout << "threads: " << kernels::max_threads() << "\n";
    std::cout << std::left << std::setw(34) << "kernel" << std::right << std::setw(12)
              << "serial" << std::setw(12) << "parallel" << std::setw(10) << "speedup\n";

    {
        // Born probabilities: 4096 elements of dim 36
        const Index joint = 36;
        const auto count = static_cast<std::size_t>(4096 * scale);
        std::vector<Matrix> elements;
        elements.reserve(count);
        auto rng = seeded_rng(1);
        for (std::size_t i = 0; i < count; ++i) {
            const Matrix g = random_ginibre(joint, joint, rng);
            elements.push_back(g * g.adjoint() / static_cast<double>(joint));
        }
        const Matrix g = random_ginibre(joint, joint, rng);
        const Matrix state = g * g.adjoint() / g.squaredNorm();
        const double ts = time_best_of(
            reps, [&] { kernels::born_probabilities(elements, state, Exec::Serial); });
        const double tp = time_best_of(
            reps, [&] { kernels::born_probabilities(elements, state, Exec::Parallel); });
        row("born_probabilities 4k x 36^2", ts, tp);
    }

    {
        // Frame-map Gram: 64 x 50000 stack
        auto rng = seeded_rng(2);
        const Matrix stacked = random_ginibre(64, static_cast<Index>(50000 * scale), rng);
        const double ts =
            time_best_of(reps, [&] { kernels::gram_matrix(stacked, Exec::Serial); });
        const double tp =
            time_best_of(reps, [&] { kernels::gram_matrix(stacked, Exec::Parallel); });
        row("gram_matrix 64 x 50k", ts, tp);
    }

    {
        // Categorical sampling: 10^7 draws from 25 outcomes
        const auto n = static_cast<std::size_t>(1e7 * scale);
        std::vector<double> probs(25, 0.04);
        const double ts =
            time_best_of(reps, [&] { kernels::sample_histogram(probs, n, 3, Exec::Serial); });
        const double tp =
            time_best_of(reps, [&] { kernels::sample_histogram(probs, n, 3, Exec::Parallel); });
        row("sample_histogram 1e7 x 25", ts, tp);
    }

    {
        // SU(2) grid unitaries at j = 3/2
        const SpinSystem sys(1.5);
        const auto grid = su2_grid(GridSpec{40, 20, 20}, sys.j);
        const double ts =
            time_best_of(reps, [&] { su2_grid_unitaries(sys, grid, Exec::Serial); });
        const double tp =
            time_best_of(reps, [&] { su2_grid_unitaries(sys, grid, Exec::Parallel); });
        row("su2_grid_unitaries 16k @ j=3/2", ts, tp);
    }

    {
        // End-to-end estimate on the Weyl d=4 detector
        const auto det = make_weyl_detector(4);
        const State rho = random_density(4, 4, 5);
        auto rng = seeded_rng(6);
        const Matrix o = random_ginibre(4, 4, rng);
        const auto n = static_cast<std::size_t>(2e6 * scale);
        const double ts =
            time_best_of(reps, [&] { estimate(det, rho, o, n, 7, Exec::Serial); });
        const double tp =
            time_best_of(reps, [&] { estimate(det, rho, o, n, 7, Exec::Parallel); });
        row("estimate weyl d=4, n=2e6", ts, tp);
    }

    {
        // Continuous rejection sampling through the SU(d) detector
        const auto det = make_sud_detector(2);
        const State rho = random_density(2, 2, 8);
        auto rng = seeded_rng(9);
        Matrix o = random_ginibre(2, 2, rng);
        o = ((o + o.adjoint()) / 2.0).eval();
        const auto n = static_cast<std::size_t>(2e5 * scale);
        const double ts =
            time_best_of(reps, [&] { estimate(det, rho, o, n, 10, Exec::Serial); });
        const double tp =
            time_best_of(reps, [&] { estimate(det, rho, o, n, 10, Exec::Parallel); });
        row("estimate sud d=2, n=2e5", ts, tp);
    }

    return 0;
}
