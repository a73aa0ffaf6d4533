#pragma once

// Hot inner loops shared across the library, each runnable serially or with
// OpenMP. Parallel results are bit-identical to the serial lane for any
// worker count: row-split kernels give every output entry to exactly one
// thread, and sampling kernels draw from fixed-size chunks with per-chunk
// derived seeds, combined in chunk order.

#include <cstdint>
#include <vector>

#include "uqd/operator_core.hpp"
#include "uqd/types.hpp"

namespace uqd::kernels {

enum class Exec { Serial, Parallel };

inline constexpr std::size_t kSampleChunk = 4096;

// Born probabilities p_i = Re Tr[joint * element_i] for a Hermitian joint
// state; one dot product per element, parallel over elements.
std::vector<double> born_probabilities(const std::vector<Matrix>& elements, const Matrix& joint,
                                       Exec exec = Exec::Parallel);

// Gram matrix S = stacked * stacked^dag of a D x N column stack; this is the
// frame map when the columns are vectorized family members.
Matrix gram_matrix(const Matrix& stacked, Exec exec = Exec::Parallel);

// n categorical draws from `probabilities` (rescaled by their sum).
// Inverse-CDF per draw, chunked.
std::vector<std::uint32_t> sample_categorical(const std::vector<double>& probabilities,
                                              std::size_t n, std::uint64_t seed,
                                              Exec exec = Exec::Parallel);

// Outcome counts of the exact stream sample_categorical produces: the
// histogram of sample_categorical(p, n, seed) equals sample_histogram(p, n,
// seed) element for element.
std::vector<std::uint64_t> sample_histogram(const std::vector<double>& probabilities,
                                            std::size_t n, std::uint64_t seed,
                                            Exec exec = Exec::Parallel);

struct RejectionStats {
    std::uint64_t proposals = 0;
    double acceptance_rate = 0.0;
};

// Chunked rejection sampler. `propose(rng, candidate)` fills one candidate
// and returns its acceptance probability in [0, 1]; exactly n accepted
// candidates are returned in stream order.
template <typename Candidate, typename ProposeFn>
std::vector<Candidate> rejection_sample(std::size_t n, std::uint64_t seed, ProposeFn&& propose,
                                        RejectionStats& stats, Exec exec = Exec::Parallel);

int max_threads();

}  // namespace uqd::kernels

// ---- template implementation ------------------------------------------------

#include <algorithm>

#include <omp.h>

namespace uqd::kernels {

template <typename Candidate, typename ProposeFn>
std::vector<Candidate> rejection_sample(std::size_t n, std::uint64_t seed, ProposeFn&& propose,
                                        RejectionStats& stats, Exec exec) {
    std::vector<Candidate> out;
    out.reserve(n);
    std::uint64_t total_accepted = 0;
    std::uint64_t chunk_base = 0;
    stats = {};
    const bool par = exec == Exec::Parallel;
    while (out.size() < n) {
        const int batch = par ? 4 * std::max(1, max_threads()) : 1;
        std::vector<std::vector<Candidate>> accepted(static_cast<std::size_t>(batch));
#pragma omp parallel for schedule(dynamic) if (par)
        for (int c = 0; c < batch; ++c) {
            auto rng = seeded_rng(seed, chunk_base + static_cast<std::uint64_t>(c));
            auto& mine = accepted[static_cast<std::size_t>(c)];
            Candidate candidate;
            for (std::size_t s = 0; s < kSampleChunk; ++s) {
                const double accept_p = propose(rng, candidate);
                const double u = uniform01(rng);
                if (u < accept_p) mine.push_back(candidate);
            }
        }
        for (auto& chunk_accepted : accepted) {
            total_accepted += chunk_accepted.size();
            for (auto& candidate : chunk_accepted)
                if (out.size() < n) out.push_back(std::move(candidate));
        }
        stats.proposals += static_cast<std::uint64_t>(batch) * kSampleChunk;
        chunk_base += static_cast<std::uint64_t>(batch);
    }
    stats.acceptance_rate =
        stats.proposals ? static_cast<double>(total_accepted) /
                              static_cast<double>(stats.proposals)
                        : 0.0;
    return out;
}

}  // namespace uqd::kernels
