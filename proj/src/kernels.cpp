#include "uqd/kernels.hpp"

#include <algorithm>
#include <numeric>

#include <omp.h>

namespace uqd::kernels {

int max_threads() { return omp_get_max_threads(); }

std::vector<double> born_probabilities(const std::vector<Matrix>& elements, const Matrix& joint,
                                       Exec exec) {
    const auto count = static_cast<Index>(elements.size());
    std::vector<double> probs(elements.size(), 0.0);
    const bool par = exec == Exec::Parallel;
#pragma omp parallel for schedule(static) if (par)
    for (Index i = 0; i < count; ++i) {
        const Matrix& el = elements[static_cast<std::size_t>(i)];
        // Tr[J * El] = sum_{r,c} J(r,c) El(c,r)
        Complex acc(0.0, 0.0);
        for (Index c = 0; c < el.cols(); ++c)
            for (Index r = 0; r < el.rows(); ++r) acc += joint(r, c) * el(c, r);
        probs[static_cast<std::size_t>(i)] = acc.real();
    }
    return probs;
}

Matrix gram_matrix(const Matrix& stacked, Exec exec) {
    const Index d = stacked.rows();
    const Index n = stacked.cols();
    Matrix s(d, d);
    const bool par = exec == Exec::Parallel;
#pragma omp parallel for schedule(static) if (par)
    for (Index r = 0; r < d; ++r) {
        for (Index c = r; c < d; ++c) {
            Complex acc(0.0, 0.0);
            for (Index i = 0; i < n; ++i) acc += stacked(r, i) * std::conj(stacked(c, i));
            s(r, c) = acc;
        }
    }
    for (Index r = 0; r < d; ++r) {
        s(r, r) = Complex(s(r, r).real(), 0.0);
        for (Index c = r + 1; c < d; ++c) s(c, r) = std::conj(s(r, c));
    }
    return s;
}

namespace {

std::vector<double> cumulative(const std::vector<double>& probabilities) {
    std::vector<double> cdf(probabilities.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        acc += std::max(0.0, probabilities[i]);
        cdf[i] = acc;
    }
    if (acc <= 0.0) throw Error("sample_categorical: probabilities sum to zero");
    for (auto& c : cdf) c /= acc;
    cdf.back() = 1.0;
    return cdf;
}

std::uint32_t draw(const std::vector<double>& cdf, double u) {
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    return static_cast<std::uint32_t>(std::min<std::ptrdiff_t>(
        it - cdf.begin(), static_cast<std::ptrdiff_t>(cdf.size()) - 1));
}

}  // namespace

std::vector<std::uint32_t> sample_categorical(const std::vector<double>& probabilities,
                                              std::size_t n, std::uint64_t seed, Exec exec) {
    const auto cdf = cumulative(probabilities);
    std::vector<std::uint32_t> outcomes(n);
    const auto chunks = static_cast<std::int64_t>((n + kSampleChunk - 1) / kSampleChunk);
    const bool par = exec == Exec::Parallel;
#pragma omp parallel for schedule(static) if (par)
    for (std::int64_t c = 0; c < chunks; ++c) {
        auto rng = seeded_rng(seed, static_cast<std::uint64_t>(c));
        const std::size_t begin = static_cast<std::size_t>(c) * kSampleChunk;
        const std::size_t end = std::min(n, begin + kSampleChunk);
        for (std::size_t i = begin; i < end; ++i) outcomes[i] = draw(cdf, uniform01(rng));
    }
    return outcomes;
}

std::vector<std::uint64_t> sample_histogram(const std::vector<double>& probabilities,
                                            std::size_t n, std::uint64_t seed, Exec exec) {
    const auto cdf = cumulative(probabilities);
    const auto chunks = static_cast<std::int64_t>((n + kSampleChunk - 1) / kSampleChunk);
    std::vector<std::vector<std::uint64_t>> partial(
        static_cast<std::size_t>(chunks), std::vector<std::uint64_t>(probabilities.size(), 0));
    const bool par = exec == Exec::Parallel;
#pragma omp parallel for schedule(static) if (par)
    for (std::int64_t c = 0; c < chunks; ++c) {
        auto rng = seeded_rng(seed, static_cast<std::uint64_t>(c));
        const std::size_t begin = static_cast<std::size_t>(c) * kSampleChunk;
        const std::size_t end = std::min(n, begin + kSampleChunk);
        auto& counts = partial[static_cast<std::size_t>(c)];
        for (std::size_t i = begin; i < end; ++i) ++counts[draw(cdf, uniform01(rng))];
    }
    std::vector<std::uint64_t> counts(probabilities.size(), 0);
    for (const auto& chunk_counts : partial)
        for (std::size_t k = 0; k < counts.size(); ++k) counts[k] += chunk_counts[k];
    return counts;
}

}  // namespace uqd::kernels
