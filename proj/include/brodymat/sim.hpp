#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "brodymat/ensembles.hpp"
#include "brodymat/mat2.hpp"
#include "brodymat/numeric.hpp"
#include "brodymat/verify.hpp"

namespace brodymat {

// Fixed chunk size of the work partition. Each chunk owns an independent
// sub-stream derived from (seed, chunk index), so results are identical for
// any worker count.
inline constexpr std::size_t kChunkSize = 4096;

struct SimConfig {
    ModelSpec spec;
    std::size_t n_realizations = 1'000'000;
    std::uint64_t seed = 0;
    int bins = 100;
    double z_max = 4.0;
    int threads = 0;  // 0 = hardware concurrency
};

struct SampleSet {
    std::vector<double> spacings;  // raw spacings, realization order
    double sample_mean = 0.0;
    std::vector<double> scaled;    // spacings / sample_mean
    std::size_t real_pairs = 0;
    std::size_t conjugate_pairs = 0;
};

namespace detail {

struct PairTally {
    std::atomic<std::size_t> real{0};
    std::atomic<std::size_t> conjugate{0};
};

inline void fill_spacings(const ModelSpec& spec, std::size_t n, std::uint64_t seed, int threads,
                          std::vector<double>& out, PairTally* tally = nullptr) {
    out.assign(n, 0.0);
    const std::size_t chunks = (n + kChunkSize - 1) / kChunkSize;
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> first_bad{std::numeric_limits<std::size_t>::max()};

    auto worker = [&] {
        for (;;) {
            const std::size_t c = next.fetch_add(1);
            if (c >= chunks || first_bad.load(std::memory_order_relaxed) !=
                                   std::numeric_limits<std::size_t>::max())
                break;
            RandomStream rng = RandomStream::substream(seed, c);
            const std::size_t lo = c * kChunkSize;
            const std::size_t hi = std::min(n, lo + kChunkSize);
            for (std::size_t i = lo; i < hi; ++i) {
                const Realization r = build(spec, rng);
                const EigenPair p = clean_spurious_imag(eigenvalues(r.m));
                if (p.kind == PairKind::GenericComplex) {
                    std::size_t expected = std::numeric_limits<std::size_t>::max();
                    first_bad.compare_exchange_strong(expected, i);
                    return;
                }
                if (tally) {
                    auto& counter =
                        p.kind == PairKind::RealPair ? tally->real : tally->conjugate;
                    counter.fetch_add(1, std::memory_order_relaxed);
                }
                out[i] = spacing(p);
            }
        }
    };

    int nthreads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    if (nthreads < 1) nthreads = 1;
    if (nthreads == 1 || chunks <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nthreads));
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    const std::size_t bad = first_bad.load();
    if (bad != std::numeric_limits<std::size_t>::max())
        throw std::runtime_error("run: generic complex eigenvalue pair at realization " +
                                 std::to_string(bad));
}

}  // namespace detail

// Generate n seeded realizations, their spacings, and the mean-scaled set.
// Deterministic for fixed (seed, n) regardless of thread count.
inline SampleSet run(const SimConfig& config) {
    if (config.n_realizations < 1) throw std::invalid_argument("run: n_realizations must be >= 1");
    SampleSet s;
    detail::PairTally tally;
    detail::fill_spacings(config.spec, config.n_realizations, config.seed, config.threads,
                          s.spacings, &tally);
    s.real_pairs = tally.real.load();
    s.conjugate_pairs = tally.conjugate.load();
    s.sample_mean = compensated_mean(s.spacings);
    s.scaled.resize(s.spacings.size());
    for (std::size_t i = 0; i < s.spacings.size(); ++i)
        s.scaled[i] = s.spacings[i] / s.sample_mean;
    return s;
}

struct Histogram {
    std::vector<double> edges;      // bins+1 ascending edges on [0, z_max]
    std::vector<double> densities;  // normalized over the included mass
    std::vector<std::uint64_t> counts;
    std::uint64_t overflow = 0;     // samples beyond z_max (reported, not dropped silently)
    std::uint64_t total = 0;
};

inline Histogram histogram(const std::vector<double>& scaled, int bins, double z_max) {
    if (scaled.empty()) throw std::invalid_argument("histogram: empty input");
    if (bins < 1 || !(z_max > 0.0)) throw std::invalid_argument("histogram: bad bins/z_max");

    Histogram h;
    h.total = scaled.size();
    h.counts.assign(static_cast<std::size_t>(bins), 0);
    const double width = z_max / bins;
    for (double z : scaled) {
        if (z >= z_max) {
            ++h.overflow;
            continue;
        }
        auto idx = static_cast<std::size_t>(z / width);
        if (idx >= h.counts.size()) idx = h.counts.size() - 1;
        ++h.counts[idx];
    }
    const std::uint64_t included = h.total - h.overflow;
    if (included == 0) throw std::runtime_error("histogram: all samples beyond z_max");

    h.edges.resize(static_cast<std::size_t>(bins) + 1);
    for (int i = 0; i <= bins; ++i) h.edges[static_cast<std::size_t>(i)] = width * i;
    h.densities.resize(h.counts.size());
    for (std::size_t i = 0; i < h.counts.size(); ++i)
        h.densities[i] = static_cast<double>(h.counts[i]) /
                         (static_cast<double>(included) * width);
    return h;
}

// Two-sided Kolmogorov-Smirnov statistic of a sorted sample against a law.
inline double ks_statistic(const std::vector<double>& sorted, const SpacingLaw& law) {
    if (sorted.empty()) throw std::invalid_argument("ks_statistic: empty sample");
    const double n = static_cast<double>(sorted.size());
    double dmax = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = law.cdf(sorted[i]);
        dmax = std::max(dmax, std::max(f - static_cast<double>(i) / n,
                                       static_cast<double>(i + 1) / n - f));
    }
    return dmax;
}

struct ChiSquareResult {
    double statistic = 0.0;
    int dof = 0;
};

// Pearson statistic against law-integrated bin probabilities; adjacent bins
// (and the overflow tail) are merged until every expected count is >= 5.
inline ChiSquareResult chi_square(const Histogram& hist, const SpacingLaw& law, std::size_t n) {
    if (hist.total == 0) throw std::invalid_argument("chi_square: empty histogram");
    std::uint64_t nonzero = 0;
    for (auto c : hist.counts) nonzero += c;
    if (nonzero + hist.overflow == 0) throw std::invalid_argument("chi_square: all bins empty");

    const double nn = static_cast<double>(n);
    std::vector<std::pair<double, double>> cells;  // (observed, expected)
    for (std::size_t i = 0; i < hist.counts.size(); ++i) {
        const double p = law.cdf(hist.edges[i + 1]) - law.cdf(hist.edges[i]);
        cells.emplace_back(static_cast<double>(hist.counts[i]), nn * p);
    }
    cells.emplace_back(static_cast<double>(hist.overflow),
                       nn * (1.0 - law.cdf(hist.edges.back())));

    // Merge low-expectation cells left to right.
    std::vector<std::pair<double, double>> merged;
    double acc_obs = 0.0, acc_exp = 0.0;
    for (const auto& [o, e] : cells) {
        acc_obs += o;
        acc_exp += e;
        if (acc_exp >= 5.0) {
            merged.emplace_back(acc_obs, acc_exp);
            acc_obs = acc_exp = 0.0;
        }
    }
    if (acc_exp > 0.0 || acc_obs > 0.0) {
        if (!merged.empty()) {
            merged.back().first += acc_obs;
            merged.back().second += acc_exp;
        } else {
            merged.emplace_back(acc_obs, acc_exp);
        }
    }
    if (merged.size() < 2) throw std::runtime_error("chi_square: too few usable bins");

    ChiSquareResult r;
    for (const auto& [o, e] : merged) {
        const double d = o - e;
        r.statistic += d * d / e;
    }
    r.dof = static_cast<int>(merged.size()) - 1;
    return r;
}

struct GofReport {
    double ks_statistic = 0.0;
    double ks_threshold = 0.0;
    double chi_square = 0.0;
    int dof = 0;
    bool pass = false;
    std::size_t discriminant_violations = 0;
};

inline GofReport gof_report(const SampleSet& sample, const SpacingLaw& law, int bins, double z_max,
                            std::size_t discriminant_violations) {
    GofReport g;
    std::vector<double> sorted = sample.scaled;
    std::sort(sorted.begin(), sorted.end());
    g.ks_statistic = ks_statistic(sorted, law);
    g.ks_threshold = kKs1PercentCoeff / std::sqrt(static_cast<double>(sorted.size()));
    // chi-square is advisory; it needs a few well-populated bins to exist
    try {
        const Histogram h = histogram(sample.scaled, bins, z_max);
        const ChiSquareResult chi = chi_square(h, law, sample.scaled.size());
        g.chi_square = chi.statistic;
        g.dof = chi.dof;
    } catch (const std::exception&) {
        g.chi_square = 0.0;
        g.dof = 0;
    }
    g.discriminant_violations = discriminant_violations;
    g.pass = g.ks_statistic < g.ks_threshold && discriminant_violations == 0;
    return g;
}

// Sample-mean over population-mean ratios along one growing seeded stream.
inline std::vector<std::pair<std::size_t, double>> lln_trace(
    const SimConfig& config, const std::vector<std::size_t>& checkpoints) {
    if (checkpoints.empty()) throw std::invalid_argument("lln_trace: no checkpoints");
    for (std::size_t i = 1; i < checkpoints.size(); ++i)
        if (checkpoints[i] <= checkpoints[i - 1])
            throw std::invalid_argument("lln_trace: checkpoints must be ascending");
    const auto mu = analytic_mean_spacing(config.spec);
    if (!mu) throw std::invalid_argument("lln_trace: model has no closed-form k");

    SimConfig grown = config;
    grown.n_realizations = checkpoints.back();
    std::vector<double> spacings;
    detail::fill_spacings(grown.spec, grown.n_realizations, grown.seed, grown.threads, spacings);

    std::vector<std::pair<std::size_t, double>> trace;
    trace.reserve(checkpoints.size());
    CompensatedSum sum;
    std::size_t done = 0;
    for (std::size_t cp : checkpoints) {
        for (; done < cp; ++done) sum.add(spacings[done]);
        trace.emplace_back(cp, sum.value() / static_cast<double>(cp) / *mu);
    }
    return trace;
}

}  // namespace brodymat
