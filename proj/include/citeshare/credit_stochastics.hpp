#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "citeshare/record_model.hpp"

namespace citeshare {

/// Relative spread (percent of the mean share c/n) of each paper's credit
/// distribution. `per_publication`, when non-empty, overrides `x_bar` and
/// must have one entry per publication in corpus order.
struct NoiseSpec {
    double x_bar = 10.0;
    std::vector<double> per_publication;

    double spread_for(std::size_t index) const;
};

inline constexpr double kMaxSpreadPercent = 20.0;

void validate(const NoiseSpec& noise, std::size_t n_publications);

struct HistogramBin {
    double center = 0.0;
    std::int64_t count = 0;
};

struct SimulationResult {
    double empirical_mean = 0.0;
    double empirical_std = 0.0;
    double skewness = 0.0;
    double excess_kurtosis = 0.0;
    std::vector<HistogramBin> histogram;
    double predicted_mean = 0.0;
    double predicted_sigma = 0.0;
    std::int64_t trials = 0;
    std::uint64_t seed = 0;

    // Inputs to predicted_sigma: l = h-index, means over the h-core.
    std::int64_t significant_papers = 0;
    double n_bar = 0.0;
    double x_bar = 0.0;
};

struct SimulationOptions {
    std::int64_t trials = 100000;
    std::uint64_t seed = 0;
    unsigned threads = 0;  // 0: hardware concurrency
    std::size_t histogram_bins = 20;
};

/// √l, the root-mean-square of a sum of l independent fair ±1 signs.
double binomial_rms(std::int64_t l);

/// The same quantity by enumerating all 2^l sign vectors (l <= 24).
double brute_force_sign_rms(std::int64_t l);

/// x̄ / (n̄ √l), the typical size of the equidistribution error.
double expected_delta_rms(double x_bar, double n_bar, std::int64_t l);

/// Predicted standard deviation of the I-function, x̄ / (n̄ √l).
double sigma_prediction(double x_bar, double n_bar, std::int64_t l);

/// Engine used for every draw. Each trial gets its own engine derived from
/// (master seed, trial index), so trial k sees the same stream however the
/// trials are scheduled.
using TrialEngine = std::mt19937_64;
TrialEngine trial_engine(std::uint64_t master_seed, std::uint64_t trial);

/// Symmetric Dirichlet concentration giving each of n shares a standard
/// deviation of (x/100)(c/n). Requires n >= 2 and 0 < x <= 20.
double dirichlet_concentration(std::int32_t n, double x_percent);

/// Splits `c` credit among `n` coauthors: symmetric Dirichlet scaled by c with
/// marginal std (x/100)(c/n). Components are strictly positive and sum to c.
std::vector<double> sample_credit_split(double c, std::int32_t n, double x_percent, TrialEngine& rng);

/// One coauthor's share only: the Beta(α, (n-1)α) marginal of the split above.
double sample_author_credit(double c, std::int32_t n, double x_percent, TrialEngine& rng);

/// Monte Carlo distribution of I(Y) = 100 Σ y_i / N_c. Bitwise reproducible for
/// fixed inputs regardless of `options.threads`.
SimulationResult simulate_i_distribution(const AuthorCorpus& corpus, const NoiseSpec& noise,
                                         const SimulationOptions& options);

/// Stable content hash of a corpus (FNV-1a over its CSV serialization), hex.
std::string corpus_digest(const AuthorCorpus& corpus);

}  // namespace citeshare
