#include "citeshare/credit_stochastics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <thread>

#include "citeshare/errors.hpp"
#include "citeshare/metric_engine.hpp"

namespace citeshare {

double NoiseSpec::spread_for(std::size_t index) const {
    return per_publication.empty() ? x_bar : per_publication.at(index);
}

void validate(const NoiseSpec& noise, std::size_t n_publications) {
    auto check = [](double x) {
        if (!(x >= 0.0 && x <= kMaxSpreadPercent))
            throw DomainError("credit spread must lie in [0, 20] percent, got " + std::to_string(x));
    };
    if (noise.per_publication.empty()) {
        check(noise.x_bar);
        return;
    }
    if (noise.per_publication.size() != n_publications)
        throw ArgumentError("per-publication spreads: expected " + std::to_string(n_publications) + " values, got " +
                            std::to_string(noise.per_publication.size()));
    for (double x : noise.per_publication) check(x);
}

double binomial_rms(std::int64_t l) {
    if (l < 1) throw DomainError("binomial_rms: l must be >= 1");
    return std::sqrt(static_cast<double>(l));
}

double brute_force_sign_rms(std::int64_t l) {
    if (l < 1 || l > 24) throw ArgumentError("brute_force_sign_rms: l must be in [1, 24]");
    const std::uint64_t outcomes = std::uint64_t{1} << l;
    // Bit k of `mask` set means s_k = -1, so Σ s = l - 2·popcount(mask).
    std::uint64_t sum_squares = 0;
    for (std::uint64_t mask = 0; mask < outcomes; ++mask) {
        auto total = l - 2 * static_cast<std::int64_t>(std::popcount(mask));
        sum_squares += static_cast<std::uint64_t>(total * total);
    }
    return std::sqrt(static_cast<double>(sum_squares) / static_cast<double>(outcomes));
}

double expected_delta_rms(double x_bar, double n_bar, std::int64_t l) {
    if (!(x_bar >= 0.0)) throw DomainError("x_bar must be >= 0");
    if (!(n_bar >= 1.0)) throw DomainError("n_bar must be >= 1");
    if (l < 1) throw DomainError("l must be >= 1");
    return x_bar / (n_bar * std::sqrt(static_cast<double>(l)));
}

double sigma_prediction(double x_bar, double n_bar, std::int64_t l) { return expected_delta_rms(x_bar, n_bar, l); }

TrialEngine trial_engine(std::uint64_t master_seed, std::uint64_t trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
    return TrialEngine(seq);
}

double dirichlet_concentration(std::int32_t n, double x_percent) {
    if (n < 2) throw DomainError("dirichlet_concentration: n must be >= 2");
    if (!(x_percent > 0.0 && x_percent <= kMaxSpreadPercent))
        throw DomainError("dirichlet_concentration: spread must lie in (0, 20]");
    // Var(share fraction) = (n-1)/n² / (nα+1) must equal (x/100)²/n².
    double rel = x_percent / 100.0;
    return ((n - 1) / (rel * rel) - 1.0) / n;
}

namespace {

void check_split_args(double c, std::int32_t n, double x_percent) {
    if (!(c > 0.0)) throw DomainError("credit split: c must be positive");
    if (n < 1) throw DomainError("credit split: n must be >= 1");
    if (!(x_percent >= 0.0 && x_percent <= kMaxSpreadPercent))
        throw DomainError("credit split: spread must lie in [0, 20]");
}

}  // namespace

std::vector<double> sample_credit_split(double c, std::int32_t n, double x_percent, TrialEngine& rng) {
    check_split_args(c, n, x_percent);
    if (n == 1) return {c};
    if (x_percent == 0.0) return std::vector<double>(static_cast<std::size_t>(n), c / n);

    std::gamma_distribution<double> gamma(dirichlet_concentration(n, x_percent), 1.0);
    std::vector<double> shares(static_cast<std::size_t>(n));
    double total = 0.0;
    for (auto& g : shares) {
        do {
            g = gamma(rng);
        } while (!(g > 0.0));
        total += g;
    }
    for (auto& g : shares) g = c * (g / total);
    return shares;
}

double sample_author_credit(double c, std::int32_t n, double x_percent, TrialEngine& rng) {
    check_split_args(c, n, x_percent);
    if (n == 1) return c;
    if (x_percent == 0.0) return c / n;

    double alpha = dirichlet_concentration(n, x_percent);
    std::gamma_distribution<double> own(alpha, 1.0);
    std::gamma_distribution<double> rest(alpha * (n - 1), 1.0);
    double g1, g2;
    do {
        g1 = own(rng);
    } while (!(g1 > 0.0));
    g2 = rest(rng);
    return c * (g1 / (g1 + g2));
}

namespace {

struct Term {
    double chunk;  // credit of the author's chapter, or of the whole paper
    std::int32_t n;
    double x;
};

struct Moments {
    double mean = 0.0;
    double std = 0.0;
    double skewness = 0.0;
    double excess_kurtosis = 0.0;
};

Moments moments_of(const std::vector<double>& values) {
    Moments m;
    if (std::all_of(values.begin(), values.end(), [&](double v) { return v == values.front(); })) {
        m.mean = values.front();
        return m;
    }
    const auto count = static_cast<long double>(values.size());
    long double sum = 0.0L;
    for (double v : values) sum += v;
    const long double mean = sum / count;

    long double m2 = 0.0L, m3 = 0.0L, m4 = 0.0L;
    for (double v : values) {
        long double d = v - mean;
        long double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= count;
    m3 /= count;
    m4 /= count;

    m.mean = static_cast<double>(mean);
    m.std = static_cast<double>(std::sqrt(m2));
    if (m2 > 0.0L) {
        m.skewness = static_cast<double>(m3 / std::pow(m2, 1.5L));
        m.excess_kurtosis = static_cast<double>(m4 / (m2 * m2) - 3.0L);
    }
    return m;
}

std::vector<HistogramBin> histogram_of(const std::vector<double>& values, std::size_t bins) {
    auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it, hi = *hi_it;
    if (hi == lo || bins <= 1) return {{lo + (hi - lo) / 2.0, static_cast<std::int64_t>(values.size())}};

    const double width = (hi - lo) / static_cast<double>(bins);
    std::vector<HistogramBin> out(bins);
    for (std::size_t b = 0; b < bins; ++b) out[b].center = lo + (static_cast<double>(b) + 0.5) * width;
    for (double v : values) {
        auto b = static_cast<std::size_t>((v - lo) / width);
        ++out[std::min(b, bins - 1)].count;
    }
    return out;
}

}  // namespace

SimulationResult simulate_i_distribution(const AuthorCorpus& corpus, const NoiseSpec& noise,
                                         const SimulationOptions& options) {
    if (options.trials < 1) throw ArgumentError("simulation needs at least one trial");
    validate(noise, corpus.publications.size());
    const auto n_c = total_citations(corpus);
    if (n_c == 0) throw UndefinedMetricError("I-function is undefined for a corpus with no citations");

    std::vector<Term> terms;
    double fixed_credit = 0.0;  // zero-variance contributions, summed once
    for (std::size_t i = 0; i < corpus.publications.size(); ++i) {
        const auto& p = corpus.publications[i];
        if (p.citations == 0) continue;
        double chunk = static_cast<double>(p.citations) / (p.chapters ? *p.chapters : 1);
        double x = noise.spread_for(i);
        if (p.n_authors == 1 || x == 0.0)
            fixed_credit += chunk / p.n_authors;
        else
            terms.push_back({chunk, p.n_authors, x});
    }

    const auto trials = static_cast<std::size_t>(options.trials);
    std::vector<double> values(trials);
    const double scale = 100.0 / static_cast<double>(n_c);
    const double predicted_mean = i_index(corpus);
    auto run_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            auto rng = trial_engine(options.seed, k);
            double credit = fixed_credit;
            for (const auto& t : terms) credit += sample_author_credit(t.chunk, t.n, t.x, rng);
            values[k] = scale * credit;
        }
    };

    unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, trials));
    if (terms.empty()) {
        std::fill(values.begin(), values.end(), predicted_mean);
    } else if (threads <= 1) {
        run_range(0, trials);
    } else {
        std::vector<std::jthread> pool;
        const std::size_t chunk = (trials + threads - 1) / threads;
        for (std::size_t begin = 0; begin < trials; begin += chunk)
            pool.emplace_back(run_range, begin, std::min(trials, begin + chunk));
    }

    SimulationResult result;
    auto m = moments_of(values);
    result.empirical_mean = m.mean;
    result.empirical_std = m.std;
    result.skewness = m.skewness;
    result.excess_kurtosis = m.excess_kurtosis;
    result.histogram = histogram_of(values, options.histogram_bins);
    result.trials = options.trials;
    result.seed = options.seed;
    result.predicted_mean = predicted_mean;

    // Significant papers: the h most-cited, ties kept in input order.
    std::vector<std::size_t> order(corpus.publications.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return corpus.publications[a].citations > corpus.publications[b].citations;
    });
    const auto l = h_index(corpus);
    double n_sum = 0.0, x_sum = 0.0;
    for (std::int64_t r = 0; r < l; ++r) {
        n_sum += effective_share_divisor(corpus.publications[order[r]]);
        x_sum += noise.spread_for(order[r]);
    }
    result.significant_papers = l;
    result.n_bar = n_sum / static_cast<double>(l);
    result.x_bar = x_sum / static_cast<double>(l);
    result.predicted_sigma = sigma_prediction(result.x_bar, result.n_bar, l);
    return result;
}

std::string corpus_digest(const AuthorCorpus& corpus) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char ch : serialize_corpus(corpus, CorpusFormat::csv)) {
        hash ^= ch;
        hash *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

}  // namespace citeshare
