#include "citeshare/metric_engine.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "citeshare/errors.hpp"

namespace citeshare {

std::int64_t total_citations(const AuthorCorpus& corpus) {
    std::int64_t total = 0;
    for (const auto& p : corpus.publications) total += p.citations;
    return total;
}

std::int64_t h_index(const AuthorCorpus& corpus) {
    std::vector<std::int64_t> cites;
    cites.reserve(corpus.publications.size());
    for (const auto& p : corpus.publications) cites.push_back(p.citations);
    std::sort(cites.begin(), cites.end(), std::greater<>());

    std::int64_t h = 0;
    while (h < static_cast<std::int64_t>(cites.size()) && cites[h] >= h + 1) ++h;
    return h;
}

namespace {

// Σ c/d with citations summed exactly per distinct divisor first; `scale`
// divides every citation count beforehand.
double grouped_share(const AuthorCorpus& corpus, std::int64_t scale) {
    std::map<double, std::int64_t> by_divisor;
    for (const auto& p : corpus.publications) by_divisor[effective_share_divisor(p)] += p.citations / scale;
    double share = 0.0;
    for (const auto& [divisor, cites] : by_divisor) share += static_cast<double>(cites) / divisor;
    return share;
}

}  // namespace

double credit_share(const AuthorCorpus& corpus) { return grouped_share(corpus, 1); }

double i_index(const AuthorCorpus& corpus) {
    auto n_c = total_citations(corpus);
    if (n_c == 0) throw UndefinedMetricError("I-index is undefined for a corpus with no citations");
    // Reducing by the common factor makes the result bitwise invariant under
    // scaling every citation count by the same integer.
    std::int64_t g = 0;
    for (const auto& p : corpus.publications) g = std::gcd(g, p.citations);
    return 100.0 * grouped_share(corpus, g) / static_cast<double>(n_c / g);
}

double c_index(const AuthorCorpus& corpus) { return 100.0 - i_index(corpus); }

std::int64_t nc_min_bound(std::int64_t h) { return h * h; }

std::int64_t h_max_bound(std::int64_t n_c, std::int64_t n_p) {
    if (n_c < 0 || n_p < 0) throw DomainError("h_max_bound: counts must be non-negative");
    auto root = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n_c)));
    while (root * root > n_c) --root;
    while ((root + 1) * (root + 1) <= n_c) ++root;
    return n_p >= root ? root : n_p;
}

double i_time_model(const TimeModelParams& params) {
    const auto& [a1, a2, b1, b2, t] = params;
    if (!(t > 0.0)) throw DomainError("i_time_model: career span t must be positive");
    if (a1 < 0 || a2 < 0 || b1 < 0 || b2 < 0) throw DomainError("i_time_model: coefficients must be non-negative");
    if (b1 > a1 || b2 > a2) throw DomainError("i_time_model: share growth cannot exceed citation growth (b1 <= a1, b2 <= a2)");
    double denominator = a2 + a1 / t;
    if (!(denominator > 0.0)) throw DomainError("i_time_model: a2 + a1/t must be positive");
    return 100.0 * (b2 + b1 / t) / denominator;
}

double hirsch_g1(double c_over_p) {
    if (!(c_over_p > 0.0) || !std::isfinite(c_over_p)) throw DomainError("hirsch_g1: c/p must be a positive number");
    return (1.0 + c_over_p) * (1.0 + c_over_p) / (2.0 * c_over_p);
}

MetricReport compute_report(const AuthorCorpus& corpus) {
    MetricReport r;
    r.n_c = total_citations(corpus);
    r.h = h_index(corpus);
    r.c_share = credit_share(corpus);
    r.n_p = static_cast<std::int64_t>(corpus.publications.size());
    if (r.n_c > 0) {
        r.i_index = i_index(corpus);
        r.c_index = 100.0 - *r.i_index;
    }
    return r;
}

std::vector<BoundCheck> check_bounds(const MetricReport& report) {
    std::vector<BoundCheck> checks;
    auto add = [&](std::string name, bool passed, const std::ostringstream& detail) {
        checks.push_back({std::move(name), passed, detail.str()});
    };

    {
        std::ostringstream d;
        auto min_nc = nc_min_bound(report.h);
        d << "h^2 = " << min_nc << ", N_c = " << report.n_c;
        add("h^2 <= N_c", min_nc <= report.n_c, d);
    }
    {
        std::ostringstream d;
        auto h_max = h_max_bound(std::max<std::int64_t>(report.n_c, 0), std::max<std::int64_t>(report.n_p, 0));
        d << "h = " << report.h << ", h_max = " << h_max;
        add("h <= h_max", report.h <= h_max, d);
    }
    {
        std::ostringstream d;
        bool ok;
        if (report.n_c > 0) {
            ok = report.i_index && *report.i_index > 0.0 && *report.i_index <= 100.0;
            if (report.i_index)
                d << "I = " << *report.i_index;
            else
                d << "I missing while N_c > 0";
        } else {
            ok = !report.i_index;
            d << (ok ? "N_c = 0, I undefined" : "I given although N_c = 0");
        }
        add("0 < I <= 100", ok, d);
    }
    {
        std::ostringstream d;
        d << "C_share = " << report.c_share << ", N_c = " << report.n_c;
        add("C_share <= N_c", report.c_share >= 0.0 && report.c_share <= static_cast<double>(report.n_c), d);
    }
    return checks;
}

double round_to(double value, int decimals) {
    double scale = std::pow(10.0, decimals);
    return std::round(value * scale) / scale;
}

}  // namespace citeshare
