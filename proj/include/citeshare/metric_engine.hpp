#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "citeshare/record_model.hpp"

namespace citeshare {

/// The triplet (N_c, h, I) with the complementary C-index, the absolute
/// credit share and the paper count. Percent values carry full precision.
struct MetricReport {
    std::int64_t n_c = 0;
    std::int64_t h = 0;
    double c_share = 0.0;
    std::optional<double> i_index;  // absent when n_c == 0
    std::optional<double> c_index;
    std::int64_t n_p = 0;
};

/// Growth coefficients of N_c(t) = a1 t + a2 t² and C_share(t) = b1 t + b2 t².
struct TimeModelParams {
    double a1 = 0.0;
    double a2 = 0.0;
    double b1 = 0.0;
    double b2 = 0.0;
    double t = 1.0;
};

std::int64_t total_citations(const AuthorCorpus& corpus);

/// Hirsch index: largest h such that at least h publications have >= h citations.
std::int64_t h_index(const AuthorCorpus& corpus);

/// Σ citations / effective_share_divisor.
double credit_share(const AuthorCorpus& corpus);

/// 100 · C_share / N_c, in (0, 100]. Throws UndefinedMetricError when N_c = 0.
double i_index(const AuthorCorpus& corpus);

/// 100 − I. Same error contract as i_index.
double c_index(const AuthorCorpus& corpus);

/// Smallest N_c compatible with a given h: h².
std::int64_t nc_min_bound(std::int64_t h);

/// Largest h compatible with (N_c, N_p): ⌊√N_c⌋, capped at N_p.
std::int64_t h_max_bound(std::int64_t n_c, std::int64_t n_p);

/// I(t) = 100 (b2 + b1/t) / (a2 + a1/t). Throws DomainError on invalid params.
double i_time_model(const TimeModelParams& params);

/// Hirsch's proportionality constant N_c ≈ g1 h² for the linear-growth model,
/// g1 = (1 + c/p)² / (2 c/p). Throws DomainError for c/p <= 0.
double hirsch_g1(double c_over_p);

/// All metrics of one corpus. The I and C entries are empty when N_c = 0.
MetricReport compute_report(const AuthorCorpus& corpus);

struct BoundCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Checks h² ≤ N_c, h ≤ h_max, 0 < I ≤ 100 and C_share ≤ N_c on a report
/// that may have been supplied externally.
std::vector<BoundCheck> check_bounds(const MetricReport& report);

/// Rounds a percent or index for display (two decimals by default).
double round_to(double value, int decimals);

}  // namespace citeshare
