#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "citeshare/metric_engine.hpp"
#include "citeshare/record_model.hpp"

namespace citeshare {

enum class SpanMode { to_last_publication, to_collection_date };

struct AuthorSummary {
    std::string author_id;
    MetricReport report;
    double h_tilde = 0.0;
    double t_years = 1.0;
    double h_tilde_t = 0.0;
};

enum class Metric { h, i_index, n_c, h_tilde, h_tilde_t };
enum class Direction { descending, ascending };

struct KeyTerm {
    Metric metric = Metric::h;
    Direction direction = Direction::descending;
};

/// Lexicographic comparison order. Construct through make_ranking_key or
/// parse_ranking_key so the non-empty / no-repeat invariants hold.
struct RankingKey {
    std::vector<KeyTerm> terms;
};

RankingKey make_ranking_key(std::vector<KeyTerm> terms);

/// Parses "h,I,Nc" style keys. Accepted names (case-insensitive): h, i,
/// i_index, nc, n_c, htilde, h_tilde, htildet, h_tilde_t. A ":asc" or ":desc"
/// suffix sets the direction.
RankingKey parse_ranking_key(std::string_view text);

Metric parse_metric(std::string_view name);
std::string_view metric_name(Metric m);

/// Per-metric tolerance; values within epsilon of each other count as tied.
using EpsilonMap = std::map<Metric, double>;

/// Normalized h-index h·√I/10, the h-index the author might have had working alone.
double h_tilde(std::int64_t h, double i_percent);

/// h̃ / T.
double h_tilde_t(double h_tilde_value, double t_years);

/// Inclusive span in years from the first cited publication to the last
/// publication (or to the collection date).
double career_span(const AuthorCorpus& corpus, SpanMode mode);

/// Metrics plus h̃ and h̃_T of one author. Works with unknown author
/// information are dropped first; throws UndefinedMetricError when no
/// citations remain.
AuthorSummary summarize(const AuthorCorpus& corpus, SpanMode mode);

/// Summary from already-known metrics (e.g. published tables).
AuthorSummary summarize(std::string author_id, const MetricReport& report, double t_years);

double metric_value(const AuthorSummary& s, Metric m);

struct RankedEntry {
    AuthorSummary summary;
    std::size_t rank = 0;      // 1-based; tied entries share a rank
    bool tied = false;         // unresolved by every key term
};

/// Stable lexicographic ranking. For each key term, values are grouped by
/// chaining neighbours that differ by at most epsilon; each group is then
/// ordered by the next term. Groups left after the last term keep input order
/// and are flagged as tied.
std::vector<RankedEntry> rank_lexicographic(const std::vector<AuthorSummary>& summaries, const RankingKey& key,
                                            const EpsilonMap& epsilon = {});

/// Descending h̃, then descending h̃_T, then input order.
std::vector<RankedEntry> rank_by_h_tilde(const std::vector<AuthorSummary>& summaries);

}  // namespace citeshare
