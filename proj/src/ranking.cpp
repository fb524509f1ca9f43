#include "citeshare/ranking.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "citeshare/errors.hpp"

namespace citeshare {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

std::string_view strip(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

Metric parse_metric(std::string_view name) {
    auto n = lower(strip(name));
    if (n == "h") return Metric::h;
    if (n == "i" || n == "i_index") return Metric::i_index;
    if (n == "nc" || n == "n_c") return Metric::n_c;
    if (n == "htilde" || n == "h_tilde") return Metric::h_tilde;
    if (n == "htildet" || n == "htilde_t" || n == "h_tilde_t") return Metric::h_tilde_t;
    throw ArgumentError("unknown metric '" + std::string(name) + "'");
}

std::string_view metric_name(Metric m) {
    switch (m) {
        case Metric::h: return "h";
        case Metric::i_index: return "I";
        case Metric::n_c: return "Nc";
        case Metric::h_tilde: return "htilde";
        case Metric::h_tilde_t: return "htildeT";
    }
    return "?";
}

RankingKey make_ranking_key(std::vector<KeyTerm> terms) {
    if (terms.empty()) throw ArgumentError("ranking key must name at least one metric");
    std::set<Metric> seen;
    for (const auto& t : terms)
        if (!seen.insert(t.metric).second)
            throw ArgumentError("ranking key repeats metric '" + std::string(metric_name(t.metric)) + "'");
    return RankingKey{std::move(terms)};
}

RankingKey parse_ranking_key(std::string_view text) {
    std::vector<KeyTerm> terms;
    while (true) {
        auto comma = text.find(',');
        auto item = strip(text.substr(0, comma));
        if (item.empty()) throw ArgumentError("empty metric name in ranking key");
        KeyTerm term;
        if (auto colon = item.find(':'); colon != std::string_view::npos) {
            auto dir = lower(strip(item.substr(colon + 1)));
            if (dir == "asc")
                term.direction = Direction::ascending;
            else if (dir != "desc")
                throw ArgumentError("unknown direction '" + dir + "' (use asc or desc)");
            item = item.substr(0, colon);
        }
        term.metric = parse_metric(item);
        terms.push_back(term);
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return make_ranking_key(std::move(terms));
}

double h_tilde(std::int64_t h, double i_percent) {
    if (h < 0) throw DomainError("h_tilde: h must be non-negative");
    if (!(i_percent > 0.0 && i_percent <= 100.0)) throw DomainError("h_tilde: I must lie in (0, 100]");
    return static_cast<double>(h) * std::sqrt(i_percent) / 10.0;
}

double h_tilde_t(double h_tilde_value, double t_years) {
    if (!(t_years > 0.0)) throw DomainError("h_tilde_t: career span must be positive");
    return h_tilde_value / t_years;
}

double career_span(const AuthorCorpus& corpus, SpanMode mode) {
    std::int32_t first_cited = std::numeric_limits<std::int32_t>::max();
    std::int32_t last = std::numeric_limits<std::int32_t>::min();
    bool any_cited = false;
    for (const auto& p : corpus.publications) {
        last = std::max(last, p.year);
        if (p.citations >= 1) {
            first_cited = std::min(first_cited, p.year);
            any_cited = true;
        }
    }
    if (!any_cited) throw UndefinedMetricError("career span is undefined without a cited publication");

    std::int32_t end = last;
    if (mode == SpanMode::to_collection_date) {
        if (!corpus.collection_date) throw ArgumentError("career span to collection date needs a collection date");
        end = *corpus.collection_date;
    }
    auto span = static_cast<double>(end) - static_cast<double>(first_cited) + 1.0;
    if (!(span > 0.0))
        throw DomainError("career span must be positive (end year " + std::to_string(end) +
                          " precedes first cited year " + std::to_string(first_cited) + ")");
    return span;
}

AuthorSummary summarize(std::string author_id, const MetricReport& report, double t_years) {
    if (!report.i_index) throw UndefinedMetricError("author '" + author_id + "' has no citations; I is undefined");
    AuthorSummary s;
    s.author_id = std::move(author_id);
    s.report = report;
    s.h_tilde = h_tilde(report.h, *report.i_index);
    s.t_years = t_years;
    s.h_tilde_t = h_tilde_t(s.h_tilde, t_years);
    return s;
}

AuthorSummary summarize(const AuthorCorpus& corpus, SpanMode mode) {
    auto usable = filter_usable(corpus).corpus;
    if (usable.publications.empty())
        throw UndefinedMetricError("author '" + corpus.author_id + "' has no usable publications");
    return summarize(corpus.author_id, compute_report(usable), career_span(usable, mode));
}

double metric_value(const AuthorSummary& s, Metric m) {
    switch (m) {
        case Metric::h: return static_cast<double>(s.report.h);
        case Metric::i_index: return s.report.i_index.value_or(0.0);
        case Metric::n_c: return static_cast<double>(s.report.n_c);
        case Metric::h_tilde: return s.h_tilde;
        case Metric::h_tilde_t: return s.h_tilde_t;
    }
    return 0.0;
}

namespace {

using Index = std::vector<std::size_t>;

// Orders `group` (indices into `summaries`, already in input order) by
// key.terms[level..] and appends the resulting tie groups to `out`.
void order_group(const std::vector<AuthorSummary>& summaries, const RankingKey& key, const EpsilonMap& epsilon,
                 std::size_t level, Index group, std::vector<Index>& out) {
    if (group.size() <= 1 || level == key.terms.size()) {
        out.push_back(std::move(group));
        return;
    }
    const auto& term = key.terms[level];
    auto value = [&](std::size_t i) {
        double v = metric_value(summaries[i], term.metric);
        return term.direction == Direction::descending ? -v : v;
    };
    std::stable_sort(group.begin(), group.end(), [&](std::size_t a, std::size_t b) { return value(a) < value(b); });

    double eps = 0.0;
    if (auto it = epsilon.find(term.metric); it != epsilon.end()) eps = it->second;

    Index current{group.front()};
    for (std::size_t k = 1; k < group.size(); ++k) {
        if (value(group[k]) - value(group[k - 1]) <= eps) {
            current.push_back(group[k]);
        } else {
            std::sort(current.begin(), current.end());
            order_group(summaries, key, epsilon, level + 1, std::move(current), out);
            current = {group[k]};
        }
    }
    std::sort(current.begin(), current.end());
    order_group(summaries, key, epsilon, level + 1, std::move(current), out);
}

}  // namespace

std::vector<RankedEntry> rank_lexicographic(const std::vector<AuthorSummary>& summaries, const RankingKey& key,
                                            const EpsilonMap& epsilon) {
    if (summaries.empty()) throw ArgumentError("nothing to rank");
    if (key.terms.empty()) throw ArgumentError("ranking key must name at least one metric");
    for (const auto& [metric, eps] : epsilon)
        if (!(eps >= 0.0)) throw ArgumentError("epsilon for '" + std::string(metric_name(metric)) + "' must be >= 0");

    Index all(summaries.size());
    std::iota(all.begin(), all.end(), 0);
    std::vector<Index> groups;
    order_group(summaries, key, epsilon, 0, std::move(all), groups);

    std::vector<RankedEntry> ranked;
    ranked.reserve(summaries.size());
    for (const auto& g : groups) {
        const std::size_t rank = ranked.size() + 1;
        for (auto i : g) ranked.push_back({summaries[i], rank, g.size() > 1});
    }
    return ranked;
}

std::vector<RankedEntry> rank_by_h_tilde(const std::vector<AuthorSummary>& summaries) {
    static const RankingKey key = make_ranking_key({{Metric::h_tilde}, {Metric::h_tilde_t}});
    return rank_lexicographic(summaries, key);
}

}  // namespace citeshare
