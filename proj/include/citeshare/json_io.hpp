#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "citeshare/credit_stochastics.hpp"
#include "citeshare/metric_engine.hpp"
#include "citeshare/ranking.hpp"

namespace citeshare {

// nlohmann ADL hooks. Optional percents are written as null when undefined.
void to_json(nlohmann::json& j, const MetricReport& r);
void from_json(const nlohmann::json& j, MetricReport& r);

void to_json(nlohmann::json& j, const AuthorSummary& s);
void from_json(const nlohmann::json& j, AuthorSummary& s);

void to_json(nlohmann::json& j, const HistogramBin& b);
void from_json(const nlohmann::json& j, HistogramBin& b);

void to_json(nlohmann::json& j, const SimulationResult& r);
void from_json(const nlohmann::json& j, SimulationResult& r);

void to_json(nlohmann::json& j, const NoiseSpec& n);
void from_json(const nlohmann::json& j, NoiseSpec& n);

nlohmann::json ranked_to_json(const std::vector<RankedEntry>& ranked);

/// Reads {"authors": [{author_id, n_c, h, i_index, t_years, ...}]}: authors
/// described by their metrics rather than their publication lists.
std::vector<AuthorSummary> summaries_from_json(const nlohmann::json& doc);

}  // namespace citeshare
