#include "citeshare/json_io.hpp"

#include "citeshare/errors.hpp"

namespace citeshare {

using nlohmann::json;

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> read_optional(const json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end() || it->is_null()) return std::nullopt;
    return it->get<double>();
}

}  // namespace

void to_json(json& j, const MetricReport& r) {
    j = json{{"n_c", r.n_c},
             {"h", r.h},
             {"c_share", r.c_share},
             {"i_index", optional_number(r.i_index)},
             {"c_index", optional_number(r.c_index)},
             {"n_p", r.n_p}};
}

void from_json(const json& j, MetricReport& r) {
    r.n_c = j.at("n_c").get<std::int64_t>();
    r.h = j.at("h").get<std::int64_t>();
    r.c_share = j.value("c_share", 0.0);
    r.i_index = read_optional(j, "i_index");
    r.c_index = read_optional(j, "c_index");
    if (r.i_index && !r.c_index) r.c_index = 100.0 - *r.i_index;
    r.n_p = j.value("n_p", std::int64_t{0});
}

void to_json(json& j, const AuthorSummary& s) {
    j = json{{"author_id", s.author_id},
             {"report", s.report},
             {"h_tilde", s.h_tilde},
             {"t_years", s.t_years},
             {"h_tilde_t", s.h_tilde_t}};
}

void from_json(const json& j, AuthorSummary& s) {
    s.author_id = j.at("author_id").get<std::string>();
    s.report = j.at("report").get<MetricReport>();
    s.h_tilde = j.at("h_tilde").get<double>();
    s.t_years = j.at("t_years").get<double>();
    s.h_tilde_t = j.at("h_tilde_t").get<double>();
}

void to_json(json& j, const HistogramBin& b) { j = json{{"center", b.center}, {"count", b.count}}; }

void from_json(const json& j, HistogramBin& b) {
    b.center = j.at("center").get<double>();
    b.count = j.at("count").get<std::int64_t>();
}

void to_json(json& j, const SimulationResult& r) {
    j = json{{"empirical_mean", r.empirical_mean},
             {"empirical_std", r.empirical_std},
             {"skewness", r.skewness},
             {"excess_kurtosis", r.excess_kurtosis},
             {"histogram", r.histogram},
             {"predicted_mean", r.predicted_mean},
             {"predicted_sigma", r.predicted_sigma},
             {"trials", r.trials},
             {"seed", r.seed},
             {"significant_papers", r.significant_papers},
             {"n_bar", r.n_bar},
             {"x_bar", r.x_bar}};
}

void from_json(const json& j, SimulationResult& r) {
    r.empirical_mean = j.at("empirical_mean").get<double>();
    r.empirical_std = j.at("empirical_std").get<double>();
    r.skewness = j.at("skewness").get<double>();
    r.excess_kurtosis = j.at("excess_kurtosis").get<double>();
    r.histogram = j.at("histogram").get<std::vector<HistogramBin>>();
    r.predicted_mean = j.at("predicted_mean").get<double>();
    r.predicted_sigma = j.at("predicted_sigma").get<double>();
    r.trials = j.at("trials").get<std::int64_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.significant_papers = j.value("significant_papers", std::int64_t{0});
    r.n_bar = j.value("n_bar", 0.0);
    r.x_bar = j.value("x_bar", 0.0);
}

void to_json(json& j, const NoiseSpec& n) {
    j = json{{"x_bar", n.x_bar}};
    if (!n.per_publication.empty()) j["per_publication"] = n.per_publication;
}

void from_json(const json& j, NoiseSpec& n) {
    n.x_bar = j.at("x_bar").get<double>();
    n.per_publication = j.value("per_publication", std::vector<double>{});
}

json ranked_to_json(const std::vector<RankedEntry>& ranked) {
    json rows = json::array();
    for (const auto& e : ranked) {
        const auto& s = e.summary;
        rows.push_back(json{{"rank", e.rank},
                            {"tied", e.tied},
                            {"author", s.author_id},
                            {"n_c", s.report.n_c},
                            {"h", s.report.h},
                            {"i_index", optional_number(s.report.i_index)},
                            {"h_tilde", s.h_tilde},
                            {"h_tilde_t", s.h_tilde_t},
                            {"t_years", s.t_years}});
    }
    return rows;
}

std::vector<AuthorSummary> summaries_from_json(const json& doc) {
    auto it = doc.find("authors");
    if (it == doc.end() || !it->is_array()) throw ParseError(0, "authors", "expected an array of author metrics");
    std::vector<AuthorSummary> out;
    std::size_t index = 0;
    for (const auto& row : *it) {
        ++index;
        try {
            MetricReport r;
            r.n_c = row.at("n_c").get<std::int64_t>();
            r.h = row.at("h").get<std::int64_t>();
            r.i_index = row.at("i_index").get<double>();
            r.c_index = 100.0 - *r.i_index;
            r.c_share = row.value("c_share", static_cast<double>(r.n_c) * *r.i_index / 100.0);
            r.n_p = row.value("n_p", r.h);
            out.push_back(summarize(row.at("author_id").get<std::string>(), r, row.at("t_years").get<double>()));
        } catch (const json::exception& e) {
            throw ParseError(index, "authors", e.what());
        }
    }
    return out;
}

}  // namespace citeshare
