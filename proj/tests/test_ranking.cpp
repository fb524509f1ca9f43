#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <tuple>

#include "doctest.h"

#include "citeshare/errors.hpp"
#include "citeshare/json_io.hpp"
#include "citeshare/ranking.hpp"

using namespace citeshare;

namespace {

AuthorSummary author(std::string id, std::int64_t h, double i, std::int64_t n_c = 100, double t = 10.0) {
    MetricReport r;
    r.h = h;
    r.i_index = i;
    r.c_index = 100 - i;
    r.n_c = n_c;
    r.c_share = n_c * i / 100;
    r.n_p = h;
    return summarize(std::move(id), r, t);
}

std::vector<std::string> ids(const std::vector<RankedEntry>& ranked) {
    std::vector<std::string> out;
    for (const auto& e : ranked) out.push_back(e.summary.author_id);
    return out;
}

AuthorCorpus corpus_of(std::initializer_list<std::pair<std::int32_t, std::int64_t>> year_cites) {
    AuthorCorpus c;
    int k = 0;
    for (auto [year, cites] : year_cites) c.publications.push_back({"p" + std::to_string(k++), cites, 2, year});
    return c;
}

}  // namespace

TEST_CASE("h_tilde") {
    CHECK(round_to(h_tilde(179, 74.35), 1) == doctest::Approx(154.3));
    CHECK(round_to(h_tilde(60, 19.85), 1) == doctest::Approx(26.7));
    CHECK(h_tilde(37, 100.0) == 37.0);
    CHECK_THROWS_AS(h_tilde(10, 0.0), DomainError);
    CHECK_THROWS_AS(h_tilde(10, 100.5), DomainError);
}

TEST_CASE("property: h_tilde is increasing in both arguments and never exceeds h") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> hs(0, 300);
    std::uniform_real_distribution<double> is(0.01, 100.0);
    for (int iter = 0; iter < 2000; ++iter) {
        int h = hs(rng);
        double i = is(rng);
        double v = h_tilde(h, i);
        CHECK(v <= h);
        CHECK(h_tilde(h + 1, i) > v);
        if (h > 0) {
            double j = std::min(100.0, i + 0.5);
            CHECK(h_tilde(h, j) > v);
            CHECK((v == h) == (i == 100.0));
        }
    }
}

TEST_CASE("h_tilde_t") {
    CHECK(h_tilde_t(52.4, 1.0) == 52.4);
    CHECK(round_to(h_tilde_t(154.3, 39.6), 1) == doctest::Approx(3.9));
    CHECK_THROWS_AS(h_tilde_t(10, 0), DomainError);
    CHECK_THROWS_AS(h_tilde_t(10, -2), DomainError);
}

TEST_CASE("career_span") {
    auto c = corpus_of({{1998, 0}, {2000, 5}, {2007, 1}, {2014, 0}});
    CHECK(career_span(c, SpanMode::to_last_publication) == 15.0);
    CHECK(career_span(corpus_of({{2010, 3}}), SpanMode::to_last_publication) == 1.0);

    c.collection_date = 2015;
    CHECK(career_span(c, SpanMode::to_collection_date) == 16.0);

    CHECK_THROWS_AS(career_span(corpus_of({{2010, 0}}), SpanMode::to_last_publication), UndefinedMetricError);
    CHECK_THROWS_AS(career_span(corpus_of({{2010, 3}}), SpanMode::to_collection_date), ArgumentError);
}

TEST_CASE("summarize ignores works with unknown authors") {
    auto c = corpus_of({{2000, 10}, {2001, 6}});
    c.publications.push_back({"anon", 100, 1, 2003, std::nullopt, false});
    auto s = summarize(c, SpanMode::to_last_publication);
    CHECK(s.report.n_c == 16);
    CHECK(*s.report.i_index == doctest::Approx(50.0));
    CHECK(s.t_years == 2.0);
    CHECK(s.h_tilde == doctest::Approx(2 * std::sqrt(50.0) / 10));
}

TEST_CASE("parse_ranking_key") {
    auto key = parse_ranking_key("h, I ,Nc");
    REQUIRE(key.terms.size() == 3);
    CHECK(key.terms[0].metric == Metric::h);
    CHECK(key.terms[1].metric == Metric::i_index);
    CHECK(key.terms[2].metric == Metric::n_c);
    CHECK(parse_ranking_key("htildeT:asc").terms[0].direction == Direction::ascending);

    CHECK_THROWS_AS(parse_ranking_key("h,x"), ArgumentError);
    CHECK_THROWS_AS(parse_ranking_key("h,h"), ArgumentError);
    CHECK_THROWS_AS(parse_ranking_key(""), ArgumentError);
    CHECK_THROWS_AS(parse_ranking_key("h:up"), ArgumentError);
}

TEST_CASE("rank_lexicographic") {
    auto key = parse_ranking_key("h,I");
    SUBCASE("I breaks an h tie") {
        auto ranked = rank_lexicographic({author("a", 50, 60), author("b", 50, 40)}, key);
        CHECK(ids(ranked) == std::vector<std::string>{"a", "b"});
        auto flipped = rank_lexicographic({author("b", 50, 40), author("a", 50, 60)}, key);
        CHECK(ids(flipped) == std::vector<std::string>{"a", "b"});
    }
    SUBCASE("close h values defer to I") {
        auto ranked = rank_lexicographic({author("a", 50, 40), author("b", 49, 70)}, key, {{Metric::h, 1.0}});
        CHECK(ids(ranked) == std::vector<std::string>{"b", "a"});
        auto strict = rank_lexicographic({author("a", 50, 40), author("b", 49, 70)}, key);
        CHECK(ids(strict) == std::vector<std::string>{"a", "b"});
    }
    SUBCASE("N_c decides when h and I agree") {
        auto full = parse_ranking_key("h,I,Nc");
        auto ranked = rank_lexicographic({author("a", 8, 50, 80), author("b", 8, 50, 96)}, full);
        CHECK(ids(ranked) == std::vector<std::string>{"b", "a"});
        CHECK_FALSE(ranked[0].tied);
    }
    SUBCASE("unresolved ties keep input order and share a rank") {
        auto ranked = rank_lexicographic({author("x", 9, 50), author("a", 10, 50), author("y", 9, 50)}, key);
        CHECK(ids(ranked) == std::vector<std::string>{"a", "x", "y"});
        CHECK(ranked[1].tied);
        CHECK(ranked[2].tied);
        CHECK(ranked[1].rank == 2);
        CHECK(ranked[2].rank == 2);
        CHECK_FALSE(ranked[0].tied);
    }
    SUBCASE("ascending direction") {
        auto asc = parse_ranking_key("h:asc");
        auto ranked = rank_lexicographic({author("a", 10, 50), author("b", 3, 50)}, asc);
        CHECK(ids(ranked) == std::vector<std::string>{"b", "a"});
    }
    CHECK_THROWS_AS(rank_lexicographic({}, key), ArgumentError);
    CHECK_THROWS_AS(rank_lexicographic({author("a", 1, 50)}, key, {{Metric::h, -1.0}}), ArgumentError);
}

TEST_CASE("property: zero tolerance matches tuple order; permutations only reorder exact ties") {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> hs(1, 6), ncs(1, 3);
    std::uniform_int_distribution<int> is(1, 3);
    auto key = parse_ranking_key("h,I,Nc");
    for (int iter = 0; iter < 300; ++iter) {
        std::vector<AuthorSummary> s;
        for (int k = 0; k < 12; ++k) s.push_back(author("a" + std::to_string(k), hs(rng), 25.0 * is(rng), 10 * ncs(rng)));
        auto ranked = rank_lexicographic(s, key);

        auto tuple_of = [](const AuthorSummary& a) {
            return std::make_tuple(-a.report.h, -*a.report.i_index, -a.report.n_c);
        };
        for (std::size_t k = 1; k < ranked.size(); ++k) {
            CHECK(tuple_of(ranked[k - 1].summary) <= tuple_of(ranked[k].summary));
            bool equal = tuple_of(ranked[k - 1].summary) == tuple_of(ranked[k].summary);
            CHECK(equal == (ranked[k].rank == ranked[k - 1].rank));
        }

        auto shuffled = s;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        auto again = rank_lexicographic(shuffled, key);
        REQUIRE(again.size() == ranked.size());
        for (std::size_t k = 0; k < ranked.size(); ++k) {
            CHECK(again[k].rank == ranked[k].rank);
            CHECK(tuple_of(again[k].summary) == tuple_of(ranked[k].summary));
        }
    }
}

TEST_CASE("rank_by_h_tilde") {
    std::ifstream in(CITESHARE_FIXTURE_DIR "/table1_metrics.json");
    auto summaries = summaries_from_json(nlohmann::json::parse(in));
    REQUIRE(summaries.size() == 8);
    auto ranked = rank_by_h_tilde(summaries);
    CHECK(ids(ranked) == std::vector<std::string>{"E. Witten", "A. Sen", "C.W.J. Beenakker", "D.J. Gross",
                                                  "T.W. Hansch", "C.L. Kane", "A.E. Nelson", "C. Monroe"});

    CHECK(ids(rank_by_h_tilde({author("solo", 4, 50)})) == std::vector<std::string>{"solo"});

    // Equal h̃; h̃_T 1.1 vs 0.9.
    auto slow = author("slow", 10, 49, 100, 10.0 * std::sqrt(49.0) / 10 / 0.9);
    auto fast = author("fast", 10, 49, 100, 10.0 * std::sqrt(49.0) / 10 / 1.1);
    auto ranked2 = rank_by_h_tilde({slow, fast});
    CHECK(ids(ranked2) == std::vector<std::string>{"fast", "slow"});
    CHECK(round_to(ranked2[0].summary.h_tilde_t, 1) == doctest::Approx(1.1));
}
