#include <cmath>
#include <random>

#include "doctest.h"

#include "citeshare/errors.hpp"
#include "citeshare/metric_engine.hpp"
#include "oracles.hpp"

using namespace citeshare;

namespace {

AuthorCorpus uniform(int papers, std::int64_t cites, int authors) {
    AuthorCorpus c;
    for (int i = 0; i < papers; ++i) c.publications.push_back({"p" + std::to_string(i), cites, authors, 2000 + i});
    return c;
}

// i-th paper cited (11 - i) times, i = 1..10.
AuthorCorpus descending(int authors) {
    AuthorCorpus c;
    for (int i = 1; i <= 10; ++i) c.publications.push_back({"p" + std::to_string(i), 11 - i, authors, 2000 + i});
    return c;
}

}  // namespace

TEST_CASE("total_citations") {
    CHECK(total_citations(descending(2)) == 55);
    CHECK(total_citations(AuthorCorpus{}) == 0);
    CHECK(total_citations(uniform(12, 8, 2)) == 96);
}

TEST_CASE("h_index") {
    CHECK(h_index(descending(2)) == 5);
    CHECK(h_index(uniform(20, 4, 2)) == 4);
    CHECK(h_index(AuthorCorpus{}) == 0);
    CHECK(h_index(uniform(12, 8, 2)) == 8);
    CHECK(h_index(uniform(3, 0, 1)) == 0);
}

TEST_CASE("credit_share") {
    CHECK(credit_share(descending(2)) == doctest::Approx(27.5));
    auto solo = descending(1);
    CHECK(credit_share(solo) == static_cast<double>(total_citations(solo)));
    CHECK(credit_share(AuthorCorpus{}) == 0.0);
}

TEST_CASE("i_index and c_index") {
    CHECK(i_index(descending(2)) == doctest::Approx(50.0).epsilon(1e-12));
    CHECK(round_to(i_index(descending(3)), 2) == doctest::Approx(33.33));
    CHECK(i_index(descending(1)) == 100.0);

    CHECK(c_index(descending(2)) == doctest::Approx(50.0).epsilon(1e-12));
    CHECK(c_index(descending(1)) == 0.0);
    CHECK(round_to(c_index(descending(3)), 2) == doctest::Approx(66.67));

    CHECK_THROWS_AS(i_index(AuthorCorpus{}), UndefinedMetricError);
    CHECK_THROWS_AS(c_index(uniform(4, 0, 2)), UndefinedMetricError);
}

TEST_CASE("book chapters flow through the I-index") {
    AuthorCorpus c;
    c.publications.push_back({"book", 30, 3, 2012, 5, true});
    // 30 citations / 5 chapters / 3 coauthors = 2 → I = 100·2/30.
    CHECK(credit_share(c) == doctest::Approx(2.0));
    CHECK(i_index(c) == doctest::Approx(100.0 * 2.0 / 30.0));
}

TEST_CASE("nc_min_bound and h_max_bound") {
    CHECK(nc_min_bound(5) == 25);
    CHECK(nc_min_bound(0) == 0);
    CHECK(nc_min_bound(179) == 32041);
    CHECK(nc_min_bound(179) <= 166563);

    CHECK(h_max_bound(55, 10) == 7);
    CHECK(h_max_bound(80, 5) == 5);
    CHECK(h_max_bound(0, 0) == 0);
    // Perfect squares and their neighbours.
    CHECK(h_max_bound(49, 100) == 7);
    CHECK(h_max_bound(48, 100) == 6);
    CHECK(h_max_bound(4'000'000'000'000LL, 10'000'000) == 2'000'000);
}

TEST_CASE("i_time_model") {
    CHECK(i_time_model({1, 1, 1, 1, 1}) == doctest::Approx(100.0));
    CHECK(i_time_model({1, 1, 1, 1, 37.5}) == doctest::Approx(100.0));
    CHECK(i_time_model({2, 1, 1, 0.5, 1}) == doctest::Approx(50.0));

    // Large-t limit 100·b2/a2, reached by evaluating at growing t.
    TimeModelParams p{2, 1, 1.5, 0.5, 1e9};
    CHECK(i_time_model(p) == doctest::Approx(50.0).epsilon(1e-8));

    CHECK_THROWS_AS(i_time_model({0, 0, 0, 0, 1}), DomainError);
    CHECK_THROWS_AS(i_time_model({1, 1, 1, 1, 0}), DomainError);
    CHECK_THROWS_AS(i_time_model({1, 1, 2, 1, 1}), DomainError);
}

TEST_CASE("property: i_time_model approaches 100·b2/a2 monotonically") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.05, 10.0);
    std::uniform_real_distribution<double> frac(0.0, 1.0);
    for (int iter = 0; iter < 500; ++iter) {
        double a1 = u(rng), a2 = u(rng);
        double b1 = a1 * frac(rng), b2 = a2 * frac(rng);
        double limit = 100.0 * b2 / a2;
        // I(t) - limit has the sign of (b1/a1 - b2/a2), shrinking in t.
        int sign = (b1 / a1 > b2 / a2) ? 1 : (b1 / a1 < b2 / a2 ? -1 : 0);
        double prev_gap = INFINITY;
        for (double t : {0.5, 1.0, 2.0, 5.0, 10.0, 40.0, 100.0, 1e4}) {
            double gap = i_time_model({a1, a2, b1, b2, t}) - limit;
            if (sign > 0) CHECK(gap >= -1e-9);
            if (sign < 0) CHECK(gap <= 1e-9);
            CHECK(std::abs(gap) <= prev_gap + 1e-9);
            prev_gap = std::abs(gap);
        }
        CHECK(std::abs(i_time_model({a1, a2, b1, b2, 1e12}) - limit) < 1e-6);
    }
}

TEST_CASE("hirsch_g1") {
    CHECK(hirsch_g1(1.0) == doctest::Approx(2.0));
    CHECK(hirsch_g1(3.0) == doctest::Approx(16.0 / 6.0));
    CHECK_THROWS_AS(hirsch_g1(0.0), DomainError);
    CHECK_THROWS_AS(hirsch_g1(-1.0), DomainError);

    // Grid scan for the minimum.
    double best = INFINITY, arg = 0;
    for (int k = 1; k <= 100000; ++k) {
        double r = k * 1e-4;
        if (double g = hirsch_g1(r); g < best) best = g, arg = r;
    }
    CHECK(best == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(arg == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("check_bounds on computed and hand-made reports") {
    auto report = compute_report(descending(2));
    for (const auto& c : check_bounds(report)) CHECK_MESSAGE(c.passed, c.name);

    MetricReport bad;
    bad.n_c = 50;
    bad.h = 10;
    bad.n_p = 12;
    bad.c_share = 25;
    bad.i_index = 50;
    auto checks = check_bounds(bad);
    CHECK_FALSE(checks[0].passed);  // h² ≤ N_c
    CHECK_FALSE(checks[1].passed);  // h_max = 7
}

TEST_CASE("property: h_index matches the exhaustive oracle") {
    std::mt19937_64 rng(42);
    for (int iter = 0; iter < 2000; ++iter) {
        auto corpus = oracle::random_corpus(rng, 50, 80, 10);
        REQUIRE(h_index(corpus) == oracle::brute_h_index(corpus));
    }
}

TEST_CASE("property: bounds, I range, scale invariance, growth rule") {
    std::mt19937_64 rng(1234);
    std::uniform_int_distribution<int> divisor(1, 50);
    std::uniform_int_distribution<std::int64_t> cites(1, 10000);
    for (int iter = 0; iter < 1000; ++iter) {
        auto corpus = oracle::random_corpus(rng, 100, 10000, 50);
        auto r = compute_report(corpus);
        CHECK(r.h * r.h <= r.n_c);
        CHECK(r.h <= r.n_p);
        CHECK(r.h <= h_max_bound(r.n_c, r.n_p));
        CHECK(r.c_share <= static_cast<double>(r.n_c));
        if (r.n_c == 0) {
            CHECK_FALSE(r.i_index.has_value());
            continue;
        }
        double i = *r.i_index;
        CHECK(i > 0.0);
        CHECK(i <= 100.0);
        CHECK(std::abs(i - static_cast<double>(oracle::exact_i_index(corpus))) < 1e-9);

        bool all_solo = true;
        for (const auto& p : corpus.publications)
            if (p.citations > 0 && p.n_authors != 1) all_solo = false;
        CHECK((i == 100.0) == all_solo);

        for (std::int64_t k : {2, 7, 100}) {
            auto scaled = corpus;
            for (auto& p : scaled.publications) p.citations *= k;
            CHECK(i_index(scaled) == i);
        }

        int d = divisor(rng);
        auto grown = corpus;
        grown.publications.push_back({"new", cites(rng), d, 2016});
        double after = i_index(grown);
        int sign = oracle::growth_sign(corpus, d);
        if (sign > 0) CHECK(after > i);
        if (sign < 0) CHECK(after < i);
        if (sign == 0) CHECK(after == doctest::Approx(i).epsilon(1e-12));
    }
}

TEST_CASE("growth rule: equal share leaves I fixed, larger or smaller shares move it") {
    auto base = descending(2);  // I = 50
    auto same = base;
    same.publications.push_back({"x", 40, 2, 2011});
    CHECK(i_index(same) == i_index(base));

    auto crowded = base;
    crowded.publications.push_back({"x", 40, 30, 2011});
    CHECK(i_index(crowded) < i_index(base));

    auto solo = base;
    solo.publications.push_back({"x", 40, 1, 2011});
    CHECK(i_index(solo) > i_index(base));
}
