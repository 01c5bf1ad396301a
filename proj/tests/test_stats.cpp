#include <doctest.h>

#include <cmath>

#include "anderson/rng.hpp"
#include "anderson/stats.hpp"

using namespace anderson;

TEST_CASE("summary statistics") {
    const std::vector<double> xs = {1.0, 2.0, 3.0, 4.0};
    const auto s = stats::summarize(xs);
    CHECK(s.mean == doctest::Approx(2.5));
    CHECK(s.sd == doctest::Approx(std::sqrt(5.0 / 3.0)));
    CHECK(s.stderr_ == doctest::Approx(s.sd / 2.0));
}

TEST_CASE("poisson pmf normalizes") {
    for (double lambda : {0.5, 1.0, 2.0, 7.0}) {
        double mass = 0.0;
        for (int k = 0; k < 80; ++k) mass += stats::poisson_pmf(k, lambda);
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(stats::poisson_pmf(-1, 1.0) == 0.0);
}

TEST_CASE("tv distance, hand-computed case") {
    // counts {0, 1}: empirical p0 = p1 = 1/2 against Poisson(1)
    const std::vector<int> counts = {0, 1};
    const double p = std::exp(-1.0);
    const double want = 0.5 * ((0.5 - p) + (0.5 - p) + (1.0 - 2.0 * p));
    CHECK(stats::tv_distance_vs_poisson(counts, 1.0) == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("ks statistic on a tiny sorted sample") {
    // single point at median of Exp(1): F = 0.5, D = 0.5
    const std::vector<double> xs = {std::log(2.0)};
    const double d =
        stats::ks_statistic_sorted(xs, [](double x) { return 1.0 - std::exp(-x); });
    CHECK(d == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(stats::ks_p_value(0.5, 1) > 0.0);
    CHECK(stats::ks_p_value(0.01, 100) > stats::ks_p_value(0.5, 100));
}

TEST_CASE("gamma_p against closed forms") {
    // P(1, x) = 1 - exp(-x)
    for (double x : {0.1, 1.0, 3.0, 10.0})
        CHECK(stats::gamma_p(1.0, x) == doctest::Approx(1.0 - std::exp(-x)).epsilon(1e-12));
    // P(1/2, x) = erf(sqrt(x))
    for (double x : {0.2, 1.0, 4.0})
        CHECK(stats::gamma_p(0.5, x) == doctest::Approx(std::erf(std::sqrt(x))).epsilon(1e-10));
}

TEST_CASE("chi-square respects merged-bin minimum and gives sane p-values") {
    rng::Xoshiro256ss gen(4);
    std::vector<int> counts(5000);
    for (auto& c : counts) {
        const double u = gen.uniform01();
        double acc = 0.0;
        int k = 0;
        while (true) {
            acc += stats::poisson_pmf(k, 2.0);
            if (u <= acc || k > 60) break;
            ++k;
        }
        c = k;
    }
    const auto chi = stats::chisq_vs_poisson(counts, 2.0);
    CHECK(chi.dof >= 1);
    CHECK(chi.p_value > 1e-4);  // data drawn from the null
    const auto wrong = stats::chisq_vs_poisson(counts, 4.0);
    CHECK(wrong.p_value < 1e-6);
}

TEST_CASE("pearson correlation") {
    const std::vector<int> xs = {1, 2, 3, 4, 5};
    const std::vector<int> ys = {2, 4, 6, 8, 10};
    CHECK(*stats::pearson(xs, ys) == doctest::Approx(1.0));
    const std::vector<int> anti = {5, 4, 3, 2, 1};
    CHECK(*stats::pearson(xs, anti) == doctest::Approx(-1.0));
    const std::vector<int> constant = {3, 3, 3, 3, 3};
    CHECK(!stats::pearson(xs, constant).has_value());
}

TEST_CASE("chi-square independence on dependent and independent tables") {
    rng::Xoshiro256ss gen(11);
    const int R = 4000;
    std::vector<int> a(R), b(R), c(R);
    auto draw = [&](double lambda) {
        const double u = gen.uniform01();
        double acc = 0.0;
        int k = 0;
        while (true) {
            acc += stats::poisson_pmf(k, lambda);
            if (u <= acc || k > 60) break;
            ++k;
        }
        return k;
    };
    for (int r = 0; r < R; ++r) {
        a[r] = draw(2.0);
        b[r] = draw(2.0);
        c[r] = a[r];  // fully dependent
    }
    CHECK(stats::chisq_independence(a, b).p_value > 1e-4);
    CHECK(stats::chisq_independence(a, c).p_value < 1e-8);
}

TEST_CASE("binomial standard error") {
    CHECK(stats::binomial_se(0.5, 100) == doctest::Approx(0.05));
    CHECK(stats::binomial_se(0.0, 100) == 0.0);
}
