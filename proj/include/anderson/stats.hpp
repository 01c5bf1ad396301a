#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace anderson::stats {

struct Summary {
    std::size_t n = 0;
    double mean = 0.0;
    double sd = 0.0;       // sample standard deviation (n-1 denominator)
    double stderr_ = 0.0;  // sd / sqrt(n)
};
Summary summarize(std::span<const double> xs);

// binomial standard error sqrt(p(1-p)/n)
double binomial_se(double p_hat, std::size_t n);

double poisson_pmf(int k, double lambda);

// Total-variation distance between the empirical distribution of nonnegative
// integer counts and Poisson(lambda); the Poisson tail beyond the largest
// observed count is included.
double tv_distance_vs_poisson(std::span<const int> counts, double lambda);

struct ChiSquare {
    double statistic = 0.0;
    int dof = 0;
    double p_value = 1.0;
    int bins = 0;
};

// Goodness of fit of integer counts against Poisson(lambda). Tail bins are
// merged until every expected count is >= min_expected.
ChiSquare chisq_vs_poisson(std::span<const int> counts, double lambda,
                           double min_expected = 5.0);

// Independence test on a joint table of two integer count vectors (paired by
// realization); rows/columns merged greedily so expected cells are
// >= min_expected where possible.
ChiSquare chisq_independence(std::span<const int> xs, std::span<const int> ys,
                             double min_expected = 5.0);

// One-sample Kolmogorov-Smirnov statistic sup|F_n - F| for sorted data and a
// cdf, plus the asymptotic p-value.
double ks_statistic_sorted(std::span<const double> sorted_xs,
                           const std::function<double(double)>& cdf);
double ks_p_value(double d, std::size_t n);

// Pearson correlation; nullopt when either margin is constant.
std::optional<double> pearson(std::span<const int> xs, std::span<const int> ys);

// Regularized lower incomplete gamma P(a, x) (series + continued fraction).
double gamma_p(double a, double x);

}  // namespace anderson::stats
