#include "anderson/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace anderson::stats {

Summary summarize(std::span<const double> xs) {
    Summary s;
    s.n = xs.size();
    if (s.n == 0) return s;
    double m = 0.0;
    for (double x : xs) m += x;
    m /= static_cast<double>(s.n);
    double v = 0.0;
    for (double x : xs) v += (x - m) * (x - m);
    s.mean = m;
    if (s.n > 1) {
        s.sd = std::sqrt(v / static_cast<double>(s.n - 1));
        s.stderr_ = s.sd / std::sqrt(static_cast<double>(s.n));
    }
    return s;
}

double binomial_se(double p_hat, std::size_t n) {
    if (n == 0) return 0.0;
    return std::sqrt(std::max(0.0, p_hat * (1.0 - p_hat)) / static_cast<double>(n));
}

double poisson_pmf(int k, double lambda) {
    if (k < 0) return 0.0;
    double logp = -lambda + k * std::log(lambda) - std::lgamma(k + 1.0);
    return std::exp(logp);
}

double tv_distance_vs_poisson(std::span<const int> counts, double lambda) {
    if (counts.empty()) throw std::invalid_argument("tv_distance_vs_poisson: no counts");
    int kmax = 0;
    for (int c : counts) kmax = std::max(kmax, c);
    const double inv_n = 1.0 / static_cast<double>(counts.size());
    double tv = 0.0, poisson_mass = 0.0;
    for (int k = 0; k <= kmax; ++k) {
        double emp = 0.0;
        for (int c : counts)
            if (c == k) emp += inv_n;
        const double p = poisson_pmf(k, lambda);
        poisson_mass += p;
        tv += std::fabs(emp - p);
    }
    tv += std::max(0.0, 1.0 - poisson_mass);  // unobserved Poisson tail
    return 0.5 * tv;
}

namespace {

ChiSquare chisq_from_bins(const std::vector<double>& observed,
                          const std::vector<double>& expected, int estimated_params) {
    ChiSquare out;
    out.bins = static_cast<int>(observed.size());
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double diff = observed[i] - expected[i];
        out.statistic += diff * diff / expected[i];
    }
    out.dof = std::max(1, out.bins - 1 - estimated_params);
    out.p_value = 1.0 - gamma_p(0.5 * out.dof, 0.5 * out.statistic);
    return out;
}

}  // namespace

ChiSquare chisq_vs_poisson(std::span<const int> counts, double lambda, double min_expected) {
    if (counts.empty()) throw std::invalid_argument("chisq_vs_poisson: no counts");
    const double n = static_cast<double>(counts.size());
    int kmax = 0;
    for (int c : counts) kmax = std::max(kmax, c);
    // raw bins 0..kmax plus the full tail, then merge the right tail upward
    std::vector<double> obs(kmax + 2, 0.0), expd(kmax + 2, 0.0);
    for (int c : counts) obs[c] += 1.0;
    double mass = 0.0;
    for (int k = 0; k <= kmax; ++k) {
        expd[k] = n * poisson_pmf(k, lambda);
        mass += poisson_pmf(k, lambda);
    }
    expd[kmax + 1] = n * std::max(0.0, 1.0 - mass);
    // merge from the right until expected >= min_expected
    std::vector<double> mo, me;
    for (std::size_t i = 0; i < obs.size(); ++i) {
        mo.push_back(obs[i]);
        me.push_back(expd[i]);
    }
    while (me.size() > 2 && me.back() < min_expected) {
        me[me.size() - 2] += me.back();
        mo[mo.size() - 2] += mo.back();
        me.pop_back();
        mo.pop_back();
    }
    // and from the left
    while (me.size() > 2 && me.front() < min_expected) {
        me[1] += me[0];
        mo[1] += mo[0];
        me.erase(me.begin());
        mo.erase(mo.begin());
    }
    return chisq_from_bins(mo, me, 0);
}

ChiSquare chisq_independence(std::span<const int> xs, std::span<const int> ys,
                             double min_expected) {
    if (xs.size() != ys.size() || xs.empty())
        throw std::invalid_argument("chisq_independence: need paired nonempty counts");
    const double n = static_cast<double>(xs.size());
    // bin edges: merge count values >= cut into one bin per margin so that
    // each marginal bin holds >= min_expected observations
    auto make_bins = [&](std::span<const int> v) {
        int vmax = 0;
        for (int c : v) vmax = std::max(vmax, c);
        std::vector<double> freq(vmax + 1, 0.0);
        for (int c : v) freq[c] += 1.0;
        std::vector<int> upper;  // bin b covers values (upper[b-1], upper[b]]
        double acc = 0.0;
        for (int k = 0; k <= vmax; ++k) {
            acc += freq[k];
            if (acc >= min_expected) {
                upper.push_back(k);
                acc = 0.0;
            }
        }
        if (upper.empty()) upper.push_back(vmax);
        else upper.back() = vmax;  // absorb remainder into last bin
        return upper;
    };
    const auto bx = make_bins(xs);
    const auto by = make_bins(ys);
    auto bin_of = [](const std::vector<int>& ub, int v) {
        for (std::size_t b = 0; b < ub.size(); ++b)
            if (v <= ub[b]) return b;
        return ub.size() - 1;
    };
    const std::size_t R = bx.size(), C = by.size();
    std::vector<double> table(R * C, 0.0), row(R, 0.0), col(C, 0.0);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const std::size_t r = bin_of(bx, xs[i]), c = bin_of(by, ys[i]);
        table[r * C + c] += 1.0;
        row[r] += 1.0;
        col[c] += 1.0;
    }
    ChiSquare out;
    out.bins = static_cast<int>(R * C);
    for (std::size_t r = 0; r < R; ++r)
        for (std::size_t c = 0; c < C; ++c) {
            const double e = row[r] * col[c] / n;
            if (e <= 0.0) continue;
            const double diff = table[r * C + c] - e;
            out.statistic += diff * diff / e;
        }
    out.dof = std::max(1, static_cast<int>((R - 1) * (C - 1)));
    out.p_value = 1.0 - gamma_p(0.5 * out.dof, 0.5 * out.statistic);
    return out;
}

double ks_statistic_sorted(std::span<const double> sorted_xs,
                           const std::function<double(double)>& cdf) {
    const std::size_t n = sorted_xs.size();
    if (n == 0) throw std::invalid_argument("ks_statistic_sorted: empty sample");
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double f = cdf(sorted_xs[i]);
        d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
        d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - f));
    }
    return d;
}

double ks_p_value(double d, std::size_t n) {
    const double sn = std::sqrt(static_cast<double>(n));
    const double lambda = (sn + 0.12 + 0.11 / sn) * d;
    double sum = 0.0;
    for (int j = 1; j <= 100; ++j) {
        const double term = 2.0 * ((j % 2) ? 1.0 : -1.0) * std::exp(-2.0 * j * j * lambda * lambda);
        sum += term;
        if (std::fabs(term) < 1e-12) break;
    }
    return std::clamp(sum, 0.0, 1.0);
}

std::optional<double> pearson(std::span<const int> xs, std::span<const int> ys) {
    if (xs.size() != ys.size() || xs.size() < 2) return std::nullopt;
    const double n = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx, dy = ys[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0) return std::nullopt;  // degenerate margin
    return sxy / std::sqrt(sxx * syy);
}

double gamma_p(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_p: bad arguments");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) {
        // series representation
        double ap = a, sum = 1.0 / a, del = sum;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
        }
        return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    // continued fraction for Q(a, x)
    const double fpmin = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / fpmin, d = 1.0 / b, h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = b + an / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-15) break;
    }
    const double q = std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
    return 1.0 - q;
}

}  // namespace anderson::stats
