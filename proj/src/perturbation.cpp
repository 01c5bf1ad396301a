#include "anderson/perturbation.hpp"

#include <algorithm>
#include <cmath>

#include "anderson/rng.hpp"

namespace anderson {

namespace {

void require_simple(const SpectralSample& sample, int n, double min_gap, const char* who) {
    if (n < 0 || n >= sample.n) throw std::invalid_argument(std::string(who) + ": index out of range");
    if (sample.eigenvectors.empty())
        throw std::invalid_argument(std::string(who) + ": sample carries no eigenvectors");
    const double gap = sample.gap_to_rest(n);
    if (!(gap > min_gap))
        throw NearDegenerateError(std::string(who) + ": eigenvalue " + std::to_string(n) +
                                      " is near-degenerate (gap_to_rest = " +
                                      std::to_string(gap) + ")",
                                  gap);
}

}  // namespace

GradientRecord eigen_gradient(const SpectralSample& sample, int n, double min_gap) {
    require_simple(sample, n, min_gap, "eigen_gradient");
    GradientRecord rec;
    rec.n = n;
    rec.eigenvalue = sample.eigenvalues[n];
    rec.gap_to_rest = sample.gap_to_rest(n);
    auto phi = sample.eigenvector(n);
    rec.gradient.resize(sample.n);
    double sum = 0.0;
    for (int i = 0; i < sample.n; ++i) {
        rec.gradient[i] = phi[i] * phi[i];
        sum += rec.gradient[i];
    }
    if (std::fabs(sum - 1.0) > 1e-10)
        throw EigensolveError("eigen_gradient: l1 norm of the gradient deviates from 1 by " +
                              std::to_string(sum - 1.0));
    return rec;
}

std::vector<double> eigen_hessian(const SpectralSample& sample, int n, double min_gap) {
    require_simple(sample, n, min_gap, "eigen_hessian");
    const int N = sample.n;
    auto phi_n = sample.eigenvector(n);
    std::vector<double> h(static_cast<std::size_t>(N) * N, 0.0);
    std::vector<double> w(N);
    for (int m = 0; m < N; ++m) {
        if (m == n) continue;
        const double coeff = -2.0 / (sample.eigenvalues[m] - sample.eigenvalues[n]);
        auto phi_m = sample.eigenvector(m);
        for (int g = 0; g < N; ++g) w[g] = phi_m[g] * phi_n[g];
        // fill the lower triangle; mirrored below so symmetry is exact
        for (int g = 0; g < N; ++g) {
            const double cg = coeff * w[g];
            double* row = h.data() + static_cast<std::size_t>(g) * N;
            for (int b = 0; b <= g; ++b) row[b] += cg * w[b];
        }
    }
    for (int g = 0; g < N; ++g)
        for (int b = g + 1; b < N; ++b)
            h[static_cast<std::size_t>(g) * N + b] = h[static_cast<std::size_t>(b) * N + g];
    return h;
}

double hessian_pairing(const SpectralSample& sample, int n, std::span<const double> a,
                       std::span<const double> b, double min_gap) {
    require_simple(sample, n, min_gap, "hessian_pairing");
    const int N = sample.n;
    if (static_cast<int>(a.size()) != N || static_cast<int>(b.size()) != N)
        throw std::invalid_argument("hessian_pairing: pattern size mismatch");
    auto phi_n = sample.eigenvector(n);
    double acc = 0.0;
    for (int m = 0; m < N; ++m) {
        if (m == n) continue;
        auto phi_m = sample.eigenvector(m);
        double sa = 0.0, sb = 0.0;
        for (int g = 0; g < N; ++g) {
            const double w = phi_m[g] * phi_n[g];
            sa += a[g] * w;
            sb += b[g] * w;
        }
        acc += -2.0 / (sample.eigenvalues[m] - sample.eigenvalues[n]) * sa * sb;
    }
    return acc;
}

PairingBound hessian_pairing_bound(const SpectralSample& sample, int n, int n_patterns,
                                   std::uint64_t seed, double min_gap) {
    require_simple(sample, n, min_gap, "hessian_pairing_bound");
    PairingBound out;
    out.patterns = n_patterns;
    const double gap = sample.gap_to_rest(n);
    out.bound = 2.0 / gap;
    rng::Xoshiro256ss gen(seed);
    std::vector<double> a(sample.n), b(sample.n);
    for (int p = 0; p < n_patterns; ++p) {
        for (auto& v : a) v = (gen.next() & 1) ? 1.0 : -1.0;
        for (auto& v : b) v = (gen.next() & 1) ? 1.0 : -1.0;
        const double pairing = std::fabs(hessian_pairing(sample, n, a, b, min_gap));
        out.max_ratio = std::max(out.max_ratio, pairing / out.bound);
    }
    return out;
}

double jacobian_2x2(const GradientRecord& grad_e, const GradientRecord& grad_e_prime,
                    long long gamma, long long gamma_prime) {
    if (gamma == gamma_prime)
        throw std::invalid_argument("jacobian_2x2: sites must be distinct");
    const auto& g = grad_e.gradient;
    const auto& gp = grad_e_prime.gradient;
    if (g.size() != gp.size())
        throw std::invalid_argument("jacobian_2x2: gradients from different cubes");
    if (gamma < 0 || gamma_prime < 0 || gamma >= static_cast<long long>(g.size()) ||
        gamma_prime >= static_cast<long long>(g.size()))
        throw std::invalid_argument("jacobian_2x2: site index out of range");
    return g[gamma] * gp[gamma_prime] - g[gamma_prime] * gp[gamma];
}

MinorBoundResult minor_lower_bound(std::span<const double> u, std::span<const double> v) {
    const std::size_t n = u.size();
    if (v.size() != n || n < 2)
        throw std::invalid_argument("minor_lower_bound: needs two sequences of equal length >= 2");
    double su = 0.0, sv = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (u[i] < 0.0 || v[i] < 0.0)
            throw std::invalid_argument("minor_lower_bound: components must be nonnegative");
        su += u[i];
        sv += v[i];
    }
    if (std::fabs(su - 1.0) > 1e-12 || std::fabs(sv - 1.0) > 1e-12)
        throw std::invalid_argument("minor_lower_bound: sequences must be l1-normalized");
    MinorBoundResult out;
    double l1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) l1 += std::fabs(u[i] - v[i]);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) {
            const double m = u[j] * v[k] - u[k] * v[j];
            out.max_minor_sq = std::max(out.max_minor_sq, m * m);
        }
    const double n5 = std::pow(static_cast<double>(n), 5);
    out.rhs = l1 * l1 / (4.0 * n5);
    out.holds = out.max_minor_sq >= out.rhs;
    return out;
}

SeparationCheck gradient_separation_check(const SpectralSample& sample, int j, int k,
                                          std::span<const double> potential, int d, double K,
                                          double slack, double min_gap) {
    require_simple(sample, j, min_gap, "gradient_separation_check");
    require_simple(sample, k, min_gap, "gradient_separation_check");
    if (static_cast<int>(potential.size()) != sample.n)
        throw std::invalid_argument("gradient_separation_check: potential size mismatch");
    SeparationCheck out;
    out.gap = std::fabs(sample.eigenvalues[j] - sample.eigenvalues[k]);
    out.hypothesis = out.gap > 2.0 * d;
    auto phi_j = sample.eigenvector(j);
    auto phi_k = sample.eigenvector(k);
    double dot = 0.0, l1 = 0.0, l2 = 0.0;
    for (int i = 0; i < sample.n; ++i) {
        const double diff = phi_j[i] * phi_j[i] - phi_k[i] * phi_k[i];
        dot += potential[i] * diff;
        l1 += std::fabs(diff);
        l2 += diff * diff;
    }
    out.omega_dot_grad = std::fabs(dot);
    out.grad_diff_l1 = l1;
    out.grad_diff_l2 = std::sqrt(l2);
    out.rhs_intermediate = out.gap - 2.0 * d;
    out.rhs_final = out.rhs_intermediate / (K * std::sqrt(static_cast<double>(sample.n)));
    if (out.hypothesis) {
        out.holds_intermediate = out.omega_dot_grad >= out.rhs_intermediate - slack;
        out.holds_final = out.grad_diff_l2 >= out.rhs_final - slack;
    }
    return out;
}

}  // namespace anderson
