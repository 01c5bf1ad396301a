#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "anderson/eigensolve.hpp"

namespace anderson {

struct NearDegenerateError : std::runtime_error {
    double gap;
    NearDegenerateError(const std::string& what, double gap_) : std::runtime_error(what), gap(gap_) {}
};

inline constexpr double kSimpleGapThreshold = 1e-10;

// First-order perturbation of a simple eigenvalue in the on-site couplings:
// dE_n/d omega_gamma = phi_n(gamma)^2, nonnegative with l1 norm 1.
struct GradientRecord {
    int n = 0;
    double eigenvalue = 0.0;
    double gap_to_rest = 0.0;
    std::vector<double> gradient;  // one entry per site
};

GradientRecord eigen_gradient(const SpectralSample& sample, int n,
                              double min_gap = kSimpleGapThreshold);

// Hessian of a simple eigenvalue: h_{gb} =
// -2 sum_{m != n} (E_m - E_n)^{-1} phi_m(g) phi_n(g) phi_m(b) phi_n(b).
// Row-major n_sites x n_sites, exactly symmetric.
std::vector<double> eigen_hessian(const SpectralSample& sample, int n,
                                  double min_gap = kSimpleGapThreshold);

// <Hess a, b> through the spectral sum (O(n^2), no Hessian materialization).
double hessian_pairing(const SpectralSample& sample, int n, std::span<const double> a,
                       std::span<const double> b, double min_gap = kSimpleGapThreshold);

// Random +-1 patterns against the bound |<Hess a, b>| <= 2 / gap.
struct PairingBound {
    int patterns = 0;
    double bound = 0.0;      // 2 / gap_to_rest
    double max_ratio = 0.0;  // max |<Hess a, b>| * gap / 2 observed
};
PairingBound hessian_pairing_bound(const SpectralSample& sample, int n, int n_patterns,
                                   std::uint64_t seed, double min_gap = kSimpleGapThreshold);

// Determinant of the 2x2 matrix of partials of (E, E') at sites (g, g').
double jacobian_2x2(const GradientRecord& grad_e, const GradientRecord& grad_e_prime,
                    long long gamma, long long gamma_prime);

// max_{j != k} |u_j v_k - u_k v_j|^2 >= ||u - v||_1^2 / (4 n^5) for
// nonnegative l1-normalized u, v.
struct MinorBoundResult {
    double max_minor_sq = 0.0;
    double rhs = 0.0;
    bool holds = false;
};
MinorBoundResult minor_lower_bound(std::span<const double> u, std::span<const double> v);

// The gradient-separation chain for a pair of simple eigenvalues:
//   (i)  |omega . grad(E_j - E_k)| >= |E_j - E_k| - 2d   (when rhs > 0)
//   (ii) ||grad(E_j - E_k)||_2 >= (|E_j - E_k| - 2d) / (K sqrt(N))
// plus the l1 norm of the gradient difference (reported, no bound asserted).
struct SeparationCheck {
    double gap = 0.0;               // |E_j - E_k|
    bool hypothesis = false;        // gap > 2d
    double omega_dot_grad = 0.0;    // |sum omega (phi_j^2 - phi_k^2)|
    double rhs_intermediate = 0.0;  // gap - 2d
    bool holds_intermediate = false;
    double grad_diff_l2 = 0.0;
    double rhs_final = 0.0;  // (gap - 2d) / (K sqrt(N))
    bool holds_final = false;
    double grad_diff_l1 = 0.0;
};

SeparationCheck gradient_separation_check(const SpectralSample& sample, int j, int k,
                                          std::span<const double> potential, int d, double K,
                                          double slack = 1e-12,
                                          double min_gap = kSimpleGapThreshold);

}  // namespace anderson
