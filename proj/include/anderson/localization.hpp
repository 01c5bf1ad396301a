#pragma once

#include <optional>
#include <vector>

#include "anderson/eigensolve.hpp"
#include "anderson/spectral_stats.hpp"

namespace anderson {

// Localization center and exponential-decay fit of one eigenvector. The fit
// is ordinary least squares of log|phi(x)| against the periodic distance to
// the center, over sites with |phi| above the amplitude floor; the fitted
// line is log|phi| ~ c - nu_hat * r with q_hat = c / log(L).
struct LocalizationRecord {
    int n = 0;
    double eigenvalue = 0.0;
    std::vector<int> center;     // multi-index, lexicographic tie-break
    double nu_hat = 0.0;         // decay rate per lattice unit, >= 0
    double q_hat = 0.0;          // prefactor exponent
    double max_violation = 0.0;  // largest positive excess of log|phi| over the fit
    int sites_fitted = 0;
};

inline constexpr double kAmplitudeFloor = 1e-14;

// Periodic distance between two sites of the cube (per-coordinate wrap,
// Euclidean combination).
double periodic_distance(const LatticeCube& cube, std::span<const int> x,
                         std::span<const int> y);

std::vector<LocalizationRecord> localization_centers(const SpectralSample& sample,
                                                     const LatticeCube& cube);

// --- box-restriction eigenvalue matching ----------------------------------

struct BoxMatch {
    double e_big = 0.0;       // eigenvalue of H(Lambda_L) in the window
    std::vector<int> center;  // its localization center (inside Lambda_ell)
    double e_small = 0.0;     // nearest eigenvalue of H(Lambda_round(ell(1+eps)))
    double distance = 0.0;
};

struct BoxMatchingRealization {
    int realization_index = 0;
    int ell = 0;
    int ell_outer = 0;  // round(ell (1 + eps))
    std::vector<BoxMatch> matches;
    double max_distance = 0.0;     // 0 when no eigenvalue qualifies
    double nu_hat_median = 0.0;    // measured decay of the matched eigenvectors
    double reference_scale = 0.0;  // exp(-nu_hat_median * eps * ell / 4)
};

// One coupled realization: the small box shares the potential of the large
// box on the shared sites (the per-site streams are keyed on coordinates).
// Eigenvalues of H(Lambda_L) in the window whose localization center lies in
// Lambda_ell are matched to the nearest eigenvalue of the ell(1+eps) box.
BoxMatchingRealization box_matching_realization(const DisorderSpec& spec, int d, int L_big,
                                                int ell, double eps, Interval window,
                                                int realization_index,
                                                int dense_limit = 4096);

}  // namespace anderson
