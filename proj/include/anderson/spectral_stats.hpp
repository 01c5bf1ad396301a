#pragma once

#include <optional>
#include <span>
#include <vector>

#include "anderson/disorder.hpp"
#include "anderson/eigensolve.hpp"
#include "anderson/stats.hpp"

namespace anderson {

// Energy interval. Windows come from open intervals in the estimates;
// boundary hits (measure zero) are counted as inside, so containment is
// closed on both ends.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double width() const { return hi - lo; }
    bool contains(double x) const { return x >= lo && x <= hi; }
    bool subset_of(const Interval& other) const { return lo >= other.lo && hi <= other.hi; }
};

// #{sorted eigenvalues in J}
int count_in(std::span<const double> sorted_vals, const Interval& J);

// --- density of states ---------------------------------------------------

struct DosEstimate {
    std::vector<double> grid;     // ascending energies
    std::vector<double> nu_hat;   // window-count density estimate, 1/energy
    std::vector<double> n_hat;    // integrated density of states, in [0, 1]
    double bandwidth = 0.0;
    int realizations_used = 0;
    bool bandwidth_warning = false;  // h below twice the mean level spacing
};

struct DosRealizationRow {
    int realization = 0;
    double ev_min = 0.0;
    double ev_max = 0.0;
};

DosEstimate estimate_dos(int d, int L, const DisorderSpec& spec, int R,
                         std::span<const double> grid, double h, int workers,
                         std::vector<DosRealizationRow>* rows = nullptr);

// The same window-count estimator evaluated at single energies (used to fix
// the rescaling constant nu(E); run it on an ensemble independent of the one
// under test).
std::vector<double> estimate_nu_multi(int d, int L, const DisorderSpec& spec, int R,
                                      std::span<const double> energies, double h, int workers);
double estimate_nu_at(int d, int L, const DisorderSpec& spec, int R, double E, double h,
                      int workers);

// --- rescaled levels ------------------------------------------------------

struct PointProcessSample {
    double reference_energy = 0.0;
    double nu_at_e = 0.0;
    std::vector<double> points;  // xi_n = |Lambda| nu(E) (E_n - E), ascending
};

PointProcessSample rescale_levels(std::span<const double> eigenvalues_ascending,
                                  long long n_sites, double E, double nu_at_e);
PointProcessSample rescale_levels(const SpectralSample& sample, double E, double nu_at_e);

// --- Wegner / Minami ------------------------------------------------------

struct WegnerResult {
    Interval J;
    long long n_sites = 0;
    int realizations = 0;
    std::vector<int> counts;  // per realization, index order
    double mean_count = 0.0;
    double se_count = 0.0;
    double ratio = 0.0;  // mean / (|J| |Lambda|)
};

WegnerResult wegner_estimator(int d, int L, const DisorderSpec& spec, Interval J, int R,
                              int workers);

struct MinamiResult {
    Interval J, K;
    long long n_sites = 0;
    int realizations = 0;
    std::vector<int> counts_j, counts_k;  // per realization
    double mean_pair = 0.0;               // mean of n_J (n_K - 1)
    double se_pair = 0.0;
    double ratio = 0.0;  // mean / (|J| |K| |Lambda|^2)
};

MinamiResult minami_estimator(int d, int L, const DisorderSpec& spec, Interval J, Interval K,
                              int R, int workers);

// --- two-energy decorrelation (small boxes against the large scale) -------

struct DecorrelationResult {
    int L = 0;      // large scale fixing the window width L^{-d}
    int ell = 0;    // small-box half-side, round(L^alpha)
    double alpha = 0.0;
    double E = 0.0, E_prime = 0.0;
    int realizations = 0;
    std::vector<unsigned char> hit_e, hit_e_prime;  // per realization
    long long n_e = 0, n_e_prime = 0, n_both = 0;
    double p_e = 0.0, p_e_prime = 0.0, p_both = 0.0;
    double se_e = 0.0, se_e_prime = 0.0, se_both = 0.0;
    std::optional<double> ratio_product;  // P_both / (P_E P_E'), undefined on zero marginals
    double ratio_2d = 0.0;                // P_both / (l/L)^{2d}
    double ratio_d = 0.0;                 // P_both / (l/L)^d, the sufficiency criterion
    double se_ratio_d = 0.0;
    bool lemma_two_energy_far = false;    // |E - E'| > 2d
};

DecorrelationResult decorrelation_estimator(int d, int L, double alpha, double E,
                                            double E_prime, const DisorderSpec& spec, int R,
                                            int workers);

// --- Poisson goodness of fit ----------------------------------------------

struct PoissonWindowStat {
    Interval window;
    double lambda = 0.0;  // |U|
    double mean_count = 0.0;
    double tv = 0.0;
    stats::ChiSquare chisq;
};

struct PoissonGofResult {
    double reference_energy = 0.0;
    double nu_at_e = 0.0;
    int realizations = 0;
    std::vector<std::vector<int>> counts;  // [window][realization]
    std::vector<PoissonWindowStat> window_stats;
    Interval spacing_window;
    std::size_t n_spacings = 0;
    double spacing_mean = 0.0;
    double ks = 0.0;       // pooled nearest-neighbor spacings vs Exp(1)
    double ks_p = 0.0;
    bool low_power = false;  // fewer than 100 realizations
};

PoissonGofResult poisson_gof(const std::vector<PointProcessSample>& ensemble,
                             const std::vector<Interval>& windows, Interval spacing_window);

// --- two-energy independence ----------------------------------------------

struct LaplaceProbe {
    double t = 0.0, t_prime = 0.0;
    double joint = 0.0;    // E[exp(-t N - t' N')]
    double product = 0.0;  // E[exp(-t N)] E[exp(-t' N')]
    double gap = 0.0;
};

struct IndependenceResult {
    int realizations = 0;
    std::vector<int> counts_e, counts_e_prime;  // per realization, same omega
    std::optional<double> correlation;          // nullopt when a margin is constant
    stats::ChiSquare chisq;
    std::vector<LaplaceProbe> probes;
};

IndependenceResult independence_test(std::span<const int> counts_e,
                                     std::span<const int> counts_e_prime,
                                     std::span<const double> probe_values);

}  // namespace anderson
