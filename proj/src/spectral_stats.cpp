#include "anderson/spectral_stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "anderson/parallel.hpp"

namespace anderson {

int count_in(std::span<const double> sorted_vals, const Interval& J) {
    auto lo = std::lower_bound(sorted_vals.begin(), sorted_vals.end(), J.lo);
    auto hi = std::upper_bound(sorted_vals.begin(), sorted_vals.end(), J.hi);
    return static_cast<int>(hi - lo);
}

namespace {

std::vector<double> realization_spectrum(int d, int L, const DisorderSpec& spec, int r) {
    LatticeCube cube(d, L);
    const Potential pot = sample_potential(cube, spec, r);
    const HamiltonianMatrix H = assemble_hamiltonian(cube, pot);
    EigensolveOptions opts;
    opts.meta = {d, L, spec.base_seed, r};
    return eigenvalues_only(H, opts);
}

}  // namespace

DosEstimate estimate_dos(int d, int L, const DisorderSpec& spec, int R,
                         std::span<const double> grid, double h, int workers,
                         std::vector<DosRealizationRow>* rows) {
    spec.validate();
    if (R < 10) throw std::invalid_argument("estimate_dos: needs R >= 10");
    if (h <= 0) throw std::invalid_argument("estimate_dos: bandwidth must be positive");
    if (!std::is_sorted(grid.begin(), grid.end()))
        throw std::invalid_argument("estimate_dos: grid must be ascending");
    LatticeCube cube(d, L);
    const double n_sites = static_cast<double>(cube.n_sites());

    std::vector<std::vector<double>> spectra(R);
    par::for_each_index(R, workers,
                        [&](int r) { spectra[r] = realization_spectrum(d, L, spec, r); });
    if (rows) {
        rows->clear();
        for (int r = 0; r < R; ++r)
            rows->push_back({r, spectra[r].front(), spectra[r].back()});
    }

    DosEstimate out;
    out.grid.assign(grid.begin(), grid.end());
    out.bandwidth = h;
    out.realizations_used = R;
    out.nu_hat.assign(grid.size(), 0.0);
    out.n_hat.assign(grid.size(), 0.0);
    for (int r = 0; r < R; ++r) {
        const auto& ev = spectra[r];
        for (std::size_t g = 0; g < grid.size(); ++g) {
            out.nu_hat[g] += count_in(ev, {grid[g] - h, grid[g] + h});
            out.n_hat[g] += static_cast<double>(
                std::upper_bound(ev.begin(), ev.end(), grid[g]) - ev.begin());
        }
    }
    for (std::size_t g = 0; g < grid.size(); ++g) {
        out.nu_hat[g] /= (R * 2.0 * h * n_sites);
        out.n_hat[g] /= (R * n_sites);
    }
    const double mean_spacing =
        (HamiltonianMatrix::gershgorin_hi(spec, d) - HamiltonianMatrix::gershgorin_lo(spec, d)) /
        n_sites;
    out.bandwidth_warning = h < 2.0 * mean_spacing;
    return out;
}

std::vector<double> estimate_nu_multi(int d, int L, const DisorderSpec& spec, int R,
                                      std::span<const double> energies, double h, int workers) {
    spec.validate();
    if (R < 10) throw std::invalid_argument("estimate_nu_multi: needs R >= 10");
    LatticeCube cube(d, L);
    std::vector<std::vector<int>> counts(energies.size(), std::vector<int>(R, 0));
    par::for_each_index(R, workers, [&](int r) {
        const auto ev = realization_spectrum(d, L, spec, r);
        for (std::size_t i = 0; i < energies.size(); ++i)
            counts[i][r] = count_in(ev, {energies[i] - h, energies[i] + h});
    });
    std::vector<double> out(energies.size(), 0.0);
    for (std::size_t i = 0; i < energies.size(); ++i) {
        long long total = 0;
        for (int c : counts[i]) total += c;
        out[i] = static_cast<double>(total) /
                 (static_cast<double>(R) * 2.0 * h * static_cast<double>(cube.n_sites()));
    }
    return out;
}

double estimate_nu_at(int d, int L, const DisorderSpec& spec, int R, double E, double h,
                      int workers) {
    const double energies[] = {E};
    return estimate_nu_multi(d, L, spec, R, energies, h, workers)[0];
}

PointProcessSample rescale_levels(std::span<const double> eigenvalues_ascending,
                                  long long n_sites, double E, double nu_at_e) {
    if (!(nu_at_e > 0.0))
        throw std::invalid_argument("rescale_levels: requires nu(E) > 0");
    PointProcessSample out;
    out.reference_energy = E;
    out.nu_at_e = nu_at_e;
    out.points.resize(eigenvalues_ascending.size());
    const double scale = static_cast<double>(n_sites) * nu_at_e;
    for (std::size_t i = 0; i < eigenvalues_ascending.size(); ++i)
        out.points[i] = scale * (eigenvalues_ascending[i] - E);
    return out;
}

PointProcessSample rescale_levels(const SpectralSample& sample, double E, double nu_at_e) {
    return rescale_levels(sample.eigenvalues, sample.n, E, nu_at_e);
}

WegnerResult wegner_estimator(int d, int L, const DisorderSpec& spec, Interval J, int R,
                              int workers) {
    spec.validate();
    if (R < 1) throw std::invalid_argument("wegner_estimator: needs R >= 1");
    if (J.width() < 0) throw std::invalid_argument("wegner_estimator: empty interval has lo > hi");
    LatticeCube cube(d, L);
    WegnerResult out;
    out.J = J;
    out.n_sites = cube.n_sites();
    out.realizations = R;
    out.counts.assign(R, 0);
    par::for_each_index(R, workers, [&](int r) {
        const auto ev = realization_spectrum(d, L, spec, r);
        out.counts[r] = count_in(ev, J);
    });
    std::vector<double> xs(out.counts.begin(), out.counts.end());
    const auto s = stats::summarize(xs);
    out.mean_count = s.mean;
    out.se_count = s.stderr_;
    const double denom = J.width() * static_cast<double>(out.n_sites);
    out.ratio = denom > 0 ? out.mean_count / denom : 0.0;
    return out;
}

MinamiResult minami_estimator(int d, int L, const DisorderSpec& spec, Interval J, Interval K,
                              int R, int workers) {
    spec.validate();
    if (!J.subset_of(K)) throw std::invalid_argument("minami_estimator: requires J subset of K");
    if (R < 1000) throw std::invalid_argument("minami_estimator: needs R >= 1000");
    LatticeCube cube(d, L);
    MinamiResult out;
    out.J = J;
    out.K = K;
    out.n_sites = cube.n_sites();
    out.realizations = R;
    out.counts_j.assign(R, 0);
    out.counts_k.assign(R, 0);
    par::for_each_index(R, workers, [&](int r) {
        const auto ev = realization_spectrum(d, L, spec, r);
        out.counts_j[r] = count_in(ev, J);
        out.counts_k[r] = count_in(ev, K);
    });
    std::vector<double> pair(R);
    for (int r = 0; r < R; ++r)
        pair[r] = static_cast<double>(out.counts_j[r]) * (out.counts_k[r] - 1.0);
    const auto s = stats::summarize(pair);
    out.mean_pair = s.mean;
    out.se_pair = s.stderr_;
    const double n2 = static_cast<double>(out.n_sites) * static_cast<double>(out.n_sites);
    const double denom = J.width() * K.width() * n2;
    out.ratio = denom > 0 ? out.mean_pair / denom : 0.0;
    return out;
}

DecorrelationResult decorrelation_estimator(int d, int L, double alpha, double E,
                                            double E_prime, const DisorderSpec& spec, int R,
                                            int workers) {
    spec.validate();
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("decorrelation_estimator: alpha must lie in (0, 1)");
    const int ell = static_cast<int>(std::llround(std::pow(static_cast<double>(L), alpha)));
    if (ell < 3)
        throw std::invalid_argument("decorrelation_estimator: round(L^alpha) = " +
                                    std::to_string(ell) + " < 3");
    const double half_width = std::pow(static_cast<double>(L), -d);
    const Interval JE{E - half_width, E + half_width};
    const Interval JEp{E_prime - half_width, E_prime + half_width};

    DecorrelationResult out;
    out.L = L;
    out.ell = ell;
    out.alpha = alpha;
    out.E = E;
    out.E_prime = E_prime;
    out.realizations = R;
    out.hit_e.assign(R, 0);
    out.hit_e_prime.assign(R, 0);
    out.lemma_two_energy_far = std::fabs(E - E_prime) > 2.0 * d;
    par::for_each_index(R, workers, [&](int r) {
        const auto ev = realization_spectrum(d, ell, spec, r);
        out.hit_e[r] = count_in(ev, JE) > 0 ? 1 : 0;
        out.hit_e_prime[r] = count_in(ev, JEp) > 0 ? 1 : 0;
    });
    for (int r = 0; r < R; ++r) {
        out.n_e += out.hit_e[r];
        out.n_e_prime += out.hit_e_prime[r];
        out.n_both += (out.hit_e[r] && out.hit_e_prime[r]) ? 1 : 0;
    }
    const double Rf = static_cast<double>(R);
    out.p_e = out.n_e / Rf;
    out.p_e_prime = out.n_e_prime / Rf;
    out.p_both = out.n_both / Rf;
    out.se_e = stats::binomial_se(out.p_e, R);
    out.se_e_prime = stats::binomial_se(out.p_e_prime, R);
    out.se_both = stats::binomial_se(out.p_both, R);
    if (out.n_e > 0 && out.n_e_prime > 0)
        out.ratio_product = out.p_both / (out.p_e * out.p_e_prime);
    const double scale = std::pow(static_cast<double>(ell) / L, d);
    out.ratio_2d = out.p_both / (scale * scale);
    out.ratio_d = out.p_both / scale;
    out.se_ratio_d = out.se_both / scale;
    return out;
}

PoissonGofResult poisson_gof(const std::vector<PointProcessSample>& ensemble,
                             const std::vector<Interval>& windows, Interval spacing_window) {
    if (ensemble.empty()) throw std::invalid_argument("poisson_gof: empty ensemble");
    if (windows.empty()) throw std::invalid_argument("poisson_gof: no windows");
    for (std::size_t i = 0; i < windows.size(); ++i) {
        if (windows[i].width() <= 0)
            throw std::invalid_argument("poisson_gof: window has nonpositive width");
        for (std::size_t j = i + 1; j < windows.size(); ++j)
            if (windows[i].lo <= windows[j].hi && windows[j].lo <= windows[i].hi)
                throw std::invalid_argument("poisson_gof: windows must be pairwise disjoint");
    }
    const double E = ensemble.front().reference_energy;
    const double nu = ensemble.front().nu_at_e;
    for (const auto& s : ensemble)
        if (s.reference_energy != E || s.nu_at_e != nu)
            throw std::invalid_argument("poisson_gof: samples must share (E, nu(E))");

    PoissonGofResult out;
    out.reference_energy = E;
    out.nu_at_e = nu;
    out.realizations = static_cast<int>(ensemble.size());
    out.low_power = out.realizations < 100;
    out.spacing_window = spacing_window;

    out.counts.assign(windows.size(), std::vector<int>(ensemble.size(), 0));
    std::vector<double> pooled;
    double spacing_sum = 0.0;
    for (std::size_t r = 0; r < ensemble.size(); ++r) {
        const auto& pts = ensemble[r].points;
        for (std::size_t w = 0; w < windows.size(); ++w)
            out.counts[w][r] = count_in(pts, windows[w]);
        auto lo = std::lower_bound(pts.begin(), pts.end(), spacing_window.lo);
        auto hi = std::upper_bound(pts.begin(), pts.end(), spacing_window.hi);
        for (auto it = lo; it != hi && it + 1 != hi; ++it) {
            const double s = *(it + 1) - *it;
            pooled.push_back(s);
            spacing_sum += s;
        }
    }
    for (std::size_t w = 0; w < windows.size(); ++w) {
        PoissonWindowStat ws;
        ws.window = windows[w];
        ws.lambda = windows[w].width();
        double m = 0;
        for (int c : out.counts[w]) m += c;
        ws.mean_count = m / static_cast<double>(out.realizations);
        ws.tv = stats::tv_distance_vs_poisson(out.counts[w], ws.lambda);
        ws.chisq = stats::chisq_vs_poisson(out.counts[w], ws.lambda);
        out.window_stats.push_back(ws);
    }
    std::sort(pooled.begin(), pooled.end());
    out.n_spacings = pooled.size();
    if (!pooled.empty()) {
        out.spacing_mean = spacing_sum / static_cast<double>(pooled.size());
        out.ks = stats::ks_statistic_sorted(pooled,
                                            [](double s) { return 1.0 - std::exp(-s); });
        out.ks_p = stats::ks_p_value(out.ks, pooled.size());
    }
    return out;
}

IndependenceResult independence_test(std::span<const int> counts_e,
                                     std::span<const int> counts_e_prime,
                                     std::span<const double> probe_values) {
    if (counts_e.size() != counts_e_prime.size() || counts_e.empty())
        throw std::invalid_argument("independence_test: need paired nonempty counts");
    if (counts_e.size() < 300)
        throw std::invalid_argument("independence_test: needs at least 300 realizations");
    IndependenceResult out;
    out.realizations = static_cast<int>(counts_e.size());
    out.counts_e.assign(counts_e.begin(), counts_e.end());
    out.counts_e_prime.assign(counts_e_prime.begin(), counts_e_prime.end());
    out.correlation = stats::pearson(counts_e, counts_e_prime);
    out.chisq = stats::chisq_independence(counts_e, counts_e_prime);
    const double Rf = static_cast<double>(out.realizations);
    for (double t : probe_values)
        for (double tp : probe_values) {
            LaplaceProbe p;
            p.t = t;
            p.t_prime = tp;
            double joint = 0, me = 0, mep = 0;
            for (std::size_t r = 0; r < counts_e.size(); ++r) {
                joint += std::exp(-t * counts_e[r] - tp * counts_e_prime[r]);
                me += std::exp(-t * counts_e[r]);
                mep += std::exp(-tp * counts_e_prime[r]);
            }
            p.joint = joint / Rf;
            p.product = (me / Rf) * (mep / Rf);
            p.gap = p.joint - p.product;
            out.probes.push_back(p);
        }
    return out;
}

}  // namespace anderson
