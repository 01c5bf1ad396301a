#include "anderson/localization.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace anderson {

double periodic_distance(const LatticeCube& cube, std::span<const int> x,
                         std::span<const int> y) {
    const int s = cube.side();
    double acc = 0.0;
    for (int i = 0; i < cube.dim(); ++i) {
        const int diff = std::abs(x[i] - y[i]);
        const int wrapped = std::min(diff, s - diff);
        acc += static_cast<double>(wrapped) * wrapped;
    }
    return std::sqrt(acc);
}

namespace {

// argmax of |phi| with lexicographically smaller multi-index winning ties
std::vector<int> find_center(const LatticeCube& cube, std::span<const double> phi) {
    long long best = 0;
    double best_amp = std::fabs(phi[0]);
    std::vector<int> best_coords = cube.coords_of(0);
    std::vector<int> coords(cube.dim());
    for (long long i = 1; i < cube.n_sites(); ++i) {
        const double amp = std::fabs(phi[static_cast<std::size_t>(i)]);
        if (amp < best_amp) continue;
        cube.coords_of(i, coords);
        if (amp > best_amp ||
            std::lexicographical_compare(coords.begin(), coords.end(), best_coords.begin(),
                                         best_coords.end())) {
            best = i;
            best_amp = amp;
            best_coords = coords;
        }
    }
    (void)best;
    return best_coords;
}

}  // namespace

std::vector<LocalizationRecord> localization_centers(const SpectralSample& sample,
                                                     const LatticeCube& cube) {
    if (sample.eigenvectors.empty())
        throw std::invalid_argument("localization_centers: sample carries no eigenvectors");
    if (sample.n != cube.n_sites())
        throw std::invalid_argument("localization_centers: cube does not match sample");
    std::vector<LocalizationRecord> out;
    out.reserve(sample.n);
    std::vector<int> coords(cube.dim());
    for (int n = 0; n < sample.n; ++n) {
        auto phi = sample.eigenvector(n);
        LocalizationRecord rec;
        rec.n = n;
        rec.eigenvalue = sample.eigenvalues[n];
        rec.center = find_center(cube, phi);

        // OLS of log|phi| on distance from the center, sites above the floor
        double sr = 0, sy = 0, srr = 0, sry = 0;
        int m = 0;
        double center_log = -INFINITY;
        std::vector<std::pair<double, double>> pts;  // (r, log|phi|)
        for (long long i = 0; i < cube.n_sites(); ++i) {
            const double amp = std::fabs(phi[static_cast<std::size_t>(i)]);
            if (amp <= kAmplitudeFloor) continue;
            cube.coords_of(i, coords);
            const double r = periodic_distance(cube, coords, rec.center);
            const double y = std::log(amp);
            if (r == 0.0) center_log = std::max(center_log, y);
            pts.emplace_back(r, y);
            sr += r;
            sy += y;
            srr += r * r;
            sry += r * y;
            ++m;
        }
        rec.sites_fitted = m;
        const double det = m * srr - sr * sr;
        if (m >= 2 && det > 0.0) {
            const double slope = (m * sry - sr * sy) / det;
            const double intercept = (sy * srr - sr * sry) / det;
            rec.nu_hat = std::max(0.0, -slope);
            rec.q_hat = cube.half_side() > 1
                            ? intercept / std::log(static_cast<double>(cube.half_side()))
                            : intercept;
            for (const auto& [r, y] : pts)
                rec.max_violation = std::max(rec.max_violation, y - (intercept + slope * r));
        } else if (m >= 1 && std::isfinite(center_log)) {
            // everything but the center is below the floor: decay is
            // cutoff-limited, one lattice step down to the floor
            rec.nu_hat = center_log - std::log(kAmplitudeFloor);
            rec.q_hat = 0.0;
            rec.max_violation = 0.0;
        } else {
            rec.nu_hat = 0.0;
            rec.q_hat = 0.0;
            rec.max_violation = 0.0;
        }
        out.push_back(std::move(rec));
    }
    return out;
}

BoxMatchingRealization box_matching_realization(const DisorderSpec& spec, int d, int L_big,
                                                int ell, double eps, Interval window,
                                                int realization_index, int dense_limit) {
    spec.validate();
    if (ell < 1 || ell > L_big)
        throw std::invalid_argument("box_matching: requires 1 <= ell <= L");
    if (eps <= 0) throw std::invalid_argument("box_matching: eps must be positive");
    const int ell_outer = std::min(
        L_big, static_cast<int>(std::llround(static_cast<double>(ell) * (1.0 + eps))));

    BoxMatchingRealization out;
    out.realization_index = realization_index;
    out.ell = ell;
    out.ell_outer = ell_outer;

    LatticeCube big(d, L_big);
    EigensolveOptions opts;
    opts.dense_limit = dense_limit;
    opts.meta = {d, L_big, spec.base_seed, realization_index};
    const SpectralSample sample =
        eig_all(assemble_hamiltonian(big, sample_potential(big, spec, realization_index)), opts);

    LatticeCube small(d, ell_outer);
    EigensolveOptions small_opts;
    small_opts.dense_limit = dense_limit;
    small_opts.meta = {d, ell_outer, spec.base_seed, realization_index};
    const std::vector<double> small_evs = eigenvalues_only(
        assemble_hamiltonian(small, sample_potential(small, spec, realization_index)),
        small_opts);

    const auto records = localization_centers(sample, big);
    std::vector<double> nus;
    for (int n = 0; n < sample.n; ++n) {
        if (!window.contains(sample.eigenvalues[n])) continue;
        const auto& rec = records[n];
        bool inside = true;
        for (int c : rec.center)
            if (std::abs(c) > ell) inside = false;
        if (!inside) continue;
        BoxMatch match;
        match.e_big = sample.eigenvalues[n];
        match.center = rec.center;
        auto it = std::lower_bound(small_evs.begin(), small_evs.end(), match.e_big);
        double best = INFINITY;
        double best_val = 0.0;
        if (it != small_evs.end() && std::fabs(*it - match.e_big) < best) {
            best = std::fabs(*it - match.e_big);
            best_val = *it;
        }
        if (it != small_evs.begin() && std::fabs(*(it - 1) - match.e_big) < best) {
            best = std::fabs(*(it - 1) - match.e_big);
            best_val = *(it - 1);
        }
        match.e_small = best_val;
        match.distance = best;
        out.max_distance = std::max(out.max_distance, best);
        nus.push_back(rec.nu_hat);
        out.matches.push_back(std::move(match));
    }
    if (!nus.empty()) {
        std::sort(nus.begin(), nus.end());
        out.nu_hat_median = nus[nus.size() / 2];
        out.reference_scale = std::exp(-out.nu_hat_median * eps * ell / 4.0);
    }
    return out;
}

}  // namespace anderson
