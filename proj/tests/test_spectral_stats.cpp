#include <doctest.h>

#include <cmath>

#include "anderson/rng.hpp"
#include "anderson/spectral_stats.hpp"

using namespace anderson;

namespace {
const DisorderSpec kSpec{DisorderLaw::uniform, 0.0, 4.0, 7};
}

TEST_CASE("dos: mass, monotone ids, exact right limit") {
    const int d = 1, L = 40, R = 20;
    std::vector<double> grid;
    const double lo = HamiltonianMatrix::gershgorin_lo(kSpec, d);
    const double hi = HamiltonianMatrix::gershgorin_hi(kSpec, d);
    for (int g = 0; g <= 80; ++g) grid.push_back(lo + (hi - lo) * g / 80.0);
    const auto dos = estimate_dos(d, L, kSpec, R, grid, 0.1, 1);
    double mass = 0.0;
    for (std::size_t g = 0; g + 1 < grid.size(); ++g)
        mass += 0.5 * (dos.nu_hat[g] + dos.nu_hat[g + 1]) * (grid[g + 1] - grid[g]);
    CHECK(mass == doctest::Approx(1.0).epsilon(0.02));
    CHECK(std::is_sorted(dos.n_hat.begin(), dos.n_hat.end()));
    CHECK(dos.n_hat.back() == 1.0);  // every eigenvalue lies below b + 2d
    CHECK(dos.n_hat.front() <= 1e-12);
    for (double v : dos.nu_hat) CHECK(v >= 0.0);
    CHECK(!dos.bandwidth_warning);
    const auto narrow = estimate_dos(d, L, kSpec, 10, grid, 1e-4, 1);
    CHECK(narrow.bandwidth_warning);
    CHECK_THROWS_AS(estimate_dos(d, L, kSpec, 5, grid, 0.1, 1), std::invalid_argument);
}

TEST_CASE("rescale_levels: fixed point, linearity, rejection") {
    std::vector<double> evs = {1.0, 2.0, 3.0};
    const auto pp = rescale_levels(evs, 101, 2.0, 0.25);
    CHECK(pp.points[1] == 0.0);
    const auto pp2 = rescale_levels(evs, 101, 2.0, 0.5);
    for (int i = 0; i < 3; ++i) CHECK(pp2.points[i] == doctest::Approx(2.0 * pp.points[i]));
    CHECK_THROWS_AS(rescale_levels(evs, 101, 2.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(rescale_levels(evs, 101, 2.0, -1.0), std::invalid_argument);
}

TEST_CASE("counting identity holds exactly for random intervals") {
    rng::Xoshiro256ss gen(2);
    std::vector<double> evs(500);
    for (auto& v : evs) v = 8.0 * gen.uniform01() - 2.0;
    std::sort(evs.begin(), evs.end());
    const double E = 2.0, nu = 0.17;
    const long long n_sites = 2001;
    const auto pp = rescale_levels(evs, n_sites, E, nu);
    for (int t = 0; t < 1000; ++t) {
        double a = -8.0 + 16.0 * gen.uniform01();
        double b = -8.0 + 16.0 * gen.uniform01();
        if (a > b) std::swap(a, b);
        const double s = static_cast<double>(n_sites) * nu;
        CHECK(count_in(pp.points, {a, b}) == count_in(evs, {E + a / s, E + b / s}));
    }
}

TEST_CASE("wegner: full-spectrum and empty-interval examples") {
    const Interval sigma{HamiltonianMatrix::gershgorin_lo(kSpec, 1),
                         HamiltonianMatrix::gershgorin_hi(kSpec, 1)};
    const auto all = wegner_estimator(1, 8, kSpec, sigma, 100, 1);
    CHECK(all.mean_count == static_cast<double>(all.n_sites));
    CHECK(all.se_count == 0.0);
    const auto none = wegner_estimator(1, 8, kSpec, {10.0, 11.0}, 100, 1);
    CHECK(none.mean_count == 0.0);
    CHECK(none.ratio == 0.0);
}

TEST_CASE("minami: subset precondition and consistency identity") {
    CHECK_THROWS_AS(minami_estimator(1, 8, kSpec, {0.0, 3.0}, {1.0, 2.0}, 1000, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(minami_estimator(1, 8, kSpec, {1.0, 2.0}, {0.0, 3.0}, 10, 1),
                    std::invalid_argument);
    const Interval sigma{HamiltonianMatrix::gershgorin_lo(kSpec, 1),
                         HamiltonianMatrix::gershgorin_hi(kSpec, 1)};
    const Interval J{1.8, 2.2};
    const auto m = minami_estimator(1, 8, kSpec, J, sigma, 1000, 1);
    const auto w = wegner_estimator(1, 8, kSpec, J, 1000, 1);
    const long long N = m.n_sites;
    for (int r = 0; r < 1000; ++r) {
        CHECK(m.counts_k[r] == N);
        CHECK(static_cast<double>(m.counts_j[r]) * (m.counts_k[r] - 1.0) ==
              static_cast<double>(N - 1) * w.counts[r]);
    }
    // empty J
    const auto empty = minami_estimator(1, 8, kSpec, {5.0, 5.0}, {4.0, 6.0}, 1000, 1);
    CHECK(empty.mean_pair == 0.0);
}

TEST_CASE("decorrelation: identities and validation") {
    CHECK_THROWS_AS(decorrelation_estimator(1, 100, 1.5, 0.5, 3.5, kSpec, 10, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(decorrelation_estimator(1, 4, 0.1, 0.5, 3.5, kSpec, 10, 1),
                    std::invalid_argument);  // round(L^alpha) < 3
    const auto same = decorrelation_estimator(1, 27, 0.7, 2.0, 2.0, kSpec, 300, 1);
    CHECK(same.n_both == same.n_e);
    CHECK(same.ell == 10);
    const auto far = decorrelation_estimator(1, 27, 0.7, 30.0, -30.0, kSpec, 300, 1);
    CHECK(far.p_e == 0.0);
    CHECK(far.p_both == 0.0);
    CHECK(!far.ratio_product.has_value());
    CHECK(far.lemma_two_energy_far);
    const auto near = decorrelation_estimator(1, 27, 0.7, 2.0, 2.5, kSpec, 300, 1);
    CHECK(!near.lemma_two_energy_far);
}

TEST_CASE("poisson_gof: validation and flags") {
    std::vector<PointProcessSample> ensemble;
    rng::Xoshiro256ss gen(5);
    for (int r = 0; r < 50; ++r) {
        PointProcessSample pp;
        pp.reference_energy = 0.0;
        pp.nu_at_e = 1.0;
        for (int i = 0; i < 30; ++i) pp.points.push_back(-8.0 + 16.0 * gen.uniform01());
        std::sort(pp.points.begin(), pp.points.end());
        ensemble.push_back(std::move(pp));
    }
    CHECK_THROWS_AS(poisson_gof(ensemble, {{-1.0, 1.0}, {0.5, 2.0}}, {-5.0, 5.0}),
                    std::invalid_argument);  // overlapping windows
    const auto gof = poisson_gof(ensemble, {{-1.0, 1.0}, {2.0, 3.0}}, {-5.0, 5.0});
    CHECK(gof.low_power);  // fewer than 100 realizations
    CHECK(gof.window_stats.size() == 2);
    CHECK(gof.window_stats[0].lambda == doctest::Approx(2.0));
    CHECK(gof.n_spacings > 0);
    // mismatched (E, nu) rejected
    auto bad = ensemble;
    bad[3].nu_at_e = 2.0;
    CHECK_THROWS_AS(poisson_gof(bad, {{-1.0, 1.0}}, {-5.0, 5.0}), std::invalid_argument);
}

TEST_CASE("independence_test: zero probe exact, size precondition") {
    std::vector<int> a(300), b(300);
    rng::Xoshiro256ss gen(9);
    for (int i = 0; i < 300; ++i) {
        a[i] = static_cast<int>(gen.next() % 5);
        b[i] = static_cast<int>(gen.next() % 5);
    }
    const std::vector<double> probes = {0.0, 1.0};
    const auto ind = independence_test(a, b, probes);
    for (const auto& p : ind.probes)
        if (p.t == 0.0 && p.t_prime == 0.0) CHECK(p.gap == 0.0);
    std::vector<int> small(10, 1);
    CHECK_THROWS_AS(independence_test(small, small, probes), std::invalid_argument);
    // degenerate margin flagged
    std::vector<int> constant(300, 2);
    const auto deg = independence_test(a, constant, probes);
    CHECK(!deg.correlation.has_value());
}

TEST_CASE("estimate_nu_multi matches estimate_nu_at") {
    const double energies[] = {0.5, 2.0};
    const auto nus = estimate_nu_multi(1, 20, kSpec, 10, energies, 0.2, 1);
    CHECK(nus[0] == estimate_nu_at(1, 20, kSpec, 10, 0.5, 0.2, 1));
    CHECK(nus[1] == estimate_nu_at(1, 20, kSpec, 10, 2.0, 0.2, 1));
    CHECK(nus[1] > 0.0);
}
