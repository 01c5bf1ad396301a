#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "anderson/experiments.hpp"
#include "anderson/localization.hpp"
#include "anderson/parallel.hpp"
#include "anderson/perturbation.hpp"
#include "anderson/report.hpp"
#include "anderson/rng.hpp"

namespace anderson {

namespace {

struct Check {
    std::string name;
    std::function<std::string()> body;  // empty string = pass, else failure detail
};

std::string check_cubes() {
    if (LatticeCube(1, 1).n_sites() != 3) return "d=1 L=1 should have 3 sites";
    if (LatticeCube(2, 2).n_sites() != 25) return "d=2 L=2 should have 25 sites";
    try {
        LatticeCube(1, 0);
        return "L=0 must be rejected";
    } catch (const std::invalid_argument&) {
    }
    LatticeCube c(2, 3);
    std::vector<int> coords(2);
    for (long long i = 0; i < c.n_sites(); ++i) {
        c.coords_of(i, coords);
        if (c.flat_index(coords) != i) return "enumeration round-trip broken";
    }
    return {};
}

std::string check_disorder() {
    DisorderSpec spec{DisorderLaw::uniform, 0.0, 1.0, 42};
    LatticeCube cube(1, 200);
    const Potential p1 = sample_potential(cube, spec, 7);
    const Potential p2 = sample_potential(cube, spec, 7);
    if (p1.values != p2.values) return "identical (spec, realization) must repeat bytes";
    double mean = 0.0;
    const int draws = 100000;
    LatticeCube big(1, draws / 2);
    const Potential p3 = sample_potential(big, spec, 0);
    for (double v : p3.values) {
        if (v < 0.0 || v > 1.0) return "uniform draw left [0,1]";
        mean += v;
    }
    mean /= static_cast<double>(p3.values.size());
    if (std::fabs(mean - 0.5) > 0.01) return "uniform mean " + std::to_string(mean);
    return {};
}

std::string check_free_laplacian() {
    LatticeCube cube(1, 1);
    Potential zero{cube, {0.0, 0.0, 0.0}, 0, 0};
    const auto evs = eigenvalues_only(assemble_hamiltonian(cube, zero));
    const double want[] = {-1.0, -1.0, 2.0};
    for (int i = 0; i < 3; ++i)
        if (std::fabs(evs[i] - want[i]) > 1e-10) return "ring of 3 spectrum wrong";
    LatticeCube c5(1, 2);
    Potential zero5{c5, std::vector<double>(5, 0.0), 0, 0};
    auto evs5 = eigenvalues_only(assemble_hamiltonian(c5, zero5));
    std::vector<double> want5;
    for (int k = 0; k < 5; ++k) want5.push_back(2.0 * std::cos(2.0 * M_PI * k / 5.0));
    std::sort(want5.begin(), want5.end());
    for (int i = 0; i < 5; ++i)
        if (std::fabs(evs5[i] - want5[i]) > 1e-10) return "ring of 5 spectrum wrong";
    // symmetry and row sums of the dense materialization
    DisorderSpec spec;
    LatticeCube c2(2, 2);
    const auto H = assemble_hamiltonian(c2, sample_potential(c2, spec, 3));
    const auto dense = H.dense();
    const long long n = c2.n_sites();
    for (long long i = 0; i < n; ++i) {
        double hops = 0.0;
        for (long long j = 0; j < n; ++j) {
            if (dense[i * n + j] != dense[j * n + i]) return "dense H not symmetric";
            if (i != j) hops += dense[i * n + j];
        }
        if (hops != 2.0 * c2.dim()) return "row hop sum != 2d";
    }
    return {};
}

std::string check_dirichlet() {
    const auto s1 = dirichlet_spectrum(1);
    if (std::fabs(s1.eigenvalues[0]) > 1e-15) return "n=1 eigenvalue should be 0";
    const auto s2 = dirichlet_spectrum(2);
    if (std::fabs(s2.eigenvalues[0] + 1.0) > 1e-15 || std::fabs(s2.eigenvalues[1] - 1.0) > 1e-15)
        return "n=2 eigenvalues should be {-1, 1}";
    const auto s3 = dirichlet_spectrum(3);
    if (std::fabs(s3.eigenvalues[0] + std::sqrt(2.0)) > 1e-15 ||
        std::fabs(s3.eigenvalues[1]) > 1e-15 ||
        std::fabs(s3.eigenvalues[2] - std::sqrt(2.0)) > 1e-15)
        return "n=3 eigenvalues should be {-sqrt2, 0, sqrt2}";
    if (std::fabs(dirichlet_min_gap(2) - 2.0) > 1e-15) return "min gap n=2 should be 2";
    if (std::fabs(dirichlet_min_gap(3) - std::sqrt(2.0)) > 1e-15)
        return "min gap n=3 should be sqrt2";
    // Sturm counts on the n=3 chain
    const std::vector<double> diag(3, 0.0), off(2, 1.0);
    if (sturm_count(diag, off, 0.0) != 1) return "sturm at 0 should count 1";
    if (sturm_count(diag, off, 3.0) != 3) return "sturm at 3 should count 3";
    return {};
}

std::string check_rescale_identity() {
    rng::Xoshiro256ss gen(5);
    std::vector<double> evs(200);
    for (auto& v : evs) v = 4.0 * gen.uniform01();
    std::sort(evs.begin(), evs.end());
    const double E = 2.0, nu = 0.15;
    const long long n_sites = 1001;
    const auto pp = rescale_levels(evs, n_sites, E, nu);
    for (int t = 0; t < 1000; ++t) {
        double a = -5.0 + 10.0 * gen.uniform01();
        double b = -5.0 + 10.0 * gen.uniform01();
        if (a > b) std::swap(a, b);
        const Interval A{a, b};
        const double scale = static_cast<double>(n_sites) * nu;
        const Interval back{E + a / scale, E + b / scale};
        if (count_in(pp.points, A) != count_in(evs, back)) return "counting identity broken";
    }
    return {};
}

std::string check_wegner_minami_identities() {
    DisorderSpec spec{DisorderLaw::uniform, 0.0, 4.0, 11};
    const int d = 1, L = 6, R = 1000;
    const Interval sigma{HamiltonianMatrix::gershgorin_lo(spec, d),
                         HamiltonianMatrix::gershgorin_hi(spec, d)};
    const auto w_all = wegner_estimator(d, L, spec, sigma, 100, 1);
    const long long N = w_all.n_sites;
    for (int c : w_all.counts)
        if (c != N) return "J covering the spectrum must count every eigenvalue";
    if (w_all.se_count != 0.0) return "J covering the spectrum must have zero variance";
    const auto w_empty = wegner_estimator(d, L, spec, {9.5, 9.5}, 100, 1);
    if (w_empty.mean_count != 0.0) return "empty J must count zero";

    const Interval J{1.5, 2.5};
    const auto m = minami_estimator(d, L, spec, J, sigma, R, 1);
    const auto w = wegner_estimator(d, L, spec, J, R, 1);
    for (int r = 0; r < R; ++r) {
        const double lhs = static_cast<double>(m.counts_j[r]) * (m.counts_k[r] - 1.0);
        const double rhs = static_cast<double>(N - 1) * w.counts[r];
        if (lhs != rhs) return "Minami/Wegner consistency identity broken at r=" +
                               std::to_string(r);
    }
    return {};
}

std::string check_decorrelation_trivial() {
    DisorderSpec spec{DisorderLaw::uniform, 0.0, 4.0, 3};
    const auto same = decorrelation_estimator(1, 27, 0.7, 2.0, 2.0, spec, 400, 1);
    if (same.n_both != same.n_e) return "E = E' must give P_both = P_E";
    const auto off = decorrelation_estimator(1, 27, 0.7, 50.0, -50.0, spec, 400, 1);
    if (off.n_e != 0 || off.n_e_prime != 0) return "windows outside the spectrum must be empty";
    if (off.ratio_product) return "zero marginals must leave the product ratio undefined";
    return {};
}

std::string check_poisson_synthetic() {
    // exact Poisson(1) counts via inversion, R = 10^4: TV < 0.02
    rng::Xoshiro256ss gen(99);
    const int R = 10000;
    std::vector<int> counts(R);
    for (auto& c : counts) {
        const double u = gen.uniform01();
        double acc = 0.0;
        int k = 0;
        while (true) {
            acc += stats::poisson_pmf(k, 1.0);
            if (u <= acc || k > 60) break;
            ++k;
        }
        c = k;
    }
    const double tv = stats::tv_distance_vs_poisson(counts, 1.0);
    if (tv >= 0.02) return "synthetic Poisson TV " + std::to_string(tv);

    // additivity of disjoint window counts on one rescaled sample
    rng::Xoshiro256ss g2(123);
    std::vector<double> evs(300);
    for (auto& v : evs) v = 4.0 * g2.uniform01();
    std::sort(evs.begin(), evs.end());
    const auto pp = rescale_levels(evs, 501, 2.0, 0.2);
    const Interval U1{-1.0, 0.0}, U2{0.5, 1.5};
    int in_union = 0;
    for (double x : pp.points)
        if (U1.contains(x) || U2.contains(x)) ++in_union;
    if (count_in(pp.points, U1) + count_in(pp.points, U2) != in_union)
        return "disjoint window counts must add over the union";
    return {};
}

std::string check_independence_synthetic() {
    rng::Xoshiro256ss gen(7);
    const int R = 10000;
    auto draw_poisson = [&](double lambda) {
        const double u = gen.uniform01();
        double acc = 0.0;
        int k = 0;
        while (true) {
            acc += stats::poisson_pmf(k, lambda);
            if (u <= acc || k > 80) break;
            ++k;
        }
        return k;
    };
    std::vector<int> a(R), b(R);
    for (int r = 0; r < R; ++r) {
        a[r] = draw_poisson(2.0);
        b[r] = draw_poisson(2.0);
    }
    const auto ind = independence_test(a, b, std::vector<double>{0.0, 1.0});
    if (!ind.correlation) return "correlation unexpectedly undefined";
    if (std::fabs(*ind.correlation) >= 3.0 / std::sqrt(static_cast<double>(R)))
        return "independent streams correlate: " + std::to_string(*ind.correlation);
    for (const auto& p : ind.probes)
        if (p.t == 0.0 && p.t_prime == 0.0 && p.gap != 0.0)
            return "t = t' = 0 must give exactly zero Laplace gap";
    return {};
}

std::string check_perturbation_trivial() {
    // diagonal matrix: one-hot eigenvectors, zero Hessian, exact separation
    const int n = 4;
    std::vector<double> diag_mat(n * n, 0.0);
    const double vals[] = {3.0, 1.0, 2.0, 0.25};
    for (int i = 0; i < n; ++i) diag_mat[i * n + i] = vals[i];
    const auto s = eig_all_dense(diag_mat, n);
    for (int j = 0; j < n; ++j) {
        const auto g = eigen_gradient(s, j);
        int hot = 0;
        for (double v : g.gradient)
            if (std::fabs(v - 1.0) < 1e-12) ++hot;
        if (hot != 1) return "diagonal matrix gradient must be one-hot";
    }
    const auto hess = eigen_hessian(s, 0);
    for (double v : hess)
        if (v != 0.0) return "diagonal matrix Hessian must vanish";
    const std::vector<double> pot(vals, vals + n);
    const auto chk = gradient_separation_check(s, 3, 0, pot, 0, 3.0);
    if (std::fabs(chk.omega_dot_grad - chk.gap) > 1e-12)
        return "diagonal case must saturate with 2d = 0";

    const auto g1 = eigen_gradient(s, 0);
    const auto g2 = eigen_gradient(s, 1);
    if (jacobian_2x2(g1, g1, 0, 1) != 0.0) return "identical gradients must give zero Jacobian";

    const std::vector<double> u{1.0, 0.0}, v{0.0, 1.0};
    const auto mb = minor_lower_bound(u, v);
    if (std::fabs(mb.max_minor_sq - 1.0) > 1e-15 || std::fabs(mb.rhs - 1.0 / 32.0) > 1e-15)
        return "minor bound on ((1,0),(0,1)) should be (1, 1/32)";
    const auto mb2 = minor_lower_bound(u, u);
    if (mb2.max_minor_sq != 0.0 || mb2.rhs != 0.0) return "u = v must give 0 >= 0";
    return {};
}

std::string check_localization_trivial() {
    LatticeCube cube(1, 2);
    SpectralSample s;
    s.n = 5;
    s.eigenvalues = {0, 1, 2, 3, 4};
    s.eigenvectors.assign(25, 0.0);
    for (int j = 0; j < 5; ++j) s.eigenvectors[j * 5 + j] = 1.0;  // delta at site j
    const auto recs = localization_centers(s, cube);
    if (recs[2].center != std::vector<int>{0}) return "one-hot center should be its site";
    if (recs[2].nu_hat < 20.0) return "one-hot decay should be cutoff-limited steep";
    // two equal maxima: lexicographically smaller coordinate wins
    SpectralSample t = s;
    t.eigenvectors.assign(25, 0.0);
    const double r = 1.0 / std::sqrt(2.0);
    t.eigenvectors[0 * 5 + 1] = r;
    t.eigenvectors[0 * 5 + 3] = r;
    const auto rec = localization_centers(t, cube)[0];
    if (rec.center != std::vector<int>{-1}) return "tie-break must pick the smaller index";
    return {};
}

std::string check_box_matching_trivial() {
    DisorderSpec spec{DisorderLaw::uniform, 0.0, 4.0, 17};
    // eps blowing the small box up to the big box: identical operators
    const auto bm = box_matching_realization(spec, 1, 20, 10, 1.0, {-10.0, 10.0}, 0);
    if (bm.ell_outer != 20) return "outer box should saturate at L";
    for (const auto& m : bm.matches)
        if (m.distance != 0.0) return "identical boxes must match exactly";
    const auto none = box_matching_realization(spec, 1, 20, 10, 0.3, {99.0, 100.0}, 0);
    if (!none.matches.empty()) return "window outside the spectrum must match nothing";
    return {};
}

std::string determinism_pair(const std::string& text) {
    ExperimentConfig cfg = parse_config(text);
    cfg.workers = 1;
    const RunResult r1 = run_experiment(cfg);
    cfg.workers = 8;
    const RunResult r8 = run_experiment(cfg);
    if (report::dump_summary(r1.summary) != report::dump_summary(r8.summary))
        return "summary.json differs between workers 1 and 8";
    if (r1.samples_csv != r8.samples_csv)
        return "samples.csv differs between workers 1 and 8";
    return {};
}

std::string check_determinism() {
    const char* configs[] = {
        R"({"experiment":"dos","L":10,"realizations":10,"h":0.2,"grid_points":41,"seed":5})",
        R"({"experiment":"wegner","L":10,"realizations":100,"J":[1.9,2.1],"seed":5})",
        R"({"experiment":"minami","L":6,"realizations":1000,"J":[1.5,2.5],"K":[1.0,3.0],"seed":5})",
        R"({"experiment":"decorrelation","L":27,"realizations":200,"E":0.5,"E_prime":3.5,"seed":5})",
        R"({"experiment":"poisson","L":30,"realizations":120,"E":2.0,"dos_L":40,"dos_R":20,"seed":5})",
        R"({"experiment":"independence","L":20,"realizations":300,"E":0.5,"E_prime":3.5,"dos_L":40,"dos_R":20,"seed":5})",
        R"({"experiment":"localization","L":20,"realizations":2,"seed":5})",
        R"({"experiment":"box-matching","L":30,"ell":10,"realizations":2,"window":[0.0,1.0],"seed":5})",
        R"({"experiment":"perturbation-checks","L":10,"realizations":3,"minor_trials":2000,"pairing_instances":4,"seed":5})",
        R"({"experiment":"dirichlet-oracle","n_max":30,"gap_n_max":100})",
    };
    for (const char* text : configs) {
        const std::string err = determinism_pair(text);
        if (!err.empty()) return std::string(text) + ": " + err;
    }
    return {};
}

std::string check_config_strictness() {
    try {
        parse_config(R"({"experiment":"wegner","L":10,"realizations":100,"J":[0,1],"typo_key":1})");
        return "unknown key must be rejected";
    } catch (const ConfigError& e) {
        if (std::string(e.what()).find("typo_key") == std::string::npos)
            return "error must name the unknown key";
    }
    try {
        parse_config(
            R"({"experiment":"decorrelation","L":100,"realizations":10,"E":0.5,"E_prime":3.5,"alpha":1.5})");
        return "alpha outside (0,1) must be rejected";
    } catch (const ConfigError&) {
    }
    parse_config(R"({"experiment":"dirichlet-oracle","n_max":200})");
    return {};
}

}  // namespace

int run_selftest(int workers) {
    (void)workers;
    const Check checks[] = {
        {"lattice cube counts and enumeration", check_cubes},
        {"disorder determinism, support, mean", check_disorder},
        {"free Laplacian spectra and symmetry", check_free_laplacian},
        {"Dirichlet closed forms and Sturm counts", check_dirichlet},
        {"rescaled-level counting identity", check_rescale_identity},
        {"Wegner/Minami trivial identities", check_wegner_minami_identities},
        {"decorrelation trivial identities", check_decorrelation_trivial},
        {"Poisson synthetic self-test", check_poisson_synthetic},
        {"independence synthetic self-test", check_independence_synthetic},
        {"perturbation trivial identities", check_perturbation_trivial},
        {"localization centers and tie-break", check_localization_trivial},
        {"box matching trivial identities", check_box_matching_trivial},
        {"strict config parsing", check_config_strictness},
        {"worker-count determinism (1 vs 8)", check_determinism},
    };
    int failures = 0;
    for (const auto& c : checks) {
        std::string err;
        try {
            err = c.body();
        } catch (const std::exception& e) {
            err = std::string("exception: ") + e.what();
        }
        if (err.empty()) {
            std::printf("PASS  %s\n", c.name.c_str());
        } else {
            ++failures;
            std::printf("FAIL  %s: %s\n", c.name.c_str(), err.c_str());
        }
    }
    std::printf("%s (%d check%s failed)\n", failures == 0 ? "selftest passed" : "selftest FAILED",
                failures, failures == 1 ? "" : "s");
    return failures;
}

}  // namespace anderson
