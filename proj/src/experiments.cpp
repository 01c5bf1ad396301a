#include "anderson/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "anderson/localization.hpp"
#include "anderson/parallel.hpp"
#include "anderson/perturbation.hpp"
#include "anderson/report.hpp"
#include "anderson/rng.hpp"

namespace anderson {

namespace {

using nlohmann::json;
using report::format_double;

json interval_json(const Interval& v) { return json::array({v.lo, v.hi}); }

std::string join_coords(std::span<const int> coords) {
    std::string s;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (i) s += ';';
        s += std::to_string(coords[i]);
    }
    return s;
}

json base_summary(const ExperimentConfig& c) {
    json s;
    s["config"] = config_echo(c);
    return s;
}

// ---------------------------------------------------------------- dos ----

RunResult run_dos(const ExperimentConfig& c, int workers) {
    std::vector<double> grid(c.grid_points);
    const double lo = HamiltonianMatrix::gershgorin_lo(c.disorder, c.d);
    const double hi = HamiltonianMatrix::gershgorin_hi(c.disorder, c.d);
    for (int g = 0; g < c.grid_points; ++g)
        grid[g] = lo + (hi - lo) * g / (c.grid_points - 1);

    std::vector<DosRealizationRow> rows;
    const DosEstimate dos =
        estimate_dos(c.d, c.L, c.disorder, c.realizations, grid, c.h, workers, &rows);

    double mass = 0.0;
    for (std::size_t g = 0; g + 1 < grid.size(); ++g)
        mass += 0.5 * (dos.nu_hat[g] + dos.nu_hat[g + 1]) * (grid[g + 1] - grid[g]);
    bool monotone = true;
    for (std::size_t g = 0; g + 1 < dos.n_hat.size(); ++g)
        if (dos.n_hat[g + 1] < dos.n_hat[g]) monotone = false;

    json s = base_summary(c);
    s["results"] = {{"grid", dos.grid},
                    {"nu_hat", dos.nu_hat},
                    {"n_hat", dos.n_hat},
                    {"bandwidth", dos.bandwidth},
                    {"realizations_used", dos.realizations_used},
                    {"trapezoid_mass", mass},
                    {"n_hat_final", dos.n_hat.back()}};
    s["flags"] = {{"bandwidth_warning", dos.bandwidth_warning},
                  {"mass_within_0.02", std::fabs(mass - 1.0) <= 0.02},
                  {"n_hat_monotone", monotone}};

    report::CsvBuilder csv({"realization_index", "ev_min", "ev_max"});
    for (const auto& r : rows)
        csv.add_row({std::to_string(r.realization), format_double(r.ev_min),
                     format_double(r.ev_max)});
    return {std::move(s), csv.str()};
}

// ------------------------------------------------------------- wegner ----

RunResult run_wegner(const ExperimentConfig& c, int workers) {
    const WegnerResult w =
        wegner_estimator(c.d, c.L, c.disorder, c.J, c.realizations, workers);
    json s = base_summary(c);
    s["results"] = {{"n_sites", w.n_sites},
                    {"mean_count", w.mean_count},
                    {"se_count", w.se_count},
                    {"ratio_to_J_Lambda", w.ratio}};
    s["flags"] = json::object();
    report::CsvBuilder csv({"realization_index", "count_J"});
    for (int r = 0; r < w.realizations; ++r)
        csv.add_row({std::to_string(r), std::to_string(w.counts[r])});
    return {std::move(s), csv.str()};
}

// ------------------------------------------------------------- minami ----

RunResult run_minami(const ExperimentConfig& c, int workers) {
    const MinamiResult m =
        minami_estimator(c.d, c.L, c.disorder, c.J, c.K, c.realizations, workers);
    json s = base_summary(c);
    s["results"] = {{"n_sites", m.n_sites},
                    {"mean_pair_statistic", m.mean_pair},
                    {"se_pair_statistic", m.se_pair},
                    {"ratio_to_J_K_Lambda2", m.ratio}};
    s["flags"] = json::object();
    report::CsvBuilder csv({"realization_index", "count_J", "count_K", "pair_statistic"});
    for (int r = 0; r < m.realizations; ++r)
        csv.add_row({std::to_string(r), std::to_string(m.counts_j[r]),
                     std::to_string(m.counts_k[r]),
                     format_double(static_cast<double>(m.counts_j[r]) * (m.counts_k[r] - 1.0))});
    return {std::move(s), csv.str()};
}

// ------------------------------------------------------ decorrelation ----

RunResult run_decorrelation(const ExperimentConfig& c, int workers) {
    const DecorrelationResult dres = decorrelation_estimator(
        c.d, c.L, c.alpha, c.E, c.E_prime, c.disorder, c.realizations, workers);
    json s = base_summary(c);
    json res = {{"ell", dres.ell},
                {"window_half_width", std::pow(static_cast<double>(c.L), -c.d)},
                {"p_E", dres.p_e},
                {"se_E", dres.se_e},
                {"p_E_prime", dres.p_e_prime},
                {"se_E_prime", dres.se_e_prime},
                {"p_both", dres.p_both},
                {"se_both", dres.se_both},
                {"ratio_2d", dres.ratio_2d},
                {"ratio_d", dres.ratio_d},
                {"se_ratio_d", dres.se_ratio_d}};
    if (dres.ratio_product)
        res["ratio_product"] = *dres.ratio_product;
    else
        res["ratio_product"] = nullptr;
    s["results"] = res;
    s["flags"] = {{"ratio_product_undefined", !dres.ratio_product.has_value()},
                  {"dimension_one", c.d == 1},
                  {"two_energy_separation_hypothesis", dres.lemma_two_energy_far}};
    report::CsvBuilder csv({"realization_index", "hit_E", "hit_E_prime"});
    for (int r = 0; r < dres.realizations; ++r)
        csv.add_row({std::to_string(r), std::to_string(int(dres.hit_e[r])),
                     std::to_string(int(dres.hit_e_prime[r]))});
    return {std::move(s), csv.str()};
}

// ------------------------------------------------------------ poisson ----

std::vector<PointProcessSample> rescaled_ensemble(const ExperimentConfig& c, int workers,
                                                  double E, double nu) {
    std::vector<PointProcessSample> ensemble(c.realizations);
    LatticeCube cube(c.d, c.L);
    par::for_each_index(c.realizations, workers, [&](int r) {
        const Potential pot = sample_potential(cube, c.disorder, r);
        EigensolveOptions opts;
        opts.meta = {c.d, c.L, c.disorder.base_seed, r};
        const auto evs = eigenvalues_only(assemble_hamiltonian(cube, pot), opts);
        ensemble[r] = rescale_levels(evs, cube.n_sites(), E, nu);
    });
    return ensemble;
}

double gated_nu(const ExperimentConfig& c, int workers, double E) {
    DisorderSpec dos_spec = c.disorder;
    dos_spec.base_seed = c.dos_seed;
    const double nu = estimate_nu_at(c.d, c.dos_L, dos_spec, c.dos_R, E, c.h, workers);
    if (!(nu >= c.nu_min))
        throw std::runtime_error(
            "refusing to run at E = " + std::to_string(E) + ": estimated nu(E) = " +
            std::to_string(nu) + " is below nu_min = " + std::to_string(c.nu_min) +
            "; local level statistics require nu(E) > 0");
    return nu;
}

RunResult run_poisson(const ExperimentConfig& c, int workers) {
    const double nu = gated_nu(c, workers, c.E);
    const auto ensemble = rescaled_ensemble(c, workers, c.E, nu);
    const PoissonGofResult gof = poisson_gof(ensemble, c.windows, c.spacing_window);

    json s = base_summary(c);
    json wstats = json::array();
    for (const auto& w : gof.window_stats)
        wstats.push_back({{"window", interval_json(w.window)},
                          {"lambda", w.lambda},
                          {"mean_count", w.mean_count},
                          {"tv_distance", w.tv},
                          {"chisq", {{"statistic", w.chisq.statistic},
                                     {"dof", w.chisq.dof},
                                     {"p_value", w.chisq.p_value}}}});
    s["results"] = {{"nu_hat_at_E", nu},
                    {"windows", wstats},
                    {"spacings", {{"n", gof.n_spacings},
                                  {"mean", gof.spacing_mean},
                                  {"ks_distance", gof.ks},
                                  {"ks_p_value", gof.ks_p}}}};
    s["flags"] = {{"low_power", gof.low_power}};

    std::vector<std::string> header = {"realization_index"};
    for (std::size_t w = 0; w < c.windows.size(); ++w)
        header.push_back("count_window_" + std::to_string(w));
    header.push_back("points_in_spacing_window");
    report::CsvBuilder csv(header);
    for (int r = 0; r < gof.realizations; ++r) {
        std::vector<std::string> row = {std::to_string(r)};
        for (std::size_t w = 0; w < c.windows.size(); ++w)
            row.push_back(std::to_string(gof.counts[w][r]));
        row.push_back(std::to_string(count_in(ensemble[r].points, c.spacing_window)));
        csv.add_row(std::move(row));
    }
    return {std::move(s), csv.str()};
}

// ------------------------------------------------------- independence ----

RunResult run_independence(const ExperimentConfig& c, int workers) {
    DisorderSpec dos_spec = c.disorder;
    dos_spec.base_seed = c.dos_seed;
    const double energies[] = {c.E, c.E_prime};
    const auto nus = estimate_nu_multi(c.d, c.dos_L, dos_spec, c.dos_R, energies, c.h, workers);
    for (int i = 0; i < 2; ++i)
        if (!(nus[i] >= c.nu_min))
            throw std::runtime_error("refusing to run: estimated nu(" +
                                     std::to_string(energies[i]) + ") = " +
                                     std::to_string(nus[i]) + " is below nu_min = " +
                                     std::to_string(c.nu_min) +
                                     "; local level statistics require nu(E) > 0");

    std::vector<int> counts_e(c.realizations, 0), counts_ep(c.realizations, 0);
    LatticeCube cube(c.d, c.L);
    par::for_each_index(c.realizations, workers, [&](int r) {
        const Potential pot = sample_potential(cube, c.disorder, r);
        EigensolveOptions opts;
        opts.meta = {c.d, c.L, c.disorder.base_seed, r};
        const auto evs = eigenvalues_only(assemble_hamiltonian(cube, pot), opts);
        const auto pp_e = rescale_levels(evs, cube.n_sites(), c.E, nus[0]);
        const auto pp_ep = rescale_levels(evs, cube.n_sites(), c.E_prime, nus[1]);
        counts_e[r] = count_in(pp_e.points, c.window_u);
        counts_ep[r] = count_in(pp_ep.points, c.window_u_prime);
    });
    const IndependenceResult ind = independence_test(counts_e, counts_ep, c.probes);

    json s = base_summary(c);
    json probes = json::array();
    double max_gap = 0.0;
    for (const auto& p : ind.probes) {
        probes.push_back({{"t", p.t},
                          {"t_prime", p.t_prime},
                          {"joint", p.joint},
                          {"product", p.product},
                          {"gap", p.gap}});
        max_gap = std::max(max_gap, std::fabs(p.gap));
    }
    json res = {{"nu_hat_at_E", nus[0]},
                {"nu_hat_at_E_prime", nus[1]},
                {"chisq_independence", {{"statistic", ind.chisq.statistic},
                                        {"dof", ind.chisq.dof},
                                        {"p_value", ind.chisq.p_value}}},
                {"laplace_probes", probes},
                {"max_abs_laplace_gap", max_gap}};
    if (ind.correlation)
        res["pearson_correlation"] = *ind.correlation;
    else
        res["pearson_correlation"] = nullptr;
    s["results"] = res;
    s["flags"] = {{"correlation_undefined", !ind.correlation.has_value()},
                  {"low_power", c.realizations < 300}};

    report::CsvBuilder csv({"realization_index", "count_E", "count_E_prime"});
    for (int r = 0; r < c.realizations; ++r)
        csv.add_row({std::to_string(r), std::to_string(counts_e[r]),
                     std::to_string(counts_ep[r])});
    return {std::move(s), csv.str()};
}

// ------------------------------------------------------- localization ----

RunResult run_localization(const ExperimentConfig& c, int workers) {
    struct Row {
        int realization;
        LocalizationRecord rec;
    };
    std::vector<std::vector<Row>> per_real(c.realizations);
    LatticeCube cube(c.d, c.L);
    par::for_each_index(c.realizations, workers, [&](int r) {
        const Potential pot = sample_potential(cube, c.disorder, r);
        EigensolveOptions opts;
        opts.meta = {c.d, c.L, c.disorder.base_seed, r};
        const SpectralSample sample = eig_all(assemble_hamiltonian(cube, pot), opts);
        auto records = localization_centers(sample, cube);
        for (auto& rec : records)
            if (c.window.contains(rec.eigenvalue)) per_real[r].push_back({r, std::move(rec)});
    });

    std::vector<double> nus, qs;
    double max_violation = 0.0;
    report::CsvBuilder csv({"realization_index", "n", "eigenvalue", "center", "nu_hat",
                            "q_hat", "max_violation", "sites_fitted"});
    for (const auto& rows : per_real)
        for (const auto& row : rows) {
            nus.push_back(row.rec.nu_hat);
            qs.push_back(row.rec.q_hat);
            max_violation = std::max(max_violation, row.rec.max_violation);
            csv.add_row({std::to_string(row.realization), std::to_string(row.rec.n),
                         format_double(row.rec.eigenvalue), join_coords(row.rec.center),
                         format_double(row.rec.nu_hat), format_double(row.rec.q_hat),
                         format_double(row.rec.max_violation),
                         std::to_string(row.rec.sites_fitted)});
        }
    auto median = [](std::vector<double> v) {
        if (v.empty()) return 0.0;
        std::sort(v.begin(), v.end());
        return v[v.size() / 2];
    };
    json s = base_summary(c);
    s["results"] = {{"records_in_window", nus.size()},
                    {"median_nu_hat", median(nus)},
                    {"median_q_hat", median(qs)},
                    {"max_violation", max_violation},
                    {"amplitude_floor", kAmplitudeFloor}};
    s["flags"] = {{"empty_window", nus.empty()}};
    return {std::move(s), csv.str()};
}

// ------------------------------------------------------- box-matching ----

RunResult run_box_matching(const ExperimentConfig& c, int workers) {
    std::vector<BoxMatchingRealization> reals(c.realizations);
    par::for_each_index(c.realizations, workers, [&](int r) {
        reals[r] = box_matching_realization(c.disorder, c.d, c.L, c.ell, c.epsilon, c.window, r);
    });
    double max_distance = 0.0;
    std::size_t n_matches = 0;
    std::vector<double> nus, scales;
    report::CsvBuilder csv(
        {"realization_index", "e_big", "center", "e_small", "distance"});
    for (const auto& br : reals) {
        max_distance = std::max(max_distance, br.max_distance);
        n_matches += br.matches.size();
        if (!br.matches.empty()) {
            nus.push_back(br.nu_hat_median);
            scales.push_back(br.reference_scale);
        }
        for (const auto& m : br.matches)
            csv.add_row({std::to_string(br.realization_index), format_double(m.e_big),
                         join_coords(m.center), format_double(m.e_small),
                         format_double(m.distance)});
    }
    auto median = [](std::vector<double> v) {
        if (v.empty()) return 0.0;
        std::sort(v.begin(), v.end());
        return v[v.size() / 2];
    };
    json s = base_summary(c);
    s["results"] = {{"ell", c.ell},
                    {"ell_outer", reals.empty() ? 0 : reals.front().ell_outer},
                    {"n_matches", n_matches},
                    {"max_distance", max_distance},
                    {"median_nu_hat", median(nus)},
                    {"median_reference_scale", median(scales)}};
    s["flags"] = {{"empty_matching", n_matches == 0}};
    return {std::move(s), csv.str()};
}

// ----------------------------------------------------- dirichlet oracle ----

RunResult run_dirichlet_oracle(const ExperimentConfig& c, int workers) {
    struct Row {
        double eval_dev = 0.0;
        double evec_dev = 0.0;
    };
    const int n_cases = c.n_max - 1;  // n = 2 .. n_max
    std::vector<Row> rows(n_cases);
    par::for_each_index(n_cases, workers, [&](int idx) {
        const int n = idx + 2;
        EigensolveOptions opts;
        opts.meta = {1, n, 0, idx};
        const SpectralSample got = eig_all_dense(dirichlet_matrix(n), n, opts);
        const DirichletSpectrum want = dirichlet_spectrum(n);
        Row row;
        for (int j = 0; j < n; ++j) {
            row.eval_dev =
                std::max(row.eval_dev, std::fabs(got.eigenvalues[j] - want.eigenvalues[j]));
            auto gv = got.eigenvector(j);
            auto wv = want.eigenvector(j);
            double dev_plus = 0.0, dev_minus = 0.0;
            for (int i = 0; i < n; ++i) {
                dev_plus = std::max(dev_plus, std::fabs(gv[i] - wv[i]));
                dev_minus = std::max(dev_minus, std::fabs(gv[i] + wv[i]));
            }
            row.evec_dev = std::max(row.evec_dev, std::min(dev_plus, dev_minus));
        }
        rows[idx] = row;
    });

    double max_eval_dev = 0.0, max_evec_dev = 0.0;
    report::CsvBuilder csv({"n", "max_eigenvalue_deviation", "max_eigenvector_deviation"});
    for (int idx = 0; idx < n_cases; ++idx) {
        max_eval_dev = std::max(max_eval_dev, rows[idx].eval_dev);
        max_evec_dev = std::max(max_evec_dev, rows[idx].evec_dev);
        csv.add_row({std::to_string(idx + 2), format_double(rows[idx].eval_dev),
                     format_double(rows[idx].evec_dev)});
    }

    double min_n2_gap = INFINITY;
    int argmin_n = 2;
    for (int n = 2; n <= c.gap_n_max; ++n) {
        const double v = static_cast<double>(n) * n * dirichlet_min_gap(n);
        if (v < min_n2_gap) {
            min_n2_gap = v;
            argmin_n = n;
        }
    }

    json s = base_summary(c);
    s["results"] = {{"max_eigenvalue_deviation", max_eval_dev},
                    {"max_eigenvector_deviation", max_evec_dev},
                    {"min_n2_gap", min_n2_gap},
                    {"min_n2_gap_at_n", argmin_n}};
    s["flags"] = {{"eigenvalues_within_1e-10", max_eval_dev <= 1e-10},
                  {"eigenvectors_within_1e-8", max_evec_dev <= 1e-8},
                  {"n2_gap_at_least_0.5", min_n2_gap >= 0.5}};
    return {std::move(s), csv.str()};
}

// ------------------------------------------------- perturbation checks ----

struct PerturbationRealization {
    int n_simple = 0;
    int n_rejected = 0;
    double max_grad_sum_dev = 0.0;
    long long pairs_hypothesis = 0;
    long long viol_intermediate = 0;
    long long viol_final = 0;
    double worst_deficit_intermediate = 0.0;  // rhs - lhs when violated
    double worst_deficit_final = 0.0;
    long long minor_checks = 0;
    long long minor_violations = 0;
    SpectralSample sample;
    std::vector<double> potential;
};

RunResult run_perturbation_checks(const ExperimentConfig& c, int workers) {
    LatticeCube cube(c.d, c.L);
    const double K = c.disorder.coupling_bound();
    std::vector<PerturbationRealization> reals(c.realizations);

    par::for_each_index(c.realizations, workers, [&](int r) {
        PerturbationRealization& pr = reals[r];
        const Potential pot = sample_potential(cube, c.disorder, r);
        EigensolveOptions opts;
        opts.meta = {c.d, c.L, c.disorder.base_seed, r};
        pr.sample = eig_all(assemble_hamiltonian(cube, pot), opts);
        pr.potential = pot.values;
        const int N = pr.sample.n;

        std::vector<int> simple;
        for (int n = 0; n < N; ++n) {
            if (pr.sample.gap_to_rest(n) > kSimpleGapThreshold) {
                const GradientRecord g = eigen_gradient(pr.sample, n);
                double sum = 0.0;
                for (double v : g.gradient) sum += v;
                pr.max_grad_sum_dev = std::max(pr.max_grad_sum_dev, std::fabs(sum - 1.0));
                simple.push_back(n);
                ++pr.n_simple;
            } else {
                ++pr.n_rejected;
            }
        }
        for (std::size_t a = 0; a < simple.size(); ++a)
            for (std::size_t b = a + 1; b < simple.size(); ++b) {
                const SeparationCheck chk = gradient_separation_check(
                    pr.sample, simple[b], simple[a], pr.potential, c.d, K);
                if (!chk.hypothesis) continue;
                ++pr.pairs_hypothesis;
                if (!chk.holds_intermediate) {
                    ++pr.viol_intermediate;
                    pr.worst_deficit_intermediate =
                        std::max(pr.worst_deficit_intermediate,
                                 chk.rhs_intermediate - chk.omega_dot_grad);
                }
                if (!chk.holds_final) {
                    ++pr.viol_final;
                    pr.worst_deficit_final =
                        std::max(pr.worst_deficit_final, chk.rhs_final - chk.grad_diff_l2);
                }
            }
        // Lemma 8 on actual gradient pairs, a few per realization
        rng::Xoshiro256ss gen(rng::stream_seed(c.seed, r, 0x4d494e4f52ULL));
        const int n_pairs = std::min<std::size_t>(8, simple.size() / 2);
        for (int t = 0; t < n_pairs; ++t) {
            const int j = simple[gen.next() % simple.size()];
            int k = simple[gen.next() % simple.size()];
            if (j == k) continue;
            const auto gj = eigen_gradient(pr.sample, j);
            const auto gk = eigen_gradient(pr.sample, k);
            const auto mb = minor_lower_bound(gj.gradient, gk.gradient);
            ++pr.minor_checks;
            if (!mb.holds) ++pr.minor_violations;
        }
    });

    // finite-difference spot checks, deterministic picks across realizations
    double max_fd_grad_rel = 0.0;
    int fd_grad_done = 0;
    for (int t = 0; t < c.fd_gradient_checks; ++t) {
        const auto& pr = reals[t % c.realizations];
        const int N = pr.sample.n;
        rng::Xoshiro256ss gen(rng::stream_seed(c.seed, t, 0x4644475241ULL));
        // eligible: simple with a safe gap, gradient component large enough
        // for a relative comparison at double precision
        std::vector<std::pair<int, int>> eligible;
        for (int n = 0; n < N; ++n) {
            if (pr.sample.gap_to_rest(n) < 1e-3) continue;
            auto phi = pr.sample.eigenvector(n);
            for (int g = 0; g < N; ++g)
                if (phi[g] * phi[g] >= 1e-3) eligible.emplace_back(n, g);
        }
        if (eligible.empty()) continue;
        const auto [n, g] = eligible[gen.next() % eligible.size()];
        const double h = 1e-5;
        auto dense = assemble_hamiltonian(cube, Potential{cube, pr.potential, 0, 0}).dense();
        auto perturbed = [&](double delta) {
            std::vector<double> m = dense;
            m[static_cast<std::size_t>(g) * N + g] += delta;
            return eigenvalues_only_dense(std::move(m), N)[n];
        };
        const double fd = (perturbed(h) - perturbed(-h)) / (2.0 * h);
        auto phi = pr.sample.eigenvector(n);
        const double exact = phi[g] * phi[g];
        max_fd_grad_rel = std::max(max_fd_grad_rel, std::fabs(fd - exact) / exact);
        ++fd_grad_done;
    }

    double max_fd_hess_rel = 0.0;
    int fd_hess_done = 0;
    bool hessian_symmetry_exact = true;
    for (int t = 0; t < c.fd_hessian_checks; ++t) {
        const auto& pr = reals[t % c.realizations];
        const int N = pr.sample.n;
        rng::Xoshiro256ss gen(rng::stream_seed(c.seed, t, 0x4644484553ULL));
        std::vector<std::pair<int, int>> eligible;
        for (int n = 0; n < N; ++n) {
            if (pr.sample.gap_to_rest(n) < 0.1) continue;
            auto phi = pr.sample.eigenvector(n);
            for (int g = 0; g < N; ++g)
                if (phi[g] * phi[g] >= 1e-2) eligible.emplace_back(n, g);
        }
        if (eligible.empty()) continue;
        const auto [n, g] = eligible[gen.next() % eligible.size()];
        const auto hess = eigen_hessian(pr.sample, n);
        for (int x = 0; x < N && hessian_symmetry_exact; ++x)
            for (int y = 0; y < N; ++y)
                if (hess[static_cast<std::size_t>(x) * N + y] !=
                    hess[static_cast<std::size_t>(y) * N + x]) {
                    hessian_symmetry_exact = false;
                    break;
                }
        const double exact = hess[static_cast<std::size_t>(g) * N + g];
        if (std::fabs(exact) < 5e-2) continue;
        const double h = 1e-3;
        auto dense = assemble_hamiltonian(cube, Potential{cube, pr.potential, 0, 0}).dense();
        auto perturbed = [&](double delta) {
            std::vector<double> m = dense;
            m[static_cast<std::size_t>(g) * N + g] += delta;
            return eigenvalues_only_dense(std::move(m), N)[n];
        };
        const double e0 = pr.sample.eigenvalues[n];
        const double fd = (perturbed(h) - 2.0 * e0 + perturbed(-h)) / (h * h);
        max_fd_hess_rel = std::max(max_fd_hess_rel, std::fabs(fd - exact) / std::fabs(exact));
        ++fd_hess_done;
    }

    double max_pairing_ratio = 0.0;
    for (int t = 0; t < c.pairing_instances; ++t) {
        const auto& pr = reals[t % c.realizations];
        rng::Xoshiro256ss gen(rng::stream_seed(c.seed, t, 0x50414952ULL));
        std::vector<int> simple;
        for (int n = 0; n < pr.sample.n; ++n)
            if (pr.sample.gap_to_rest(n) > kSimpleGapThreshold) simple.push_back(n);
        if (simple.empty()) continue;
        const int n = simple[gen.next() % simple.size()];
        const PairingBound pb =
            hessian_pairing_bound(pr.sample, n, c.pairing_patterns, gen.next());
        max_pairing_ratio = std::max(max_pairing_ratio, pb.max_ratio);
    }

    // random nonnegative normalized pairs for the minor inequality
    long long minor_trial_violations = 0;
    {
        rng::Xoshiro256ss gen(rng::stream_seed(c.seed, 0, 0x4c454d4d4138ULL));
        std::vector<double> u, v;
        for (int t = 0; t < c.minor_trials; ++t) {
            const int n = 2 + static_cast<int>(gen.next() % 49);  // n in [2, 50]
            u.resize(n);
            v.resize(n);
            double su = 0, sv = 0;
            for (int i = 0; i < n; ++i) {
                u[i] = gen.uniform01();
                v[i] = gen.uniform01();
                su += u[i];
                sv += v[i];
            }
            for (int i = 0; i < n; ++i) {
                u[i] /= su;
                v[i] /= sv;
            }
            if (!minor_lower_bound(u, v).holds) ++minor_trial_violations;
        }
    }

    long long pairs_hypothesis = 0, viol_i = 0, viol_ii = 0, minor_checks = 0,
              minor_violations = 0;
    double worst_i = 0.0, worst_ii = 0.0, max_grad_dev = 0.0;
    report::CsvBuilder csv({"realization_index", "n_simple", "n_rejected",
                            "max_grad_sum_dev", "pairs_hypothesis", "viol_intermediate",
                            "viol_final"});
    for (int r = 0; r < c.realizations; ++r) {
        const auto& pr = reals[r];
        pairs_hypothesis += pr.pairs_hypothesis;
        viol_i += pr.viol_intermediate;
        viol_ii += pr.viol_final;
        minor_checks += pr.minor_checks;
        minor_violations += pr.minor_violations;
        worst_i = std::max(worst_i, pr.worst_deficit_intermediate);
        worst_ii = std::max(worst_ii, pr.worst_deficit_final);
        max_grad_dev = std::max(max_grad_dev, pr.max_grad_sum_dev);
        csv.add_row({std::to_string(r), std::to_string(pr.n_simple),
                     std::to_string(pr.n_rejected), format_double(pr.max_grad_sum_dev),
                     std::to_string(pr.pairs_hypothesis),
                     std::to_string(pr.viol_intermediate), std::to_string(pr.viol_final)});
    }

    json s = base_summary(c);
    s["results"] = {
        {"gradient", {{"max_l1_deviation", max_grad_dev}}},
        {"fd_gradient", {{"checks", fd_grad_done}, {"max_rel_error", max_fd_grad_rel}}},
        {"fd_hessian_diag",
         {{"checks", fd_hess_done},
          {"max_rel_error", max_fd_hess_rel},
          {"symmetry_exact", hessian_symmetry_exact}}},
        {"pairing_bound",
         {{"instances", c.pairing_instances},
          {"patterns", c.pairing_patterns},
          {"max_ratio", max_pairing_ratio}}},
        {"minor_inequality",
         {{"random_trials", c.minor_trials},
          {"random_violations", minor_trial_violations},
          {"gradient_pairs", minor_checks},
          {"gradient_pair_violations", minor_violations}}},
        {"separation_chain",
         {{"pairs_with_hypothesis", pairs_hypothesis},
          {"violations_intermediate", viol_i},
          {"violations_final", viol_ii},
          {"worst_deficit_intermediate", worst_i},
          {"worst_deficit_final", worst_ii}}}};
    s["flags"] = {{"gradient_l1_within_1e-10", max_grad_dev <= 1e-10},
                  {"fd_gradient_within_1e-4", max_fd_grad_rel < 1e-4},
                  {"fd_hessian_within_1e-3", max_fd_hess_rel < 1e-3},
                  {"pairing_bound_holds", max_pairing_ratio <= 1.0},
                  {"minor_inequality_always", minor_trial_violations == 0 &&
                                                  minor_violations == 0},
                  {"separation_intermediate_always", viol_i == 0},
                  {"separation_final_always", viol_ii == 0}};
    return {std::move(s), csv.str()};
}

}  // namespace

RunResult run_experiment(const ExperimentConfig& c) {
    const int workers = par::resolve_workers(c.workers);
    if (c.experiment == "dos") return run_dos(c, workers);
    if (c.experiment == "wegner") return run_wegner(c, workers);
    if (c.experiment == "minami") return run_minami(c, workers);
    if (c.experiment == "decorrelation") return run_decorrelation(c, workers);
    if (c.experiment == "poisson") return run_poisson(c, workers);
    if (c.experiment == "independence") return run_independence(c, workers);
    if (c.experiment == "localization") return run_localization(c, workers);
    if (c.experiment == "box-matching") return run_box_matching(c, workers);
    if (c.experiment == "dirichlet-oracle") return run_dirichlet_oracle(c, workers);
    if (c.experiment == "perturbation-checks") return run_perturbation_checks(c, workers);
    throw ConfigError("config: unknown experiment '" + c.experiment + "'");
}

void write_outputs(const RunResult& result, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    report::write_file(out_dir / "summary.json", report::dump_summary(result.summary));
    report::write_file(out_dir / "samples.csv", result.samples_csv);
}

}  // namespace anderson
