#include "anderson/config.hpp"

#include <cmath>
#include <set>

namespace anderson {

namespace {

using nlohmann::json;

const std::set<std::string> kExperiments = {
    "dos",          "wegner",       "minami",          "decorrelation",
    "poisson",      "independence", "localization",    "perturbation-checks",
    "dirichlet-oracle", "box-matching"};

[[noreturn]] void fail(const std::string& msg) { throw ConfigError("config: " + msg); }

Interval parse_interval(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        fail(path + " must be a two-element numeric array [lo, hi]");
    Interval iv{j[0].get<double>(), j[1].get<double>()};
    if (!(iv.lo <= iv.hi)) fail(path + " must satisfy lo <= hi");
    return iv;
}

double require_number(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path + " must be a number");
    return j.get<double>();
}

int require_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path + " must be an integer");
    return j.get<int>();
}

std::uint64_t require_u64(const json& j, const std::string& path) {
    if (!j.is_number_unsigned() && !j.is_number_integer()) fail(path + " must be an integer");
    if (j.is_number_integer() && j.get<std::int64_t>() < 0) fail(path + " must be >= 0");
    return j.get<std::uint64_t>();
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(std::string("not valid JSON: ") + e.what());
    }
    return parse_config_json(j);
}

ExperimentConfig parse_config_json(const nlohmann::json& j) {
    if (!j.is_object()) fail("top level must be a JSON object");
    if (!j.contains("experiment")) fail("missing required key 'experiment'");
    if (!j["experiment"].is_string()) fail("'experiment' must be a string");

    ExperimentConfig c;
    c.experiment = j["experiment"].get<std::string>();
    if (!kExperiments.count(c.experiment)) fail("unknown experiment '" + c.experiment + "'");

    const bool is_lattice = c.experiment != "dirichlet-oracle";

    std::set<std::string> allowed = {"experiment", "seed", "workers"};
    if (is_lattice) {
        allowed.insert({"d", "disorder", "L", "realizations"});
    }
    if (c.experiment == "dos") allowed.insert({"h", "grid_points"});
    if (c.experiment == "wegner") allowed.insert({"J"});
    if (c.experiment == "minami") allowed.insert({"J", "K"});
    if (c.experiment == "decorrelation") allowed.insert({"alpha", "E", "E_prime"});
    if (c.experiment == "poisson")
        allowed.insert({"E", "windows", "spacing_window", "h", "dos_L", "dos_R", "dos_seed",
                        "nu_min"});
    if (c.experiment == "independence")
        allowed.insert({"E", "E_prime", "U", "U_prime", "probes", "h", "dos_L", "dos_R",
                        "dos_seed", "nu_min"});
    if (c.experiment == "localization") allowed.insert({"window"});
    if (c.experiment == "box-matching") allowed.insert({"ell", "epsilon", "window"});
    if (c.experiment == "dirichlet-oracle") allowed.insert({"n_max", "gap_n_max"});
    if (c.experiment == "perturbation-checks")
        allowed.insert({"fd_gradient_checks", "fd_hessian_checks", "pairing_patterns",
                        "pairing_instances", "minor_trials"});

    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (!allowed.count(key))
            fail("unknown key '" + key + "' for experiment '" + c.experiment + "'");
    }

    if (j.contains("seed")) c.seed = require_u64(j["seed"], "seed");
    if (j.contains("workers")) {
        c.workers = require_int(j["workers"], "workers");
        if (c.workers < 0) fail("workers must be >= 0");
    }
    if (j.contains("d")) {
        c.d = require_int(j["d"], "d");
        if (c.d < 1) fail("d must be >= 1");
    }
    if (j.contains("disorder")) {
        const auto& dj = j["disorder"];
        if (!dj.is_object()) fail("disorder must be an object");
        for (const auto& [key, value] : dj.items()) {
            (void)value;
            if (key != "law" && key != "a" && key != "b")
                fail("unknown key 'disorder." + key + "'");
        }
        if (dj.contains("law")) {
            if (!dj["law"].is_string()) fail("disorder.law must be a string");
            c.disorder.law = disorder_law_from_string(dj["law"].get<std::string>());
        }
        if (dj.contains("a")) c.disorder.a = require_number(dj["a"], "disorder.a");
        if (dj.contains("b")) c.disorder.b = require_number(dj["b"], "disorder.b");
        if (!(c.disorder.a < c.disorder.b)) fail("disorder requires a < b");
    }
    c.disorder.base_seed = c.seed;
    c.dos_seed = c.seed + 1;

    if (is_lattice) {
        if (!j.contains("L")) fail("missing required key 'L'");
        c.L = require_int(j["L"], "L");
        if (c.L < 1) fail("L must be >= 1 (L = 0 is a degenerate periodic wrap)");
        const bool realizations_required = c.experiment != "box-matching" &&
                                           c.experiment != "localization" &&
                                           c.experiment != "perturbation-checks";
        if (j.contains("realizations"))
            c.realizations = require_int(j["realizations"], "realizations");
        else if (realizations_required)
            fail("missing required key 'realizations'");
        else
            c.realizations = c.experiment == "box-matching" ? 8 : 4;
        if (c.experiment == "perturbation-checks" && !j.contains("realizations"))
            c.realizations = 50;
        if (c.realizations < 1) fail("realizations must be >= 1");
    }

    if (c.experiment == "dos") {
        if (c.realizations < 10) fail("dos requires realizations >= 10");
        if (j.contains("h")) c.h = require_number(j["h"], "h");
        if (!(c.h > 0)) fail("h must be positive");
        if (j.contains("grid_points")) c.grid_points = require_int(j["grid_points"], "grid_points");
        if (c.grid_points < 2) fail("grid_points must be >= 2");
    }
    if (c.experiment == "wegner") {
        if (c.realizations < 100) fail("wegner requires realizations >= 100");
        if (!j.contains("J")) fail("missing required key 'J'");
        c.J = parse_interval(j["J"], "J");
    }
    if (c.experiment == "minami") {
        if (c.realizations < 1000) fail("minami requires realizations >= 1000");
        if (!j.contains("J")) fail("missing required key 'J'");
        if (!j.contains("K")) fail("missing required key 'K'");
        c.J = parse_interval(j["J"], "J");
        c.K = parse_interval(j["K"], "K");
        if (!c.J.subset_of(c.K)) fail("J must be a subset of K");
    }
    if (c.experiment == "decorrelation") {
        if (j.contains("alpha")) c.alpha = require_number(j["alpha"], "alpha");
        if (!(c.alpha > 0.0 && c.alpha < 1.0)) fail("alpha must lie in (0, 1)");
        if (!j.contains("E")) fail("missing required key 'E'");
        if (!j.contains("E_prime")) fail("missing required key 'E_prime'");
        c.E = require_number(j["E"], "E");
        c.E_prime = require_number(j["E_prime"], "E_prime");
        const int ell =
            static_cast<int>(std::llround(std::pow(static_cast<double>(c.L), c.alpha)));
        if (ell < 3) fail("round(L^alpha) must be >= 3");
    }
    if (c.experiment == "poisson" || c.experiment == "independence") {
        if (!j.contains("E")) fail("missing required key 'E'");
        c.E = require_number(j["E"], "E");
        if (j.contains("h")) c.h = require_number(j["h"], "h");
        if (!(c.h > 0)) fail("h must be positive");
        if (j.contains("dos_L")) c.dos_L = require_int(j["dos_L"], "dos_L");
        if (c.dos_L < 1) fail("dos_L must be >= 1");
        if (j.contains("dos_R")) c.dos_R = require_int(j["dos_R"], "dos_R");
        if (c.dos_R < 10) fail("dos_R must be >= 10");
        if (j.contains("dos_seed")) c.dos_seed = require_u64(j["dos_seed"], "dos_seed");
        if (j.contains("nu_min")) c.nu_min = require_number(j["nu_min"], "nu_min");
        if (!(c.nu_min > 0)) fail("nu_min must be positive");
    }
    if (c.experiment == "poisson") {
        c.windows = {{-1.0, 1.0}};
        if (j.contains("windows")) {
            if (!j["windows"].is_array() || j["windows"].empty())
                fail("windows must be a nonempty array of [lo, hi] pairs");
            c.windows.clear();
            for (std::size_t i = 0; i < j["windows"].size(); ++i)
                c.windows.push_back(
                    parse_interval(j["windows"][i], "windows[" + std::to_string(i) + "]"));
        }
        for (std::size_t i = 0; i < c.windows.size(); ++i) {
            if (!(c.windows[i].width() > 0))
                fail("windows[" + std::to_string(i) + "] must have positive width");
            for (std::size_t k = i + 1; k < c.windows.size(); ++k)
                if (c.windows[i].lo <= c.windows[k].hi && c.windows[k].lo <= c.windows[i].hi)
                    fail("windows must be pairwise disjoint");
        }
        if (j.contains("spacing_window"))
            c.spacing_window = parse_interval(j["spacing_window"], "spacing_window");
    }
    if (c.experiment == "independence") {
        if (c.realizations < 300) fail("independence requires realizations >= 300");
        if (!j.contains("E_prime")) fail("missing required key 'E_prime'");
        c.E_prime = require_number(j["E_prime"], "E_prime");
        if (c.E == c.E_prime) fail("independence requires E != E_prime");
        if (j.contains("U")) c.window_u = parse_interval(j["U"], "U");
        if (j.contains("U_prime")) c.window_u_prime = parse_interval(j["U_prime"], "U_prime");
        if (j.contains("probes")) {
            if (!j["probes"].is_array() || j["probes"].empty())
                fail("probes must be a nonempty numeric array");
            c.probes.clear();
            for (std::size_t i = 0; i < j["probes"].size(); ++i) {
                const double t =
                    require_number(j["probes"][i], "probes[" + std::to_string(i) + "]");
                if (!(t >= 0)) fail("probes must be nonnegative");
                c.probes.push_back(t);
            }
        }
    }
    if (c.experiment == "localization") {
        if (j.contains("window")) {
            c.window = parse_interval(j["window"], "window");
        } else {
            // central 40% of Sigma = [a - 2d, b + 2d]
            const double lo = HamiltonianMatrix::gershgorin_lo(c.disorder, c.d);
            const double hi = HamiltonianMatrix::gershgorin_hi(c.disorder, c.d);
            const double mid = 0.5 * (lo + hi), span = hi - lo;
            c.window = {mid - 0.2 * span, mid + 0.2 * span};
        }
    }
    if (c.experiment == "box-matching") {
        if (!j.contains("ell")) fail("missing required key 'ell'");
        c.ell = require_int(j["ell"], "ell");
        if (c.ell < 1 || c.ell > c.L) fail("ell must satisfy 1 <= ell <= L");
        if (j.contains("epsilon")) c.epsilon = require_number(j["epsilon"], "epsilon");
        if (!(c.epsilon > 0)) fail("epsilon must be positive");
        c.window = {0.4, 0.6};
        if (j.contains("window")) c.window = parse_interval(j["window"], "window");
    }
    if (c.experiment == "dirichlet-oracle") {
        if (j.contains("n_max")) c.n_max = require_int(j["n_max"], "n_max");
        if (c.n_max < 2) fail("n_max must be >= 2");
        if (j.contains("gap_n_max")) c.gap_n_max = require_int(j["gap_n_max"], "gap_n_max");
        if (c.gap_n_max < 2) fail("gap_n_max must be >= 2");
    }
    if (c.experiment == "perturbation-checks") {
        auto opt = [&](const char* key, int& slot, int lo) {
            if (j.contains(key)) slot = require_int(j[key], key);
            if (slot < lo) fail(std::string(key) + " must be >= " + std::to_string(lo));
        };
        opt("fd_gradient_checks", c.fd_gradient_checks, 0);
        opt("fd_hessian_checks", c.fd_hessian_checks, 0);
        opt("pairing_patterns", c.pairing_patterns, 0);
        opt("pairing_instances", c.pairing_instances, 0);
        opt("minor_trials", c.minor_trials, 0);
    }
    return c;
}

nlohmann::json config_echo(const ExperimentConfig& c) {
    json e;
    e["experiment"] = c.experiment;
    e["seed"] = c.seed;
    // worker count deliberately not echoed: outputs are byte-identical for
    // every worker count, so it is not part of the run's identity
    if (c.experiment == "dirichlet-oracle") {
        e["n_max"] = c.n_max;
        e["gap_n_max"] = c.gap_n_max;
        return e;
    }
    e["d"] = c.d;
    e["L"] = c.L;
    e["realizations"] = c.realizations;
    e["disorder"] = {{"law", to_string(c.disorder.law)}, {"a", c.disorder.a},
                     {"b", c.disorder.b}, {"base_seed", c.disorder.base_seed}};
    auto iv = [](const Interval& v) { return json::array({v.lo, v.hi}); };
    if (c.experiment == "dos") {
        e["h"] = c.h;
        e["grid_points"] = c.grid_points;
    } else if (c.experiment == "wegner") {
        e["J"] = iv(c.J);
    } else if (c.experiment == "minami") {
        e["J"] = iv(c.J);
        e["K"] = iv(c.K);
    } else if (c.experiment == "decorrelation") {
        e["alpha"] = c.alpha;
        e["E"] = c.E;
        e["E_prime"] = c.E_prime;
    } else if (c.experiment == "poisson") {
        e["E"] = c.E;
        json ws = json::array();
        for (const auto& w : c.windows) ws.push_back(iv(w));
        e["windows"] = ws;
        e["spacing_window"] = iv(c.spacing_window);
        e["h"] = c.h;
        e["dos_L"] = c.dos_L;
        e["dos_R"] = c.dos_R;
        e["dos_seed"] = c.dos_seed;
        e["nu_min"] = c.nu_min;
    } else if (c.experiment == "independence") {
        e["E"] = c.E;
        e["E_prime"] = c.E_prime;
        e["U"] = iv(c.window_u);
        e["U_prime"] = iv(c.window_u_prime);
        e["probes"] = c.probes;
        e["h"] = c.h;
        e["dos_L"] = c.dos_L;
        e["dos_R"] = c.dos_R;
        e["dos_seed"] = c.dos_seed;
        e["nu_min"] = c.nu_min;
    } else if (c.experiment == "localization") {
        e["window"] = iv(c.window);
    } else if (c.experiment == "box-matching") {
        e["ell"] = c.ell;
        e["epsilon"] = c.epsilon;
        e["window"] = iv(c.window);
    } else if (c.experiment == "perturbation-checks") {
        e["fd_gradient_checks"] = c.fd_gradient_checks;
        e["fd_hessian_checks"] = c.fd_hessian_checks;
        e["pairing_patterns"] = c.pairing_patterns;
        e["pairing_instances"] = c.pairing_instances;
        e["minor_trials"] = c.minor_trials;
    }
    return e;
}

}  // namespace anderson
