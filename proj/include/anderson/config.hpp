#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "anderson/disorder.hpp"
#include "anderson/spectral_stats.hpp"

namespace anderson {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One experiment run, fully resolved (defaults filled). parse_config is
// strict: unknown keys, missing required keys and out-of-range values are
// all rejected with the offending key path in the message.
struct ExperimentConfig {
    std::string experiment;
    std::uint64_t seed = 1;
    int workers = 0;  // 0: resolve from ANDERSON_LEVELS_WORKERS, then hardware
    int d = 1;
    DisorderSpec disorder;  // base_seed mirrors seed

    int L = 0;
    int realizations = 0;

    // decorrelation / independence
    double alpha = 0.7;
    double E = 0.0, E_prime = 0.0;

    // wegner / minami
    Interval J{}, K{};

    // dos
    double h = 0.05;
    int grid_points = 161;

    // poisson / independence
    std::vector<Interval> windows;    // poisson count windows
    Interval spacing_window{-5.0, 5.0};
    Interval window_u{-1.0, 1.0}, window_u_prime{-1.0, 1.0};
    std::vector<double> probes{0.5, 1.0, 2.0};
    int dos_L = 500;
    int dos_R = 100;
    std::uint64_t dos_seed = 0;  // defaults to seed + 1
    double nu_min = 1e-3;

    // localization / box-matching
    Interval window{};  // energy window; localization default = central 40% of Sigma
    int ell = 0;
    double epsilon = 0.3;

    // dirichlet-oracle
    int n_max = 200;
    int gap_n_max = 10000;

    // perturbation-checks
    int fd_gradient_checks = 20;
    int fd_hessian_checks = 10;
    int pairing_patterns = 200;
    int pairing_instances = 20;
    int minor_trials = 100000;
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig parse_config_json(const nlohmann::json& j);

// Every default that influenced the run, echoed for provenance.
nlohmann::json config_echo(const ExperimentConfig& c);

}  // namespace anderson
