#pragma once

#include <filesystem>

#include "anderson/config.hpp"

namespace anderson {

// The deterministic outputs of one experiment run: summary.json content and
// samples.csv content. Byte-identical for identical (config, seed) at every
// worker count; timing is reported on stdout by the CLI, never here.
struct RunResult {
    nlohmann::json summary;
    std::string samples_csv;
};

RunResult run_experiment(const ExperimentConfig& config);

void write_outputs(const RunResult& result, const std::filesystem::path& out_dir);

// The quick contract suite behind `anderson-levels selftest`: closed-form
// spectra, counting identities, synthetic-data statistical self-tests and
// worker-count determinism on small configurations. Returns the number of
// failed checks and prints one line per check.
int run_selftest(int workers);

}  // namespace anderson
