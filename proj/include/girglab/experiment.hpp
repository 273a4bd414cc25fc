#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "girglab/io.hpp"

namespace girglab {

/// One line of results.csv.
struct ResultRow {
    std::string experiment;
    std::uint64_t seed = 0;
    std::string metric;
    std::string key;
    double value = 0.0;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    std::vector<ResultRow> rows;
};

/// Short names of the acceptance checks, index id-1.
const std::vector<std::string>& criterion_names();

/// Runs acceptance check `id` (1..11) with seeds derived from base_seed.
/// quick = true shrinks sizes and seed counts for smoke testing; verdicts are
/// only meaningful at full scale. Check 12 compares two runs of a whole
/// experiment and is handled by run_experiment's callers.
CriterionResult run_criterion(int id, std::uint64_t base_seed, bool quick, int threads = 1);

struct ExperimentOutcome {
    int exit_status = 0;
    std::string results_path;
    std::string summary_path;
    std::vector<CriterionResult> criteria;
    std::vector<std::string> files;
    std::vector<ResultRow> rows;
};

/// Samples and analyses per config, writing results.csv (or results.json),
/// summary.json and the requested graph/plot files under cfg.output.dir.
/// A config with only "generate" writes the graph files and no tables.
/// Unknown analyses are rejected before any sampling.
ExperimentOutcome run_experiment(const ExperimentConfig& cfg);

/// CSV text of rows with the header "experiment,seed,metric,key,value".
std::string results_csv(const std::vector<ResultRow>& rows);

}  // namespace girglab
