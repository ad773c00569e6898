// Copyright 2026 The edgebo Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "edgebo/agents.hpp"
#include "edgebo/mec_env.hpp"

namespace edgebo {

/// Everything that determines an experiment; the output is a pure function
/// of this struct.
struct ExperimentSpec {
    MecConfig mec;
    MethodParams method;
    int slots = 200;
    int reps = 1;
    std::uint64_t base_seed = 1;

    void validate() const;
};

/// One (repetition, slot) outcome.
struct RunRecord {
    int rep = 0;
    int slot = 0;
    double y = 0.0;             ///< observed (possibly noisy) reward
    double oracle_value = 0.0;  ///< reward of the clairvoyant optimum
    double regret = 0.0;        ///< oracle_value - true reward of the decision
    double cum_regret = 0.0;
    double avg_regret = 0.0;
    double edc_total = 0.0;
};

struct ExperimentResult {
    std::string method;
    std::vector<RunRecord> records;  ///< ordered by (rep, slot)
};

/// Runs all repetitions (rep r uses seeds derived from base_seed and r) on a
/// worker pool; `threads` = 0 picks the hardware concurrency. Output order is
/// independent of the scheduling.
ExperimentResult run_experiment(const ExperimentSpec& spec, int threads = 0);

struct SummaryRow {
    std::string method;
    int slot = 0;
    double avg_regret_mean = 0.0;
    double avg_regret_stderr = 0.0;
    double edc_mean = 0.0;
    double edc_stderr = 0.0;
    int reps = 0;
};

struct Summary {
    std::vector<SummaryRow> rows;  ///< sorted by (method, slot)
    /// Mean final-slot average regret per method.
    std::map<std::string, double> final_avg_regret;
    /// (method a, method b, (G_b - G_a)/G_b): relative improvement of a over b
    /// at the final slot, for every ordered pair.
    std::vector<std::tuple<std::string, std::string, double>> relative_improvements;
};

Summary summarize(const std::vector<ExperimentResult>& results);

/// Mean EDC per slot averaged over all slots and repetitions.
double mean_edc(const ExperimentResult& result);

// --- CSV formats (fixed column order, %.12g decimals) ---

void write_run_csv(std::ostream& os, const ExperimentResult& result);
ExperimentResult read_run_csv(std::istream& in);
void write_summary_csv(std::ostream& os, const Summary& summary);

/// Formats a double with 12 significant digits.
std::string format_double(double v);

// --- configuration files ---

/// Loads an ExperimentSpec from a TOML file; unknown keys are rejected.
ExperimentSpec load_spec(const std::string& path);

}  // namespace edgebo
