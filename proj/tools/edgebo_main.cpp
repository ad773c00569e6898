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

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "edgebo/harness.hpp"

namespace fs = std::filesystem;
using namespace edgebo;

namespace {

void apply_overrides(ExperimentSpec& spec, const std::string& method, int slots, int reps,
                     std::int64_t seed) {
    if (!method.empty()) spec.method.name = method;
    if (slots > 0) spec.slots = slots;
    if (reps > 0) spec.reps = reps;
    if (seed >= 0) spec.base_seed = static_cast<std::uint64_t>(seed);
    spec.validate();
}

void write_result(const fs::path& out_dir, const std::string& stem,
                  const ExperimentResult& result) {
    fs::create_directories(out_dir);
    const fs::path path = out_dir / (stem + ".csv");
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path.string());
    write_run_csv(os, result);
    std::cout << "wrote " << path.string() << " (" << result.records.size() << " records)\n";
}

int cmd_run(const std::string& config, const std::string& method, int slots, int reps,
            std::int64_t seed, const std::string& out, int threads) {
    ExperimentSpec spec = load_spec(config);
    apply_overrides(spec, method, slots, reps, seed);
    const ExperimentResult result = run_experiment(spec, threads);
    write_result(out, spec.method.name, result);
    return 0;
}

int cmd_sweep(const std::string& config, const std::string& param,
              const std::vector<double>& values, const std::string& method, int slots, int reps,
              std::int64_t seed, const std::string& out, int threads) {
    for (double v : values) {
        ExperimentSpec spec = load_spec(config);
        apply_overrides(spec, method, slots, reps, seed);
        if (param == "rho")
            spec.method.rho = v;
        else if (param == "l_s")
            spec.method.l_s = v;
        else if (param == "gamma")
            spec.method.gamma = v;
        else if (param == "zeta")
            spec.method.zeta = v;
        else
            throw std::runtime_error("sweep: unsupported parameter '" + param + "'");
        spec.validate();
        ExperimentResult result = run_experiment(spec, threads);
        const std::string tag = spec.method.name + "@" + param + "=" + format_double(v);
        result.method = tag;
        std::string stem = tag;
        for (char& c : stem)
            if (c == '@' || c == '=') c = '_';
        write_result(out, stem, result);
    }
    return 0;
}

int cmd_summarize(const std::string& in_dir, const std::string& out_file) {
    std::vector<ExperimentResult> results;
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(in_dir))
        if (entry.is_regular_file() && entry.path().extension() == ".csv")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const fs::path& f : files) {
        std::ifstream is(f);
        try {
            results.push_back(read_run_csv(is));
        } catch (const std::exception& e) {
            std::cerr << "skipping " << f.string() << ": " << e.what() << "\n";
        }
    }
    if (results.empty()) throw std::runtime_error("summarize: no run CSVs found in " + in_dir);
    const Summary summary = summarize(results);
    std::ofstream os(out_file);
    if (!os) throw std::runtime_error("cannot open " + out_file);
    write_summary_csv(os, summary);
    std::cout << "wrote " << out_file << "\n";
    std::cout << "final-slot mean average regret:\n";
    for (const auto& [method, g] : summary.final_avg_regret)
        std::cout << "  " << method << ": " << format_double(g) << "\n";
    for (const auto& [a, b, rel] : summary.relative_improvements)
        std::cout << "  " << a << " vs " << b << ": " << format_double(100.0 * rel)
                  << "% lower final average regret\n";
    return 0;
}

int cmd_oracle_check(const std::string& config, int slots, std::int64_t seed, int samples,
                     const std::string& dump_state) {
    ExperimentSpec spec = load_spec(config);
    if (seed >= 0) spec.base_seed = static_cast<std::uint64_t>(seed);
    const std::uint64_t rep_seed = substream_seed(spec.base_seed, 0);
    Rng env_rng(substream_seed(rep_seed, Stream::environment));
    Rng probe_rng(substream_seed(rep_seed, Stream::acquisition));

    std::ofstream dump;
    if (!dump_state.empty()) {
        dump.open(dump_state);
        if (!dump) throw std::runtime_error("cannot open " + dump_state);
        write_state_csv_header(dump, spec.mec);
    }

    MecState state = init_state(spec.mec, env_rng);
    double worst_gap = 0.0;
    for (int t = 1; t <= slots; ++t) {
        const OracleResult oracle = oracle_optimum(spec.mec, state);
        const double replay = edc(spec.mec, state, oracle.decision).reward;
        if (std::abs(replay - oracle.value) > 1e-9)
            throw std::runtime_error("oracle-check: oracle value does not match its own decision");
        for (int s = 0; s < samples; ++s) {
            Decision d;
            d.offload.resize(spec.mec.num_wds);
            d.power.resize(spec.mec.num_wds);
            d.freq.resize(spec.mec.num_wds);
            for (int m = 0; m < spec.mec.num_wds; ++m) {
                d.offload[m] = static_cast<int>(probe_rng.uniform_index(spec.mec.num_bss + 1));
                d.power(m) = probe_rng.uniform(1e-6, 1.0) * spec.mec.p_peak;
                d.freq(m) = probe_rng.uniform(1e-6, 1.0) * spec.mec.f_peak;
            }
            worst_gap = std::max(worst_gap, edc(spec.mec, state, d).reward - oracle.value);
        }
        if (dump.is_open()) write_state_csv_row(dump, t, state);
        if (t < slots) state = advance(spec.mec, state, env_rng);
    }
    std::cout << "oracle-check: " << slots << " slots, " << samples
              << " random decisions per slot\n";
    std::cout << "max (random reward - oracle value) = " << format_double(worst_gap)
              << " (should be <= 0 within 1e-9)\n";
    if (worst_gap > 1e-9) {
        std::cout << "FAIL\n";
        return 1;
    }
    std::cout << "PASS\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Online BO benchmark for dynamic mobile-edge-computing management"};
    app.require_subcommand(1);

    std::string config, out = "results", method, param, in_dir, out_file, dump_state;
    int slots = 0, reps = 0, threads = 0, samples = 1000, check_slots = 50;
    std::int64_t seed = -1;
    std::vector<double> values;

    CLI::App* run = app.add_subcommand("run", "run one experiment from a config file");
    run->add_option("--config", config, "TOML config file")->required();
    run->add_option("--method", method, "override method (tvbo|ctx-tvbo|ti-bo|mab|bco|oracle)");
    run->add_option("--slots", slots, "override number of slots");
    run->add_option("--reps", reps, "override number of repetitions");
    run->add_option("--seed", seed, "override base seed");
    run->add_option("--out", out, "output directory");
    run->add_option("--threads", threads, "worker threads (0 = auto)");

    CLI::App* sweep = app.add_subcommand("sweep", "run a hyperparameter sweep");
    sweep->add_option("--config", config, "TOML config file")->required();
    sweep->add_option("--param", param, "parameter to sweep (rho|l_s|gamma|zeta)")->required();
    sweep->add_option("--values", values, "parameter values")->required()->delimiter(',');
    sweep->add_option("--method", method, "override method");
    sweep->add_option("--slots", slots, "override number of slots");
    sweep->add_option("--reps", reps, "override number of repetitions");
    sweep->add_option("--seed", seed, "override base seed");
    sweep->add_option("--out", out, "output directory");
    sweep->add_option("--threads", threads, "worker threads (0 = auto)");

    CLI::App* summ = app.add_subcommand("summarize", "aggregate run CSVs into a summary CSV");
    summ->add_option("--in", in_dir, "directory with run CSVs")->required();
    summ->add_option("--out", out_file, "summary CSV path")->required();

    CLI::App* check = app.add_subcommand("oracle-check", "regret-oracle self-test");
    check->add_option("--config", config, "TOML config file")->required();
    check->add_option("--slots", check_slots, "slots to check");
    check->add_option("--seed", seed, "base seed");
    check->add_option("--samples", samples, "random decisions per slot");
    check->add_option("--dump-state", dump_state, "write state trajectory CSV here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config, method, slots, reps, seed, out, threads);
        if (sweep->parsed())
            return cmd_sweep(config, param, values, method, slots, reps, seed, out, threads);
        if (summ->parsed()) return cmd_summarize(in_dir, out_file);
        if (check->parsed())
            return cmd_oracle_check(config, check_slots, seed, samples, dump_state);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
