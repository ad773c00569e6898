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

#include "edgebo/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <istream>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace edgebo {

void ExperimentSpec::validate() const {
    mec.validate();
    method.validate();
    if (slots < 1) throw std::invalid_argument("ExperimentSpec: slots must be >= 1");
    if (reps < 1) throw std::invalid_argument("ExperimentSpec: reps must be >= 1");
}

namespace {

std::vector<RunRecord> run_single_rep(const ExperimentSpec& spec, int rep) {
    const std::uint64_t rep_seed = substream_seed(spec.base_seed, static_cast<std::uint64_t>(rep));
    Rng env_rng(substream_seed(rep_seed, Stream::environment));

    const bool oracle_method = spec.method.name == "oracle";
    std::unique_ptr<Agent> agent;
    if (!oracle_method) agent = make_agent(spec.mec, spec.method, rep_seed);

    MecState state = init_state(spec.mec, env_rng);
    std::vector<RunRecord> records;
    records.reserve(spec.slots);
    double cum_regret = 0.0;
    for (int t = 1; t <= spec.slots; ++t) {
        const OracleResult oracle = oracle_optimum(spec.mec, state);
        Decision d;
        if (oracle_method) {
            d = oracle.decision;
        } else {
            std::optional<Eigen::VectorXd> ctx;
            if (agent->wants_context()) ctx = context_vector(state);
            d = agent->propose(t, ctx);
        }
        const EdcBreakdown cost = edc(spec.mec, state, d);
        const double y = spec.mec.obs_noise_std > 0.0
                             ? cost.reward + env_rng.normal(0.0, spec.mec.obs_noise_std)
                             : cost.reward;
        cum_regret += oracle.value - cost.reward;

        RunRecord rec;
        rec.rep = rep;
        rec.slot = t;
        rec.y = y;
        rec.oracle_value = oracle.value;
        rec.regret = oracle.value - cost.reward;
        rec.cum_regret = cum_regret;
        rec.avg_regret = cum_regret / t;
        rec.edc_total = cost.total;
        records.push_back(rec);

        if (!oracle_method) agent->observe(y);
        if (t < spec.slots) state = advance(spec.mec, state, env_rng);
    }
    return records;
}

double sample_stderr(const std::vector<double>& xs, double mean) {
    const int n = static_cast<int>(xs.size());
    if (n < 2) return 0.0;
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / (n - 1)) / std::sqrt(static_cast<double>(n));
}

}  // namespace

ExperimentResult run_experiment(const ExperimentSpec& spec, int threads) {
    spec.validate();
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, std::min(threads, spec.reps));

    std::vector<std::vector<RunRecord>> per_rep(spec.reps);
    if (threads == 1) {
        for (int r = 0; r < spec.reps; ++r) per_rep[r] = run_single_rep(spec, r);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        std::atomic<bool> failed{false};
        std::string error_message;
        std::mutex error_mutex;
        pool.reserve(threads);
        for (int w = 0; w < threads; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    const int r = next.fetch_add(1);
                    if (r >= spec.reps || failed.load()) return;
                    try {
                        per_rep[r] = run_single_rep(spec, r);
                    } catch (const std::exception& e) {
                        std::lock_guard<std::mutex> lock(error_mutex);
                        error_message = e.what();
                        failed.store(true);
                        return;
                    }
                }
            });
        }
        for (auto& th : pool) th.join();
        if (failed.load()) throw std::runtime_error("run_experiment: " + error_message);
    }

    ExperimentResult out;
    out.method = spec.method.name;
    out.records.reserve(static_cast<std::size_t>(spec.reps) * spec.slots);
    for (int r = 0; r < spec.reps; ++r)
        out.records.insert(out.records.end(), per_rep[r].begin(), per_rep[r].end());
    return out;
}

Summary summarize(const std::vector<ExperimentResult>& results) {
    if (results.empty()) throw std::invalid_argument("summarize: no results");
    Summary summary;
    // (method, slot) -> samples over reps.
    std::map<std::pair<std::string, int>, std::pair<std::vector<double>, std::vector<double>>> acc;
    std::map<std::string, int> final_slot;
    for (const ExperimentResult& res : results) {
        if (res.records.empty()) throw std::invalid_argument("summarize: empty result set");
        for (const RunRecord& rec : res.records) {
            auto& cell = acc[{res.method, rec.slot}];
            cell.first.push_back(rec.avg_regret);
            cell.second.push_back(rec.edc_total);
            auto [it, inserted] = final_slot.try_emplace(res.method, rec.slot);
            if (!inserted) it->second = std::max(it->second, rec.slot);
        }
    }
    for (const auto& [key, cell] : acc) {
        SummaryRow row;
        row.method = key.first;
        row.slot = key.second;
        row.reps = static_cast<int>(cell.first.size());
        row.avg_regret_mean =
            std::accumulate(cell.first.begin(), cell.first.end(), 0.0) / row.reps;
        row.avg_regret_stderr = sample_stderr(cell.first, row.avg_regret_mean);
        row.edc_mean = std::accumulate(cell.second.begin(), cell.second.end(), 0.0) / row.reps;
        row.edc_stderr = sample_stderr(cell.second, row.edc_mean);
        summary.rows.push_back(row);
        if (row.slot == final_slot[row.method]) summary.final_avg_regret[row.method] = row.avg_regret_mean;
    }
    for (const auto& [a, ga] : summary.final_avg_regret) {
        for (const auto& [b, gb] : summary.final_avg_regret) {
            if (a == b) continue;
            const double rel = (gb == 0.0 && ga == gb) ? 0.0 : (gb - ga) / gb;
            summary.relative_improvements.emplace_back(a, b, rel);
        }
    }
    return summary;
}

double mean_edc(const ExperimentResult& result) {
    if (result.records.empty()) throw std::invalid_argument("mean_edc: empty result");
    double sum = 0.0;
    for (const RunRecord& rec : result.records) sum += rec.edc_total;
    return sum / static_cast<double>(result.records.size());
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace {
constexpr const char* kRunHeader =
    "rep,slot,method,y,oracle_value,regret,cum_regret,avg_regret,edc_total";
}

void write_run_csv(std::ostream& os, const ExperimentResult& result) {
    os << kRunHeader << "\n";
    for (const RunRecord& r : result.records) {
        os << r.rep << ',' << r.slot << ',' << result.method << ',' << format_double(r.y) << ','
           << format_double(r.oracle_value) << ',' << format_double(r.regret) << ','
           << format_double(r.cum_regret) << ',' << format_double(r.avg_regret) << ','
           << format_double(r.edc_total) << "\n";
    }
}

ExperimentResult read_run_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kRunHeader)
        throw std::runtime_error("read_run_csv: unexpected header");
    ExperimentResult out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string tok;
        RunRecord r;
        auto next = [&]() {
            if (!std::getline(ss, tok, ',')) throw std::runtime_error("read_run_csv: short row");
            return tok;
        };
        r.rep = std::stoi(next());
        r.slot = std::stoi(next());
        const std::string method = next();
        if (out.method.empty())
            out.method = method;
        else if (out.method != method)
            throw std::runtime_error("read_run_csv: mixed methods in one file");
        r.y = std::stod(next());
        r.oracle_value = std::stod(next());
        r.regret = std::stod(next());
        r.cum_regret = std::stod(next());
        r.avg_regret = std::stod(next());
        r.edc_total = std::stod(next());
        out.records.push_back(r);
    }
    if (out.records.empty()) throw std::runtime_error("read_run_csv: no records");
    return out;
}

void write_summary_csv(std::ostream& os, const Summary& summary) {
    os << "method,slot,avg_regret_mean,avg_regret_stderr,edc_mean,edc_stderr,reps\n";
    for (const SummaryRow& r : summary.rows) {
        os << r.method << ',' << r.slot << ',' << format_double(r.avg_regret_mean) << ','
           << format_double(r.avg_regret_stderr) << ',' << format_double(r.edc_mean) << ','
           << format_double(r.edc_stderr) << ',' << r.reps << "\n";
    }
}

}  // namespace edgebo
