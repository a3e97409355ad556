/*
   Copyright 2026 The polarq authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef POLARQ_CLI_COMMANDS_HPP
#define POLARQ_CLI_COMMANDS_HPP

#include <string>
#include <vector>

#include "polarq/construction.hpp"
#include "polarq/io.hpp"
#include "polarq/joint_source.hpp"
#include "polarq/modem_awgn.hpp"

namespace polarq::cli {

// The experiment commands, driven by archivable key=value configs (see
// README for the full key reference). Each writes its outputs to the
// paths named in the config and returns a summary for the caller;
// outputs are byte-identical across worker counts except wall_time.

/// model = table | qsc:<q>,<eps> | file:<path>
JointSource load_model(const Config& cfg, std::string* description = nullptr);

/// constellation = pam:<q> | rqam:<q_axis> | circ:<path>; normalize=1
/// scales to unit energy (default on).
Constellation load_constellation(const Config& cfg, std::string* description = nullptr);

struct ConstructResult {
    PolarCode code;
    double r_s = 0.0;     // |A^c| / N
    double r_c = 0.0;     // |A| / N
    double bound = 0.0;   // (q-1) sum of z over A
};

ConstructResult run_construct(const Config& cfg);

struct SimPoint {
    std::string id;  // snr_db for channel runs, model tag for source runs
    uint64_t frames = 0;
    uint64_t symbols = 0;
    uint64_t symbol_errors = 0;
    uint64_t block_errors = 0;
    double ser = 0.0;
    double wer = 0.0;
    double wall_time = 0.0;
};

struct SimResult {
    std::vector<SimPoint> points;
    uint64_t code_hash = 0;
};

SimResult run_simulate_source(const Config& cfg);
SimResult run_simulate_channel(const Config& cfg);

DegradationReport run_check_degradation(const Config& cfg, std::string* summary = nullptr);

/// One SVG per CSV, written next to it (.csv replaced by .svg).
std::vector<std::string> run_plot(const std::vector<std::string>& csv_paths);

} // namespace polarq::cli

#endif
