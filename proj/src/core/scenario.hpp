// Copyright 2026 The qthermo Authors
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

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "core/config.hpp"

namespace qthermo::scenario {

struct Overrides {
  std::optional<double> dt;
  std::optional<int> cutoff;
  int workers = 1;
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

inline constexpr const char* kUnitsLine =
    "# units: energy [hbar*kappa], time [1/kappa], entropy [k_B], hbar = k_B = 1";

extern const std::vector<std::string> kTrajectoryColumns;
extern const std::vector<std::string> kCycleColumns;

Table cmd_decay(config::Config& cfg, const Overrides& ov);
Table cmd_squeezed_relax(config::Config& cfg, const Overrides& ov);
Table cmd_carnot_stroke(config::Config& cfg, const Overrides& ov);
Table cmd_otto_sweep(config::Config& cfg, const Overrides& ov);
Table cmd_cycle(config::Config& cfg, const Overrides& ov);
Table cmd_multibath(config::Config& cfg, const Overrides& ov);

const std::vector<std::string>& commands();

/// Runs one subcommand. The scenario is computed completely before anything is
/// written; the CSV then lands atomically at out_path (stdout when empty).
void run(const std::string& command, const std::string& config_path, const std::string& out_path,
         const Overrides& ov);

std::string render_csv(const Table& table);
void write_atomic(const std::string& path, const std::string& content);

/// Runs fn(0..n-1) on up to `workers` threads; results keep index order and the
/// lowest-index exception is rethrown.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

std::string fmt_num(double v);

}  // namespace qthermo::scenario
