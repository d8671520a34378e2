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


#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qthermo/qthermo.h"

int main(int argc, char** argv) {
  CLI::App app{"qthermo: open-system thermodynamics of a driven bosonic mode"};
  app.set_version_flag("--version", std::string(qt_version()));
  app.require_subcommand(1);

  std::string config;
  std::string out = "-";
  int workers = 1;
  double dt = 0.0;
  int cutoff = 0;
  const std::vector<std::pair<const char*, const char*>> help = {
      {"decay", "coherent-state decay into a thermal bath"},
      {"squeezed-relax", "vacuum relaxing into a squeezed bath"},
      {"carnot-stroke", "driven squeezed-bath stroke over a list of durations"},
      {"otto-sweep", "Otto cycle efficiencies over frequency ratio and squeezing"},
      {"cycle", "a single Otto or Carnot-like cycle, optionally over ramp durations"},
      {"multibath", "a cycle visiting several baths"}};

  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < qt_scenario_count(); ++i) {
    const std::string name = qt_scenario_name(i);
    std::string desc;
    for (const auto& [n, d] : help)
      if (name == n) desc = d;
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("--config", config, "INI configuration file")->check(CLI::ExistingFile);
    sub->add_option("--out", out, "output CSV path ('-' for stdout)");
    sub->add_option("--workers", workers, "worker threads for sweeps")->check(CLI::PositiveNumber);
    sub->add_option("--dt", dt, "override the integrator step");
    sub->add_option("--cutoff", cutoff, "override the Fock cutoff");
    subs.push_back(sub);
  }

  CLI11_PARSE(app, argc, argv);

  for (CLI::App* sub : subs) {
    if (!sub->parsed()) continue;
    qt_overrides ov{};
    ov.workers = workers;
    if (sub->count("--dt")) {
      ov.has_dt = 1;
      ov.dt = dt;
    }
    if (sub->count("--cutoff")) {
      ov.has_cutoff = 1;
      ov.cutoff = cutoff;
    }
    const qt_status st = qt_run_scenario(sub->get_name().c_str(),
                                         config.empty() ? nullptr : config.c_str(),
                                         out.c_str(), &ov);
    if (st != QT_OK) {
      std::fprintf(stderr, "qthermo %s: %s\n", sub->get_name().c_str(), qt_last_error());
      return 2;
    }
  }
  return 0;
}
