//
// Copyright 2026 The privlsh Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef PRIVLSH_TOOLS_CLI_COMMANDS_HPP_
#define PRIVLSH_TOOLS_CLI_COMMANDS_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "cli/cli.hpp"

namespace privlsh::cli {

struct Context {
  std::ostream& out;
  std::ostream& err;
  int exit_code = kExitOk;

  // Reports `status` on `err` and records the matching exit code.
  void Fail(const absl::Status& status);
};

// Dataset flags shared by hash, knn, dataset and experiment.
struct DatasetFlags {
  std::string snapshot;
  std::string events;
  bool tsv = false;
  bool header = false;
  std::string mode = "centered";
  std::size_t n = 0;
  bool synth = false;
  SynthSpec synth_spec;
  std::size_t truncate = 0;
};

void AddDatasetFlags(CLI::App& app, DatasetFlags& flags);
absl::StatusOr<DatasetSource> ToSource(const DatasetFlags& flags);

// For `experiment` argument lists: replaces --config FILE by the flags it
// lists, skipping keys also given on the command line.
absl::StatusOr<std::vector<std::string>> ExpandExperimentConfig(
    const std::vector<std::string>& args);

void AddBudgetCommand(CLI::App& app, Context& ctx);
void AddHashCommand(CLI::App& app, Context& ctx);
void AddPerturbCommand(CLI::App& app, Context& ctx);
void AddKnnCommand(CLI::App& app, Context& ctx);
void AddDatasetCommand(CLI::App& app, Context& ctx);
void AddExperimentCommand(CLI::App& app, Context& ctx);
void AddAuditCommand(CLI::App& app, Context& ctx);

}  // namespace privlsh::cli

#endif  // PRIVLSH_TOOLS_CLI_COMMANDS_HPP_
