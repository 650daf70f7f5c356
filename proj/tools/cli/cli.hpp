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

#ifndef PRIVLSH_TOOLS_CLI_CLI_HPP_
#define PRIVLSH_TOOLS_CLI_CLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "privlsh/data.hpp"
#include "privlsh/mechanisms.hpp"
#include "privlsh/nns.hpp"

// Library behind the `privlsh` command-line tool.
namespace privlsh::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitRuntime = 3;

// Runs one command line (without the program name) and returns its exit
// code. Results go to `out` (or --out), diagnostics and drawn seeds to `err`.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

// One cell of the XDP-to-LDP budget table.
struct Table1Entry {
  double d_theta;
  double xi;
  int kappa;
  double delta;
  double epsilon;     // per-bit budget reaching xi under the tight bound
  double alpha;
  double ldp_budget;  // kappa * epsilon
  int ldp_rounded;    // round-half-up
};

// The grid d in {0.05, 0.1} x xi in {1, 5, 10, 20} x kappa in {10, 20, 50}
// at delta = 0.01, ordered by d, then xi, then kappa.
absl::StatusOr<std::vector<Table1Entry>> ComputeTable1();

// Published bit strings, one per user, in the text format
//   privlsh-hashes v1
//   kappa <width>
//   users <count>
//   <id>\t<bits>
// with bit 0 written first.
struct HashFile {
  std::size_t kappa = 0;
  std::vector<std::string> ids;
  std::vector<BitString> bits;
};

std::string SerializeHashes(const HashFile& file);
absl::StatusOr<HashFile> ParseHashes(absl::string_view text);

// Where experiment users come from: a dataset snapshot, an event file, or a
// synthetic clustered set.
struct DatasetSource {
  std::string snapshot_path;
  std::string events_path;
  EventFormat events_format = EventFormat::kCsv;
  bool events_header = false;
  VectorMode mode = VectorMode::kRatingCentered;
  std::size_t dimension = 0;  // item count for event files
  std::optional<SynthSpec> synth;
  std::size_t truncate = 0;   // keep this many most popular items; 0 = all

  // Exactly one source must be set.
  absl::Status Validate() const;
};

absl::StatusOr<BuiltDataset> LoadDataset(const DatasetSource& source);

struct ExperimentConfig {
  DatasetSource source;
  std::vector<int> kappas;
  std::vector<int> ks;
  std::vector<MechanismKind> mechanisms;
  // Exactly one of the two sweeps is set.
  std::vector<double> xis;
  std::vector<double> epsilons;
  double delta = 0.01;
  // Reference distance at which a target xi is converted to epsilon.
  double d_theta = 0.1;
  std::uint64_t family_seed = 0;
  std::uint64_t noise_seed = 0;
  std::size_t queries = 0;  // the first `queries` users by id; 0 = all
  // Independent runs per point. Run 0 uses the seeds as given, run r > 0
  // uses DeriveSeed(seed, r) for both the family and the noise.
  int repetitions = 1;
  bool per_query = false;

  absl::Status Validate() const;
};

// One sweep point: mean utility loss over queries and repetitions. With one
// repetition std_err is over queries; otherwise it is over the independent
// repetition means. Per-query losses are averaged over repetitions.
struct ExperimentPoint {
  MechanismKind mechanism;
  int kappa;
  int k;
  double xi;       // inf for the noiseless hash under an epsilon sweep
  double epsilon;  // inf for the noiseless hash, 0 for uniform bits
  std::size_t queries;
  int repetitions;
  double mean_utility_loss;
  double std_err;
  bool truncated;
  std::vector<std::string> query_ids;
  std::vector<double> query_losses;
};

// Sweeps mechanism x kappa x k x (xi or epsilon) in that nesting order. A
// target xi becomes epsilon through EpsilonForTargetXi(xi, kappa, d_theta,
// delta) for LSHRR and LapLshEpsilonForTargetXi(xi, d_theta) for LapLSH;
// xi = 0 gives epsilon = 0 for LSHRR. Every point reuses the family seed (a
// kappa-bit family is the prefix of any wider one) and the noise seed.
absl::StatusOr<std::vector<ExperimentPoint>> RunExperiment(
    const ExperimentConfig& config, const Dataset& dataset);

}  // namespace privlsh::cli

#endif  // PRIVLSH_TOOLS_CLI_CLI_HPP_
