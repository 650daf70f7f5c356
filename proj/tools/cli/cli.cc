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

#include "cli/cli.hpp"

#include <ostream>

#include "CLI11.hpp"
#include "cli/commands.hpp"
#include "privlsh/errors.hpp"

namespace privlsh::cli {

void Context::Fail(const absl::Status& status) {
  err << "privlsh: " << status.ToString() << "\n";
  switch (status.code()) {
    case absl::StatusCode::kInvalidArgument:
    case absl::StatusCode::kOutOfRange:
    case absl::StatusCode::kNotFound:
      exit_code = kExitUsage;
      break;
    default:
      exit_code = kExitRuntime;
  }
}

void AddDatasetFlags(CLI::App& app, DatasetFlags& flags) {
  app.add_option("--dataset", flags.snapshot, "dataset snapshot file")
      ->group("Dataset");
  app.add_option("--events", flags.events,
                 "event file with user_id,item_index,value rows")
      ->group("Dataset");
  app.add_flag("--tsv", flags.tsv, "event file is tab separated")
      ->group("Dataset");
  app.add_flag("--header", flags.header, "event file starts with a header")
      ->group("Dataset");
  app.add_option("--mode", flags.mode, "event values: centered or counts")
      ->check(CLI::IsMember({"centered", "counts"}))
      ->group("Dataset");
  app.add_option("--n", flags.n, "item count of the event file")
      ->group("Dataset");
  app.add_flag("--synth", flags.synth, "generate a clustered synthetic set")
      ->group("Dataset");
  app.add_option("--synth-dimension", flags.synth_spec.dimension)
      ->group("Dataset");
  app.add_option("--clusters", flags.synth_spec.clusters)->group("Dataset");
  app.add_option("--users-per-cluster", flags.synth_spec.users_per_cluster)
      ->group("Dataset");
  app.add_option("--spread", flags.synth_spec.spread,
                 "angular distance of members from their center")
      ->group("Dataset");
  app.add_option("--synth-seed", flags.synth_spec.seed)->group("Dataset");
  app.add_option("--truncate", flags.truncate,
                 "keep this many most popular items")
      ->group("Dataset");
}

absl::StatusOr<DatasetSource> ToSource(const DatasetFlags& flags) {
  DatasetSource source;
  source.snapshot_path = flags.snapshot;
  source.events_path = flags.events;
  source.events_format = flags.tsv ? EventFormat::kTsv : EventFormat::kCsv;
  source.events_header = flags.header;
  source.mode = flags.mode == "counts" ? VectorMode::kRawCounts
                                       : VectorMode::kRatingCentered;
  source.dimension = flags.n;
  if (flags.synth) source.synth = flags.synth_spec;
  source.truncate = flags.truncate;
  PRIVLSH_RETURN_IF_ERROR(source.Validate());
  return source;
}

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Privacy-preserving LSH: budgets, hashing, experiments, audits",
               "privlsh"};
  app.require_subcommand(1);
  Context ctx{out, err};
  AddBudgetCommand(app, ctx);
  AddHashCommand(app, ctx);
  AddPerturbCommand(app, ctx);
  AddKnnCommand(app, ctx);
  AddDatasetCommand(app, ctx);
  AddExperimentCommand(app, ctx);
  AddAuditCommand(app, ctx);

  std::vector<std::string> expanded = args;
  if (!args.empty() && args.front() == "experiment") {
    absl::StatusOr<std::vector<std::string>> e = ExpandExperimentConfig(args);
    if (!e.ok()) {
      ctx.Fail(e.status());
      return ctx.exit_code;
    }
    expanded = *std::move(e);
  }
  std::vector<std::string> reversed(expanded.rbegin(), expanded.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }
  return ctx.exit_code;
}

}  // namespace privlsh::cli
