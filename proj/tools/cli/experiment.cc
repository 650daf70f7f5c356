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

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <set>

#include "absl/strings/str_cat.h"
#include "absl/strings/strip.h"
#include "cli/cli.hpp"
#include "cli/commands.hpp"
#include "cli/output.hpp"
#include "privlsh/errors.hpp"
#include "privlsh/lsh.hpp"
#include "privlsh/privacy.hpp"
#include "privlsh/random.hpp"

namespace privlsh::cli {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct SweepValue {
  double xi;
  double epsilon;
};

// Resolves one entry of the xi or epsilon sweep for `mechanism`.
absl::StatusOr<SweepValue> ResolveSweep(const ExperimentConfig& config,
                                        MechanismKind mechanism, int kappa,
                                        double value) {
  const bool by_xi = !config.xis.empty();
  switch (mechanism) {
    case MechanismKind::kLsh:
      return SweepValue{by_xi ? value : kInf, kInf};
    case MechanismKind::kUniform:
      return SweepValue{by_xi ? value : 0.0, 0.0};
    case MechanismKind::kLshrr: {
      if (by_xi) {
        PRIVLSH_ASSIGN_OR_RETURN(
            const double eps,
            EpsilonForTargetXi(value, kappa, config.d_theta, config.delta));
        return SweepValue{value, eps};
      }
      if (value == 0.0) return SweepValue{0.0, 0.0};
      PRIVLSH_ASSIGN_OR_RETURN(
          const AlphaSolution alpha,
          SolveAlpha(kappa, config.d_theta, config.delta));
      const PrivacyParams params{.epsilon = value,
                                 .kappa = kappa,
                                 .delta = config.delta,
                                 .d = config.d_theta};
      PRIVLSH_ASSIGN_OR_RETURN(const BudgetReport report,
                               PxdpBudgetTight(params, alpha.alpha));
      return SweepValue{report.xi, value};
    }
    case MechanismKind::kLapLsh: {
      if (by_xi) {
        PRIVLSH_ASSIGN_OR_RETURN(const double eps,
                                 LapLshEpsilonForTargetXi(value, config.d_theta));
        return SweepValue{value, eps};
      }
      PRIVLSH_ASSIGN_OR_RETURN(const double xi,
                               LapLshBudgetFromAngle(value, config.d_theta));
      return SweepValue{xi, value};
    }
  }
  return InvalidParamsError("unknown mechanism");
}

}  // namespace

absl::Status DatasetSource::Validate() const {
  const int sources = !snapshot_path.empty() + !events_path.empty() +
                      synth.has_value();
  if (sources != 1) {
    return InvalidParamsError(
        "give exactly one dataset source: snapshot, events, or synth");
  }
  if (!events_path.empty() && dimension == 0) {
    return InvalidParamsError("event files need the item count n");
  }
  return absl::OkStatus();
}

absl::StatusOr<BuiltDataset> LoadDataset(const DatasetSource& source) {
  PRIVLSH_RETURN_IF_ERROR(source.Validate());
  absl::StatusOr<BuiltDataset> built = [&]() -> absl::StatusOr<BuiltDataset> {
    if (source.synth) {
      PRIVLSH_ASSIGN_OR_RETURN(Dataset d, Synthesize(*source.synth));
      return BuiltDataset{std::move(d), {}};
    }
    if (!source.snapshot_path.empty()) {
      PRIVLSH_ASSIGN_OR_RETURN(const std::string text,
                               ReadFile(source.snapshot_path));
      PRIVLSH_ASSIGN_OR_RETURN(Dataset d, ParseDataset(text));
      return BuiltDataset{std::move(d), {}};
    }
    const LoadOptions options{.format = source.events_format,
                              .dimension = source.dimension,
                              .has_header = source.events_header};
    PRIVLSH_ASSIGN_OR_RETURN(const std::vector<EventRecord> events,
                             LoadEvents(source.events_path, options));
    return BuildVectors(events, source.dimension, source.mode);
  }();
  if (!built.ok() || source.truncate == 0 ||
      source.truncate == built->dataset.dimension()) {
    return built;
  }
  PRIVLSH_ASSIGN_OR_RETURN(BuiltDataset truncated,
                           TruncateDimensions(built->dataset, source.truncate));
  truncated.dropped_users.insert(truncated.dropped_users.begin(),
                                 built->dropped_users.begin(),
                                 built->dropped_users.end());
  return truncated;
}

absl::Status ExperimentConfig::Validate() const {
  if (kappas.empty() || ks.empty() || mechanisms.empty()) {
    return InvalidParamsError("kappa, k and mechanism lists must be nonempty");
  }
  if (xis.empty() == epsilons.empty()) {
    return InvalidParamsError("give exactly one of the xi and epsilon sweeps");
  }
  for (int kappa : kappas) {
    if (kappa < 1) return InvalidParamsError("kappa must be >= 1");
  }
  for (int k : ks) {
    if (k < 1) return InvalidParamsError("k must be >= 1");
  }
  for (double v : xis.empty() ? epsilons : xis) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      return InvalidParamsError(
          absl::StrCat("sweep values must be finite and >= 0, got ", v));
    }
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    return InvalidParamsError("delta must lie in (0, 1)");
  }
  if (!(d_theta > 0.0 && d_theta < 1.0)) {
    return InvalidParamsError("d_theta must lie in (0, 1)");
  }
  if (repetitions < 1) return InvalidParamsError("repetitions must be >= 1");
  return absl::OkStatus();
}

absl::StatusOr<std::vector<ExperimentPoint>> RunExperiment(
    const ExperimentConfig& config, const Dataset& dataset) {
  PRIVLSH_RETURN_IF_ERROR(config.Validate());
  std::vector<std::size_t> queries(dataset.size());
  std::iota(queries.begin(), queries.end(), 0);
  std::sort(queries.begin(), queries.end(), [&](std::size_t a, std::size_t b) {
    return dataset.index().rank(a) < dataset.index().rank(b);
  });
  if (config.queries > 0 && config.queries < queries.size()) {
    queries.resize(config.queries);
  }

  const std::vector<double>& sweep =
      config.xis.empty() ? config.epsilons : config.xis;
  auto run_seed = [](std::uint64_t seed, int r) {
    return r == 0 ? seed : DeriveSeed(seed, r);
  };
  std::vector<ExperimentPoint> points;
  for (MechanismKind mechanism : config.mechanisms) {
    for (int kappa : config.kappas) {
      std::vector<ProjectionFamily> families;
      for (int r = 0; r < config.repetitions; ++r) {
        PRIVLSH_ASSIGN_OR_RETURN(
            ProjectionFamily family,
            ProjectionFamily::Sample(dataset.dimension(), kappa,
                                     run_seed(config.family_seed, r)));
        families.push_back(std::move(family));
      }
      for (int k : config.ks) {
        for (double value : sweep) {
          PRIVLSH_ASSIGN_OR_RETURN(const SweepValue sv,
                                   ResolveSweep(config, mechanism, kappa, value));
          const MechanismConfig mc{
              .kind = mechanism,
              .epsilon = std::isfinite(sv.epsilon) ? sv.epsilon : 0.0};
          ExperimentPoint point{.mechanism = mechanism,
                                .kappa = kappa,
                                .k = k,
                                .xi = sv.xi,
                                .epsilon = sv.epsilon,
                                .queries = queries.size(),
                                .repetitions = config.repetitions,
                                .mean_utility_loss = 0.0,
                                .std_err = 0.0,
                                .truncated = false,
                                .query_ids = {},
                                .query_losses = {}};
          for (std::size_t q : queries) point.query_ids.push_back(dataset.id(q));
          point.query_losses.assign(queries.size(), 0.0);
          std::vector<double> run_means;
          for (int r = 0; r < config.repetitions; ++r) {
            PRIVLSH_ASSIGN_OR_RETURN(
                const ExperimentResult result,
                RunMatchingExperiment(dataset, families[r], mc, k, queries,
                                      run_seed(config.noise_seed, r)));
            run_means.push_back(result.mean_utility_loss);
            point.truncated |= result.truncated;
            if (config.repetitions == 1) point.std_err = result.std_err;
            for (std::size_t q = 0; q < queries.size(); ++q) {
              point.query_losses[q] +=
                  result.queries[q].utility_loss / config.repetitions;
            }
          }
          const double runs = static_cast<double>(run_means.size());
          point.mean_utility_loss =
              std::accumulate(run_means.begin(), run_means.end(), 0.0) / runs;
          if (run_means.size() > 1) {
            double ss = 0.0;
            for (double m : run_means) {
              ss += (m - point.mean_utility_loss) * (m - point.mean_utility_loss);
            }
            point.std_err = std::sqrt(ss / (runs - 1.0) / runs);
          }
          points.push_back(std::move(point));
        }
      }
    }
  }
  return points;
}

namespace {

struct ExperimentOptions {
  DatasetFlags data;
  std::vector<int> kappa;
  std::vector<int> k{10};
  std::vector<std::string> mechanism{"lshrr"};
  std::vector<double> xi;
  std::vector<double> eps;
  double delta = 0.01;
  double d_theta = 0.1;
  std::uint64_t family_seed = 0;
  std::uint64_t noise_seed = 0;
  std::size_t queries = 0;
  int repetitions = 1;
  bool per_query = false;
  std::string format = "csv";
  std::string out;
  std::string config;
};

absl::StatusOr<std::string> RenderExperiment(
    const std::vector<ExperimentPoint>& points, bool per_query,
    TableFormat format) {
  if (per_query) {
    Table table("privlsh.experiment-queries/1",
                {"query_id", "k", "kappa", "epsilon", "xi", "mechanism",
                 "utility_loss"});
    for (const ExperimentPoint& p : points) {
      for (std::size_t q = 0; q < p.query_ids.size(); ++q) {
        table.AddRow(Json{{"query_id", p.query_ids[q]},
                          {"k", p.k},
                          {"kappa", p.kappa},
                          {"epsilon", p.epsilon},
                          {"xi", p.xi},
                          {"mechanism", std::string(MechanismName(p.mechanism))},
                          {"utility_loss", p.query_losses[q]}});
      }
    }
    return table.Render(format);
  }
  Table table("privlsh.experiment/1",
              {"mechanism", "kappa", "k", "xi", "epsilon", "queries",
               "repetitions", "mean_utility_loss", "std_err", "truncated"});
  for (const ExperimentPoint& p : points) {
    table.AddRow(Json{{"mechanism", std::string(MechanismName(p.mechanism))},
                      {"kappa", p.kappa},
                      {"k", p.k},
                      {"xi", p.xi},
                      {"epsilon", p.epsilon},
                      {"queries", p.queries},
                      {"repetitions", p.repetitions},
                      {"mean_utility_loss", p.mean_utility_loss},
                      {"std_err", p.std_err},
                      {"truncated", p.truncated}});
  }
  return table.Render(format);
}

absl::StatusOr<std::string> RunExperimentCommand(const ExperimentOptions& o,
                                                 bool family_given,
                                                 bool noise_given,
                                                 std::ostream& err) {
  PRIVLSH_ASSIGN_OR_RETURN(const TableFormat format,
                           ParseTableFormat(o.format));
  ExperimentConfig config;
  PRIVLSH_ASSIGN_OR_RETURN(config.source, ToSource(o.data));
  config.kappas = o.kappa;
  config.ks = o.k;
  for (const std::string& m : o.mechanism) {
    PRIVLSH_ASSIGN_OR_RETURN(const MechanismKind kind, ParseMechanismKind(m));
    config.mechanisms.push_back(kind);
  }
  config.xis = o.xi;
  config.epsilons = o.eps;
  config.delta = o.delta;
  config.d_theta = o.d_theta;
  config.queries = o.queries;
  config.repetitions = o.repetitions;
  config.per_query = o.per_query;
  PRIVLSH_RETURN_IF_ERROR(config.Validate());
  config.family_seed =
      ResolveSeed(family_given, o.family_seed, "family-seed", err);
  config.noise_seed = ResolveSeed(noise_given, o.noise_seed, "noise-seed", err);

  PRIVLSH_ASSIGN_OR_RETURN(const BuiltDataset built,
                           LoadDataset(config.source));
  if (!built.dropped_users.empty()) {
    err << "privlsh: dropped " << built.dropped_users.size()
        << " all-zero users\n";
  }
  PRIVLSH_ASSIGN_OR_RETURN(const std::vector<ExperimentPoint> points,
                           RunExperiment(config, built.dataset));
  return RenderExperiment(points, config.per_query, format);
}

}  // namespace

absl::StatusOr<std::vector<std::string>> ExpandExperimentConfig(
    const std::vector<std::string>& args) {
  std::string path;
  std::set<std::string> explicit_names;
  for (std::size_t i = 0; i < args.size(); ++i) {
    absl::string_view a = args[i];
    if (!absl::ConsumePrefix(&a, "--")) continue;
    const std::string name(a.substr(0, a.find('=')));
    explicit_names.insert(name);
    if (name != "config") continue;
    if (a.find('=') != absl::string_view::npos) {
      path = std::string(a.substr(a.find('=') + 1));
    } else if (i + 1 < args.size()) {
      path = args[i + 1];
    }
  }
  if (path.empty()) return args;

  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigTOML().from_file(path);
  } catch (const CLI::FileError& e) {
    return IoError(e.what());
  } catch (const CLI::ConversionError& e) {
    return ParseError(0, e.what());
  }
  std::vector<std::string> expanded(args.begin(), args.begin() + 1);
  for (const CLI::ConfigItem& item : items) {
    if (!item.parents.empty()) {
      return InvalidParamsError(absl::StrCat(
          "config key '", item.fullname(), "' is nested; use flat keys"));
    }
    if (explicit_names.count(item.name) > 0) continue;
    if (item.inputs.size() == 1 && (item.inputs[0] == "true" ||
                                    item.inputs[0] == "false")) {
      if (item.inputs[0] == "true") expanded.push_back("--" + item.name);
      continue;
    }
    expanded.push_back("--" + item.name);
    expanded.insert(expanded.end(), item.inputs.begin(), item.inputs.end());
  }
  expanded.insert(expanded.end(), args.begin() + 1, args.end());
  return expanded;
}

void AddExperimentCommand(CLI::App& app, Context& ctx) {
  auto opts = std::make_shared<ExperimentOptions>();
  CLI::App* cmd = app.add_subcommand(
      "experiment", "utility loss of private matching over a budget sweep");
  cmd->add_option("--config", opts->config,
                  "flat key=value file of these options; flags override it");
  AddDatasetFlags(*cmd, opts->data);
  cmd->add_option("--kappa", opts->kappa, "hash lengths")
      ->delimiter(',')
      ->required();
  cmd->add_option("--k", opts->k, "neighbor counts")
      ->delimiter(',')
      ->capture_default_str();
  cmd->add_option("--mechanism", opts->mechanism,
                  "lsh, lshrr, laplsh, uniform")
      ->delimiter(',')
      ->check(CLI::IsMember({"lsh", "lshrr", "laplsh", "uniform"}))
      ->capture_default_str();
  auto* eps = cmd->add_option("--eps", opts->eps, "per-bit budgets")
                  ->delimiter(',');
  cmd->add_option("--xi", opts->xi, "target XDP budgets")
      ->delimiter(',')
      ->excludes(eps);
  cmd->add_option("--delta", opts->delta)->capture_default_str();
  cmd->add_option("--d-theta,--d", opts->d_theta,
                  "reference distance for xi-to-epsilon conversion")
      ->capture_default_str();
  auto* family = cmd->add_option("--family-seed", opts->family_seed);
  auto* noise = cmd->add_option("--noise-seed", opts->noise_seed);
  cmd->add_option("--queries", opts->queries,
                  "use the first N users by id as queries (0 = all)");
  cmd->add_option("--repetitions", opts->repetitions,
                  "independent family and noise draws per point")
      ->capture_default_str();
  cmd->add_flag("--per-query", opts->per_query,
                "one record per query instead of per sweep point");
  cmd->add_option("--format", opts->format)
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--out", opts->out, "output file (default stdout)");
  cmd->callback([opts, family, noise, &ctx] {
    absl::StatusOr<std::string> text = RunExperimentCommand(
        *opts, family->count() > 0, noise->count() > 0, ctx.err);
    if (!text.ok()) return ctx.Fail(text.status());
    if (absl::Status s = WriteOutput(opts->out, *text, ctx.out); !s.ok()) {
      ctx.Fail(s);
    }
  });
}

}  // namespace privlsh::cli
