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

#include <cmath>
#include <memory>

#include "absl/strings/str_cat.h"
#include "cli/cli.hpp"
#include "cli/commands.hpp"
#include "cli/output.hpp"
#include "privlsh/errors.hpp"
#include "privlsh/privacy.hpp"

namespace privlsh::cli {
namespace {

constexpr double kTableDelta = 0.01;

struct BudgetOptions {
  bool table1 = false;
  std::vector<double> eps;
  std::vector<double> xi;
  std::vector<int> kappa;
  std::vector<double> d_theta{0.1};
  double delta = kTableDelta;
  std::vector<std::string> bounds{"worst_case_dp", "pxdp_simple", "pxdp_tight",
                                  "laplsh"};
  std::string format = "csv";
  std::string out;
};

const std::vector<std::string> kBudgetColumns = {
    "bound", "kappa", "d_theta", "delta",     "epsilon",
    "xi",    "alpha", "delta_out", "ldp_budget", "flip_prob"};

Json ReportRow(const BudgetReport& r, double delta) {
  return Json{{"bound", std::string(BoundKindName(r.bound_kind))},
              {"kappa", r.kappa},
              {"d_theta", r.d},
              {"delta", delta},
              {"epsilon", r.epsilon},
              {"xi", r.xi},
              {"alpha", r.alpha},
              {"delta_out", r.delta_out},
              {"ldp_budget", r.ldp_budget},
              {"flip_prob", r.flip_prob}};
}

bool Wants(const BudgetOptions& o, BoundKind kind) {
  return std::find(o.bounds.begin(), o.bounds.end(), BoundKindName(kind)) !=
         o.bounds.end();
}

// Rows of every requested bound for one (kappa, d) and an RR budget epsilon.
// `laplsh_epsilon` is the Laplace budget for the LapLSH row.
absl::Status AddRows(const BudgetOptions& o, int kappa, double d,
                     double epsilon, double laplsh_epsilon, Table& table,
                     std::ostream& err) {
  PRIVLSH_ASSIGN_OR_RETURN(const double flip, RrFlipProbability(epsilon));
  if (Wants(o, BoundKind::kWorstCaseDp)) {
    PRIVLSH_ASSIGN_OR_RETURN(const double xi, WorstCaseDp(epsilon, kappa));
    table.AddRow(ReportRow({.bound_kind = BoundKind::kWorstCaseDp,
                            .epsilon = epsilon,
                            .kappa = kappa,
                            .d = d,
                            .xi = xi,
                            .alpha = 0.0,
                            .delta_out = 0.0,
                            .ldp_budget = kappa * epsilon,
                            .flip_prob = flip},
                           o.delta));
  }
  const PrivacyParams params{
      .epsilon = epsilon, .kappa = kappa, .delta = o.delta, .d = d};
  if (Wants(o, BoundKind::kPxdpSimple)) {
    PRIVLSH_ASSIGN_OR_RETURN(const BudgetReport r, PxdpBudgetSimple(params));
    table.AddRow(ReportRow(r, o.delta));
  }
  if (Wants(o, BoundKind::kPxdpTight)) {
    absl::StatusOr<AlphaSolution> alpha = SolveAlpha(kappa, d, o.delta);
    if (alpha.ok()) {
      PRIVLSH_ASSIGN_OR_RETURN(const BudgetReport r,
                               PxdpBudgetTight(params, alpha->alpha));
      table.AddRow(ReportRow(r, o.delta));
    } else if (absl::IsFailedPrecondition(alpha.status())) {
      err << "privlsh: no pxdp_tight row for kappa=" << kappa << " d=" << d
          << ": " << alpha.status().message() << "\n";
    } else {
      return alpha.status();
    }
  }
  if (Wants(o, BoundKind::kLapLsh)) {
    PRIVLSH_ASSIGN_OR_RETURN(const double xi,
                             LapLshBudgetFromAngle(laplsh_epsilon, d));
    table.AddRow(Json{{"bound", std::string(BoundKindName(BoundKind::kLapLsh))},
                      {"kappa", kappa},
                      {"d_theta", d},
                      {"delta", 0.0},
                      {"epsilon", laplsh_epsilon},
                      {"xi", xi},
                      {"alpha", 0.0},
                      {"delta_out", 0.0},
                      {"ldp_budget", 2.0 * laplsh_epsilon},
                      {"flip_prob", nullptr}});
  }
  return absl::OkStatus();
}

absl::StatusOr<std::string> RenderTable1(TableFormat format) {
  PRIVLSH_ASSIGN_OR_RETURN(const std::vector<Table1Entry> entries,
                           ComputeTable1());
  Table table("privlsh.table1/1",
              {"d_theta", "xi", "kappa", "delta", "epsilon", "alpha",
               "ldp_budget", "ldp_budget_rounded"});
  for (const Table1Entry& e : entries) {
    table.AddRow(Json{{"d_theta", e.d_theta},
                      {"xi", e.xi},
                      {"kappa", e.kappa},
                      {"delta", e.delta},
                      {"epsilon", e.epsilon},
                      {"alpha", e.alpha},
                      {"ldp_budget", e.ldp_budget},
                      {"ldp_budget_rounded", e.ldp_rounded}});
  }
  return table.Render(format);
}

absl::StatusOr<std::string> RenderBudget(const BudgetOptions& o,
                                         TableFormat format,
                                         std::ostream& err) {
  if (o.kappa.empty()) return InvalidParamsError("--kappa is required");
  if (o.eps.empty() == o.xi.empty()) {
    return InvalidParamsError("give exactly one of --eps and --xi");
  }
  for (const std::string& b : o.bounds) {
    if (b != "worst_case_dp" && b != "pxdp_simple" && b != "pxdp_tight" &&
        b != "laplsh") {
      return InvalidParamsError(absl::StrCat("unsupported bound '", b, "'"));
    }
  }
  Table table("privlsh.budget/1", kBudgetColumns);
  for (double d : o.d_theta) {
    for (int kappa : o.kappa) {
      for (double eps : o.eps) {
        PRIVLSH_RETURN_IF_ERROR(AddRows(o, kappa, d, eps, eps, table, err));
      }
      for (double xi : o.xi) {
        PRIVLSH_ASSIGN_OR_RETURN(const double eps,
                                 EpsilonForTargetXi(xi, kappa, d, o.delta));
        double laplsh_eps = 0.0;
        if (Wants(o, BoundKind::kLapLsh)) {
          PRIVLSH_ASSIGN_OR_RETURN(laplsh_eps, LapLshEpsilonForTargetXi(xi, d));
        }
        PRIVLSH_RETURN_IF_ERROR(
            AddRows(o, kappa, d, eps, laplsh_eps, table, err));
      }
    }
  }
  return table.Render(format);
}

}  // namespace

absl::StatusOr<std::vector<Table1Entry>> ComputeTable1() {
  std::vector<Table1Entry> entries;
  for (double d : {0.05, 0.1}) {
    for (double xi : {1.0, 5.0, 10.0, 20.0}) {
      for (int kappa : {10, 20, 50}) {
        PRIVLSH_ASSIGN_OR_RETURN(const AlphaSolution alpha,
                                 SolveAlpha(kappa, d, kTableDelta));
        PRIVLSH_ASSIGN_OR_RETURN(const double eps,
                                 EpsilonForTargetXi(xi, kappa, d, kTableDelta));
        const double ldp = kappa * eps;
        entries.push_back({.d_theta = d,
                           .xi = xi,
                           .kappa = kappa,
                           .delta = kTableDelta,
                           .epsilon = eps,
                           .alpha = alpha.alpha,
                           .ldp_budget = ldp,
                           .ldp_rounded = static_cast<int>(RoundHalfUp(ldp))});
      }
    }
  }
  return entries;
}

void AddBudgetCommand(CLI::App& app, Context& ctx) {
  auto opts = std::make_shared<BudgetOptions>();
  CLI::App* cmd = app.add_subcommand(
      "budget", "privacy budgets of LSHRR and LapLSH under each bound");
  cmd->add_flag("--table1", opts->table1,
                "XDP-to-LDP budget table for d in {0.05, 0.1}, delta = 0.01");
  auto* eps = cmd->add_option("--eps", opts->eps, "per-bit RR budgets")
                  ->delimiter(',');
  cmd->add_option("--xi", opts->xi, "target XDP budgets")
      ->delimiter(',')
      ->excludes(eps);
  cmd->add_option("--kappa", opts->kappa, "hash lengths")->delimiter(',');
  cmd->add_option("--d-theta,--d", opts->d_theta, "angular distances")
      ->delimiter(',')
      ->capture_default_str();
  cmd->add_option("--delta", opts->delta)->capture_default_str();
  cmd->add_option("--bounds", opts->bounds,
                  "worst_case_dp, pxdp_simple, pxdp_tight, laplsh")
      ->delimiter(',');
  cmd->add_option("--format", opts->format)
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--out", opts->out, "output file (default stdout)");
  cmd->callback([opts, &ctx] {
    const TableFormat format = *ParseTableFormat(opts->format);
    absl::StatusOr<std::string> text =
        opts->table1 ? RenderTable1(format) : RenderBudget(*opts, format, ctx.err);
    if (!text.ok()) return ctx.Fail(text.status());
    if (absl::Status s = WriteOutput(opts->out, *text, ctx.out); !s.ok()) {
      ctx.Fail(s);
    }
  });
}

}  // namespace privlsh::cli
