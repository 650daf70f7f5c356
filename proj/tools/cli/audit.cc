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
#include "privlsh/audit.hpp"
#include "privlsh/errors.hpp"
#include "privlsh/random.hpp"

namespace privlsh::cli {
namespace {

enum CheckId : std::uint64_t {
  kCollisionCheck = 1,
  kHammingCheck = 2,
  kErrorBoundCheck = 3,
  kPxdpCheck = 4,
  kLaplaceCheck = 5,
};

struct AuditOptions {
  bool toy_channel = false;
  bool collision = false;
  bool hamming_law = false;
  bool error_bound = false;
  bool pxdp = false;
  bool laplace_radius = false;
  bool all = false;
  std::vector<double> x{1.0, 0.0};
  std::vector<double> y{1.0, 1.0};
  std::vector<double> eps;
  std::vector<int> kappa;
  double delta = 0.01;
  int trials = 0;
  std::size_t n = 3;
  std::uint64_t seed = 0;
  std::string out;
};

template <typename T>
std::vector<T> OrDefault(const std::vector<T>& given, std::vector<T> fallback) {
  return given.empty() ? fallback : given;
}

int OrDefault(int given, int fallback) { return given > 0 ? given : fallback; }

Json TailJson(const TailCheck& t) {
  return Json{{"xi", t.xi},
              {"delta_bound", t.delta_bound},
              {"empirical_tail", t.empirical_tail},
              {"threshold", t.threshold},
              {"pass", t.pass}};
}

absl::StatusOr<Json> ToyChannel() {
  const std::vector<Point2d> inputs = {{0.0, 1.0}, {1.0, 0.0}, {1.0, 1.0}};
  PRIVLSH_ASSIGN_OR_RETURN(const ChannelMatrix channel,
                           Enumerate2dChannel(inputs));
  const LeakageReport leakage = HyperplaneReleaseLeakage(channel);
  Json j;
  j["inputs"] = inputs;
  j["p_one"] = channel.p_one;
  double total = 0.0;
  j["functions"] = Json::array();
  for (std::size_t f = 0; f < channel.functions.size(); ++f) {
    const DeterministicHash& h = channel.functions[f];
    std::vector<int> bits(h.outputs.begin(), h.outputs.end());
    total += h.probability;
    j["functions"].push_back(
        Json{{"outputs", bits},
             {"probability", h.probability},
             {"arc_start", h.arc_start},
             {"classes", leakage.functions[f].classes},
             {"exposed_inputs", leakage.functions[f].exposed_inputs}});
  }
  j["singleton_probability"] = leakage.singleton_probability;
  j["total_probability"] = total;
  j["pass"] = std::abs(total - 1.0) <= 1e-12;
  return j;
}

absl::StatusOr<Json> RunAudit(const AuditOptions& o, std::uint64_t seed) {
  PRIVLSH_ASSIGN_OR_RETURN(const DenseVector dx, DenseVector::Create(o.x));
  PRIVLSH_ASSIGN_OR_RETURN(const DenseVector dy, DenseVector::Create(o.y));
  const Vector x = dx;
  const Vector y = dy;
  const bool all = o.all || !(o.toy_channel || o.collision || o.hamming_law ||
                              o.error_bound || o.pxdp || o.laplace_radius);

  Json checks = Json::object();
  bool pass = true;
  auto record = [&](const char* name, Json j) {
    const bool ok = j.is_array()
                        ? std::all_of(j.begin(), j.end(),
                                      [](const Json& e) { return e["pass"]; })
                        : j["pass"].get<bool>();
    pass = pass && ok;
    checks[name] = std::move(j);
  };

  if (all || o.toy_channel) {
    PRIVLSH_ASSIGN_OR_RETURN(Json j, ToyChannel());
    record("toy_channel", std::move(j));
  }
  if (all || o.collision) {
    PRIVLSH_ASSIGN_OR_RETURN(
        const CollisionReport r,
        EstimateCollisionRate(x, y, OrDefault(o.trials, 10000),
                              DeriveSeed(seed, kCollisionCheck)));
    record("collision", Json{{"trials", r.trials},
                             {"rate", r.rate},
                             {"std_err", r.std_err},
                             {"target", r.target},
                             {"lower", r.lower},
                             {"upper", r.upper},
                             {"pass", r.pass}});
  }
  if (all || o.hamming_law) {
    Json grid = Json::array();
    for (int kappa : OrDefault(o.kappa, {20})) {
      PRIVLSH_ASSIGN_OR_RETURN(
          const HammingLawReport r,
          HammingLawCheck(x, y, kappa, OrDefault(o.trials, 1000),
                          DeriveSeed(DeriveSeed(seed, kHammingCheck), kappa)));
      grid.push_back(Json{{"kappa", r.kappa},
                          {"families", r.families},
                          {"d_theta", r.d_theta},
                          {"expected_mean", r.expected_mean},
                          {"expected_variance", r.expected_variance},
                          {"mean", r.mean},
                          {"variance", r.variance},
                          {"mean_tolerance", r.mean_tolerance},
                          {"variance_lower", r.variance_lower},
                          {"variance_upper", r.variance_upper},
                          {"mean_pass", r.mean_pass},
                          {"variance_pass", r.variance_pass},
                          {"pass", r.pass}});
    }
    record("hamming_law", std::move(grid));
  }
  if (all || o.error_bound) {
    Json grid = Json::array();
    std::uint64_t point = 0;
    for (double eps : OrDefault(o.eps, {0.0, 0.5, 1.0, 2.0})) {
      for (int kappa : OrDefault(o.kappa, {10, 20})) {
        PRIVLSH_ASSIGN_OR_RETURN(
            const ErrorBoundReport r,
            ErrorBoundCheck(eps, kappa, x, y, OrDefault(o.trials, 2000),
                            DeriveSeed(DeriveSeed(seed, kErrorBoundCheck),
                                       point++)));
        grid.push_back(Json{{"epsilon", r.epsilon},
                            {"kappa", r.kappa},
                            {"trials", r.trials},
                            {"mean_error", r.mean_error},
                            {"std_err", r.std_err},
                            {"bound", r.bound},
                            {"pass", r.pass}});
      }
    }
    record("error_bound", std::move(grid));
  }
  if (all || o.pxdp) {
    Json grid = Json::array();
    std::uint64_t point = 0;
    for (double eps : OrDefault(o.eps, {1.0})) {
      for (int kappa : OrDefault(o.kappa, {20})) {
        PRIVLSH_ASSIGN_OR_RETURN(
            const PxdpCertificate c,
            CertifyPxdp(eps, kappa, x, y, o.delta, OrDefault(o.trials, 10000),
                        DeriveSeed(DeriveSeed(seed, kPxdpCheck), point++)));
        Json j{{"epsilon", c.epsilon},
               {"kappa", c.kappa},
               {"d_theta", c.d_theta},
               {"delta", c.delta_target},
               {"trials", c.trials},
               {"simple", TailJson(c.simple)},
               {"pass", c.pass}};
        if (c.alpha) j["alpha"] = *c.alpha;
        if (c.tight) j["tight"] = TailJson(*c.tight);
        grid.push_back(std::move(j));
      }
    }
    record("pxdp", std::move(grid));
  }
  if (all || o.laplace_radius) {
    Json grid = Json::array();
    for (double eps : OrDefault(o.eps, {2.0})) {
      PRIVLSH_ASSIGN_OR_RETURN(
          const LaplaceRadiusReport r,
          LaplaceRadiusCheck(o.n, eps, OrDefault(o.trials, 10000),
                             DeriveSeed(seed, kLaplaceCheck)));
      grid.push_back(Json{{"dimension", r.dimension},
                          {"epsilon", r.epsilon},
                          {"draws", r.draws},
                          {"mean_radius", r.mean_radius},
                          {"std_err", r.std_err},
                          {"expected", r.expected},
                          {"pass", r.pass}});
    }
    record("laplace_radius", std::move(grid));
  }
  return Json{{"schema", "privlsh.audit/1"},
              {"seed", seed},
              {"checks", std::move(checks)},
              {"pass", pass}};
}

}  // namespace

void AddAuditCommand(CLI::App& app, Context& ctx) {
  auto opts = std::make_shared<AuditOptions>();
  CLI::App* cmd = app.add_subcommand(
      "audit", "analytic and Monte Carlo checks; exit 1 if any check fails");
  cmd->add_flag("--toy-channel", opts->toy_channel,
                "channel of 1-bit hashes on (0,1), (1,0), (1,1)");
  cmd->add_flag("--collision", opts->collision,
                "1-bit mismatch rate against the angular distance");
  cmd->add_flag("--hamming-law", opts->hamming_law,
                "Hamming distance mean and variance against Binomial(kappa, d)");
  cmd->add_flag("--error-bound", opts->error_bound,
                "Hamming distortion of LSHRR against 2 kappa / (1 + e^eps)");
  cmd->add_flag("--pxdp", opts->pxdp,
                "empirical privacy-loss tail against the PXDP bounds");
  cmd->add_flag("--laplace-radius", opts->laplace_radius,
                "Laplace noise norm against n / eps");
  cmd->add_flag("--all", opts->all, "every check (the default)");
  cmd->add_option("--x", opts->x, "first vector, comma separated")
      ->delimiter(',');
  cmd->add_option("--y", opts->y, "second vector, comma separated")
      ->delimiter(',');
  cmd->add_option("--eps", opts->eps)->delimiter(',');
  cmd->add_option("--kappa", opts->kappa)->delimiter(',');
  cmd->add_option("--delta", opts->delta)->capture_default_str();
  cmd->add_option("--trials", opts->trials,
                  "trials, families or draws per check (0 = check default)");
  cmd->add_option("--n", opts->n, "noise dimension for --laplace-radius")
      ->capture_default_str();
  auto* seed = cmd->add_option("--seed", opts->seed);
  cmd->add_option("--out", opts->out, "output file (default stdout)");
  cmd->callback([opts, seed, &ctx] {
    const std::uint64_t s =
        ResolveSeed(seed->count() > 0, opts->seed, "seed", ctx.err);
    absl::StatusOr<Json> report = RunAudit(*opts, s);
    if (!report.ok()) return ctx.Fail(report.status());
    if (absl::Status st = WriteOutput(opts->out, report->dump(2) + "\n", ctx.out);
        !st.ok()) {
      return ctx.Fail(st);
    }
    if (!(*report)["pass"].get<bool>()) ctx.exit_code = kExitCheckFailed;
  });
}

}  // namespace privlsh::cli
