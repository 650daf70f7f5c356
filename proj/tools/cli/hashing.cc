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

#include <memory>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "cli/cli.hpp"
#include "cli/commands.hpp"
#include "cli/output.hpp"
#include "privlsh/errors.hpp"
#include "privlsh/lsh.hpp"
#include "privlsh/mechanisms.hpp"
#include "privlsh/random.hpp"

namespace privlsh::cli {
namespace {

constexpr absl::string_view kHashMagic = "privlsh-hashes v1";

struct HashOptions {
  DatasetFlags data;
  int kappa = 20;
  std::string mechanism = "lsh";
  double eps = 0.0;
  std::uint64_t family_seed = 0;
  std::uint64_t noise_seed = 0;
  std::string out;
};

struct PerturbOptions {
  std::string in;
  double eps = 0.0;
  std::uint64_t noise_seed = 0;
  std::string out;
};

struct KnnOptions {
  DatasetFlags data;
  std::vector<std::string> queries;
  int k = 10;
  std::string hashes;
  std::string format = "csv";
  std::string out;
};

struct DatasetOptions {
  DatasetFlags data;
  std::string out;
};

void ReportDropped(const BuiltDataset& built, std::ostream& err) {
  if (!built.dropped_users.empty()) {
    err << "privlsh: dropped " << built.dropped_users.size()
        << " all-zero users\n";
  }
}

absl::StatusOr<std::string> RunHash(const HashOptions& o, bool family_given,
                                    bool noise_given, std::ostream& err) {
  PRIVLSH_ASSIGN_OR_RETURN(const MechanismKind kind,
                           ParseMechanismKind(o.mechanism));
  PRIVLSH_ASSIGN_OR_RETURN(const DatasetSource source, ToSource(o.data));
  PRIVLSH_ASSIGN_OR_RETURN(const BuiltDataset built, LoadDataset(source));
  ReportDropped(built, err);
  const Dataset& dataset = built.dataset;
  if (o.kappa < 1) return InvalidParamsError("kappa must be >= 1");
  const std::uint64_t family_seed =
      ResolveSeed(family_given, o.family_seed, "family-seed", err);
  std::uint64_t noise_seed = o.noise_seed;
  if (kind != MechanismKind::kLsh) {
    noise_seed = ResolveSeed(noise_given, o.noise_seed, "noise-seed", err);
  }
  PRIVLSH_ASSIGN_OR_RETURN(
      const ProjectionFamily family,
      ProjectionFamily::Sample(dataset.dimension(), o.kappa, family_seed));
  PRIVLSH_ASSIGN_OR_RETURN(
      std::vector<BitString> outputs,
      PublishOutputs(dataset, family, {.kind = kind, .epsilon = o.eps},
                     noise_seed));
  HashFile file{.kappa = static_cast<std::size_t>(o.kappa),
                .ids = dataset.index().ids(),
                .bits = std::move(outputs)};
  return SerializeHashes(file);
}

absl::StatusOr<std::string> RunPerturb(const PerturbOptions& o,
                                       bool noise_given, std::ostream& err) {
  PRIVLSH_ASSIGN_OR_RETURN(const std::string text, ReadFile(o.in));
  PRIVLSH_ASSIGN_OR_RETURN(HashFile file, ParseHashes(text));
  const std::uint64_t noise_seed =
      ResolveSeed(noise_given, o.noise_seed, "noise-seed", err);
  for (std::size_t i = 0; i < file.bits.size(); ++i) {
    CounterRng rng(noise_seed, i);
    PRIVLSH_ASSIGN_OR_RETURN(file.bits[i],
                             BitwiseRandomizedResponse(o.eps, file.bits[i], rng));
  }
  return SerializeHashes(file);
}

absl::StatusOr<std::string> RunKnn(const KnnOptions& o, std::ostream& err) {
  PRIVLSH_ASSIGN_OR_RETURN(const TableFormat format,
                           ParseTableFormat(o.format));
  PRIVLSH_ASSIGN_OR_RETURN(const DatasetSource source, ToSource(o.data));
  PRIVLSH_ASSIGN_OR_RETURN(const BuiltDataset built, LoadDataset(source));
  ReportDropped(built, err);
  const Dataset& dataset = built.dataset;

  std::optional<HashFile> hashes;
  if (!o.hashes.empty()) {
    PRIVLSH_ASSIGN_OR_RETURN(const std::string text, ReadFile(o.hashes));
    PRIVLSH_ASSIGN_OR_RETURN(hashes, ParseHashes(text));
  }
  std::vector<BitString> aligned;
  if (hashes) {
    if (hashes->ids.size() != dataset.size()) {
      return LengthMismatchError(absl::StrCat(hashes->ids.size(),
                                              " hashes for ", dataset.size(),
                                              " users"));
    }
    aligned.assign(dataset.size(), hashes->bits.front());
    for (std::size_t r = 0; r < hashes->ids.size(); ++r) {
      PRIVLSH_ASSIGN_OR_RETURN(const std::size_t i,
                               dataset.index().IndexOf(hashes->ids[r]));
      aligned[i] = hashes->bits[r];
    }
  }

  std::vector<std::string> queries = o.queries;
  if (queries.empty()) {
    queries = dataset.index().ids();
    std::sort(queries.begin(), queries.end());
  }
  Table table("privlsh.knn/1",
              {"query_id", "rank", "neighbor_id", "distance", "metric"});
  for (const std::string& q : queries) {
    absl::StatusOr<NeighborList> list =
        hashes ? ApproxKnn(dataset.index(), aligned, q, o.k)
               : ExactKnn(dataset, q, o.k);
    if (!list.ok()) return list.status();
    if (list->truncated) {
      err << "privlsh: query " << q << " has only " << list->neighbors.size()
          << " neighbors\n";
    }
    for (std::size_t r = 0; r < list->neighbors.size(); ++r) {
      const Neighbor& n = list->neighbors[r];
      Json row{{"query_id", q},
               {"rank", r + 1},
               {"neighbor_id", dataset.id(n.index)},
               {"metric", hashes ? "hamming" : "angular"}};
      if (hashes) {
        row["distance"] = static_cast<std::int64_t>(n.distance);
      } else {
        row["distance"] = n.distance;
      }
      table.AddRow(std::move(row));
    }
  }
  return table.Render(format);
}

}  // namespace

std::string SerializeHashes(const HashFile& file) {
  std::string out = absl::StrCat(kHashMagic, "\nkappa ", file.kappa,
                                 "\nusers ", file.ids.size(), "\n");
  for (std::size_t i = 0; i < file.ids.size(); ++i) {
    absl::StrAppend(&out, file.ids[i], "\t", file.bits[i].ToString(), "\n");
  }
  return out;
}

absl::StatusOr<HashFile> ParseHashes(absl::string_view text) {
  std::vector<absl::string_view> lines = absl::StrSplit(text, '\n');
  while (!lines.empty() && absl::StripAsciiWhitespace(lines.back()).empty()) {
    lines.pop_back();
  }
  if (lines.size() < 3 || absl::StripAsciiWhitespace(lines[0]) != kHashMagic) {
    return ParseError(1, absl::StrCat("expected '", kHashMagic, "'"));
  }
  HashFile file;
  std::size_t users = 0;
  if (!absl::ConsumePrefix(&lines[1], "kappa ") ||
      !absl::SimpleAtoi(lines[1], &file.kappa) || file.kappa == 0) {
    return ParseError(2, "expected 'kappa <width>'");
  }
  if (!absl::ConsumePrefix(&lines[2], "users ") ||
      !absl::SimpleAtoi(lines[2], &users)) {
    return ParseError(3, "expected 'users <count>'");
  }
  if (lines.size() - 3 != users || users == 0) {
    return ParseError(3, absl::StrCat("header says ", users, " users, found ",
                                      lines.size() - 3, " rows"));
  }
  for (std::size_t r = 3; r < lines.size(); ++r) {
    const int line_number = static_cast<int>(r) + 1;
    std::vector<absl::string_view> fields = absl::StrSplit(lines[r], '\t');
    if (fields.size() != 2 || fields[0].empty()) {
      return ParseError(line_number, "expected '<id>\\t<bits>'");
    }
    absl::StatusOr<BitString> bits =
        BitString::FromString(absl::StripAsciiWhitespace(fields[1]));
    if (!bits.ok() || bits->width() != file.kappa) {
      return ParseError(line_number,
                        absl::StrCat("expected ", file.kappa, " bits"));
    }
    file.ids.emplace_back(fields[0]);
    file.bits.push_back(*std::move(bits));
  }
  return file;
}

void AddHashCommand(CLI::App& app, Context& ctx) {
  auto opts = std::make_shared<HashOptions>();
  CLI::App* cmd = app.add_subcommand(
      "hash", "publish one kappa-bit output per user of a dataset");
  AddDatasetFlags(*cmd, opts->data);
  cmd->add_option("--kappa", opts->kappa)->capture_default_str();
  cmd->add_option("--mechanism", opts->mechanism)
      ->check(CLI::IsMember({"lsh", "lshrr", "laplsh", "uniform"}))
      ->capture_default_str();
  cmd->add_option("--eps", opts->eps, "mechanism budget");
  auto* family = cmd->add_option("--family-seed", opts->family_seed);
  auto* noise = cmd->add_option("--noise-seed", opts->noise_seed);
  cmd->add_option("--out", opts->out, "output file (default stdout)");
  cmd->callback([opts, family, noise, &ctx] {
    absl::StatusOr<std::string> text =
        RunHash(*opts, family->count() > 0, noise->count() > 0, ctx.err);
    if (!text.ok()) return ctx.Fail(text.status());
    if (absl::Status s = WriteOutput(opts->out, *text, ctx.out); !s.ok()) {
      ctx.Fail(s);
    }
  });
}

void AddPerturbCommand(CLI::App& app, Context& ctx) {
  auto opts = std::make_shared<PerturbOptions>();
  CLI::App* cmd = app.add_subcommand(
      "perturb", "apply randomized response to every bit of a hash file");
  cmd->add_option("--in", opts->in, "hash file")->required();
  cmd->add_option("--eps", opts->eps, "per-bit budget")->required();
  auto* noise = cmd->add_option("--noise-seed", opts->noise_seed);
  cmd->add_option("--out", opts->out, "output file (default stdout)");
  cmd->callback([opts, noise, &ctx] {
    absl::StatusOr<std::string> text =
        RunPerturb(*opts, noise->count() > 0, ctx.err);
    if (!text.ok()) return ctx.Fail(text.status());
    if (absl::Status s = WriteOutput(opts->out, *text, ctx.out); !s.ok()) {
      ctx.Fail(s);
    }
  });
}

void AddKnnCommand(CLI::App& app, Context& ctx) {
  auto opts = std::make_shared<KnnOptions>();
  CLI::App* cmd = app.add_subcommand(
      "knn", "exact angular neighbors, or Hamming neighbors over a hash file");
  AddDatasetFlags(*cmd, opts->data);
  cmd->add_option("--query", opts->queries, "query ids (default all)")
      ->delimiter(',');
  cmd->add_option("--k", opts->k)->capture_default_str();
  cmd->add_option("--hashes", opts->hashes,
                  "hash file; switches to Hamming neighbors");
  cmd->add_option("--format", opts->format)
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--out", opts->out, "output file (default stdout)");
  cmd->callback([opts, &ctx] {
    absl::StatusOr<std::string> text = RunKnn(*opts, ctx.err);
    if (!text.ok()) return ctx.Fail(text.status());
    if (absl::Status s = WriteOutput(opts->out, *text, ctx.out); !s.ok()) {
      ctx.Fail(s);
    }
  });
}

void AddDatasetCommand(CLI::App& app, Context& ctx) {
  auto opts = std::make_shared<DatasetOptions>();
  CLI::App* cmd = app.add_subcommand(
      "dataset", "write a dataset snapshot from events or synthetic clusters");
  AddDatasetFlags(*cmd, opts->data);
  cmd->add_option("--out", opts->out, "output file (default stdout)");
  cmd->callback([opts, &ctx] {
    absl::StatusOr<DatasetSource> source = ToSource(opts->data);
    if (!source.ok()) return ctx.Fail(source.status());
    absl::StatusOr<BuiltDataset> built = LoadDataset(*source);
    if (!built.ok()) return ctx.Fail(built.status());
    ReportDropped(*built, ctx.err);
    if (absl::Status s =
            WriteOutput(opts->out, SerializeDataset(built->dataset), ctx.out);
        !s.ok()) {
      ctx.Fail(s);
    }
  });
}

}  // namespace privlsh::cli
