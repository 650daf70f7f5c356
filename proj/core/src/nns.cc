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

#include "privlsh/nns.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "absl/strings/str_cat.h"
#include "privlsh/errors.hpp"
#include "privlsh/random.hpp"

namespace privlsh {
namespace {

absl::Status ValidateK(int k) {
  if (k < 1) return InvalidParamsError(absl::StrCat("k must be >= 1, got ", k));
  return absl::OkStatus();
}

// Picks the k smallest (distance, rank) candidates.
NeighborList SelectNearest(const IdIndex& ids, std::size_t query_index,
                           std::vector<Neighbor> candidates, int k) {
  auto less = [&](const Neighbor& a, const Neighbor& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    return ids.rank(a.index) < ids.rank(b.index);
  };
  NeighborList out{.query_index = query_index,
                   .k = static_cast<std::size_t>(k),
                   .neighbors = {},
                   .truncated = candidates.size() < static_cast<std::size_t>(k)};
  const std::size_t take =
      std::min(candidates.size(), static_cast<std::size_t>(k));
  std::partial_sort(candidates.begin(), candidates.begin() + take,
                    candidates.end(), less);
  candidates.resize(take);
  out.neighbors = std::move(candidates);
  return out;
}

double MeanDistanceFrom(const Dataset& dataset, const Vector& query,
                        const NeighborList& list) {
  double sum = 0.0;
  for (const Neighbor& n : list.neighbors) {
    sum += *AngularDistance(query, dataset.vector(n.index));
  }
  return sum / static_cast<double>(list.neighbors.size());
}

}  // namespace

absl::StatusOr<IdIndex> IdIndex::Create(std::vector<std::string> ids) {
  IdIndex index;
  index.lookup_.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (!index.lookup_.emplace(ids[i], i).second) {
      return InvalidParamsError(absl::StrCat("duplicate id '", ids[i], "'"));
    }
  }
  std::vector<std::size_t> order(ids.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return ids[a] < ids[b]; });
  index.rank_.resize(ids.size());
  for (std::size_t r = 0; r < order.size(); ++r) index.rank_[order[r]] = r;
  index.ids_ = std::move(ids);
  return index;
}

absl::StatusOr<std::size_t> IdIndex::IndexOf(absl::string_view id) const {
  auto it = lookup_.find(std::string(id));
  if (it == lookup_.end()) return UnknownIdError(id);
  return it->second;
}

absl::StatusOr<Dataset> Dataset::Create(std::vector<std::string> ids,
                                        std::vector<Vector> vectors) {
  if (vectors.empty()) return EmptyDatasetError("no vectors");
  if (ids.size() != vectors.size()) {
    return LengthMismatchError(absl::StrCat(ids.size(), " ids for ",
                                            vectors.size(), " vectors"));
  }
  const std::size_t dimension = Dimension(vectors.front());
  for (const Vector& v : vectors) {
    if (Dimension(v) != dimension) {
      return DimensionMismatchError("dataset vectors differ in dimension");
    }
  }
  PRIVLSH_ASSIGN_OR_RETURN(IdIndex index, IdIndex::Create(std::move(ids)));
  return Dataset(std::move(index), std::move(vectors), dimension);
}

absl::StatusOr<NeighborList> ExactKnn(const Dataset& dataset,
                                      absl::string_view query_id, int k) {
  PRIVLSH_ASSIGN_OR_RETURN(const std::size_t q,
                           dataset.index().IndexOf(query_id));
  return ExactKnnAt(dataset, q, k);
}

absl::StatusOr<NeighborList> ExactKnnAt(const Dataset& dataset,
                                        std::size_t query_index, int k) {
  PRIVLSH_RETURN_IF_ERROR(ValidateK(k));
  if (query_index >= dataset.size()) {
    return UnknownIdError(absl::StrCat("index ", query_index));
  }
  if (dataset.size() < 2) return EmptyDatasetError("no candidate neighbors");
  const Vector& query = dataset.vector(query_index);
  std::vector<Neighbor> candidates;
  candidates.reserve(dataset.size() - 1);
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    if (i == query_index) continue;
    PRIVLSH_ASSIGN_OR_RETURN(const double d,
                             AngularDistance(query, dataset.vector(i)));
    candidates.push_back({i, d});
  }
  return SelectNearest(dataset.index(), query_index, std::move(candidates), k);
}

absl::StatusOr<NeighborList> ApproxKnn(const IdIndex& ids,
                                       std::span<const BitString> hashes,
                                       absl::string_view query_id, int k) {
  PRIVLSH_ASSIGN_OR_RETURN(const std::size_t q, ids.IndexOf(query_id));
  return ApproxKnnAt(ids, hashes, q, k);
}

absl::StatusOr<NeighborList> ApproxKnnAt(const IdIndex& ids,
                                         std::span<const BitString> hashes,
                                         std::size_t query_index, int k) {
  PRIVLSH_RETURN_IF_ERROR(ValidateK(k));
  if (hashes.size() != ids.size()) {
    return LengthMismatchError(absl::StrCat(hashes.size(), " hashes for ",
                                            ids.size(), " ids"));
  }
  if (query_index >= hashes.size()) {
    return UnknownIdError(absl::StrCat("index ", query_index));
  }
  if (hashes.size() < 2) return EmptyDatasetError("no candidate neighbors");
  const BitString& query = hashes[query_index];
  std::vector<Neighbor> candidates;
  candidates.reserve(hashes.size() - 1);
  for (std::size_t i = 0; i < hashes.size(); ++i) {
    if (i == query_index) continue;
    PRIVLSH_ASSIGN_OR_RETURN(const int d, HammingDistance(query, hashes[i]));
    candidates.push_back({i, static_cast<double>(d)});
  }
  return SelectNearest(ids, query_index, std::move(candidates), k);
}

absl::StatusOr<double> UtilityLoss(const Dataset& dataset,
                                   const NeighborList& approx,
                                   const NeighborList& exact) {
  if (approx.query_index != exact.query_index) {
    return LengthMismatchError("neighbor lists belong to different queries");
  }
  if (approx.neighbors.size() != exact.neighbors.size()) {
    return LengthMismatchError(absl::StrCat(approx.neighbors.size(), " vs ",
                                            exact.neighbors.size(),
                                            " neighbors"));
  }
  if (exact.neighbors.empty()) return LengthMismatchError("empty lists");
  if (approx.query_index >= dataset.size()) {
    return UnknownIdError(absl::StrCat("index ", approx.query_index));
  }
  const Vector& query = dataset.vector(approx.query_index);
  return MeanDistanceFrom(dataset, query, approx) -
         MeanDistanceFrom(dataset, query, exact);
}

absl::StatusOr<std::vector<BitString>> PublishOutputs(
    const Dataset& dataset, const ProjectionFamily& family,
    const MechanismConfig& config, std::uint64_t noise_seed) {
  if (family.dimension() != dataset.dimension()) {
    return DimensionMismatchError(absl::StrCat(
        "family dimension ", family.dimension(), " vs dataset dimension ",
        dataset.dimension()));
  }
  std::vector<BitString> outputs;
  outputs.reserve(dataset.size());
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    CounterRng rng(noise_seed, i);
    const Vector& x = dataset.vector(i);
    switch (config.kind) {
      case MechanismKind::kLsh: {
        PRIVLSH_ASSIGN_OR_RETURN(BitString bits, family.Hash(x));
        outputs.push_back(std::move(bits));
        break;
      }
      case MechanismKind::kLshrr: {
        PRIVLSH_ASSIGN_OR_RETURN(MechanismOutput out,
                                 Lshrr(family, config.epsilon, x, rng));
        outputs.push_back(std::move(out.bits));
        break;
      }
      case MechanismKind::kLapLsh: {
        PRIVLSH_ASSIGN_OR_RETURN(const DenseVector unit, Normalize(ToDense(x)));
        PRIVLSH_ASSIGN_OR_RETURN(MechanismOutput out,
                                 LapLsh(family, config.epsilon, unit, rng));
        outputs.push_back(std::move(out.bits));
        break;
      }
      case MechanismKind::kUniform: {
        PRIVLSH_ASSIGN_OR_RETURN(BitString bits,
                                 UniformBits(family.width(), rng));
        outputs.push_back(std::move(bits));
        break;
      }
    }
  }
  return outputs;
}

absl::StatusOr<ExperimentResult> RunMatchingExperiment(
    const Dataset& dataset, const ProjectionFamily& family,
    const MechanismConfig& config, int k,
    std::span<const std::size_t> queries, std::uint64_t noise_seed) {
  PRIVLSH_RETURN_IF_ERROR(ValidateK(k));
  if (queries.empty()) return InvalidParamsError("no queries");
  ExperimentResult result;
  PRIVLSH_ASSIGN_OR_RETURN(result.outputs,
                           PublishOutputs(dataset, family, config, noise_seed));
  result.queries.reserve(queries.size());
  for (std::size_t q : queries) {
    PRIVLSH_ASSIGN_OR_RETURN(NeighborList exact, ExactKnnAt(dataset, q, k));
    PRIVLSH_ASSIGN_OR_RETURN(
        NeighborList approx,
        ApproxKnnAt(dataset.index(), result.outputs, q, k));
    PRIVLSH_ASSIGN_OR_RETURN(const double loss,
                             UtilityLoss(dataset, approx, exact));
    result.truncated |= exact.truncated;
    result.queries.push_back(
        {q, loss, std::move(exact), std::move(approx)});
  }
  double sum = 0.0;
  for (const QueryOutcome& o : result.queries) sum += o.utility_loss;
  const double count = static_cast<double>(result.queries.size());
  result.mean_utility_loss = sum / count;
  if (result.queries.size() > 1) {
    double ss = 0.0;
    for (const QueryOutcome& o : result.queries) {
      const double dev = o.utility_loss - result.mean_utility_loss;
      ss += dev * dev;
    }
    result.std_err = std::sqrt(ss / (count - 1.0) / count);
  }
  return result;
}

}  // namespace privlsh
