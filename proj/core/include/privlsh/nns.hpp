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

#ifndef PRIVLSH_NNS_HPP_
#define PRIVLSH_NNS_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "privlsh/lsh.hpp"
#include "privlsh/mechanisms.hpp"
#include "privlsh/vectors.hpp"

namespace privlsh {

// Unique string ids with O(1) lookup and a precomputed lexicographic rank used
// for deterministic tie-breaking.
class IdIndex {
 public:
  static absl::StatusOr<IdIndex> Create(std::vector<std::string> ids);

  std::size_t size() const { return ids_.size(); }
  const std::string& id(std::size_t i) const { return ids_[i]; }
  const std::vector<std::string>& ids() const { return ids_; }
  // Position of id(i) in ascending lexicographic order.
  std::size_t rank(std::size_t i) const { return rank_[i]; }
  // Errors: UnknownId.
  absl::StatusOr<std::size_t> IndexOf(absl::string_view id) const;

 private:
  IdIndex() = default;

  std::vector<std::string> ids_;
  std::vector<std::size_t> rank_;
  std::unordered_map<std::string, std::size_t> lookup_;
};

// A nonempty collection of vectors of one dimension, keyed by unique ids.
class Dataset {
 public:
  static absl::StatusOr<Dataset> Create(std::vector<std::string> ids,
                                        std::vector<Vector> vectors);

  std::size_t size() const { return vectors_.size(); }
  std::size_t dimension() const { return dimension_; }
  const IdIndex& index() const { return index_; }
  const std::string& id(std::size_t i) const { return index_.id(i); }
  const Vector& vector(std::size_t i) const { return vectors_[i]; }
  std::span<const Vector> vectors() const { return vectors_; }

 private:
  Dataset(IdIndex index, std::vector<Vector> vectors, std::size_t dimension)
      : index_(std::move(index)),
        vectors_(std::move(vectors)),
        dimension_(dimension) {}

  IdIndex index_;
  std::vector<Vector> vectors_;
  std::size_t dimension_;
};

struct Neighbor {
  std::size_t index;
  double distance;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

// Neighbors of one query sorted by ascending distance, ties by ascending id.
// Holds min(k, |S| - 1) entries; `truncated` records that fewer than k exist.
struct NeighborList {
  std::size_t query_index;
  std::size_t k;
  std::vector<Neighbor> neighbors;
  bool truncated = false;
};

// k nearest neighbors of the query under angular distance, query excluded.
// Errors: UnknownId, EmptyDataset (no other point), InvalidParams (k < 1).
absl::StatusOr<NeighborList> ExactKnn(const Dataset& dataset,
                                      absl::string_view query_id, int k);
absl::StatusOr<NeighborList> ExactKnnAt(const Dataset& dataset,
                                        std::size_t query_index, int k);

// k nearest neighbors in Hamming distance over `hashes`, which are aligned with
// `ids`. Distances are raw bit counts.
// Errors: UnknownId, DimensionMismatch (mixed widths), LengthMismatch.
absl::StatusOr<NeighborList> ApproxKnn(const IdIndex& ids,
                                       std::span<const BitString> hashes,
                                       absl::string_view query_id, int k);
absl::StatusOr<NeighborList> ApproxKnnAt(const IdIndex& ids,
                                         std::span<const BitString> hashes,
                                         std::size_t query_index, int k);

// Average angular distance of `approx` minus that of `exact`, both measured in
// the original space from the query. Averages over the list length.
// Errors: LengthMismatch (different sizes or queries).
absl::StatusOr<double> UtilityLoss(const Dataset& dataset,
                                   const NeighborList& approx,
                                   const NeighborList& exact);

struct MechanismConfig {
  MechanismKind kind = MechanismKind::kLsh;
  double epsilon = 0.0;  // unused for kLsh and kUniform
};

struct QueryOutcome {
  std::size_t query_index;
  double utility_loss;
  NeighborList exact;
  NeighborList approx;
};

struct ExperimentResult {
  std::vector<QueryOutcome> queries;  // in the order requested
  std::vector<BitString> outputs;     // one published bit string per user
  double mean_utility_loss = 0.0;
  double std_err = 0.0;  // of the mean, over queries
  bool truncated = false;
};

// Runs the matching protocol: every user publishes a mechanism output under
// the one shared `family`; each query's Hamming neighbors among the
// published outputs are scored against its true angular neighbors. User i's
// noise comes from CounterRng(noise_seed, i), so results are deterministic
// given (dataset, family, config, noise_seed) and independent of query order.
absl::StatusOr<ExperimentResult> RunMatchingExperiment(
    const Dataset& dataset, const ProjectionFamily& family,
    const MechanismConfig& config, int k,
    std::span<const std::size_t> queries, std::uint64_t noise_seed);

// Publishes one output per user with the noise layout of
// RunMatchingExperiment. LapLSH perturbs the normalized input.
absl::StatusOr<std::vector<BitString>> PublishOutputs(
    const Dataset& dataset, const ProjectionFamily& family,
    const MechanismConfig& config, std::uint64_t noise_seed);

}  // namespace privlsh

#endif  // PRIVLSH_NNS_HPP_
