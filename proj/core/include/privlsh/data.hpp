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

#ifndef PRIVLSH_DATA_HPP_
#define PRIVLSH_DATA_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "privlsh/nns.hpp"

namespace privlsh {

// One (user, item, value) observation: a rating or a visit count.
struct EventRecord {
  std::string user_id;
  std::uint32_t item_index;
  double value;

  friend bool operator==(const EventRecord&, const EventRecord&) = default;
};

enum class EventFormat { kCsv, kTsv };

struct LoadOptions {
  EventFormat format = EventFormat::kCsv;
  // Items must satisfy item_index < dimension.
  std::size_t dimension = 0;
  bool has_header = false;
};

// Parses `user_id,item_index,value` lines (tab-separated for kTsv). Blank
// lines are skipped. Errors: IoError, ParseError naming the line.
absl::StatusOr<std::vector<EventRecord>> ParseEvents(absl::string_view text,
                                                     const LoadOptions& options);
absl::StatusOr<std::vector<EventRecord>> LoadEvents(const std::string& path,
                                                    const LoadOptions& options);

enum class VectorMode {
  // Subtract each user's mean over rated items; unrated items stay 0.
  kRatingCentered,
  // Use values as given (visit counts).
  kRawCounts,
};

// A dataset together with users dropped during construction.
struct BuiltDataset {
  Dataset dataset;
  // Users whose vector came out all-zero (angular distance is undefined).
  std::vector<std::string> dropped_users;
};

// Builds one sparse vector per user, users sorted by id. A repeated
// (user, item) pair keeps the last value seen. Errors: EmptyDataset when every
// user is dropped, InvalidParams for out-of-range items.
absl::StatusOr<BuiltDataset> BuildVectors(const std::vector<EventRecord>& events,
                                          std::size_t dimension,
                                          VectorMode mode);

// Keeps the `dimension` items with the most nonzero entries across users
// (ties to the lower index), re-indexed in ascending original order; users
// left all-zero are dropped. Output vectors are sparse.
absl::StatusOr<BuiltDataset> TruncateDimensions(const Dataset& dataset,
                                                std::size_t dimension);

struct SynthSpec {
  std::size_t dimension = 100;
  std::size_t clusters = 4;
  std::size_t users_per_cluster = 50;
  // Angular distance between each member and its cluster center, in (0, 0.5).
  double spread = 0.05;
  std::uint64_t seed = 0;
};

// Clustered unit vectors: orthonormal centers (pairwise angular distance
// 0.5), members rotated by exactly `spread` towards a random direction
// orthogonal to their center. Ids are "c<cluster>u<member>", zero padded.
// Errors: InvalidParams (bad counts, spread, or clusters > dimension).
absl::StatusOr<Dataset> Synthesize(const SynthSpec& spec);

// Snapshot text format:
//   privlsh-dataset v1
//   n <dimension>
//   users <count>
//   <id>\t<index>:<value> <index>:<value> ...
// Rows sorted by id, entries by index, values printed round-trip exact.
std::string SerializeDataset(const Dataset& dataset);
absl::StatusOr<Dataset> ParseDataset(absl::string_view text);

}  // namespace privlsh

#endif  // PRIVLSH_DATA_HPP_
