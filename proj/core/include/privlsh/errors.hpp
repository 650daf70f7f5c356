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

#ifndef PRIVLSH_ERRORS_HPP_
#define PRIVLSH_ERRORS_HPP_

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/string_view.h"

// Error kinds used across the library. Each kind maps to a fixed status code
// and a fixed message prefix so callers can match on either.
namespace privlsh {

inline constexpr absl::string_view kZeroVector = "zero vector";
inline constexpr absl::string_view kDimensionMismatch = "dimension mismatch";
inline constexpr absl::string_view kInvalidParams = "invalid params";
inline constexpr absl::string_view kInfeasible = "infeasible";
inline constexpr absl::string_view kUnknownId = "unknown id";
inline constexpr absl::string_view kEmptyDataset = "empty dataset";
inline constexpr absl::string_view kLengthMismatch = "length mismatch";
inline constexpr absl::string_view kParseError = "parse error";
inline constexpr absl::string_view kIoError = "io error";

inline absl::Status ZeroVectorError(absl::string_view detail = "") {
  return absl::InvalidArgumentError(absl::StrCat(kZeroVector, ": ", detail));
}

inline absl::Status DimensionMismatchError(absl::string_view detail = "") {
  return absl::InvalidArgumentError(
      absl::StrCat(kDimensionMismatch, ": ", detail));
}

inline absl::Status InvalidParamsError(absl::string_view detail = "") {
  return absl::InvalidArgumentError(absl::StrCat(kInvalidParams, ": ", detail));
}

// Out-of-range arguments to metric transforms.
inline absl::Status OutOfRangeError(absl::string_view detail = "") {
  return absl::OutOfRangeError(detail);
}

inline absl::Status InfeasibleError(absl::string_view detail = "") {
  return absl::FailedPreconditionError(absl::StrCat(kInfeasible, ": ", detail));
}

inline absl::Status UnknownIdError(absl::string_view detail = "") {
  return absl::NotFoundError(absl::StrCat(kUnknownId, ": ", detail));
}

inline absl::Status EmptyDatasetError(absl::string_view detail = "") {
  return absl::FailedPreconditionError(
      absl::StrCat(kEmptyDataset, ": ", detail));
}

inline absl::Status LengthMismatchError(absl::string_view detail = "") {
  return absl::InvalidArgumentError(
      absl::StrCat(kLengthMismatch, ": ", detail));
}

inline absl::Status ParseError(int line, absl::string_view detail) {
  return absl::InvalidArgumentError(
      absl::StrCat(kParseError, " at line ", line, ": ", detail));
}

inline absl::Status IoError(absl::string_view detail) {
  return absl::UnavailableError(absl::StrCat(kIoError, ": ", detail));
}

}  // namespace privlsh

// Propagates a non-OK status out of the enclosing function.
#define PRIVLSH_RETURN_IF_ERROR(expr)            \
  do {                                           \
    if (absl::Status _st = (expr); !_st.ok()) {  \
      return _st;                                \
    }                                            \
  } while (0)

#define PRIVLSH_CONCAT_INNER_(a, b) a##b
#define PRIVLSH_CONCAT_(a, b) PRIVLSH_CONCAT_INNER_(a, b)

// Evaluates a StatusOr expression, returning on error and otherwise moving
// the value into `lhs`.
#define PRIVLSH_ASSIGN_OR_RETURN(lhs, expr) \
  PRIVLSH_ASSIGN_OR_RETURN_IMPL_(PRIVLSH_CONCAT_(_statusor_, __LINE__), lhs, expr)

#define PRIVLSH_ASSIGN_OR_RETURN_IMPL_(tmp, lhs, expr) \
  auto tmp = (expr);                                   \
  if (!tmp.ok()) return tmp.status();                  \
  lhs = std::move(tmp).value()

#endif  // PRIVLSH_ERRORS_HPP_
