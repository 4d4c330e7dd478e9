#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qsfit {

/// Category tag carried by every library error. The CLI maps categories to
/// exit codes, and select_model() embeds them in per-family outcomes.
enum class ErrorKind {
  Schema,
  Order,
  Unit,
  Scale,
  Pole,
  DegenerateData,
  NonFinite,
  Unrepresentable,
  Noise,
  MixedSeries,
  InsufficientOverlap,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Schema: return "SchemaError";
    case ErrorKind::Order: return "OrderError";
    case ErrorKind::Unit: return "UnitError";
    case ErrorKind::Scale: return "ScaleError";
    case ErrorKind::Pole: return "PoleError";
    case ErrorKind::DegenerateData: return "DegenerateDataError";
    case ErrorKind::NonFinite: return "NonFiniteError";
    case ErrorKind::Unrepresentable: return "UnrepresentableError";
    case ErrorKind::Noise: return "NoiseError";
    case ErrorKind::MixedSeries: return "MixedSeriesError";
    case ErrorKind::InsufficientOverlap: return "InsufficientOverlapError";
  }
  return "Error";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

namespace detail {
template <ErrorKind K>
class TaggedError : public Error {
 public:
  explicit TaggedError(const std::string& what) : Error(K, what) {}
};
}  // namespace detail

using SchemaError = detail::TaggedError<ErrorKind::Schema>;
using OrderError = detail::TaggedError<ErrorKind::Order>;
using UnitError = detail::TaggedError<ErrorKind::Unit>;
using ScaleError = detail::TaggedError<ErrorKind::Scale>;
using PoleError = detail::TaggedError<ErrorKind::Pole>;
using DegenerateDataError = detail::TaggedError<ErrorKind::DegenerateData>;
using NonFiniteError = detail::TaggedError<ErrorKind::NonFinite>;
using UnrepresentableError = detail::TaggedError<ErrorKind::Unrepresentable>;
using NoiseError = detail::TaggedError<ErrorKind::Noise>;
using MixedSeriesError = detail::TaggedError<ErrorKind::MixedSeries>;
using InsufficientOverlapError =
    detail::TaggedError<ErrorKind::InsufficientOverlap>;

}  // namespace qsfit
