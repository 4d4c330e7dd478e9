#pragma once

// Candidate occupation-number families evaluated on log-log coordinates:
// x is ln(income), y is ln(cumulative percent of population at or above x).
//
//   FermiDirac      y = c / (exp((x - mu)/T) + 1)
//   BoseEinstein    y = c / (exp((x - mu)/T) - 1)
//   BoltzmannGibbs  y = c * exp(-(x - mu)/T)
//
// For BoltzmannGibbs only the amplitude c*exp(mu/T) is identifiable.

#include <array>
#include <cmath>
#include <concepts>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "qsfit/errors.hpp"

namespace qsfit {

enum class ModelFamily { FermiDirac, BoseEinstein, BoltzmannGibbs };

inline constexpr std::array<ModelFamily, 3> kAllFamilies = {
    ModelFamily::FermiDirac, ModelFamily::BoseEinstein,
    ModelFamily::BoltzmannGibbs};

inline constexpr double kDefaultPoleGuard = 1e-9;

inline std::string_view to_string(ModelFamily family) {
  switch (family) {
    case ModelFamily::FermiDirac: return "FermiDirac";
    case ModelFamily::BoseEinstein: return "BoseEinstein";
    case ModelFamily::BoltzmannGibbs: return "BoltzmannGibbs";
  }
  return "?";
}

/// Short CLI spelling: fd, be, bg.
inline std::string_view short_name(ModelFamily family) {
  switch (family) {
    case ModelFamily::FermiDirac: return "fd";
    case ModelFamily::BoseEinstein: return "be";
    case ModelFamily::BoltzmannGibbs: return "bg";
  }
  return "?";
}

inline std::optional<ModelFamily> parse_family(std::string_view text) {
  for (ModelFamily f : kAllFamilies) {
    if (text == short_name(f) || text == to_string(f)) return f;
  }
  return std::nullopt;
}

template <std::floating_point Real>
struct BasicModelParams {
  Real temperature{1};         // T > 0, ln-income units
  Real chemical_potential{0};  // mu, ln-income units
  Real degeneracy{1};          // c > 0, ln-percent units

  bool valid() const {
    return temperature > 0 && degeneracy > 0 && std::isfinite(temperature) &&
           std::isfinite(degeneracy) && std::isfinite(chemical_potential);
  }

  /// c * exp(mu / T); the only identifiable BoltzmannGibbs quantity.
  Real amplitude() const {
    return degeneracy * std::exp(chemical_potential / temperature);
  }

  bool operator==(const BasicModelParams&) const = default;
};

using ModelParams = BasicModelParams<double>;

template <std::floating_point Real>
struct BasicGradient {
  Real d_temperature{0};
  Real d_chemical_potential{0};
  Real d_degeneracy{0};
};

using Gradient = BasicGradient<double>;

namespace detail {

template <typename Real>
void check_pole(ModelFamily family, const BasicModelParams<Real>& p, Real x,
                Real pole_guard) {
  if (family == ModelFamily::BoseEinstein &&
      std::abs(x - p.chemical_potential) < pole_guard) {
    std::ostringstream os;
    os << "BoseEinstein evaluated at its pole: x=" << x
       << " mu=" << p.chemical_potential;
    throw PoleError(os.str());
  }
}

// 1 / (exp(z) + 1) without overflow for large |z|.
template <typename Real>
Real fermi(Real z) {
  if (z > 0) {
    Real e = std::exp(-z);
    return e / (1 + e);
  }
  return 1 / (std::exp(z) + 1);
}

}  // namespace detail

/// Model value at x. Throws PoleError for BoseEinstein within pole_guard of mu.
template <std::floating_point Real>
Real eval(ModelFamily family, const BasicModelParams<Real>& p, Real x,
          Real pole_guard = Real(kDefaultPoleGuard)) {
  detail::check_pole(family, p, x, pole_guard);
  const Real z = (x - p.chemical_potential) / p.temperature;
  switch (family) {
    case ModelFamily::FermiDirac:
      return p.degeneracy * detail::fermi(z);
    case ModelFamily::BoseEinstein:
      return p.degeneracy / std::expm1(z);
    case ModelFamily::BoltzmannGibbs:
      return p.degeneracy * std::exp(-z);
  }
  return Real(0);
}

/// Closed-form partial derivatives of eval() with respect to (T, mu, c).
template <std::floating_point Real>
BasicGradient<Real> gradient(ModelFamily family, const BasicModelParams<Real>& p,
                             Real x,
                             Real pole_guard = Real(kDefaultPoleGuard)) {
  detail::check_pole(family, p, x, pole_guard);
  const Real T = p.temperature;
  const Real c = p.degeneracy;
  const Real z = (x - p.chemical_potential) / T;

  // shape(z) and -d shape/dz; y = c * shape, dz/dmu = -1/T, dz/dT = -z/T.
  Real shape = 0;
  Real slope = 0;
  switch (family) {
    case ModelFamily::FermiDirac:
      shape = detail::fermi(z);
      slope = shape * detail::fermi(-z);
      break;
    case ModelFamily::BoseEinstein:
      shape = 1 / std::expm1(z);
      slope = shape * (1 + shape);
      break;
    case ModelFamily::BoltzmannGibbs:
      shape = std::exp(-z);
      slope = shape;
      break;
  }
  return {c * slope * z / T, c * slope / T, shape};
}

}  // namespace qsfit
