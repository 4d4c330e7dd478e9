#pragma once

// Least-squares fitting of the model families to cumulative log-log points.
//
// FermiDirac and BoseEinstein are optimized over (ln T, mu, ln c) so that
// T and c stay positive. BoltzmannGibbs has no identifiable (c, mu) split;
// it is optimized over (ln T, ln B) with y = B exp(-(x - xbar)/T), xbar the
// mean data abscissa, and reported as T with mu = 0 and c = A = c exp(mu/T).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qsfit/errors.hpp"
#include "qsfit/ingest.hpp"
#include "qsfit/lm.hpp"
#include "qsfit/models.hpp"

namespace qsfit {

struct FitConfig {
  int max_iterations = 200;
  double gradient_tolerance = 1e-10;
  double step_tolerance = 1e-12;
  double lambda_init = 1e-3;
  double lambda_up = 10.0;
  double lambda_down = 10.0;
  int multistart = 8;
  std::uint64_t seed = 0;
  double pole_guard = kDefaultPoleGuard;

  void validate() const {
    if (max_iterations < 1) throw SchemaError("max_iterations must be >= 1");
    if (!(gradient_tolerance > 0) || !(step_tolerance > 0) || !(lambda_init > 0) ||
        !(lambda_up > 1) || !(lambda_down > 1) || !(pole_guard > 0)) {
      throw SchemaError("fit tolerances and damping factors must be positive");
    }
    if (multistart < 1) throw SchemaError("multistart must be >= 1");
  }

  LmOptions lm_options() const {
    LmOptions o;
    o.max_iterations = max_iterations;
    o.gradient_tolerance = gradient_tolerance;
    o.step_tolerance = step_tolerance;
    o.lambda_init = lambda_init;
    o.lambda_up = lambda_up;
    o.lambda_down = lambda_down;
    return o;
  }
};

struct FitResult {
  ModelFamily family = ModelFamily::FermiDirac;
  ModelParams params;
  double r_squared = 0;
  double ss_res = 0;
  std::vector<double> residuals;  // y_i - model(x_i)
  int iterations = 0;
  bool converged = false;
  Termination termination = Termination::MaxIter;
  int restart = 0;                // index of the winning multistart run
  std::vector<double> ss_trace;   // SS history of the winning run
  double log_amplitude = 0;       // ln(c) + mu/T, finite even when c exp(mu/T) overflows
};

/// Default rejection threshold: fits with R² below it are flagged.
inline constexpr double kDefaultRejectBelow = 0.9;

inline bool is_rejected(const FitResult& r, double reject_below = kDefaultRejectBelow) {
  return !(r.r_squared >= reject_below);
}

namespace detail {

inline void require_points(const CumulativePoints& pts, std::size_t min_points) {
  if (pts.size() < min_points) {
    throw DegenerateDataError("need at least " + std::to_string(min_points) +
                              " points, got " + std::to_string(pts.size()));
  }
}

inline void require_increasing_x(const CumulativePoints& pts) {
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (!(pts.points[i].x > pts.points[i - 1].x)) {
      throw OrderError("point x values must be strictly increasing");
    }
  }
}

inline double clamp_temperature(double t) {
  if (!std::isfinite(t)) return 10.0;
  return std::clamp(std::abs(t), 1e-3, 10.0);
}

// Least-squares line ln y = a + b x; nullopt if any y <= 0.
inline std::optional<std::pair<double, double>> log_linear(const CumulativePoints& pts) {
  const double n = static_cast<double>(pts.size());
  double sx = 0, sy = 0;
  for (const auto& p : pts.points) {
    if (!(p.y > 0)) return std::nullopt;
    sx += p.x;
    sy += std::log(p.y);
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (const auto& p : pts.points) {
    sxx += (p.x - mx) * (p.x - mx);
    sxy += (p.x - mx) * (std::log(p.y) - my);
  }
  if (!(sxx > 0)) return std::nullopt;
  const double b = sxy / sxx;
  return std::make_pair(my - b * mx, b);
}

inline double mean_x(const CumulativePoints& pts) {
  double s = 0;
  for (const auto& p : pts.points) s += p.x;
  return s / static_cast<double>(pts.size());
}

}  // namespace detail

/// Model value at every point; +inf entries mark poles or overflow.
inline double sum_squared_residuals(const CumulativePoints& pts, ModelFamily family,
                                    const ModelParams& params,
                                    double pole_guard = kDefaultPoleGuard) {
  if (!params.valid()) return std::numeric_limits<double>::infinity();
  double ss = 0;
  for (const auto& p : pts.points) {
    double y_hat;
    try {
      y_hat = eval(family, params, p.x, pole_guard);
    } catch (const PoleError&) {
      return std::numeric_limits<double>::infinity();
    }
    const double r = p.y - y_hat;
    ss += r * r;
  }
  return std::isfinite(ss) ? ss : std::numeric_limits<double>::infinity();
}

/// Starting point for the optimizer.
///
/// FermiDirac: c0 = max y, mu0 where y crosses c0/2 (max x if it never
/// does), T0 = c0 / (4 |steepest adjacent slope|), T0 clamped to [1e-3, 10].
/// BoseEinstein and BoltzmannGibbs read T0 off a straight-line fit of ln y
/// against x; BoseEinstein puts mu0 one T0 left of the data so every point
/// sits on the positive branch.
inline ModelParams initial_guess(const CumulativePoints& pts, ModelFamily family) {
  detail::require_points(pts, 4);
  const auto& P = pts.points;
  const double y_max =
      std::max_element(P.begin(), P.end(), [](auto& a, auto& b) { return a.y < b.y; })->y;
  const double y_min =
      std::min_element(P.begin(), P.end(), [](auto& a, auto& b) { return a.y < b.y; })->y;
  if (!(y_max > y_min)) throw DegenerateDataError("all y values are equal");

  double steepest = 0;
  for (std::size_t i = 1; i < P.size(); ++i) {
    const double dx = P[i].x - P[i - 1].x;
    if (dx == 0) continue;
    const double s = (P[i].y - P[i - 1].y) / dx;
    if (std::abs(s) > std::abs(steepest)) steepest = s;
  }
  if (steepest == 0) throw DegenerateDataError("zero slope between all points");

  if (family != ModelFamily::FermiDirac) {
    if (auto line = detail::log_linear(pts); line && line->second != 0) {
      const double t0 = detail::clamp_temperature(-1.0 / line->second);
      if (family == ModelFamily::BoltzmannGibbs) {
        // ln A = a + b*0 with b forced to -1/t0 through the data centroid.
        const double xbar = detail::mean_x(pts);
        const double ln_at_mean = line->first + line->second * xbar;
        return {t0, 0.0, std::exp(ln_at_mean + xbar / t0)};
      }
      const double mu0 = P.front().x - t0;
      const double c0 = P.front().y * std::expm1((P.front().x - mu0) / t0);
      return {t0, mu0, std::abs(c0) > 0 ? std::abs(c0) : y_max};
    }
  }

  const double c0 = y_max;
  const double half = c0 / 2;
  double mu0 = P.back().x;
  for (std::size_t i = 1; i < P.size(); ++i) {
    const double y0 = P[i - 1].y - half, y1 = P[i].y - half;
    if (y0 == 0) { mu0 = P[i - 1].x; break; }
    if ((y0 > 0) != (y1 > 0) || y1 == 0) {
      mu0 = P[i - 1].x + (P[i].x - P[i - 1].x) * y0 / (y0 - y1);
      break;
    }
  }
  const double t0 = detail::clamp_temperature(c0 / (4 * std::abs(steepest)));
  if (family == ModelFamily::BoltzmannGibbs) return {t0, 0.0, c0 * std::exp(mu0 / t0)};
  return {t0, mu0, c0};
}

/// 1 - SS_res / SS_tot on the given points.
inline double r_squared(const CumulativePoints& pts, ModelFamily family,
                        const ModelParams& params, double pole_guard = kDefaultPoleGuard) {
  detail::require_points(pts, 2);
  double mean = 0;
  for (const auto& p : pts.points) mean += p.y;
  mean /= static_cast<double>(pts.size());
  double ss_tot = 0;
  for (const auto& p : pts.points) ss_tot += (p.y - mean) * (p.y - mean);
  if (!(ss_tot > 0)) throw DegenerateDataError("SS_tot is zero: all y values equal");
  return 1.0 - sum_squared_residuals(pts, family, params, pole_guard) / ss_tot;
}

namespace detail {

// (ln T, mu, ln c) for FermiDirac / BoseEinstein.
struct ThreeParamProblem {
  using Vector = Eigen::Matrix<double, 3, 1>;
  using Jacobian = Eigen::Matrix<double, Eigen::Dynamic, 3>;

  const CumulativePoints* pts;
  ModelFamily family;
  double pole_guard;

  static ModelParams to_params(const Vector& th) {
    return {std::exp(th[0]), th[1], std::exp(th[2])};
  }
  static Vector from_params(const ModelParams& p) {
    return {std::log(p.temperature), p.chemical_potential, std::log(p.degeneracy)};
  }

  bool residuals(const Vector& th, Eigen::VectorXd& r) const {
    const ModelParams p = to_params(th);
    if (!p.valid()) return false;
    r.resize(static_cast<Eigen::Index>(pts->size()));
    try {
      for (std::size_t i = 0; i < pts->size(); ++i) {
        const auto& pt = pts->points[i];
        r[static_cast<Eigen::Index>(i)] = pt.y - eval(family, p, pt.x, pole_guard);
      }
    } catch (const PoleError&) {
      return false;
    }
    return true;
  }

  bool jacobian(const Vector& th, Jacobian& J) const {
    const ModelParams p = to_params(th);
    if (!p.valid()) return false;
    J.resize(static_cast<Eigen::Index>(pts->size()), 3);
    try {
      for (std::size_t i = 0; i < pts->size(); ++i) {
        const Gradient g = gradient(family, p, pts->points[i].x, pole_guard);
        const auto row = static_cast<Eigen::Index>(i);
        J(row, 0) = g.d_temperature * p.temperature;
        J(row, 1) = g.d_chemical_potential;
        J(row, 2) = g.d_degeneracy * p.degeneracy;
      }
    } catch (const PoleError&) {
      return false;
    }
    return true;
  }
};

// (ln T, ln B) for BoltzmannGibbs anchored at xbar: y = B exp(-(x - xbar)/T).
struct AnchoredExponentialProblem {
  using Vector = Eigen::Matrix<double, 2, 1>;
  using Jacobian = Eigen::Matrix<double, Eigen::Dynamic, 2>;

  const CumulativePoints* pts;
  double xbar;

  ModelParams anchored(const Vector& th) const {
    return {std::exp(th[0]), xbar, std::exp(th[1])};
  }
  Vector from_params(const ModelParams& p) const {
    // ln B = ln c + (mu - xbar)/T
    return {std::log(p.temperature),
            std::log(p.degeneracy) + (p.chemical_potential - xbar) / p.temperature};
  }

  bool residuals(const Vector& th, Eigen::VectorXd& r) const {
    const ModelParams p = anchored(th);
    if (!p.valid()) return false;
    r.resize(static_cast<Eigen::Index>(pts->size()));
    for (std::size_t i = 0; i < pts->size(); ++i) {
      const auto& pt = pts->points[i];
      r[static_cast<Eigen::Index>(i)] = pt.y - eval(ModelFamily::BoltzmannGibbs, p, pt.x);
    }
    return true;
  }

  bool jacobian(const Vector& th, Jacobian& J) const {
    const ModelParams p = anchored(th);
    if (!p.valid()) return false;
    J.resize(static_cast<Eigen::Index>(pts->size()), 2);
    for (std::size_t i = 0; i < pts->size(); ++i) {
      const Gradient g = gradient(ModelFamily::BoltzmannGibbs, p, pts->points[i].x);
      const auto row = static_cast<Eigen::Index>(i);
      J(row, 0) = g.d_temperature * p.temperature;
      J(row, 1) = g.d_degeneracy * p.degeneracy;
    }
    return true;
  }
};

// Uniform on [-1, 1) from a 64-bit engine, independent of the standard
// library's distribution implementations.
inline double symmetric_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-52 - 1.0;
}

inline std::mt19937_64 restart_engine(std::uint64_t seed, int restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart)};
  return std::mt19937_64(seq);
}

inline constexpr double kPerturbLog = 0.18232155679395462;  // ln 1.2
inline constexpr double kPerturbSpan = 0.2;

}  // namespace detail

/// Levenberg-Marquardt fit with deterministic multi-start. Restart 0 starts
/// at initial_guess(); later restarts perturb T and c log-uniformly by up to
/// 20% and shift mu by up to 20% of the data's x span. The lowest-SS run wins,
/// ties going to the lower restart index.
inline FitResult lm_fit(const CumulativePoints& pts, ModelFamily family,
                        const FitConfig& config = {}) {
  config.validate();
  detail::require_points(pts, 4);
  detail::require_increasing_x(pts);
  const ModelParams guess = initial_guess(pts, family);
  const double span = pts.points.back().x - pts.points.front().x;
  const LmOptions opt = config.lm_options();

  FitResult best;
  best.family = family;
  bool have_best = false;

  auto consider = [&](auto&& run, const ModelParams& params, int restart) {
    if (!run.finite_start) return;
    if (have_best && !(run.ss < best.ss_res)) return;
    have_best = true;
    best.params = params;
    best.ss_res = run.ss;
    best.iterations = run.iterations;
    best.termination = run.termination;
    best.converged = run.converged();
    best.restart = restart;
    best.ss_trace = std::move(run.ss_trace);
  };

  if (family == ModelFamily::BoltzmannGibbs) {
    detail::AnchoredExponentialProblem problem{&pts, detail::mean_x(pts)};
    const auto start = problem.from_params(guess);
    for (int k = 0; k < config.multistart; ++k) {
      auto theta = start;
      if (k > 0) {
        auto rng = detail::restart_engine(config.seed, k);
        theta[0] += detail::kPerturbLog * detail::symmetric_unit(rng);
        theta[1] += detail::kPerturbLog * detail::symmetric_unit(rng);
      }
      auto run = levenberg_marquardt<2>(problem, theta, opt);
      const double t = std::exp(run.theta[0]);
      const double log_a = run.theta[1] + problem.xbar / t;
      consider(run, ModelParams{t, 0.0, std::exp(log_a)}, k);
      if (have_best && best.restart == k) best.log_amplitude = log_a;
    }
  } else {
    detail::ThreeParamProblem problem{&pts, family, config.pole_guard};
    const auto start = detail::ThreeParamProblem::from_params(guess);
    for (int k = 0; k < config.multistart; ++k) {
      auto theta = start;
      if (k > 0) {
        auto rng = detail::restart_engine(config.seed, k);
        theta[0] += detail::kPerturbLog * detail::symmetric_unit(rng);
        theta[1] += detail::kPerturbSpan * span * detail::symmetric_unit(rng);
        theta[2] += detail::kPerturbLog * detail::symmetric_unit(rng);
      }
      auto run = levenberg_marquardt<3>(problem, theta, opt);
      const ModelParams p = detail::ThreeParamProblem::to_params(run.theta);
      consider(run, p, k);
      if (have_best && best.restart == k)
        best.log_amplitude = run.theta[2] + p.chemical_potential / p.temperature;
    }
  }

  if (!have_best) {
    throw NonFiniteError(std::string(to_string(family)) +
                         ": objective is non-finite at every starting point");
  }

  best.residuals.reserve(pts.size());
  double mean = 0;
  for (const auto& p : pts.points) mean += p.y;
  mean /= static_cast<double>(pts.size());
  double ss_tot = 0;
  for (const auto& p : pts.points) ss_tot += (p.y - mean) * (p.y - mean);
  if (!(ss_tot > 0)) throw DegenerateDataError("SS_tot is zero: all y values equal");

  if (family == ModelFamily::BoltzmannGibbs) {
    // Residuals from the anchored form; identical model, better conditioned.
    const double xbar = detail::mean_x(pts);
    const ModelParams anchored{best.params.temperature, xbar,
                               std::exp(best.log_amplitude - xbar / best.params.temperature)};
    for (const auto& p : pts.points)
      best.residuals.push_back(p.y - eval(family, anchored, p.x));
  } else {
    for (const auto& p : pts.points)
      best.residuals.push_back(p.y - eval(family, best.params, p.x, config.pole_guard));
  }
  best.r_squared = 1.0 - best.ss_res / ss_tot;
  return best;
}

/// Axis-aligned box in (T, mu, c).
struct ParamBox {
  ModelParams lower;
  ModelParams upper;
};

/// Exhaustive search over a regular grid with steps[i] nodes per axis
/// (T, mu, c). Returns the node with the lowest SS_res; ties go to the lowest
/// T, then mu, then c. A single-node axis uses its lower bound.
inline ModelParams grid_oracle(const CumulativePoints& pts, ModelFamily family,
                               const ParamBox& box, std::array<int, 3> steps,
                               double pole_guard = kDefaultPoleGuard) {
  auto node = [](double lo, double hi, int n, int i) {
    return n <= 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (n - 1);
  };
  const int nt = std::max(steps[0], 1), nm = std::max(steps[1], 1),
            nc = std::max(steps[2], 1);
  ModelParams best = box.lower;
  double best_ss = std::numeric_limits<double>::infinity();
  bool any = false;
  for (int i = 0; i < nt; ++i) {
    const double t = node(box.lower.temperature, box.upper.temperature, nt, i);
    for (int j = 0; j < nm; ++j) {
      const double mu = node(box.lower.chemical_potential, box.upper.chemical_potential, nm, j);
      for (int k = 0; k < nc; ++k) {
        const double c = node(box.lower.degeneracy, box.upper.degeneracy, nc, k);
        const ModelParams p{t, mu, c};
        const double ss = sum_squared_residuals(pts, family, p, pole_guard);
        if (!any || ss < best_ss) {
          any = true;
          best = p;
          best_ss = ss;
        }
      }
    }
  }
  return best;
}

/// Outcome of one family inside select_model().
struct ModelOutcome {
  ModelFamily family;
  std::optional<FitResult> fit;
  std::optional<ErrorKind> error_kind;
  std::string error;

  bool ok() const { return fit.has_value(); }
};

namespace detail {
inline int free_parameters(ModelFamily f) {
  return f == ModelFamily::BoltzmannGibbs ? 2 : 3;
}
}  // namespace detail

/// Fits every family and ranks them by descending R². Equal R² prefers the
/// family with fewer free parameters, then declaration order. Failed
/// families follow, in declaration order, carrying their error.
inline std::vector<ModelOutcome> select_model(const CumulativePoints& pts,
                                              const FitConfig& config = {}) {
  std::vector<ModelOutcome> out;
  for (ModelFamily f : kAllFamilies) {
    ModelOutcome o{f, std::nullopt, std::nullopt, {}};
    try {
      o.fit = lm_fit(pts, f, config);
    } catch (const Error& e) {
      o.error_kind = e.kind();
      o.error = e.what();
    }
    out.push_back(std::move(o));
  }
  std::stable_sort(out.begin(), out.end(), [](const ModelOutcome& a, const ModelOutcome& b) {
    if (a.ok() != b.ok()) return a.ok();
    if (!a.ok()) return false;
    if (a.fit->r_squared != b.fit->r_squared) return a.fit->r_squared > b.fit->r_squared;
    return detail::free_parameters(a.family) < detail::free_parameters(b.family);
  });
  return out;
}

}  // namespace qsfit
