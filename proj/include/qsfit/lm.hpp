#pragma once

// Small dense Levenberg-Marquardt driver for problems with a handful of
// parameters and a handful of residuals.
//
// A problem type supplies
//   bool residuals(const Vector& theta, Eigen::VectorXd& r) const;
//   bool jacobian(const Vector& theta, Jacobian& J) const;
// where r = y - f(theta) and J = df/dtheta. Either returns false when the
// model cannot be evaluated at theta (pole, overflow); such trial steps are
// rejected and the damping raised.

#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>

namespace qsfit {

enum class Termination { GradientTol, StepTol, MaxIter };

inline const char* to_string(Termination t) {
  switch (t) {
    case Termination::GradientTol: return "GradientTol";
    case Termination::StepTol: return "StepTol";
    case Termination::MaxIter: return "MaxIter";
  }
  return "?";
}

struct LmOptions {
  int max_iterations = 200;
  double gradient_tolerance = 1e-10;
  double step_tolerance = 1e-12;
  double lambda_init = 1e-3;
  double lambda_up = 10.0;
  double lambda_down = 10.0;
  double lambda_max = 1e16;
};

template <int P>
struct LmRun {
  Eigen::Matrix<double, P, 1> theta;
  double ss = std::numeric_limits<double>::infinity();
  int iterations = 0;
  Termination termination = Termination::MaxIter;
  bool finite_start = false;
  std::vector<double> ss_trace;  // SS after the start and each accepted step

  bool converged() const { return termination != Termination::MaxIter; }
};

template <int P, class Problem>
LmRun<P> levenberg_marquardt(const Problem& problem, Eigen::Matrix<double, P, 1> theta,
                             const LmOptions& opt) {
  using Vector = Eigen::Matrix<double, P, 1>;
  using Matrix = Eigen::Matrix<double, P, P>;
  using Jacobian = Eigen::Matrix<double, Eigen::Dynamic, P>;

  LmRun<P> run;
  run.theta = theta;

  Eigen::VectorXd r;
  Jacobian J;
  if (!problem.residuals(theta, r) || !r.allFinite() || !problem.jacobian(theta, J) ||
      !J.allFinite()) {
    return run;
  }
  run.ss = r.squaredNorm();
  if (!std::isfinite(run.ss)) return run;
  run.finite_start = true;
  run.ss_trace.push_back(run.ss);

  double lambda = opt.lambda_init;
  Eigen::VectorXd r_trial;
  for (int iter = 0; iter < opt.max_iterations; ++iter) {
    const Vector g = J.transpose() * r;
    if (g.template lpNorm<Eigen::Infinity>() <= opt.gradient_tolerance) {
      run.termination = Termination::GradientTol;
      return run;
    }
    const Matrix H = J.transpose() * J;
    Vector scale = H.diagonal();
    const double floor = std::max(scale.maxCoeff() * 1e-12, 1e-300);
    scale = scale.cwiseMax(floor);

    bool accepted = false;
    Vector delta = Vector::Zero();
    while (lambda <= opt.lambda_max) {
      Matrix A = H;
      A.diagonal() += lambda * scale;
      delta = A.ldlt().solve(g);
      const Vector trial = theta + delta;
      double ss_trial = std::numeric_limits<double>::infinity();
      if (delta.allFinite() && problem.residuals(trial, r_trial) && r_trial.allFinite()) {
        ss_trial = r_trial.squaredNorm();
      }
      if (ss_trial < run.ss) {
        Jacobian J_trial;
        if (problem.jacobian(trial, J_trial) && J_trial.allFinite()) {
          theta = trial;
          r.swap(r_trial);
          J = std::move(J_trial);
          run.ss = ss_trial;
          run.ss_trace.push_back(ss_trial);
          lambda = std::max(lambda / opt.lambda_down, 1e-20);
          accepted = true;
          break;
        }
      }
      lambda *= opt.lambda_up;
    }
    run.iterations = iter + 1;
    run.theta = theta;
    if (!accepted) {
      // Damping exhausted: no representable step lowers SS any further.
      run.termination = Termination::StepTol;
      return run;
    }
    const double size = theta.template lpNorm<Eigen::Infinity>();
    if (delta.template lpNorm<Eigen::Infinity>() <=
        opt.step_tolerance * (size + opt.step_tolerance)) {
      run.termination = Termination::StepTol;
      return run;
    }
  }
  run.termination = Termination::MaxIter;
  return run;
}

}  // namespace qsfit
