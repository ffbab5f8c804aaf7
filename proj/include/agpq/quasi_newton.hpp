#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace agpq {

using ObjectiveFn = std::function<double(std::span<const double>)>;

/// Central-difference gradient; `step(i, x_i)` gives the half-width for coordinate i.
/// Coordinates are spread over hardware threads, so `f` must be safe to call
/// concurrently.
std::vector<double> central_difference_gradient(const ObjectiveFn& f, std::span<const double> x,
                                                const std::function<double(int, double)>& step);

struct QuasiNewtonOptions {
  double gradient_tol = 1e-6;  // on the infinity norm
  int max_iterations = 500;
  long max_evaluations = 1'000'000;
  double max_step = 1.0;       // infinity-norm cap on a trial step
  std::function<double(int, double)> fd_step = [](int, double) { return 1e-5; };
};

struct QuasiNewtonIterate {
  double value;
  double gradient_norm;
};

struct QuasiNewtonResult {
  std::vector<double> x;
  double value = 0.0;
  double gradient_norm = 0.0;
  int iterations = 0;
  long evaluations = 0;
  bool converged = false;
  std::string message;
  std::vector<QuasiNewtonIterate> history;  // entry 0 is the starting point
};

/// BFGS with an inverse-Hessian update, Armijo backtracking and
/// finite-difference gradients.
///
/// `recenter`, if set, may move an accepted iterate along a direction the
/// objective is invariant to (e.g. a scale redundancy); the gradient is
/// recomputed afterwards.
QuasiNewtonResult minimize_bfgs(const ObjectiveFn& f, std::vector<double> x0,
                                const QuasiNewtonOptions& options,
                                const std::function<void(std::vector<double>&)>& recenter = {});

}  // namespace agpq
