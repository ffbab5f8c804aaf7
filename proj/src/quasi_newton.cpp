#include "agpq/quasi_newton.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include <Eigen/Dense>

namespace agpq {

std::vector<double> central_difference_gradient(const ObjectiveFn& f, std::span<const double> x,
                                                const std::function<double(int, double)>& step) {
  std::vector<double> g(x.size());
  // Entries are independent; each worker owns a copy of x, so the result does
  // not depend on the thread count.
  auto entries = [&](std::size_t begin, std::size_t stride) {
    std::vector<double> work(x.begin(), x.end());
    for (std::size_t i = begin; i < x.size(); i += stride) {
      const double h = step(static_cast<int>(i), x[i]);
      work[i] = x[i] + h;
      const double fp = f(work);
      work[i] = x[i] - h;
      const double fm = f(work);
      work[i] = x[i];
      g[i] = (fp - fm) / (2.0 * h);
    }
  };
  const std::size_t workers =
      std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), x.size());
  if (workers <= 1) {
    entries(0, 1);
    return g;
  }
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(entries, w, workers);
  entries(0, workers);
  for (auto& t : pool) t.join();
  return g;
}

namespace {

double inf_norm(const Eigen::VectorXd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

QuasiNewtonResult minimize_bfgs(const ObjectiveFn& f, std::vector<double> x0,
                                const QuasiNewtonOptions& options,
                                const std::function<void(std::vector<double>&)>& recenter) {
  QuasiNewtonResult res;
  const auto n = static_cast<Eigen::Index>(x0.size());

  long evals = 0;
  auto value = [&](const std::vector<double>& x) {
    ++evals;
    return f(x);
  };
  auto gradient = [&](const std::vector<double>& x) {
    const auto g = central_difference_gradient(f, x, options.fd_step);
    evals += 2 * static_cast<long>(x.size());
    return Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(g.data(), n));
  };

  std::vector<double> x = std::move(x0);
  if (recenter) recenter(x);
  double fx = value(x);
  Eigen::VectorXd g = gradient(x);
  Eigen::MatrixXd H = Eigen::MatrixXd::Identity(n, n);
  bool fresh_hessian = true;
  res.history.push_back({fx, inf_norm(g)});

  auto finish = [&](bool converged, std::string msg) {
    res.x = x;
    res.value = fx;
    res.gradient_norm = inf_norm(g);
    res.evaluations = evals;
    res.converged = converged;
    res.message = std::move(msg);
    return res;
  };

  if (n == 0) return finish(true, "no parameters");

  for (int it = 0; it < options.max_iterations; ++it) {
    if (inf_norm(g) < options.gradient_tol) return finish(true, "gradient tolerance reached");
    if (evals >= options.max_evaluations) return finish(false, "evaluation budget exhausted");

    Eigen::VectorXd d = -H * g;
    double slope = g.dot(d);
    if (!(slope < 0.0)) {
      H.setIdentity();
      fresh_hessian = true;
      d = -g;
      slope = g.dot(d);
    }
    const double dmax = inf_norm(d);
    if (dmax > options.max_step) {
      d *= options.max_step / dmax;
      slope = g.dot(d);
    }

    // Armijo backtracking with safeguarded quadratic interpolation.
    constexpr double c1 = 1e-4;
    double alpha = 1.0;
    std::vector<double> trial(x.size());
    double ftrial = std::numeric_limits<double>::infinity();
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      for (Eigen::Index i = 0; i < n; ++i) trial[i] = x[i] + alpha * d[i];
      ftrial = value(trial);
      if (std::isfinite(ftrial) && ftrial <= fx + c1 * alpha * slope) {
        accepted = true;
        break;
      }
      double next = 0.5 * alpha;
      if (std::isfinite(ftrial)) {
        const double denom = 2.0 * (ftrial - fx - slope * alpha);
        if (denom > 0.0) next = std::clamp(-slope * alpha * alpha / denom, 0.1 * alpha, 0.5 * alpha);
      }
      alpha = next;
    }
    if (!accepted) {
      if (!fresh_hessian) {
        H.setIdentity();
        fresh_hessian = true;
        continue;
      }
      return finish(false, "line search failed");
    }

    Eigen::VectorXd s(n);
    for (Eigen::Index i = 0; i < n; ++i) s[i] = trial[i] - x[i];
    x = trial;
    fx = ftrial;
    if (recenter) {
      recenter(x);
      fx = value(x);
    }
    Eigen::VectorXd g_new = gradient(x);
    Eigen::VectorXd y = g_new - g;
    g = g_new;
    res.iterations = it + 1;
    res.history.push_back({fx, inf_norm(g)});

    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      if (fresh_hessian) {
        H *= sy / y.dot(y);
        fresh_hessian = false;
      }
      const double rho = 1.0 / sy;
      const Eigen::VectorXd Hy = H * y;
      const double yHy = y.dot(Hy);
      H += (rho * rho * yHy + rho) * (s * s.transpose()) - rho * (Hy * s.transpose() + s * Hy.transpose());
    }
  }
  if (inf_norm(g) < options.gradient_tol) return finish(true, "gradient tolerance reached");
  return finish(false, "iteration limit reached");
}

}  // namespace agpq
