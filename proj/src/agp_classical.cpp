#include "agpq/agp_classical.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "agpq/errors.hpp"
#include "agpq/quasi_newton.hpp"

namespace agpq {

double esp(std::span<const double> x, int k) {
  const int m = static_cast<int>(x.size());
  if (k < 0 || k > m) throw std::out_of_range("esp order k out of range");
  std::vector<double> e(static_cast<std::size_t>(k) + 1, 0.0);
  e[0] = 1.0;
  for (int i = 0; i < m; ++i)
    for (int j = std::min(k, i + 1); j >= 1; --j) e[j] += x[i] * e[j - 1];
  return e[k];
}

namespace {

std::vector<double> squares(const GeminalState& g) {
  std::vector<double> s(g.eta.size());
  std::transform(g.eta.begin(), g.eta.end(), s.begin(), [](double e) { return e * e; });
  return s;
}

void check_state(const GeminalState& g) {
  if (g.N < 0 || g.N > g.M())
    throw std::invalid_argument("geminal state pair count out of range");
}

void check_level(const GeminalState& g, int p) {
  if (p < 0 || p >= g.M()) throw std::out_of_range("level index out of range");
}

// e_k over x with the entries at `skip_a` and `skip_b` removed.
double esp_without(const std::vector<double>& x, int k, int skip_a, int skip_b = -1) {
  if (k < 0) return 0.0;
  std::vector<double> rest;
  rest.reserve(x.size());
  for (int i = 0; i < static_cast<int>(x.size()); ++i)
    if (i != skip_a && i != skip_b) rest.push_back(x[i]);
  if (k > static_cast<int>(rest.size())) return 0.0;
  return esp(rest, k);
}

}  // namespace

double agp_norm(const GeminalState& g) {
  check_state(g);
  const double n = esp(squares(g), g.N);
  if (!(n > 0.0)) throw DegenerateState("AGP norm vanishes: fewer than N nonzero geminal coefficients");
  return n;
}

GeminalState scale_geminals(const GeminalState& g) {
  const double n = agp_norm(g);
  if (g.N == 0) return g;
  const double f = std::pow(n, -1.0 / (2.0 * g.N));
  GeminalState out = g;
  for (auto& e : out.eta) e *= f;
  return out;
}

double agp_rdm1(const GeminalState& g, int p) {
  check_level(g, p);
  const auto x = squares(g);
  return x[p] * esp_without(x, g.N - 1, p) / agp_norm(g);
}

double agp_pair_transfer(const GeminalState& g, int p, int q) {
  check_level(g, p);
  check_level(g, q);
  if (p == q) throw std::invalid_argument("pair transfer needs distinct levels");
  const auto x = squares(g);
  return g.eta[p] * g.eta[q] * esp_without(x, g.N - 1, p, q) / agp_norm(g);
}

double agp_energy(const GeminalState& g, const PairingModel& model) {
  if (g.N != model.N || g.M() != model.M)
    throw std::invalid_argument("geminal state does not match the model's M and N");
  const auto x = squares(g);
  const double norm = agp_norm(g);
  const int M = model.M;
  double e = 0.0;
  for (int p = 0; p < M; ++p) {
    const double occ = x[p] * esp_without(x, g.N - 1, p) / norm;
    e += (2.0 * model.epsilon(p) - model.G) * occ;
  }
  double hop = 0.0;
  for (int q = 0; q < M; ++q)
    for (int p = q + 1; p < M; ++p) hop += g.eta[p] * g.eta[q] * esp_without(x, g.N - 1, p, q);
  return e - 2.0 * model.G * hop / norm;
}

// ---------------------------------------------------------------------------
// Geminal optimization

GeminalState hf_like_geminals(const PairingModel& model) {
  model.validate();
  GeminalState g;
  g.N = model.N;
  g.eta.assign(model.M, 1.0);
  constexpr double zeta = 0.1;
  // Repulsive coupling favours opposite signs across the Fermi level; the
  // optimizer keeps signs fixed, so they are set here.
  const double sign = model.G < 0.0 ? -1.0 : 1.0;
  for (int p = model.N; p < model.M; ++p) g.eta[p] = sign * std::pow(zeta, p - model.N + 1);
  return g;
}

GeminalState initial_geminals(const PairingModel& model) {
  model.validate();
  if (model.G > 0.0 && model.N > 0 && model.N < model.M) {
    const auto bcs = solve_bcs_meanfield(model);
    if (bcs.gap > 0.0) {
      GeminalState g;
      g.N = model.N;
      g.eta.resize(model.M);
      for (int p = 0; p < model.M; ++p) g.eta[p] = bcs.v[p] / bcs.u[p];
      return g;
    }
  }
  return hf_like_geminals(model);
}

GeminalOptimization optimize_geminals(const PairingModel& model, const GeminalState& init,
                                      const GeminalOptions& options) {
  model.validate();
  if (init.N != model.N || init.M() != model.M)
    throw std::invalid_argument("initial geminals do not match the model's M and N");
  const int nonzero = static_cast<int>(
      std::count_if(init.eta.begin(), init.eta.end(), [](double e) { return e != 0.0; }));
  if (nonzero < model.N) throw DegenerateState("initial geminals have fewer than N nonzero entries");

  GeminalOptimization out;
  if (model.N == 0 || model.N == model.M) {
    out.geminals = scale_geminals(init);
    out.energy = agp_energy(out.geminals, model);
    out.converged = true;
    return out;
  }

  const int M = model.M;
  const int N = model.N;
  double largest = 0.0;
  for (double e : init.eta) largest = std::max(largest, std::abs(e));
  std::vector<double> sign(M), t(M);
  for (int p = 0; p < M; ++p) {
    sign[p] = init.eta[p] < 0.0 ? -1.0 : 1.0;
    t[p] = std::log(std::max(std::abs(init.eta[p]), 1e-12 * largest));
  }
  auto to_state = [&](std::span<const double> tt) {
    GeminalState g;
    g.N = N;
    g.eta.resize(M);
    for (int p = 0; p < M; ++p) g.eta[p] = sign[p] * std::exp(tt[p]);
    return g;
  };
  const ObjectiveFn energy = [&](std::span<const double> tt) {
    return agp_energy(to_state(tt), model);
  };
  // Fix the redundant overall scale so that e_N({eta^2}) = 1.
  const auto recenter = [&](std::vector<double>& tt) {
    const double shift = std::log(agp_norm(to_state(tt))) / (2.0 * N);
    for (auto& v : tt) v -= shift;
  };

  QuasiNewtonOptions qn;
  qn.gradient_tol = options.gradient_tol;
  qn.max_evaluations = options.max_evaluations;
  qn.max_iterations = static_cast<int>(options.max_evaluations);
  qn.max_step = 2.0;
  qn.fd_step = [](int, double tp) { return 1e-6 * std::max(1.0, std::abs(tp)); };
  const auto res = minimize_bfgs(energy, t, qn, recenter);

  out.geminals = scale_geminals(to_state(res.x));
  out.energy = agp_energy(out.geminals, model);
  out.gradient_norm = res.gradient_norm;
  out.evaluations = res.evaluations;
  out.iterations = res.iterations;
  out.converged = res.converged;
  if (!out.converged && options.throw_on_failure)
    throw ConvergenceFailure("geminal optimization did not converge (" + res.message +
                             ", |grad| = " + std::to_string(res.gradient_norm) + ")");
  return out;
}

// ---------------------------------------------------------------------------
// BCS mean field

namespace {

double quasi_energy(double e, double mu, double gap) { return std::hypot(e - mu, gap); }

double number_at(const std::vector<double>& eps, double mu, double gap) {
  double n = 0.0;
  for (double e : eps) n += 0.5 * (1.0 - (e - mu) / quasi_energy(e, mu, gap));
  return n;
}

// Chemical potential fixing sum_p v_p^2 = N at a given gap > 0.
double solve_mu(const std::vector<double>& eps, int N, double gap) {
  const double width = eps.back() - eps.front() + gap + 1.0;
  double lo = eps.front() - 1e3 * width, hi = eps.back() + 1e3 * width;
  for (int i = 0; i < 400 && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (number_at(eps, mid, gap) < N ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Limit of the chemical potential as the gap closes: the O(gap^2) number
// corrections of the filled and empty levels must cancel.
double vanishing_gap_mu(const std::vector<double>& eps, int N) {
  auto balance = [&](double mu) {
    double f = 0.0;
    for (int p = 0; p < static_cast<int>(eps.size()); ++p) {
      const double d = eps[p] - mu;
      f += (p < N ? 1.0 : -1.0) / (d * d);
    }
    return f;
  };
  double lo = eps[N - 1], hi = eps[N];
  for (int i = 0; i < 400; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (balance(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double gap_function(const std::vector<double>& eps, double G, double mu, double gap) {
  double s = 0.0;
  for (double e : eps) s += 1.0 / (2.0 * quasi_energy(e, mu, gap));
  return G * s - 1.0;
}

BcsSolution normal_solution(const std::vector<double>& eps, int N, double mu) {
  BcsSolution sol;
  sol.gap = 0.0;
  sol.mu = mu;
  const int M = static_cast<int>(eps.size());
  sol.u.assign(M, 1.0);
  sol.v.assign(M, 0.0);
  for (int p = 0; p < N; ++p) {
    sol.u[p] = 0.0;
    sol.v[p] = 1.0;
  }
  return sol;
}

}  // namespace

GeminalOptimization optimize_agp(const PairingModel& model, const GeminalOptions& options) {
  GeminalOptions quiet = options;
  quiet.throw_on_failure = false;
  auto best = optimize_geminals(model, initial_geminals(model), quiet);
  const auto hf = hf_like_geminals(model);
  if (initial_geminals(model).eta != hf.eta) {
    auto alt = optimize_geminals(model, hf, quiet);
    alt.evaluations += best.evaluations;
    if (alt.energy < best.energy) best = alt;
    else best.evaluations = alt.evaluations;
  }
  if (!best.converged && options.throw_on_failure)
    throw ConvergenceFailure("geminal optimization did not converge (|grad| = " +
                             std::to_string(best.gradient_norm) + ")");
  return best;
}

BcsSolution solve_bcs_meanfield(const PairingModel& model) {
  model.validate();
  if (!(model.G > 0.0)) throw std::invalid_argument("BCS mean field requires G > 0");
  const int M = model.M, N = model.N;
  std::vector<double> eps(M);
  for (int p = 0; p < M; ++p) eps[p] = model.epsilon(p);

  if (N == 0) return normal_solution(eps, N, eps.front() - 0.5 * model.delta_eps);
  if (N == M) return normal_solution(eps, N, eps.back() + 0.5 * model.delta_eps);

  const double mu0 = vanishing_gap_mu(eps, N);
  if (gap_function(eps, model.G, mu0, 0.0) <= 0.0) return normal_solution(eps, N, mu0);

  // Gap equation G sum_p 1/(2E_p) = 1 with mu(gap) from the number equation.
  double lo = 0.0, hi = model.G * M;
  for (int i = 0; i < 300; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double f = gap_function(eps, model.G, solve_mu(eps, N, mid), mid);
    (f > 0.0 ? lo : hi) = mid;
  }
  BcsSolution sol;
  sol.gap = 0.5 * (lo + hi);
  sol.mu = solve_mu(eps, N, sol.gap);
  sol.u.resize(M);
  sol.v.resize(M);
  double pairing = 0.0, number = 0.0;
  for (int p = 0; p < M; ++p) {
    const double E = quasi_energy(eps[p], sol.mu, sol.gap);
    const double v2 = 0.5 * (1.0 - (eps[p] - sol.mu) / E);
    sol.v[p] = std::sqrt(v2);
    sol.u[p] = std::sqrt(0.5 * (1.0 + (eps[p] - sol.mu) / E));
    pairing += sol.u[p] * sol.v[p];
    number += v2;
  }
  const double gap_residual = std::abs(model.G * pairing - sol.gap);
  const double number_residual = std::abs(number - N);
  if (!(gap_residual < 1e-10) || !(number_residual < 1e-10))
    throw ConvergenceFailure("BCS gap/number equations not solved: residuals " +
                             std::to_string(gap_residual) + ", " + std::to_string(number_residual));
  return sol;
}

double find_critical_G(const PairingModel& model) {
  model.validate();
  if (model.N == 0 || model.N == model.M)
    throw ConvergenceFailure("no critical coupling: the gap never opens for N = 0 or N = M");
  auto gapped = [&](double G) { return solve_bcs_meanfield(model.with_coupling(G)).gap > 0.0; };
  double lo = 0.0, hi = model.delta_eps;
  for (int i = 0; !gapped(hi); ++i) {
    if (i > 200) throw ConvergenceFailure("could not bracket the critical coupling");
    lo = hi;
    hi *= 2.0;
  }
  while (hi - lo > 1e-14 * hi) {
    const double mid = 0.5 * (lo + hi);
    (gapped(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

double hf_energy(const PairingModel& model) {
  model.validate();
  double e = 0.0;
  for (int p = 0; p < model.N; ++p) e += 2.0 * model.epsilon(p) - model.G;
  return e;
}

}  // namespace agpq
