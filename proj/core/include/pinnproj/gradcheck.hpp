#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "pinnproj/errors.hpp"
#include "pinnproj/objective.hpp"
#include "pinnproj/prng.hpp"
#include "pinnproj/tape.hpp"

namespace pinnproj {

/// Record an objective on a fresh tape and reverse-sweep it. `record` is
/// called with the tape and the parameter handles and must return the loss
/// variable. Returns the forward loss (exactly the recorded value) and the
/// full gradient.
template <class T, class F>
std::pair<double, std::vector<double>> record_and_grad(F&& record, std::span<const double> theta) {
  Tape<T> tape;
  std::vector<T> theta_t(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) theta_t[i] = static_cast<T>(theta[i]);
  tape.params(std::span<const T>(theta_t));
  std::vector<TVar<T>> handles(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) handles[i] = tape.param(static_cast<std::uint32_t>(i));

  const TVar<T> root = record(tape, std::span<const TVar<T>>(handles));
  const double loss = static_cast<double>(tape.value(root));
  if (!std::isfinite(loss)) {
    throw TrainingDivergenceError("objective produced a non-finite value during recording");
  }
  tape.backward(root, T(1));
  std::vector<double> g(theta.size());
  const auto adj = tape.param_adjoints();
  for (std::size_t i = 0; i < theta.size(); ++i) g[i] = static_cast<double>(adj[i]);
  return {loss, std::move(g)};
}

/// Compare the objective's own gradient against central finite differences
/// on `n_probe` seeded random coordinates. The per-coordinate step is
/// h * max(1, |theta_i|); the result is the worst relative deviation
/// |g_ad - g_fd| / max(|g_fd|, 1e-12) over the probed set.
inline double fd_check(const Objective& objective, std::span<const double> theta,
                       std::size_t n_probe, double h, std::uint64_t seed = 0) {
  if (n_probe > theta.size()) {
    throw ConfigError("fd_check: n_probe exceeds parameter count");
  }
  std::vector<double> g(theta.size());
  objective.value_and_grad(theta, g);

  // Seeded partial Fisher-Yates pick of the probed coordinates.
  std::vector<std::size_t> order(theta.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Prng rng(seed, RngStream::kProbe);
  for (std::size_t i = 0; i < n_probe; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.next_below(order.size() - i));
    std::swap(order[i], order[j]);
  }

  std::vector<double> probe(theta.begin(), theta.end());
  double worst = 0.0;
  for (std::size_t k = 0; k < n_probe; ++k) {
    const std::size_t i = order[k];
    const double hi = h * std::max(1.0, std::abs(theta[i]));
    probe[i] = theta[i] + hi;
    const double fp = objective.value(probe);
    probe[i] = theta[i] - hi;
    const double fm = objective.value(probe);
    probe[i] = theta[i];
    const double g_fd = (fp - fm) / (2.0 * hi);
    const double rel = std::abs(g[i] - g_fd) / std::max(std::abs(g_fd), 1e-12);
    worst = std::max(worst, rel);
  }
  return worst;
}

}  // namespace pinnproj
