#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "pinnproj/errors.hpp"
#include "pinnproj/jet.hpp"
#include "pinnproj/model.hpp"

namespace pinnproj {

enum class PdeKind { kAdvection, kBurgers, kKdv };

inline const char* pde_name(PdeKind k) {
  switch (k) {
    case PdeKind::kAdvection: return "advection";
    case PdeKind::kBurgers: return "burgers";
    case PdeKind::kKdv: return "kdv";
  }
  return "?";
}

/// PDE family and coefficients. Defaults are the benchmark values:
/// advection speed 0.1, Burgers diffusion 0.1, KdV coefficients 1 / 0.0025.
struct PdeSpec {
  PdeKind kind = PdeKind::kAdvection;
  double beta = 0.1;
  double nu = 0.1;
  double lambda1 = 1.0;
  double lambda2 = 0.0025;

  void validate() const {
    if (!std::isfinite(beta) || !std::isfinite(nu) || !std::isfinite(lambda1) || !std::isfinite(lambda2)) {
      throw ConfigError("non-finite PDE coefficient");
    }
    if (nu < 0.0) throw ConfigError("negative diffusion coefficient");
  }
};

/// Spatial grid backing the Riemann-sum quadrature. The rule only uses the
/// spacing and total length, both derived from the domain bounds, so grids
/// whose stored coordinates were rounded for output purposes still
/// integrate with the canonical spacing.
struct QuadratureGrid {
  std::vector<double> xs;
  double dx = 0.0;
  double domain_length = 0.0;

  static QuadratureGrid uniform(double x_min, double x_max, std::size_t nx) {
    QuadratureGrid g;
    const double length = x_max - x_min;
    g.dx = length / static_cast<double>(nx);
    g.domain_length = static_cast<double>(nx) * g.dx;
    g.xs.resize(nx);
    for (std::size_t k = 0; k < nx; ++k) {
      g.xs[k] = x_min + static_cast<double>(k) * length / static_cast<double>(nx);
    }
    return g;
  }

  static QuadratureGrid from_points(std::vector<double> xs, double x_min, double x_max) {
    if (xs.empty()) throw ConfigError("empty quadrature grid");
    QuadratureGrid g;
    g.dx = (x_max - x_min) / static_cast<double>(xs.size());
    g.domain_length = static_cast<double>(xs.size()) * g.dx;
    g.xs = std::move(xs);
    return g;
  }

  /// Relative deviation of the stored spacing from the canonical uniform
  /// spacing. Generated datasets keep this at roundoff; rounded grids
  /// deviate by design.
  double max_uniformity_error() const {
    double worst = 0.0;
    for (std::size_t k = 1; k < xs.size(); ++k) {
      worst = std::max(worst, std::abs((xs[k] - xs[k - 1]) - dx));
    }
    return worst / std::abs(dx);
  }
};

struct ConservedTarget {
  double c = 0.0;
};

struct TrainPoint {
  double x, t, u;
};

struct TrainingSet {
  std::vector<TrainPoint> points;
  std::size_t count() const { return points.size(); }
};

struct CollocationSet {
  std::vector<XT> points;
  std::size_t count() const { return points.size(); }
};

// ---------------------------------------------------------------------------
// Core operations
// ---------------------------------------------------------------------------

/// PDE residual f = u_t + N[u] evaluated on a jet.
template <class S>
S residual(const PdeSpec& spec, const Jet<S>& j) {
  switch (spec.kind) {
    case PdeKind::kAdvection:
      return j.dt + mulc(j.dx, spec.beta);
    case PdeKind::kBurgers:
      return j.dt + j.val * j.dx + mulc(j.dxx, -spec.nu);
    case PdeKind::kKdv:
      return j.dt + mulc(j.val * j.dx, spec.lambda1) + mulc(j.dxxx, spec.lambda2);
  }
  return S{};
}

/// Riemann-sum total momentum: (sum_i u_i) * dx.
template <class T>
T momentum_sum(std::span<const T> u, T dx) {
  T acc = T(0);
  for (const T v : u) acc += v;
  return acc * dx;
}

inline double momentum(std::span<const double> u_on_grid, const QuadratureGrid& grid) {
  if (u_on_grid.size() != grid.xs.size()) {
    throw DimensionError("momentum: field has " + std::to_string(u_on_grid.size()) +
                         " entries but grid has " + std::to_string(grid.xs.size()));
  }
  return momentum_sum(u_on_grid, grid.dx);
}

// Division by a constant: plain scalars divide; tape variables multiply by
// the reciprocal (exact for the power-of-two domain lengths used here).
template <class S, class = std::enable_if_t<std::is_arithmetic_v<S>>>
inline S divc(S v, double c) {
  return v / static_cast<S>(c);
}
template <class T>
TVar<T> divc(TVar<T> v, double c) {
  return v * (1.0 / c);
}

/// Pointwise conservation projection:
///   u_proj = u - grid_momentum / |X| + c / |X|.
template <class T>
T project(T u_val, T grid_momentum, T target_c, double domain_length) {
  return u_val - divc(grid_momentum, domain_length) + divc(target_c, domain_length);
}

inline double project(double u_val, double grid_momentum, const ConservedTarget& target,
                      double domain_length) {
  if (!(domain_length > 0.0)) throw ConfigError("non-positive domain length");
  return project(u_val, grid_momentum, target.c, domain_length);
}

/// Projection applied to a jet. The correction depends only on t, so it
/// shifts val by (c - M(t))/|X| and dt by -M'(t)/|X|; all spatial
/// derivative slots pass through untouched.
template <class S>
Jet<S> projected_jet(const Jet<S>& j, S grid_momentum, S grid_momentum_dt, double target_c,
                     double domain_length) {
  Jet<S> r = j;
  r.val = addc(j.val - divc(grid_momentum, domain_length), target_c / domain_length);
  r.dt = j.dt - divc(grid_momentum_dt, domain_length);
  return r;
}

}  // namespace pinnproj
