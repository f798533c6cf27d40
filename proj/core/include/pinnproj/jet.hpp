#pragma once

#include <cmath>
#include <type_traits>

namespace pinnproj {

// Scalar-times-constant and scalar-plus-constant for a generic component
// type. Plain floats narrow the constant to their own width; the tape
// header overloads these for recorded variables.
template <class S, class = std::enable_if_t<std::is_arithmetic_v<S>>>
inline S mulc(S v, double c) {
  return v * static_cast<S>(c);
}
template <class S, class = std::enable_if_t<std::is_arithmetic_v<S>>>
inline S addc(S v, double c) {
  return v + static_cast<S>(c);
}

/// Truncated derivative jet: the value of a scalar field u(x, t) together
/// with du/dt, du/dx, d2u/dx2 and d3u/dx3. This is the exact set of
/// derivatives the supported PDE residuals consume; mixed x-t derivatives
/// are never needed, so the algebra below is closed over these five slots.
///
/// The component type S is either a plain float/double or a tape variable,
/// so the same propagation rules serve both direct evaluation and the
/// recorded form used for parameter gradients.
template <class S>
struct Jet {
  S val;
  S dt;
  S dx;
  S dxx;
  S dxxx;
};

using Jetd = Jet<double>;
using Jetf = Jet<float>;

enum class JetSeed { kVariableX, kVariableT, kConstant };

/// Seed a jet for a leaf input: a spatial variable (dx = 1), a temporal
/// variable (dt = 1) or a constant (all derivative slots zero).
template <class S>
Jet<S> seed_jet(S value, JetSeed kind) {
  Jet<S> j{value, S(0), S(0), S(0), S(0)};
  switch (kind) {
    case JetSeed::kVariableX: j.dx = S(1); break;
    case JetSeed::kVariableT: j.dt = S(1); break;
    case JetSeed::kConstant: break;
  }
  return j;
}

template <class S>
Jet<S> operator+(const Jet<S>& a, const Jet<S>& b) {
  Jet<S> r;
  r.val = a.val + b.val;
  r.dt = a.dt + b.dt;
  r.dx = a.dx + b.dx;
  r.dxx = a.dxx + b.dxx;
  r.dxxx = a.dxxx + b.dxxx;
  return r;
}

template <class S>
Jet<S> operator-(const Jet<S>& a, const Jet<S>& b) {
  Jet<S> r;
  r.val = a.val - b.val;
  r.dt = a.dt - b.dt;
  r.dx = a.dx - b.dx;
  r.dxx = a.dxx - b.dxx;
  r.dxxx = a.dxxx - b.dxxx;
  return r;
}

template <class S>
Jet<S> operator*(const Jet<S>& a, double c) {
  Jet<S> r;
  r.val = mulc(a.val, c);
  r.dt = mulc(a.dt, c);
  r.dx = mulc(a.dx, c);
  r.dxx = mulc(a.dxx, c);
  r.dxxx = mulc(a.dxxx, c);
  return r;
}

template <class S>
Jet<S> operator*(double c, const Jet<S>& a) {
  return a * c;
}

/// Leibniz product through third order in x and first order in t. The dt
/// slot needs only the first-order rule because no residual differentiates
/// a t-derivative again.
template <class S>
Jet<S> operator*(const Jet<S>& a, const Jet<S>& b) {
  Jet<S> r;
  r.val = a.val * b.val;
  r.dt = a.dt * b.val + a.val * b.dt;
  r.dx = a.dx * b.val + a.val * b.dx;
  r.dxx = a.dxx * b.val + mulc(a.dx * b.dx, 2.0) + a.val * b.dxx;
  r.dxxx = a.dxxx * b.val + mulc(a.dxx * b.dx, 3.0) + mulc(a.dx * b.dxx, 3.0) + a.val * b.dxxx;
  return r;
}

/// Compose a scalar function through a jet given its value and first three
/// derivatives at the jet's value (Faa di Bruno through order 3, with the
/// first-order chain rule in t).
template <class S>
Jet<S> jet_chain(const Jet<S>& a, S f0, S f1, S f2, S f3) {
  Jet<S> r;
  r.val = f0;
  r.dt = f1 * a.dt;
  r.dx = f1 * a.dx;
  r.dxx = f2 * (a.dx * a.dx) + f1 * a.dxx;
  r.dxxx = f3 * (a.dx * a.dx * a.dx) + mulc(f2 * (a.dx * a.dxx), 3.0) + f1 * a.dxxx;
  return r;
}

/// tanh through the jet. With p = tanh(v):
///   p' = 1 - p^2,  p'' = -2 p p',  p''' = -2 p'^2 - 2 p p''.
template <class S>
Jet<S> tanh(const Jet<S>& a) {
  using std::tanh;
  const S p = tanh(a.val);
  const S p1 = addc(-(p * p), 1.0);
  const S p2 = mulc(p * p1, -2.0);
  const S p3 = mulc(p1 * p1, -2.0) + mulc(p * p2, -2.0);
  return jet_chain(a, p, p1, p2, p3);
}

template <class S, class = std::enable_if_t<std::is_arithmetic_v<S>>>
bool jet_finite(const Jet<S>& j) {
  return std::isfinite(j.val) && std::isfinite(j.dt) && std::isfinite(j.dx) &&
         std::isfinite(j.dxx) && std::isfinite(j.dxxx);
}

}  // namespace pinnproj
