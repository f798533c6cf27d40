#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pinnproj/errors.hpp"
#include "pinnproj/jet.hpp"
#include "pinnproj/tape.hpp"

namespace pinnproj {

struct XT {
  double x, t;
};

struct InputBounds {
  double x_min, x_max, t_min, t_max;
};

/// Fully connected tanh network u(x, t). `layer_sizes` runs from the
/// 2-wide input to the 1-wide linear output; the default is nine hidden
/// layers of twenty neurons.
struct MlpArchitecture {
  std::vector<std::size_t> layer_sizes;
  InputBounds bounds;

  static MlpArchitecture standard(InputBounds b) {
    MlpArchitecture a;
    a.layer_sizes = {2, 20, 20, 20, 20, 20, 20, 20, 20, 20, 1};
    a.bounds = b;
    return a;
  }

  void validate() const;
  std::size_t param_count() const;
};

/// Offsets of one layer's weight block (row-major n_out x n_in) and bias
/// block inside the flat parameter vector.
struct LayerSlice {
  std::size_t w_off, b_off, n_in, n_out;
};

std::vector<LayerSlice> param_layout(const MlpArchitecture& arch);

/// Flat trainable parameters in layout order.
struct ParamVector {
  std::vector<double> values;
};

/// Xavier normal initialization: weights ~ N(0, 2/(n_in+n_out)) per layer,
/// biases zero. Deterministic in the seed.
ParamVector init_xavier_normal(const MlpArchitecture& arch, std::uint64_t seed);

void save_checkpoint(const ParamVector& theta, const MlpArchitecture& arch, const std::string& path);
ParamVector load_checkpoint(const std::string& path, MlpArchitecture* arch_out = nullptr);

// ---------------------------------------------------------------------------
// Forward evaluation, generic over the component scalar S.
//
// The same layer loop serves plain evaluation (S = float/double) and the
// recorded form used for parameter gradients (S = TVar<T>). NC selects how
// many jet components are propagated: 1 = value, 2 = value + du/dt,
// 5 = the full jet. Component order is {val, dt, dx, dxx, dxxx}.
// ---------------------------------------------------------------------------

template <class S>
S dot_vals(std::span<const S> w, std::span<const S> a) {
  S acc = w[0] * a[0];
  for (std::size_t i = 1; i < w.size(); ++i) acc = acc + w[i] * a[i];
  return acc;
}

template <class T>
TVar<T> dot_vals(std::span<const TVar<T>> w, std::span<const TVar<T>> a) {
  return w[0].tape->dot(w, a);
}

template <class S>
struct MlpScratch {
  std::array<std::vector<S>, 5> a, z;

  void resize(std::size_t width) {
    for (auto& v : a) v.resize(width);
    for (auto& v : z) v.resize(width);
  }
};

/// Scale factors turning derivatives with respect to the normalized inputs
/// into derivatives with respect to the original x and t.
struct NormScales {
  double sx, st;
};

inline NormScales norm_scales(const InputBounds& b) {
  return {2.0 / (b.x_max - b.x_min), 2.0 / (b.t_max - b.t_min)};
}

/// Run the network over seeded input component arrays. `in[c]` holds the
/// two input scalars (x-like, t-like) for component c. Writes the NC output
/// components of the single output neuron.
template <class S, int NC>
std::array<S, NC> mlp_forward_comps(std::span<const S> params, std::span<const LayerSlice> layout,
                                    const std::array<std::array<S, 2>, NC>& in, MlpScratch<S>& ws) {
  static_assert(NC == 1 || NC == 2 || NC == 5);
  std::size_t width = 0;
  for (const auto& l : layout) width = std::max(width, l.n_out);
  ws.resize(width);

  // Current activations, component-major. Starts as the seeded inputs;
  // hidden layers double-buffer between ws.a and ws.z.
  std::array<std::span<const S>, 5> cur;
  for (int c = 0; c < NC; ++c) cur[c] = std::span<const S>(in[c].data(), 2);

  std::array<S, NC> out{};
  for (std::size_t li = 0; li < layout.size(); ++li) {
    const LayerSlice& l = layout[li];
    const bool last = li + 1 == layout.size();
    for (std::size_t j = 0; j < l.n_out; ++j) {
      const auto row = params.subspan(l.w_off + j * l.n_in, l.n_in);
      const S bias = params[l.b_off + j];
      S zv = bias + dot_vals(row, cur[0]);
      S zdt{}, zdx{}, zdxx{}, zdxxx{};
      if constexpr (NC >= 2) zdt = dot_vals(row, cur[1]);
      if constexpr (NC == 5) {
        zdx = dot_vals(row, cur[2]);
        zdxx = dot_vals(row, cur[3]);
        zdxxx = dot_vals(row, cur[4]);
      }
      if (last) {
        // Linear output layer (validated to be 1-wide).
        out[0] = zv;
        if constexpr (NC >= 2) out[1] = zdt;
        if constexpr (NC == 5) {
          out[2] = zdx;
          out[3] = zdxx;
          out[4] = zdxxx;
        }
        continue;
      }
      using std::tanh;
      const S p = tanh(zv);
      ws.a[0][j] = p;
      if constexpr (NC >= 2) {
        const S p1 = addc(-(p * p), 1.0);
        ws.a[1][j] = p1 * zdt;
        if constexpr (NC == 5) {
          const S p2 = mulc(p * p1, -2.0);
          const S p3 = mulc(p1 * p1, -2.0) + mulc(p * p2, -2.0);
          ws.a[2][j] = p1 * zdx;
          ws.a[3][j] = p2 * (zdx * zdx) + p1 * zdxx;
          ws.a[4][j] = p3 * (zdx * zdx * zdx) + mulc(p2 * (zdx * zdxx), 3.0) + p1 * zdxxx;
        }
      }
    }
    if (!last) {
      for (int c = 0; c < NC; ++c) cur[c] = std::span<const S>(ws.a[c].data(), l.n_out);
      std::swap(ws.a, ws.z);
    }
  }
  return out;
}

/// Plain-scalar evaluator. Casts the parameters to T once; per-point calls
/// then run allocation-free. Instances are cheap but not thread-safe; use
/// one per thread.
template <class T>
class ModelEval {
 public:
  ModelEval(const ParamVector& theta, const MlpArchitecture& arch)
      : layout_(param_layout(arch)), bounds_(arch.bounds), scales_(norm_scales(arch.bounds)) {
    arch.validate();
    if (theta.values.size() != arch.param_count()) {
      throw ConfigError("parameter vector does not match architecture");
    }
    params_.resize(theta.values.size());
    for (std::size_t i = 0; i < params_.size(); ++i) params_[i] = static_cast<T>(theta.values[i]);
  }

  /// Full jet of u at (x, t), derivatives with respect to the original
  /// (unnormalized) inputs.
  Jet<T> forward(double x, double t) {
    const auto [xt, tt] = normalized(x, t);
    std::array<std::array<T, 2>, 5> in{};
    in[0] = {xt, tt};
    in[1] = {T(0), static_cast<T>(scales_.st)};
    in[2] = {static_cast<T>(scales_.sx), T(0)};
    in[3] = {T(0), T(0)};
    in[4] = {T(0), T(0)};
    const auto o = mlp_forward_comps<T, 5>(std::span<const T>(params_), layout_, in, ws_);
    Jet<T> j{o[0], o[1], o[2], o[3], o[4]};
    if (!jet_finite(j)) {
      throw ModelEvalError("non-finite network output at (" + std::to_string(x) + ", " + std::to_string(t) + ")");
    }
    return j;
  }

  /// Value only. Bitwise identical to forward(x, t).val.
  T value(double x, double t) {
    const auto [xt, tt] = normalized(x, t);
    std::array<std::array<T, 2>, 1> in{{{xt, tt}}};
    return mlp_forward_comps<T, 1>(std::span<const T>(params_), layout_, in, ws_)[0];
  }

  /// Value and du/dt.
  std::pair<T, T> value_dt(double x, double t) {
    const auto [xt, tt] = normalized(x, t);
    std::array<std::array<T, 2>, 2> in{};
    in[0] = {xt, tt};
    in[1] = {T(0), static_cast<T>(scales_.st)};
    const auto o = mlp_forward_comps<T, 2>(std::span<const T>(params_), layout_, in, ws_);
    return {o[0], o[1]};
  }

 private:
  std::pair<T, T> normalized(double x, double t) const {
    const double xt = scales_.sx * (x - bounds_.x_min) - 1.0;
    const double tt = scales_.st * (t - bounds_.t_min) - 1.0;
    return {static_cast<T>(xt), static_cast<T>(tt)};
  }

  std::vector<LayerSlice> layout_;
  InputBounds bounds_;
  NormScales scales_;
  std::vector<T> params_;
  MlpScratch<T> ws_;
};

template <class T = double>
Jet<T> forward(const ParamVector& theta, const MlpArchitecture& arch, double x, double t) {
  ModelEval<T> eval(theta, arch);
  return eval.forward(x, t);
}

template <class T = double>
std::vector<Jet<T>> forward_batch(const ParamVector& theta, const MlpArchitecture& arch,
                                  std::span<const XT> points) {
  ModelEval<T> eval(theta, arch);
  std::vector<Jet<T>> out;
  out.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    try {
      out.push_back(eval.forward(points[i].x, points[i].t));
    } catch (const ModelEvalError& e) {
      throw ModelEvalError("point " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace pinnproj
