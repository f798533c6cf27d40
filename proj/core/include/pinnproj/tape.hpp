#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "pinnproj/errors.hpp"

namespace pinnproj {

/// Recorded scalar operation kinds. Dot and Affine are fused forms of the
/// plain scalar rules (a chain of mul/add) recorded as one node; their
/// local partials are recovered from operand values during the reverse
/// sweep, so nothing beyond operand indices needs to be stored.
enum class OpKind : std::uint8_t {
  kParam,     // persistent leaf; adjoints accumulate across backward calls
  kConst,     // per-expression constant leaf
  kAdd,       // a + b
  kSub,       // a - b
  kMul,       // a * b
  kNeg,       // -a
  kAddConst,  // a + aux
  kMulConst,  // a * aux
  kTanh,      // tanh(a)
  kDot,       // sum_j v[pool[2j]] * v[pool[2j+1]]
  kAffine,    // aux + sum_j coef[c+j] * v[pool[a+j]]
};

template <class T>
class Tape;

/// Handle to a tape scalar. Arithmetic on handles records new nodes, so any
/// expression written against this type is the scalar expansion of itself.
template <class T>
struct TVar {
  Tape<T>* tape;
  std::uint32_t idx;
};

/// Append-only record of scalar operations (a Wengert list). Nodes are
/// stored in topological order by construction: an operand index always
/// precedes the node that consumes it. Values are computed at record time;
/// `replay` recomputes them from the recorded structure alone.
///
/// Large objectives stream through the tape: `mark`/`rewind` truncate back
/// to the parameter prefix between independent contributions while the
/// parameter adjoints keep accumulating.
template <class T>
class Tape {
 public:
  using Var = TVar<T>;

  struct Mark {
    std::size_t nodes, pool, coef;
  };

  Tape() {
    nodes_.reserve(1 << 12);
    value_.reserve(1 << 12);
  }

  void clear() {
    nodes_.clear();
    value_.clear();
    pool_.clear();
    coef_.clear();
    adjoint_.clear();
    n_params_ = 0;
  }

  std::size_t size() const { return nodes_.size(); }
  std::size_t param_count() const { return n_params_; }
  T value(Var v) const { return value_[v.idx]; }

  /// Record the persistent parameter leaves. Must be the first recording
  /// after clear(); returns the handle of parameter 0 (they are contiguous).
  Var params(std::span<const T> theta) {
    assert(nodes_.empty());
    for (const T v : theta) push(OpKind::kParam, 0, 0, 0, T(0), v);
    n_params_ = static_cast<std::uint32_t>(theta.size());
    return Var{this, 0};
  }

  Var param(std::uint32_t i) {
    assert(i < n_params_);
    return Var{this, i};
  }

  Var constant(T v) { return push(OpKind::kConst, 0, 0, 0, T(0), v); }

  Var add(Var a, Var b) { return push(OpKind::kAdd, a.idx, b.idx, 0, T(0), value_[a.idx] + value_[b.idx]); }
  Var sub(Var a, Var b) { return push(OpKind::kSub, a.idx, b.idx, 0, T(0), value_[a.idx] - value_[b.idx]); }
  Var mul(Var a, Var b) { return push(OpKind::kMul, a.idx, b.idx, 0, T(0), value_[a.idx] * value_[b.idx]); }
  Var neg(Var a) { return push(OpKind::kNeg, a.idx, 0, 0, T(0), -value_[a.idx]); }
  Var add_const(Var a, T c) { return push(OpKind::kAddConst, a.idx, 0, 0, c, value_[a.idx] + c); }
  Var mul_const(Var a, T c) { return push(OpKind::kMulConst, a.idx, 0, 0, c, value_[a.idx] * c); }

  Var tanh_of(Var a) {
    using std::tanh;
    return push(OpKind::kTanh, a.idx, 0, 0, T(0), tanh(value_[a.idx]));
  }

  /// Fused inner product sum_j lhs[j]*rhs[j], one node.
  Var dot(std::span<const Var> lhs, std::span<const Var> rhs) {
    assert(lhs.size() == rhs.size());
    const auto off = static_cast<std::uint32_t>(pool_.size());
    const auto n = static_cast<std::uint32_t>(lhs.size());
    T acc = T(0);
    for (std::size_t j = 0; j < lhs.size(); ++j) {
      pool_.push_back(lhs[j].idx);
      pool_.push_back(rhs[j].idx);
      acc += value_[lhs[j].idx] * value_[rhs[j].idx];
    }
    return push(OpKind::kDot, off, n, 0, T(0), acc);
  }

  /// Fused affine form c0 + sum_j coef[j]*v[ops[j]] with constant
  /// coefficients, one node.
  Var affine(T c0, std::span<const Var> ops, std::span<const T> coef) {
    assert(ops.size() == coef.size());
    const auto off = static_cast<std::uint32_t>(pool_.size());
    const auto coff = static_cast<std::uint32_t>(coef_.size());
    const auto n = static_cast<std::uint32_t>(ops.size());
    T acc = c0;
    for (std::size_t j = 0; j < ops.size(); ++j) {
      pool_.push_back(ops[j].idx);
      coef_.push_back(coef[j]);
      acc += coef[j] * value_[ops[j].idx];
    }
    return push(OpKind::kAffine, off, n, coff, c0, acc);
  }

  Mark mark() const { return {nodes_.size(), pool_.size(), coef_.size()}; }

  void rewind(Mark m) {
    nodes_.resize(m.nodes);
    value_.resize(m.nodes);
    pool_.resize(m.pool);
    coef_.resize(m.coef);
  }

  /// Reverse sweep from `root` seeded with `seed`. Parameter adjoints
  /// accumulate in place (read with `param_adjoints`, reset with
  /// `clear_param_adjoints`); every other visited entry is re-zeroed on the
  /// way down so the adjoint buffer stays clean across rewinds.
  void backward(Var root, T seed) {
    if (adjoint_.size() < nodes_.size()) adjoint_.resize(nodes_.size(), T(0));
    adjoint_[root.idx] += seed;
    for (std::uint32_t i = root.idx;; --i) {
      const T delta = adjoint_[i];
      if (delta != T(0)) {
        const Node& nd = nodes_[i];
        switch (nd.kind) {
          case OpKind::kParam:
            break;  // accumulated result; keep
          case OpKind::kConst:
            adjoint_[i] = T(0);
            break;
          case OpKind::kAdd:
            adjoint_[nd.a] += delta;
            adjoint_[nd.b] += delta;
            adjoint_[i] = T(0);
            break;
          case OpKind::kSub:
            adjoint_[nd.a] += delta;
            adjoint_[nd.b] -= delta;
            adjoint_[i] = T(0);
            break;
          case OpKind::kMul:
            adjoint_[nd.a] += value_[nd.b] * delta;
            adjoint_[nd.b] += value_[nd.a] * delta;
            adjoint_[i] = T(0);
            break;
          case OpKind::kNeg:
            adjoint_[nd.a] -= delta;
            adjoint_[i] = T(0);
            break;
          case OpKind::kAddConst:
            adjoint_[nd.a] += delta;
            adjoint_[i] = T(0);
            break;
          case OpKind::kMulConst:
            adjoint_[nd.a] += nd.aux * delta;
            adjoint_[i] = T(0);
            break;
          case OpKind::kTanh: {
            const T y = value_[i];
            adjoint_[nd.a] += (T(1) - y * y) * delta;
            adjoint_[i] = T(0);
            break;
          }
          case OpKind::kDot: {
            const std::uint32_t* p = pool_.data() + nd.a;
            for (std::uint32_t j = 0; j < nd.b; ++j) {
              const std::uint32_t l = p[2 * j], r = p[2 * j + 1];
              adjoint_[l] += value_[r] * delta;
              adjoint_[r] += value_[l] * delta;
            }
            adjoint_[i] = T(0);
            break;
          }
          case OpKind::kAffine: {
            const std::uint32_t* p = pool_.data() + nd.a;
            const T* c = coef_.data() + nd.c;
            for (std::uint32_t j = 0; j < nd.b; ++j) adjoint_[p[j]] += c[j] * delta;
            adjoint_[i] = T(0);
            break;
          }
        }
      }
      if (i == 0) break;
    }
  }

  std::span<const T> param_adjoints() const { return {adjoint_.data(), n_params_}; }

  void clear_param_adjoints() {
    if (adjoint_.size() < n_params_) adjoint_.resize(n_params_, T(0));
    for (std::uint32_t i = 0; i < n_params_; ++i) adjoint_[i] = T(0);
  }

  /// Recompute every node value from the recorded structure (forward
  /// replay) and return the value at `v`. The recompute overwrites the
  /// stored values with bit-identical results by construction.
  T replay(Var v) {
    using std::tanh;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const Node& nd = nodes_[i];
      switch (nd.kind) {
        case OpKind::kParam:
        case OpKind::kConst:
          break;  // leaf values are the inputs of the replay
        case OpKind::kAdd: value_[i] = value_[nd.a] + value_[nd.b]; break;
        case OpKind::kSub: value_[i] = value_[nd.a] - value_[nd.b]; break;
        case OpKind::kMul: value_[i] = value_[nd.a] * value_[nd.b]; break;
        case OpKind::kNeg: value_[i] = -value_[nd.a]; break;
        case OpKind::kAddConst: value_[i] = value_[nd.a] + nd.aux; break;
        case OpKind::kMulConst: value_[i] = value_[nd.a] * nd.aux; break;
        case OpKind::kTanh: value_[i] = tanh(value_[nd.a]); break;
        case OpKind::kDot: {
          const std::uint32_t* p = pool_.data() + nd.a;
          T acc = T(0);
          for (std::uint32_t j = 0; j < nd.b; ++j) acc += value_[p[2 * j]] * value_[p[2 * j + 1]];
          value_[i] = acc;
          break;
        }
        case OpKind::kAffine: {
          const std::uint32_t* p = pool_.data() + nd.a;
          const T* c = coef_.data() + nd.c;
          T acc = nd.aux;
          for (std::uint32_t j = 0; j < nd.b; ++j) acc += c[j] * value_[p[j]];
          value_[i] = acc;
          break;
        }
      }
    }
    return value_[v.idx];
  }

 private:
  struct Node {
    OpKind kind;
    std::uint32_t a, b, c;
    T aux;
  };

  Var push(OpKind k, std::uint32_t a, std::uint32_t b, std::uint32_t c, T aux, T v) {
    const auto idx = static_cast<std::uint32_t>(nodes_.size());
    nodes_.push_back(Node{k, a, b, c, aux});
    value_.push_back(v);
    return Var{this, idx};
  }

  std::vector<Node> nodes_;
  std::vector<T> value_;
  std::vector<std::uint32_t> pool_;
  std::vector<T> coef_;
  std::vector<T> adjoint_;
  std::uint32_t n_params_ = 0;
};

// Handle arithmetic. Every overload records exactly one or two scalar nodes.

template <class T> TVar<T> operator+(TVar<T> a, TVar<T> b) { return a.tape->add(a, b); }
template <class T> TVar<T> operator-(TVar<T> a, TVar<T> b) { return a.tape->sub(a, b); }
template <class T> TVar<T> operator*(TVar<T> a, TVar<T> b) { return a.tape->mul(a, b); }
template <class T> TVar<T> operator-(TVar<T> a) { return a.tape->neg(a); }
template <class T> TVar<T> operator+(TVar<T> a, double c) { return a.tape->add_const(a, static_cast<T>(c)); }
template <class T> TVar<T> operator+(double c, TVar<T> a) { return a + c; }
template <class T> TVar<T> operator-(TVar<T> a, double c) { return a.tape->add_const(a, static_cast<T>(-c)); }
template <class T> TVar<T> operator-(double c, TVar<T> a) { return a.tape->add_const(a.tape->neg(a), static_cast<T>(c)); }
template <class T> TVar<T> operator*(TVar<T> a, double c) { return a.tape->mul_const(a, static_cast<T>(c)); }
template <class T> TVar<T> operator*(double c, TVar<T> a) { return a * c; }
template <class T> TVar<T> operator/(TVar<T> a, double c) { return a.tape->mul_const(a, static_cast<T>(1.0 / c)); }
template <class T> TVar<T> tanh(TVar<T> a) { return a.tape->tanh_of(a); }

// Customization points used by the generic jet algebra.
template <class T> TVar<T> mulc(TVar<T> v, double c) { return v * c; }
template <class T> TVar<T> addc(TVar<T> v, double c) { return v + c; }

}  // namespace pinnproj
