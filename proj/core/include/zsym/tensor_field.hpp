#pragma once

#include "zsym/expr.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <utility>
#include <vector>

namespace zsym {

using IndexTuple = std::vector<int>;  // 0-based slot indices

/// Declared index symmetry of a covariant tensor. Canonical storage keeps one
/// representative per orbit; access applies the symmetry (including the sign
/// for the Riemann pattern, and forced zeros like R_{iijk}).
struct TensorSymmetry {
  enum class Kind : std::uint8_t { none, symmetric_pairs, fully_symmetric, riemann };

  Kind kind = Kind::none;
  /// For symmetric_pairs: disjoint slot pairs that commute.
  std::vector<std::pair<int, int>> pairs;
  /// For riemann: the symmetries act on slots [0,4); any further slots
  /// (covariant-derivative indices) are unconstrained.

  static TensorSymmetry none() { return {}; }
  static TensorSymmetry symmetric_pair(int a, int b) {
    TensorSymmetry s;
    s.kind = Kind::symmetric_pairs;
    s.pairs = {{a, b}};
    return s;
  }
  static TensorSymmetry fully_symmetric() {
    TensorSymmetry s;
    s.kind = Kind::fully_symmetric;
    return s;
  }
  static TensorSymmetry riemann() {
    TensorSymmetry s;
    s.kind = Kind::riemann;
    return s;
  }

  /// Canonicalizes `idx` in place; returns +1/-1, or 0 when the component is
  /// forced to vanish by antisymmetry.
  int canonicalize(IndexTuple& idx) const;
};

/// Covariant tensor of valence k with Expr components over an n-dimensional
/// chart. Only canonical orbit representatives are stored; identically zero
/// components are implicit.
class TensorField {
 public:
  TensorField(int dim, int valence, TensorSymmetry sym = {});

  int dimension() const { return dim_; }
  int valence() const { return valence_; }
  const TensorSymmetry& symmetry() const { return sym_; }

  /// Component with the symmetry applied; zero Expr when unset or forced.
  Expr at(IndexTuple idx) const;

  /// Stores through the canonical representative (dividing out the sign).
  void set(IndexTuple idx, Expr value);

  /// Invokes fn for every canonical representative index (including unset
  /// ones, which read as zero).
  void for_each_canonical(const std::function<void(const IndexTuple&)>& fn) const;

  /// Canonical representatives with explicitly stored (possibly nonzero)
  /// components.
  std::vector<std::pair<IndexTuple, Expr>> stored() const;

  bool same_shape(const TensorField& other) const {
    return dim_ == other.dim_ && valence_ == other.valence_;
  }

 private:
  std::uint64_t key(const IndexTuple& idx) const;
  int dim_;
  int valence_;
  TensorSymmetry sym_;
  std::map<std::uint64_t, std::pair<IndexTuple, Expr>> comps_;
};

}  // namespace zsym
