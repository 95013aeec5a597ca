#include "zsym/tensor_field.hpp"

#include "zsym/errors.hpp"

#include <algorithm>

namespace zsym {

int TensorSymmetry::canonicalize(IndexTuple& idx) const {
  switch (kind) {
    case Kind::none:
      return 1;
    case Kind::symmetric_pairs: {
      for (const auto& [a, b] : pairs) {
        if (idx[static_cast<std::size_t>(a)] > idx[static_cast<std::size_t>(b)])
          std::swap(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(b)]);
      }
      return 1;
    }
    case Kind::fully_symmetric:
      std::sort(idx.begin(), idx.end());
      return 1;
    case Kind::riemann: {
      int sign = 1;
      if (idx[0] == idx[1] || idx[2] == idx[3]) return 0;
      if (idx[0] > idx[1]) {
        std::swap(idx[0], idx[1]);
        sign = -sign;
      }
      if (idx[2] > idx[3]) {
        std::swap(idx[2], idx[3]);
        sign = -sign;
      }
      if (idx[0] > idx[2] || (idx[0] == idx[2] && idx[1] > idx[3])) {
        std::swap(idx[0], idx[2]);
        std::swap(idx[1], idx[3]);
      }
      return sign;
    }
  }
  return 1;
}

TensorField::TensorField(int dim, int valence, TensorSymmetry sym)
    : dim_(dim), valence_(valence), sym_(std::move(sym)) {
  if (dim < 1 || dim > 255) throw Error("TensorField: unsupported dimension");
  if (valence < 1 || valence > 8) throw Error("TensorField: unsupported valence");
  if (sym_.kind == TensorSymmetry::Kind::riemann && valence_ < 4)
    throw Error("TensorField: riemann symmetry needs valence >= 4");
}

std::uint64_t TensorField::key(const IndexTuple& idx) const {
  std::uint64_t k = 0;
  for (int v : idx) k = (k << 8) | static_cast<std::uint64_t>(v & 0xff);
  return k;
}

Expr TensorField::at(IndexTuple idx) const {
  if (static_cast<int>(idx.size()) != valence_) throw Error("TensorField::at: wrong arity");
  for (int v : idx)
    if (v < 0 || v >= dim_) throw Error("TensorField::at: index out of range");
  int sign = sym_.canonicalize(idx);
  if (sign == 0) return Expr();
  auto it = comps_.find(key(idx));
  if (it == comps_.end()) return Expr();
  return sign == 1 ? it->second.second : -it->second.second;
}

void TensorField::set(IndexTuple idx, Expr value) {
  if (static_cast<int>(idx.size()) != valence_) throw Error("TensorField::set: wrong arity");
  for (int v : idx)
    if (v < 0 || v >= dim_) throw Error("TensorField::set: index out of range");
  int sign = sym_.canonicalize(idx);
  if (sign == 0) {
    if (!value.is_zero_constant())
      throw Error("TensorField::set: antisymmetry forces this component to zero");
    return;
  }
  if (value.is_zero_constant()) {
    comps_.erase(key(idx));
    return;
  }
  comps_[key(idx)] = {idx, sign == 1 ? std::move(value) : -value};
}

void TensorField::for_each_canonical(const std::function<void(const IndexTuple&)>& fn) const {
  IndexTuple idx(static_cast<std::size_t>(valence_), 0);
  for (;;) {
    IndexTuple probe = idx;
    int sign = sym_.canonicalize(probe);
    if (sign != 0 && probe == idx) fn(idx);
    int slot = valence_ - 1;
    while (slot >= 0) {
      if (++idx[static_cast<std::size_t>(slot)] < dim_) break;
      idx[static_cast<std::size_t>(slot)] = 0;
      --slot;
    }
    if (slot < 0) break;
  }
}

std::vector<std::pair<IndexTuple, Expr>> TensorField::stored() const {
  std::vector<std::pair<IndexTuple, Expr>> out;
  out.reserve(comps_.size());
  for (const auto& [k, v] : comps_) out.push_back(v);
  return out;
}

}  // namespace zsym
