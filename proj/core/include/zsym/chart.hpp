#pragma once

#include "zsym/expr.hpp"
#include "zsym/symbols.hpp"

#include <memory>
#include <string>
#include <vector>

namespace zsym {

/// Coordinate chart: an ordered list of coordinate symbols (n >= 3) plus the
/// symbol table carrying every symbol and domain assumption of the model.
class Chart {
 public:
  Chart(std::shared_ptr<SymbolTable> symbols, std::vector<SymbolId> coordinates);

  int dimension() const { return static_cast<int>(coordinates_.size()); }
  SymbolId coordinate(int i) const { return coordinates_.at(static_cast<std::size_t>(i)); }
  Expr coordinate_expr(int i) const;
  const std::string& coordinate_name(int i) const;

  const SymbolTable& symbols() const { return *symbols_; }
  const std::shared_ptr<SymbolTable>& symbols_ptr() const { return symbols_; }

 private:
  std::shared_ptr<SymbolTable> symbols_;
  std::vector<SymbolId> coordinates_;
};

}  // namespace zsym
