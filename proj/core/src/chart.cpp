#include "zsym/chart.hpp"

#include "zsym/errors.hpp"

namespace zsym {

Chart::Chart(std::shared_ptr<SymbolTable> symbols, std::vector<SymbolId> coordinates)
    : symbols_(std::move(symbols)), coordinates_(std::move(coordinates)) {
  if (!symbols_) throw Error("Chart: null symbol table");
  if (coordinates_.size() < 3)
    throw Error("Chart: dimension must be at least 3, got " +
                std::to_string(coordinates_.size()));
  for (SymbolId id : coordinates_) {
    if (!symbols_->contains(id) || symbols_->kind(id) != SymbolKind::coordinate)
      throw Error("Chart: coordinate list entry is not a registered coordinate");
  }
  for (std::size_t i = 0; i < coordinates_.size(); ++i)
    for (std::size_t j = i + 1; j < coordinates_.size(); ++j)
      if (coordinates_[i] == coordinates_[j]) throw Error("Chart: duplicate coordinate");
}

Expr Chart::coordinate_expr(int i) const { return make_symbol(*symbols_, coordinate(i)); }

const std::string& Chart::coordinate_name(int i) const { return symbols_->name(coordinate(i)); }

}  // namespace zsym
