#include "zsym/symbols.hpp"

#include "zsym/errors.hpp"

namespace zsym {

SymbolId SymbolTable::add(const std::string& name, SymbolKind kind, Assumption a) {
  if (name.empty()) throw Error("symbol name must not be empty");
  if (find(name)) throw Error("duplicate symbol name '" + name + "'");
  entries_.push_back(Entry{name, kind, a});
  return static_cast<SymbolId>(entries_.size() - 1);
}

SymbolId SymbolTable::add_coordinate(const std::string& name, Assumption a) {
  return add(name, SymbolKind::coordinate, a);
}

SymbolId SymbolTable::add_parameter(const std::string& name, Assumption a) {
  return add(name, SymbolKind::parameter, a);
}

std::optional<SymbolId> SymbolTable::find(const std::string& name) const {
  for (SymbolId i = 0; i < entries_.size(); ++i)
    if (entries_[i].name == name) return i;
  return std::nullopt;
}

std::vector<SymbolId> SymbolTable::coordinates() const {
  std::vector<SymbolId> out;
  for (SymbolId i = 0; i < entries_.size(); ++i)
    if (entries_[i].kind == SymbolKind::coordinate) out.push_back(i);
  return out;
}

std::vector<SymbolId> SymbolTable::parameters() const {
  std::vector<SymbolId> out;
  for (SymbolId i = 0; i < entries_.size(); ++i)
    if (entries_[i].kind == SymbolKind::parameter) out.push_back(i);
  return out;
}

}  // namespace zsym
