#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace zsym {

using SymbolId = std::uint32_t;
inline constexpr SymbolId kNoSymbol = 0xffffffffu;

enum class SymbolKind : std::uint8_t { coordinate, parameter };

/// Domain assumption attached to a symbol. `excluded` lists isolated values
/// the symbol never takes (0 is implied by positive/negative/nonzero).
struct Assumption {
  enum class Sign : std::uint8_t { unconstrained, positive, negative, nonzero };
  Sign sign = Sign::unconstrained;
};

/// Registry of every symbol a model may mention. Coordinate and parameter
/// name sets are disjoint and names are unique.
class SymbolTable {
 public:
  SymbolId add_coordinate(const std::string& name, Assumption a = {});
  SymbolId add_parameter(const std::string& name, Assumption a = {});

  std::optional<SymbolId> find(const std::string& name) const;
  bool contains(SymbolId id) const { return id < entries_.size(); }

  const std::string& name(SymbolId id) const { return entries_.at(id).name; }
  SymbolKind kind(SymbolId id) const { return entries_.at(id).kind; }
  const Assumption& assumption(SymbolId id) const { return entries_.at(id).assumption; }
  void set_assumption(SymbolId id, Assumption a) { entries_.at(id).assumption = a; }

  std::size_t size() const { return entries_.size(); }
  std::vector<SymbolId> coordinates() const;
  std::vector<SymbolId> parameters() const;

 private:
  struct Entry {
    std::string name;
    SymbolKind kind;
    Assumption assumption;
  };
  SymbolId add(const std::string& name, SymbolKind kind, Assumption a);
  std::vector<Entry> entries_;
};

}  // namespace zsym
