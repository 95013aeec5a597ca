#pragma once

#include "zsym/expr.hpp"
#include "zsym/symbols.hpp"

#include <cstddef>
#include <string>

namespace zsym {

/// Parses the expression grammar:
///
///   expr     := ['+'|'-'] term (('+'|'-') term)*
///   term     := factor (('*'|'/') factor)*
///   factor   := base ['^' exponent]
///   exponent := ['-'] integer | '(' ['-'] integer ['/' integer] ')'
///   base     := integer | identifier | func '(' expr ')' | '(' expr ')'
///   func     := exp | sqrt | sin | cos
///
/// Every identifier must be registered in `symbols`. Returns the normalized
/// expression. Throws ParseError (with position) or UnknownSymbolError.
///
/// `line` and `column_offset` seed the reported positions so that callers
/// embedding expressions in larger files can report file coordinates.
Expr parse_expr(const std::string& text, const SymbolTable& symbols, std::size_t line = 1,
                std::size_t column_offset = 0);

}  // namespace zsym
