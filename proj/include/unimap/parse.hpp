#pragma once

#include <string>

#include "unimap/map.hpp"

namespace unimap {

// Map-definition text format:
//   file     := "dim" INT ";" ("phi" "=" expr ";")? ("f" INDEX "=" expr ";")+
//   expr     := rational | "t" | "x" INDEX | expr ("+"|"-"|"*") expr
//             | expr "^" UINT | "-" expr
//             | ("sin"|"cos"|"exp"|"phi") "(" expr ")" | "(" expr ")"
//   rational := INT | INT "/" POSINT
// Whitespace is insignificant. "t" is legal only inside the phi definition.
// Every component f1..fn must be defined exactly once.
ExprMap parse_map(const std::string& text);

// Single expression in n variables (x1..xn); allow_t enables the reserved
// phi parameter as variable 0.
Expr parse_expr(const std::string& text, int nvars, bool allow_t = false);

} // namespace unimap
