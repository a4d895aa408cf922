#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "msym/connections.hpp"
#include "msym/exterior.hpp"

namespace msym {

using DslValue = std::variant<Scalar, Form, Multivector>;

/// Parsed .msc document: a chart declaration followed by named definitions.
/// Grammar:
///   chart (extended|ordinary) n=<int> N=<int>
///   let <name> = <expr>
///   # comment
/// Expressions: coordinate atoms (x1, q1, p1_1, p), differentials d(<coord>),
/// basis vectors @<coord>, rational literals a/b, builtins theta/omega/sigma,
/// operators + - * ^ and parentheses. '*' binds tighter than '^', which binds
/// tighter than '+'/'-'. For N = 1 charts, 'q' is accepted as an alias for
/// 'q1' on input; rendering always uses canonical names.
struct DslDocument {
  Chart chart;
  std::vector<std::pair<std::string, DslValue>> definitions;

  const DslValue* find(const std::string& name) const;
  /// Canonical re-rendering; parses back to an equal document.
  std::string render() const;
  /// Assembles connection data from GammaE_<i>_<mu> and
  /// GammaTM_<kappa>_<mu>_<lambda> definitions (missing entries are zero;
  /// values must be polynomials in the base coordinates).
  ConnectionData connection() const;
};

DslDocument parse_document(const std::string& source);

/// Parses a single expression against an existing document's chart and
/// definitions (used by the eval command).
DslValue parse_expression(const std::string& source, const DslDocument& doc);

std::string render_value(const DslValue& v);

}  // namespace msym
