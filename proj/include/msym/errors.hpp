#pragma once

#include <stdexcept>
#include <string>

namespace msym {

/// Thrown when an operation is called with arguments that violate its
/// contract (chart mismatch, wrong degree, unknown coordinate, ...).
struct usage_error : std::runtime_error {
  explicit usage_error(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when a form turns out not to be Hamiltonian (the contraction
/// system i_X omega = df has no solution).
struct not_hamiltonian_error : std::runtime_error {
  explicit not_hamiltonian_error(const std::string& what)
      : std::runtime_error(what) {}
};

/// Thrown for coordinate changes outside the supported (affine) class.
struct unsupported_change_error : std::runtime_error {
  explicit unsupported_change_error(const std::string& what)
      : std::runtime_error(what) {}
};

struct parse_error : std::runtime_error {
  parse_error(const std::string& what, int line, int column)
      : std::runtime_error(what), line(line), column(column) {}
  int line;
  int column;
};

}  // namespace msym
