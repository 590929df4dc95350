#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "psim/numeric.hpp"

namespace psim {

// coeffs . x <= bound, or < bound when strict.
struct LinearRow {
  std::vector<Rational> coeffs;
  Rational bound;
  bool strict = false;

  bool satisfied_by(const std::vector<Rational>& x) const;
  friend bool operator==(const LinearRow&, const LinearRow&) = default;
};

struct LinearSystem {
  std::size_t n_vars = 0;
  std::vector<LinearRow> rows;

  // Appends a row; throws std::invalid_argument on a length mismatch.
  void add(std::vector<Rational> coeffs, Rational bound, bool strict = false);
  // Appends coeffs . x == bound as two rows.
  void add_equality(const std::vector<Rational>& coeffs, const Rational& bound);
  bool satisfied_by(const std::vector<Rational>& x) const;
};

std::string to_string(const LinearRow& row);

struct FeasibilityOptions {
  std::size_t max_vars = 64;
  std::size_t max_rows = 256;
  // Bound on rows alive at any point during elimination.
  std::size_t max_intermediate_rows = 65536;
  // Variables in elimination order; default eliminates the last variable
  // first. Must be a permutation of 0..n_vars-1.
  std::optional<std::vector<std::size_t>> order;
};

// Exact Fourier-Motzkin elimination. Returns a witness satisfying every row
// (strict rows strictly) or nullopt when the system is infeasible. Throws
// ResourceError beyond the caps.
std::optional<std::vector<Rational>> feasible(const LinearSystem& s, const FeasibilityOptions& options = {});

}  // namespace psim
