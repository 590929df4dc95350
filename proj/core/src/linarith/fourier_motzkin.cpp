#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "psim/errors.hpp"
#include "psim/linarith.hpp"

namespace psim {

bool LinearRow::satisfied_by(const std::vector<Rational>& x) const {
  Rational lhs = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) lhs += coeffs[i] * x.at(i);
  return strict ? lhs < bound : lhs <= bound;
}

void LinearSystem::add(std::vector<Rational> coeffs, Rational bound, bool strict) {
  if (coeffs.size() != n_vars) throw std::invalid_argument("row length does not match variable count");
  rows.push_back(LinearRow{std::move(coeffs), std::move(bound), strict});
}

void LinearSystem::add_equality(const std::vector<Rational>& coeffs, const Rational& bound) {
  add(coeffs, bound);
  std::vector<Rational> neg(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) neg[i] = -coeffs[i];
  add(std::move(neg), -bound);
}

bool LinearSystem::satisfied_by(const std::vector<Rational>& x) const {
  return std::all_of(rows.begin(), rows.end(), [&](const LinearRow& r) { return r.satisfied_by(x); });
}

std::string to_string(const LinearRow& row) {
  std::string out;
  for (std::size_t i = 0; i < row.coeffs.size(); ++i) {
    if (row.coeffs[i] == 0) continue;
    if (!out.empty()) out += row.coeffs[i] < 0 ? " - " : " + ";
    else if (row.coeffs[i] < 0) out += "-";
    Rational mag = abs(row.coeffs[i]);
    if (mag != 1) out += to_string(mag) + "*";
    out += "x" + std::to_string(i);
  }
  if (out.empty()) out = "0";
  out += row.strict ? " < " : " <= ";
  out += to_string(row.bound);
  return out;
}

namespace {

using Row = LinearRow;

// Scales so the first nonzero coefficient has magnitude one.
void normalize(Row& r) {
  for (const auto& c : r.coeffs) {
    if (c == 0) continue;
    const Rational scale = abs(c);
    if (scale != 1) {
      for (auto& d : r.coeffs) d /= scale;
      r.bound /= scale;
    }
    return;
  }
}

bool all_zero(const Row& r) {
  return std::all_of(r.coeffs.begin(), r.coeffs.end(), [](const Rational& c) { return c == 0; });
}

// Keeps only the tightest row per coefficient vector. Returns false when a
// constant row is violated.
bool prune(std::vector<Row>& rows) {
  std::map<std::vector<Rational>, Row> best;
  for (auto& r : rows) {
    if (all_zero(r)) {
      if (r.strict ? !(0 < r.bound) : !(0 <= r.bound)) return false;
      continue;
    }
    normalize(r);
    auto [it, fresh] = best.try_emplace(r.coeffs, r);
    if (fresh) continue;
    Row& kept = it->second;
    if (r.bound < kept.bound || (r.bound == kept.bound && r.strict)) kept = r;
  }
  rows.clear();
  rows.reserve(best.size());
  for (auto& [_, r] : best) rows.push_back(std::move(r));
  return true;
}

// Returns the index of a non-strict row whose exact negation is also
// present and which mentions `var`, if any.
std::optional<std::size_t> find_equality(const std::vector<Row>& rows, std::size_t var) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& a = rows[i];
    if (a.strict || a.coeffs[var] == 0) continue;
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      const Row& b = rows[j];
      if (b.strict || b.bound != -a.bound) continue;
      bool opposite = true;
      for (std::size_t k = 0; k < a.coeffs.size() && opposite; ++k) opposite = b.coeffs[k] == -a.coeffs[k];
      if (opposite) return i;
    }
  }
  return std::nullopt;
}

// c_p * q - c_q * p with c_p > 0 > c_q eliminates the variable.
Row combine(const Row& pos, const Row& neg, std::size_t var) {
  const Rational a = pos.coeffs[var];
  const Rational b = -neg.coeffs[var];
  Row out;
  out.coeffs.resize(pos.coeffs.size());
  for (std::size_t k = 0; k < pos.coeffs.size(); ++k) out.coeffs[k] = b * pos.coeffs[k] + a * neg.coeffs[k];
  out.coeffs[var] = 0;
  out.bound = b * pos.bound + a * neg.bound;
  out.strict = pos.strict || neg.strict;
  return out;
}

// Substitutes var using the equality e . x = e.bound.
Row substitute(const Row& r, const Row& e, std::size_t var) {
  const Rational factor = r.coeffs[var] / e.coeffs[var];
  Row out = r;
  for (std::size_t k = 0; k < r.coeffs.size(); ++k) out.coeffs[k] -= factor * e.coeffs[k];
  out.coeffs[var] = 0;
  out.bound -= factor * e.bound;
  return out;
}

struct Bound {
  Rational value;
  bool strict = false;
};

Rational pick(const std::optional<Bound>& lo, const std::optional<Bound>& hi) {
  if (lo && hi) {
    if (lo->value == hi->value) return lo->value;
    return (lo->value + hi->value) / 2;
  }
  if (lo) return lo->strict ? Rational(lo->value + 1) : lo->value;
  if (hi) return hi->strict ? Rational(hi->value - 1) : hi->value;
  return 0;
}

}  // namespace

std::optional<std::vector<Rational>> feasible(const LinearSystem& s, const FeasibilityOptions& options) {
  const std::size_t n = s.n_vars;
  if (n > options.max_vars) {
    throw ResourceError("system has " + std::to_string(n) + " variables; cap is " +
                        std::to_string(options.max_vars));
  }
  if (s.rows.size() > options.max_rows) {
    throw ResourceError("system has " + std::to_string(s.rows.size()) + " rows; cap is " +
                        std::to_string(options.max_rows));
  }
  for (const auto& r : s.rows) {
    if (r.coeffs.size() != n) throw std::invalid_argument("row length does not match variable count");
  }

  std::vector<std::size_t> order(n);
  if (options.order) {
    order = *options.order;
    std::vector<std::size_t> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::size_t> iota(n);
    std::iota(iota.begin(), iota.end(), std::size_t{0});
    if (sorted != iota) throw std::invalid_argument("elimination order is not a permutation");
  } else {
    for (std::size_t k = 0; k < n; ++k) order[k] = n - 1 - k;
  }

  std::vector<Row> rows = s.rows;
  if (!prune(rows)) return std::nullopt;

  // Rows mentioning each variable at the moment it was eliminated; these
  // bound it once the later variables have values.
  std::vector<std::vector<Row>> stage(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t var = order[k];
    std::vector<Row> keep;
    std::vector<Row> pos;
    std::vector<Row> neg;
    for (auto& r : rows) {
      if (r.coeffs[var] > 0) pos.push_back(r);
      else if (r.coeffs[var] < 0) neg.push_back(r);
      else keep.push_back(std::move(r));
    }
    stage[k] = pos;
    stage[k].insert(stage[k].end(), neg.begin(), neg.end());

    if (auto eq = find_equality(stage[k], var)) {
      const Row e = stage[k][*eq];
      for (const auto& r : stage[k]) {
        Row sub = substitute(r, e, var);
        keep.push_back(std::move(sub));
      }
    } else {
      if (keep.size() + pos.size() * neg.size() > options.max_intermediate_rows) {
        throw ResourceError("elimination exceeded " + std::to_string(options.max_intermediate_rows) + " rows");
      }
      for (const auto& p : pos) {
        for (const auto& q : neg) keep.push_back(combine(p, q, var));
      }
    }
    if (!prune(keep)) return std::nullopt;
    rows = std::move(keep);
  }
  // Every variable is gone; prune has already checked the constant rows.

  std::vector<Rational> x(n, Rational(0));
  for (std::size_t k = n; k-- > 0;) {
    const std::size_t var = order[k];
    std::optional<Bound> lo;
    std::optional<Bound> hi;
    for (const auto& r : stage[k]) {
      Rational rest = r.bound;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != var) rest -= r.coeffs[j] * x[j];
      }
      const Rational limit = rest / r.coeffs[var];
      if (r.coeffs[var] > 0) {
        if (!hi || limit < hi->value || (limit == hi->value && r.strict)) hi = Bound{limit, r.strict};
      } else {
        if (!lo || limit > lo->value || (limit == lo->value && r.strict)) lo = Bound{limit, r.strict};
      }
    }
    x[var] = pick(lo, hi);
  }
  return x;
}

}  // namespace psim
