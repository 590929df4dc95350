#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

#include "psim/syntax.hpp"

namespace psim {

InterventionSpec::InterventionSpec(std::vector<Entry> entries) : entries_(std::move(entries)) {
  for (std::size_t k = 1; k < entries_.size(); ++k) {
    if (entries_[k - 1].first >= entries_[k].first) {
      throw std::invalid_argument("intervention indices must be strictly increasing");
    }
  }
}

InterventionSpec InterventionSpec::from_unsorted(std::vector<Entry> entries) {
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& a, const Entry& b) { return a.first < b.first; });
  for (std::size_t k = 1; k < entries.size(); ++k) {
    if (entries[k - 1].first == entries[k].first) {
      throw std::invalid_argument("duplicate index X" + std::to_string(entries[k].first) +
                                  " in intervention");
    }
  }
  return InterventionSpec(std::move(entries));
}

bool InterventionSpec::holds(std::size_t index) const noexcept {
  return std::binary_search(entries_.begin(), entries_.end(), Entry{index, false},
                            [](const Entry& a, const Entry& b) { return a.first < b.first; });
}

bool InterventionSpec::value(std::size_t index) const noexcept {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), Entry{index, false},
                             [](const Entry& a, const Entry& b) { return a.first < b.first; });
  return it != entries_.end() && it->first == index && it->second;
}

PropFormula InterventionSpec::as_formula() const {
  if (entries_.empty()) return PropFormula::make_top();
  auto literal = [](const Entry& e) {
    auto atom = PropFormula::make_atom(e.first);
    return e.second ? atom : PropFormula::make_not(atom);
  };
  PropFormula out = literal(entries_.front());
  for (std::size_t k = 1; k < entries_.size(); ++k) out = PropFormula::make_and(out, literal(entries_[k]));
  return out;
}

LinearAtom LinearAtom::negated() const {
  LinearAtom out;
  out.terms.reserve(terms.size());
  for (const auto& t : terms) out.terms.push_back({-t.coeff, t.formula});
  out.bound = -bound;
  return out;
}

namespace {

// Minimal parenthesization for left-associative & and |, with ! binding
// tightest. `paren_leaf_under_not` wraps leaves that are themselves
// infix expressions (inequalities).
template <class Leaf, class LeafPrinter>
std::string print_formula(const Formula<Leaf>& f, const LeafPrinter& leaf, bool paren_leaf_under_not) {
  using K = typename Formula<Leaf>::Kind;
  auto wrap = [](std::string s) { return "(" + s + ")"; };
  switch (f.kind()) {
    case K::Leaf: return leaf(f.leaf());
    case K::Top: return "T";
    case K::Bottom: return "F";
    case K::Not: {
      const auto op = f.operand();
      std::string inner = print_formula(op, leaf, paren_leaf_under_not);
      if (op.is_binary() || (op.is_leaf() && paren_leaf_under_not)) inner = wrap(inner);
      return "!" + inner;
    }
    case K::And: {
      std::string l = print_formula(f.lhs(), leaf, paren_leaf_under_not);
      std::string r = print_formula(f.rhs(), leaf, paren_leaf_under_not);
      if (f.lhs().kind() == K::Or) l = wrap(l);
      if (f.rhs().is_binary()) r = wrap(r);
      return l + " & " + r;
    }
    case K::Or: {
      std::string l = print_formula(f.lhs(), leaf, paren_leaf_under_not);
      std::string r = print_formula(f.rhs(), leaf, paren_leaf_under_not);
      if (f.rhs().kind() == K::Or) r = wrap(r);
      return l + " | " + r;
    }
  }
  return {};
}

std::string print_atom_index(std::size_t i) { return "X" + std::to_string(i); }

}  // namespace

std::string to_string(const InterventionSpec& spec) {
  std::string out;
  for (const auto& [index, value] : spec.entries()) {
    if (!out.empty()) out += ",";
    if (!value) out += "!";
    out += print_atom_index(index);
  }
  return out;
}

std::string to_string(const PropFormula& f) { return print_formula(f, print_atom_index, false); }

std::string to_string(const CondAtom& a) {
  std::string cons = to_string(a.consequent);
  if (a.consequent.is_binary()) cons = "(" + cons + ")";
  return "<" + to_string(a.antecedent) + ">" + cons;
}

std::string to_string(const NonProbFormula& f) {
  return print_formula(f, [](const CondAtom& a) { return to_string(a); }, false);
}

std::string to_string(const LinearAtom& a) {
  if (a.terms.empty()) return "0 <= " + to_string(a.bound);
  auto term = [](const Integer& magnitude, const NonProbFormula& f) {
    std::string p = "P(" + to_string(f) + ")";
    if (magnitude == 1) return p;
    return to_string(magnitude) + "*" + p;
  };
  std::string out;
  for (std::size_t k = 0; k < a.terms.size(); ++k) {
    const auto& t = a.terms[k];
    if (k == 0) {
      out = t.coeff == -1 ? "-" + term(Integer(1), t.formula) : term(t.coeff, t.formula);
    } else if (t.coeff < 0) {
      out += " - " + term(Integer(-t.coeff), t.formula);
    } else {
      out += " + " + term(t.coeff, t.formula);
    }
  }
  return out + " <= " + to_string(a.bound);
}

std::string to_string(const ProbFormula& f) {
  return print_formula(f, [](const LinearAtom& a) { return to_string(a); }, true);
}

bool cond_atom_less(const CondAtom& a, const CondAtom& b) {
  const std::string aa = to_string(a.antecedent);
  const std::string ba = to_string(b.antecedent);
  if (aa != ba) return aa < ba;
  return to_string(a.consequent) < to_string(b.consequent);
}

namespace {

std::vector<CondAtom> sorted_unique(std::vector<CondAtom> atoms) {
  std::stable_sort(atoms.begin(), atoms.end(), cond_atom_less);
  std::vector<CondAtom> out;
  for (auto& a : atoms) {
    if (out.empty() || !(out.back() == a)) out.push_back(std::move(a));
  }
  return out;
}

}  // namespace

std::vector<CondAtom> cond_atoms_of(const NonProbFormula& f) {
  std::vector<CondAtom> atoms;
  f.for_each_leaf([&](const CondAtom& a) { atoms.push_back(a); });
  return sorted_unique(std::move(atoms));
}

std::vector<CondAtom> cond_atoms_of(const ProbFormula& f) {
  std::vector<CondAtom> atoms;
  f.for_each_leaf([&](const LinearAtom& la) {
    for (const auto& t : la.terms) t.formula.for_each_leaf([&](const CondAtom& a) { atoms.push_back(a); });
  });
  return sorted_unique(std::move(atoms));
}

std::vector<CondAtom> cond_atoms_of(const Clause& clause) {
  std::vector<CondAtom> atoms;
  for (const auto& lit : clause) {
    for (const auto& t : lit.atom.terms) t.formula.for_each_leaf([&](const CondAtom& a) { atoms.push_back(a); });
  }
  return sorted_unique(std::move(atoms));
}

std::vector<std::size_t> mentioned_indices(const PropFormula& f) {
  std::set<std::size_t> out;
  f.for_each_leaf([&](std::size_t i) { out.insert(i); });
  return {out.begin(), out.end()};
}

std::vector<std::size_t> mentioned_indices(const NonProbFormula& f) {
  std::set<std::size_t> out;
  f.for_each_leaf([&](const CondAtom& a) {
    for (const auto& e : a.antecedent.entries()) out.insert(e.first);
    a.consequent.for_each_leaf([&](std::size_t i) { out.insert(i); });
  });
  return {out.begin(), out.end()};
}

std::vector<LinearAtom> linear_atoms_of(const ProbFormula& f) {
  std::vector<LinearAtom> out;
  f.for_each_leaf([&](const LinearAtom& a) {
    if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
  });
  return out;
}

}  // namespace psim
