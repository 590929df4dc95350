#pragma once

#include <cassert>
#include <cstdint>
#include <memory>
#include <optional>
#include <utility>

#include "psim/tri.hpp"

namespace psim {

// Immutable Boolean combination over leaves of type `Atom`. Nodes are shared,
// so copies are cheap and formulas may be handed to any number of threads.
template <class Atom>
class Formula {
 public:
  enum class Kind : std::uint8_t { Leaf, Top, Bottom, Not, And, Or };

  Formula() : Formula(make_top()) {}

  static Formula make_atom(Atom leaf) {
    return Formula(std::make_shared<const Node>(Node{Kind::Leaf, std::move(leaf), {}, {}}));
  }
  static Formula make_top() { return Formula(std::make_shared<const Node>(Node{Kind::Top, {}, {}, {}})); }
  static Formula make_bottom() {
    return Formula(std::make_shared<const Node>(Node{Kind::Bottom, {}, {}, {}}));
  }
  static Formula make_not(Formula f) {
    return Formula(std::make_shared<const Node>(Node{Kind::Not, {}, std::move(f.node_), {}}));
  }
  static Formula make_and(Formula a, Formula b) {
    return Formula(std::make_shared<const Node>(Node{Kind::And, {}, std::move(a.node_), std::move(b.node_)}));
  }
  static Formula make_or(Formula a, Formula b) {
    return Formula(std::make_shared<const Node>(Node{Kind::Or, {}, std::move(a.node_), std::move(b.node_)}));
  }
  // a -> b is sugar for !a | b.
  static Formula make_implies(Formula a, Formula b) { return make_or(make_not(std::move(a)), std::move(b)); }
  // a <-> b is sugar for (a -> b) & (b -> a).
  static Formula make_iff(const Formula& a, const Formula& b) {
    return make_and(make_implies(a, b), make_implies(b, a));
  }

  Kind kind() const noexcept { return node_->kind; }
  bool is_leaf() const noexcept { return node_->kind == Kind::Leaf; }
  bool is_binary() const noexcept { return node_->kind == Kind::And || node_->kind == Kind::Or; }

  const Atom& leaf() const {
    assert(is_leaf());
    return *node_->leaf;
  }
  Formula operand() const {
    assert(kind() == Kind::Not);
    return Formula(node_->lhs);
  }
  Formula lhs() const {
    assert(is_binary());
    return Formula(node_->lhs);
  }
  Formula rhs() const {
    assert(is_binary());
    return Formula(node_->rhs);
  }

  // Two-valued evaluation; `value` maps each leaf to bool.
  template <class Fn>
  bool holds(Fn&& value) const {
    switch (kind()) {
      case Kind::Leaf: return value(leaf());
      case Kind::Top: return true;
      case Kind::Bottom: return false;
      case Kind::Not: return !operand().holds(value);
      case Kind::And: return lhs().holds(value) && rhs().holds(value);
      case Kind::Or: return lhs().holds(value) || rhs().holds(value);
    }
    return false;
  }

  // Kleene evaluation; `value` maps each leaf to Tri.
  template <class Fn>
  Tri evaluate(Fn&& value) const {
    switch (kind()) {
      case Kind::Leaf: return value(leaf());
      case Kind::Top: return Tri::True;
      case Kind::Bottom: return Tri::False;
      case Kind::Not: return !operand().evaluate(value);
      case Kind::And: {
        const Tri a = lhs().evaluate(value);
        if (a == Tri::False) return Tri::False;
        return a && rhs().evaluate(value);
      }
      case Kind::Or: {
        const Tri a = lhs().evaluate(value);
        if (a == Tri::True) return Tri::True;
        return a || rhs().evaluate(value);
      }
    }
    return Tri::Unknown;
  }

  template <class Fn>
  void for_each_leaf(Fn&& fn) const {
    switch (kind()) {
      case Kind::Leaf: fn(leaf()); break;
      case Kind::Not: operand().for_each_leaf(fn); break;
      case Kind::And:
      case Kind::Or:
        lhs().for_each_leaf(fn);
        rhs().for_each_leaf(fn);
        break;
      default: break;
    }
  }

  // Rebuilds the formula with each leaf replaced by `fn(leaf)`.
  template <class Out, class Fn>
  Formula<Out> map_leaves(Fn&& fn) const {
    switch (kind()) {
      case Kind::Leaf: return fn(leaf());
      case Kind::Top: return Formula<Out>::make_top();
      case Kind::Bottom: return Formula<Out>::make_bottom();
      case Kind::Not: return Formula<Out>::make_not(operand().template map_leaves<Out>(fn));
      case Kind::And:
        return Formula<Out>::make_and(lhs().template map_leaves<Out>(fn), rhs().template map_leaves<Out>(fn));
      case Kind::Or:
        return Formula<Out>::make_or(lhs().template map_leaves<Out>(fn), rhs().template map_leaves<Out>(fn));
    }
    return Formula<Out>::make_top();
  }

  std::size_t size() const {
    switch (kind()) {
      case Kind::Not: return 1 + operand().size();
      case Kind::And:
      case Kind::Or: return 1 + lhs().size() + rhs().size();
      default: return 1;
    }
  }

  friend bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case Kind::Leaf: return a.leaf() == b.leaf();
      case Kind::Top:
      case Kind::Bottom: return true;
      case Kind::Not: return a.operand() == b.operand();
      default: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    }
  }

 private:
  struct Node {
    Kind kind;
    std::optional<Atom> leaf;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
  };

  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

}  // namespace psim
