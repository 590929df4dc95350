#include <sstream>

#include "psim/errors.hpp"
#include "psim/vm.hpp"

namespace psim {
namespace {

class Machine {
 public:
  enum class Status { Running, Halted, OutOfFuel, NeedBit };

  Machine(const Runnable& r, const Bits& prefix, std::uint64_t fuel)
      : holds_(r.holds()), tape_(r.holds()), prefix_(prefix), fuel_(fuel) {}

  RunOutcome run(const Block& body) {
    Status s = exec(body);
    switch (s) {
      case Status::OutOfFuel: return FuelExhausted{bits_};
      case Status::NeedBit: return BitDemand{bits_};
      default: return Halted{std::move(tape_), bits_};
    }
  }

 private:
  bool get(std::size_t i) const {
    auto it = tape_.find(i);
    return it != tape_.end() && it->second;
  }

  void set(std::size_t i, bool v) {
    if (holds_.count(i) == 0) tape_[i] = v;
  }

  bool eval(const Expr& e) const {
    switch (e.kind) {
      case Expr::Kind::Const: return e.value;
      case Expr::Kind::Read: return get(e.index);
      case Expr::Kind::Not: return !eval(e.args[0]);
      case Expr::Kind::And: return eval(e.args[0]) && eval(e.args[1]);
      case Expr::Kind::Or: return eval(e.args[0]) || eval(e.args[1]);
      case Expr::Kind::Xor: return eval(e.args[0]) != eval(e.args[1]);
    }
    return false;
  }

  bool charge() {
    if (fuel_ == 0) return false;
    --fuel_;
    return true;
  }

  Status exec(const Block& block) {
    for (const auto& s : block) {
      if (!charge()) return Status::OutOfFuel;
      switch (s.kind) {
        case Stmt::Kind::Write: set(s.index, eval(s.expr)); break;
        case Stmt::Kind::Flip: {
          if (bits_ >= prefix_.size()) return Status::NeedBit;
          // A flip into a held square still consumes its bit.
          set(s.index, prefix_[bits_++]);
          break;
        }
        case Stmt::Kind::If: {
          const Status r = exec(eval(s.expr) ? s.body : s.orelse);
          if (r != Status::Running) return r;
          break;
        }
        case Stmt::Kind::While: {
          while (eval(s.expr)) {
            const Status r = exec(s.body);
            if (r != Status::Running) return r;
            if (!charge()) return Status::OutOfFuel;
          }
          break;
        }
        case Stmt::Kind::Halt: return Status::Halted;
        case Stmt::Kind::Loop: fuel_ = 0; return Status::OutOfFuel;
      }
    }
    return Status::Running;
  }

  const std::map<std::size_t, bool>& holds_;
  std::map<std::size_t, bool> tape_;
  const Bits& prefix_;
  std::uint64_t fuel_;
  std::size_t bits_ = 0;
};

}  // namespace

RunOutcome run(const Runnable& r, const Bits& prefix, std::uint64_t fuel) {
  return Machine(r, prefix, fuel).run(r.program().body);
}

std::string to_string(const RunOutcome& o) {
  std::ostringstream out;
  if (const auto* h = std::get_if<Halted>(&o)) {
    out << "halted bits=" << h->bits_consumed;
    for (const auto& [i, v] : h->tape) out << " X" << i << "=" << (v ? 1 : 0);
  } else if (const auto* f = std::get_if<FuelExhausted>(&o)) {
    out << "fuel-exhausted bits=" << f->bits_consumed;
  } else {
    out << "bit-demand position=" << std::get<BitDemand>(o).position;
  }
  return out.str();
}

Bits parse_bits(std::string_view text) {
  Bits out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '0' || text[i] == '1') {
      out.push_back(text[i] == '1');
    } else {
      throw ParseError(i, "bit strings contain only 0 and 1");
    }
  }
  return out;
}

std::string to_string(const Bits& bits) {
  std::string out;
  out.reserve(bits.size());
  for (bool b : bits) out.push_back(b ? '1' : '0');
  return out;
}

}  // namespace psim
