#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "psim/errors.hpp"
#include "psim/nonprob_logic.hpp"
#include "syntax/lexer.hpp"

namespace psim {

std::string_view to_string(Mode m) noexcept { return m == Mode::M ? "m" : "m-down"; }

std::optional<Mode> parse_mode(std::string_view text) noexcept {
  if (text == "m" || text == "ax") return Mode::M;
  if (text == "m-down" || text == "ax-down") return Mode::MDown;
  return std::nullopt;
}

const WorldRow* WorldTable::find(const InterventionSpec& antecedent) const {
  auto it = std::find_if(rows.begin(), rows.end(), [&](const WorldRow& r) { return r.antecedent == antecedent; });
  return it == rows.end() ? nullptr : &*it;
}

Tri WorldTable::truth(const CondAtom& atom) const {
  const WorldRow* row = find(atom.antecedent);
  if (row == nullptr) return Tri::Unknown;
  if (!row->halts()) return Tri::False;
  const Assignment& a = *row->outcome;
  return from_bool(atom.consequent.holds([&](std::size_t i) {
    auto it = a.find(i);
    return it != a.end() && it->second;
  }));
}

Tri WorldTable::evaluate(const NonProbFormula& f) const {
  return f.evaluate([this](const CondAtom& a) { return truth(a); });
}

void WorldTable::validate(Mode mode) const {
  const std::set<std::size_t> vars(mentioned_vars.begin(), mentioned_vars.end());
  std::set<InterventionSpec> seen;
  for (const auto& row : rows) {
    if (!seen.insert(row.antecedent).second) throw std::invalid_argument("duplicate row for an antecedent");
    if (!row.halts()) {
      if (mode == Mode::MDown) throw std::invalid_argument("non-halting row in an always-halting table");
      continue;
    }
    for (const auto& [i, v] : *row.outcome) {
      if (vars.count(i) == 0) throw std::invalid_argument("row assigns unmentioned square X" + std::to_string(i));
    }
    for (const auto& [i, v] : row.antecedent.entries()) {
      auto it = row.outcome->find(i);
      if (it == row.outcome->end() || it->second != v) {
        throw std::invalid_argument("row for <" + to_string(row.antecedent) + "> does not keep held square X" +
                                    std::to_string(i));
      }
    }
  }
}

std::string to_string(const WorldTable& t) {
  std::ostringstream out;
  out << "vars:";
  for (auto i : t.mentioned_vars) out << " X" << i;
  out << "\n";
  for (const auto& row : t.rows) {
    out << "<" << to_string(row.antecedent) << "> =>";
    if (!row.halts()) {
      out << " nonhalt";
    } else {
      for (const auto& [i, v] : *row.outcome) out << " X" << i << "=" << (v ? 1 : 0);
    }
    out << "\n";
  }
  return out.str();
}

WorldTable parse_world_table(std::string_view text) {
  using detail::Tok;
  const auto toks = detail::tokenize(text, /*keep_newlines=*/true);
  std::size_t at = 0;
  auto fail = [&](const std::string& msg) -> ParseError { return ParseError(toks[at].pos, msg); };
  auto skip_newlines = [&] {
    while (toks[at].kind == Tok::Newline) ++at;
  };
  auto square = [&] {
    auto idx = detail::tape_index(toks[at]);
    if (!idx) throw fail("expected a tape square, found " + detail::describe(toks[at]));
    ++at;
    return *idx;
  };

  WorldTable t;
  skip_newlines();
  if (toks[at].kind == Tok::Ident && toks[at].text == "vars") {
    ++at;
    if (toks[at].kind != Tok::Colon) throw fail("expected ':' after vars");
    ++at;
    while (toks[at].kind != Tok::Newline && toks[at].kind != Tok::End) t.mentioned_vars.push_back(square());
  }
  for (;;) {
    skip_newlines();
    if (toks[at].kind == Tok::End) break;
    if (toks[at].kind != Tok::LAngle) throw fail("expected '<' to start a row");
    ++at;
    std::vector<InterventionSpec::Entry> entries;
    while (toks[at].kind != Tok::RAngle) {
      const bool neg = toks[at].kind == Tok::Bang;
      if (neg) ++at;
      entries.emplace_back(square(), !neg);
      if (toks[at].kind == Tok::Comma) ++at;
    }
    ++at;
    if (toks[at].kind != Tok::Eq || toks[at + 1].kind != Tok::RAngle) throw fail("expected '=>'");
    at += 2;
    WorldRow row;
    try {
      row.antecedent = InterventionSpec::from_unsorted(std::move(entries));
    } catch (const std::invalid_argument& e) {
      throw fail(e.what());
    }
    if (toks[at].kind == Tok::Ident && toks[at].text == "nonhalt") {
      ++at;
    } else {
      Assignment a;
      while (toks[at].kind != Tok::Newline && toks[at].kind != Tok::End) {
        const std::size_t i = square();
        if (toks[at].kind != Tok::Eq) throw fail("expected '='");
        ++at;
        if (toks[at].kind != Tok::Int || (toks[at].text != "0" && toks[at].text != "1")) throw fail("expected 0 or 1");
        a[i] = toks[at].text == "1";
        ++at;
      }
      row.outcome = std::move(a);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace psim
