#include <cctype>
#include <charconv>
#include <sstream>

#include "psim/errors.hpp"
#include "psim/proofcheck.hpp"

namespace psim {

std::string_view to_string(Rule r) noexcept {
  switch (r) {
    case Rule::Taut: return "taut";
    case Rule::MP: return "mp";
    case Rule::NonNeg: return "nonneg";
    case Rule::Norm: return "norm";
    case Rule::Add: return "add";
    case Rule::Dist: return "dist";
    case Rule::Zero: return "zero";
    case Rule::Perm: return "perm";
    case Rule::AddIneq: return "addineq";
    case Rule::Mult: return "mult";
    case Rule::Dichotomy: return "dichotomy";
    case Rule::Mono: return "mono";
  }
  return "?";
}

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    std::size_t j = i;
    while (j < s.size() && !is_space(s[j])) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<std::size_t> number(std::string_view s) {
  std::size_t v = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<Rule> rule_named(std::string_view name) {
  for (auto r : {Rule::Taut, Rule::MP, Rule::NonNeg, Rule::Norm, Rule::Add, Rule::Dist, Rule::Zero, Rule::Perm,
                 Rule::AddIneq, Rule::Mult, Rule::Dichotomy, Rule::Mono}) {
    if (to_string(r) == name) return r;
  }
  return std::nullopt;
}

}  // namespace

Proof parse_proof(std::string_view text) {
  Proof proof;
  bool seen_mode = false;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    const std::size_t base = start;
    start = end + 1;

    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    const std::size_t at = base + static_cast<std::size_t>(line.data() - raw.data());
    auto fail = [&](std::size_t offset, const std::string& what) { return ParseError(at + offset, what); };

    if (line.rfind("mode", 0) == 0 && line.find(':') != std::string_view::npos && !seen_mode &&
        proof.lines.empty()) {
      const std::string_view value = trim(line.substr(line.find(':') + 1));
      auto mode = parse_mode(value);
      if (!mode) throw fail(0, "unknown proof mode '" + std::string(value) + "'; expected ax or ax-down");
      proof.mode = *mode;
      seen_mode = true;
      continue;
    }

    const std::size_t dot = line.find('.');
    auto num = dot == std::string_view::npos ? std::nullopt : number(trim(line.substr(0, dot)));
    if (!num) throw fail(0, "expected a line number followed by '.'");
    if (!proof.lines.empty() && *num <= proof.lines.back().number) {
      throw fail(0, "line number " + std::to_string(*num) + " does not increase");
    }
    const std::size_t semi = line.rfind(';');
    if (semi == std::string_view::npos || semi < dot) throw fail(dot, "expected '; <justification>'");

    ProofLine pl;
    pl.number = *num;
    const std::string_view body = line.substr(dot + 1, semi - dot - 1);
    try {
      pl.formula = parse_prob_formula(body);
    } catch (const ParseError& e) {
      throw fail(dot + 1 + e.position(), e.what());
    }

    const auto just = words(line.substr(semi + 1));
    if (just.empty()) throw fail(semi + 1, "missing justification");
    auto rule = rule_named(just[0]);
    if (!rule) throw fail(semi + 1, "unknown justification '" + std::string(just[0]) + "'");
    pl.justification.rule = *rule;
    if (*rule == Rule::MP) {
      auto a = just.size() == 3 ? number(just[1]) : std::nullopt;
      auto b = just.size() == 3 ? number(just[2]) : std::nullopt;
      if (!a || !b) throw fail(semi + 1, "mp expects two line numbers");
      pl.justification.first = *a;
      pl.justification.second = *b;
    } else if (just.size() != 1) {
      throw fail(semi + 1, std::string(just[0]) + " takes no arguments");
    }
    proof.lines.push_back(std::move(pl));
  }
  return proof;
}

std::string to_string(const Proof& p) {
  std::ostringstream out;
  out << "mode: " << (p.mode == Mode::M ? "ax" : "ax-down") << "\n";
  for (const auto& l : p.lines) {
    out << l.number << ". " << to_string(l.formula) << " ; " << to_string(l.justification.rule);
    if (l.justification.rule == Rule::MP) out << " " << l.justification.first << " " << l.justification.second;
    out << "\n";
  }
  return out.str();
}

}  // namespace psim
