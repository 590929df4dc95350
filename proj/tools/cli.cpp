#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "psim/errors.hpp"
#include "psim/nonprob_logic.hpp"
#include "psim/probsat.hpp"
#include "psim/proofcheck.hpp"
#include "psim/semantics.hpp"
#include "psim/syntax.hpp"
#include "psim/vm.hpp"

namespace psim {
namespace {

using nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parse errors raised while reading a named input; the name prefixes the
// diagnostic.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <class Fn>
auto parse_input(const std::string& what, Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    throw InputError(what + ": offset " + std::to_string(e.position()) + ": " + e.what());
  }
}

Mode mode_option(const std::string& text) {
  auto m = parse_mode(text);
  if (!m) throw UsageError("unknown mode '" + text + "'");
  return *m;
}

int tri_exit(Tri t) {
  switch (t) {
    case Tri::True: return 0;
    case Tri::False: return 1;
    case Tri::Unknown: return 2;
  }
  return 2;
}

struct Settings {
  std::string formula;
  std::string model;
  std::string spec;
  std::string proof;
  std::string witness;
  std::string mode = "m";
  std::string lang = "prob";
  std::string check = "sat";
  unsigned bits = 16;
  std::uint64_t fuel = 10000;
  std::size_t mc = 0;
  std::uint64_t seed = 0;
  bool json = false;
};

int cmd_parse(const Settings& s, std::ostream& out) {
  std::string canonical;
  if (s.lang == "prob") {
    canonical = to_string(parse_input("formula", [&] { return parse_prob_formula(s.formula); }));
  } else if (s.lang == "nonprob") {
    canonical = to_string(parse_input("formula", [&] { return parse_nonprob_formula(s.formula); }));
  } else if (s.lang == "prop") {
    canonical = to_string(parse_input("formula", [&] { return parse_prop_formula(s.formula); }));
  } else {
    throw UsageError("unknown language '" + s.lang + "'");
  }
  if (s.json) {
    out << ordered_json{{"language", s.lang}, {"canonical", canonical}}.dump(2) << "\n";
  } else {
    out << canonical << "\n";
  }
  return 0;
}

Rational clamp01(const Rational& q) { return std::clamp(q, Rational(0), Rational(1)); }

int cmd_eval(const Settings& s, std::ostream& out) {
  const Runnable model = parse_input(s.model, [&] { return parse_model(read_file(s.model)); });
  const ProbFormula f = parse_input("formula", [&] { return parse_prob_formula(s.formula); });

  ordered_json doc;
  Tri verdict = Tri::Unknown;
  if (s.mc == 0) {
    const ModelReport report = evaluate(model, f, s.bits, s.fuel);
    verdict = report.verdict;
    doc["method"] = "exact";
    doc["bits"] = s.bits;
    doc["fuel"] = s.fuel;
    doc["terms"] = ordered_json::array();
    for (const auto& t : report.terms) {
      doc["terms"].push_back({{"formula", to_string(t.formula)},
                              {"lo", to_string(t.interval.lo)},
                              {"hi", to_string(t.interval.hi)}});
      if (!s.json) out << "P(" << to_string(t.formula) << ") in " << to_string(t.interval) << "\n";
    }
  } else {
    // Each term's 95% band, widened by the undecided samples.
    std::vector<TermInterval> terms;
    doc["method"] = "monte-carlo";
    doc["samples"] = s.mc;
    doc["seed"] = s.seed;
    doc["terms"] = ordered_json::array();
    for (const auto& phi : probability_terms(f)) {
      const MonteCarloEstimate e = mc_estimate(model, phi, s.mc, s.fuel, s.bits, s.seed);
      const Rational hw(e.half_width);
      const Rational n(static_cast<unsigned long>(e.samples));
      Rational lo = clamp01(Rational(static_cast<unsigned long>(e.true_count)) / n - hw);
      Rational hi = clamp01(Rational(static_cast<unsigned long>(e.true_count + e.unknown_count)) / n + hw);
      terms.push_back(TermInterval{phi, ProbInterval{lo, hi}});
      doc["terms"].push_back({{"formula", to_string(phi)},
                              {"p_hat", to_string(e.p_hat)},
                              {"true", e.true_count},
                              {"false", e.false_count},
                              {"unknown", e.unknown_count},
                              {"half_width", e.half_width}});
      if (!s.json) {
        out << "P(" << to_string(phi) << ") ~ " << to_string(e.p_hat) << " +/- " << e.half_width << " (unknown "
            << e.unknown_count << " of " << e.samples << ")\n";
      }
    }
    verdict = f.evaluate([&](const LinearAtom& a) { return linear_verdict(a, terms); });
  }
  doc["verdict"] = std::string(to_string(verdict));
  if (s.json) {
    out << doc.dump(2) << "\n";
  } else {
    out << to_string(verdict) << "\n";
  }
  return tri_exit(verdict);
}

int cmd_intervene(const Settings& s, std::ostream& out) {
  const Runnable model = parse_input(s.model, [&] { return parse_model(read_file(s.model)); });
  const InterventionSpec spec = parse_input("spec", [&] { return parse_intervention_spec(s.spec); });
  const std::string text = to_string(intervene(model, spec));
  if (s.json) {
    out << ordered_json{{"spec", to_string(spec)}, {"program", text}}.dump(2) << "\n";
  } else {
    out << text;
  }
  return 0;
}

int cmd_sat(const Settings& s, std::ostream& out) {
  const ProbFormula f = parse_input("formula", [&] { return parse_prob_formula(s.formula); });
  const Mode mode = mode_option(s.mode);
  const auto w = decide_sat(f, mode);
  ordered_json doc{{"result", w ? "SAT" : "UNSAT"}, {"mode", std::string(to_string(mode))}};
  if (w) {
    const std::string text = to_string(w->model);
    if (!s.witness.empty()) {
      std::ofstream file(s.witness, std::ios::binary);
      if (!(file << text)) throw UsageError("cannot write " + s.witness);
    }
    doc["clause"] = w->clause_index;
    doc["denominator"] = w->model.common_denominator.get_str();
    doc["blocks"] = ordered_json::array();
    for (const auto& b : w->model.blocks) {
      doc["blocks"].push_back({{"weight", to_string(b.weight)},
                               {"delta", to_string(b.delta)},
                               {"halts", !contains_loop(b.program.body)}});
    }
    doc["program"] = to_string(w->model.program);
    if (!s.json) {
      out << "SAT\n";
      if (s.witness.empty()) out << text;
    }
  } else if (!s.json) {
    out << "UNSAT\n";
  }
  if (s.json) out << doc.dump(2) << "\n";
  return w ? 0 : 1;
}

int cmd_nonprob(const Settings& s, std::ostream& out) {
  const NonProbFormula f = parse_input("formula", [&] { return parse_nonprob_formula(s.formula); });
  const Mode mode = mode_option(s.mode);
  std::optional<WorldTable> table;
  std::string result;
  int code = 0;
  if (s.check == "sat") {
    table = sat_nonprob(f, mode);
    result = table ? "SAT" : "UNSAT";
    code = table ? 0 : 1;
  } else if (s.check == "valid") {
    // A table satisfying the negation is a countermodel.
    table = sat_nonprob(NonProbFormula::make_not(f), mode);
    result = table ? "INVALID" : "VALID";
    code = table ? 1 : 0;
  } else {
    throw UsageError("unknown check '" + s.check + "'; expected sat or valid");
  }
  if (s.json) {
    ordered_json doc{{"result", result}, {"mode", std::string(to_string(mode))}};
    if (table) doc["table"] = to_string(*table);
    out << doc.dump(2) << "\n";
  } else {
    out << result << "\n";
    if (table) out << to_string(*table);
  }
  return code;
}

int cmd_check_proof(const Settings& s, std::ostream& out, std::ostream& err) {
  const Proof proof = parse_input(s.proof, [&] { return parse_proof(read_file(s.proof)); });
  const auto failure = check_proof(proof);
  if (s.json) {
    ordered_json doc{{"result", failure ? "ERROR" : "OK"}, {"lines", proof.lines.size()}};
    if (failure) {
      doc["line"] = failure->line;
      doc["code"] = std::string(to_string(failure->code));
      doc["detail"] = failure->detail;
    }
    out << doc.dump(2) << "\n";
  } else if (!failure) {
    out << "OK\n";
  }
  if (failure) {
    err << s.proof << ": line " << failure->line << ": " << to_string(failure->code) << ": " << failure->detail
        << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"probabilistic simulation models: evaluation, satisfiability, proof checking", "psim"};
  app.require_subcommand(1);
  Settings s;

  auto common = [&](CLI::App* sub) { sub->add_flag("--json", s.json, "emit JSON"); };

  auto* parse = app.add_subcommand("parse", "validate a formula and print its canonical form");
  parse->add_option("--formula", s.formula, "formula text")->required();
  parse->add_option("--lang", s.lang, "prob, nonprob or prop")->check(CLI::IsMember({"prob", "nonprob", "prop"}));
  common(parse);

  auto* eval = app.add_subcommand("eval", "evaluate a probability formula on a model");
  eval->add_option("--model", s.model, "program file")->required();
  eval->add_option("--formula", s.formula, "formula text")->required();
  eval->add_option("--bits", s.bits, "random-bit budget (exact) or per-sample bit cap (--mc)");
  eval->add_option("--fuel", s.fuel, "statements per run");
  eval->add_option("--mc", s.mc, "estimate by sampling this many streams")->check(CLI::PositiveNumber);
  eval->add_option("--seed", s.seed, "sampling seed");
  common(eval);

  auto* intervene_cmd = app.add_subcommand("intervene", "print a program with squares held fixed");
  intervene_cmd->add_option("--model", s.model, "program file")->required();
  intervene_cmd->add_option("--spec", s.spec, "held literals, e.g. \"X0,!X2\"")->required();
  common(intervene_cmd);

  auto* sat = app.add_subcommand("sat", "decide satisfiability of a probability formula");
  sat->add_option("--formula", s.formula, "formula text")->required();
  sat->add_option("--mode", s.mode, "m or m-down");
  sat->add_option("--witness", s.witness, "write the witness program here");
  common(sat);

  auto* nonprob = app.add_subcommand("nonprob", "decide a formula without probabilities");
  nonprob->add_option("--formula", s.formula, "formula text")->required();
  nonprob->add_option("--mode", s.mode, "m or m-down");
  nonprob->add_option("--check", s.check, "sat or valid")->check(CLI::IsMember({"sat", "valid"}));
  common(nonprob);

  auto* check = app.add_subcommand("check-proof", "check a Hilbert-style derivation");
  check->add_option("--proof", s.proof, "proof file")->required();
  common(check);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (parse->parsed()) return cmd_parse(s, out);
    if (eval->parsed()) return cmd_eval(s, out);
    if (intervene_cmd->parsed()) return cmd_intervene(s, out);
    if (sat->parsed()) return cmd_sat(s, out);
    if (nonprob->parsed()) return cmd_nonprob(s, out);
    if (check->parsed()) return cmd_check_proof(s, out, err);
  } catch (const UsageError& e) {
    err << "psim: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InputError& e) {
    err << "psim: " << e.what() << "\n";
    return kExitParse;
  } catch (const ResourceError& e) {
    err << "psim: resource limit: " << e.what() << "\n";
    return kExitResource;
  }
  return kExitUsage;
}

}  // namespace psim
