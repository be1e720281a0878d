/*
 * Copyright 2026 The truecon Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Command-line front end: check, equiv, charform, distinguish, validate, crossval.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "truecon/charform.hpp"
#include "truecon/distinguish.hpp"
#include "truecon/eval.hpp"
#include "truecon/frontend.hpp"
#include "truecon/harness.hpp"

using namespace truecon;
using Json = nlohmann::ordered_json;

namespace {

constexpr std::size_t kRenderGuard = 20'000;

struct InputError : Error {
  using Error::Error;
};

std::string slurp_if_file(const std::string& arg) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(arg, ec)) return arg;
  std::ifstream in(arg);
  if (!in) throw InputError("cannot read " + arg);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// A structure file starts with a section keyword or a comment; anything
// else is a process term.
Structure load_structure(const std::string& arg) {
  const std::string text = slurp_if_file(arg);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw InputError("empty structure input");
  const std::string_view rest(text.c_str() + first);
  if (rest.starts_with("events:") || rest.starts_with("configs:") || rest.starts_with("#"))
    return parse_structure_file(text);
  std::string term = text;
  while (!term.empty() && std::isspace(static_cast<unsigned char>(term.back()))) term.pop_back();
  return parse_term(term);
}

Configuration parse_config(const Structure& s, const std::string& text) {
  Configuration x;
  std::string buf;
  for (char ch : text) buf += (ch == '{' || ch == '}' || ch == ',' || ch == ';') ? ' ' : ch;
  std::istringstream in(buf);
  for (std::string name; in >> name;) {
    auto e = s.find_event(name);
    if (!e) throw InputError("unknown event " + name);
    x.insert(*e);
  }
  return x;
}

BisimKind kind_arg(const std::string& text) {
  auto k = parse_kind(text);
  if (!k) throw InputError("unknown kind " + text);
  return *k;
}

Options options_from_env() {
  Options o;
  if (const char* cap = std::getenv("TRUECON_STATE_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(cap, &end, 10);
    if (end == cap || *end != '\0' || v == 0) throw InputError("TRUECON_STATE_CAP must be a positive integer");
    o.state_cap = static_cast<std::size_t>(v);
  }
  return o;
}

const char* side_name(Side s) { return s == Side::Lhs ? "lhs" : "rhs"; }

struct Output {
  bool json = false;
  Json doc;
  std::ostringstream text;

  void flush() const {
    if (json)
      std::cout << doc.dump(2) << "\n";
    else
      std::cout << text.str();
  }
};

Json error_json(const char* type, const std::exception& e) {
  Json j{{"error", {{"type", type}, {"message", e.what()}}}};
  if (auto* se = dynamic_cast<const SyntaxError*>(&e)) j["error"]["position"] = se->position();
  if (auto* ie = dynamic_cast<const InvalidStructure*>(&e)) j["error"]["kind"] = to_string(ie->kind());
  return j;
}

const char* error_type(const std::exception& e) {
  if (dynamic_cast<const SyntaxError*>(&e)) return "SyntaxError";
  if (auto* ie = dynamic_cast<const InvalidStructure*>(&e)) return to_string(ie->kind());
  if (dynamic_cast<const NotAConfiguration*>(&e)) return "NotAConfiguration";
  if (dynamic_cast<const NotPermissible*>(&e)) return "NotPermissible";
  if (dynamic_cast<const StateSpaceTooLarge*>(&e)) return "StateSpaceTooLarge";
  if (dynamic_cast<const DagTooLarge*>(&e)) return "DagTooLarge";
  if (dynamic_cast<const ElaborationTooLarge*>(&e)) return "ElaborationTooLarge";
  if (dynamic_cast<const BudgetExceeded*>(&e)) return "BudgetExceeded";
  return "InputError";
}

void run_check(Output& out, const std::string& structure, const std::string& formula,
               const std::string& config, const std::string& env) {
  Structure s = load_structure(structure);
  const std::string ftext = slurp_if_file(formula);
  Formula f = parse_formula(ftext, s.alphabet());
  Configuration x = parse_config(s, config);
  Environment rho = env.empty() ? Environment{} : parse_environment(s, env);
  const bool v = satisfies(s, x, rho, f);
  out.doc = {{"command", "check"},
             {"formula", render_formula(f)},
             {"config", s.render_config(x)},
             {"environment", rho.render(s)},
             {"satisfied", v}};
  out.text << (v ? "true" : "false") << "\n";
}

Json counterexample_json(const Counterexample& cx) {
  return {{"formula", render_formula(cx.formula)},
          {"holds_on", side_name(cx.side)},
          {"depth", cx.depth}};
}

void run_equiv(Output& out, const std::string& kind, const std::string& lhs, const std::string& rhs) {
  const BisimKind k = kind_arg(kind);
  Structure c = load_structure(lhs), d = load_structure(rhs);
  Verdict v = check_equivalence(c, d, k, options_from_env());
  out.doc = {{"command", "equiv"}, {"kind", to_string(k)}, {"equivalent", v.equivalent},
             {"states", v.states},  {"rounds", v.rounds},  {"c", v.c}};
  out.doc["s"] = v.s ? Json(*v.s) : Json(nullptr);
  out.doc["distinguishing"] = v.counterexample ? counterexample_json(*v.counterexample) : Json(nullptr);
  out.text << to_string(k) << ": " << (v.equivalent ? "equivalent" : "not equivalent") << "\n";
  out.text << "states: " << v.states << ", rounds: " << v.rounds;
  if (v.s) out.text << ", s: " << *v.s;
  out.text << ", c: " << v.c << "\n";
  if (v.counterexample)
    out.text << "formula (holds on " << side_name(v.counterexample->side)
             << "): " << render_formula(v.counterexample->formula) << "\n";
}

void run_distinguish(Output& out, const std::string& kind, const std::string& lhs, const std::string& rhs) {
  const BisimKind k = kind_arg(kind);
  Structure c = load_structure(lhs), d = load_structure(rhs);
  auto cx = distinguishing_formula(c, d, k, options_from_env());
  out.doc = {{"command", "distinguish"}, {"kind", to_string(k)}, {"equivalent", !cx.has_value()}};
  if (!cx) {
    out.doc["distinguishing"] = nullptr;
    out.text << "none: the structures are " << to_string(k) << "-equivalent\n";
    return;
  }
  // Independent re-check of both sides from the rendered text.
  const std::string text = render_formula(cx->formula);
  const bool on_c = satisfies(c, parse_formula(text, c.alphabet()));
  const bool on_d = satisfies(d, parse_formula(text, d.alphabet()));
  if (on_c == on_d || on_c != (cx->side == Side::Lhs))
    throw InternalVerificationFailed("rendered formula does not reproduce the split: " + text);
  out.doc["distinguishing"] = counterexample_json(*cx);
  out.doc["lhs_satisfies"] = on_c;
  out.doc["rhs_satisfies"] = on_d;
  out.doc["sublogic"] = to_string(sublogic_of(k));
  out.text << text << "\n";
  out.text << "lhs: " << (on_c ? "true" : "false") << ", rhs: " << (on_d ? "true" : "false")
           << ", depth: " << cx->depth << "\n";
}

void run_charform(Output& out, const std::string& kind, const std::string& depth, const std::string& structure,
                  const std::string& rhs, const std::string& act_text) {
  CharKind ck;
  if (kind == "hh") ck = CharKind::HH;
  else if (kind == "h") ck = CharKind::H;
  else if (kind == "wh") ck = CharKind::WH;
  else throw InputError("charform kind must be hh, h or wh");

  Structure c = load_structure(structure);
  std::optional<Structure> d;
  if (!rhs.empty()) d = load_structure(rhs);
  std::vector<Label> act = d ? union_alphabet(c, *d) : c.alphabet();
  if (!act_text.empty()) {
    std::string buf = act_text;
    std::replace(buf.begin(), buf.end(), ',', ' ');
    std::istringstream in(buf);
    for (std::string l; in >> l;)
      if (std::find(act.begin(), act.end(), Label(l)) == act.end()) act.emplace_back(l);
    std::sort(act.begin(), act.end(), [](Label a, Label b) { return a.name() < b.name(); });
  }

  unsigned n = 0;
  if (ck == CharKind::HH) {
    if (depth == "auto") {
      Options o = options_from_env();
      o.want_formula = false;
      Verdict v = check_equivalence(c, d ? *d : c, BisimKind::HH, o);
      n = static_cast<unsigned>(v.s.value_or(0));
    } else {
      try {
        std::size_t used = 0;
        const long long v = std::stoll(depth, &used);
        if (used != depth.size() || v < 0) throw InputError("");
        n = static_cast<unsigned>(v);
      } catch (const std::exception&) {
        throw InputError("--depth must be a nonnegative integer or auto");
      }
    }
  }

  FormulaDag dag = char_formula(c, ck, n, act);
  out.doc = {{"command", "charform"}, {"kind", kind}, {"nodes", dag.nodes}, {"modal_depth", dag.depth}};
  if (ck == CharKind::HH) out.doc["depth_parameter"] = n;
  Json acts = Json::array();
  for (Label l : act) acts.push_back(l.name());
  out.doc["act"] = acts;
  const bool render = dag.nodes <= kRenderGuard;
  out.doc["formula"] = render ? Json(render_formula(dag.root)) : Json(nullptr);
  if (render)
    out.text << render_formula(dag.root) << "\n";
  else
    out.text << "formula not rendered: " << dag.nodes << " nodes above the guard of " << kRenderGuard << "\n";
  out.text << "nodes: " << dag.nodes << ", modal depth: " << dag.depth;
  if (ck == CharKind::HH) out.text << ", depth parameter: " << n;
  out.text << "\n";
  if (d) {
    const bool v = satisfies(*d, dag.root);
    out.doc["rhs_satisfies"] = v;
    out.text << "rhs satisfies: " << (v ? "true" : "false") << "\n";
  }
}

void run_validate(Output& out, const std::string& structure) {
  Structure s = load_structure(structure);
  out.doc = {{"command", "validate"},
             {"stable", true},
             {"events", s.num_events()},
             {"configurations", s.num_configs()},
             {"max_configuration_size", s.max_config_size()}};
  out.text << "stable: " << s.num_events() << " events, " << s.num_configs() << " configurations, c = "
           << s.max_config_size() << "\n";
}

bool run_crossval(Output& out, const CrossOptions& opt) {
  CrossReport r = cross_validate(opt);
  out.doc = Json::parse(r.to_json());
  out.text << r.to_text();
  return r.passed();
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Event identifier logic and true-concurrency equivalences"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

  std::string structure, formula, config, env, kind, lhs, rhs, depth = "auto", act;
  auto* check = app.add_subcommand("check", "Model-check a formula at a configuration");
  check->add_option("--structure", structure, "Structure file or term")->required();
  check->add_option("--formula", formula, "Formula text or file")->required();
  check->add_option("--config", config, "Configuration, e.g. \"e1 e2\"");
  check->add_option("--env", env, "Environment, e.g. x=e1,y=e2");

  auto* equiv = app.add_subcommand("equiv", "Decide an equivalence");
  auto* dist = app.add_subcommand("distinguish", "Distinguishing formula for inequivalent structures");
  for (auto* sc : {equiv, dist}) {
    sc->add_option("--kind", kind, "ib|wh|h|hwh|hh")->required();
    sc->add_option("--lhs", lhs, "Left structure")->required();
    sc->add_option("--rhs", rhs, "Right structure")->required();
  }

  auto* charform = app.add_subcommand("charform", "Characteristic formula");
  charform->add_option("--kind", kind, "hh|h|wh")->required();
  charform->add_option("--depth", depth, "Depth for hh, or auto");
  charform->add_option("--structure", structure, "Structure file or term")->required();
  charform->add_option("--rhs", rhs, "Structure to check the formula against");
  charform->add_option("--act", act, "Extra labels for the box conjuncts, comma separated");

  auto* validate = app.add_subcommand("validate", "Check the stability axioms");
  validate->add_option("--structure", structure, "Structure file or term")->required();

  CrossOptions cv;
  auto* crossval = app.add_subcommand("crossval", "Run the differential harness");
  crossval->add_option("--events", cv.budget.max_events, "Largest event count")->capture_default_str();
  crossval->add_option("--labels", cv.budget.max_labels, "Largest label count")->capture_default_str();
  crossval->add_option("--random", cv.random_cases, "Random evaluator cases")->capture_default_str();
  crossval->add_option("--step-events", cv.step_events, "Event bound for step operators")->capture_default_str();
  crossval->add_option("--theta-events", cv.theta_events, "Event bound for theta lemmas")->capture_default_str();
  crossval->add_option("--threads", cv.threads, "Worker threads (0: all cores)")->capture_default_str();
  crossval->add_option("--seed", cv.seed, "Random seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  Output out;
  out.json = format == "json";
  try {
    int status = 0;
    if (*check) run_check(out, structure, formula, config, env);
    else if (*equiv) run_equiv(out, kind, lhs, rhs);
    else if (*dist) run_distinguish(out, kind, lhs, rhs);
    else if (*charform) run_charform(out, kind, depth, structure, rhs, act);
    else if (*validate) run_validate(out, structure);
    else if (*crossval && !run_crossval(out, cv)) status = 2;
    out.flush();
    return status;
  } catch (const Error& e) {
    if (out.json) std::cout << error_json(error_type(e), e).dump(2) << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const InternalVerificationFailed& e) {
    if (out.json) std::cout << error_json("InternalVerificationFailed", e).dump(2) << "\n";
    std::cerr << "internal verification failed: " << e.what() << "\n";
    return 2;
  }
}
