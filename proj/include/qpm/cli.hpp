/*
 * Copyright 2026 The qpm Authors
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
#pragma once

/// @file cli.hpp
/// Command-line front end. Every command builds one JSON report; `--output
/// text` renders that same report as aligned tables.
///
/// Exit codes: 0 success / property holds, 1 violations or counterexamples
/// found, 2 input or usage errors.

#include "qpm/io.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace qpm::cli {

enum ExitCode : int { kOk = 0, kViolation = 1, kInputError = 2 };

struct RunConfig {
  std::string command;
  std::string target;  // solve target, corpus id or suite id
  std::string input;
  std::string set_a, set_b;
  std::string output = "text";
  std::uint64_t seed = 1;
  std::optional<std::size_t> max_iter;
  std::optional<std::string> c;
  bool strict_cor38 = false;
  std::size_t trials = 100;
  std::string size = "1:6";
  std::optional<std::string> seed_point;
  std::optional<std::string> mode;
  std::optional<std::size_t> n;
  bool timing = false;
};

namespace detail {

using Table = std::vector<std::vector<std::string>>;

inline std::string cell(const Json& j) {
  if (j.is_null()) return "-";
  if (j.is_string()) return j.get<std::string>();
  if (j.is_boolean()) return j.get<bool>() ? "yes" : "no";
  if (j.is_array()) {
    std::string out = "{";
    for (std::size_t i = 0; i < j.size(); ++i) out += (i ? ", " : "") + cell(j[i]);
    return out + "}";
  }
  return j.dump();
}

inline void print_table(std::ostream& out, const Table& rows) {
  if (rows.empty()) return;
  std::vector<std::size_t> w(rows.front().size(), 0);
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) w[i] = std::max(w[i], r[i].size());
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t i = 0; i < r.size(); ++i) {
      line += r[i];
      if (i + 1 < r.size()) line += std::string(w[i] - r[i].size() + 2, ' ');
    }
    out << line << "\n";
  }
}

inline void print_fields(std::ostream& out, const Json& j, const std::vector<std::string>& keys) {
  Table t;
  for (const auto& k : keys)
    if (j.contains(k)) t.push_back({k, cell(j[k])});
  print_table(out, t);
}

inline std::optional<PointIndex> resolve_point(const FiniteQuasiSpace& s, const std::optional<std::string>& label) {
  if (!label) return std::nullopt;
  return s.index_of(*label);
}

inline PointSet parse_label_list(const FiniteQuasiSpace& s, const std::string& text) {
  std::vector<std::string> labels;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, ','))
    if (!cur.empty()) labels.push_back(cur);
  if (labels.empty()) throw InputError("empty point set \"" + text + "\"");
  return s.set_of(labels);
}

inline SizeBounds parse_size(const std::string& text) {
  auto to_size = [&](const std::string& part) {
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
      throw InputError("--size expects N or MIN:MAX, got \"" + text + "\"");
    return static_cast<std::size_t>(std::stoul(part));
  };
  const auto colon = text.find(':');
  SizeBounds b;
  if (colon == std::string::npos) {
    b.max_points = to_size(text);
  } else {
    b.min_points = to_size(text.substr(0, colon));
    b.max_points = to_size(text.substr(colon + 1));
  }
  if (b.min_points < 1 || b.min_points > b.max_points) throw InputError("--size needs 1 <= MIN <= MAX");
  return b;
}

inline Json point_labels(const FiniteQuasiSpace& s, const PointSet& a) { return s.labels_of(a); }

inline Json approx_json(const FiniteQuasiSpace& s, const ApproxValue& v) {
  return {{"value", to_string(v.value)}, {"argmin", s.label(v.argmin)}};
}

// --- commands ---------------------------------------------------------------

inline Json cmd_validate(const LabInstance& inst) {
  const auto& s = inst.space;
  const auto diag = validate_space(s.matrix(), inst.require_t0);
  Json j{{"command", "validate"}, {"points", s.size()}, {"t0_required", inst.require_t0}, {"is_t0", s.is_t0()}};
  j.update(diagnostics_to_json(s, diag));
  return j;
}

inline Json equivalence_json(const FiniteQuasiSpace& s, const EquivalenceReport& r) {
  Json lb = Json::array();
  for (const auto& b : r.level_bounds)
    lb.push_back({{"n", b.n}, {"gap", b.gap ? Json(to_string(*b.gap)) : Json(nullptr)},
                  {"bound", to_string(b.bound)}, {"ok", b.ok}});
  return {{"contraction_holds", r.contraction.holds},
          {"psi_certified", r.contraction.function_certified},
          {"images_in_cb", r.images_in_cb},
          {"precondition", r.precondition},
          {"mix_value", to_string(r.mix.value)},
          {"start_and_end", point_labels(s, r.start_and_end)},
          {"unique_point", r.unique_point ? Json(s.label(*r.unique_point)) : Json(nullptr)},
          {"fixed_point_verified", r.fixed_point_verified},
          {"level_bounds", std::move(lb)},
          {"consistent", r.consistent()},
          {"bugs", r.bugs}};
}

inline Json cmd_analyze(const LabInstance& inst, std::size_t n_levels) {
  const auto& s = inst.space;
  Json j{{"command", "analyze"}};
  if (inst.set_map) {
    const auto& f = *inst.set_map;
    Json rows = Json::array();
    std::vector<PointIndex> starts, ends, fixed;
    for (PointIndex x = 0; x < s.size(); ++x) {
      const auto c = classify_point(s, f, x);
      rows.push_back({{"point", s.label(x)},
                      {"image", point_labels(s, f(x))},
                      {"fixed", c.fixed},
                      {"startpoint", c.startpoint},
                      {"endpoint", c.endpoint},
                      {"start_value", to_string(c.start_value)},
                      {"end_value", to_string(c.end_value)},
                      {"mix_value", to_string(mix_value(s, f, x))}});
      if (c.startpoint) starts.push_back(x);
      if (c.endpoint) ends.push_back(x);
      if (c.fixed) fixed.push_back(x);
    }
    j["classification"] = std::move(rows);
    j["startpoints"] = point_labels(s, PointSet(starts));
    j["endpoints"] = point_labels(s, PointSet(ends));
    j["fixed_points"] = point_labels(s, PointSet(fixed));
    j["approx"] = {{"start", approx_json(s, approx_value(s, f, ApproxKind::start))},
                   {"end", approx_json(s, approx_value(s, f, ApproxKind::end))},
                   {"mix", approx_json(s, approx_value(s, f, ApproxKind::mix))}};
    const auto lv = level_sets(s, f, n_levels);
    Json levels = Json::array();
    for (std::size_t i = 0; i < lv.levels.size(); ++i)
      levels.push_back({{"n", i + 1},
                        {"points", point_labels(s, lv.levels[i])},
                        {"diameter", lv.diameters[i] ? Json(to_string(*lv.diameters[i])) : Json(nullptr)}});
    j["levels"] = std::move(levels);
    j["core"] = point_labels(s, lv.core);
    if (inst.psi) j["equivalence"] = equivalence_json(s, theorem29_equivalence(s, f, *inst.psi, n_levels));
  }
  if (inst.point_map) {
    const auto& f = *inst.point_map;
    std::vector<PointIndex> fixed;
    for (PointIndex x = 0; x < s.size(); ++x)
      if (f(x) == x) fixed.push_back(x);
    Json single{{"fixed_points", point_labels(s, PointSet(fixed))},
                {"approx_start", approx_json(s, approx_value_single(s, f, ExcessSide::start))},
                {"approx_end", approx_json(s, approx_value_single(s, f, ExcessSide::end))}};
    if (inst.psi) {
      const auto a = single_map_approx_audit(s, f, *inst.psi);
      single["psi_hypotheses_hold"] = a.hypotheses_hold;
      single["psi_conclusion_holds"] = a.conclusion_holds;
    }
    j["point_map"] = std::move(single);
  }
  if (!inst.set_map && !inst.point_map) throw InputError("analyze needs a map: add \"F\" or \"f\" to the input");
  return j;
}

inline Json cmd_hausdorff(const LabInstance& inst, const std::string& a_text, const std::string& b_text) {
  const auto& s = inst.space;
  const auto a = parse_label_list(s, a_text), b = parse_label_list(s, b_text);
  auto side = [&](const PointSet& x, const PointSet& y) {
    const auto r = hausdorff(s, x, y);
    return Json{{"value", r.value.str()},
                {"witness", s.label(r.witness)},
                {"witness_in_first", r.witness_in_first},
                {"other", s.label(r.other)}};
  };
  return {{"command", "hausdorff"},
          {"A", point_labels(s, a)},
          {"B", point_labels(s, b)},
          {"H(A,B)", side(a, b)},
          {"H(B,A)", side(b, a)},
          {"H_sym", to_string(hausdorff_sym(s, a, b))}};
}

inline Json cmd_solve(const LabInstance& inst, const RunConfig& cfg, bool& all_ok) {
  const auto& s = inst.space;
  const auto& target = cfg.target;
  std::vector<PointIndex> seeds;
  if (auto p = resolve_point(s, cfg.seed_point))
    seeds.push_back(*p);
  else if (inst.seed_point)
    seeds.push_back(*inst.seed_point);
  else
    seeds = s.all_points().indices();

  Json runs = Json::array();
  all_ok = true;
  if (target == "picard") {
    if (!inst.point_map || !inst.point_map->has_alpha() || !inst.gamma)
      throw InputError("solve picard needs \"f\", \"alpha\" and \"gamma\" in the input");
    PicardOptions opt;
    opt.mode = cfg.mode ? parse_picard_mode(*cfg.mode) : inst.mode.value_or(PicardMode::forward);
    opt.max_iter = cfg.max_iter;
    for (auto x0 : seeds) {
      const auto log = picard_solve(s, *inst.point_map, *inst.gamma, x0, opt);
      all_ok = all_ok && is_success(log.status);
      Json r = log_to_json(s, log);
      r["seed"] = s.label(x0);
      runs.push_back(std::move(r));
    }
    return {{"command", "solve"}, {"target", target}, {"mode", to_string(opt.mode)}, {"runs", std::move(runs)}};
  }

  if (!inst.set_map) throw InputError("solve " + target + " needs a set-valued map \"F\" in the input");
  const Rational c = cfg.c ? parse_rational(*cfg.c) : inst.c ? *inst.c : throw InputError("solve " + target + " needs --c");
  GreedyOptions opt;
  opt.max_iter = cfg.max_iter;
  opt.strict_cor38 = cfg.strict_cor38;
  const GreedyTarget gt = target == "startpoint" ? GreedyTarget::startpoint
                          : target == "endpoint" ? GreedyTarget::endpoint
                                                 : GreedyTarget::fixed;
  for (auto x0 : seeds) {
    const auto log = gt == GreedyTarget::startpoint ? startpoint_solve(s, *inst.set_map, c, x0, opt)
                     : gt == GreedyTarget::endpoint ? endpoint_solve(s, *inst.set_map, c, x0, opt)
                                                    : fixed_solve_sym(s, *inst.set_map, c, x0, opt);
    all_ok = all_ok && is_success(log.status);
    Json r = log_to_json(s, log);
    r["seed"] = s.label(x0);
    runs.push_back(std::move(r));
  }
  const auto audit = audit_greedy_hypothesis(s, *inst.set_map, c, gt, cfg.strict_cor38);
  Json infeasible = Json::array();
  for (auto x : audit.infeasible) infeasible.push_back(s.label(x));
  return {{"command", "solve"},
          {"target", target},
          {"c", to_string(c)},
          {"strict_cor38", cfg.strict_cor38},
          {"audit", {{"universal", audit.universal},
                     {"only_at_zero_value", audit.only_at_zero_value},
                     {"infeasible", std::move(infeasible)}}},
          {"runs", std::move(runs)}};
}

// --- text rendering ---------------------------------------------------------

inline void render_validate(std::ostream& out, const Json& j) {
  out << (j["ok"].get<bool>() ? "valid" : "INVALID") << ": " << j["points"].get<std::size_t>() << " points, "
      << (j["is_t0"].get<bool>() ? "T0" : "not T0") << (j["t0_required"].get<bool>() ? "" : " (T0 not required)")
      << "\n";
  if (j["violations"].empty()) return;
  Table t{{"kind", "witnesses", "lhs", "rhs"}};
  for (const auto& v : j["violations"]) t.push_back({cell(v["kind"]), cell(v["witnesses"]), cell(v["lhs"]), cell(v["rhs"])});
  print_table(out, t);
}

inline void render_analyze(std::ostream& out, const Json& j) {
  if (j.contains("classification")) {
    Table t{{"point", "image", "fixed", "start", "end", "start_value", "end_value", "mix_value"}};
    for (const auto& r : j["classification"])
      t.push_back({cell(r["point"]), cell(r["image"]), cell(r["fixed"]), cell(r["startpoint"]), cell(r["endpoint"]),
                   cell(r["start_value"]), cell(r["end_value"]), cell(r["mix_value"])});
    print_table(out, t);
    out << "\n";
    print_table(out, {{"startpoints", cell(j["startpoints"])},
                      {"endpoints", cell(j["endpoints"])},
                      {"fixed points", cell(j["fixed_points"])}});
    out << "\n";
    Table a{{"approx", "value", "argmin"}};
    for (const char* k : {"start", "end", "mix"})
      a.push_back({k, cell(j["approx"][k]["value"]), cell(j["approx"][k]["argmin"])});
    print_table(out, a);
    out << "\n";
    Table l{{"n", "C_n", "diameter"}};
    for (const auto& r : j["levels"]) l.push_back({cell(r["n"]), cell(r["points"]), cell(r["diameter"])});
    print_table(out, l);
    out << "core: " << cell(j["core"]) << "\n";
    if (j.contains("equivalence")) {
      out << "\npsi-contraction equivalence\n";
      print_fields(out, j["equivalence"],
                   {"contraction_holds", "psi_certified", "images_in_cb", "precondition", "mix_value",
                    "start_and_end", "unique_point", "fixed_point_verified", "consistent", "bugs"});
    }
  }
  if (j.contains("point_map")) {
    const auto& p = j["point_map"];
    out << "\npoint map\n";
    Table t{{"fixed points", cell(p["fixed_points"])},
            {"approx start", cell(p["approx_start"]["value"]) + " at " + cell(p["approx_start"]["argmin"])},
            {"approx end", cell(p["approx_end"]["value"]) + " at " + cell(p["approx_end"]["argmin"])}};
    if (p.contains("psi_hypotheses_hold")) {
      t.push_back({"psi hypotheses", cell(p["psi_hypotheses_hold"])});
      t.push_back({"psi conclusion", cell(p["psi_conclusion_holds"])});
    }
    print_table(out, t);
  }
}

inline void render_hausdorff(std::ostream& out, const Json& j) {
  Table t{{"quantity", "value", "witness", "other"}};
  for (const char* k : {"H(A,B)", "H(B,A)"})
    t.push_back({k, cell(j[k]["value"]), cell(j[k]["witness"]), cell(j[k]["other"])});
  t.push_back({"H_sym", cell(j["H_sym"]), "-", "-"});
  out << "A = " << cell(j["A"]) << ", B = " << cell(j["B"]) << "\n";
  print_table(out, t);
}

inline void render_solve(std::ostream& out, const Json& j) {
  if (j.contains("audit")) {
    const auto& a = j["audit"];
    out << "hypothesis audit: universal " << cell(a["universal"]) << ", only at zero value "
        << cell(a["only_at_zero_value"]) << ", infeasible " << cell(a["infeasible"]) << "\n";
  }
  for (const auto& r : j["runs"]) {
    out << "\nseed " << cell(r["seed"]) << ": " << cell(r["status"]);
    if (!r["terminal"].is_null()) out << " " << cell(r["terminal"]);
    out << " after " << r["steps"].size() << " step(s)\n";
    if (r["steps"].empty()) continue;
    const bool greedy = r["steps"][0].contains("value");
    Table t{greedy ? std::vector<std::string>{"n", "x_n", "x_n+1", "step", "f(x_n)", "f(x_n+1)", "c^n f(x_0)", "ok"}
                   : std::vector<std::string>{"n", "x_n", "x_n+1", "step", "bound", "alpha", "ok"}};
    for (const auto& st : r["steps"]) {
      if (greedy)
        t.push_back({cell(st["n"]), cell(st["point"]), cell(st["next"]), cell(st["step_distance"]), cell(st["value"]),
                     cell(st["next_value"]), cell(st["value_bound"]),
                     cell(Json(st["step_bound_ok"].get<bool>() && st["value_bound_ok"].get<bool>() &&
                               st["monotone_ok"].get<bool>()))});
      else
        t.push_back({cell(st["n"]), cell(st["point"]), cell(st["next"]), cell(st["step_distance"]),
                     cell(st["step_bound"]), st.contains("alpha") ? cell(st["alpha"]) : "-",
                     cell(Json(st["step_bound_ok"].get<bool>() && st.value("alpha_ok", true)))});
    }
    print_table(out, t);
    for (const auto& n : r["notes"]) out << "note: " << n.get<std::string>() << "\n";
  }
}

inline void render_suite(std::ostream& out, const Json& j) {
  print_fields(out, j, {"suite", "seed", "trials", "attempts", "hypotheses_met", "unfilled", "passes", "wall_time_ms"});
  if (!j["bins"].empty()) {
    Table t{{"bin", "count"}};
    for (const auto& [k, v] : j["bins"].items()) t.push_back({k, v.dump()});
    print_table(out, t);
  }
  out << "counterexamples: " << j["counterexamples"].size() << "\n";
  for (const auto& c : j["counterexamples"])
    out << "  trial " << c["trial"].get<std::size_t>() << ": " << c["message"].get<std::string>() << "\n"
        << "  " << c["instance"].dump() << "\n";
}

inline void emit(std::ostream& out, const RunConfig& cfg, const Json& report,
                 void (*render)(std::ostream&, const Json&)) {
  if (cfg.output == "json")
    out << report.dump(2) << "\n";
  else
    render(out, report);
}

inline int report_axiom_error(std::ostream& out, std::ostream& err, const RunConfig& cfg, const AxiomError& e,
                              const std::vector<std::string>& labels) {
  auto s = FiniteQuasiSpace::trusted(labels, RationalMatrix(labels.size()));
  Json j{{"command", cfg.command}, {"error", e.what()}};
  j.update(diagnostics_to_json(s, e.diagnostics()));
  if (cfg.output == "json") {
    out << j.dump(2) << "\n";
  } else {
    err << "error: " << e.what() << "\n";
    Table t{{"kind", "witnesses", "lhs", "rhs"}};
    for (const auto& v : j["violations"])
      t.push_back({cell(v["kind"]), cell(v["witnesses"]), cell(v["lhs"]), cell(v["rhs"])});
    print_table(out, t);
  }
  return kViolation;
}

/// Labels of a document that failed axiom validation, for witness output.
inline std::vector<std::string> labels_of_file(const std::string& path) {
  try {
    auto inst = parse_instance(read_file(path), Validation::trusted);
    return inst.space.labels();
  } catch (...) {
    return {};
  }
}

}  // namespace detail

inline int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  using namespace detail;
  try {
    if (cfg.output != "text" && cfg.output != "json") throw InputError("--output must be text or json");
    if (cfg.command == "corpus") {
      const auto inst = corpus(cfg.target, cfg.n);
      out << instance_to_json(inst).dump(2) << "\n";
      return kOk;
    }
    if (cfg.command == "lab") {
      const auto rep = run_suite(cfg.target, cfg.trials, cfg.seed, parse_size(cfg.size));
      emit(out, cfg, suite_report_to_json(rep, cfg.timing), render_suite);
      return rep.ok() ? kOk : kViolation;
    }
    const auto inst = load_instance(cfg.input);
    if (cfg.command == "validate") {
      const auto j = cmd_validate(inst);
      emit(out, cfg, j, render_validate);
      return j["ok"].get<bool>() ? kOk : kViolation;
    }
    if (cfg.command == "analyze") {
      const auto j = cmd_analyze(inst, cfg.n.value_or(8));
      emit(out, cfg, j, render_analyze);
      if (j.contains("equivalence") && !j["equivalence"]["consistent"].get<bool>()) return kViolation;
      return kOk;
    }
    if (cfg.command == "hausdorff") {
      emit(out, cfg, cmd_hausdorff(inst, cfg.set_a, cfg.set_b), render_hausdorff);
      return kOk;
    }
    if (cfg.command == "solve") {
      bool all_ok = true;
      emit(out, cfg, cmd_solve(inst, cfg, all_ok), render_solve);
      return all_ok ? kOk : kViolation;
    }
    throw InputError("unknown command \"" + cfg.command + "\"");
  } catch (const AxiomError& e) {
    return report_axiom_error(out, err, cfg, e, labels_of_file(cfg.input));
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

/// Parses arguments (argv[0] excluded) and runs the command.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Exact analysis of finite quasi-pseudometric spaces and set-valued maps", "qpmtool"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--output", cfg.output, "text or json")->check(CLI::IsMember({"text", "json"}));

  auto* validate = app.add_subcommand("validate", "Check the space axioms of an instance file");
  validate->add_option("file", cfg.input)->required();

  auto* analyze = app.add_subcommand("analyze", "Classify points and report approximate values and level sets");
  analyze->add_option("file", cfg.input)->required();
  analyze->add_option("--n", cfg.n, "number of level sets C_1..C_n (default 8)");

  auto* hd = app.add_subcommand("hausdorff", "Hausdorff quasi-pseudometric between two label sets");
  hd->add_option("file", cfg.input)->required();
  hd->add_option("A", cfg.set_a, "comma-separated labels")->required();
  hd->add_option("B", cfg.set_b, "comma-separated labels")->required();

  auto* solve = app.add_subcommand("solve", "Run an iteration: startpoint, endpoint, fixed or picard");
  solve->add_option("target", cfg.target)->required()->check(CLI::IsMember({"startpoint", "endpoint", "fixed", "picard"}));
  solve->add_option("file", cfg.input)->required();
  auto* c_opt = solve->add_option("--c", cfg.c, "contraction constant, p/q");
  solve->add_option("--seed-point", cfg.seed_point, "start label; all points when omitted");
  solve->add_option("--max-iter", cfg.max_iter);
  auto* strict = solve->add_flag("--strict-cor38", cfg.strict_cor38, "literal c d(y, x) radius for `solve fixed`");
  auto* mode = solve->add_option("--mode", cfg.mode, "picard geometry: forward, backward, symmetric");

  auto* lab = app.add_subcommand("lab", "Property suites");
  lab->require_subcommand(1);
  auto* lab_run = lab->add_subcommand("run", "Run a registered suite");
  lab_run->add_option("suite", cfg.target)->required();
  lab_run->add_option("--trials", cfg.trials);
  lab_run->add_option("--seed", cfg.seed);
  lab_run->add_option("--size", cfg.size, "N or MIN:MAX point counts (default 1:6)");
  lab_run->add_flag("--timing", cfg.timing, "include wall time in the report");

  auto* corp = app.add_subcommand("corpus", "Golden instances");
  corp->require_subcommand(1);
  auto* exp = corp->add_subcommand("export", "Print a corpus instance as an input file");
  exp->add_option("id", cfg.target)->required();
  exp->add_option("--n", cfg.n, "size for example28 and example36-family");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  if (*validate) cfg.command = "validate";
  if (*analyze) cfg.command = "analyze";
  if (*hd) cfg.command = "hausdorff";
  if (*solve) cfg.command = "solve";
  if (*lab) cfg.command = "lab";
  if (*corp) cfg.command = "corpus";

  if (cfg.command == "solve") {
    std::string conflict;
    if (strict->count() && cfg.target != "fixed") conflict = "--strict-cor38 applies only to `solve fixed`";
    if (mode->count() && cfg.target != "picard") conflict = "--mode applies only to `solve picard`";
    if (c_opt->count() && cfg.target == "picard") conflict = "--c does not apply to `solve picard`; use gamma";
    if (!conflict.empty()) {
      err << "error: " << conflict << "\n";
      return kInputError;
    }
  }
  return dispatch(cfg, out, err);
}

}  // namespace qpm::cli
