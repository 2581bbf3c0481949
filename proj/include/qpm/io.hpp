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

/// @file io.hpp
/// Instance files and JSON reports.
///
/// Instance grammar, version 1 (a JSON object):
///
///   points   array of distinct strings                          required
///   dist     array of rows, one per point, in `points` order;   required
///            entries are rationals
///   F        object: label -> array of labels (nonempty)       optional
///   f        object: label -> label                            optional
///   alpha    matrix of rationals, rows in `points` order       optional, needs f
///   gamma    modulus                                           optional
///   psi      modulus                                           optional
///   flags    object: t0 (bool, default true)                   optional
///   lab      object: c, seed_point, candidate, mode,           optional
///            trace {points: [labels], cycle_start}, provenance
///   version  integer, must be 1                                optional
///
/// A rational is a string "p/q", "-p/q" or "k", or a JSON integer. Floats
/// are rejected. A modulus is {"kind": "linear", "c": r},
/// {"kind": "power", "c": r, "p": k} or
/// {"kind": "table", "breakpoints": [[t, v], ...]}.
///
/// Errors carry a JSON path such as `$.dist[1][2]`.

#include "qpm/lab.hpp"

#include <json.hpp>

#include <fstream>

namespace qpm {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

namespace detail {

[[noreturn]] inline void input_fail(const std::string& path, const std::string& what) {
  throw InputError(path + ": " + what);
}

inline Rational read_rational(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_number_unsigned()) return Rational(j.get<std::uint64_t>());
  if (j.is_number_float()) input_fail(path, "floating-point numbers are not accepted; write \"p/q\"");
  if (!j.is_string()) input_fail(path, "expected a rational");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const InputError& e) {
    input_fail(path, e.what());
  }
}

inline const Json& require(const Json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) input_fail(path, std::string("missing key \"") + key + "\"");
  return *it;
}

inline RationalMatrix read_matrix(const Json& j, std::size_t n, const std::string& path) {
  if (!j.is_array()) input_fail(path, "expected an array of rows");
  if (j.size() != n) input_fail(path, "expected " + std::to_string(n) + " rows, got " + std::to_string(j.size()));
  RationalMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string row_path = path + "[" + std::to_string(i) + "]";
    const auto& row = j[i];
    if (!row.is_array()) input_fail(row_path, "expected a row array");
    if (row.size() != n)
      input_fail(row_path, "expected " + std::to_string(n) + " entries, got " + std::to_string(row.size()));
    for (std::size_t k = 0; k < n; ++k) m(i, k) = read_rational(row[k], row_path + "[" + std::to_string(k) + "]");
  }
  return m;
}

inline PointIndex read_label(const FiniteQuasiSpace& s, const Json& j, const std::string& path) {
  if (!j.is_string()) input_fail(path, "expected a point label");
  const auto& name = j.get_ref<const std::string&>();
  for (PointIndex i = 0; i < s.size(); ++i)
    if (s.label(i) == name) return i;
  input_fail(path, "unknown point \"" + name + "\"");
}

inline FunctionSpec read_modulus(const Json& j, const std::string& path) {
  if (!j.is_object()) input_fail(path, "expected a modulus object");
  const auto& kind = require(j, "kind", path);
  if (!kind.is_string()) input_fail(path + ".kind", "expected a string");
  const auto k = kind.get<std::string>();
  try {
    if (k == "linear") return FunctionSpec::linear(read_rational(require(j, "c", path), path + ".c"));
    if (k == "power") {
      const auto& p = require(j, "p", path);
      if (!p.is_number_unsigned() || p.get<std::uint64_t>() < 1) input_fail(path + ".p", "expected an integer >= 1");
      return FunctionSpec::power(read_rational(require(j, "c", path), path + ".c"), p.get<unsigned>());
    }
    if (k == "table") {
      const auto& bp = require(j, "breakpoints", path);
      if (!bp.is_array()) input_fail(path + ".breakpoints", "expected an array of [t, v] pairs");
      std::vector<std::pair<Rational, Rational>> pts;
      for (std::size_t i = 0; i < bp.size(); ++i) {
        const std::string p = path + ".breakpoints[" + std::to_string(i) + "]";
        if (!bp[i].is_array() || bp[i].size() != 2) input_fail(p, "expected a [t, v] pair");
        pts.emplace_back(read_rational(bp[i][0], p + "[0]"), read_rational(bp[i][1], p + "[1]"));
      }
      return FunctionSpec::table(std::move(pts));
    }
  } catch (const InputError& e) {
    const std::string msg = e.what();
    if (msg.rfind("$", 0) == 0) throw;
    input_fail(path, msg);
  }
  input_fail(path + ".kind", "unknown modulus kind \"" + k + "\"");
}

inline Json modulus_to_json(const FunctionSpec& f) {
  Json j;
  j["kind"] = to_string(f.kind());
  switch (f.kind()) {
    case FunctionKind::linear: j["c"] = to_string(f.coefficient()); break;
    case FunctionKind::power:
      j["c"] = to_string(f.coefficient());
      j["p"] = f.exponent();
      break;
    case FunctionKind::table: {
      Json bp = Json::array();
      for (const auto& [t, v] : f.breakpoints()) bp.push_back({to_string(t), to_string(v)});
      j["breakpoints"] = std::move(bp);
      break;
    }
  }
  return j;
}

inline Json matrix_to_json(const RationalMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.size(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline PicardMode parse_mode(const std::string& text, const std::string& path) {
  if (text == "forward") return PicardMode::forward;
  if (text == "backward") return PicardMode::backward;
  if (text == "symmetric") return PicardMode::symmetric;
  input_fail(path, "unknown mode \"" + text + "\" (forward, backward, symmetric)");
}

}  // namespace detail

inline PicardMode parse_picard_mode(const std::string& text) { return detail::parse_mode(text, "mode"); }

enum class Validation { full, trusted };

/// Builds an instance from a parsed document. With Validation::full the
/// space axioms are checked exhaustively and an AxiomError carries every
/// violation; structural problems raise InputError with a JSON path.
inline LabInstance instance_from_json(const Json& doc, Validation validation = Validation::full) {
  using detail::input_fail;
  if (!doc.is_object()) input_fail("$", "expected a JSON object");
  static const std::vector<std::string> known{"version", "points", "dist", "F", "f", "alpha",
                                              "gamma",   "psi",    "flags", "lab"};
  for (const auto& [key, value] : doc.items())
    if (std::find(known.begin(), known.end(), key) == known.end()) input_fail("$." + key, "unknown key");
  if (doc.contains("version")) {
    const auto& v = doc["version"];
    if (!v.is_number_integer() || v.get<int>() != kFormatVersion)
      input_fail("$.version", "unsupported format version");
  }

  const auto& pts = detail::require(doc, "points", "$");
  if (!pts.is_array() || pts.empty()) input_fail("$.points", "expected a nonempty array of labels");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!pts[i].is_string()) input_fail("$.points[" + std::to_string(i) + "]", "expected a string label");
    labels.push_back(pts[i].get<std::string>());
    if (std::find(labels.begin(), labels.end() - 1, labels.back()) != labels.end() - 1)
      input_fail("$.points[" + std::to_string(i) + "]", "duplicate label \"" + labels.back() + "\"");
  }

  bool t0 = true;
  if (doc.contains("flags")) {
    const auto& fl = doc["flags"];
    if (!fl.is_object()) input_fail("$.flags", "expected an object");
    for (const auto& [key, value] : fl.items()) {
      if (key != "t0") input_fail("$.flags." + key, "unknown flag");
      if (!value.is_boolean()) input_fail("$.flags.t0", "expected true or false");
      t0 = value.get<bool>();
    }
  }

  auto m = detail::read_matrix(detail::require(doc, "dist", "$"), labels.size(), "$.dist");
  LabInstance inst(validation == Validation::full ? FiniteQuasiSpace::make(labels, m, t0)
                                                  : FiniteQuasiSpace::trusted(labels, m));
  inst.require_t0 = t0;
  const auto& s = inst.space;

  if (doc.contains("F")) {
    const auto& jf = doc["F"];
    if (!jf.is_object()) input_fail("$.F", "expected an object mapping labels to label arrays");
    std::vector<std::optional<PointSet>> imgs(s.size());
    for (const auto& [key, value] : jf.items()) {
      const std::string path = "$.F." + key;
      const PointIndex x = detail::read_label(s, Json(key), path);
      if (!value.is_array()) input_fail(path, "expected an array of labels");
      if (value.empty()) input_fail(path, "empty image");
      std::vector<PointIndex> ys;
      for (std::size_t i = 0; i < value.size(); ++i)
        ys.push_back(detail::read_label(s, value[i], path + "[" + std::to_string(i) + "]"));
      imgs[x] = PointSet(std::move(ys));
    }
    std::vector<PointSet> full;
    for (PointIndex x = 0; x < s.size(); ++x) {
      if (!imgs[x]) input_fail("$.F", "no image for point \"" + s.label(x) + "\"");
      full.push_back(std::move(*imgs[x]));
    }
    inst.set_map = SetValuedMap(s, std::move(full));
  }

  if (doc.contains("alpha") && !doc.contains("f")) input_fail("$.alpha", "alpha needs a point map f");
  if (doc.contains("f")) {
    const auto& jf = doc["f"];
    if (!jf.is_object()) input_fail("$.f", "expected an object mapping labels to labels");
    std::vector<std::optional<PointIndex>> t(s.size());
    for (const auto& [key, value] : jf.items()) {
      const std::string path = "$.f." + key;
      t[detail::read_label(s, Json(key), path)] = detail::read_label(s, value, path);
    }
    std::vector<PointIndex> targets;
    for (PointIndex x = 0; x < s.size(); ++x) {
      if (!t[x]) input_fail("$.f", "no value for point \"" + s.label(x) + "\"");
      targets.push_back(*t[x]);
    }
    std::optional<RationalMatrix> alpha;
    if (doc.contains("alpha")) {
      alpha = detail::read_matrix(doc["alpha"], s.size(), "$.alpha");
      for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j)
          if ((*alpha)(i, j) < 0)
            input_fail("$.alpha[" + std::to_string(i) + "][" + std::to_string(j) + "]", "alpha must be nonnegative");
    }
    inst.point_map = SingleMap(s, std::move(targets), std::move(alpha));
  }

  if (doc.contains("gamma")) inst.gamma = detail::read_modulus(doc["gamma"], "$.gamma");
  if (doc.contains("psi")) inst.psi = detail::read_modulus(doc["psi"], "$.psi");

  if (doc.contains("lab")) {
    const auto& lab = doc["lab"];
    if (!lab.is_object()) input_fail("$.lab", "expected an object");
    for (const auto& [key, value] : lab.items()) {
      const std::string path = "$.lab." + key;
      if (key == "c") {
        inst.c = detail::read_rational(value, path);
      } else if (key == "seed_point") {
        inst.seed_point = detail::read_label(s, value, path);
      } else if (key == "candidate") {
        inst.candidate = detail::read_label(s, value, path);
      } else if (key == "mode") {
        if (!value.is_string()) input_fail(path, "expected a string");
        inst.mode = detail::parse_mode(value.get<std::string>(), path);
      } else if (key == "provenance") {
        if (!value.is_string()) input_fail(path, "expected a string");
        inst.provenance = value.get<std::string>();
      } else if (key == "trace") {
        if (!value.is_object()) input_fail(path, "expected an object");
        const auto& tp = detail::require(value, "points", path);
        if (!tp.is_array() || tp.empty()) input_fail(path + ".points", "expected a nonempty array of labels");
        std::vector<PointIndex> seq;
        for (std::size_t i = 0; i < tp.size(); ++i)
          seq.push_back(detail::read_label(s, tp[i], path + ".points[" + std::to_string(i) + "]"));
        if (value.contains("cycle_start")) {
          const auto& cs = value["cycle_start"];
          if (!cs.is_number_unsigned() || cs.get<std::size_t>() >= seq.size())
            input_fail(path + ".cycle_start", "expected an index into the trace");
          inst.trace = SequenceTrace::periodic(std::move(seq), cs.get<std::size_t>());
        } else {
          inst.trace = SequenceTrace::finite(std::move(seq));
        }
      } else {
        input_fail(path, "unknown key");
      }
    }
  }
  return inst;
}

/// Parses instance text; JSON syntax errors report the byte offset.
inline LabInstance parse_instance(std::string_view text, Validation validation = Validation::full) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("$: JSON syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  return instance_from_json(doc, validation);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open \"" + path + "\"");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline LabInstance load_instance(const std::string& path, Validation validation = Validation::full) {
  return parse_instance(read_file(path), validation);
}

inline Json instance_to_json(const LabInstance& inst) {
  const auto& s = inst.space;
  Json j;
  j["version"] = kFormatVersion;
  j["points"] = s.labels();
  j["dist"] = detail::matrix_to_json(s.matrix());
  if (inst.set_map) {
    Json f = Json::object();
    for (PointIndex x = 0; x < s.size(); ++x) f[s.label(x)] = s.labels_of((*inst.set_map)(x));
    j["F"] = std::move(f);
  }
  if (inst.point_map) {
    Json f = Json::object();
    for (PointIndex x = 0; x < s.size(); ++x) f[s.label(x)] = s.label((*inst.point_map)(x));
    j["f"] = std::move(f);
    if (inst.point_map->has_alpha()) j["alpha"] = detail::matrix_to_json(inst.point_map->alpha());
  }
  if (inst.gamma) j["gamma"] = detail::modulus_to_json(*inst.gamma);
  if (inst.psi) j["psi"] = detail::modulus_to_json(*inst.psi);
  j["flags"] = {{"t0", inst.require_t0}};
  Json lab = Json::object();
  if (inst.c) lab["c"] = to_string(*inst.c);
  if (inst.seed_point) lab["seed_point"] = s.label(*inst.seed_point);
  if (inst.candidate) lab["candidate"] = s.label(*inst.candidate);
  if (inst.mode) lab["mode"] = to_string(*inst.mode);
  if (inst.trace) {
    Json tr;
    Json pts = Json::array();
    for (auto p : inst.trace->points) pts.push_back(s.label(p));
    tr["points"] = std::move(pts);
    if (inst.trace->cycle_start) tr["cycle_start"] = *inst.trace->cycle_start;
    lab["trace"] = std::move(tr);
  }
  if (!inst.provenance.empty()) lab["provenance"] = inst.provenance;
  if (!lab.empty()) j["lab"] = std::move(lab);
  return j;
}

inline bool same_instance(const LabInstance& a, const LabInstance& b) {
  return a.space == b.space && a.set_map == b.set_map && a.point_map == b.point_map && a.gamma == b.gamma &&
         a.psi == b.psi && a.c == b.c && a.mode == b.mode && a.seed_point == b.seed_point &&
         a.candidate == b.candidate && a.trace == b.trace && a.require_t0 == b.require_t0 &&
         a.provenance == b.provenance;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

inline Json diagnostics_to_json(const FiniteQuasiSpace& s, const SpaceDiagnostics& d) {
  Json v = Json::array();
  for (const auto& x : d.violations) {
    Json w = Json::array();
    for (auto p : x.witnesses) w.push_back(s.label(p));
    v.push_back({{"kind", to_string(x.kind)}, {"witnesses", std::move(w)}, {"lhs", to_string(x.lhs)},
                 {"rhs", to_string(x.rhs)}});
  }
  return {{"ok", d.ok()}, {"violations", std::move(v)}};
}

inline Json log_to_json(const FiniteQuasiSpace& s, const IterationLog& log) {
  auto opt = [](const std::optional<Rational>& r) -> Json { return r ? Json(to_string(*r)) : Json(nullptr); };
  Json steps = Json::array();
  for (const auto& st : log.steps) {
    Json j{{"n", st.n},
           {"point", s.label(st.point)},
           {"next", s.label(st.next)},
           {"step_distance", to_string(st.step_distance)},
           {"step_bound", to_string(st.step_bound)},
           {"step_bound_ok", st.step_bound_ok}};
    if (st.alpha) {
      j["alpha"] = to_string(*st.alpha);
      j["alpha_ok"] = st.alpha_ok;
    }
    if (st.value) {
      j["value"] = opt(st.value);
      j["next_value"] = opt(st.next_value);
      j["feasibility_bound"] = opt(st.feasibility_bound);
      j["value_bound"] = opt(st.value_bound);
      j["value_bound_ok"] = st.value_bound_ok;
      j["monotone_ok"] = st.monotone_ok;
    }
    if (st.tail_bound) {
      j["tail_bound"] = opt(st.tail_bound);
      j["tail_distance"] = opt(st.tail_distance);
      j["tail_bound_ok"] = st.tail_bound_ok;
    }
    steps.push_back(std::move(j));
  }
  Json traj = Json::array();
  for (auto p : log.trajectory) traj.push_back(s.label(p));
  Json j{{"status", to_string(log.status)},
         {"terminal", log.terminal ? Json(s.label(*log.terminal)) : Json(nullptr)},
         {"witness", log.witness ? Json(s.label(*log.witness)) : Json(nullptr)},
         {"trajectory", std::move(traj)},
         {"steps", std::move(steps)},
         {"all_steps_ok", log.all_steps_ok()},
         {"windows_ok", log.windows_ok},
         {"notes", log.notes}};
  if (log.initial_value) j["initial_value"] = to_string(*log.initial_value);
  return j;
}

/// Suite report as JSON. Wall time is included only on request so that
/// identical runs serialize to identical bytes.
inline Json suite_report_to_json(const SuiteReport& r, bool include_timing = false) {
  Json cex = Json::array();
  for (const auto& c : r.counterexamples)
    cex.push_back({{"trial", c.trial}, {"message", c.message}, {"instance", instance_to_json(c.instance)}});
  Json bins = Json::object();
  for (const auto& [k, v] : r.bins) bins[k] = v;
  Json j{{"suite", r.suite_id},
         {"seed", r.seed},
         {"trials", r.trials},
         {"size", {{"min", r.bounds.min_points}, {"max", r.bounds.max_points}}},
         {"attempts", r.attempts},
         {"hypotheses_met", r.hypotheses_met},
         {"unfilled", r.unfilled},
         {"passes", r.passes},
         {"bins", std::move(bins)},
         {"counterexamples", std::move(cex)}};
  if (include_timing) j["wall_time_ms"] = r.wall_time_ms;
  return j;
}

}  // namespace qpm
