#pragma once

/**
 * @file cli.hpp
 * @brief Run configuration, dispatch and report rendering for the command-line driver.
 */

#include "zetavoa/generating.hpp"
#include "zetavoa/quadratic.hpp"
#include "zetavoa/report.hpp"
#include "zetavoa/vertex.hpp"
#include "zetavoa/zeta.hpp"

#include <array>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace zetavoa {

/// Usage or configuration problem; maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class OutputFormat { text, json };

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{
      "bernoulli",     "zeta",          "qdim",          "chi",          "verify-virasoro",
      "verify-modified", "verify-bloch-purity", "verify-diffop", "verify-contraction", "verify-diagonal",
      "verify-thm31",  "verify-axioms", "verify-jacobi", "verify-thm42"};
  return names;
}

/// Unset fields take the per-command defaults in resolved().
struct RunConfig {
  std::string command;
  std::optional<int> max;
  std::optional<int> weight;
  std::optional<int> window;
  std::optional<std::array<int, 2>> x0, x1, x2;
  std::optional<int> m, n, r, s;
  std::optional<int> range;
  std::optional<int> mmax;
  std::optional<int> pmax;
  std::optional<int> ydeg;
  std::optional<std::string> convention;
  OutputFormat format = OutputFormat::text;
  std::string output;

  /// Fills unset fields and checks ranges; throws ConfigError.
  RunConfig resolved() const;
};

namespace detail {

inline int need_nonneg(const char* name, int v) {
  if (v < 0) throw ConfigError(std::string("--") + name + " must be >= 0");
  return v;
}

inline std::array<int, 2> pair_from_json(const Json& j, const std::string& key) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    throw ConfigError("config field '" + key + "' must be [lo, hi]");
  std::array<int, 2> p{j[0].get<int>(), j[1].get<int>()};
  if (p[0] > p[1]) throw ConfigError("config field '" + key + "' has lo > hi");
  return p;
}

}  // namespace detail

inline RunConfig RunConfig::resolved() const {
  RunConfig c = *this;
  bool known = false;
  for (const auto& n : command_names()) known = known || n == c.command;
  if (!known) throw ConfigError("unknown command '" + c.command + "'");
  struct Defaults {
    int max, weight, window, ydeg;
  };
  Defaults d{10, 6, 4, 2};
  if (c.command == "qdim" || c.command == "chi") d.max = 20;
  if (c.command == "verify-contraction") d.window = 12;
  if (c.command == "verify-diagonal") d = {3, 5, 3, 2};
  if (c.command == "verify-thm31") d = {0, 4, 5, 2};
  if (c.command == "verify-axioms") d = {0, 5, 8, 0};
  if (c.command == "verify-jacobi") d = {6, 4, 6, 0};
  if (c.command == "verify-thm42") d = {0, 4, 6, 4};
  if (!c.max) c.max = d.max;
  if (!c.weight) c.weight = d.weight;
  if (!c.window) c.window = d.window;
  if (!c.ydeg) c.ydeg = d.ydeg;
  if (!c.range) c.range = 4;
  if (!c.pmax) c.pmax = 6;
  if (!c.r) c.r = 0;
  if (!c.s) c.s = 0;
  detail::need_nonneg("max", *c.max);
  detail::need_nonneg("weight", *c.weight);
  detail::need_nonneg("window", *c.window);
  detail::need_nonneg("ydeg", *c.ydeg);
  detail::need_nonneg("range", *c.range);
  detail::need_nonneg("p", *c.pmax);
  detail::need_nonneg("r", *c.r);
  detail::need_nonneg("s", *c.s);
  if (!c.mmax) c.mmax = std::max(6, 2 * (*c.r + *c.s) + 4);
  if (*c.mmax < 2 * (*c.r + *c.s) + 4) throw ConfigError("--mmax must be >= 2(r+s)+4");
  for (auto* p : {&c.x0, &c.x1, &c.x2})
    if (!*p) *p = std::array<int, 2>{-*c.window, *c.window};
  if (c.convention) {
    try {
      (void)convention_from_string(*c.convention);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  return c;
}

/// Reads a JSON config object; unknown fields are rejected.
inline RunConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> fields{"command", "max", "weight", "window", "x0", "x1", "x2", "m", "n", "r", "s",
                                            "range", "mmax", "p", "ydeg", "convention", "format", "output"};
  RunConfig c;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    const Json& v = it.value();
    if (!fields.count(k)) throw ConfigError("unknown config field '" + k + "'");
    auto as_int = [&]() {
      if (!v.is_number_integer()) throw ConfigError("config field '" + k + "' must be an integer");
      return v.get<int>();
    };
    auto as_string = [&]() {
      if (!v.is_string()) throw ConfigError("config field '" + k + "' must be a string");
      return v.get<std::string>();
    };
    if (k == "command") c.command = as_string();
    else if (k == "max") c.max = as_int();
    else if (k == "weight") c.weight = as_int();
    else if (k == "window") c.window = as_int();
    else if (k == "x0") c.x0 = detail::pair_from_json(v, k);
    else if (k == "x1") c.x1 = detail::pair_from_json(v, k);
    else if (k == "x2") c.x2 = detail::pair_from_json(v, k);
    else if (k == "m") c.m = as_int();
    else if (k == "n") c.n = as_int();
    else if (k == "r") c.r = as_int();
    else if (k == "s") c.s = as_int();
    else if (k == "range") c.range = as_int();
    else if (k == "mmax") c.mmax = as_int();
    else if (k == "p") c.pmax = as_int();
    else if (k == "ydeg") c.ydeg = as_int();
    else if (k == "convention") c.convention = as_string();
    else if (k == "format") {
      std::string f = as_string();
      if (f != "text" && f != "json") throw ConfigError("format must be text or json");
      c.format = f == "json" ? OutputFormat::json : OutputFormat::text;
    } else if (k == "output") c.output = as_string();
  }
  return c;
}

inline RunConfig config_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return config_from_json(j);
}

/// Fields set in `over` replace those in `base`.
inline RunConfig overlay(RunConfig base, const RunConfig& over) {
  if (!over.command.empty()) base.command = over.command;
  auto take = [](auto& dst, const auto& src) {
    if (src) dst = src;
  };
  take(base.max, over.max);
  take(base.weight, over.weight);
  take(base.window, over.window);
  take(base.x0, over.x0);
  take(base.x1, over.x1);
  take(base.x2, over.x2);
  take(base.m, over.m);
  take(base.n, over.n);
  take(base.r, over.r);
  take(base.s, over.s);
  take(base.range, over.range);
  take(base.mmax, over.mmax);
  take(base.pmax, over.pmax);
  take(base.ydeg, over.ydeg);
  take(base.convention, over.convention);
  return base;
}

/// A computed table or verification, ready to render.
struct RunResult {
  bool is_report = false;
  VerificationReport report;
  Json table;  // for table commands
  bool passed() const { return !is_report || report.passed(); }
};

namespace detail {

inline std::vector<std::pair<int, int>> mn_pairs(const RunConfig& c) {
  std::vector<std::pair<int, int>> out;
  const int R = *c.range;
  std::vector<int> ms, ns;
  if (c.m) ms = {*c.m};
  else for (int i = -R; i <= R; ++i) ms.push_back(i);
  if (c.n) ns = {*c.n};
  else for (int i = -R; i <= R; ++i) ns.push_back(i);
  for (int m : ms)
    for (int n : ns) out.emplace_back(m, n);
  return out;
}

/// Merges one sub-report, keeping its findings under the tag.
inline void fold(VerificationReport& into, const VerificationReport& part, const Json& tag) {
  into.merge(part, tag);
  if (!part.findings().empty()) {
    Json f = tag;
    f["findings"] = part.findings();
    into.findings()["parts"].push_back(f);
  }
}

inline std::vector<std::pair<std::string, FockVector>> named_states() {
  const auto& k = voa_constants();
  return {{"1", k.vacuum}, {"h(-1)", FockVector::monomial({1})}, {"omega", k.omega}};
}

inline std::vector<Convention> conventions_of(const RunConfig& c) {
  if (c.convention) return {convention_from_string(*c.convention)};
  return {Convention::neg_powers_y1, Convention::neg_powers_y2};
}

}  // namespace detail

/// Evaluates a resolved config.
inline RunResult compute(const RunConfig& c) {
  RunResult res;
  const std::string& cmd = c.command;
  const int W = *c.weight;
  if (cmd == "bernoulli") {
    auto b = bernoulli_table(*c.max);
    Json t = Json::array();
    for (std::size_t k = 0; k < b.size(); ++k) t.push_back({{"k", k}, {"B", b[k].str()}});
    res.table = {{"schema", 1}, {"table", "bernoulli"}, {"rows", t}};
  } else if (cmd == "zeta") {
    Json t = Json::array();
    for (int k = 0; k <= *c.max; ++k) t.push_back({{"s", -k}, {"zeta", zeta_nonpositive(k).str()}});
    res.table = {{"schema", 1}, {"table", "zeta"}, {"rows", t}};
  } else if (cmd == "qdim") {
    PowerSeries g = graded_dimension(*c.max);
    Json t = Json::array();
    for (int k = 0; k <= *c.max; ++k) t.push_back(g.coeff(k).str());
    res.table = {{"schema", 1}, {"table", "qdim"}, {"coefficients", t}};
  } else if (cmd == "chi") {
    ShiftedQSeries x = chi_S(*c.max);
    Json t = Json::array();
    for (int k = 0; k <= *c.max; ++k) t.push_back(x.series.coeff(k).str());
    res.table = {{"schema", 1}, {"table", "chi"}, {"shift", x.shift.str()}, {"coefficients", t}};
  } else {
    res.is_report = true;
    VerificationReport& rep = res.report;
    if (cmd == "verify-virasoro" || cmd == "verify-modified") {
      const bool modified = cmd == "verify-modified";
      auto pairs = detail::mn_pairs(c);
      if (pairs.size() == 1) {
        auto [m, n] = pairs[0];
        rep = modified ? verify_modified_virasoro(m, n, W) : verify_virasoro(m, n, W);
      } else {
        rep = VerificationReport(modified ? "modified-virasoro" : "virasoro", {{"range", *c.range}, {"weight", W}});
        for (auto [m, n] : pairs)
          detail::fold(rep, modified ? verify_modified_virasoro(m, n, W) : verify_virasoro(m, n, W), {{"m", m}, {"n", n}});
      }
    } else if (cmd == "verify-bloch-purity") {
      rep = verify_monomial_purity(*c.r, *c.s, *c.mmax, W);
    } else if (cmd == "verify-diffop") {
      auto pairs = detail::mn_pairs(c);
      if (pairs.size() == 1) {
        rep = verify_diff_op_projection(*c.r, *c.s, pairs[0].first, pairs[0].second, W, *c.pmax);
      } else {
        rep = VerificationReport("diff-op-projection", {{"r", *c.r}, {"s", *c.s}, {"range", *c.range}, {"weight", W}, {"p_max", *c.pmax}});
        for (auto [m, n] : pairs)
          detail::fold(rep, verify_diff_op_projection(*c.r, *c.s, m, n, W, *c.pmax), {{"m", m}, {"n", n}});
      }
    } else if (cmd == "verify-contraction") {
      rep = VerificationReport("contraction", {{"weight", W}, {"window", *c.window}});
      for (const auto& b : basis(W)) detail::fold(rep, contraction_check(FockVector(b), {-*c.window, *c.window}), {{"vector", to_json(b)}});
    } else if (cmd == "verify-diagonal") {
      rep = VerificationReport("diagonal-extraction", {{"r_max", *c.max}, {"n_max", *c.window}, {"weight", W}});
      for (Convention conv : detail::conventions_of(c))
        detail::fold(rep, diagonal_extraction_check(*c.max, *c.window, W, conv), {{"convention", to_string(conv)}});
    } else if (cmd == "verify-thm31") {
      const int D = *c.ydeg;
      rep = VerificationReport("theorem31", {{"weight", W}, {"window", *c.window}, {"ydeg", D}});
      Json verdicts = Json::object();
      Json validating = Json::array();
      Theorem31Context ctx(D);
      for (Convention conv : detail::conventions_of(c)) {
        VerificationReport part("theorem31", {{"convention", to_string(conv)}});
        for (const auto& b : basis(W))
          part.merge(theorem31_check(FockVector(b), {-*c.window, *c.window}, D, conv, &ctx), {{"vector", to_json(b)}});
        verdicts[to_string(conv)] = part.passed();
        if (part.passed()) validating.push_back(to_string(conv));
        rep.merge(part, {{"convention", to_string(conv)}});
      }
      rep.findings()["convention_passes"] = verdicts;
      rep.findings()["validating_conventions"] = validating;
    } else if (cmd == "verify-axioms") {
      rep = axiom_suite(W, *c.window);
    } else if (cmd == "verify-jacobi" || cmd == "verify-thm42") {
      const bool shifted = cmd == "verify-thm42";
      Windows win{(*c.x0)[0], (*c.x0)[1], (*c.x1)[0], (*c.x1)[1], (*c.x2)[0], (*c.x2)[1], *c.ydeg, W};
      rep = VerificationReport(shifted ? "theorem42" : "jacobi", {{"weight", W}, {"windows", win.to_json()}});
      Json weak = Json::object();
      for (const auto& [un, u] : detail::named_states())
        for (const auto& [vn, v] : detail::named_states()) {
          int order = 0;
          for (const auto& b : basis(W)) {
            FockVector w(b);
            Json tag = {{"u", un}, {"v", vn}, {"w", to_json(b)}};
            if (shifted) {
              detail::fold(rep, theorem42_check(u, v, w, win), tag);
            } else {
              detail::fold(rep, jacobi_check(u, v, w, win), tag);
              VerificationReport wc = weak_comm_check(u, v, w, win, *c.max);
              int found = wc.findings()["minimal_n"].get<int>();
              if (found < 0) order = -1;
              else if (order >= 0) order = std::max(order, found);
              rep.merge(wc, {{"weak", true}, {"u", un}, {"v", vn}, {"w", to_json(b)}});
            }
          }
          if (!shifted) weak[un + "," + vn] = order;
        }
      if (!shifted) rep.findings()["weak_commutativity_order"] = weak;
    }
  }
  return res;
}

inline std::string render(const RunResult& r, OutputFormat f) {
  std::ostringstream out;
  if (f == OutputFormat::json) {
    out << (r.is_report ? r.report.to_json() : r.table).dump(2) << "\n";
    return out.str();
  }
  if (!r.is_report) {
    const Json& t = r.table;
    const std::string name = t["table"];
    if (name == "bernoulli")
      for (const auto& row : t["rows"]) out << "B_" << row["k"].get<int>() << " = " << row["B"].get<std::string>() << "\n";
    else if (name == "zeta")
      for (const auto& row : t["rows"]) out << "zeta(" << row["s"].get<int>() << ") = " << row["zeta"].get<std::string>() << "\n";
    else {
      if (t.contains("shift")) out << "shift " << t["shift"].get<std::string>() << "\n";
      bool first = true;
      for (const auto& c : t["coefficients"]) {
        out << (first ? "" : ",") << c.get<std::string>();
        first = false;
      }
      out << "\n";
    }
    return out.str();
  }
  const auto& rep = r.report;
  const auto& s = rep.summary();
  out << rep.identity() << ": " << (rep.passed() ? "PASS" : "FAIL") << "\n";
  out << "parameters " << rep.parameters().dump() << "\n";
  if (!rep.findings().empty()) out << "findings " << rep.findings().dump() << "\n";
  out << "cells total=" << s.total << " passed=" << s.passed << " failed=" << s.failed
      << " uncertified=" << s.uncertified << "\n";
  for (const auto& c : rep.cells())
    if (c.status == CellStatus::fail)
      out << "  FAIL " << c.key.dump() << " lhs=" << c.lhs.dump() << " rhs=" << c.rhs.dump() << "\n";
  return out.str();
}

/// Runs a config end to end. Returns the exit code: 0 pass, 1 violation, 2 usage error.
inline int run(const RunConfig& config, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  RunConfig c;
  RunResult res;
  try {
    c = config.resolved();
    res = compute(c);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  std::string text = render(res, c.format);
  if (c.output.empty()) {
    out << text;
  } else {
    std::ofstream f(c.output, std::ios::binary);
    if (!f) {
      err << "error: cannot write '" << c.output << "'\n";
      return 2;
    }
    f << text;
  }
  return res.passed() ? 0 : 1;
}

}  // namespace zetavoa
