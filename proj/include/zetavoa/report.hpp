#pragma once

/**
 * @file report.hpp
 * @brief Per-cell verification records shared by every identity checker.
 *
 * A cell is one coefficient position (a basis vector, an exponent tuple, a
 * mode index) with the exact value of each side of the identity. A cell
 * passes only when the two sides are equal; cells outside the exactly-known
 * region are recorded as uncertified and never count as passed.
 *
 * Cells where both sides are zero are tallied in the summary but, unless
 * `keep_trivial_cells` is set, not listed individually.
 */

#include <json.hpp>

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace zetavoa {

using Json = nlohmann::ordered_json;

enum class CellStatus { pass, fail, uncertified };

struct ReportCell {
  Json key;  // object; its fields are emitted inline
  Json lhs;
  Json rhs;
  CellStatus status = CellStatus::pass;
};

struct ReportSummary {
  std::size_t total = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t uncertified = 0;

  ReportSummary& operator+=(const ReportSummary& o) {
    total += o.total;
    passed += o.passed;
    failed += o.failed;
    uncertified += o.uncertified;
    return *this;
  }
};

class VerificationReport {
public:
  VerificationReport() = default;
  explicit VerificationReport(std::string identity, Json parameters = Json::object())
      : identity_(std::move(identity)), parameters_(std::move(parameters)) {}

  const std::string& identity() const { return identity_; }
  const Json& parameters() const { return parameters_; }
  Json& parameters() { return parameters_; }
  /// Recorded data that is not itself a pass/fail cell (central terms, fitted exponents, ...).
  const Json& findings() const { return findings_; }
  Json& findings() { return findings_; }
  const std::vector<ReportCell>& cells() const { return cells_; }
  const ReportSummary& summary() const { return summary_; }

  void keep_trivial_cells(bool keep) { keep_trivial_ = keep; }

  /// Records a compared cell. `trivial` marks a 0 = 0 comparison.
  void add(Json key, Json lhs, Json rhs, bool equal, bool trivial = false) {
    ++summary_.total;
    if (equal) ++summary_.passed; else ++summary_.failed;
    if (trivial && equal && !keep_trivial_) return;
    cells_.push_back({std::move(key), std::move(lhs), std::move(rhs),
                      equal ? CellStatus::pass : CellStatus::fail});
  }

  void add_uncertified(Json key) {
    ++summary_.total;
    ++summary_.uncertified;
    cells_.push_back({std::move(key), nullptr, nullptr, CellStatus::uncertified});
  }

  /// Folds another report's cells into this one; each cell key gains `tag`.
  void merge(const VerificationReport& other, const Json& tag = Json::object()) {
    for (const auto& c : other.cells_) {
      ReportCell copy = c;
      Json key = tag;
      for (auto it = c.key.begin(); it != c.key.end(); ++it) key[it.key()] = it.value();
      copy.key = std::move(key);
      cells_.push_back(std::move(copy));
    }
    summary_ += other.summary_;
  }

  /// Exact agreement on at least one certified cell and no failures.
  bool passed() const { return summary_.failed == 0 && summary_.passed > 0; }

  Json to_json() const {
    Json j;
    j["schema"] = 1;
    j["identity"] = identity_;
    j["parameters"] = parameters_;
    j["findings"] = findings_;
    Json cells = Json::array();
    for (const auto& c : cells_) {
      Json cj = Json::object();
      for (auto it = c.key.begin(); it != c.key.end(); ++it) cj[it.key()] = it.value();
      if (c.status == CellStatus::uncertified) {
        cj["pass"] = false;
        cj["status"] = "uncertified";
      } else {
        cj["lhs"] = c.lhs;
        cj["rhs"] = c.rhs;
        cj["pass"] = c.status == CellStatus::pass;
      }
      cells.push_back(std::move(cj));
    }
    j["cells"] = std::move(cells);
    j["summary"] = {{"total", summary_.total},
                    {"passed", summary_.passed},
                    {"failed", summary_.failed},
                    {"uncertified", summary_.uncertified},
                    {"pass", passed()}};
    return j;
  }

private:
  std::string identity_;
  Json parameters_ = Json::object();
  Json findings_ = Json::object();
  std::vector<ReportCell> cells_;
  ReportSummary summary_;
  bool keep_trivial_ = false;
};

}  // namespace zetavoa
