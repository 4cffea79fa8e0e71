#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace isopair {

/// Outcome of one verified identity: worst residual plus the basis tuple that attains it.
struct CheckResult {
  std::string name;
  bool pass = true;
  double max_residual = 0.0;
  std::vector<int> witness;
};

/// Collection of identity checks for one verification run.
struct AxiomReport {
  std::string subject;
  bool exact_backend = false;
  double tolerance = 0.0;
  std::vector<CheckResult> checks;

  bool pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
  }

  double max_residual() const {
    double m = 0.0;
    for (const auto& c : checks) m = std::max(m, c.max_residual);
    return m;
  }

  const CheckResult* worst() const {
    const CheckResult* w = nullptr;
    for (const auto& c : checks)
      if (!w || c.max_residual > w->max_residual) w = &c;
    return w;
  }

  void merge(const AxiomReport& other, const std::string& prefix = "") {
    for (auto c : other.checks) {
      if (!prefix.empty()) c.name = prefix + "/" + c.name;
      checks.push_back(std::move(c));
    }
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["subject"] = subject;
    j["backend"] = exact_backend ? "rational" : "double";
    j["tolerance"] = tolerance;
    j["pass"] = pass();
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
      nlohmann::ordered_json e;
      e["name"] = c.name;
      e["pass"] = c.pass;
      e["max_residual"] = c.max_residual;
      e["witness"] = c.witness;
      arr.push_back(std::move(e));
    }
    j["checks"] = std::move(arr);
    return j;
  }

  std::string summary() const {
    std::ostringstream os;
    os << subject << ": " << (pass() ? "PASS" : "FAIL") << " (" << checks.size() << " checks";
    if (const CheckResult* w = worst(); w && w->max_residual > 0.0) {
      os << ", worst " << w->name << " residual " << w->max_residual << " at [";
      for (std::size_t i = 0; i < w->witness.size(); ++i) os << (i ? "," : "") << w->witness[i];
      os << "]";
    }
    os << ")";
    return os.str();
  }
};

/// Helper accumulating the worst witness for a named identity.
class CheckAccumulator {
 public:
  explicit CheckAccumulator(std::string name, bool exact, double tol)
      : exact_(exact), tol_(tol) {
    result_.name = std::move(name);
  }

  void record(double residual_abs, std::initializer_list<int> witness) {
    if (residual_abs > result_.max_residual) {
      result_.max_residual = residual_abs;
      result_.witness.assign(witness);
    }
    if (exact_ ? residual_abs != 0.0 : residual_abs > tol_) result_.pass = false;
  }

  const CheckResult& result() const { return result_; }

 private:
  bool exact_;
  double tol_;
  CheckResult result_;
};

}  // namespace isopair
