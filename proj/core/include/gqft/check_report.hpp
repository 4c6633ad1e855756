#pragma once

#include <algorithm>
#include <string>
#include <vector>

namespace gqft {

struct Residual {
  std::string label;
  double value = 0.0;
};

/// Residual list with a pass/fail verdict against one tolerance.
struct CheckReport {
  std::vector<Residual> residuals;
  double tolerance = 0.0;
  bool passed = true;

  double max() const {
    double m = 0.0;
    for (const auto& r : residuals) m = std::max(m, r.value);
    return m;
  }

  void add(std::string label, double value) { residuals.push_back({std::move(label), value}); }

  /// Sets `passed` from max() < tolerance.
  CheckReport& finalize_below() {
    passed = max() < tolerance;
    return *this;
  }
};

}  // namespace gqft
