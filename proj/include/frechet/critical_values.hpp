#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

namespace frechet {

/// Merge tolerance for candidate distance values: candidates closer than
/// this are floating-point duplicates of one critical configuration.
inline constexpr double kCriticalMergeTol = 1e-12;

/// Sorted, deduplicated set of candidate distance values.
class CriticalValueSet {
 public:
  CriticalValueSet() = default;

  /// Sorts, drops negatives/NaNs, merges values within kCriticalMergeTol.
  static CriticalValueSet from_raw(std::vector<double> raw) {
    std::erase_if(raw, [](double v) { return !(v >= 0.0); });
    std::sort(raw.begin(), raw.end());
    CriticalValueSet set;
    set.values_.reserve(raw.size());
    for (double v : raw) {
      if (set.values_.empty() || v - set.values_.back() > kCriticalMergeTol)
        set.values_.push_back(v);
    }
    return set;
  }

  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  double operator[](std::size_t i) const { return values_[i]; }

  bool contains(double v, double tol) const {
    auto it = std::lower_bound(values_.begin(), values_.end(), v - tol);
    return it != values_.end() && *it <= v + tol;
  }

 private:
  std::vector<double> values_;
};

}  // namespace frechet
