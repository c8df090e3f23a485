#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <vector>

namespace dagsched {

// Absolute tolerance for all capacity/fit comparisons.
inline constexpr double kCapacityTol = 1e-9;

/// Fixed-dimension nonnegative resource quantities, normalized so that one
/// machine's capacity is 1.0 per dimension by default.
class ResourceVector {
 public:
  ResourceVector() = default;
  explicit ResourceVector(std::size_t dims, double fill = 0.0) : v_(dims, fill) {}
  ResourceVector(std::initializer_list<double> init) : v_(init) {}
  explicit ResourceVector(std::vector<double> values) : v_(std::move(values)) {}

  std::size_t dims() const { return v_.size(); }
  double operator[](std::size_t i) const { return v_[i]; }
  double& operator[](std::size_t i) { return v_[i]; }
  const std::vector<double>& values() const { return v_; }

  bool fits_within(const ResourceVector& cap, double tol = kCapacityTol) const {
    assert(dims() == cap.dims());
    for (std::size_t i = 0; i < v_.size(); ++i)
      if (v_[i] > cap.v_[i] + tol) return false;
    return true;
  }

  double dot(const ResourceVector& o) const {
    assert(dims() == o.dims());
    double s = 0.0;
    for (std::size_t i = 0; i < v_.size(); ++i) s += v_[i] * o.v_[i];
    return s;
  }

  double l1() const { return std::accumulate(v_.begin(), v_.end(), 0.0); }
  double max_entry() const {
    return v_.empty() ? 0.0 : *std::max_element(v_.begin(), v_.end());
  }

  ResourceVector& operator+=(const ResourceVector& o) {
    assert(dims() == o.dims());
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
    return *this;
  }
  ResourceVector& operator-=(const ResourceVector& o) {
    assert(dims() == o.dims());
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
    return *this;
  }
  friend ResourceVector operator+(ResourceVector a, const ResourceVector& b) {
    a += b;
    return a;
  }
  friend ResourceVector operator-(ResourceVector a, const ResourceVector& b) {
    a -= b;
    return a;
  }
  friend bool operator==(const ResourceVector& a, const ResourceVector& b) {
    return a.v_ == b.v_;
  }

  ResourceVector scaled(double k) const {
    ResourceVector r = *this;
    for (double& x : r.v_) x *= k;
    return r;
  }

  /// Clamp every entry at zero from below.
  ResourceVector clamped_nonneg() const {
    ResourceVector r = *this;
    for (double& x : r.v_) x = std::max(0.0, x);
    return r;
  }

 private:
  std::vector<double> v_;
};

}  // namespace dagsched
