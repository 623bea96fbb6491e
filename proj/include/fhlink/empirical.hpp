// empirical.hpp - empirical CDFs and Kolmogorov-Smirnov distance.
#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace fhlink {

// Right-continuous empirical distribution function of a sample.
// F(x) = (# samples <= x) / n.
class EmpiricalCdf {
 public:
  explicit EmpiricalCdf(std::vector<double> samples) : sorted_(std::move(samples)) {
    if (sorted_.empty())
      throw std::invalid_argument("EmpiricalCdf: sample set must be non-empty");
    std::sort(sorted_.begin(), sorted_.end());
  }

  double operator()(double x) const {
    auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
    return static_cast<double>(it - sorted_.begin()) /
           static_cast<double>(sorted_.size());
  }

  std::size_t size() const { return sorted_.size(); }
  const std::vector<double>& sorted() const { return sorted_; }

 private:
  std::vector<double> sorted_;
};

inline EmpiricalCdf empirical_cdf(std::vector<double> samples) {
  return EmpiricalCdf(std::move(samples));
}

// One-sample KS statistic: sup_x |F_n(x) - F(x)| against a reference CDF.
// Evaluates both one-sided gaps at every sample point.
inline double ks_distance(const std::vector<double>& samples,
                          const std::function<double(double)>& reference_cdf) {
  if (samples.empty())
    throw std::invalid_argument("ks_distance: sample set must be non-empty");
  std::vector<double> s(samples);
  std::sort(s.begin(), s.end());
  const double n = static_cast<double>(s.size());
  double d = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    double f = reference_cdf(s[i]);
    double hi = (static_cast<double>(i) + 1.0) / n - f;  // F_n jumps to (i+1)/n at s[i]
    double lo = f - static_cast<double>(i) / n;          // left limit is i/n
    d = std::max(d, std::max(hi, lo));
  }
  return d;
}

}  // namespace fhlink
