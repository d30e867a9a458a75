#pragma once

#include <cmath>
#include <cstdint>

namespace amoeba {

struct EstimatorResult {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::int64_t n_samples = 0;
  double ci_lo = 0.0;  // 95% Wilson interval for proportions
  double ci_hi = 0.0;
};

inline EstimatorResult wilson_estimate(std::int64_t hits, std::int64_t n, double z = 1.959964) {
  EstimatorResult r;
  r.n_samples = n;
  if (n <= 0) return r;
  const double p = static_cast<double>(hits) / static_cast<double>(n);
  r.mean = p;
  r.stderr_ = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
  const double z2n = z * z / static_cast<double>(n);
  const double center = (p + z2n / 2.0) / (1.0 + z2n);
  const double half =
      z * std::sqrt(p * (1.0 - p) / static_cast<double>(n) + z2n / (4.0 * static_cast<double>(n))) /
      (1.0 + z2n);
  r.ci_lo = center - half;
  r.ci_hi = center + half;
  return r;
}

enum class MeasureKind { Area, Multiarea, PointwiseP };

struct AmoebaMeasureEstimate {
  MeasureKind kind = MeasureKind::Area;
  double value = 0.0;
  double stderr_ = 0.0;
  std::int64_t n_samples = 0;
  double tail_bound = 0.0;
  std::int64_t n_flagged = 0;  // tangency-flagged samples, excluded from the estimate
  double ci_lo = 0.0;
  double ci_hi = 0.0;
};

}  // namespace amoeba
