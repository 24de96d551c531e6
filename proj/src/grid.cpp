#include "isolator/grid.hpp"

namespace isolator::grid {

std::vector<double> make_grid(const GridSpec& spec) {
  if (spec.count == 0) throw std::invalid_argument("grid: count must be >= 1");
  if (!std::isfinite(spec.min) || !std::isfinite(spec.max) || spec.min > spec.max) {
    throw std::invalid_argument("grid: need finite min <= max");
  }
  if (spec.scale == Scale::Log && spec.min <= 0.0) {
    throw std::invalid_argument("grid: log scale needs min > 0");
  }

  std::vector<double> g(spec.count);
  if (spec.count == 1) {
    g[0] = spec.min;
    return g;
  }
  const double n1 = static_cast<double>(spec.count - 1);
  if (spec.scale == Scale::Linear) {
    for (std::size_t i = 0; i < spec.count; ++i) {
      g[i] = spec.min + (spec.max - spec.min) * static_cast<double>(i) / n1;
    }
  } else {
    const double log_min = std::log(spec.min);
    const double log_max = std::log(spec.max);
    for (std::size_t i = 0; i < spec.count; ++i) {
      g[i] = std::exp(log_min + (log_max - log_min) * static_cast<double>(i) / n1);
    }
  }
  // pin the endpoints so sweep boundaries are exact
  g.front() = spec.min;
  g.back() = spec.max;
  return g;
}

}  // namespace isolator::grid
