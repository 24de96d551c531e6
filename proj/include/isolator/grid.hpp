#ifndef ISOLATOR_GRID_HPP
#define ISOLATOR_GRID_HPP

#include <cmath>
#include <cstddef>
#include <exception>
#include <stdexcept>
#include <string>
#include <vector>

#include <omp.h>

namespace isolator::grid {

enum class Scale { Linear, Log };

struct GridSpec {
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 0;
  Scale scale = Scale::Linear;
};

std::vector<double> make_grid(const GridSpec& spec);

// Raised out of a parallel map with the index of the failing grid point, so
// callers can report which point broke.
class GridPointError : public std::runtime_error {
 public:
  GridPointError(std::size_t index, const std::string& what)
      : std::runtime_error("grid point " + std::to_string(index) + ": " + what),
        index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

// Serial reference kernel. Kept deliberately plain; the parallel kernel must
// produce bit-identical results against this one.
template <class T, class Fn>
std::vector<T> map_serial(std::size_t n, Fn&& fn) {
  std::vector<T> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    try {
      out[i] = fn(i);
    } catch (const std::exception& e) {
      throw GridPointError(i, e.what());
    }
  }
  return out;
}

// OpenMP kernel over independent grid points. Each result is written to its
// own slot, so output order never depends on the schedule. The first failing
// point (lowest index) is rethrown after the region joins.
template <class T, class Fn>
std::vector<T> map_parallel(std::size_t n, int threads, Fn&& fn) {
  if (threads <= 1) return map_serial<T>(n, fn);
  std::vector<T> out(n);
  std::exception_ptr error;
  std::size_t error_index = n;

#pragma omp parallel for schedule(static) num_threads(threads)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    const std::size_t idx = static_cast<std::size_t>(i);
    try {
      out[idx] = fn(idx);
    } catch (...) {
#pragma omp critical(isolator_grid_error)
      {
        if (idx < error_index) {
          error_index = idx;
          error = std::current_exception();
        }
      }
    }
  }

  if (error) {
    try {
      std::rethrow_exception(error);
    } catch (const std::exception& e) {
      throw GridPointError(error_index, e.what());
    }
  }
  return out;
}

}  // namespace isolator::grid

#endif  // ISOLATOR_GRID_HPP
