#include <exception>
#include <limits>

#include "kernels_detail.hpp"
#include "moebius_kit/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace moebius_kit::kernels {

namespace {

// Exceptions must not cross an OpenMP region; keep the one of lowest index.
class FirstError {
 public:
  void record(std::size_t index, std::exception_ptr e) {
#pragma omp critical(moebius_kit_first_error)
    {
      if (!error_ || index < index_) {
        error_ = e;
        index_ = index;
      }
    }
  }

  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::exception_ptr error_;
  std::size_t index_ = std::numeric_limits<std::size_t>::max();
};

using Index = long long;

}  // namespace

PhiTestResult phi_sweep_parallel(const SampledMap& f, const TetradSource& source,
                                 std::size_t count, const SpherePoint& alpha, double tol) {
  PhiTestResult total;
  total.alpha = alpha;
  total.requested = count;
  FirstError error;
  const auto n = static_cast<Index>(count);
#pragma omp parallel
  {
    PhiTestResult local;
#pragma omp for schedule(dynamic, 16)
    for (Index i = 0; i < n; ++i) {
      const auto idx = static_cast<std::size_t>(i);
      try {
        detail::accumulate(local, evaluate_tetrad(f, source(idx), alpha, tol, idx));
      } catch (...) {
        error.record(idx, std::current_exception());
      }
    }
#pragma omp critical(moebius_kit_phi_merge)
    detail::merge(total, std::move(local));
  }
  error.rethrow();
  total.pass = total.violations == 0;
  return total;
}

std::optional<std::pair<std::size_t, std::size_t>> find_collision_parallel(
    std::span<const SpherePoint> inputs, std::span<const SpherePoint> outputs, double tol) {
  const auto n = static_cast<Index>(inputs.size());
  Index best_i = n;
  std::size_t best_j = 0;
#pragma omp parallel for schedule(dynamic, 8)
  for (Index i = 0; i < n; ++i) {
    const auto a = static_cast<std::size_t>(i);
    for (std::size_t j = a + 1; j < inputs.size(); ++j) {
      if (chordal_distance(inputs[a], inputs[j]) > 10.0 * tol &&
          chordal_distance(outputs[a], outputs[j]) <= tol) {
#pragma omp critical(moebius_kit_collision)
        {
          if (i < best_i) {
            best_i = i;
            best_j = j;
          }
        }
        break;
      }
    }
  }
  if (best_i == n) return std::nullopt;
  return std::pair{static_cast<std::size_t>(best_i), best_j};
}

GapMax max_chordal_gap_parallel(std::span<const SpherePoint> a, std::span<const SpherePoint> b) {
  GapMax total;
  const auto n = static_cast<Index>(a.size());
#pragma omp parallel
  {
    GapMax local;
    bool seen = false;
#pragma omp for schedule(static)
    for (Index i = 0; i < n; ++i) {
      const auto idx = static_cast<std::size_t>(i);
      const double d = chordal_distance(a[idx], b[idx]);
      if (!seen || d > local.value) {
        local = {d, idx};
        seen = true;
      }
    }
#pragma omp critical(moebius_kit_gap_merge)
    {
      if (seen && (local.value > total.value ||
                   (local.value == total.value && local.index < total.index))) {
        total = local;
      }
    }
  }
  return total;
}

std::vector<SpherePoint> map_points(const SampledMap::Callable& f,
                                    std::span<const SpherePoint> inputs, Execution exec) {
  std::vector<SpherePoint> out(inputs.size());
  if (exec == Execution::serial) {
    for (std::size_t i = 0; i < inputs.size(); ++i) out[i] = f(inputs[i]);
    return out;
  }
  FirstError error;
  const auto n = static_cast<Index>(inputs.size());
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    try {
      out[idx] = f(inputs[idx]);
    } catch (...) {
      error.record(idx, std::current_exception());
    }
  }
  error.rethrow();
  return out;
}

}  // namespace moebius_kit::kernels
