#include "qxp/cli/scaling.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "qxp/core/rng.hpp"
#include "qxp/protocol/estimators.hpp"
#include "qxp/protocol/execution.hpp"

namespace qxp {

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) {
    throw UsageError("line fit needs equally many x and y values");
  }
  if (x.size() < 2) {
    throw UsageError("line fit needs at least two points");
  }
  const auto m = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = m * sxx - sx * sx;
  if (std::abs(denom) < 1e-12) {
    throw DegenerateDataError("line fit over identical x values");
  }
  LineFit fit;
  fit.slope = (m * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / m;
  return fit;
}

double mean_self_error(const KrausChannel& channel, int draws,
                       std::int64_t shots, int repetitions,
                       std::uint64_t seed) {
  if (repetitions < 1) throw UsageError("repetitions must be at least 1");
  double total = 0.0;
  for (int r = 0; r < repetitions; ++r) {
    RunPlan plan;
    plan.draws = draws;
    plan.shots = shots;
    plan.seed = derive_seed(seed, {hash_label("self-error"),
                                   static_cast<std::uint64_t>(r)});
    plan.timestamp = "self";
    plan.platform = "a";
    const MeasurementDataset da = collect_process_dataset(channel, plan);
    plan.platform = "b";
    const MeasurementDataset db = collect_process_dataset(channel, plan);
    total += std::abs(estimate_max_process_fidelity(da, db).f_max - 1.0);
  }
  return total / repetitions;
}

std::vector<std::pair<int, std::int64_t>> default_budget_grid(
    int points, int base_draws, std::int64_t base_shots) {
  if (points < 2) throw UsageError("a budget sweep needs at least 2 points");
  if (base_draws < 1 || base_shots < 1) {
    throw UsageError("budget grid needs positive draws and shots");
  }
  // Double the per-circuit repetitions at a fixed number of random circuits:
  // the self-comparison error is dominated by per-histogram sampling noise,
  // so this axis traces the ~1/budget reference line. Eight points span a
  // bit over two decades of budget.
  std::vector<std::pair<int, std::int64_t>> grid;
  std::int64_t shots = base_shots;
  for (int p = 0; p < points; ++p) {
    grid.emplace_back(base_draws, shots);
    shots *= 2;
  }
  return grid;
}

BudgetStudy run_budget_study(
    const KrausChannel& channel,
    const std::vector<std::pair<int, std::int64_t>>& grid, int repetitions,
    std::uint64_t seed) {
  if (grid.size() < 2) throw UsageError("a budget sweep needs ≥ 2 points");
  BudgetStudy study;
  std::vector<double> lx, ly;
  const double dim = static_cast<double>(std::int64_t{1} << channel.n);
  for (std::size_t p = 0; p < grid.size(); ++p) {
    BudgetPoint point;
    point.draws = grid[p].first;
    point.shots = grid[p].second;
    point.budget = dim * point.draws * static_cast<double>(point.shots);
    point.mean_abs_error = mean_self_error(
        channel, point.draws, point.shots, repetitions,
        derive_seed(seed, {hash_label("budget"), p}));
    if (point.mean_abs_error <= 0.0) {
      throw DegenerateDataError(
          "budget point has zero error; log-log fit is undefined");
    }
    lx.push_back(std::log10(point.budget));
    ly.push_back(std::log10(point.mean_abs_error));
    study.points.push_back(point);
  }
  study.loglog = fit_line(lx, ly);
  return study;
}

std::string budget_csv(const BudgetStudy& study) {
  std::ostringstream out;
  out << "draws,shots,budget,mean_abs_error\n";
  char buf[128];
  for (const BudgetPoint& p : study.points) {
    std::snprintf(buf, sizeof(buf), "%d,%lld,%.17g,%.17g\n", p.draws,
                  static_cast<long long>(p.shots), p.budget,
                  p.mean_abs_error);
    out << buf;
  }
  std::snprintf(buf, sizeof(buf), "# loglog_slope,%.17g\n",
                study.loglog.slope);
  out << buf;
  std::snprintf(buf, sizeof(buf), "# loglog_intercept,%.17g\n",
                study.loglog.intercept);
  out << buf;
  return out.str();
}

namespace {

// Smallest shots value in [2, ceiling] whose mean self-error meets the
// target, or the ceiling marked censored. The error is deterministic given
// (n, seed) and decreases with shots on average, so integer bisection
// converges to a well-defined point.
QubitPoint bisect_shots(const KrausChannel& channel, int draws, double target,
                        int repetitions, std::int64_t ceiling,
                        std::uint64_t seed) {
  QubitPoint point;
  point.n = channel.n;
  const auto error_at = [&](std::int64_t shots) {
    return mean_self_error(channel, draws, shots, repetitions, seed);
  };
  double err_hi = error_at(ceiling);
  if (err_hi > target) {
    point.shots = ceiling;
    point.total = std::ldexp(static_cast<double>(ceiling), channel.n);
    point.achieved_error = err_hi;
    point.censored = true;
    return point;
  }
  std::int64_t lo = 2, hi = ceiling;
  double err_lo_best = err_hi;
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    const double err = error_at(mid);
    if (err <= target) {
      hi = mid;
      err_lo_best = err;
    } else {
      lo = mid + 1;
    }
  }
  point.shots = hi;
  point.total = std::ldexp(static_cast<double>(hi), channel.n);
  point.achieved_error = hi == ceiling ? err_hi : err_lo_best;
  return point;
}

}  // namespace

QubitStudy run_qubit_study(const std::function<KrausChannel(int)>& process,
                           int n_min, int n_max, int draws, double target,
                           int repetitions, std::int64_t shot_ceiling,
                           std::uint64_t seed) {
  if (n_min < 1 || n_max < n_min) {
    throw UsageError("qubit study needs 1 <= n_min <= n_max");
  }
  if (target <= 0.0) throw UsageError("error target must be positive");
  if (shot_ceiling < 2) throw UsageError("shot ceiling must be at least 2");
  QubitStudy study;
  std::vector<double> xs, ys;
  for (int n = n_min; n <= n_max; ++n) {
    const KrausChannel channel = process(n);
    if (channel.n != n) {
      throw UsageError("process family returned a channel of the wrong size");
    }
    const QubitPoint point = bisect_shots(
        channel, draws, target, repetitions, shot_ceiling,
        derive_seed(seed, {hash_label("qubits"),
                           static_cast<std::uint64_t>(n)}));
    if (!point.censored) {
      xs.push_back(static_cast<double>(n));
      ys.push_back(std::log2(point.total));
    }
    study.points.push_back(point);
  }
  if (xs.size() >= 2) study.fit = fit_line(xs, ys);
  return study;
}

std::string qubit_csv(const QubitStudy& study) {
  std::ostringstream out;
  out << "n,shots,total,achieved_error,censored\n";
  char buf[160];
  for (const QubitPoint& p : study.points) {
    std::snprintf(buf, sizeof(buf), "%d,%lld,%.17g,%.17g,%d\n", p.n,
                  static_cast<long long>(p.shots), p.total, p.achieved_error,
                  p.censored ? 1 : 0);
    out << buf;
  }
  std::snprintf(buf, sizeof(buf), "# exponent_b,%.17g\n", study.fit.slope);
  out << buf;
  std::snprintf(buf, sizeof(buf), "# offset,%.17g\n", study.fit.intercept);
  out << buf;
  return out.str();
}

}  // namespace qxp
