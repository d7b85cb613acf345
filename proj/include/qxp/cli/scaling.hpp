#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qxp/channels/kraus.hpp"

namespace qxp {

// Ordinary least squares y = slope * x + intercept.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// Self-comparison error of the protocol on one channel: two runs of the
// same physics under labels "a" and "b" share draws but see independent
// shot noise, so the max-fidelity estimate should be 1. Returns the mean
// |estimate - 1| over `repetitions` independently seeded repetitions.
double mean_self_error(const KrausChannel& channel, int draws,
                       std::int64_t shots, int repetitions,
                       std::uint64_t seed);

// --- Measurement-budget study -------------------------------------------
//
// Sweeps the total budget 2^n * draws * shots and fits the log-log line of
// mean self-comparison error against budget; the expected slope is -1.

struct BudgetPoint {
  int draws = 0;
  std::int64_t shots = 0;
  double budget = 0.0;  // 2^n * draws * shots
  double mean_abs_error = 0.0;
};

struct BudgetStudy {
  std::vector<BudgetPoint> points;
  LineFit loglog;  // log10(error) vs log10(budget)
};

// Doubles the shot count per point starting from base_shots at fixed draws.
std::vector<std::pair<int, std::int64_t>> default_budget_grid(
    int points, int base_draws, std::int64_t base_shots);

BudgetStudy run_budget_study(
    const KrausChannel& channel,
    const std::vector<std::pair<int, std::int64_t>>& grid, int repetitions,
    std::uint64_t seed);

std::string budget_csv(const BudgetStudy& study);

// --- Qubit-count study ---------------------------------------------------
//
// For each register size, bisection-searches the minimal total shot budget
// 2^n * shots whose mean self-comparison error meets the target, then fits
// the exponent b in (2^n * shots) ~ 2^(b*n) over the uncensored points.

struct QubitPoint {
  int n = 0;
  std::int64_t shots = 0;     // per circuit, at the budget found
  double total = 0.0;         // 2^n * shots
  double achieved_error = 0.0;
  bool censored = false;  // target unmet at the shot ceiling
};

struct QubitStudy {
  std::vector<QubitPoint> points;
  LineFit fit;  // log2(total) vs n; slope is the exponent b
};

QubitStudy run_qubit_study(const std::function<KrausChannel(int)>& process,
                           int n_min, int n_max, int draws, double target,
                           int repetitions, std::int64_t shot_ceiling,
                           std::uint64_t seed);

std::string qubit_csv(const QubitStudy& study);

}  // namespace qxp
