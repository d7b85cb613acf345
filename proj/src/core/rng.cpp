#include "qxp/core/rng.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace qxp {

std::uint64_t mix64(std::uint64_t x) {
  // SplitMix64 finalizer (Steele, Lea, Flood 2014).
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master,
                          std::initializer_list<std::uint64_t> tags) {
  std::uint64_t x = mix64(master);
  for (std::uint64_t t : tags) x = mix64(x ^ t);
  return x;
}

std::uint64_t hash_label(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t Rng::uniform_below(std::uint64_t bound) {
  if (bound == 0) throw UsageError("uniform_below: bound must be positive");
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x;
  do {
    x = eng_();
  } while (x >= limit);
  return x % bound;
}

Eigen::VectorXd sample_outcomes(const RealVector& probs, std::int64_t shots,
                                Rng& rng) {
  if (shots < 1) throw UsageError("sample_outcomes: shots must be >= 1");
  const Eigen::Index m = probs.size();
  if (m == 0) throw UsageError("sample_outcomes: empty distribution");
  std::vector<double> cdf(static_cast<std::size_t>(m));
  double acc = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (probs(i) < 0.0) throw UsageError("sample_outcomes: negative weight");
    acc += probs(i);
    cdf[static_cast<std::size_t>(i)] = acc;
  }
  if (std::abs(acc - 1.0) > Tolerances::probability) {
    throw NumericalError("sample_outcomes: distribution is not normalized");
  }
  cdf.back() = 1.0;  // guard the top edge against rounding
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(m);
  for (std::int64_t s = 0; s < shots; ++s) {
    const double u = rng.uniform();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const auto idx =
        std::min<std::ptrdiff_t>(it - cdf.begin(), m - 1);
    counts(idx) += 1.0;
  }
  return counts;
}

}  // namespace qxp
