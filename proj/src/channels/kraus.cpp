#include "qxp/channels/kraus.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "qxp/core/gates.hpp"
#include "qxp/core/linalg.hpp"

namespace qxp {

KrausChannel::KrausChannel(int n_, std::vector<Matrix> kraus_)
    : n(n_), kraus(std::move(kraus_)) {
  const auto d = dim_for_qubits(n);
  if (kraus.empty()) throw UsageError("channel needs at least one Kraus op");
  Matrix sum = Matrix::Zero(d, d);
  for (const Matrix& k : kraus) {
    if (k.rows() != d || k.cols() != d) {
      throw UsageError("Kraus operator shape does not match 2^" +
                       std::to_string(n));
    }
    sum += k.adjoint() * k;
  }
  if (max_abs_diff(sum, Matrix::Identity(d, d)) >
      Tolerances::kraus_completeness) {
    throw NumericalError("Kraus completeness sum differs from identity");
  }
}

bool KrausChannel::is_unitary() const {
  return kraus.size() == 1 && qxp::is_unitary(kraus.front());
}

KrausChannel identity_channel(int n) {
  return KrausChannel(n, {identity_gate(n)});
}

KrausChannel unitary_channel(const Matrix& u) {
  require_unitary(u, "unitary_channel input");
  int n = 0;
  for (Eigen::Index d = u.rows(); d > 1; d >>= 1) ++n;
  if (u.rows() != (Eigen::Index{1} << n)) {
    throw UsageError("unitary dimension is not a power of two");
  }
  return KrausChannel(n, {u});
}

DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& rho) {
  if (ch.n != rho.n) throw UsageError("apply_channel: qubit count mismatch");
  Matrix out = Matrix::Zero(rho.mat.rows(), rho.mat.cols());
  for (const Matrix& k : ch.kraus) out += k * rho.mat * k.adjoint();
  return DensityMatrix(rho.n, std::move(out));
}

KrausChannel compose(const KrausChannel& a, const KrausChannel& b) {
  if (a.n != b.n) throw UsageError("compose: qubit count mismatch");
  std::vector<Matrix> ops;
  ops.reserve(a.kraus.size() * b.kraus.size());
  for (const Matrix& kb : b.kraus) {
    for (const Matrix& ka : a.kraus) ops.push_back(kb * ka);
  }
  return KrausChannel(a.n, std::move(ops));
}

KrausChannel mix(const KrausChannel& a, const KrausChannel& b, double w) {
  if (a.n != b.n) throw UsageError("mix: qubit count mismatch");
  if (!(w >= 0.0 && w <= 1.0)) {
    throw UsageError("mix: weight must lie in [0, 1]");
  }
  std::vector<Matrix> ops;
  ops.reserve(a.kraus.size() + b.kraus.size());
  const double wa = std::sqrt(1.0 - w), wb = std::sqrt(w);
  for (const Matrix& k : a.kraus) {
    if (wa > 0.0) ops.push_back(wa * k);
  }
  for (const Matrix& k : b.kraus) {
    if (wb > 0.0) ops.push_back(wb * k);
  }
  return KrausChannel(a.n, std::move(ops));
}

}  // namespace qxp
