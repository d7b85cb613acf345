#include "qxp/protocol/qpt.hpp"

#include <Eigen/Eigenvalues>

#include "qxp/core/linalg.hpp"
#include "qxp/protocol/estimators.hpp"

namespace qxp {

QptResult randomized_qpt(const MeasurementDataset& d, bool project) {
  if (d.truncated) {
    throw UsageError("refusing to reconstruct from a truncated run");
  }
  if (d.draws.empty()) throw DegenerateDataError("run holds no draws");
  const TwoDesignSet& set = TwoDesignSet::of(d.design);
  const bool process = d.layout != DatasetLayout::state;
  const int bits = process ? 2 * d.n : d.n;
  const Eigen::Index dim = Eigen::Index{1} << bits;
  const double pref = static_cast<double>(std::uint64_t{1} << bits);

  Matrix acc = Matrix::Zero(dim, dim);
  for (std::size_t r = 0; r < d.draws.size(); ++r) {
    Eigen::VectorXd w = joint_frequency_vector(d, r);
    hamming_weight_transform(w);
    const Matrix u =
        process
            ? kron(draw_layer(set, d.draws[r].draw, Layer::preparation, false),
                   draw_layer(set, d.draws[r].draw, Layer::measurement))
            : draw_layer(set, d.draws[r].draw, Layer::measurement);
    acc += pref * (u.adjoint() * w.cast<Complex>().asDiagonal() * u);
  }
  acc /= static_cast<double>(d.draws.size());

  QptResult res;
  res.qubits = bits;
  res.estimate = acc;
  res.trace = acc.trace().real();
  res.hermiticity_residue = max_abs_diff(acc, Matrix(acc.adjoint()));
  const Matrix herm = 0.5 * (acc + acc.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(herm);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigensolver failed on the reconstruction");
  }
  res.min_eigenvalue = solver.eigenvalues().minCoeff();

  if (project) {
    RealVector clipped = solver.eigenvalues().cwiseMax(0.0);
    const double total = clipped.sum();
    if (total <= 0.0) {
      throw DegenerateDataError(
          "reconstruction has no positive weight to project onto");
    }
    clipped /= total;
    res.psd_estimate = solver.eigenvectors() *
                       clipped.cast<Complex>().asDiagonal() *
                       solver.eigenvectors().adjoint();
    res.projected = true;
  }
  return res;
}

}  // namespace qxp
