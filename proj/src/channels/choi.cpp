#include "qxp/channels/choi.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "qxp/core/gates.hpp"
#include "qxp/core/linalg.hpp"

namespace qxp {

ChoiMatrix::ChoiMatrix(int n_, DensityMatrix state_)
    : n(n_), state(std::move(state_)) {
  dim_for_qubits(n, "process qubit count");
  if (state.n != 2 * n) {
    throw UsageError("Choi state must live on twice the process qubits");
  }
}

ChoiMatrix choi_of_channel(const KrausChannel& ch) {
  const StateVector me = maximally_entangled_state(ch.n);
  const auto d = std::ptrdiff_t{1} << ch.n;
  Matrix out = Matrix::Zero(d * d, d * d);
  for (const Matrix& k : ch.kraus) {
    // (I ⊗ K)|me⟩: block structure avoids forming the 4^n x 4^n kron.
    Vector v(d * d);
    for (std::ptrdiff_t i = 0; i < d; ++i) {
      v.segment(i * d, d) = k * me.amps.segment(i * d, d);
    }
    out += v * v.adjoint();
  }
  return ChoiMatrix(ch.n, DensityMatrix(2 * ch.n, std::move(out)));
}

DensityMatrix choi_ancilla_marginal(const ChoiMatrix& choi) {
  return partial_trace(choi.state, choi.n, Keep::first);
}

double choi_purity(const ChoiMatrix& choi) { return purity(choi.state); }

double exact_overlap(const ChoiMatrix& a, const ChoiMatrix& b) {
  if (a.n != b.n) throw UsageError("exact_overlap: qubit count mismatch");
  const Complex t = trace_product(a.state.mat, b.state.mat);
  if (std::abs(t.imag()) > Tolerances::probability) {
    throw NumericalError("exact_overlap: non-real trace product");
  }
  return t.real();
}

namespace {

FidelityEstimate ratio_estimate(double overlap, double pa, double pb) {
  const double denom = std::max(pa, pb);
  if (denom < Tolerances::unitarity) {
    throw DegenerateDataError("max purity is numerically zero");
  }
  FidelityEstimate est;
  est.overlap = overlap;
  est.purity_i = pa;
  est.purity_j = pb;
  est.f_max = overlap / denom;
  return est;
}

}  // namespace

FidelityEstimate exact_max_fidelity(const ChoiMatrix& a, const ChoiMatrix& b) {
  return ratio_estimate(exact_overlap(a, b), choi_purity(a), choi_purity(b));
}

FidelityEstimate exact_max_state_fidelity(const DensityMatrix& a,
                                          const DensityMatrix& b) {
  if (a.n != b.n) {
    throw UsageError("exact_max_state_fidelity: qubit count mismatch");
  }
  const Complex t = trace_product(a.mat, b.mat);
  if (std::abs(t.imag()) > Tolerances::probability) {
    throw NumericalError("exact_max_state_fidelity: non-real trace product");
  }
  return ratio_estimate(t.real(), purity(a), purity(b));
}

}  // namespace qxp
