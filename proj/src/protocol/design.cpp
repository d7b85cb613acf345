#include "qxp/protocol/design.hpp"

#include <cmath>
#include <deque>

#include "qxp/core/gates.hpp"
#include "qxp/core/linalg.hpp"

namespace qxp {

std::string design_kind_name(DesignKind kind) {
  switch (kind) {
    case DesignKind::clifford24: return "clifford24";
    case DesignKind::pauli_bases: return "pauli";
    case DesignKind::haar: return "haar";
  }
  throw UsageError("unknown design kind");
}

DesignKind design_kind_from_name(const std::string& name) {
  if (name == "clifford24") return DesignKind::clifford24;
  if (name == "pauli" || name == "pauli-bases") return DesignKind::pauli_bases;
  if (name == "haar") return DesignKind::haar;
  throw UsageError("unknown design kind \"" + name +
                   "\" (expected clifford24, pauli, or haar)");
}

namespace {

// Divides out the global phase: first nonzero entry in row-major order made
// real positive. Clifford entries have magnitude 0, 1/sqrt2, or 1, so the
// 0.1 threshold cleanly separates zero from nonzero.
Matrix phase_canonical(const Matrix& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const Complex z = m(r, c);
      if (std::abs(z) > 0.1) return m * (std::conj(z) / std::abs(z));
    }
  }
  throw NumericalError("phase_canonical: zero matrix");
}

int find_element(const std::vector<Matrix>& elems, const Matrix& canonical,
                 double tol = 1e-9) {
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (max_abs_diff(elems[i], canonical) < tol) return static_cast<int>(i);
  }
  return -1;
}

std::vector<Matrix> generate_clifford24() {
  std::vector<Matrix> elems;
  std::deque<Matrix> queue;
  elems.push_back(phase_canonical(identity_gate(1)));
  queue.push_back(elems.front());
  const Matrix gens[] = {hadamard(), s_gate()};
  while (!queue.empty()) {
    const Matrix cur = queue.front();
    queue.pop_front();
    for (const Matrix& g : gens) {
      const Matrix next = phase_canonical(g * cur);
      if (find_element(elems, next) < 0) {
        elems.push_back(next);
        queue.push_back(next);
      }
    }
  }
  if (elems.size() != 24) {
    throw NumericalError("clifford set closure produced " +
                         std::to_string(elems.size()) + " elements");
  }
  return elems;
}

Matrix haar_single_qubit(Rng& rng) {
  // Ginibre matrix, orthonormalized with positive-diagonal R (Gram-Schmidt),
  // which makes Q Haar distributed.
  auto gauss_pair = [&rng]() {
    const double u1 = 1.0 - rng.uniform();  // (0, 1]: keeps log finite
    const double u2 = rng.uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return Complex(r * std::cos(2.0 * M_PI * u2),
                   r * std::sin(2.0 * M_PI * u2));
  };
  Vector a(2), b(2);
  a << gauss_pair(), gauss_pair();
  b << gauss_pair(), gauss_pair();
  a /= a.norm();
  b -= a * a.dot(b);
  b /= b.norm();
  Matrix u(2, 2);
  u.col(0) = a;
  u.col(1) = b;
  return u;
}

}  // namespace

TwoDesignSet::TwoDesignSet(DesignKind kind) : kind_(kind) {
  if (kind == DesignKind::clifford24) {
    elements_ = generate_clifford24();
  } else if (kind == DesignKind::pauli_bases) {
    // Basis-change unitaries: measure Z, X, Y respectively.
    elements_.push_back(identity_gate(1));
    elements_.push_back(hadamard());
    elements_.push_back(Matrix(hadamard() * s_gate().adjoint()));
  }
  for (const Matrix& e : elements_) {
    require_unitary(e, "design element");
  }
  if (kind_ == DesignKind::clifford24) {
    transpose_.reserve(elements_.size());
    for (const Matrix& e : elements_) {
      const int idx = find_element(elements_, phase_canonical(e.transpose()));
      if (idx < 0) {
        throw NumericalError("clifford set is not transpose closed");
      }
      transpose_.push_back(idx);
    }
  }
}

const TwoDesignSet& TwoDesignSet::of(DesignKind kind) {
  static const TwoDesignSet clifford(DesignKind::clifford24);
  static const TwoDesignSet pauli(DesignKind::pauli_bases);
  static const TwoDesignSet haar(DesignKind::haar);
  switch (kind) {
    case DesignKind::clifford24: return clifford;
    case DesignKind::pauli_bases: return pauli;
    case DesignKind::haar: return haar;
  }
  throw UsageError("unknown design kind");
}

const Matrix& TwoDesignSet::element(int index) const {
  if (index < 0 || index >= size()) {
    throw UsageError("design element index " + std::to_string(index) +
                     " out of range for " + design_kind_name(kind_));
  }
  return elements_[static_cast<std::size_t>(index)];
}

int TwoDesignSet::transpose_index(int index) const {
  if (kind_ != DesignKind::clifford24) {
    throw UsageError("transpose table exists only for clifford24");
  }
  element(index);  // range check
  return transpose_[static_cast<std::size_t>(index)];
}

bool draws_equal(const UnitaryDraw& a, const UnitaryDraw& b) {
  if (a.u1 != b.u1 || a.u2 != b.u2) return false;
  if (a.u1_mats.size() != b.u1_mats.size() ||
      a.u2_mats.size() != b.u2_mats.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.u1_mats.size(); ++i) {
    if (max_abs_diff(a.u1_mats[i], b.u1_mats[i]) != 0.0) return false;
  }
  for (std::size_t i = 0; i < a.u2_mats.size(); ++i) {
    if (max_abs_diff(a.u2_mats[i], b.u2_mats[i]) != 0.0) return false;
  }
  return true;
}

UnitaryDraw sample_draw(const TwoDesignSet& set, int n, Rng& rng) {
  dim_for_qubits(n);
  UnitaryDraw draw;
  if (set.kind() == DesignKind::haar) {
    for (int q = 0; q < n; ++q) draw.u1_mats.push_back(haar_single_qubit(rng));
    for (int q = 0; q < n; ++q) draw.u2_mats.push_back(haar_single_qubit(rng));
    return draw;
  }
  const auto bound = static_cast<std::uint64_t>(set.size());
  for (int q = 0; q < n; ++q) {
    draw.u1.push_back(static_cast<int>(rng.uniform_below(bound)));
  }
  for (int q = 0; q < n; ++q) {
    draw.u2.push_back(static_cast<int>(rng.uniform_below(bound)));
  }
  return draw;
}

Matrix draw_factor(const TwoDesignSet& set, const UnitaryDraw& draw,
                   Layer layer, int qubit, bool transposed) {
  const int n = draw.qubits();
  if (qubit < 0 || qubit >= n) throw UsageError("draw_factor: qubit index");
  if (transposed && layer != Layer::preparation) {
    throw UsageError("only the preparation layer is executed transposed");
  }
  if (draw.has_explicit_factors()) {
    const Matrix& m = (layer == Layer::preparation)
                          ? draw.u1_mats[static_cast<std::size_t>(qubit)]
                          : draw.u2_mats[static_cast<std::size_t>(qubit)];
    return transposed ? Matrix(m.transpose()) : m;
  }
  const std::vector<int>& idx = (layer == Layer::preparation) ? draw.u1 : draw.u2;
  int element = idx[static_cast<std::size_t>(qubit)];
  if (transposed) {
    if (set.kind() == DesignKind::clifford24) {
      return set.element(set.transpose_index(element));
    }
    return set.element(element).transpose();
  }
  return set.element(element);
}

Matrix draw_layer(const TwoDesignSet& set, const UnitaryDraw& draw,
                  Layer layer, bool transposed) {
  const int n = draw.qubits();
  if (n == 0) throw UsageError("draw_layer: empty draw");
  std::vector<Matrix> factors;
  factors.reserve(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) {
    factors.push_back(draw_factor(set, draw, layer, q, transposed));
  }
  return kron_all(factors);
}

}  // namespace qxp
