#pragma once

#include <string>
#include <vector>

#include "qxp/core/rng.hpp"
#include "qxp/core/types.hpp"

namespace qxp {

enum class DesignKind { clifford24, pauli_bases, haar };

std::string design_kind_name(DesignKind kind);
DesignKind design_kind_from_name(const std::string& name);

// Single-qubit randomized-measurement ensemble. The two finite kinds hold
// explicit element lists; haar samples fresh matrices per draw.
//
// clifford24 elements are generated once by breadth-first closure from the
// identity under left multiplication by H and S, with each product
// phase-canonicalized (first nonzero entry in row-major order made real
// positive). That procedure is deterministic, so element indices are stable
// identifiers across runs and across processes.
class TwoDesignSet {
 public:
  static const TwoDesignSet& of(DesignKind kind);

  DesignKind kind() const { return kind_; }
  // Number of elements; 0 for the continuous haar ensemble.
  int size() const { return static_cast<int>(elements_.size()); }
  const Matrix& element(int index) const;
  // Index of the element equal (up to global phase) to element(index)^T.
  int transpose_index(int index) const;

 private:
  explicit TwoDesignSet(DesignKind kind);
  DesignKind kind_;
  std::vector<Matrix> elements_;
  std::vector<int> transpose_;
};

// One sampled preparation/measurement layer pair. Finite kinds store
// per-qubit element indices; haar stores the factors explicitly.
struct UnitaryDraw {
  std::vector<int> u1, u2;
  std::vector<Matrix> u1_mats, u2_mats;

  bool has_explicit_factors() const { return !u1_mats.empty(); }
  int qubits() const {
    return static_cast<int>(has_explicit_factors() ? u1_mats.size()
                                                   : u1.size());
  }
};

bool draws_equal(const UnitaryDraw& a, const UnitaryDraw& b);

// Independent uniform factor per qubit and per layer; haar mode emits
// explicit Haar-distributed 2x2 matrices (Ginibre + Gram-Schmidt).
UnitaryDraw sample_draw(const TwoDesignSet& set, int n, Rng& rng);

enum class Layer { preparation, measurement };

// Single-qubit factor of a layer. `transposed` yields the factor actually
// executed on the preparation side; for clifford24 it resolves through the
// precomputed transpose-index table.
Matrix draw_factor(const TwoDesignSet& set, const UnitaryDraw& draw,
                   Layer layer, int qubit, bool transposed = false);

// Full 2^n layer matrix (qubit 0 = most significant).
Matrix draw_layer(const TwoDesignSet& set, const UnitaryDraw& draw,
                  Layer layer, bool transposed = false);

}  // namespace qxp
