#pragma once

#include <bit>
#include <cstdint>
#include <string>

#include "qxp/core/types.hpp"

namespace qxp {

// Classical measurement outcome / computational-basis label on n qubits.
//
// Bit order convention (fixed everywhere): qubit 0 is the MOST significant
// bit of the integer index, and the leftmost character of the text form.
// So on 3 qubits, "101" has qubit 0 = 1, qubit 1 = 0, qubit 2 = 1 and
// indexes amplitude 5.
struct Bitstring {
  int n = 0;
  std::uint64_t value = 0;

  Bitstring() = default;
  Bitstring(int n_, std::uint64_t value_) : n(n_), value(value_) {
    dim_for_qubits(n);
    if (n < 64 && (value >> n) != 0) {
      throw UsageError("bitstring value " + std::to_string(value) +
                       " does not fit in " + std::to_string(n) + " bits");
    }
  }

  // Bit of qubit k (0 = leftmost / most significant).
  int bit(int k) const {
    if (k < 0 || k >= n) throw UsageError("qubit index out of range");
    return static_cast<int>((value >> (n - 1 - k)) & 1u);
  }

  std::string str() const {
    std::string s(static_cast<std::size_t>(n), '0');
    for (int k = 0; k < n; ++k) s[static_cast<std::size_t>(k)] += bit(k);
    return s;
  }

  static Bitstring parse(const std::string& text) {
    if (text.empty() || text.size() > kMaxQubits) {
      throw UsageError("bitstring text length must be in [1, " +
                       std::to_string(kMaxQubits) + "]");
    }
    std::uint64_t v = 0;
    for (char c : text) {
      if (c != '0' && c != '1') {
        throw UsageError("bitstring text must contain only 0/1, got \"" +
                         text + "\"");
      }
      v = (v << 1) | static_cast<std::uint64_t>(c - '0');
    }
    return Bitstring(static_cast<int>(text.size()), v);
  }

  friend bool operator==(const Bitstring&, const Bitstring&) = default;
};

// Number of positions where a and b differ. Both must have the same length.
inline int hamming_distance(const Bitstring& a, const Bitstring& b) {
  if (a.n != b.n) throw UsageError("hamming_distance: length mismatch");
  return std::popcount(a.value ^ b.value);
}

inline int hamming_distance(std::uint64_t a, std::uint64_t b) {
  return std::popcount(a ^ b);
}

}  // namespace qxp
