#include "qxp/channels/presets.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <vector>

#include "qxp/core/gates.hpp"
#include "qxp/core/linalg.hpp"
#include "qxp/core/rng.hpp"

namespace qxp {

namespace {

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw UsageError(std::string(what) + " parameter must lie in [0, 1]");
  }
}

}  // namespace

KrausChannel depolarizing_channel(int n, double p) {
  check_probability(p, "depolarizing");
  const auto strings = std::size_t{1} << (2 * n);  // 4^n Pauli strings
  const double rest = p / static_cast<double>(strings);
  std::vector<Matrix> ops;
  std::vector<int> factors(static_cast<std::size_t>(n));
  for (std::size_t code = 0; code < strings; ++code) {
    std::size_t c = code;
    for (int q = 0; q < n; ++q) {
      factors[static_cast<std::size_t>(q)] = static_cast<int>(c & 3u);
      c >>= 2;
    }
    const double weight = (code == 0) ? (1.0 - p) + rest : rest;
    if (weight > 0.0) {
      ops.push_back(std::sqrt(weight) * pauli_string(factors));
    }
  }
  return KrausChannel(n, std::move(ops));
}

KrausChannel dephasing_channel(int n, double p) {
  check_probability(p, "dephasing");
  if (n == 1) {
    // Mixture form (1-p)rho + pΔ(rho) damps off-diagonals by (1-p); the
    // {I, Z} pair with q = p/2 damps them by (1-2q) — identical channel.
    const double q = p / 2.0;
    std::vector<Matrix> ops;
    ops.push_back(std::sqrt(1.0 - q) * identity_gate(1));
    if (q > 0.0) ops.push_back(std::sqrt(q) * pauli_z());
    return KrausChannel(1, std::move(ops));
  }
  const auto d = std::ptrdiff_t{1} << n;
  std::vector<Matrix> ops;
  if (p < 1.0) ops.push_back(std::sqrt(1.0 - p) * identity_gate(n));
  for (std::ptrdiff_t i = 0; i < d; ++i) {
    Matrix proj = Matrix::Zero(d, d);
    proj(i, i) = std::sqrt(p);
    if (p > 0.0) ops.push_back(std::move(proj));
  }
  return KrausChannel(n, std::move(ops));
}

KrausChannel amplitude_damping_channel(double gamma) {
  check_probability(gamma, "amplitude damping");
  Matrix k0(2, 2), k1(2, 2);
  k0 << 1, 0, 0, std::sqrt(1.0 - gamma);
  k1 << 0, std::sqrt(gamma), 0, 0;
  return KrausChannel(1, {k0, k1});
}

Matrix ghz_circuit(int n) {
  dim_for_qubits(n);
  Matrix u = embed_gate(hadamard(), 0, n);
  for (int q = 0; q + 1 < n; ++q) {
    u = embed_gate(cnot(), q, n) * u;
  }
  return u;
}

KrausChannel ghz_process(int n) { return unitary_channel(ghz_circuit(n)); }

KrausChannel local_rotation_process(int n, std::uint64_t seed) {
  dim_for_qubits(n);
  Rng rng(derive_seed(seed, {hash_label("rotation-angles")}));
  std::vector<Matrix> factors;
  factors.reserve(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) {
    factors.push_back(ry(2.0 * std::numbers::pi * rng.uniform()));
  }
  return unitary_channel(kron_all(factors));
}

// ---------------------------------------------------------------------------
// Channel-spec grammar.

namespace {

std::string strip(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

// Splits on a delimiter at parenthesis depth zero. The delimiter may be
// multi-byte (the composition sign is three bytes of UTF-8).
std::vector<std::string> split_top_level(const std::string& text,
                                         const std::string& delim) {
  std::vector<std::string> parts;
  std::string current;
  int depth = 0;
  for (std::size_t i = 0; i < text.size();) {
    if (depth == 0 && text.compare(i, delim.size(), delim) == 0) {
      parts.push_back(current);
      current.clear();
      i += delim.size();
      continue;
    }
    const char c = text[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth < 0) throw UsageError("channel spec: unbalanced ')'");
    current.push_back(c);
    ++i;
  }
  if (depth != 0) throw UsageError("channel spec: unbalanced '('");
  parts.push_back(current);
  return parts;
}

double parse_number(const std::string& text, const char* what) {
  const std::string t = strip(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw UsageError(std::string(what) + ": expected a number, got \"" + t +
                     "\"");
  }
  if (used != t.size()) {
    throw UsageError(std::string(what) + ": trailing characters in \"" + t +
                     "\"");
  }
  return v;
}

KrausChannel parse_spec_impl(const std::string& text, int n,
                             std::uint64_t seed);

KrausChannel gate_term(const std::string& name, int n) {
  struct Entry {
    const char* name;
    int qubits;
    Matrix (*build)();
  };
  static const Entry table[] = {
      {"x", 1, pauli_x},   {"y", 1, pauli_y},  {"z", 1, pauli_z},
      {"h", 1, hadamard},  {"s", 1, s_gate},   {"t", 1, t_gate},
      {"cnot", 2, cnot},   {"cz", 2, cz},      {"swap", 2, swap_gate},
  };
  for (const Entry& e : table) {
    if (name == e.name) {
      if (n != e.qubits) {
        throw UsageError("channel spec: gate \"" + name + "\" needs n = " +
                         std::to_string(e.qubits) + ", configured n = " +
                         std::to_string(n));
      }
      return unitary_channel(e.build());
    }
  }
  throw UsageError("channel spec: unknown term \"" + name + "\"");
}

KrausChannel parse_term(const std::string& raw, int n, std::uint64_t seed) {
  const std::string term = strip(raw);
  if (term.empty()) throw UsageError("channel spec: empty term");

  std::string name = term;
  std::string args;
  const std::size_t open = term.find('(');
  if (open != std::string::npos) {
    if (term.back() != ')') {
      throw UsageError("channel spec: expected ')' at end of \"" + term +
                       "\"");
    }
    name = strip(term.substr(0, open));
    args = term.substr(open + 1, term.size() - open - 2);
  }
  name = lower(name);

  if (name == "i" || name == "identity") return identity_channel(n);
  if (name == "ghz") return ghz_process(n);
  if (name == "rotations") return local_rotation_process(n, seed);

  if (name == "depolarizing" || name == "dephasing" ||
      name == "amplitude_damping" || name == "amp_damp") {
    if (open == std::string::npos) {
      throw UsageError("channel spec: \"" + name + "\" needs a parameter");
    }
    const double p = parse_number(args, name.c_str());
    if (name == "depolarizing") return depolarizing_channel(n, p);
    if (name == "dephasing") return dephasing_channel(n, p);
    if (n != 1) {
      throw UsageError("channel spec: amplitude_damping is single-qubit");
    }
    return amplitude_damping_channel(p);
  }

  if (name == "mix") {
    const auto parts = split_top_level(args, ",");
    if (parts.size() != 3) {
      throw UsageError("channel spec: mix needs (weight, spec, spec)");
    }
    const double w = parse_number(parts[0], "mix weight");
    check_probability(w, "mix weight");
    return mix(parse_spec_impl(parts[1], n, seed),
               parse_spec_impl(parts[2], n, seed), w);
  }

  if (open != std::string::npos) {
    throw UsageError("channel spec: term \"" + name +
                     "\" does not take parameters");
  }
  return gate_term(name, n);
}

KrausChannel parse_spec_impl(const std::string& text, int n,
                             std::uint64_t seed) {
  // Composition: leftmost term is applied last. Accept the ASCII '*' as a
  // synonym for the ring operator.
  std::string normalized = strip(text);
  if (normalized.empty()) throw UsageError("channel spec is empty");
  const std::string ring = "∘";
  std::vector<std::string> terms;
  for (const std::string& chunk : split_top_level(normalized, ring)) {
    for (const std::string& part : split_top_level(chunk, "*")) {
      terms.push_back(part);
    }
  }
  KrausChannel ch = parse_term(terms.back(), n, seed);
  for (std::size_t i = terms.size() - 1; i-- > 0;) {
    ch = compose(ch, parse_term(terms[i], n, seed));
  }
  return ch;
}

}  // namespace

KrausChannel parse_channel_spec(const std::string& text, int n,
                                std::uint64_t seed) {
  dim_for_qubits(n);
  return parse_spec_impl(text, n, seed);
}

}  // namespace qxp
