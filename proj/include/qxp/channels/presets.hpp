#pragma once

#include <cstdint>
#include <string>

#include "qxp/channels/kraus.hpp"

namespace qxp {

// (1-p)·rho + p·I/2^n, realized as the Pauli-twirl Kraus set.
KrausChannel depolarizing_channel(int n, double p);

// (1-p)·rho + p·Δ(rho) where Δ zeroes every off-diagonal entry in the
// computational (Z) basis. n = 1 uses the two-operator {I, Z} realization,
// larger n the projector realization; both produce the same channel.
KrausChannel dephasing_channel(int n, double p);

// Single-qubit amplitude damping with decay probability gamma.
KrausChannel amplitude_damping_channel(double gamma);

// Unitary processes used by the scaling studies: the GHZ preparation circuit
// (H on qubit 0, then a CNOT chain 0→1→…→n-1) and an n-fold product of
// Ry(theta_k) rotations with angles drawn once, uniformly in [0, 2π), from
// the stream named by `seed`.
KrausChannel ghz_process(int n);
KrausChannel local_rotation_process(int n, std::uint64_t seed);
Matrix ghz_circuit(int n);

// Channel-spec grammar, used by the CLI and config files:
//
//   spec  := term ('∘' term)*          -- also accepts '*'; left side runs last
//   term  := NAME | NAME '(' args ')'
//   NAME  := I | H | X | Y | Z | S | T | CNOT | CZ | SWAP
//          | ghz | rotations
//          | depolarizing(p) | dephasing(p) | amplitude_damping(g)
//          | mix(w, <spec>, <spec>)    -- (1-w)·first + w·second
//
// Gate names must match the configured qubit count (H needs n = 1, CNOT
// n = 2, ...); ghz/rotations/noise kinds build at the configured n. The
// rotations angles derive from `seed` so that one config reproduces one
// process.
KrausChannel parse_channel_spec(const std::string& text, int n,
                                std::uint64_t seed);

}  // namespace qxp
