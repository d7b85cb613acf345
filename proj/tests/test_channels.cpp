#include <doctest.h>

#include <cmath>

#include "qxp/channels/choi.hpp"
#include "qxp/channels/kraus.hpp"
#include "qxp/channels/presets.hpp"
#include "qxp/core/gates.hpp"
#include "qxp/core/linalg.hpp"
#include "qxp/core/rng.hpp"

using namespace qxp;

namespace {

// Random single-qubit unitary via QR of a Ginibre matrix.
Matrix random_unitary(int n, Rng& rng) {
  const auto d = std::ptrdiff_t{1} << n;
  Matrix g(d, d);
  for (std::ptrdiff_t i = 0; i < d; ++i) {
    for (std::ptrdiff_t j = 0; j < d; ++j) {
      // Box-Muller pairs for complex Gaussians.
      const double u1 = rng.uniform(), u2 = rng.uniform();
      const double r = std::sqrt(-2.0 * std::log(u1 + 1e-300));
      g(i, j) = Complex(r * std::cos(2 * M_PI * u2), r * std::sin(2 * M_PI * u2));
    }
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  // Fix the phase ambiguity so Q is exactly unitary (QR already guarantees it).
  return q;
}

const KrausChannel& hadamard_channel() {
  static const KrausChannel ch = unitary_channel(hadamard());
  return ch;
}

// The two implementations under comparison in the worked example. The second
// one is a probabilistic mixture of the ideal gate and the full dephasing
// map acting on the *input* — exactly as the defining formula is written.
KrausChannel depolarized_hadamard(double p) {
  return compose(hadamard_channel(), depolarizing_channel(1, p));
}

KrausChannel dephased_hadamard_mixture(double p) {
  return mix(hadamard_channel(), dephasing_channel(1, 1.0), p);
}

}  // namespace

// ---------- Kraus layer ----------

TEST_CASE("presets satisfy Kraus completeness by construction") {
  // The constructor enforces sum K†K = I; instantiating is the check.
  CHECK(depolarizing_channel(1, 0.3).kraus.size() == 4);
  CHECK(depolarizing_channel(2, 0.7).kraus.size() == 16);
  CHECK(dephasing_channel(1, 0.4).kraus.size() == 2);
  CHECK(dephasing_channel(2, 0.4).kraus.size() == 5);
  CHECK(amplitude_damping_channel(0.3).kraus.size() == 2);
  CHECK(ghz_process(3).is_unitary());
  CHECK(local_rotation_process(3, 42).is_unitary());
}

TEST_CASE("kraus completeness violations are rejected") {
  std::vector<Matrix> bad = {0.9 * identity_gate(1)};
  CHECK_THROWS_AS(KrausChannel(1, bad), NumericalError);
}

TEST_CASE("channel application: full depolarizing erases the input") {
  const DensityMatrix in = DensityMatrix::pure(
      apply_unitary(hadamard(), StateVector::basis(Bitstring::parse("0"))));
  const DensityMatrix out = apply_channel(depolarizing_channel(1, 1.0), in);
  CHECK(max_abs_diff(out.mat, 0.5 * Matrix::Identity(2, 2)) < 1e-14);
}

TEST_CASE("full dephasing keeps the diagonal of |+><+| only") {
  const DensityMatrix plus = DensityMatrix::pure(
      apply_unitary(hadamard(), StateVector::basis(Bitstring::parse("0"))));
  const DensityMatrix out = apply_channel(dephasing_channel(1, 1.0), plus);
  CHECK(max_abs_diff(out.mat, 0.5 * Matrix::Identity(2, 2)) < 1e-14);
}

TEST_CASE("dephasing realizations agree: {I,Z} pair vs projector set") {
  const double p = 0.37;
  const ChoiMatrix via_z = choi_of_channel(dephasing_channel(1, p));
  std::vector<Matrix> proj;
  proj.push_back(std::sqrt(1.0 - p) * identity_gate(1));
  Matrix p0 = Matrix::Zero(2, 2), p1 = Matrix::Zero(2, 2);
  p0(0, 0) = std::sqrt(p);
  p1(1, 1) = std::sqrt(p);
  proj.push_back(p0);
  proj.push_back(p1);
  const ChoiMatrix via_proj = choi_of_channel(KrausChannel(1, proj));
  CHECK(max_abs_diff(via_z.state.mat, via_proj.state.mat) < 1e-14);
}

TEST_CASE("amplitude damping gamma=1 resets to |0>") {
  const DensityMatrix one =
      DensityMatrix::pure(StateVector::basis(Bitstring::parse("1")));
  const DensityMatrix out = apply_channel(amplitude_damping_channel(1.0), one);
  Matrix expect = Matrix::Zero(2, 2);
  expect(0, 0) = 1.0;
  CHECK(max_abs_diff(out.mat, expect) < 1e-14);
}

TEST_CASE("compose applies the second channel after the first") {
  // X then Z equals the unitary ZX (up to the global phase the Choi state
  // ignores).
  const KrausChannel zx = compose(unitary_channel(pauli_x()),
                                  unitary_channel(pauli_z()));
  const ChoiMatrix direct = choi_of_channel(unitary_channel(
      Matrix(pauli_z() * pauli_x())));
  CHECK(max_abs_diff(choi_of_channel(zx).state.mat, direct.state.mat) < 1e-14);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(depolarizing_channel(1, -0.1), UsageError);
  CHECK_THROWS_AS(dephasing_channel(1, 1.1), UsageError);
  CHECK_THROWS_AS(amplitude_damping_channel(2.0), UsageError);
  CHECK_THROWS_AS(mix(identity_channel(1), identity_channel(1), 1.5),
                  UsageError);
  CHECK_THROWS_AS(compose(identity_channel(1), identity_channel(2)),
                  UsageError);
}

// ---------- Choi construction ----------

TEST_CASE("choi of the identity channel is the maximally entangled state") {
  const ChoiMatrix eta = choi_of_channel(identity_channel(1));
  const StateVector me = maximally_entangled_state(1);
  CHECK(max_abs_diff(eta.state.mat, me.amps * me.amps.adjoint()) < 1e-15);
  CHECK(std::abs(choi_purity(eta) - 1.0) < 1e-12);
}

TEST_CASE("choi of the fully depolarizing channel is maximally mixed") {
  const ChoiMatrix eta = choi_of_channel(depolarizing_channel(1, 1.0));
  CHECK(max_abs_diff(eta.state.mat, Matrix::Identity(4, 4) / 4.0) < 1e-14);
}

TEST_CASE("choi ancilla marginal is I/2^n for trace-preserving channels") {
  Rng rng(3);
  const auto half = [](int n) {
    return Matrix::Identity(std::ptrdiff_t{1} << n, std::ptrdiff_t{1} << n) /
           static_cast<double>(std::ptrdiff_t{1} << n);
  };
  for (const KrausChannel& ch :
       {depolarizing_channel(2, 0.3), dephasing_channel(2, 0.6),
        ghz_process(2), compose(ghz_process(2), depolarizing_channel(2, 0.2))}) {
    const DensityMatrix marg = choi_ancilla_marginal(choi_of_channel(ch));
    CHECK(max_abs_diff(marg.mat, half(2)) < Tolerances::choi_marginal);
  }
  const DensityMatrix m1 =
      choi_ancilla_marginal(choi_of_channel(amplitude_damping_channel(0.3)));
  CHECK(max_abs_diff(m1.mat, half(1)) < Tolerances::choi_marginal);
  (void)rng;
}

TEST_CASE("choi states of unitary channels are pure and positive") {
  const ChoiMatrix eta = choi_of_channel(ghz_process(2));
  CHECK(std::abs(choi_purity(eta) - 1.0) < 1e-12);
  eta.state.validate_positivity();
}

TEST_CASE("choi map is linear in channel mixtures") {
  Rng rng(17);
  for (int rep = 0; rep < 5; ++rep) {
    const KrausChannel a = unitary_channel(random_unitary(1, rng));
    const KrausChannel b = depolarizing_channel(1, rng.uniform());
    const double w = rng.uniform();
    const ChoiMatrix mixed = choi_of_channel(mix(a, b, w));
    const Matrix expect = (1.0 - w) * choi_of_channel(a).state.mat +
                          w * choi_of_channel(b).state.mat;
    CHECK(max_abs_diff(mixed.state.mat, expect) < 1e-12);
  }
}

// ---------- overlaps and the fidelity oracle ----------

TEST_CASE("unitary channel overlaps follow |tr(U†V)|^2 / 4^n") {
  Rng rng(29);
  for (int n = 1; n <= 3; ++n) {
    for (int rep = 0; rep < 4; ++rep) {
      const Matrix u = random_unitary(n, rng), v = random_unitary(n, rng);
      const double got = exact_overlap(choi_of_channel(unitary_channel(u)),
                                       choi_of_channel(unitary_channel(v)));
      const double dim = std::pow(4.0, n);
      const double expect = std::norm((u.adjoint() * v).trace()) / dim;
      CHECK(std::abs(got - expect) < 1e-10);
    }
  }
}

TEST_CASE("overlap fixed points") {
  const ChoiMatrix eta_h = choi_of_channel(hadamard_channel());
  const ChoiMatrix eta_i = choi_of_channel(identity_channel(1));
  const ChoiMatrix eta_mix = choi_of_channel(depolarizing_channel(1, 1.0));
  CHECK(std::abs(exact_overlap(eta_h, eta_h) - 1.0) < 1e-12);
  // tr(H) = 0 makes the H/identity Choi states orthogonal.
  CHECK(std::abs(exact_overlap(eta_h, eta_i)) < 1e-12);
  CHECK(std::abs(exact_overlap(eta_i, eta_mix) - 0.25) < 1e-12);
  // Symmetry.
  CHECK(exact_overlap(eta_h, eta_mix) ==
        doctest::Approx(exact_overlap(eta_mix, eta_h)).epsilon(1e-12));
}

TEST_CASE("composing H with weak depolarizing mixes the Choi state linearly") {
  const double p = 7.0 / 30.0;
  const ChoiMatrix got = choi_of_channel(depolarized_hadamard(p));
  const Matrix expect =
      (1.0 - p) * choi_of_channel(hadamard_channel()).state.mat +
      p * Matrix::Identity(4, 4) / 4.0;
  CHECK(max_abs_diff(got.state.mat, expect) < 1e-13);
}

TEST_CASE("max fidelity is 1 exactly for identical channels") {
  const ChoiMatrix eta = choi_of_channel(depolarized_hadamard(0.3));
  const FidelityEstimate est = exact_max_fidelity(eta, eta);
  CHECK(est.f_max == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(est.std_err == 0.0);
}

TEST_CASE("worked comparison: noisy Hadamard implementations") {
  // Frozen oracle values, derived independently by expanding both Choi
  // states in the {eta_H, I/4, eta_Δ} basis and collecting trace products:
  //   overlap(E1, H) = 1 - (3/4) p1            = 33/40
  //   overlap(E2, H) = (1 - p2) + p2/4         = 17/20
  //   overlap(E1, E2)                          = 71/100
  //   purity(E1) = a^2 + ab/2 + b^2/4          = 829/1200  (a=1-p1, b=p1)
  //   purity(E2) = c^2 + cd/2 + d^2/2          = 37/50     (c=1-p2, d=p2)
  // with p1 = 7/30, p2 = 1/5, giving
  //   f(E1, H)  = 33/40 = 0.825
  //   f(E2, H)  = 17/20 = 0.850
  //   f(E1, E2) = (71/100)/(37/50) = 71/74 ≈ 0.959459
  const KrausChannel e1 = depolarized_hadamard(7.0 / 30.0);
  const KrausChannel e2 = dephased_hadamard_mixture(1.0 / 5.0);
  const ChoiMatrix eta1 = choi_of_channel(e1);
  const ChoiMatrix eta2 = choi_of_channel(e2);
  const ChoiMatrix etah = choi_of_channel(hadamard_channel());

  CHECK(std::abs(choi_purity(eta1) - 829.0 / 1200.0) < 1e-12);
  CHECK(std::abs(choi_purity(eta2) - 37.0 / 50.0) < 1e-12);

  const FidelityEstimate f1h = exact_max_fidelity(eta1, etah);
  const FidelityEstimate f2h = exact_max_fidelity(eta2, etah);
  const FidelityEstimate f12 = exact_max_fidelity(eta1, eta2);
  CHECK(std::abs(f1h.overlap - 33.0 / 40.0) < 1e-12);
  CHECK(std::abs(f2h.overlap - 17.0 / 20.0) < 1e-12);
  CHECK(std::abs(f12.overlap - 71.0 / 100.0) < 1e-12);
  CHECK(std::abs(f1h.f_max - 33.0 / 40.0) < 1e-12);
  CHECK(std::abs(f2h.f_max - 17.0 / 20.0) < 1e-12);
  CHECK(std::abs(f12.f_max - 71.0 / 74.0) < 1e-12);
}

TEST_CASE("orthogonal unitaries give fidelity 0") {
  const FidelityEstimate est =
      exact_max_fidelity(choi_of_channel(hadamard_channel()),
                         choi_of_channel(identity_channel(1)));
  CHECK(std::abs(est.f_max) < 1e-12);
}

// ---------- process builders ----------

TEST_CASE("ghz circuit on two qubits prepares the Bell state from |00>") {
  const Vector out = ghz_circuit(2) * StateVector::basis(Bitstring::parse("00")).amps;
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(out(0) - r) < 1e-14);
  CHECK(std::abs(out(3) - r) < 1e-14);
  CHECK(std::abs(out(1)) + std::abs(out(2)) < 1e-14);
}

TEST_CASE("ghz on one qubit degenerates to the Hadamard") {
  CHECK(max_abs_diff(ghz_circuit(1), hadamard()) < 1e-15);
}

TEST_CASE("rotation process is reproducible from its seed") {
  const KrausChannel a = local_rotation_process(3, 7);
  const KrausChannel b = local_rotation_process(3, 7);
  const KrausChannel c = local_rotation_process(3, 8);
  CHECK(max_abs_diff(a.kraus[0], b.kraus[0]) == 0.0);
  CHECK(max_abs_diff(a.kraus[0], c.kraus[0]) > 1e-3);
}

// ---------- channel-spec grammar ----------

TEST_CASE("grammar: plain gates and identity") {
  const ChoiMatrix h = choi_of_channel(parse_channel_spec("H", 1, 0));
  CHECK(max_abs_diff(h.state.mat,
                     choi_of_channel(hadamard_channel()).state.mat) < 1e-14);
  const ChoiMatrix idn = choi_of_channel(parse_channel_spec(" identity ", 2, 0));
  CHECK(max_abs_diff(idn.state.mat,
                     choi_of_channel(identity_channel(2)).state.mat) < 1e-14);
  CHECK(max_abs_diff(
            choi_of_channel(parse_channel_spec("CNOT", 2, 0)).state.mat,
            choi_of_channel(unitary_channel(cnot())).state.mat) < 1e-14);
}

TEST_CASE("grammar: composition is right-to-left application") {
  const KrausChannel parsed =
      parse_channel_spec("depolarizing(0.25)∘H", 1, 0);
  const KrausChannel expect =
      compose(hadamard_channel(), depolarizing_channel(1, 0.25));
  CHECK(max_abs_diff(choi_of_channel(parsed).state.mat,
                     choi_of_channel(expect).state.mat) < 1e-14);
  // ASCII synonym.
  const KrausChannel star = parse_channel_spec("depolarizing(0.25)*H", 1, 0);
  CHECK(max_abs_diff(choi_of_channel(star).state.mat,
                     choi_of_channel(expect).state.mat) < 1e-14);
}

TEST_CASE("grammar: mixtures express the dephased-input implementation") {
  const KrausChannel parsed =
      parse_channel_spec("mix(0.2, H, dephasing(1))", 1, 0);
  const KrausChannel expect = dephased_hadamard_mixture(0.2);
  CHECK(max_abs_diff(choi_of_channel(parsed).state.mat,
                     choi_of_channel(expect).state.mat) < 1e-14);
}

TEST_CASE("grammar: rotations derive from the supplied seed") {
  const KrausChannel a = parse_channel_spec("rotations", 2, 5);
  const KrausChannel b = local_rotation_process(2, 5);
  CHECK(max_abs_diff(a.kraus[0], b.kraus[0]) == 0.0);
}

TEST_CASE("grammar: errors carry usable messages") {
  CHECK_THROWS_AS(parse_channel_spec("", 1, 0), UsageError);
  CHECK_THROWS_AS(parse_channel_spec("H", 2, 0), UsageError);
  CHECK_THROWS_AS(parse_channel_spec("warp(0.1)", 1, 0), UsageError);
  CHECK_THROWS_AS(parse_channel_spec("depolarizing", 1, 0), UsageError);
  CHECK_THROWS_AS(parse_channel_spec("depolarizing(0.1", 1, 0), UsageError);
  CHECK_THROWS_AS(parse_channel_spec("mix(0.2, H)", 1, 0), UsageError);
  CHECK_THROWS_AS(parse_channel_spec("amplitude_damping(0.1)", 2, 0),
                  UsageError);
  CHECK_THROWS_AS(parse_channel_spec("depolarizing(1.5)", 1, 0), UsageError);
  CHECK_THROWS_AS(parse_channel_spec("H(0.3)", 1, 0), UsageError);
}
