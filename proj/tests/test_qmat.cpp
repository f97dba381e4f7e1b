#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "switchtel/linalg.hpp"
#include "switchtel/states.hpp"
#include "test_helpers.hpp"

using namespace switchtel;
using namespace switchtel::testing;

TEST_CASE("tensor: identity and basis cases") {
  CHECK(max_abs_diff(tensor(identity(2), identity(2)), identity(4)) == 0.0);

  const ComplexMatrix ket01 = tensor(basis_ket(2, 0), basis_ket(2, 1));
  CHECK(max_abs_diff(ket01, basis_ket(4, 1)) == 0.0);
}

TEST_CASE("tensor: sigma_x (x) sigma_x flips the singlet's sign") {
  // Independent oracle: the 4x4 matrix written out by hand.
  ComplexMatrix xx(4, 4);
  xx(0, 3) = 1.0;
  xx(1, 2) = 1.0;
  xx(2, 1) = 1.0;
  xx(3, 0) = 1.0;
  const ComplexMatrix built = tensor(pauli(PauliAxis::X), pauli(PauliAxis::X));
  CHECK(max_abs_diff(built, xx) == 0.0);

  const ComplexMatrix singlet = bell(BellState::PsiMinus);
  const ComplexMatrix flipped = built * singlet;
  CHECK(max_abs_diff(flipped, cdouble(-1.0) * singlet) <= 1e-15);
}

TEST_CASE("tensor: mixed-product and associativity properties") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix a = random_matrix(rng, 2, 3);
    const ComplexMatrix b = random_matrix(rng, 2, 2);
    const ComplexMatrix c = random_matrix(rng, 3, 2);
    const ComplexMatrix d = random_matrix(rng, 2, 2);
    CHECK(max_abs_diff(tensor(a, b) * tensor(c, d), tensor(a * c, b * d)) <= 1e-12);

    const ComplexMatrix e = random_matrix(rng, 2, 2);
    const ComplexMatrix left = tensor(tensor(a, b), e);
    const ComplexMatrix right = tensor(a, tensor(b, e));
    CHECK(left.rows() == right.rows());
    CHECK(max_abs_diff(left, right) <= 1e-15 * left.max_abs());
  }
}

TEST_CASE("partial_trace: maximally entangled marginal is I/2") {
  const SubsystemLayout pair{Qubit::A, Qubit::B};
  const ComplexMatrix reduced =
      partial_trace(projector(bell(BellState::PsiMinus)), pair, {Qubit::B});
  CHECK(max_abs_diff(reduced, cdouble(0.5) * identity(2)) <= 1e-15);
}

TEST_CASE("partial_trace: teleported output reduces to the input state") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix psi = input_qubit(random_input(rng));
    const ComplexMatrix state =
        tensor(projector(bell(BellState::PsiMinus)), projector(psi));
    const ComplexMatrix bob =
        partial_trace(state, SubsystemLayout::alice_bob(), {Qubit::B});
    CHECK(max_abs_diff(bob, projector(psi)) <= 1e-14);
  }
}

TEST_CASE("partial_trace: product-state reduction and trace preservation") {
  std::mt19937_64 rng(13);
  const ComplexMatrix rho_s = projector(switch_state(random_switch(rng)));
  ComplexMatrix rest = random_hermitian(rng, 8);
  rest *= cdouble(1.0 / rest.trace());  // unit trace

  const ComplexMatrix joint = tensor(rho_s, rest);
  const ComplexMatrix reduced = partial_trace(
      joint, SubsystemLayout::switch_alice_bob(), {Qubit::APrime, Qubit::A, Qubit::B});
  CHECK(max_abs_diff(reduced, rest) <= 1e-13);
  CHECK(std::abs(reduced.trace() - joint.trace()) <= 1e-13);
}

TEST_CASE("partial_trace: commutes with convex mixing") {
  std::mt19937_64 rng(14);
  const SubsystemLayout layout = SubsystemLayout::alice_bob();
  const double p = 0.37;
  const ComplexMatrix rho1 = random_hermitian(rng, 8);
  const ComplexMatrix rho2 = random_hermitian(rng, 8);
  const ComplexMatrix mixed = cdouble(p) * rho1 + cdouble(1.0 - p) * rho2;
  const ComplexMatrix left = partial_trace(mixed, layout, {Qubit::B});
  const ComplexMatrix right = cdouble(p) * partial_trace(rho1, layout, {Qubit::B}) +
                              cdouble(1.0 - p) * partial_trace(rho2, layout, {Qubit::B});
  CHECK(max_abs_diff(left, right) <= 1e-12);
}

TEST_CASE("partial_trace: error paths") {
  const ComplexMatrix rho = identity(4);
  CHECK_THROWS_AS(partial_trace(rho, SubsystemLayout::alice_bob(), {Qubit::B}),
                  std::invalid_argument);
  const SubsystemLayout pair{Qubit::A, Qubit::B};
  CHECK_THROWS_AS(partial_trace(rho, pair, {Qubit::S}), std::invalid_argument);
}

TEST_CASE("apply_kraus: identity channel") {
  std::mt19937_64 rng(15);
  const ComplexMatrix rho = random_hermitian(rng, 4);
  CHECK(max_abs_diff(apply_kraus(rho, {identity(4)}), rho) <= 1e-15);
}

TEST_CASE("apply_kraus: phase-damping pair sends |+><+| to I/2") {
  // Hand-computed: E1 = I/sqrt2, E2 = sigma_z/sqrt2 kill the off-diagonals.
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const std::vector<ComplexMatrix> ops = {cdouble(inv_sqrt2) * identity(2),
                                          cdouble(inv_sqrt2) * pauli(PauliAxis::Z)};
  const ComplexMatrix plus = ComplexMatrix::column({inv_sqrt2, inv_sqrt2});
  const ComplexMatrix out = apply_kraus(projector(plus), ops);
  CHECK(max_abs_diff(out, cdouble(0.5) * identity(2)) <= 1e-15);
}

TEST_CASE("apply_kraus: random complete sets preserve trace and hermiticity") {
  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 10; ++trial) {
    const auto ops = random_kraus_set(rng, 4, 3);
    ComplexMatrix completeness(4, 4);
    for (const auto& e : ops) completeness += e.dagger() * e;
    REQUIRE(max_abs_diff(completeness, identity(4)) <= 1e-13);

    const ComplexMatrix rho = random_hermitian(rng, 4);
    const ComplexMatrix out = apply_kraus(rho, ops);
    CHECK(std::abs(out.trace() - rho.trace()) <= 1e-12);
    CHECK(max_abs_diff(out, out.dagger()) <= 1e-12);
  }
}

TEST_CASE("apply_kraus: dimension mismatch") {
  CHECK_THROWS_AS(apply_kraus(identity(4), {identity(2)}), std::invalid_argument);
}

TEST_CASE("fidelity_to_pure: reference values") {
  std::mt19937_64 rng(17);
  const ComplexMatrix psi = input_qubit(random_input(rng));
  CHECK(fidelity_to_pure(projector(psi), psi) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fidelity_to_pure(cdouble(0.5) * identity(2), psi) ==
        doctest::Approx(0.5).epsilon(1e-12));

  for (double theta_prime : {0.0, 0.3, kPi / 2, 2.9, kPi}) {
    const ComplexMatrix probe = input_qubit(InputParams(theta_prime, 1.3));
    const double expected = std::cos(theta_prime / 2.0) * std::cos(theta_prime / 2.0);
    CHECK(fidelity_to_pure(projector(basis_ket(2, 0)), probe) ==
          doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("fidelity_to_pure: affine in rho") {
  std::mt19937_64 rng(18);
  const ComplexMatrix psi = input_qubit(random_input(rng));
  const ComplexMatrix rho1 = projector(input_qubit(random_input(rng)));
  const ComplexMatrix rho2 = projector(input_qubit(random_input(rng)));
  const double p = 0.23;
  const double mixed =
      fidelity_to_pure(cdouble(p) * rho1 + cdouble(1.0 - p) * rho2, psi);
  const double split =
      p * fidelity_to_pure(rho1, psi) + (1.0 - p) * fidelity_to_pure(rho2, psi);
  CHECK(std::abs(mixed - split) <= 1e-12);
}

TEST_CASE("fidelity_to_pure: rejects non-normalized states") {
  const ComplexMatrix bad = ComplexMatrix::column({1.0, 0.5});
  CHECK_THROWS_AS(fidelity_to_pure(identity(2), bad), std::invalid_argument);
}

TEST_CASE("gauss_legendre: weights, symmetry and polynomial exactness") {
  std::vector<double> x, w;
  gauss_legendre(2, x, w);
  CHECK(x[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(x[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-14));

  gauss_legendre(64, x, w);
  double total = 0.0;
  for (double wi : w) total += wi;
  CHECK(total == doctest::Approx(2.0).epsilon(1e-14));
  for (int i = 0; i < 32; ++i) {
    CHECK(x[i] == doctest::Approx(-x[63 - i]).epsilon(1e-14));
  }

  // Exact moments of x^k on [-1, 1]: 2/(k+1) for even k, 0 for odd.
  for (int k : {0, 1, 2, 7, 20, 63, 101, 126, 127}) {
    double integral = 0.0;
    for (int i = 0; i < 64; ++i) integral += w[i] * std::pow(x[i], k);
    const double exact = (k % 2 == 0) ? 2.0 / (k + 1) : 0.0;
    CHECK(std::abs(integral - exact) <= 1e-12);
  }
}

TEST_CASE("haar_average: reference means") {
  CHECK(std::abs(haar_average([](const InputParams&) { return 1.0; }) - 1.0) <= 1e-13);

  // Average of |a|^4 + |b|^4 over the Bloch sphere.
  CHECK(std::abs(haar_average([](const InputParams& q) {
          const double c = std::cos(q.theta_prime / 2.0);
          const double s = std::sin(q.theta_prime / 2.0);
          return c * c * c * c + s * s * s * s;
        }) -
        2.0 / 3.0) <= 1e-12);

  // Independent oracle: (1/2)∫ cos²(θ'/2) sinθ' dθ' = 1/2.
  CHECK(std::abs(haar_average([](const InputParams& q) {
          const double c = std::cos(q.theta_prime / 2.0);
          return c * c;
        }) -
        0.5) <= 1e-12);

  // A phi'-dependent integrand with a known mean: |a|^2|b|^2 cos(2φ') has
  // zero average, constant 1 stays 1 when added.
  CHECK(std::abs(haar_average([](const InputParams& q) {
          const double c = std::cos(q.theta_prime / 2.0);
          const double s = std::sin(q.theta_prime / 2.0);
          return 1.0 + c * c * s * s * std::cos(2.0 * q.phi_prime);
        }) -
        1.0) <= 1e-12);
}

TEST_CASE("haar_average: non-finite integrand is rejected") {
  CHECK_THROWS_AS(haar_average([](const InputParams& q) {
                    return q.theta_prime < 2.0 ? 1.0 : std::nan("");
                  }),
                  std::runtime_error);
}

TEST_CASE("hermitian_eigenvalues: known spectra") {
  for (PauliAxis axis : {PauliAxis::X, PauliAxis::Y, PauliAxis::Z}) {
    const auto eigs = hermitian_eigenvalues(pauli(axis));
    CHECK(eigs[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(eigs[1] == doctest::Approx(1.0).epsilon(1e-12));
  }

  // Eigenvalues of [[3, 2i], [-2i, 1]] are 2 ± sqrt(5).
  ComplexMatrix m(2, 2);
  m(0, 0) = 3.0;
  m(1, 1) = 1.0;
  m(0, 1) = cdouble(0.0, 2.0);
  m(1, 0) = cdouble(0.0, -2.0);
  const auto eigs = hermitian_eigenvalues(m);
  CHECK(eigs[0] == doctest::Approx(2.0 - std::sqrt(5.0)).epsilon(1e-12));
  CHECK(eigs[1] == doctest::Approx(2.0 + std::sqrt(5.0)).epsilon(1e-12));

  // Spectrum reconstruction: Σ λ_i |v_i⟩⟨v_i| over an orthonormal frame
  // returns exactly the λ_i. The frame comes from a random Kraus "set" of
  // four 4x1 columns, which Gram-Schmidt makes orthonormal.
  std::mt19937_64 rng(19);
  const auto ops = random_kraus_set(rng, 4, 1);  // one 4x4 unitary block
  const ComplexMatrix& u = ops[0];
  const double lambdas[4] = {-1.5, -0.25, 0.125, 2.0};
  ComplexMatrix a(4, 4);
  for (int i = 0; i < 4; ++i) {
    ComplexMatrix v(4, 1);
    for (int r = 0; r < 4; ++r) v(r, 0) = u(r, i);
    a += cdouble(lambdas[i]) * projector(v);
  }
  const auto recovered = hermitian_eigenvalues(a);
  for (int i = 0; i < 4; ++i) {
    CHECK(recovered[i] == doctest::Approx(lambdas[i]).epsilon(1e-12));
  }
}

TEST_CASE("hermitian_eigenvalues: trace and PSD consistency on density matrices") {
  std::mt19937_64 rng(20);
  for (int trial = 0; trial < 10; ++trial) {
    // Random 4x4 density matrix: G G† normalized.
    const ComplexMatrix g = random_matrix(rng, 4, 4);
    ComplexMatrix rho = g * g.dagger();
    rho *= cdouble(1.0 / rho.trace());
    const auto eigs = hermitian_eigenvalues(rho);
    double sum = 0.0;
    for (double e : eigs) {
      CHECK(e >= -1e-12);
      sum += e;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("density_diagnostics: accepts states, flags defects") {
  std::mt19937_64 rng(21);
  const ComplexMatrix rho = projector(input_qubit(random_input(rng)));
  CHECK(density_diagnostics(rho).acceptable());

  ComplexMatrix skew = rho;
  skew(0, 1) += cdouble(0.0, 1e-6);
  CHECK_FALSE(density_diagnostics(skew).acceptable());

  ComplexMatrix negative(2, 2);
  negative(0, 0) = 1.5;
  negative(1, 1) = -0.5;
  CHECK_FALSE(density_diagnostics(negative).acceptable());
  CHECK(density_diagnostics(negative).min_eigenvalue ==
        doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("state vector check") {
  CHECK(is_unit_state_vector(bell(BellState::PhiPlus)));
  CHECK_FALSE(is_unit_state_vector(ComplexMatrix::column({1.0, 1.0})));
  CHECK_FALSE(is_unit_state_vector(identity(2)));
}
