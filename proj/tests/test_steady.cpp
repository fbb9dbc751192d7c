#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>

#include "dpl/errors.hpp"
#include "dpl/steady.hpp"

using namespace dpl;

namespace {

constexpr double kPi = 3.141592653589793;
constexpr double kW = kPi;
constexpr double kL = 4 * kPi;

SteadyAmplitude solve_uniform(std::size_t nx1, std::size_t nx3,
                              const DelayPair& d, double omega,
                              const std::string& h = "sine(1)") {
  StripGeometry geom(kW, kL, nx1, nx3);
  MaterialField m = MaterialField::uniform(geom.n_nodes(), 1.0, 1.0);
  return assemble_and_solve(geom, m, d, omega, Profile::parse(h, 0.0, kW));
}

}  // namespace

TEST_CASE("zero base data gives the zero amplitude") {
  const SteadyAmplitude sol = solve_uniform(33, 129, DelayPair(1, 1), 0.5, "zero");
  for (const Complex& t : sol.theta) CHECK(std::abs(t) == 0.0);
  const MaterialField m = MaterialField::uniform(sol.geom.n_nodes(), 1, 1);
  const Field M = decay_measure(sol, m, DelayPair(1, 1));
  for (double v : M) CHECK(v == 0.0);
}

TEST_CASE("base data must vanish at the clamped corners") {
  StripGeometry geom(kW, kL, 33, 129);
  MaterialField m = MaterialField::uniform(geom.n_nodes(), 1, 1);
  CHECK_THROWS_AS(
      assemble_and_solve(geom, m, DelayPair(1, 1), 0.5,
                         Profile::parse("const(1)", 0.0, kW)),
      ValidationError);
  CHECK_THROWS_AS(assemble_and_solve(geom, m, DelayPair(1, 1), 0.0,
                                     Profile::parse("sine(1)", 0.0, kW)),
                  ValidationError);  // omega must be positive
}

TEST_CASE("classical limit matches the separable closed form") {
  // With both delays zero the equation reduces to a complex diffusion
  // equation whose single-mode solution on the strip is exact:
  //   theta = sin(pi x1/W) sinh(mu (L - x3)) / sinh(mu L),
  //   mu^2 = (pi/W)^2 + i omega.
  const double omega = 0.5;
  const SteadyAmplitude sol = solve_uniform(129, 513, DelayPair(0, 0), omega);
  const std::complex<double> mu =
      std::sqrt(std::complex<double>(1.0, omega));  // (pi/W)^2 = 1

  const std::size_t j_mid = 256;  // x3 = L/2
  double worst = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < 129; ++i) {
    const double x1 = sol.geom.x1(i);
    const double x3 = sol.geom.x3(j_mid);
    const std::complex<double> exact = std::sin(kPi * x1 / kW) *
                                       std::sinh(mu * (kL - x3)) /
                                       std::sinh(mu * kL);
    worst = std::max(worst,
                     std::abs(sol.theta[sol.geom.index(i, j_mid)] - exact));
    scale = std::max(scale, std::abs(exact));
  }
  CHECK(scale > 0.0);
  CHECK(worst / scale < 1e-3);
}

TEST_CASE("conjugating the solution solves the conjugated equation") {
  const double omega = 0.6;
  const DelayPair d(0.8, 0.5);
  const SteadyAmplitude sol = solve_uniform(33, 129, d, omega);
  const StripGeometry& g = sol.geom;

  // Apply the five-point operator with i -> -i coefficients to conj(theta);
  // interior residual must vanish to factorization accuracy.
  const Complex alpha_c(1.0, -omega * d.tau_T);
  const Complex gamma_c(1.0 - 0.5 * d.tau_q * d.tau_q * omega * omega,
                        -omega * d.tau_q);
  const double i1 = 1.0 / (g.dx1() * g.dx1()), i3 = 1.0 / (g.dx3() * g.dx3());
  double worst = 0.0;
  for (std::size_t j = 1; j + 1 < g.nx3; ++j)
    for (std::size_t i = 1; i + 1 < g.nx1; ++i) {
      const Complex c = std::conj(sol.theta[g.index(i, j)]);
      const Complex lap =
          i1 * (std::conj(sol.theta[g.index(i + 1, j)]) - 2.0 * c +
                std::conj(sol.theta[g.index(i - 1, j)])) +
          i3 * (std::conj(sol.theta[g.index(i, j + 1)]) - 2.0 * c +
                std::conj(sol.theta[g.index(i, j - 1)]));
      worst = std::max(worst, std::abs(alpha_c * lap +
                                       Complex(0, 1) * omega * gamma_c * c));
    }
  CHECK(worst < 1e-9);
}

TEST_CASE("mirror symmetry of the single-mode amplitude") {
  const SteadyAmplitude sol = solve_uniform(65, 257, DelayPair(1, 1), 0.5);
  double worst = 0.0;
  for (std::size_t j = 0; j < 257; ++j)
    for (std::size_t i = 0; i < 65; ++i)
      worst = std::max(worst, std::abs(sol.theta[sol.geom.index(i, j)] -
                                       sol.theta[sol.geom.index(64 - i, j)]));
  CHECK(worst < 1e-10);
  CHECK(sol.solve_residual <= 1e-10);
}

TEST_CASE("critical frequency closed form and scalings") {
  StripGeometry geom(kW, kL, 33, 129);
  const MaterialField m = MaterialField::uniform(geom.n_nodes(), 1, 1);
  CHECK(std::abs(critical_frequency(geom, m, DelayPair(1, 1)) - 1.0) < 1e-12);
  CHECK(critical_frequency(geom, m, DelayPair(4.0, 1.0)) ==
        doctest::Approx(0.5).epsilon(1e-14));
  StripGeometry narrow(kW / 2, kL, 33, 129);
  CHECK(critical_frequency(narrow, m, DelayPair(1, 1)) ==
        doctest::Approx(2.0).epsilon(1e-14));
  CHECK(std::isinf(critical_frequency(geom, m, DelayPair(0.0, 0.0))));
}

TEST_CASE("decay length closed form, pole and monotonicity") {
  StripGeometry geom(kW, kL, 33, 129);
  const MaterialField m = MaterialField::uniform(geom.n_nodes(), 1, 1);
  // tau_T = 0, omega = 0.5: nu = 1/(2 (1 - 0.25)) = 2/3.
  CHECK(decay_rate(geom, m, DelayPair(1.0, 0.0), 0.5) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  // Approaching the ceiling blows the certified length up.
  CHECK(decay_rate(geom, m, DelayPair(1, 1), 0.999) > 100.0);
  CHECK_THROWS_AS(decay_rate(geom, m, DelayPair(1, 1), 1.0),
                  FrequencyDomainError);
  CHECK_THROWS_AS(decay_rate(geom, m, DelayPair(1, 1), 1.5),
                  FrequencyDomainError);
  // A larger gradient delay weakens (lengthens) the certificate.
  CHECK(decay_rate(geom, m, DelayPair(1.0, 1.0), 0.5) >
        decay_rate(geom, m, DelayPair(1.0, 0.5), 0.5));
}

TEST_CASE("measured decay certified below the critical frequency") {
  const DelayPair d(1, 1);
  const MaterialField m = MaterialField::uniform(std::size_t{65} * 257, 1, 1);
  const SteadyAmplitude sol = solve_uniform(65, 257, d, 0.5);
  const DecayVerdict v = certify_decay(sol, m, d);

  CHECK(v.certified);
  CHECK(v.omega_c == doctest::Approx(1.0));
  CHECK(v.nu == doctest::Approx(0.7453559924999299).epsilon(1e-14));
  CHECK(v.min_positivity >= -1e-12);
  CHECK(v.min_lower_margin >= -1e-6);
  CHECK(v.min_envelope_margin >= 0.0);
  REQUIRE(v.M.size() == 257);
  // The measure decays by orders of magnitude along the strip.
  CHECK(v.M.front() > 0.0);
  CHECK(v.M[200] < v.M.front() * 1e-3);

  // Near-critical drive: still certified, but with a long decay length.
  const SteadyAmplitude near = solve_uniform(65, 257, d, 0.99);
  const DecayVerdict vn = certify_decay(near, m, d);
  CHECK(vn.certified);
  CHECK(vn.nu > v.nu);
}

TEST_CASE("membrane quotient obeys the discrete eigenvalue floor") {
  const SteadyAmplitude sol = solve_uniform(65, 257, DelayPair(1, 1), 0.5);
  const double q = min_membrane_quotient(sol);
  // The floor is exact in exact arithmetic; the slack covers the rounding of
  // the section sums, which can land the quotient an ulp below it.
  CHECK(q >= sol.geom.lambda_disc() * (1.0 - 1e-10));
  // The single sine mode should sit essentially on the floor.
  CHECK(q == doctest::Approx(sol.geom.lambda_disc()).epsilon(1e-6));
}

TEST_CASE("measure identity residual shrinks at second order") {
  const DelayPair d(1, 1);
  auto residual = [&](std::size_t n1, std::size_t n3) {
    const MaterialField m =
        MaterialField::uniform(std::size_t{n1} * n3, 1, 1);
    return max_identity_residual(solve_uniform(n1, n3, d, 0.5), m, d);
  };
  const double coarse = residual(33, 129);
  const double fine = residual(65, 257);
  const double order = std::log2(coarse / fine);
  CHECK(order >= 1.8);
  CHECK(order <= 2.6);
}
