#pragma once

#include <complex>
#include <vector>

#include "dpl/delay.hpp"
#include "dpl/grid.hpp"
#include "dpl/material.hpp"
#include "dpl/profiles.hpp"

namespace dpl {

using Complex = std::complex<double>;
using ComplexField = std::vector<Complex>;

/// Complex temperature amplitude of a time-harmonic run on the strip
/// [0,W]x[0,L], with the flux amplitude recovered from the constitutive law.
/// Fields are row-major over (x1, x3) with index = j3*nx1 + i1.
struct SteadyAmplitude {
  StripGeometry geom;
  double omega = 0.0;
  ComplexField theta;
  ComplexField Q1, Q3;
  Field h_profile;        ///< Dirichlet base data sampled on the x1 nodes
  double solve_residual = 0.0;  ///< relative residual of the linear system
};

/// Solve the complex elliptic amplitude problem
///   (1 + i w tau_T) div(k grad theta) = i w a (1 + i w tau_q - tau_q^2 w^2/2) theta
/// with theta = 0 on x1 in {0,W} and x3 = L, theta = h(x1) at x3 = 0,
/// using a second-order five-point stencil with arithmetic-mean half-node k
/// and a sparse direct factorization.
SteadyAmplitude assemble_and_solve(const StripGeometry& geom,
                                   const MaterialField& m, const DelayPair& d,
                                   double omega, const Profile& h);

/// Frequency below which the spatial decay estimate is available:
/// omega_c = sqrt(lambda k_min / (tau_q a_max)), lambda = (pi/W)^2.
/// Reports +infinity for tau_q = 0 (no ceiling in the classical limit).
double critical_frequency(const StripGeometry& geom, const MaterialField& m,
                          const DelayPair& d);

/// Certified decay length: M(x3) <= M(0) exp(-x3/nu) with
/// nu = sqrt(lambda) k_max sqrt(1 + tau_T^2 w^2) / (2(lambda k_min - tau_q a_max w^2)).
/// Requires omega < critical_frequency.
double decay_rate(const StripGeometry& geom, const MaterialField& m,
                  const DelayPair& d, double omega);

/// Cross-sectional amplitude measure per section,
/// M(x3) = -2 Re[(1 + i w tau_T) int k theta_,3 conj(theta) dx1].
Field decay_measure(const SteadyAmplitude& sol, const MaterialField& m,
                    const DelayPair& d);

/// Lower envelope M*(x3) = 2 (1 - w^2/w_c^2) int over {x3' >= x3} of
/// k grad(theta).conj(grad(theta)).
Field lower_measure(const SteadyAmplitude& sol, const MaterialField& m,
                    const DelayPair& d);

/// Max over interior sections of the defect of the differential identity
/// -dM/dx3 = 2 int k grad(theta).conj(grad(theta)) - 2 tau_q w^2 int a |theta|^2,
/// with all derivatives taken by the matching central differences.
double max_identity_residual(const SteadyAmplitude& sol,
                             const MaterialField& m, const DelayPair& d);

/// Smallest per-section Rayleigh quotient of the discrete clamped section,
/// min over sections of (sum |dtheta/dx1|^2 dx1)/(sum |theta|^2 dx1), taken
/// over sections carrying nonnegligible amplitude.  Bounded below by the
/// discrete membrane eigenvalue geom.lambda_disc() exactly.
double min_membrane_quotient(const SteadyAmplitude& sol);

/// Outcome of the spatial-decay certification at one frequency.
struct DecayVerdict {
  double omega = 0.0;
  double omega_c = 0.0;
  double nu = 0.0;
  bool certified = false;
  double min_envelope_margin = 0.0;  ///< min (envelope*(1+tol) - M)/M(0)
  double min_positivity = 0.0;       ///< min M/M(0)
  double min_lower_margin = 0.0;     ///< min (M - M*)/M(0)
  double worst_x3 = 0.0;             ///< section of the smallest margin
  Field x3, M, envelope, M_star;     ///< per-section series for reporting
};

/// Check 0 <= M(x3) <= M(0) exp(-x3/nu) (1 + envelope_tol) and
/// M(x3) >= M*(x3) at every section.  Requires omega < critical_frequency.
DecayVerdict certify_decay(const SteadyAmplitude& sol, const MaterialField& m,
                           const DelayPair& d, double envelope_tol = 0.05);

}  // namespace dpl
