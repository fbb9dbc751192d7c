#pragma once

#include <cstddef>

#include "dpl/delay.hpp"
#include "dpl/grid.hpp"

namespace dpl {

/// Running iterated time integrals of a sampled (vector-valued) signal.
///
/// Each call to push(t, f(t)) advances three composite-trapezoid levels:
///   level1 = ∫₀ᵗ f,   level2 = ∫₀ᵗ∫₀ˢ f,   level3 = ∫₀ᵗ∫₀ˢ∫₀ᵘ f,
/// all updated in O(width) per step and never recomputed from history.
/// Trapezoid rule is exact on constant integrands at level1 and second-order
/// accurate otherwise.  Samples must arrive in strictly increasing time.
class IntegralAccumulator {
 public:
  IntegralAccumulator() = default;
  explicit IntegralAccumulator(std::size_t width) { reset(width); }

  /// Drop all history and set the number of components tracked.
  void reset(std::size_t width);

  /// Record the integrand value at time t.  The first push defines the lower
  /// limit of integration; subsequent pushes must strictly advance time.
  void push(double t, const Field& sample);

  /// Scalar convenience for width-1 accumulators.
  void push(double t, double sample);

  std::size_t width() const { return level1_.size(); }
  bool started() const { return started_; }
  /// Number of samples absorbed so far (panels + 1 once integration started).
  std::size_t samples() const { return n_samples_; }
  double time() const;

  const Field& last_sample() const;
  const Field& level1() const { return level1_; }
  const Field& level2() const { return level2_; }
  const Field& level3() const { return level3_; }

 private:
  Field last_;
  Field level1_;
  Field level2_;
  Field level3_;
  double t_ = 0.0;
  bool started_ = false;
  std::size_t n_samples_ = 0;
};

/// Delay-weighted combination ĝ(t) = g″(t) + τ_q g′(t) + ½ τ_q² g(t).
/// The accumulator must hold the history of g with g_now as its newest
/// sample; a mismatch means caller and accumulator have fallen out of step.
Field hat_transform(const IntegralAccumulator& acc, const Field& g_now,
                    const DelayPair& d);

/// Delay-weighted combination h̃(t) = h′(t) + τ_T h(t), same contract.
Field tilde_transform(const IntegralAccumulator& acc, const Field& h_now,
                      const DelayPair& d);

/// Scalar overloads for width-1 accumulators.
double hat_transform(const IntegralAccumulator& acc, double g_now,
                     const DelayPair& d);
double tilde_transform(const IntegralAccumulator& acc, double h_now,
                       const DelayPair& d);

}  // namespace dpl
