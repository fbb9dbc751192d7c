#include "dpl/accumulator.hpp"

#include <cmath>

#include "dpl/errors.hpp"

namespace dpl {

void IntegralAccumulator::reset(std::size_t width) {
  last_.assign(width, 0.0);
  level1_.assign(width, 0.0);
  level2_.assign(width, 0.0);
  level3_.assign(width, 0.0);
  t_ = 0.0;
  started_ = false;
  n_samples_ = 0;
}

void IntegralAccumulator::push(double t, const Field& sample) {
  if (sample.size() != last_.size())
    throw SynchronizationError("sample width does not match the accumulator");
  if (!std::isfinite(t)) throw SynchronizationError("non-finite sample time");
  if (!started_) {
    last_ = sample;
    t_ = t;
    started_ = true;
    n_samples_ = 1;
    return;
  }
  const double dt = t - t_;
  if (!(dt > 0.0))
    throw SynchronizationError("samples must strictly advance in time");
  const double half = 0.5 * dt;
  for (std::size_t i = 0; i < last_.size(); ++i) {
    const double l1_new = level1_[i] + half * (last_[i] + sample[i]);
    const double l2_new = level2_[i] + half * (level1_[i] + l1_new);
    const double l3_new = level3_[i] + half * (level2_[i] + l2_new);
    level1_[i] = l1_new;
    level2_[i] = l2_new;
    level3_[i] = l3_new;
    last_[i] = sample[i];
  }
  t_ = t;
  ++n_samples_;
}

void IntegralAccumulator::push(double t, double sample) {
  if (last_.size() != 1)
    throw SynchronizationError("scalar push requires a width-1 accumulator");
  push(t, Field{sample});
}

double IntegralAccumulator::time() const {
  if (!started_)
    throw SynchronizationError("accumulator has not received a sample yet");
  return t_;
}

const Field& IntegralAccumulator::last_sample() const {
  if (!started_)
    throw SynchronizationError("accumulator has not received a sample yet");
  return last_;
}

namespace {

void check_synchronized(const IntegralAccumulator& acc, const Field& now) {
  const Field& head = acc.last_sample();  // throws if never pushed
  if (head.size() != now.size())
    throw SynchronizationError("integrand width does not match the accumulator");
  for (std::size_t i = 0; i < now.size(); ++i)
    if (head[i] != now[i])
      throw SynchronizationError(
          "integrand sample disagrees with the accumulator head; "
          "push the current value before transforming");
}

}  // namespace

Field hat_transform(const IntegralAccumulator& acc, const Field& g_now,
                    const DelayPair& d) {
  check_synchronized(acc, g_now);
  Field out(g_now.size());
  const double w = 0.5 * d.tau_q * d.tau_q;
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = acc.level2()[i] + d.tau_q * acc.level1()[i] + w * g_now[i];
  return out;
}

Field tilde_transform(const IntegralAccumulator& acc, const Field& h_now,
                      const DelayPair& d) {
  check_synchronized(acc, h_now);
  Field out(h_now.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = acc.level1()[i] + d.tau_T * h_now[i];
  return out;
}

double hat_transform(const IntegralAccumulator& acc, double g_now,
                     const DelayPair& d) {
  return hat_transform(acc, Field{g_now}, d)[0];
}

double tilde_transform(const IntegralAccumulator& acc, double h_now,
                       const DelayPair& d) {
  return tilde_transform(acc, Field{h_now}, d)[0];
}

}  // namespace dpl
