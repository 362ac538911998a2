#include "morn/meta_state.hpp"

#include <cmath>
#include <stdexcept>

namespace morn {

void validate(const StateWeights& w) {
  const double sum = w.acc_e + w.acc_stab + w.acc_prox;
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("weights.acc_e + weights.acc_stab + weights.acc_prox must equal 1");
  }
  if (!(w.prox_scale > 0.0)) throw std::invalid_argument("weights.prox_scale must be > 0");
}

double SunkCost::inertia() const {
  if (allocation <= 0) throw std::invalid_argument("SunkCost: allocation must be > 0");
  return static_cast<double>(spent) / static_cast<double>(allocation);
}

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double potentiality(double velocity, double evidence, double stability, const StateWeights& w) {
  return sigmoid(w.pot_v * velocity + w.pot_s * evidence + w.pot_stab * stability);
}

double persistence_gate(double info_gain, const SunkCost& sunk, double velocity,
                        const StateWeights& w) {
  return sigmoid(w.gate_gain * info_gain - w.gate_inertia * sunk.inertia() + w.gate_v * velocity);
}

double proximity(double distance, const StateWeights& w) {
  if (!(distance >= 0.0)) throw std::invalid_argument("proximity: distance must be >= 0");
  return std::exp(-distance / w.prox_scale);
}

double sufficiency(double evidence, double stability, double distance, const StateWeights& w) {
  return w.acc_e * evidence + w.acc_stab * stability + w.acc_prox * proximity(distance, w);
}

MetaStateVector evaluate(const SignalSummary& summary, const SignalSample& sample,
                         const SunkCost& sunk, const StateWeights& w) {
  return {
      .potentiality = potentiality(summary.velocity, sample.evidence, summary.stability, w),
      .persistence = persistence_gate(summary.info_gain, sunk, summary.velocity, w),
      .sufficiency = sufficiency(sample.evidence, summary.stability, sample.distance, w),
  };
}

}  // namespace morn
