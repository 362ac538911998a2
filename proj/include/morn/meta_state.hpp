#pragma once

#include "morn/signal_core.hpp"

namespace morn {

// Blend weights for the three executive states. Potentiality and
// accumulation each carry their own stability weight.
struct StateWeights {
  // potentiality: velocity, evidence, stability
  double pot_v = 0.4;
  double pot_s = 0.3;
  double pot_stab = 0.3;
  // persistence gate: information gain, sunk-cost inertia, velocity
  double gate_gain = 0.5;
  double gate_inertia = 0.3;
  double gate_v = 0.2;
  // evidence accumulation: evidence, stability, proximity
  double acc_e = 0.3;
  double acc_stab = 0.4;
  double acc_prox = 0.3;
  double prox_scale = 5.0;  // metres
};

// Accumulation weights must sum to 1 and prox_scale must be positive.
// Checked once at configuration load, never per step.
void validate(const StateWeights& weights);

struct SunkCost {
  long spent = 0;       // steps charged to the active goal
  long allocation = 1;  // current per-goal cap

  // Not capped at 1.
  double inertia() const;
};

struct MetaStateVector {
  double potentiality = 0.5;
  double persistence = 0.5;
  double sufficiency = 0.0;
};

double sigmoid(double z);

double potentiality(double velocity, double evidence, double stability, const StateWeights& w);

// Throws std::invalid_argument when sunk.allocation <= 0.
double persistence_gate(double info_gain, const SunkCost& sunk, double velocity,
                        const StateWeights& w);

// exp(-distance / prox_scale); 0 for an infinite distance.
double proximity(double distance, const StateWeights& w);

// Linear blend, no squashing.
double sufficiency(double evidence, double stability, double distance, const StateWeights& w);

MetaStateVector evaluate(const SignalSummary& summary, const SignalSample& sample,
                         const SunkCost& sunk, const StateWeights& w);

}  // namespace morn
