#include "morn/signal_core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace morn {

void validate(const SignalParams& params) {
  if (params.window < 2) throw std::invalid_argument("signal.window must be >= 2");
  if (!(params.sigma_norm > 0.0)) throw std::invalid_argument("signal.sigma_norm must be > 0");
  if (!(params.epsilon > 0.0)) throw std::invalid_argument("signal.epsilon must be > 0");
  if (!(params.step_length > 0.0)) throw std::invalid_argument("signal.step_length must be > 0");
  if (params.ema_alpha && !(*params.ema_alpha > 0.0 && *params.ema_alpha < 1.0)) {
    throw std::invalid_argument("signal.ema_alpha must lie in (0, 1)");
  }
}

double clip(double x, double lo, double hi) {
  if (lo > hi) {
    throw std::invalid_argument("clip: lower bound " + std::to_string(lo) +
                                " exceeds upper bound " + std::to_string(hi));
  }
  return std::max(lo, std::min(x, hi));
}

double stability(double variance, const SignalParams& params) {
  if (!(variance >= 0.0)) throw std::invalid_argument("stability: variance must be >= 0");
  return 1.0 - clip(variance / (params.sigma_norm + params.epsilon), 0.0, 1.0);
}

RollingWindow::RollingWindow(int capacity) : capacity_(capacity) {
  if (capacity < 2) throw std::invalid_argument("RollingWindow: capacity must be >= 2");
  evidence_.reserve(capacity);
  distances_.reserve(capacity);
}

void RollingWindow::push(const SignalSample& sample) {
  if (!(sample.evidence >= 0.0 && sample.evidence <= 1.0)) {
    throw std::invalid_argument("SignalSample: evidence outside [0, 1]");
  }
  if (!(sample.distance >= 0.0)) {
    throw std::invalid_argument("SignalSample: distance must be >= 0");
  }
  if (last_step_ && sample.step <= *last_step_) {
    throw std::invalid_argument("SignalSample: step must increase within a goal context");
  }
  last_step_ = sample.step;
  if (full()) {
    evidence_.erase(evidence_.begin());
    distances_.erase(distances_.begin());
  }
  evidence_.push_back(sample.evidence);
  distances_.push_back(sample.distance);
}

void RollingWindow::clear() {
  evidence_.clear();
  distances_.clear();
  history_.clear();
  ema_.reset();
  last_step_.reset();
}

const SignalSummary* RollingWindow::lagged() const {
  if (static_cast<int>(history_.size()) < capacity_) return nullptr;
  return &history_.front();
}

void RollingWindow::remember(const SignalSummary& summary) {
  history_.push_back(summary);
  if (static_cast<int>(history_.size()) > capacity_) history_.pop_front();
}

SignalSummary update(RollingWindow& window, const SignalSample& sample,
                     const SignalParams& params) {
  window.push(sample);
  const auto values = window.evidence();
  const double n = static_cast<double>(values.size());

  SignalSummary out;
  if (params.ema_alpha) {
    // The smoothed score restarts from zero after every reset.
    const double alpha = *params.ema_alpha;
    const double ema = alpha * window.ema().value_or(0.0) + (1.0 - alpha) * sample.evidence;
    window.set_ema(ema);
    out.mean = ema;
  } else {
    double sum = 0.0;
    for (double v : values) sum += v;
    out.mean = sum / n;
  }

  double sq = 0.0;
  for (double v : values) sq += (v - out.mean) * (v - out.mean);
  out.variance = sq / n;
  out.stability = stability(out.variance, params);
  out.velocity = progress_velocity(window, params);
  out.fill = window.size();
  out.full = window.full();

  if (const SignalSummary* prev = window.lagged()) {
    out.prev_variance = prev->variance;
    out.info_gain = info_gain(*prev, out);
  }
  window.remember(out);
  return out;
}

double progress_rate(std::span<const double> distances, double step_length) {
  if (distances.size() < 2) return 0.0;
  const double oldest = distances.front();
  const double newest = distances.back();
  if (!std::isfinite(oldest) || !std::isfinite(newest)) return 0.0;
  const double steps = static_cast<double>(distances.size() - 1);
  return (oldest - newest) / (steps * step_length);
}

double progress_velocity(const RollingWindow& window, const SignalParams& params) {
  return clip(progress_rate(window.distances(), params.step_length), -1.0, 1.0);
}

double info_gain(const SignalSummary& prev, const SignalSummary& now) {
  if (!prev.full || !now.full) return 0.0;
  return prev.variance - now.variance;
}

}  // namespace morn
