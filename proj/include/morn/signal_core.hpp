#pragma once

#include <deque>
#include <optional>
#include <span>
#include <vector>

namespace morn {

// One step of telemetry for the active goal.
struct SignalSample {
  long step = 0;
  double distance = 0.0;  // geodesic metres to the goal, +inf when no path
  double evidence = 0.0;  // raw matching score in [0, 1]
};

struct SignalParams {
  int window = 5;
  std::optional<double> ema_alpha;  // unset: simple moving mean
  double sigma_norm = 0.05;
  double epsilon = 1e-6;
  double step_length = 0.25;  // metres per primitive move
};

// Throws std::invalid_argument naming the offending field.
void validate(const SignalParams& params);

struct SignalSummary {
  double mean = 0.0;
  double variance = 0.0;
  double prev_variance = 0.0;  // variance of the window that ended W steps ago
  double stability = 1.0;
  double velocity = 0.0;
  double info_gain = 0.0;
  int fill = 0;
  bool full = false;
};

// max(lo, min(x, hi)); throws std::invalid_argument when lo > hi.
double clip(double x, double lo, double hi);

// 1 - clip(variance / (sigma_norm + epsilon), 0, 1).
double stability(double variance, const SignalParams& params);

// Evidence and distance history for the active goal. Cleared on every
// context reset (commit, switch, abort).
class RollingWindow {
 public:
  explicit RollingWindow(int capacity);

  int capacity() const { return capacity_; }
  int size() const { return static_cast<int>(evidence_.size()); }
  bool full() const { return size() == capacity_; }
  bool empty() const { return evidence_.empty(); }

  // Oldest first.
  std::span<const double> evidence() const { return evidence_; }
  std::span<const double> distances() const { return distances_; }

  void push(const SignalSample& sample);
  void clear();

  // Summary computed W steps ago, if one has been recorded.
  const SignalSummary* lagged() const;
  void remember(const SignalSummary& summary);

  std::optional<double> ema() const { return ema_; }
  void set_ema(double value) { ema_ = value; }

 private:
  int capacity_;
  std::vector<double> evidence_;
  std::vector<double> distances_;
  std::deque<SignalSummary> history_;
  std::optional<double> ema_;
  std::optional<long> last_step_;
};

// Advances the window by one sample and returns the statistics over the
// current (possibly partial) window.
SignalSummary update(RollingWindow& window, const SignalSample& sample,
                     const SignalParams& params);

// Unclipped (d_oldest - d_newest) / ((n - 1) * step_length). Zero when
// fewer than two samples or when either endpoint is non-finite.
double progress_rate(std::span<const double> distances, double step_length);

// progress_rate clipped to [-1, 1]; positive means approaching.
double progress_velocity(const RollingWindow& window, const SignalParams& params);

// prev.variance - now.variance when both summaries cover full windows.
double info_gain(const SignalSummary& prev, const SignalSummary& now);

}  // namespace morn
