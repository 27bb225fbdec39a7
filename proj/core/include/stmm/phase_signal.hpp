#pragma once

namespace stmm {

struct PhaseRate {
  double value = 0.0;
  // Set when t sits on a point where the derivative jumps; value is then
  // the right-hand limit.
  bool one_sided = false;
};

// A temporal phase trajectory gamma(t) with its first derivative.
class PhaseSignal {
 public:
  virtual ~PhaseSignal() = default;
  virtual double phase(double t) const = 0;
  virtual PhaseRate rate(double t) const = 0;
};

class ConstantPhase final : public PhaseSignal {
 public:
  explicit ConstantPhase(double value = 0.0) : value_(value) {}
  double phase(double) const override { return value_; }
  PhaseRate rate(double) const override { return {}; }

 private:
  double value_;
};

// gamma(t) = offset + slope * t.
class LinearPhase final : public PhaseSignal {
 public:
  LinearPhase(double slope, double offset = 0.0) : slope_(slope), offset_(offset) {}
  // Frequency shift of kappa * f_i.
  static LinearPhase from_kappa(double kappa, double carrier_hz);

  double phase(double t) const override { return offset_ + slope_ * t; }
  PhaseRate rate(double) const override { return {slope_, false}; }
  double slope() const { return slope_; }

 private:
  double slope_;
  double offset_;
};

// gamma(t) = a t^2 + b t + c.
class QuadraticPhase final : public PhaseSignal {
 public:
  QuadraticPhase(double a, double b = 0.0, double c = 0.0) : a_(a), b_(b), c_(c) {}
  double phase(double t) const override { return (a_ * t + b_) * t + c_; }
  PhaseRate rate(double t) const override { return {2.0 * a_ * t + b_, false}; }

 private:
  double a_, b_, c_;
};

}  // namespace stmm
