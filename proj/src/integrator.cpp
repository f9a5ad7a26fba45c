#include "rsl/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "rsl/errors.hpp"

namespace rsl {

void IntegratorConfig::validate() const {
  if (step_count < 16) throw ConfigError("step_count must be at least 16");
  if (corrector_iterations < 1) throw ConfigError("corrector_iterations must be at least 1");
  if (interpolation_order != 3 && interpolation_order != 5) {
    throw ConfigError("interpolation_order must be 3 or 5");
  }
  if (!(scaling_threshold > 0.0)) throw ConfigError("scaling_threshold must be positive");
}

int effective_steps(const IntegratorConfig& cfg, double lambda_sq, double p) {
  const double omega = std::sqrt(std::abs(lambda_sq)) / std::abs(p);
  if (omega <= cfg.scaling_threshold) return cfg.step_count;
  const int quantum = std::max(1, cfg.step_count / 16);
  const double wanted = std::ceil(cfg.step_count * omega / cfg.scaling_threshold);
  return static_cast<int>(std::ceil(wanted / quantum)) * quantum;
}

RegionSamples::RegionSamples(const ValidatedProblem& problem, Side side, int steps)
    : side_(side),
      steps_(steps),
      start_(side == Side::Left ? 0.0 : kInterface),
      end_(side == Side::Left ? kInterface : kPi) {
  if (steps < 1) throw ConfigError("need at least one step");
  const int points = 2 * steps + 1;
  q_.resize(points);
  s_.resize(points);
  undelayed_.resize(points);
  const double half = (end_ - start_) / (2.0 * steps);
  for (int i = 0; i < points; ++i) {
    const double x = i + 1 == points ? end_ : start_ + i * half;
    const double delay = problem.delay(x, side);
    q_[i] = problem.q(x, side);
    s_[i] = std::clamp(x - delay, start_, x);
    undelayed_[i] = delay == 0.0;
  }
}

namespace {

// One region of the method of steps. History nodes are uniform with width h.
class StepIntegrator {
 public:
  StepIntegrator(const RegionSamples& samples, double lambda_sq, double p,
                 const IntegratorConfig& cfg)
      : samples_(samples),
        lambda_sq_(lambda_sq),
        inv_p_sq_(1.0 / (p * p)),
        cfg_(cfg),
        h_((samples.end() - samples.start()) / samples.steps()) {}

  DenseSolution run(DenseValue initial) {
    const int steps = samples_.steps();
    x_.resize(steps + 1);
    y_.resize(steps + 1);
    v_.resize(steps + 1);
    a_.resize(steps + 1);
    for (int n = 0; n <= steps; ++n) x_[n] = samples_.start() + n * h_;
    x_[steps] = samples_.end();
    y_[0] = initial.y;
    v_[0] = initial.dy;
    // The delayed argument at the region start is the start itself.
    a_[0] = accel(0, y_[0], y_[0]);

    for (n_ = 0; n_ < steps; ++n_) {
      provisional_ = false;
      in_step_ = false;
      rk4_step();
      if (in_step_) {
        for (int it = 0; it < cfg_.corrector_iterations; ++it) {
          prov_y_ = next_y_;
          prov_v_ = next_v_;
          provisional_ = true;
          rk4_step();
        }
      }
      y_[n_ + 1] = next_y_;
      v_[n_ + 1] = next_v_;
      prov_y_ = next_y_;
      prov_v_ = next_v_;
      provisional_ = true;
      a_[n_ + 1] = accel(2 * n_ + 2, next_y_, delayed(2 * n_ + 2, next_y_));
    }
    return DenseSolution(samples_.side(), lambda_sq_, cfg_.interpolation_order, std::move(x_),
                         std::move(y_), std::move(v_), std::move(a_));
  }

 private:
  double accel(int half, double y, double y_delayed) const {
    return -(samples_.q(half) * y_delayed + lambda_sq_ * y) * inv_p_sq_;
  }

  double history(double s) const {
    if (n_ == 0) return y_[0];
    int k = static_cast<int>((s - x_[0]) / h_);
    k = std::clamp(k, 0, n_ - 1);
    const double t = std::clamp((s - x_[k]) / h_, 0.0, 1.0);
    if (cfg_.interpolation_order == 5) {
      return hermite::quintic(t, h_, y_[k], v_[k], a_[k], y_[k + 1], v_[k + 1], a_[k + 1]);
    }
    return hermite::cubic(t, h_, y_[k], v_[k], y_[k + 1], v_[k + 1]);
  }

  double delayed(int half, double y_stage) {
    if (samples_.q(half) == 0.0) return 0.0;
    if (samples_.undelayed(half)) return y_stage;
    const double s = samples_.delayed(half);
    if (s <= x_[n_]) return history(s);
    // Delayed argument inside the step being taken.
    in_step_ = true;
    const double tau = s - x_[n_];
    if (provisional_) {
      return hermite::cubic(tau / h_, h_, y_[n_], v_[n_], prov_y_, prov_v_);
    }
    return y_[n_] + tau * (v_[n_] + 0.5 * tau * a_[n_]);
  }

  void rk4_step() {
    const int i0 = 2 * n_;
    const double y = y_[n_], v = v_[n_];
    const double half_h = 0.5 * h_;

    const double k1y = v;
    const double k1v = accel(i0, y, delayed(i0, y));
    const double y2 = y + half_h * k1y;
    const double v2 = v + half_h * k1v;
    const double k2y = v2;
    const double k2v = accel(i0 + 1, y2, delayed(i0 + 1, y2));
    const double y3 = y + half_h * k2y;
    const double v3 = v + half_h * k2v;
    const double k3y = v3;
    const double k3v = accel(i0 + 1, y3, delayed(i0 + 1, y3));
    const double y4 = y + h_ * k3y;
    const double v4 = v + h_ * k3v;
    const double k4y = v4;
    const double k4v = accel(i0 + 2, y4, delayed(i0 + 2, y4));

    next_y_ = y + (h_ / 6.0) * (k1y + 2.0 * (k2y + k3y) + k4y);
    next_v_ = v + (h_ / 6.0) * (k1v + 2.0 * (k2v + k3v) + k4v);
  }

  const RegionSamples& samples_;
  double lambda_sq_;
  double inv_p_sq_;
  const IntegratorConfig& cfg_;
  double h_;

  std::vector<double> x_, y_, v_, a_;
  int n_ = 0;
  bool provisional_ = false;
  bool in_step_ = false;
  double prov_y_ = 0.0, prov_v_ = 0.0;
  double next_y_ = 0.0, next_v_ = 0.0;
};

}  // namespace

DenseSolution integrate_region(const ValidatedProblem& problem, Side side, double lambda_sq,
                               DenseValue initial, int steps, const IntegratorConfig& cfg,
                               const RegionSamples* samples) {
  cfg.validate();
  if (!std::isfinite(lambda_sq)) throw DomainError("lambda^2 must be finite");
  std::optional<RegionSamples> local;
  if (samples == nullptr) {
    local.emplace(problem, side, steps);
    samples = &*local;
  } else if (samples->side() != side || samples->steps() != steps) {
    throw ConfigError("coefficient samples do not match the requested grid");
  }
  return StepIntegrator(*samples, lambda_sq, problem.p(side), cfg).run(initial);
}

DenseValue left_initial_data(const ValidatedProblem& problem) {
  return {problem.spec().a2, -problem.spec().a1};
}

DenseValue interface_transfer(const ValidatedProblem& problem, DenseValue left_end) {
  const auto& s = problem.spec();
  return {s.gamma1 / s.delta1 * left_end.y, s.gamma2 / s.delta2 * left_end.dy};
}

DenseSolution integrate_omega1(const ValidatedProblem& problem, double lambda,
                               const IntegratorConfig& cfg) {
  cfg.validate();
  const double lambda_sq = lambda * lambda;
  return integrate_region(problem, Side::Left, lambda_sq, left_initial_data(problem),
                          effective_steps(cfg, lambda_sq, problem.p(Side::Left)), cfg);
}

DenseSolution integrate_omega2(const ValidatedProblem& problem, double lambda,
                               const DenseSolution& omega1, const IntegratorConfig& cfg) {
  cfg.validate();
  const double lambda_sq = lambda * lambda;
  if (omega1.region() != Side::Left) throw ConfigError("omega1 must cover the left region");
  if (omega1.lambda_sq() != lambda_sq) {
    std::ostringstream os;
    os.precision(17);
    os << "omega1 was computed for lambda^2 = " << omega1.lambda_sq() << ", requested "
       << lambda_sq;
    throw MismatchedLambda(os.str());
  }
  return integrate_region(problem, Side::Right, lambda_sq,
                          interface_transfer(problem, omega1.at_back()),
                          effective_steps(cfg, lambda_sq, problem.p(Side::Right)), cfg);
}

}  // namespace rsl
