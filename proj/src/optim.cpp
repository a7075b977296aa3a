#include "kumanet/optim.hpp"

#include <cmath>

#include "kumanet/errors.hpp"

namespace kumanet {

void TrainConfig::validate() const {
  if (!(lr0 > 0.0)) throw usage_error("TrainConfig: lr0 must be positive");
  if (momentum0 < 0.0 || momentum0 >= 1.0)
    throw usage_error("TrainConfig: momentum0 must lie in [0,1)");
  if (momentum_late < 0.0 || momentum_late >= 1.0)
    throw usage_error("TrainConfig: momentum_late must lie in [0,1)");
  if (weight_decay < 0.0) throw usage_error("TrainConfig: weight_decay must be non-negative");
  if (batch_size < 1) throw usage_error("TrainConfig: batch_size must be at least 1");
  if (patience < 1) throw usage_error("TrainConfig: patience must be at least 1");
  if (lr_halving_period < 1) throw usage_error("TrainConfig: lr_halving_period must be at least 1");
  if (hidden_units < 1) throw usage_error("TrainConfig: hidden_units must be at least 1");
}

double lr_at(const TrainConfig& cfg, std::size_t epoch) {
  const std::size_t halvings = epoch / cfg.lr_halving_period;
  return cfg.lr0 / std::exp2(static_cast<double>(halvings));
}

double momentum_at(const TrainConfig& cfg, std::size_t epoch) {
  return epoch < cfg.momentum_switch_epoch ? cfg.momentum0 : cfg.momentum_late;
}

Velocity Velocity::zeros_like(const MlpParams& params) {
  Velocity vel;
  vel.vW = Matrix(params.W.rows(), params.W.cols());
  vel.vc = Vector(params.c.size(), 0.0);
  vel.vU = Matrix(params.U.rows(), params.U.cols());
  vel.vd = Vector(params.d.size(), 0.0);
  return vel;
}

namespace {

void check_finite(const double* data, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(data[i]))
      throw divergence_error("sgd_step: non-finite gradient entry");
  }
}

void step_weights(double* param, double* vel, const double* grad, std::size_t n, double lr,
                  double momentum, double weight_decay) {
  for (std::size_t i = 0; i < n; ++i) {
    vel[i] = momentum * vel[i] - lr * (grad[i] + weight_decay * param[i]);
    param[i] += vel[i];
  }
}

}  // namespace

void sgd_step(MlpParams& params, Velocity& vel, const Gradients& grads, double lr,
              double momentum, double weight_decay) {
  if (!grads.dW.same_shape(params.W) || !grads.dU.same_shape(params.U) ||
      grads.dc.size() != params.c.size() || grads.dd.size() != params.d.size())
    throw usage_error("sgd_step: gradient shapes do not mirror the parameters");
  check_finite(grads.dW.data(), grads.dW.size());
  check_finite(grads.dc.data(), grads.dc.size());
  check_finite(grads.dU.data(), grads.dU.size());
  check_finite(grads.dd.data(), grads.dd.size());

  step_weights(params.W.data(), vel.vW.data(), grads.dW.data(), params.W.size(), lr, momentum,
               weight_decay);
  step_weights(params.U.data(), vel.vU.data(), grads.dU.data(), params.U.size(), lr, momentum,
               weight_decay);
  // biases: no weight decay
  step_weights(params.c.data(), vel.vc.data(), grads.dc.data(), params.c.size(), lr, momentum,
               0.0);
  step_weights(params.d.data(), vel.vd.data(), grads.dd.data(), params.d.size(), lr, momentum,
               0.0);
}

EarlyStopper::EarlyStopper(std::size_t patience)
    : patience_(patience), best_val_error_(std::numeric_limits<double>::infinity()) {
  if (patience < 1) throw usage_error("EarlyStopper: patience must be at least 1");
}

StopDecision EarlyStopper::update(std::size_t epoch, double val_error,
                                  const MlpParams& params) {
  if (val_error < best_val_error_) {
    best_val_error_ = val_error;
    best_epoch_ = epoch;
    best_params_ = params;
    epochs_since_best_ = 0;
    return StopDecision::Continue;
  }
  ++epochs_since_best_;
  return epochs_since_best_ >= patience_ ? StopDecision::Stop : StopDecision::Continue;
}

const MlpParams& EarlyStopper::best_params() const {
  if (!best_params_) throw usage_error("EarlyStopper: no epoch has been recorded");
  return *best_params_;
}

}  // namespace kumanet
