#pragma once

#include <cstdint>
#include <optional>

#include "kumanet/activations.hpp"
#include "kumanet/model.hpp"

namespace kumanet {

// Every hyperparameter of the training protocol. Epochs are 0-based: "after
// 50 epochs" means epochs >= momentum_switch_epoch use momentum_late.
struct TrainConfig {
  double lr0 = 0.1;
  double momentum0 = 0.5;
  double momentum_late = 0.9;
  std::size_t momentum_switch_epoch = 50;
  double weight_decay = 0.0;
  std::size_t batch_size = 100;
  std::size_t max_epochs = 100;
  std::size_t lr_halving_period = 10;
  std::size_t patience = 10;
  std::uint64_t seed = 1;
  std::size_t hidden_units = 500;
  ActivationKind activation = ActivationKind::sigmoid();

  void validate() const;  // throws usage_error on out-of-range fields
};

// lr0 / 2^floor(epoch / halving period)
double lr_at(const TrainConfig& cfg, std::size_t epoch);

double momentum_at(const TrainConfig& cfg, std::size_t epoch);

struct Velocity {
  Matrix vW;
  Vector vc;
  Matrix vU;
  Vector vd;

  static Velocity zeros_like(const MlpParams& params);
};

// Classical momentum update, in place:
//   vel <- momentum * vel - lr * (grad + weight_decay * param)
//   param <- param + vel
// Weight decay applies to W and U only, never to the biases.
// Non-finite gradient entries raise divergence_error.
void sgd_step(MlpParams& params, Velocity& vel, const Gradients& grads, double lr,
              double momentum, double weight_decay);

enum class StopDecision { Continue, Stop };

// Early stopping on validation classification error with a fixed look-ahead.
// Only strict improvement refreshes the snapshot; ties advance the counter.
class EarlyStopper {
 public:
  explicit EarlyStopper(std::size_t patience);

  StopDecision update(std::size_t epoch, double val_error, const MlpParams& params);

  bool has_best() const { return best_params_.has_value(); }
  double best_val_error() const { return best_val_error_; }
  std::size_t best_epoch() const { return best_epoch_; }
  std::size_t epochs_since_best() const { return epochs_since_best_; }
  const MlpParams& best_params() const;

 private:
  std::size_t patience_;
  double best_val_error_;
  std::size_t best_epoch_ = 0;
  std::size_t epochs_since_best_ = 0;
  std::optional<MlpParams> best_params_;
};

}  // namespace kumanet
