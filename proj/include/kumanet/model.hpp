#pragma once

#include <filesystem>
#include <vector>

#include "kumanet/activations.hpp"
#include "kumanet/matrix.hpp"
#include "kumanet/rng.hpp"

namespace kumanet {

// Parameters of the one-hidden-layer classifier: input-to-hidden weights W (MxD),
// hidden biases c (M), hidden-to-output weights U (KxM), output biases d (K).
struct MlpParams {
  Matrix W;
  Vector c;
  Matrix U;
  Vector d;

  std::size_t input_dim() const { return W.cols(); }
  std::size_t hidden_units() const { return W.rows(); }
  std::size_t classes() const { return U.rows(); }
};

struct Gradients {
  Matrix dW;
  Vector dc;
  Matrix dU;
  Vector dd;
};

// A mini-batch, one example per row, pixels in [0,1].
struct Batch {
  Matrix x;
  std::vector<int> labels;
};

struct ForwardResult {
  ForwardTrace hidden;
  Matrix probs;  // batch x K, rows sum to 1
};

// Glorot-uniform weights, zero biases; W is filled row-major first, then U.
MlpParams init_params(std::size_t input_dim, std::size_t hidden_units, std::size_t classes,
                      Rng& rng);

// Row softmax with per-row max subtraction.
Matrix softmax_rows(const Matrix& logits);

ForwardResult forward(const MlpParams& params, const Matrix& x, const ActivationKind& kind,
                      Rng* rng, Mode mode);

// Mean over examples of -log p[true class]; log arguments clamped at 1e-300.
double cross_entropy(const Matrix& probs, const std::vector<int>& labels);

// Gradients of the mean cross-entropy over the batch. The trace must come from
// the matching forward call (Noisy ReLU reuses its realized gates).
Gradients backward(const MlpParams& params, const Batch& batch, const ForwardResult& fwd,
                   const ActivationKind& kind);

// Per-row argmax; ties break toward the lowest class index.
std::vector<int> predict(const Matrix& probs);

// Flat little-endian checkpoint: magic "KMLP", version, dims, activation
// tag + parameters, then W, c, U, d as f64 arrays.
void save_checkpoint(const std::filesystem::path& path, const MlpParams& params,
                     const ActivationKind& kind);
std::pair<MlpParams, ActivationKind> load_checkpoint(const std::filesystem::path& path);

}  // namespace kumanet
