#pragma once

#include <optional>
#include <string>

#include "kumanet/matrix.hpp"
#include "kumanet/rng.hpp"

namespace kumanet {

// Tagged choice of hidden-unit nonlinearity. Shape parameters are validated
// at construction; invalid values are domain errors.
class ActivationKind {
 public:
  enum class Tag { Sigmoid, Relu, NoisyRelu, Kumaraswamy };

  static ActivationKind sigmoid() { return ActivationKind(Tag::Sigmoid, 0.0, 0.0); }
  static ActivationKind relu() { return ActivationKind(Tag::Relu, 0.0, 0.0); }
  static ActivationKind noisy_relu(double noise_var);
  static ActivationKind kumaraswamy(double a, double b);

  Tag tag() const { return tag_; }
  double noise_var() const { return p0_; }
  double a() const { return p0_; }
  double b() const { return p1_; }

  std::string name() const;

  bool operator==(const ActivationKind& other) const = default;

 private:
  ActivationKind(Tag tag, double p0, double p1) : tag_(tag), p0_(p0), p1_(p1) {}
  Tag tag_;
  double p0_;
  double p1_;
};

enum class Mode { Train, Eval };

// What the backward pass needs from a forward application: the pre-activations,
// the outputs, and (Noisy ReLU only) the realized gates.
struct ForwardTrace {
  Matrix pre;
  Matrix act;
  std::optional<Matrix> noise_mask;
};

// Numerically stable logistic sigmoid; output in (0,1).
double sigmoid(double x);

double relu(double x);
// Subgradient at exactly 0 is 0, matching the Noisy ReLU gate convention.
double relu_deriv(double x);

struct NoisyReluSample {
  double value;
  double gate;  // 1 iff x + noise > 0; reused as the backward derivative
};
NoisyReluSample noisy_relu_sample(double x, double noise_var, Rng& rng);

// Closed-form E[max(0, x + N(0, noise_var))]; used for curve export only.
double noisy_relu_mean(double x, double noise_var);

// Kumaraswamy unit K(x) = 1 - (1 - sigmoid(x)^a)^b, evaluated in the log
// domain (softplus/log1p/expm1) so large |x| neither overflows nor loses the
// tail to premature rounding.
double kumaraswamy(double x, double a, double b);

// Derivative a*b*sigmoid'(x)*sigmoid(x)^(a-1)*(1-sigmoid(x)^a)^(b-1), same
// log-domain intermediates; non-negative everywhere.
double kumaraswamy_deriv(double x, double a, double b);

// Elementwise application over a pre-activation matrix. NoisyRelu in Train
// mode draws fresh noise (rng required); in Eval mode it is the deterministic
// max(0,x) with gate 1[x>0].
ForwardTrace apply_forward(const ActivationKind& kind, const Matrix& pre, Rng* rng, Mode mode);

// d act / d pre at every entry, from the cached trace. NoisyRelu reuses the
// realized gates rather than re-deriving from pre.
Matrix apply_backward(const ActivationKind& kind, const ForwardTrace& trace);

}  // namespace kumanet
