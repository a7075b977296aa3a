#include "kumanet/activations.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "kumanet/errors.hpp"

namespace kumanet {

namespace {

// log(1 + e^x) without overflow for large x or loss for very negative x.
double softplus(double x) {
  if (x > 0.0) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

// log(1 - sigmoid(x)^a), choosing the expansion that keeps precision on the
// side where the argument degenerates. Returns -inf once sigmoid(x)^a rounds
// to exactly 1 (x beyond ~745).
double log1m_sig_pow(double x, double a) {
  const double log_sig = -softplus(-x);  // log sigmoid(x)
  const double exponent = a * log_sig;   // log sigmoid(x)^a
  if (exponent < -std::numbers::ln2) {
    // sigmoid^a < 1/2: log1p on the small power
    return std::log1p(-std::exp(exponent));
  }
  // sigmoid^a near 1: expm1 keeps the tiny remainder
  return std::log(-std::expm1(exponent));
}

}  // namespace

ActivationKind ActivationKind::noisy_relu(double noise_var) {
  if (!(noise_var > 0.0)) throw std::domain_error("NoisyRelu requires noise_var > 0");
  return ActivationKind(Tag::NoisyRelu, noise_var, 0.0);
}

ActivationKind ActivationKind::kumaraswamy(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0))
    throw std::domain_error("Kumaraswamy requires shape parameters a > 0 and b > 0");
  return ActivationKind(Tag::Kumaraswamy, a, b);
}

std::string ActivationKind::name() const {
  switch (tag_) {
    case Tag::Sigmoid: return "sigmoid";
    case Tag::Relu: return "relu";
    case Tag::NoisyRelu: return "noisy-relu";
    case Tag::Kumaraswamy: return "kumaraswamy";
  }
  return "unknown";
}

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double relu(double x) { return x > 0.0 ? x : 0.0; }

double relu_deriv(double x) { return x > 0.0 ? 1.0 : 0.0; }

NoisyReluSample noisy_relu_sample(double x, double noise_var, Rng& rng) {
  const double noisy = x + rng.next_normal(0.0, noise_var);
  if (noisy > 0.0) return {noisy, 1.0};
  return {0.0, 0.0};
}

double noisy_relu_mean(double x, double noise_var) {
  const double s = std::sqrt(noise_var);
  const double z = x / s;
  const double cdf = 0.5 * std::erfc(-z / std::numbers::sqrt2);
  const double pdf = std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
  return x * cdf + s * pdf;
}

double kumaraswamy(double x, double a, double b) {
  const double t = log1m_sig_pow(x, a);  // -inf at full right saturation
  return -std::expm1(b * t);
}

double kumaraswamy_deriv(double x, double a, double b) {
  const double log_sig = -softplus(-x);
  const double log_one_minus_sig = -softplus(x);
  double tail = 0.0;
  if (b != 1.0) {
    const double t = log1m_sig_pow(x, a);
    if (std::isinf(t)) return 0.0;  // fully saturated right tail
    tail = (b - 1.0) * t;
  }
  // log sigmoid'(x) = log_sig + log_one_minus_sig; sigmoid^(a-1) folds into a*log_sig.
  const double log_deriv = std::log(a) + std::log(b) + a * log_sig + log_one_minus_sig + tail;
  return std::exp(log_deriv);
}

ForwardTrace apply_forward(const ActivationKind& kind, const Matrix& pre, Rng* rng, Mode mode) {
  ForwardTrace trace;
  trace.pre = pre;
  switch (kind.tag()) {
    case ActivationKind::Tag::Sigmoid:
      trace.act = map_elementwise(pre, [](double x) { return sigmoid(x); });
      break;
    case ActivationKind::Tag::Relu:
      trace.act = map_elementwise(pre, [](double x) { return relu(x); });
      break;
    case ActivationKind::Tag::Kumaraswamy: {
      const double a = kind.a();
      const double b = kind.b();
      trace.act = map_elementwise(pre, [a, b](double x) { return kumaraswamy(x, a, b); });
      break;
    }
    case ActivationKind::Tag::NoisyRelu: {
      Matrix act(pre.rows(), pre.cols());
      Matrix mask(pre.rows(), pre.cols());
      if (mode == Mode::Train) {
        if (rng == nullptr)
          throw usage_error("apply_forward: NoisyRelu in Train mode requires an rng");
        for (std::size_t i = 0; i < pre.size(); ++i) {
          const auto sample = noisy_relu_sample(pre.data()[i], kind.noise_var(), *rng);
          act.data()[i] = sample.value;
          mask.data()[i] = sample.gate;
        }
      } else {
        for (std::size_t i = 0; i < pre.size(); ++i) {
          const double x = pre.data()[i];
          act.data()[i] = relu(x);
          mask.data()[i] = relu_deriv(x);
        }
      }
      trace.act = std::move(act);
      trace.noise_mask = std::move(mask);
      break;
    }
  }
  return trace;
}

Matrix apply_backward(const ActivationKind& kind, const ForwardTrace& trace) {
  switch (kind.tag()) {
    case ActivationKind::Tag::Sigmoid:
      // sigmoid' = act (1 - act), from the cached outputs
      return map_elementwise(trace.act, [](double y) { return y * (1.0 - y); });
    case ActivationKind::Tag::Relu:
      return map_elementwise(trace.pre, [](double x) { return relu_deriv(x); });
    case ActivationKind::Tag::Kumaraswamy: {
      const double a = kind.a();
      const double b = kind.b();
      return map_elementwise(trace.pre,
                             [a, b](double x) { return kumaraswamy_deriv(x, a, b); });
    }
    case ActivationKind::Tag::NoisyRelu:
      if (!trace.noise_mask)
        throw usage_error("apply_backward: NoisyRelu trace is missing its noise mask");
      if (!trace.noise_mask->same_shape(trace.pre))
        detail::throw_shape_error("apply_backward", *trace.noise_mask, trace.pre);
      return *trace.noise_mask;
  }
  throw usage_error("apply_backward: unknown activation");
}

}  // namespace kumanet
