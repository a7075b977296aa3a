#include "kumanet/model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "kumanet/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "checkpoint format is little-endian; big-endian hosts need byte swapping");

namespace kumanet {

MlpParams init_params(std::size_t input_dim, std::size_t hidden_units, std::size_t classes,
                      Rng& rng) {
  if (input_dim == 0 || hidden_units == 0 || classes == 0)
    throw usage_error("init_params: all dimensions must be at least 1");
  MlpParams params;
  params.W = Matrix(hidden_units, input_dim);
  params.c = Vector(hidden_units, 0.0);
  params.U = Matrix(classes, hidden_units);
  params.d = Vector(classes, 0.0);

  const double w_bound = std::sqrt(6.0 / static_cast<double>(input_dim + hidden_units));
  for (std::size_t i = 0; i < params.W.size(); ++i)
    params.W.data()[i] = w_bound * (2.0 * rng.next_uniform() - 1.0);

  const double u_bound = std::sqrt(6.0 / static_cast<double>(hidden_units + classes));
  for (std::size_t i = 0; i < params.U.size(); ++i)
    params.U.data()[i] = u_bound * (2.0 * rng.next_uniform() - 1.0);

  return params;
}

Matrix softmax_rows(const Matrix& logits) {
  Matrix probs(logits.rows(), logits.cols());
  for (std::size_t i = 0; i < logits.rows(); ++i) {
    const double* in = logits.row(i);
    double* out = probs.row(i);
    double max_logit = in[0];
    for (std::size_t j = 1; j < logits.cols(); ++j) max_logit = std::max(max_logit, in[j]);
    double sum = 0.0;
    for (std::size_t j = 0; j < logits.cols(); ++j) {
      out[j] = std::exp(in[j] - max_logit);
      sum += out[j];
    }
    const double inv = 1.0 / sum;
    for (std::size_t j = 0; j < logits.cols(); ++j) out[j] *= inv;
  }
  return probs;
}

ForwardResult forward(const MlpParams& params, const Matrix& x, const ActivationKind& kind,
                      Rng* rng, Mode mode) {
  if (x.cols() != params.input_dim())
    detail::throw_shape_error("forward: input vs W", x, params.W);
  // x Wt + c accumulates over the input dimension in the same ascending order
  // as matmul_transpose_b(x, W), so either route is bit-identical.
  const Matrix pre = add_row_broadcast(matmul(x, transpose(params.W)), params.c);
  ForwardResult result;
  result.hidden = apply_forward(kind, pre, rng, mode);
  const Matrix logits =
      add_row_broadcast(matmul(result.hidden.act, transpose(params.U)), params.d);
  result.probs = softmax_rows(logits);
  return result;
}

double cross_entropy(const Matrix& probs, const std::vector<int>& labels) {
  if (probs.rows() != labels.size())
    throw usage_error("cross_entropy: probs rows and label count differ");
  double total = 0.0;
  for (std::size_t i = 0; i < probs.rows(); ++i) {
    const int label = labels[i];
    if (label < 0 || static_cast<std::size_t>(label) >= probs.cols())
      throw usage_error("cross_entropy: label out of range");
    total += -std::log(std::max(probs(i, static_cast<std::size_t>(label)), 1e-300));
  }
  return total / static_cast<double>(probs.rows());
}

Gradients backward(const MlpParams& params, const Batch& batch, const ForwardResult& fwd,
                   const ActivationKind& kind) {
  const std::size_t batch_size = batch.x.rows();
  if (batch.labels.size() != batch_size)
    throw usage_error("backward: batch rows and label count differ");
  if (fwd.probs.rows() != batch_size || fwd.hidden.pre.rows() != batch_size)
    throw usage_error("backward: trace does not match the batch");
  if (fwd.hidden.pre.cols() != params.hidden_units() || fwd.probs.cols() != params.classes())
    throw usage_error("backward: trace does not match the parameter shapes");

  // Output delta for the mean loss: (probs - onehot) / batch_size.
  Matrix delta_out = fwd.probs;
  const double inv_batch = 1.0 / static_cast<double>(batch_size);
  for (std::size_t i = 0; i < batch_size; ++i) {
    double* row = delta_out.row(i);
    for (std::size_t j = 0; j < delta_out.cols(); ++j) row[j] *= inv_batch;
    row[static_cast<std::size_t>(batch.labels[i])] -= inv_batch;
  }

  Gradients grads;
  grads.dU = matmul_transpose_a(delta_out, fwd.hidden.act);
  grads.dd = col_sums(delta_out);

  const Matrix delta_hidden =
      hadamard(matmul(delta_out, params.U), apply_backward(kind, fwd.hidden));
  grads.dW = matmul_transpose_a(delta_hidden, batch.x);
  grads.dc = col_sums(delta_hidden);
  return grads;
}

std::vector<int> predict(const Matrix& probs) {
  std::vector<int> labels(probs.rows());
  for (std::size_t i = 0; i < probs.rows(); ++i) {
    const double* row = probs.row(i);
    std::size_t best = 0;
    for (std::size_t j = 1; j < probs.cols(); ++j) {
      if (row[j] > row[best]) best = j;
    }
    labels[i] = static_cast<int>(best);
  }
  return labels;
}

namespace {

constexpr char kMagic[4] = {'K', 'M', 'L', 'P'};
constexpr std::uint32_t kVersion = 1;

std::uint32_t activation_tag(const ActivationKind& kind) {
  switch (kind.tag()) {
    case ActivationKind::Tag::Sigmoid: return 0;
    case ActivationKind::Tag::Relu: return 1;
    case ActivationKind::Tag::NoisyRelu: return 2;
    case ActivationKind::Tag::Kumaraswamy: return 3;
  }
  return 0;
}

void write_u32(std::ostream& os, std::uint32_t v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

void write_f64(std::ostream& os, double v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

void write_f64_array(std::ostream& os, const double* data, std::size_t count) {
  os.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(count * 8));
}

class Reader {
 public:
  explicit Reader(std::vector<char> bytes) : bytes_(std::move(bytes)) {}

  std::uint32_t read_u32() {
    std::uint32_t v;
    take(&v, sizeof(v));
    return v;
  }
  double read_f64() {
    double v;
    take(&v, sizeof(v));
    return v;
  }
  void read_f64_array(double* out, std::size_t count) { take(out, count * 8); }
  std::size_t offset() const { return offset_; }
  bool exhausted() const { return offset_ == bytes_.size(); }

  void take(void* out, std::size_t n) {
    if (offset_ + n > bytes_.size()) {
      std::ostringstream os;
      os << "checkpoint truncated at byte offset " << offset_;
      throw format_error(os.str());
    }
    std::memcpy(out, bytes_.data() + offset_, n);
    offset_ += n;
  }

 private:
  std::vector<char> bytes_;
  std::size_t offset_ = 0;
};

}  // namespace

void save_checkpoint(const std::filesystem::path& path, const MlpParams& params,
                     const ActivationKind& kind) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw format_error("cannot open checkpoint for writing: " + path.string());
  os.write(kMagic, 4);
  write_u32(os, kVersion);
  write_u32(os, static_cast<std::uint32_t>(params.input_dim()));
  write_u32(os, static_cast<std::uint32_t>(params.hidden_units()));
  write_u32(os, static_cast<std::uint32_t>(params.classes()));
  write_u32(os, activation_tag(kind));
  double p0 = 0.0, p1 = 0.0;
  if (kind.tag() == ActivationKind::Tag::NoisyRelu) p0 = kind.noise_var();
  if (kind.tag() == ActivationKind::Tag::Kumaraswamy) {
    p0 = kind.a();
    p1 = kind.b();
  }
  write_f64(os, p0);
  write_f64(os, p1);
  write_f64_array(os, params.W.data(), params.W.size());
  write_f64_array(os, params.c.data(), params.c.size());
  write_f64_array(os, params.U.data(), params.U.size());
  write_f64_array(os, params.d.data(), params.d.size());
  if (!os) throw format_error("checkpoint write failed: " + path.string());
}

std::pair<MlpParams, ActivationKind> load_checkpoint(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw format_error("cannot open checkpoint: " + path.string());
  std::vector<char> bytes((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  Reader reader(std::move(bytes));

  char magic[4];
  reader.take(magic, 4);
  if (std::memcmp(magic, kMagic, 4) != 0)
    throw format_error("checkpoint magic mismatch at byte offset 0 (expected KMLP)");
  const std::uint32_t version = reader.read_u32();
  if (version != kVersion) {
    std::ostringstream os;
    os << "unsupported checkpoint version " << version << " at byte offset 4";
    throw format_error(os.str());
  }
  const std::uint32_t input_dim = reader.read_u32();
  const std::uint32_t hidden = reader.read_u32();
  const std::uint32_t classes = reader.read_u32();
  if (input_dim == 0 || hidden == 0 || classes == 0)
    throw format_error("checkpoint declares a zero dimension at byte offset 8");
  const std::uint32_t tag = reader.read_u32();
  const double p0 = reader.read_f64();
  const double p1 = reader.read_f64();

  ActivationKind kind = ActivationKind::sigmoid();
  switch (tag) {
    case 0: kind = ActivationKind::sigmoid(); break;
    case 1: kind = ActivationKind::relu(); break;
    case 2: kind = ActivationKind::noisy_relu(p0); break;
    case 3: kind = ActivationKind::kumaraswamy(p0, p1); break;
    default: {
      std::ostringstream os;
      os << "unknown activation tag " << tag << " at byte offset 20";
      throw format_error(os.str());
    }
  }

  MlpParams params;
  params.W = Matrix(hidden, input_dim);
  params.c = Vector(hidden, 0.0);
  params.U = Matrix(classes, hidden);
  params.d = Vector(classes, 0.0);
  reader.read_f64_array(params.W.data(), params.W.size());
  reader.read_f64_array(params.c.data(), params.c.size());
  reader.read_f64_array(params.U.data(), params.U.size());
  reader.read_f64_array(params.d.data(), params.d.size());
  if (!reader.exhausted()) {
    std::ostringstream os;
    os << "checkpoint has trailing bytes at offset " << reader.offset();
    throw format_error(os.str());
  }
  return {std::move(params), kind};
}

}  // namespace kumanet
