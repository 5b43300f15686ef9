#include "nsbench/relu_net.hpp"

#include <cmath>
#include <limits>

#include "nsbench/errors.hpp"

namespace nsbench {

Index relu_parameter_count(const std::vector<Index>& widths) {
  Index n = 0;
  for (std::size_t l = 1; l < widths.size(); ++l) n += (widths[l - 1] + 1) * widths[l];
  return n;
}

Index ReluNetSpec::parameter_count() const { return relu_parameter_count(widths); }

void ReluNetSpec::validate() const {
  NSBENCH_REQUIRE(widths.size() >= 2, "ReluNetSpec: need an input and an output width");
  for (Index w : widths) NSBENCH_REQUIRE(w > 0, "ReluNetSpec: widths must be positive");
  NSBENCH_REQUIRE(widths.back() == 1, "ReluNetSpec: output width must be 1");
  NSBENCH_REQUIRE(inputs.size() == targets.size(), "ReluNetSpec: number of inputs differs from number of targets");
  NSBENCH_REQUIRE(!inputs.empty(), "ReluNetSpec: no samples");
  NSBENCH_REQUIRE(batches >= 1 && batches <= inputs.size(), "ReluNetSpec: batch count must be in [1, samples]");
  for (const auto& in : inputs) {
    NSBENCH_REQUIRE(in.size() == widths.front(), "ReluNetSpec: input dimension differs from the first width");
  }
}

ReluBatchObjective::ReluBatchObjective(std::vector<Index> widths, Matrix inputs, Vector targets, LossKind loss)
    : widths_(std::move(widths)), inputs_(std::move(inputs)), targets_(targets.transpose()), loss_(loss) {
  NSBENCH_REQUIRE(widths_.size() >= 2 && widths_.back() == 1, "ReluBatchObjective: bad widths");
  NSBENCH_REQUIRE(inputs_.rows() == widths_.front(), "ReluBatchObjective: input dimension mismatch");
  NSBENCH_REQUIRE(inputs_.cols() == targets_.size() && inputs_.cols() > 0,
                  "ReluBatchObjective: inputs and targets disagree");
  Index offset = 0;
  for (std::size_t l = 1; l < widths_.size(); ++l) {
    offsets_.push_back(offset);
    offset += (widths_[l - 1] + 1) * widths_[l];
  }
  dimension_ = offset;
}

ReluBatchObjective::Forward ReluBatchObjective::forward(const Vector& x) const {
  const std::size_t layers = widths_.size() - 1;
  Forward f;
  f.post.push_back(inputs_);
  for (std::size_t l = 0; l < layers; ++l) {
    const Index fan_in = widths_[l];
    const Index fan_out = widths_[l + 1];
    Eigen::Map<const Matrix> w(x.data() + offsets_[l], fan_out, fan_in);
    Eigen::Map<const Vector> b(x.data() + offsets_[l] + fan_out * fan_in, fan_out);
    Matrix z = w * f.post.back();
    z.colwise() += b;
    if (l + 1 == layers) {
      f.output = z.row(0);
    } else {
      f.post.push_back(z.cwiseMax(0.0));
      f.pre.push_back(std::move(z));
    }
  }
  return f;
}

double ReluBatchObjective::loss_of(const Eigen::RowVectorXd& residual) const {
  if (loss_ == LossKind::absolute) return residual.cwiseAbs().mean();
  return residual.squaredNorm() / static_cast<double>(residual.size());
}

double ReluBatchObjective::do_value(const Vector& x) const {
  return loss_of(forward(x).output - targets_);
}

Vector ReluBatchObjective::do_subgradient(const Vector& x) const { return do_evaluate(x).subgradient; }

Evaluation ReluBatchObjective::do_evaluate(const Vector& x) const {
  const std::size_t layers = widths_.size() - 1;
  const Forward f = forward(x);
  const Eigen::RowVectorXd residual = f.output - targets_;
  const double samples = static_cast<double>(residual.size());

  Matrix delta(1, residual.size());
  if (loss_ == LossKind::absolute) {
    delta.row(0) = residual.unaryExpr([](double r) { return r > 0.0 ? 1.0 : (r < 0.0 ? -1.0 : 0.0); });
  } else {
    delta.row(0) = 2.0 * residual;
  }
  delta /= samples;

  Vector g(dimension_);
  for (std::size_t l = layers; l-- > 0;) {
    const Index fan_in = widths_[l];
    const Index fan_out = widths_[l + 1];
    Eigen::Map<Matrix> gw(g.data() + offsets_[l], fan_out, fan_in);
    Eigen::Map<Vector> gb(g.data() + offsets_[l] + fan_out * fan_in, fan_out);
    gw.noalias() = delta * f.post[l].transpose();
    gb = delta.rowwise().sum();
    if (l > 0) {
      Eigen::Map<const Matrix> w(x.data() + offsets_[l], fan_out, fan_in);
      Matrix back = w.transpose() * delta;
      // Tie rule: max(0, t) has derivative 0 at t = 0.
      delta = back.cwiseProduct((f.pre[l - 1].array() > 0.0).cast<double>().matrix());
    }
  }
  return {loss_of(residual), std::move(g)};
}

Vector ReluBatchObjective::predict(const Vector& params) const {
  check_dimension(*this, params);
  return forward(params).output.transpose();
}

double ReluBatchObjective::kink_margin(const Vector& params) const {
  check_dimension(*this, params);
  const Forward f = forward(params);
  double margin = std::numeric_limits<double>::infinity();
  for (const auto& z : f.pre) margin = std::min(margin, z.cwiseAbs().minCoeff());
  if (loss_ == LossKind::absolute) margin = std::min(margin, (f.output - targets_).cwiseAbs().minCoeff());
  return margin;
}

bool ReluBatchObjective::differentiable_at(const Vector& x) const { return kink_margin(x) > 0.0; }

double ReluBatchObjective::value_flops() const {
  double macs = 0.0;
  for (std::size_t l = 1; l < widths_.size(); ++l) macs += static_cast<double>((widths_[l - 1] + 1) * widths_[l]);
  return 2.0 * macs * static_cast<double>(inputs_.cols());
}

BatchObjectivePtr build_relu_net(const ReluNetSpec& spec) {
  spec.validate();
  const std::size_t total = spec.inputs.size();
  const std::size_t base = total / spec.batches;
  const std::size_t extra = total % spec.batches;
  std::vector<ObjectivePtr> components;
  std::size_t start = 0;
  for (std::size_t b = 0; b < spec.batches; ++b) {
    const std::size_t count = base + (b < extra ? 1 : 0);
    Matrix inputs(spec.widths.front(), static_cast<Index>(count));
    Vector targets(static_cast<Index>(count));
    for (std::size_t s = 0; s < count; ++s) {
      inputs.col(static_cast<Index>(s)) = spec.inputs[start + s];
      targets[static_cast<Index>(s)] = spec.targets[start + s];
    }
    components.push_back(
        std::make_shared<ReluBatchObjective>(spec.widths, std::move(inputs), std::move(targets), spec.loss));
    start += count;
  }
  return std::make_shared<BatchObjective>(std::move(components), false);
}

std::vector<Index> synthetic_widths(Index width, Index layers) {
  NSBENCH_REQUIRE(width > 0 && layers > 0, "synthetic_widths: width and layers must be positive");
  std::vector<Index> widths(static_cast<std::size_t>(layers), width);
  widths.push_back(1);
  return widths;
}

namespace {

Vector random_parameters(const std::vector<Index>& widths, Rng& rng, double bias_scale) {
  Vector x(relu_parameter_count(widths));
  Index offset = 0;
  for (std::size_t l = 1; l < widths.size(); ++l) {
    const Index fan_in = widths[l - 1];
    const Index fan_out = widths[l];
    const double scale = std::sqrt(2.0 / static_cast<double>(fan_in));
    for (Index k = 0; k < fan_in * fan_out; ++k) x[offset++] = scale * standard_normal(rng);
    for (Index k = 0; k < fan_out; ++k) x[offset++] = bias_scale * standard_normal(rng);
  }
  return x;
}

}  // namespace

ReluNetSpec make_synthetic_relu_spec(const SyntheticReluOptions& options) {
  NSBENCH_REQUIRE(options.batches >= 1 && options.samples_per_batch >= 1,
                  "make_synthetic_relu_spec: need at least one batch and one sample per batch");
  NSBENCH_REQUIRE(options.noise >= 0.0, "make_synthetic_relu_spec: noise must be nonnegative");
  ReluNetSpec spec;
  spec.widths = synthetic_widths(options.width, options.layers);
  spec.loss = options.loss;
  spec.batches = options.batches;

  Rng input_rng(derive_seed(options.seed, {1}));
  Rng teacher_rng(derive_seed(options.seed, {2}));
  Rng noise_rng(derive_seed(options.seed, {3}));

  const Vector teacher = random_parameters(spec.widths, teacher_rng, 0.1);
  const std::size_t total = options.batches * options.samples_per_batch;
  Matrix inputs(options.width, static_cast<Index>(total));
  for (std::size_t s = 0; s < total; ++s) inputs.col(static_cast<Index>(s)) = normal_vector(input_rng, options.width);

  const ReluBatchObjective teacher_net(spec.widths, inputs, Vector::Zero(static_cast<Index>(total)),
                                       LossKind::squared);
  const Vector clean = teacher_net.predict(teacher);

  spec.inputs.reserve(total);
  spec.targets.reserve(total);
  for (std::size_t s = 0; s < total; ++s) {
    spec.inputs.emplace_back(inputs.col(static_cast<Index>(s)));
    spec.targets.push_back(clean[static_cast<Index>(s)] + options.noise * standard_normal(noise_rng));
  }
  return spec;
}

Vector relu_initial_point(const std::vector<Index>& widths, std::uint64_t seed) {
  Rng rng(derive_seed(seed, {4}));
  return random_parameters(widths, rng, 0.0);
}

}  // namespace nsbench
