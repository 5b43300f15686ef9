#pragma once

#include <cstdint>
#include <vector>

#include "nsbench/batch.hpp"

namespace nsbench {

enum class LossKind { absolute, squared };

// Fully connected network: widths.front() is the input dimension, widths.back()
// is the (scalar) output. Hidden layers apply max(0, Wz + b); the output layer
// is affine.
struct ReluNetSpec {
  std::vector<Index> widths;
  std::vector<Vector> inputs;
  std::vector<double> targets;
  LossKind loss = LossKind::absolute;
  std::size_t batches = 1;

  Index parameter_count() const;
  void validate() const;
};

Index relu_parameter_count(const std::vector<Index>& widths);

// Mean loss of the network over one batch of samples; the decision variable is
// the concatenation over layers of (column-major weight matrix, bias vector).
class ReluBatchObjective final : public Objective {
 public:
  ReluBatchObjective(std::vector<Index> widths, Matrix inputs, Vector targets, LossKind loss);

  Index dimension() const override { return dimension_; }
  bool differentiable_at(const Vector& x) const override;
  double value_flops() const override;
  double subgradient_flops() const override { return 3.0 * value_flops(); }

  Vector predict(const Vector& params) const;
  // Smallest |pre-activation| over all hidden units and samples, and for the
  // absolute loss also the smallest |residual|. Zero means x sits on a kink.
  double kink_margin(const Vector& params) const;

  Index sample_count() const { return inputs_.cols(); }

 protected:
  double do_value(const Vector& x) const override;
  Vector do_subgradient(const Vector& x) const override;
  Evaluation do_evaluate(const Vector& x) const override;

 private:
  struct Forward {
    std::vector<Matrix> pre;   // per hidden layer
    std::vector<Matrix> post;  // post[0] = inputs, post[l] = relu(pre[l-1])
    Eigen::RowVectorXd output;
  };

  Forward forward(const Vector& x) const;
  double loss_of(const Eigen::RowVectorXd& residual) const;

  std::vector<Index> widths_;
  std::vector<Index> offsets_;
  Matrix inputs_;
  Eigen::RowVectorXd targets_;
  LossKind loss_;
  Index dimension_;
};

// One component per batch; samples are split into contiguous, near-equal chunks.
BatchObjectivePtr build_relu_net(const ReluNetSpec& spec);

struct SyntheticReluOptions {
  Index width = 16;
  Index layers = 3;  // weight layers; layers - 1 hidden ReLU layers
  std::size_t batches = 5;
  std::size_t samples_per_batch = 200;
  double noise = 0.1;
  LossKind loss = LossKind::absolute;
  std::uint64_t seed = 0;
};

std::vector<Index> synthetic_widths(Index width, Index layers);

// Standard-normal inputs, targets from a planted ReLU teacher of the same
// architecture plus Gaussian noise.
ReluNetSpec make_synthetic_relu_spec(const SyntheticReluOptions& options);

// He-normal weights and zero biases.
Vector relu_initial_point(const std::vector<Index>& widths, std::uint64_t seed);

}  // namespace nsbench
