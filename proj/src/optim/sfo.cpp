#include "nsbench/optim/sfo.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "nsbench/errors.hpp"

namespace nsbench::optim {

void SfoParams::validate() const {
  NSBENCH_REQUIRE(initial_step > 0.0, "sfo: initial_step must be positive");
  NSBENCH_REQUIRE(eigenvalue_floor > 0.0, "sfo: eigenvalue_floor must be positive");
}

namespace {

constexpr double kNewDirectionTol = 1e-10;

void charge(RunClock* clock, double flops) {
  if (clock != nullptr) clock->charge(flops);
}

// Appends the part of v orthogonal to the basis, padding every model. Returns
// true when the subspace grew.
bool expand(SfoState& s, const Vector& v) {
  const double norm = v.norm();
  if (norm == 0.0) return false;
  Vector r = v;
  for (int pass = 0; pass < 2; ++pass) r -= s.basis * (s.basis.transpose() * r);
  const double rn = r.norm();
  if (rn <= kNewDirectionTol * norm) return false;

  const Index k = s.basis.cols();
  s.basis.conservativeResize(Eigen::NoChange, k + 1);
  s.basis.col(k) = r / rn;
  s.coords.conservativeResize(k + 1);
  s.coords[k] = 0.0;
  for (auto& m : s.batches) {
    if (!m.visited) continue;
    m.position.conservativeResize(k + 1);
    m.position[k] = 0.0;
    m.gradient.conservativeResize(k + 1);
    m.gradient[k] = 0.0;
    m.curvature.conservativeResize(k + 1, k + 1);
    m.curvature.row(k).setZero();
    m.curvature.col(k).setZero();
    m.curvature(k, k) = m.scale;
  }
  return true;
}

// Re-expresses everything in the span of x and the visited positions and
// gradients, keeping at most `cap` directions.
void collapse(SfoState& s, RunClock* clock) {
  const Index k = s.basis.cols();
  std::vector<Vector> columns;
  for (const auto& m : s.batches) {
    if (!m.visited) continue;
    columns.push_back(m.position);
    columns.push_back(m.gradient);
  }
  Matrix rotation(k, 0);
  const double cn = s.coords.norm();
  Vector lead = Vector::Zero(k);
  if (cn > 0.0) {
    lead = s.coords / cn;
    rotation.conservativeResize(Eigen::NoChange, 1);
    rotation.col(0) = lead;
  }
  Matrix rest(k, static_cast<Index>(columns.size()));
  for (std::size_t j = 0; j < columns.size(); ++j) {
    Vector c = columns[j];
    c -= lead * lead.dot(c);
    rest.col(static_cast<Index>(j)) = c;
  }
  const Index budget = static_cast<Index>(s.cap) - rotation.cols();
  if (rest.cols() > 0 && budget > 0) {
    Eigen::BDCSVD<Matrix> svd(rest, Eigen::ComputeThinU);
    const Vector sigma = svd.singularValues();
    const double top = sigma.size() > 0 ? sigma[0] : 0.0;
    Index keep = 0;
    while (keep < sigma.size() && keep < budget && sigma[keep] > 1e-12 * top && top > 0.0) ++keep;
    const Index base = rotation.cols();
    rotation.conservativeResize(Eigen::NoChange, base + keep);
    rotation.rightCols(keep) = svd.matrixU().leftCols(keep);
  }

  // Restore exact orthonormality of the new basis and fold the triangular
  // correction into the coordinates.
  const Matrix raw = s.basis * rotation;
  Eigen::HouseholderQR<Matrix> qr(raw);
  const Index kk = rotation.cols();
  Matrix q = qr.householderQ() * Matrix::Identity(raw.rows(), kk);
  Matrix t = qr.matrixQR().topRows(kk).triangularView<Eigen::Upper>();
  for (Index j = 0; j < kk; ++j) {
    if (t(j, j) < 0.0) {
      t.row(j) *= -1.0;
      q.col(j) *= -1.0;
    }
  }
  const Matrix t_inv = t.triangularView<Eigen::Upper>().solve(Matrix::Identity(kk, kk));
  // Old coordinates a map to new ones via T * R' a; curvature maps by the inverse transpose.
  const Matrix forward = t * rotation.transpose();
  const Matrix back = rotation * t_inv;

  s.basis = std::move(q);
  s.coords = forward * s.coords;
  for (auto& m : s.batches) {
    if (!m.visited) continue;
    m.position = forward * m.position;
    m.gradient = t_inv.transpose() * (rotation.transpose() * m.gradient);
    Matrix h = back.transpose() * m.curvature * back;
    m.curvature = 0.5 * (h + h.transpose());
  }
  const double n = static_cast<double>(raw.rows());
  charge(clock, 2.0 * n * static_cast<double>(k * kk) + 4.0 * n * static_cast<double>(kk * kk) +
                    10.0 * static_cast<double>(k * k * static_cast<Index>(columns.size() + 1)));
}

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

}  // namespace

SfoState sfo_init(const BatchObjective& bobj, const Vector& x0, const SfoParams& params) {
  params.validate();
  check_dimension(bobj, x0);
  SfoState s;
  s.params = params;
  s.x = x0;
  s.basis = Matrix(bobj.dimension(), 0);
  s.coords = Vector(0);
  s.batches.resize(bobj.size());
  s.cap = params.subspace_cap > 0 ? params.subspace_cap : 2 * bobj.size() + 4;
  NSBENCH_REQUIRE(s.cap >= 2, "sfo: subspace cap must be at least 2");
  expand(s, x0);
  s.coords = s.basis.transpose() * x0;
  return s;
}

std::pair<SfoState, Vector> sfo_step(SfoState s, const BatchObjective& bobj, RunClock* clock, OracleCounts* counts) {
  NSBENCH_REQUIRE(s.batches.size() == bobj.size(), "sfo_step: state built for a different batch count");
  check_dimension(bobj, s.x);
  const double n = static_cast<double>(bobj.dimension());

  std::size_t pick = 0;
  for (std::size_t i = 1; i < s.batches.size(); ++i) {
    if (s.batches[i].last_visit < s.batches[pick].last_visit) pick = i;
  }

  const Objective& component = bobj.component(pick);
  Evaluation e = component.evaluate(s.x);
  if (counts != nullptr) {
    counts->values += 1;
    counts->subgradients += 1;
  }
  charge(clock, component.subgradient_flops());

  const Index before = s.basis.cols();
  expand(s, e.subgradient);
  expand(s, s.x);
  s.coords = s.basis.transpose() * s.x;
  charge(clock, 10.0 * n * static_cast<double>(s.basis.cols()));

  const Vector grad_coords = s.basis.transpose() * e.subgradient;
  const Index k = s.basis.cols();
  SfoBatchModel& model = s.batches[pick];
  if (model.visited) {
    const Vector step = s.coords - model.position;
    const Vector change = grad_coords - model.gradient;
    const double curvature = step.dot(change);
    if (curvature > 1e-12 * step.norm() * change.norm() && step.norm() > 0.0) {
      const Vector hs = model.curvature * step;
      const double shs = step.dot(hs);
      if (shs > 0.0) {
        model.curvature += change * change.transpose() / curvature - hs * hs.transpose() / shs;
        model.curvature = 0.5 * (model.curvature + model.curvature.transpose());
      } else {
        ++s.skipped_updates;
      }
    } else {
      ++s.skipped_updates;
    }
  } else {
    std::vector<double> eigenvalues;
    for (const auto& other : s.batches) {
      if (!other.visited) continue;
      Eigen::SelfAdjointEigenSolver<Matrix> eig(other.curvature, Eigen::EigenvaluesOnly);
      for (Index j = 0; j < eig.eigenvalues().size(); ++j) eigenvalues.push_back(eig.eigenvalues()[j]);
      charge(clock, 10.0 * static_cast<double>(k * k * k));
    }
    double scale;
    if (!eigenvalues.empty()) {
      scale = median(std::move(eigenvalues));
    } else {
      const double gn = e.subgradient.norm();
      scale = gn > 0.0 ? gn / s.params.initial_step : 1.0;
    }
    scale = std::max(scale, s.params.eigenvalue_floor);
    model.visited = true;
    model.scale = scale;
    model.curvature = scale * Matrix::Identity(k, k);
  }
  model.f = e.value;
  model.position = s.coords;
  model.gradient = grad_coords;
  model.last_visit = s.steps;

  if (static_cast<std::size_t>(s.basis.cols()) > s.cap) collapse(s, clock);
  (void)before;

  // Minimize the sum of the visited models.
  const Index kk = s.basis.cols();
  Matrix h_sum = Matrix::Zero(kk, kk);
  Vector g_sum = Vector::Zero(kk);
  for (const auto& m : s.batches) {
    if (!m.visited) continue;
    h_sum += m.curvature;
    g_sum += m.gradient + m.curvature * (s.coords - m.position);
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (h_sum + h_sum.transpose()));
  Vector lambda = eig.eigenvalues().cwiseMax(s.params.eigenvalue_floor);
  s.last_min_eigenvalue = lambda.size() > 0 ? lambda.minCoeff() : s.params.eigenvalue_floor;
  const Vector delta = -eig.eigenvectors() * ((eig.eigenvectors().transpose() * g_sum).cwiseQuotient(lambda));
  s.coords += delta;
  s.x = s.basis * s.coords;
  const double visited = static_cast<double>(std::count_if(s.batches.begin(), s.batches.end(),
                                                           [](const SfoBatchModel& m) { return m.visited; }));
  charge(clock, 2.0 * visited * static_cast<double>(kk * kk) + 10.0 * static_cast<double>(kk * kk * kk) +
                    2.0 * n * static_cast<double>(kk));
  s.steps += 1;
  if (!s.x.allFinite()) throw NumericalDomainError("sfo_step: iterate is not finite");
  Vector x = s.x;
  return {std::move(s), std::move(x)};
}

RunResult sfo_run(const BatchObjective& bobj, const Vector& x0, std::int64_t budget, const SfoParams& params,
                  RunClock* clock) {
  NSBENCH_REQUIRE(budget >= 1, "sfo_run: budget must be at least 1");
  WorkClock fallback;
  RunClock& timer = clock != nullptr ? *clock : fallback;
  TrajectoryRecorder recorder(timer);
  OracleCounts counts;
  recorder.record(0, bobj.value(x0), counts);

  SfoState state;
  {
    TimedSection timed(timer);
    state = sfo_init(bobj, x0, params);
  }
  for (std::int64_t k = 1; k <= budget; ++k) {
    {
      TimedSection timed(timer);
      auto [next, x] = sfo_step(std::move(state), bobj, &timer, &counts);
      state = std::move(next);
    }
    recorder.record(k, bobj.value(state.x), counts);
  }
  return {recorder.take(), state.x, false};
}

}  // namespace nsbench::optim
