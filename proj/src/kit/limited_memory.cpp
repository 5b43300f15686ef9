#include "nsbench/kit/limited_memory.hpp"

#include "nsbench/errors.hpp"

namespace nsbench::kit {

LimitedMemory::LimitedMemory(Index dimension, LimitedMemoryParams params) : dimension_(dimension), params_(params) {
  NSBENCH_REQUIRE(dimension > 0, "LimitedMemory: dimension must be positive");
  NSBENCH_REQUIRE(params.capacity > 0, "LimitedMemory: capacity must be positive");
}

Vector LimitedMemory::apply_prefix(std::size_t levels, const Vector& v) const {
  // Down pass records the coefficients of each level, up pass applies them.
  std::vector<double> coeff(levels, 0.0);
  Vector q = v;
  for (std::size_t j = levels; j-- > 0;) {
    if (!active_[j]) continue;
    const auto& p = pairs_[j];
    if (p.kind == PairKind::bfgs) {
      coeff[j] = rho_[j] * p.s.dot(q);
      q.noalias() -= coeff[j] * p.u;
    } else {
      coeff[j] = sr1_r_[j].dot(q) / sr1_denominator_[j];
    }
  }
  Vector z = scaling_ * q;
  for (std::size_t j = 0; j < levels; ++j) {
    if (!active_[j]) continue;
    const auto& p = pairs_[j];
    if (p.kind == PairKind::bfgs) {
      const double b = rho_[j] * p.u.dot(z);
      z.noalias() += (coeff[j] - b) * p.s;
    } else {
      z.noalias() += coeff[j] * sr1_r_[j];
    }
  }
  return z;
}

Vector LimitedMemory::apply(const Vector& v) const {
  NSBENCH_REQUIRE(v.size() == dimension_, "lm_apply: dimension mismatch");
  return apply_prefix(pairs_.size(), v);
}

void LimitedMemory::rebuild() {
  const std::size_t m = pairs_.size();
  active_.assign(m, true);
  rho_.assign(m, 0.0);
  sr1_r_.assign(m, Vector());
  sr1_denominator_.assign(m, 0.0);
  scaling_ = 1.0;
  for (std::size_t j = m; j-- > 0;) {
    if (pairs_[j].kind == PairKind::bfgs) {
      scaling_ = pairs_[j].s.dot(pairs_[j].u) / pairs_[j].u.squaredNorm();
      break;
    }
  }
  for (std::size_t j = 0; j < m; ++j) {
    const auto& p = pairs_[j];
    if (p.kind == PairKind::bfgs) {
      rho_[j] = 1.0 / p.s.dot(p.u);
      continue;
    }
    Vector r = p.s - apply_prefix(j, p.u);
    const double denom = p.u.dot(r);
    if (denom > params_.sr1_eps * p.u.norm() * r.norm()) {
      sr1_r_[j] = std::move(r);
      sr1_denominator_[j] = denom;
    } else {
      active_[j] = false;
    }
  }
}

LimitedMemory LimitedMemory::updated(const Vector& s, const Vector& u, StepKind kind) const {
  NSBENCH_REQUIRE(s.size() == dimension_ && u.size() == dimension_, "lm_update: dimension mismatch");
  LimitedMemory next = *this;
  bool accept = false;
  PairKind pair_kind = PairKind::bfgs;
  if (kind == StepKind::serious) {
    accept = s.dot(u) > params_.curvature_eps * s.norm() * u.norm();
  } else {
    pair_kind = PairKind::sr1;
    const Vector r = s - apply(u);
    accept = u.dot(r) > params_.sr1_eps * u.norm() * r.norm();
  }
  if (!accept || !s.allFinite() || !u.allFinite()) {
    ++next.skipped_;
    return next;
  }
  next.pairs_.push_back({s, u, pair_kind});
  if (next.pairs_.size() > params_.capacity) next.pairs_.erase(next.pairs_.begin());
  next.rebuild();
  return next;
}

double LimitedMemory::apply_flops() const {
  return static_cast<double>(dimension_) * (4.0 * static_cast<double>(pairs_.size()) + 1.0);
}

Vector lm_apply(const LimitedMemory& mem, const Vector& v) { return mem.apply(v); }

LimitedMemory lm_update(const LimitedMemory& mem, const Vector& s, const Vector& u, StepKind kind) {
  return mem.updated(s, u, kind);
}

}  // namespace nsbench::kit
