#include "nsbench/oracle.hpp"

namespace nsbench {

double ObjectiveOracle::value(const Vector& x) {
  counts_.values += obj_.component_count();
  charge(obj_.value_flops());
  return obj_.value(x);
}

Vector ObjectiveOracle::subgradient(const Vector& x) {
  counts_.subgradients += obj_.component_count();
  charge(obj_.subgradient_flops());
  return obj_.subgradient(x);
}

Evaluation ObjectiveOracle::evaluate(const Vector& x) {
  counts_.values += obj_.component_count();
  counts_.subgradients += obj_.component_count();
  charge(obj_.subgradient_flops());
  return obj_.evaluate(x);
}

double RandomBatchOracle::value(const Vector& x) {
  counts_.values += bobj_.component_count();
  charge(bobj_.value_flops());
  return bobj_.value(x);
}

Vector RandomBatchOracle::subgradient(const Vector& x) {
  auto [index, g] = random_batch_gradient(bobj_, x, rng_);
  counts_.subgradients += 1;
  charge(bobj_.component(index).subgradient_flops());
  return std::move(g);
}

Evaluation RandomBatchOracle::evaluate(const Vector& x) {
  Evaluation e;
  e.value = value(x);
  e.subgradient = subgradient(x);
  return e;
}

}  // namespace nsbench
