#include "nsbench/stationarity.hpp"

#include <algorithm>
#include <limits>

#include "nsbench/errors.hpp"

namespace nsbench {

double one_sided_derivative(const Objective& f, const Vector& x, const Vector& d) {
  if (auto exact = f.directional_derivative(x, d)) return *exact;
  const double h = kForwardDifferenceStep;
  return (f.value(x + h * d) - f.value(x)) / h;
}

StationarityReport stationarity_report(const Objective& f, const Vector& x, const std::vector<Vector>& directions) {
  check_dimension(f, x);
  NSBENCH_REQUIRE(!directions.empty(), "stationarity_report: no directions supplied");

  StationarityReport report;
  const Index n = x.size();
  for (Index i = 0; i < n; ++i) {
    Vector e = Vector::Unit(n, i);
    const double forward = one_sided_derivative(f, x, e);
    const double backward = one_sided_derivative(f, x, -e);
    report.coordinatewise = std::max(report.coordinatewise, std::max(0.0, -std::min(forward, backward)));
  }

  report.directional = std::numeric_limits<double>::infinity();
  for (const Vector& d : directions) {
    NSBENCH_REQUIRE(d.size() == n, "stationarity_report: direction has wrong dimension");
    const double norm = d.norm();
    NSBENCH_REQUIRE(norm > 0.0, "stationarity_report: zero direction");
    const Vector unit = d / norm;
    const double slope = one_sided_derivative(f, x, unit);
    if (slope < report.directional) {
      report.directional = slope;
      report.witness = unit;
    }
  }
  return report;
}

StationarityReport stationarity_report(const PiecewisePieces& f, const Vector& x,
                                       const std::vector<Vector>& directions) {
  return stationarity_report(PiecewiseLinear({f}), x, directions);
}

}  // namespace nsbench
