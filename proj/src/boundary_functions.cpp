#include "bellsq/boundary_functions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bellsq/errors.hpp"

namespace bellsq {

const char* to_string(Shape s) {
  switch (s) {
    case Shape::D2_NONINCREASING:
      return "D2_NONINCREASING";
    case Shape::D2_NONDECREASING:
      return "D2_NONDECREASING";
    case Shape::SINGLE_CUP:
      return "SINGLE_CUP";
    case Shape::INDICATOR:
      return "INDICATOR";
  }
  return "?";
}

BoundaryFunction::BoundaryFunction(Spec spec) : spec_(std::move(spec)) {
  if (!spec_.f) throw std::invalid_argument("BoundaryFunction: f is required");
}

double BoundaryFunction::d1(double t) const {
  if (!spec_.d1) throw DomainError(spec_.name + ": f' is not defined");
  return spec_.d1(t);
}

double BoundaryFunction::d2(double t) const {
  if (!spec_.d2) throw DomainError(spec_.name + ": f'' is not defined");
  return spec_.d2(t);
}

BoundaryFunction exp_payoff(double lambda) {
  if (!std::isfinite(lambda)) throw DomainError("exp_payoff: lambda must be finite");
  BoundaryFunction::Spec s;
  std::ostringstream name;
  name << "exp:" << lambda;
  s.name = name.str();
  s.f = [lambda](double t) { return std::exp(lambda * t); };
  s.d1 = [lambda](double t) { return lambda * std::exp(lambda * t); };
  s.d2 = [lambda](double t) { return lambda * lambda * std::exp(lambda * t); };
  s.shape = lambda < 0.0 ? Shape::D2_NONINCREASING : Shape::D2_NONDECREASING;
  s.growth_right = std::max(lambda, 0.0);
  s.growth_left = std::max(-lambda, 0.0);
  s.growth_bound = lambda == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / std::abs(lambda);
  s.kind = PayoffKind::Exp;
  s.param = lambda;
  return BoundaryFunction(std::move(s));
}

BoundaryFunction power_payoff(double p) {
  if (!(p >= 1.0 && p <= 2.0)) {
    std::ostringstream msg;
    msg << "power_payoff: p = " << p << " is outside [1, 2]";
    throw DomainError(msg.str());
  }
  BoundaryFunction::Spec s;
  std::ostringstream name;
  name << "power:" << p;
  s.name = name.str();
  s.f = [p](double t) { return std::pow(std::abs(t), p); };
  s.d1 = [p](double t) {
    if (t == 0.0) return 0.0;
    return std::copysign(p * std::pow(std::abs(t), p - 1.0), t);
  };
  s.d2 = [p](double t) {
    if (p == 1.0) return 0.0;
    if (p == 2.0) return 2.0;
    if (t == 0.0) return std::numeric_limits<double>::infinity();
    return p * (p - 1.0) * std::pow(std::abs(t), p - 2.0);
  };
  s.shape = Shape::SINGLE_CUP;
  s.vertex = 0.0;
  s.symmetric_about_vertex = true;
  s.kind = PayoffKind::Power;
  s.param = p;
  return BoundaryFunction(std::move(s));
}

BoundaryFunction indicator_payoff() {
  BoundaryFunction::Spec s;
  s.name = "indicator";
  s.f = [](double t) { return t >= 0.0 ? 1.0 : 0.0; };
  s.shape = Shape::INDICATOR;
  s.kind = PayoffKind::Indicator;
  return BoundaryFunction(std::move(s));
}

BoundaryFunction make_payoff(const std::string& spec) {
  if (spec == "indicator") return indicator_payoff();
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw DomainError("unknown payoff '" + spec + "'");
  const std::string kind = spec.substr(0, colon);
  const std::string arg = spec.substr(colon + 1);
  double value = 0.0;
  try {
    std::size_t used = 0;
    value = std::stod(arg, &used);
    if (used != arg.size()) throw std::invalid_argument(arg);
  } catch (const std::exception&) {
    throw DomainError("bad payoff parameter in '" + spec + "'");
  }
  if (kind == "exp") return exp_payoff(value);
  if (kind == "power") return power_payoff(value);
  throw DomainError("unknown payoff '" + spec + "'");
}

VerificationReport check_shape(const BoundaryFunction& f, std::vector<double> grid, double tolerance) {
  if (!f.has_derivatives()) throw DomainError("check_shape: " + f.name() + " has no f''");
  std::sort(grid.begin(), grid.end());
  VerificationReport report;
  report.suite = "shape:" + std::string(to_string(f.shape()));
  report.tolerance = tolerance;

  const bool cup = f.shape() == Shape::SINGLE_CUP;
  std::vector<double> ts;
  std::vector<double> d2;
  double scale = 0.0;
  for (double t : grid) {
    if (cup && t == f.vertex()) continue;
    const double v = f.d2(t);
    ts.push_back(t);
    d2.push_back(v);
    scale = std::max(scale, std::abs(v));
  }
  scale = std::max(scale, 1.0);
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    const double drop = (d2[i] - d2[i + 1]) / scale;  // > 0 when f'' decreases
    double violation = 0.0;
    switch (f.shape()) {
      case Shape::D2_NONDECREASING:
        violation = drop;
        break;
      case Shape::D2_NONINCREASING:
        violation = -drop;
        break;
      case Shape::SINGLE_CUP:
        if (ts[i + 1] < f.vertex()) {
          violation = drop;
        } else if (ts[i] > f.vertex()) {
          violation = -drop;
        } else {
          continue;  // pair straddles the vertex
        }
        break;
      case Shape::INDICATOR:
        break;
    }
    report.record(violation, {ts[i], ts[i + 1]});
  }
  report.finalize();
  return report;
}

}  // namespace bellsq
