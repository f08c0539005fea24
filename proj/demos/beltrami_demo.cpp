// Minimal library walkthrough: constant-curvature metrics through the
// conformal Beltrami check and the twistor quartic type.

#include <iostream>

#include "weylkit/metrizability.hpp"
#include "weylkit/parser.hpp"
#include "weylkit/quartic.hpp"

using namespace weylkit;

int main() {
  auto chart = Chart::standard(3);

  auto conf = [&](const char* factor) {
    return MetricField::conformally_flat(chart, parse_expr(factor, chart));
  };

  struct Item {
    const char* name;
    MetricField metric;
  };
  std::vector<Item> items;
  items.push_back({"flat delta", MetricField::euclidean(chart)});
  items.push_back({"round sphere", conf("4/(1+x0^2+x1^2+x2^2)^2")});
  items.push_back({"hyperbolic ball", conf("4/(1-x0^2-x1^2-x2^2)^2")});
  {
    TensorField g(chart, {Variance::Co, Variance::Co});
    g.at({0, 0}) = Expr::one(chart);
    g.at({1, 1}) = parse_expr("1+x0^2", chart);
    g.at({2, 2}) = parse_expr("1+x1^2", chart);
    items.push_back({"diag(1, 1+x0^2, 1+x1^2)", MetricField(chart, g)});
  }

  for (auto& item : items) {
    BeltramiVerdict v = beltrami_check(WeylStructureField::closed(item.metric));
    auto tt = twistor_quartic_type(item.metric);
    std::cout << item.name << ": projectively flat = " << (v.projectively_flat ? "yes" : "no")
              << ", conformally flat = " << (v.conformally_flat ? "yes" : "no")
              << ", twistor type = "
              << (tt.kind == TwistorQuarticType::Kind::Zero ? "Zero" : "TypeN") << "\n";
  }

  // the central exact identity behind the bridge theorems
  std::vector<Expr> beta = {parse_expr("x1", chart), Expr::zero(chart), Expr::zero(chart)};
  WeylStructureField w(MetricField::euclidean(chart), beta);
  std::cout << "Q-P identity residual vanishes for (delta, x1 dx0): "
            << (verify_qp_identity(w).is_zero() ? "yes" : "no") << "\n";
  return 0;
}
