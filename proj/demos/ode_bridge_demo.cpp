// Round trip between a connection's Thomas symbols and its geodesic ODE pair.

#include <iostream>

#include "weylkit/parser.hpp"
#include "weylkit/projective.hpp"

using namespace weylkit;

int main() {
  auto base = Chart::standard(3);
  auto fiber = Chart::with_fiber();

  ConnectionField conn(base);
  conn.set_gamma(0, 1, 1, Expr::one(base));
  conn.set_gamma(1, 0, 0, parse_expr("x2/2", base));

  ODEPair odes = odes_from_connection(conn, fiber);
  std::cout << "xdd1 = " << odes.F1.to_string() << "\n";
  std::cout << "xdd2 = " << odes.F2.to_string() << "\n";
  std::cout << "projective point class: " << (odepair_is_projective(odes) ? "yes" : "no") << "\n";

  ThomasSymbols pi = thomas_from_odes(odes);
  ODEPair back = odes_from_connection(pi.as_connection(), fiber);
  bool round_trip = (back.F1 - odes.F1).is_zero() && (back.F2 - odes.F2).is_zero();
  std::cout << "thomas_from_odes round trip: " << (round_trip ? "ok" : "MISMATCH") << "\n";

  ODEPair quartic(fiber, parse_expr("p1^4", fiber), Expr::zero(fiber));
  std::cout << "p1^4 pair is projective: " << (odepair_is_projective(quartic) ? "yes" : "no")
            << "\n";
  return 0;
}
