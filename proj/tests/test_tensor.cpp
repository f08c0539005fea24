#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace weylkit;
using wktest::Rng;

TEST_CASE("contract examples", "[tensor]") {
  auto c = Chart::standard(3);
  TensorField delta = TensorField::kronecker(c);
  TensorField tr = delta.contract(0, 1);
  CHECK(tr.at({}) == Expr::integer(c, 3));

  TensorField u(c, {Variance::Contra});
  TensorField w(c, {Variance::Co});
  for (int i = 0; i < 3; ++i) {
    u.at({i}) = Expr::integer(c, i + 1);
    w.at({i}) = Expr::one(c);
  }
  CHECK(outer(u, w).contract(0, 1).at({}) == Expr::integer(c, 6));

  // eps^{ij} eps_{jk} = delta^i_k for eps = diag(1, e, e)
  for (int eps : {1, -1}) {
    TensorField g(c, {Variance::Co, Variance::Co});
    g.at({0, 0}) = Expr::one(c);
    g.at({1, 1}) = Expr::integer(c, eps);
    g.at({2, 2}) = Expr::integer(c, eps);
    MetricField m(c, g, eps);
    TensorField prod = outer(m.inverse(), m.tensor()).contract(1, 2);
    CHECK(prod == TensorField::kronecker(c));
  }
}

TEST_CASE("contract rejects variance mismatch without metric", "[tensor]") {
  auto c = Chart::standard(3);
  TensorField t(c, {Variance::Co, Variance::Co});
  CHECK_THROWS_AS(t.contract(0, 1), std::invalid_argument);
}

TEST_CASE("symmetrize and antisymmetrize", "[tensor]") {
  auto c2 = Chart::standard(2);
  // alpha_[ij] of a symmetric alpha vanishes
  TensorField sym(c2, {Variance::Co, Variance::Co});
  sym.at({0, 0}) = Expr::one(c2);
  sym.at({0, 1}) = Expr::integer(c2, 2);
  sym.at({1, 0}) = Expr::integer(c2, 2);
  sym.at({1, 1}) = Expr::integer(c2, 5);
  CHECK(sym.antisymmetrize({0, 1}).is_zero());

  // alpha_(ij)k with an i-major counter equals (alpha_ijk + alpha_jik)/2 entrywise
  TensorField a(c2, {Variance::Co, Variance::Co, Variance::Co});
  int counter = 0;
  a.for_each_index([&](const std::vector<int>& I) { a.at(I) = Expr::integer(c2, ++counter); });
  TensorField s = a.symmetrize({0, 1});
  a.for_each_index([&](const std::vector<int>& I) {
    Expr expect = (a.at(I) + a.at({I[1], I[0], I[2]})) * Expr::rational(c2, Rat(1, 2));
    CHECK((s.at(I) - expect).is_zero());
  });

  // antisymmetrizing thrice equals once (projector property)
  auto c3 = Chart::standard(3);
  TensorField b(c3, {Variance::Co, Variance::Co, Variance::Co});
  Rng rng(42);
  b.for_each_index([&](const std::vector<int>& I) { b.at(I) = wktest::rat_expr(c3, rng.rat()); });
  TensorField once = b.antisymmetrize({0, 1, 2});
  CHECK((once.antisymmetrize({0, 1, 2}).antisymmetrize({0, 1, 2}) - once).is_zero());
  TensorField sym_once = b.symmetrize({0, 1, 2});
  CHECK((sym_once.symmetrize({0, 1, 2}) - sym_once).is_zero());
}

TEST_CASE("covariant derivative examples", "[tensor]") {
  auto c = Chart::standard(3);
  Rng rng(7);
  ConnectionField conn = wktest::random_connection(rng, c);
  // kronecker delta is parallel for every connection
  CHECK(covariant_derivative(TensorField::kronecker(c), conn).is_zero());
  // flat metric, zero connection
  MetricField flat = MetricField::euclidean(c);
  CHECK(covariant_derivative(flat.tensor(), ConnectionField::zero(c)).is_zero());
  // the Weyl defining property D_k g_ij = 2 b_k g_ij
  std::vector<Expr> beta = wktest::random_covector(rng, c);
  WeylStructureField w(flat, beta);
  TensorField Dg = covariant_derivative(flat.tensor(), weyl_connection(w));
  TensorField expect(c, {Variance::Co, Variance::Co, Variance::Co});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        expect.at({i, j, k}) = Expr::integer(c, 2) * beta[static_cast<std::size_t>(k)] * flat.entry(i, j);
  CHECK((Dg - expect).is_zero());
  // on scalars it is the coordinate gradient
  TensorField s = TensorField::scalar(c, parse_expr("x0^2*x1 + x2", c));
  TensorField Ds = covariant_derivative(s, conn);
  CHECK(Ds.at({0}) == parse_expr("2*x0*x1", c));
  CHECK(Ds.at({1}) == parse_expr("x0^2", c));
  CHECK(Ds.at({2}) == Expr::one(c));
}

TEST_CASE("covariant derivative rejects chart mismatch", "[tensor]") {
  auto c = Chart::standard(3);
  auto c4 = Chart::standard(4);
  CHECK_THROWS(covariant_derivative(TensorField::kronecker(c), ConnectionField::zero(c4)));
}

TEST_CASE("Ricci identity fixes the curvature convention", "[tensor][property]") {
  auto c = Chart::standard(3);
  Rng rng(1234);
  for (int trial = 0; trial < 10; ++trial) {
    ConnectionField conn = wktest::random_connection(rng, c, 4);
    Curvature cur = curvature(conn);
    TensorField v(c, {Variance::Contra});
    for (int i = 0; i < 3; ++i) v.at({i}) = wktest::random_linear(rng, c);
    TensorField Dv = covariant_derivative(v, conn);   // slots (i, inner)
    TensorField DDv = covariant_derivative(Dv, conn); // slots (i, inner, outer)
    // D_k D_l v^i - D_l D_k v^i = R^i_jkl v^j; the outer derivative is the
    // last slot, so D_k D_l v^i sits at DDv(i, l, k)
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
          Expr lhs = DDv.at({i, l, k}) - DDv.at({i, k, l});
          Expr rhs = Expr::zero(c);
          for (int j = 0; j < 3; ++j) rhs = rhs + cur.riemann.at({i, j, k, l}) * v.at({j});
          REQUIRE((lhs - rhs).is_zero());
        }
  }
}

TEST_CASE("raising then lowering is the identity", "[tensor][property]") {
  auto c = Chart::standard(3);
  Rng rng(99);
  MetricField g = wktest::random_metric(rng, c);
  TensorField t(c, {Variance::Co, Variance::Co});
  t.for_each_index([&](const std::vector<int>& I) { t.at(I) = wktest::random_linear(rng, c); });
  TensorField up = g.raise(t, 0);
  CHECK((g.lower(up, 0) - t).is_zero());
  TensorField up2 = g.raise(t, 1);
  CHECK((g.lower(up2, 1) - t).is_zero());
}

TEST_CASE("tensors serialize into nested arrays of canonical strings", "[tensor]") {
  auto c = Chart::standard(2);
  TensorField t(c, {Variance::Co});
  t.at({0}) = parse_expr("x0/2", c);
  t.at({1}) = parse_expr("(x0+x1)^2", c);
  CHECK(t.at({1}).to_string() == "x0^2 + 2*x0*x1 + x1^2");
  CHECK(parse_expr(t.at({0}).to_string(), c) == t.at({0}));
}
