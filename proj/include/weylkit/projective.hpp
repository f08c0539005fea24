#pragma once

#include <optional>

#include "weylkit/connection.hpp"

namespace weylkit {

namespace detail {

inline Expr zpoly_to_expr(const ZPoly& p, const ChartPtr& c) {
  Expr out = Expr::zero(c);
  for (auto& t : p.terms()) {
    Expr term = Expr::integer(c, t.c);
    for (int v = 0; v < c->nvars(); ++v)
      if (t.m.e[v]) term = term * Expr::variable(c, v).pow(t.m.e[v]);
    out = out + term;
  }
  return out;
}

// Rebuild an expression on a different chart, matching variables by name.
inline Expr reparse(const Expr& e, const ChartPtr& target) {
  const ChartPtr& src = e.chart();
  std::vector<int> map(static_cast<std::size_t>(src->nvars()));
  for (int v = 0; v < src->nvars(); ++v) {
    int idx = target->var_index(src->var_name(v));
    if (idx < 0) throw std::invalid_argument("target chart lacks variable " + src->var_name(v));
    map[static_cast<std::size_t>(v)] = idx;
  }
  auto move_poly = [&](const ZPoly& p) {
    ZPoly r(target->nvars());
    for (auto& t : p.terms()) {
      Monomial m;
      for (int v = 0; v < src->nvars(); ++v) m.e[map[static_cast<std::size_t>(v)]] = t.m.e[v];
      r = r + ZPoly::constant(target->nvars(), t.c).mul_mono(m, 1);
    }
    return r;
  };
  return zpoly_to_expr(move_poly(e.num()), target) / zpoly_to_expr(move_poly(e.den()), target);
}

inline int fiber_degree(const ZPoly& p) {
  int d = 0;
  for (auto& t : p.terms()) d = std::max(d, t.m.e[3] + t.m.e[4]);
  return d;
}

// substitute p1 = p2 = 0
inline Expr eval_fiber_at_zero(const Expr& e) {
  const ChartPtr& c = e.chart();
  auto strip = [&](const ZPoly& p) {
    ZPoly r(p.nvars());
    for (auto& t : p.terms())
      if (t.m.e[3] == 0 && t.m.e[4] == 0)
        r = r + ZPoly::constant(p.nvars(), t.c).mul_mono(t.m, 1);
    return r;
  };
  ZPoly n = strip(e.num()), d = strip(e.den());
  if (d.is_zero()) throw PoleError();
  return zpoly_to_expr(n, c) / zpoly_to_expr(d, c);
}

} // namespace detail

// Thomas symbols: the trace-free part of the Christoffel symbols,
// Pi^i_jk = Gamma^i_jk - (Gamma^l_lk d^i_j + Gamma^l_lj d^i_k)/(n+1);
// a complete first-order projective invariant (15 independent entries for n=3).
class ThomasSymbols {
public:
  explicit ThomasSymbols(ConnectionField c) : c_(std::move(c)) {}
  const ChartPtr& chart() const { return c_.chart(); }
  const Expr& pi(int i, int j, int k) const { return c_.gamma(i, j, k); }
  const ConnectionField& as_connection() const { return c_; }
  bool operator==(const ThomasSymbols& o) const { return c_ == o.c_; }
  bool is_zero() const { return c_.is_zero(); }

private:
  ConnectionField c_;
};

inline ThomasSymbols thomas(const ConnectionField& conn) {
  int d = conn.n();
  const ChartPtr& chart = conn.chart();
  std::vector<Expr> tr(static_cast<std::size_t>(d), Expr::zero(chart));
  for (int k = 0; k < d; ++k) {
    Expr acc = Expr::zero(chart);
    for (int l = 0; l < d; ++l) acc = acc + conn.gamma(l, l, k);
    tr[static_cast<std::size_t>(k)] = acc;
  }
  Expr w = Expr::rational(chart, Rat(1, d + 1));
  ConnectionField r(chart);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = j; k < d; ++k) {
        Expr v = conn.gamma(i, j, k);
        if (i == j) v = v - w * tr[static_cast<std::size_t>(k)];
        if (i == k) v = v - w * tr[static_cast<std::size_t>(j)];
        r.set_gamma(i, j, k, v);
      }
  return ThomasSymbols(std::move(r));
}

// Decides Gamma~ = Gamma + d^i_j f_k + d^i_k f_j; returns the unique f when
// the relation holds identically.
inline std::optional<std::vector<Expr>> projectively_equivalent(const ConnectionField& a,
                                                                const ConnectionField& b) {
  require_same_chart(a.chart(), b.chart());
  int d = a.n();
  const ChartPtr& chart = a.chart();
  std::vector<Expr> f(static_cast<std::size_t>(d), Expr::zero(chart));
  Expr w = Expr::rational(chart, Rat(1, d + 1));
  for (int k = 0; k < d; ++k) {
    Expr acc = Expr::zero(chart);
    for (int l = 0; l < d; ++l) acc = acc + b.gamma(l, l, k) - a.gamma(l, l, k);
    f[static_cast<std::size_t>(k)] = w * acc;
  }
  if ((b - projective_shift(a, f)).is_zero()) return f;
  return std::nullopt;
}

// Projective Rho tensor of a torsion-free connection, normalized as the
// unique trace normalizer of the Weyl-curvature ansatz below:
//   P_ij = -Ric_(ij)/(n-1) - Ric_[ij]/(n+1)
//   W^i_jkl = R^i_jkl + d^i_k P_jl - d^i_l P_jk + 2 P_[kl] d^i_j
// With this orientation the Q-P map of module metrizability reproduces P
// exactly; the round-sphere Levi-Civita value is P = -g.
inline TensorField projective_schouten_from(const Curvature& cur) {
  const ChartPtr& chart = cur.ricci.chart();
  int d = cur.ricci.n();
  TensorField P(chart, {Variance::Co, Variance::Co});
  Expr cs = Expr::rational(chart, Rat(1, 2 * (d - 1)));
  Expr ca = Expr::rational(chart, Rat(1, 2 * (d + 1)));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Expr sym = cur.ricci.at({i, j}) + cur.ricci.at({j, i});
      Expr asym = cur.ricci.at({i, j}) - cur.ricci.at({j, i});
      P.at({i, j}) = -(cs * sym) - (ca * asym);
    }
  return P;
}

inline TensorField projective_schouten(const ConnectionField& conn) {
  return projective_schouten_from(curvature(conn));
}

namespace detail {
inline TensorField projective_weyl_from(const Curvature& cur, const TensorField& P) {
  int d = P.n();
  TensorField W = cur.riemann;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          Expr v = W.at({i, j, k, l});
          if (i == k) v = v + P.at({j, l});
          if (i == l) v = v - P.at({j, k});
          if (i == j) v = v + (P.at({k, l}) - P.at({l, k}));
          W.at({i, j, k, l}) = v;
        }
  return W;
}
} // namespace detail

// Totally trace-free projectively invariant Weyl curvature; vanishes iff the
// structure is locally the straight-line geometry of RP^n.
inline TensorField projective_weyl(const ConnectionField& conn) {
  Curvature cur = curvature(conn);
  TensorField P = projective_schouten_from(cur);
  return detail::projective_weyl_from(cur, P);
}

// Pair of second-order ODEs xdd^i = F^i(x^0,x^1,x^2,p^1,p^2) with p^i = xd^i.
struct ODEPair {
  ChartPtr chart; // must carry the fiber variables p1, p2
  Expr F1, F2;

  ODEPair(ChartPtr c, Expr f1, Expr f2)
      : chart(std::move(c)), F1(std::move(f1)), F2(std::move(f2)) {
    if (!chart->has_fiber()) throw std::invalid_argument("ODEPair needs a chart with fiber variables");
  }
};

struct OdeBridgeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The geodesic ODE pair of an n=3 connection in slope coordinates.
inline ODEPair odes_from_connection(const ConnectionField& conn, const ChartPtr& fiber_chart) {
  if (conn.n() != 3) throw std::invalid_argument("odes_from_connection requires n = 3");
  if (!fiber_chart->has_fiber()) throw std::invalid_argument("fiber chart expected");
  auto G = [&](int i, int j, int k) { return detail::reparse(conn.gamma(i, j, k), fiber_chart); };
  Expr p1 = Expr::variable(fiber_chart, 3), p2 = Expr::variable(fiber_chart, 4);
  Expr two = Expr::rational(fiber_chart, Rat(2));
  Expr F1 = G(0, 1, 1) * p1.pow(3) + two * G(0, 1, 2) * p1.pow(2) * p2 + G(0, 2, 2) * p1 * p2.pow(2)
            + (two * G(0, 0, 1) - G(1, 1, 1)) * p1.pow(2)
            + two * (G(0, 0, 2) - G(1, 1, 2)) * p1 * p2 - G(1, 2, 2) * p2.pow(2)
            + (G(0, 0, 0) - two * G(1, 0, 1)) * p1 - two * G(1, 0, 2) * p2 - G(1, 0, 0);
  Expr F2 = G(0, 1, 1) * p1.pow(2) * p2 + two * G(0, 1, 2) * p1 * p2.pow(2) + G(0, 2, 2) * p2.pow(3)
            - G(2, 1, 1) * p1.pow(2) + two * (G(0, 0, 1) - G(2, 1, 2)) * p1 * p2
            + (two * G(0, 0, 2) - G(2, 2, 2)) * p2.pow(2)
            - two * G(2, 0, 1) * p1 + (G(0, 0, 0) - two * G(2, 0, 2)) * p2 - G(2, 0, 0);
  return ODEPair(fiber_chart, std::move(F1), std::move(F2));
}

// Point-equivalence-to-projective criterion:
// F^i_jkl - (3/4) F^r_r(jk d^i_l) = 0, F^i_jkl the third slope derivatives.
inline bool odepair_is_projective(const ODEPair& odes) {
  const ChartPtr& c = odes.chart;
  const Expr F[2] = {odes.F1, odes.F2};
  const int pv[2] = {3, 4};
  Expr d3[2][2][2][2];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = j; k < 2; ++k)
        for (int l = k; l < 2; ++l) {
          Expr v = F[i].diff(pv[j]).diff(pv[k]).diff(pv[l]);
          d3[i][j][k][l] = v;
          d3[i][j][l][k] = v;
          d3[i][k][j][l] = v;
          d3[i][k][l][j] = v;
          d3[i][l][j][k] = v;
          d3[i][l][k][j] = v;
        }
  auto G = [&](int a, int b) { return d3[0][0][a][b] + d3[1][1][a][b]; };
  Expr quarter = Expr::rational(c, Rat(1, 4)); // 3/4 * 1/3
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          Expr sym = Expr::zero(c);
          if (i == l) sym = sym + G(j, k);
          if (i == j) sym = sym + G(k, l);
          if (i == k) sym = sym + G(l, j);
          if (!(d3[i][j][k][l] - quarter * sym).is_zero()) return false;
        }
  return true;
}

// Inverse of odes_from_connection on the trace-free representative: the
// unique Thomas symbols whose ODE image is the given pair. The linear solve
// matches the 15 coefficients of the cubic pair; the round trip is verified.
inline ThomasSymbols thomas_from_odes(const ODEPair& odes) {
  const ChartPtr& c = odes.chart;
  const Expr F[2] = {odes.F1, odes.F2};
  for (auto& e : F)
    if (e.den().degree_in(3) > 0 || e.den().degree_in(4) > 0 || detail::fiber_degree(e.num()) > 3)
      throw OdeBridgeError("right-hand sides must be polynomial of degree <= 3 in the slopes");
  if (!odepair_is_projective(odes))
    throw OdeBridgeError("ODE pair does not satisfy the projective third-derivative condition");

  auto coef = [&](int which, int a, int b) {
    Expr v = F[which];
    for (int q = 0; q < a; ++q) v = v.diff(3);
    for (int q = 0; q < b; ++q) v = v.diff(4);
    Rat fact = 1;
    for (int q = 2; q <= a; ++q) fact *= q;
    for (int q = 2; q <= b; ++q) fact *= q;
    return detail::eval_fiber_at_zero(v) * Expr::rational(c, Rat(1) / fact);
  };

  ConnectionField pi(c);
  auto set = [&](int i, int j, int k, const Expr& v) { pi.set_gamma(i, j, k, v); };
  Expr c8 = Expr::rational(c, Rat(1, 8)), c4 = Expr::rational(c, Rat(1, 4));
  Expr half = Expr::rational(c, Rat(1, 2));
  Expr two = Expr::rational(c, Rat(2)), three = Expr::rational(c, Rat(3));

  set(0, 1, 1, coef(0, 3, 0));
  set(0, 1, 2, half * coef(0, 2, 1));
  set(0, 2, 2, coef(0, 1, 2));
  set(1, 2, 2, -coef(0, 0, 2));
  set(2, 1, 1, -coef(1, 2, 0));
  set(1, 0, 2, -half * coef(0, 0, 1));
  set(2, 0, 1, -half * coef(1, 1, 0));
  set(1, 0, 0, -coef(0, 0, 0));
  set(2, 0, 0, -coef(1, 0, 0));
  Expr a1 = coef(0, 2, 0), a2 = coef(0, 1, 1), a3 = coef(0, 1, 0);
  Expr b1 = coef(1, 1, 1), b2 = coef(1, 0, 2), b3 = coef(1, 0, 1);
  set(0, 0, 1, c8 * (b1 + two * a1));
  set(1, 1, 1, c4 * (b1 - two * a1));
  set(2, 1, 2, c8 * (two * a1 - three * b1));
  set(0, 0, 2, c8 * (a2 + two * b2));
  set(2, 2, 2, c4 * (a2 - two * b2));
  set(1, 1, 2, c8 * (two * b2 - three * a2));
  set(0, 0, 0, c4 * (a3 + b3));
  set(1, 0, 1, c8 * (b3 - three * a3));
  set(2, 0, 2, c8 * (a3 - three * b3));

  ThomasSymbols out{std::move(pi)};
  ODEPair back = odes_from_connection(out.as_connection(), c);
  if (!(back.F1 - odes.F1).is_zero() || !(back.F2 - odes.F2).is_zero())
    throw OdeBridgeError("ODE pair is not in the image of a projective structure");
  return out;
}

} // namespace weylkit
