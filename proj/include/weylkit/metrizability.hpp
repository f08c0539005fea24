#pragma once

#include "weylkit/confweyl.hpp"

namespace weylkit {

// Conformal-to-projective Rho map (pointwise algebraic, linear in P):
//   Q_ij = P/(n-1) g_ij + (n^2-n-1)/(n^2-1) P_ij - 1/(n^2-1) P_ji,  P = g^{kl}P_kl.
// For n=3 the coefficients are 1/2, 5/8, -1/8.
inline TensorField q_from_p(const TensorField& P, const MetricField& g) {
  const ChartPtr& c = g.chart();
  int d = g.n();
  if (d < 3) throw std::invalid_argument("q_from_p needs n >= 3");
  Expr tr = g.trace(P);
  Expr ctr = Expr::rational(c, Rat(1, d - 1));
  Expr cij = Expr::rational(c, Rat(d * d - d - 1, d * d - 1));
  Expr cji = Expr::rational(c, Rat(1, d * d - 1));
  TensorField Q(c, {Variance::Co, Variance::Co});
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      Q.at({i, j}) = ctr * tr * g.entry(i, j) + cij * P.at({i, j}) - cji * P.at({j, i});
  return Q;
}

// Central identity: the projective Rho of the Weyl connection equals the
// image of its conformal Rho under the Q-P map. Residual is identically zero
// under the repo's frozen conventions.
inline TensorField verify_qp_identity(const WeylStructureField& w) {
  ConnectionField D = weyl_connection(w);
  Curvature cur = curvature(D);
  TensorField Q = projective_schouten_from(cur);
  TensorField P = conformal_rho_from(w, cur).P;
  return Q - q_from_p(P, w.metric);
}

// Trace of the projective Weyl curvature against the metric:
//   g^{jl} W_(ij)kl = -(n-2)(n+2)/(2(n+1)) P_[ik] + (n-2)/(2(n-1)) (P g_ik - n P_(ik)).
// The right-hand coefficients are the verified coordinate-level form of the
// paper's W-trace relation; residual is identically zero.
inline TensorField verify_w_trace_identity(const WeylStructureField& w) {
  const MetricField& g = w.metric;
  const ChartPtr& c = g.chart();
  int d = g.n();
  if (d < 3) throw std::invalid_argument("W-trace identity needs n >= 3");
  ConnectionField D = weyl_connection(w);
  Curvature cur = curvature(D);
  TensorField W = detail::projective_weyl_from(cur, projective_schouten_from(cur));
  TensorField Wl = g.lower(W, 0); // W_ijkl
  const TensorField& gi = g.inverse();
  TensorField P = conformal_rho_from(w, cur).P;
  Expr trP = g.trace(P);
  Expr half = Expr::rational(c, Rat(1, 2));
  Expr ca = Expr::rational(c, Rat(-(d - 2) * (d + 2), 2 * (d + 1)));
  Expr cb = Expr::rational(c, Rat(d - 2, 2 * (d - 1)));
  TensorField R(c, {Variance::Co, Variance::Co});
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) {
      Expr lhs = Expr::zero(c);
      for (int j = 0; j < d; ++j)
        for (int l = 0; l < d; ++l)
          lhs = lhs + gi.at({j, l}) * half * (Wl.at({i, j, k, l}) + Wl.at({j, i, k, l}));
      Expr pa = half * (P.at({i, k}) - P.at({k, i}));
      Expr ps = half * (P.at({i, k}) + P.at({k, i}));
      Expr rhs = ca * pa + cb * (trP * g.entry(i, k) - Expr::integer(c, d) * ps);
      R.at({i, k}) = lhs - rhs;
    }
  return R;
}

// C-W-Q-P: the two decompositions of one Weyl connection's curvature agree,
// with C the conformal Weyl tensor of the metric (conformally invariant):
//   C_ijkl - W_ijkl = g_ik(P_jl - Q_jl)... spelled out below; n >= 4.
inline TensorField verify_cwqp_identity(const WeylStructureField& w) {
  const MetricField& g = w.metric;
  int d = g.n();
  if (d < 4)
    throw std::invalid_argument("C-W-Q-P identity degenerates for n = 3 (C is identically zero)");
  const ChartPtr& c = g.chart();
  ConnectionField D = weyl_connection(w);
  Curvature cur = curvature(D);
  TensorField Q = projective_schouten_from(cur);
  TensorField W = detail::projective_weyl_from(cur, Q);
  TensorField Wl = g.lower(W, 0);
  TensorField P = conformal_rho_from(w, cur).P;
  TensorField C = conformal_weyl_tensor(g);
  TensorField Cl = g.lower(C, 0);
  TensorField R(c, {Variance::Co, Variance::Co, Variance::Co, Variance::Co});
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          Expr v = Cl.at({i, j, k, l}) - Wl.at({i, j, k, l});
          v = v - g.entry(i, k) * P.at({j, l}) + g.entry(i, l) * P.at({j, k});
          v = v - P.at({i, k}) * g.entry(j, l) + P.at({i, l}) * g.entry(j, k);
          v = v - g.entry(i, j) * (P.at({k, l}) - P.at({l, k}));
          v = v + g.entry(i, k) * Q.at({j, l}) - g.entry(i, l) * Q.at({j, k});
          v = v + g.entry(i, j) * (Q.at({k, l}) - Q.at({l, k}));
          R.at({i, j, k, l}) = v;
        }
  return R;
}

// Exact Weyl-metrizability decision against a candidate metric: find (beta, f)
// with weyl_connection(g, beta) = rep + d f + d f, or report none. f is
// eliminated through the two traces of the difference tensor, then the full
// residual is zero-tested; the solution is unique when it exists.
inline std::optional<std::pair<std::vector<Expr>, std::vector<Expr>>> weyl_metrizable_with(
    const ConnectionField& rep, const MetricField& g) {
  require_same_chart(rep.chart(), g.chart());
  const ChartPtr& c = g.chart();
  int d = g.n();
  ConnectionField lc = levi_civita(g);
  ConnectionField diff = lc - rep; // D^i_jk
  // trace vectors: D1_k = D^j_jk, (D2)^i = g^{jk} D^i_jk
  std::vector<Expr> D1(static_cast<std::size_t>(d), Expr::zero(c));
  std::vector<Expr> D2up(static_cast<std::size_t>(d), Expr::zero(c));
  TensorField gi = g.inverse();
  for (int k = 0; k < d; ++k) {
    Expr acc = Expr::zero(c);
    for (int j = 0; j < d; ++j) acc = acc + diff.gamma(j, j, k);
    D1[static_cast<std::size_t>(k)] = acc;
  }
  for (int i = 0; i < d; ++i) {
    Expr acc = Expr::zero(c);
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) acc = acc + gi.at({j, k}) * diff.gamma(i, j, k);
    D2up[static_cast<std::size_t>(i)] = acc;
  }
  // beta^i = (2 D1^i - (n+1) D2^i) / ((n+2)(n-1)),  f = (D1 - n beta)/(n+1)
  std::vector<Expr> betaup(static_cast<std::size_t>(d), Expr::zero(c));
  std::vector<Expr> D1up(static_cast<std::size_t>(d), Expr::zero(c));
  for (int i = 0; i < d; ++i) {
    Expr acc = Expr::zero(c);
    for (int k = 0; k < d; ++k) acc = acc + gi.at({i, k}) * D1[static_cast<std::size_t>(k)];
    D1up[static_cast<std::size_t>(i)] = acc;
  }
  Expr scale = Expr::rational(c, Rat(1, (d + 2) * (d - 1)));
  Expr two = Expr::rational(c, Rat(2));
  Expr np1 = Expr::rational(c, Rat(d + 1));
  for (int i = 0; i < d; ++i)
    betaup[static_cast<std::size_t>(i)] =
        scale * (two * D1up[static_cast<std::size_t>(i)] - np1 * D2up[static_cast<std::size_t>(i)]);
  std::vector<Expr> beta(static_cast<std::size_t>(d), Expr::zero(c));
  for (int k = 0; k < d; ++k) {
    Expr acc = Expr::zero(c);
    for (int i = 0; i < d; ++i) acc = acc + g.entry(k, i) * betaup[static_cast<std::size_t>(i)];
    beta[static_cast<std::size_t>(k)] = acc;
  }
  std::vector<Expr> f(static_cast<std::size_t>(d), Expr::zero(c));
  Expr wn = Expr::rational(c, Rat(1, d + 1));
  Expr nn = Expr::rational(c, Rat(d));
  for (int k = 0; k < d; ++k)
    f[static_cast<std::size_t>(k)] =
        wn * (D1[static_cast<std::size_t>(k)] - nn * beta[static_cast<std::size_t>(k)]);
  // residual: weyl_connection(g, beta) - rep - d f - d f == 0 ?
  ConnectionField W = weyl_connection(WeylStructureField(g, beta));
  if ((W - projective_shift(rep, f)).is_zero())
    return std::make_pair(std::move(beta), std::move(f));
  return std::nullopt;
}

struct ConventionViolation : std::logic_error {
  using std::logic_error::logic_error;
};

// Conformal Beltrami verdict: projective flatness of the Weyl connection
// forces conformal flatness; a violation falsifies the frozen conventions
// and is a hard error. When projectively flat, the symmetrized Rho must be
// a constant multiple of the metric.
struct BeltramiVerdict {
  bool projectively_flat;
  bool conformally_flat;
  TensorField projective_residual; // W^i_jkl
  TensorField conformal_residual;  // Cotton Y (n=3) or conformal Weyl C (n>=4)
};

inline BeltramiVerdict beltrami_check(const WeylStructureField& w) {
  const MetricField& g = w.metric;
  if (g.n() < 3) throw std::invalid_argument("beltrami_check needs n >= 3");
  ConnectionField D = weyl_connection(w);
  Curvature cur = curvature(D);
  TensorField W = detail::projective_weyl_from(cur, projective_schouten_from(cur));
  bool pflat = W.is_zero();
  TensorField conf_resid = g.n() == 3 ? cotton(WeylStructureField::closed(g)).Y
                                      : conformal_weyl_tensor(g);
  bool cflat = conf_resid.is_zero();
  if (pflat && !cflat)
    throw ConventionViolation(
        "projectively flat Weyl structure over a non-flat conformal structure: "
        "the Beltrami implication failed, falsifying the frozen conventions");
  if (pflat) {
    // P_(ij) = c g_ij with c constant
    TensorField P = conformal_rho_from(w, cur).P;
    const ChartPtr& c = g.chart();
    int d = g.n();
    TensorField S(c, {Variance::Co, Variance::Co});
    Expr half = Expr::rational(c, Rat(1, 2));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) S.at({i, j}) = half * (P.at({i, j}) + P.at({j, i}));
    Expr factor = trace_part_factor(g, S);
    if (!(S - g.tensor().scaled(factor)).is_zero())
      throw ConventionViolation("projectively flat but Rho_(ij) is not pure trace");
    for (int v = 0; v < d; ++v)
      if (!factor.diff(v).is_zero())
        throw ConventionViolation("projectively flat but the Rho trace factor is not constant");
  }
  return {pflat, cflat, std::move(W), std::move(conf_resid)};
}

} // namespace weylkit
