#pragma once

#include "weylkit/projective.hpp"

namespace weylkit {

enum class RhoProvenance { ClosedFormula, TraceSolve };

// Conformal Rho (Schouten) tensor of a Weyl structure. Not symmetric unless
// the structure is closed (d beta = 0).
struct ConformalRho {
  TensorField P;
  RhoProvenance provenance;
};

namespace detail {

inline TensorField faraday(const WeylStructureField& w) {
  // F_ij = d_i beta_j - d_j beta_i
  const ChartPtr& c = w.metric.chart();
  int d = w.metric.n();
  TensorField F(c, {Variance::Co, Variance::Co});
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      Expr v = w.beta[static_cast<std::size_t>(j)].diff(i) -
               w.beta[static_cast<std::size_t>(i)].diff(j);
      F.at({i, j}) = v;
      F.at({j, i}) = -v;
    }
  return F;
}

// Rho from a given Ricci tensor and Faraday form; the unique solution of the
// trace conditions of the conformal curvature decomposition:
//   P_ij = -(Ric_ij + F_ij - R/(2(n-1)) g_ij) / (n-2),  R = g^{ij} Ric_ij.
inline TensorField rho_from(const MetricField& g, const TensorField& ric, const TensorField& F) {
  const ChartPtr& c = g.chart();
  int d = g.n();
  if (d < 3) throw std::invalid_argument("conformal Rho needs n >= 3");
  Expr scal = g.trace(ric);
  Expr cR = Expr::rational(c, Rat(1, 2 * (d - 1)));
  Expr inv = Expr::rational(c, Rat(-1, d - 2));
  TensorField P(c, {Variance::Co, Variance::Co});
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      P.at({i, j}) = inv * (ric.at({i, j}) + F.at({i, j}) - cR * scal * g.entry(i, j));
  return P;
}

// C^i_jkl = R^i_jkl + d^i_k P_jl - d^i_l P_jk + P^i_k g_jl - P^i_l g_jk + d^i_j F_kl,
// with P^i_k = g^{mi} P_mk; totally trace-free for every Weyl structure.
inline TensorField conformal_weyl_from(const MetricField& g, const TensorField& riem,
                                       const TensorField& P, const TensorField& F) {
  const ChartPtr& c = g.chart();
  int d = g.n();
  TensorField gi = g.inverse();
  TensorField Pup(c, {Variance::Contra, Variance::Co});
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) {
      Expr acc = Expr::zero(c);
      for (int m = 0; m < d; ++m) acc = acc + gi.at({m, i}) * P.at({m, k});
      Pup.at({i, k}) = acc;
    }
  TensorField C = riem;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          Expr v = C.at({i, j, k, l});
          if (i == k) v = v + P.at({j, l});
          if (i == l) v = v - P.at({j, k});
          v = v + Pup.at({i, k}) * g.entry(j, l) - Pup.at({i, l}) * g.entry(j, k);
          if (i == j) v = v + F.at({k, l});
          C.at({i, j, k, l}) = v;
        }
  return C;
}

} // namespace detail

// For beta = 0 this is the closed formula of the classical (negatively
// normalized) Schouten tensor: P = -(Ric - R g/(2(n-1)))/(n-2); the round
// sphere anchor is P = -g/2. In general F = d beta enters the trace solve.
inline ConformalRho conformal_rho_from(const WeylStructureField& w, const Curvature& cur) {
  if (w.metric.n() < 3) throw std::invalid_argument("n = 2 unsupported for conformal Rho");
  TensorField F = detail::faraday(w);
  TensorField P = detail::rho_from(w.metric, cur.ricci, F);
  RhoProvenance tag = F.is_zero() ? RhoProvenance::ClosedFormula : RhoProvenance::TraceSolve;
  return {std::move(P), tag};
}

inline ConformalRho conformal_rho(const WeylStructureField& w) {
  if (w.metric.n() < 3) throw std::invalid_argument("n = 2 unsupported for conformal Rho");
  return conformal_rho_from(w, curvature(weyl_connection(w)));
}

// Y_ijk = P_ik;j - P_ij;k, covariant derivatives in the Weyl connection.
// Antisymmetric in (j,k); the n=3 conformal flatness obstruction.
struct CottonTensor {
  TensorField Y; // slots (i, j, k)
  bool is_zero() const { return Y.is_zero(); }
};

inline CottonTensor cotton(const WeylStructureField& w) {
  ConnectionField D = weyl_connection(w);
  TensorField P = conformal_rho_from(w, curvature(D)).P;
  TensorField DP = covariant_derivative(P, D); // (i, k, j) with derivative last
  const ChartPtr& c = w.metric.chart();
  int d = w.metric.n();
  TensorField Y(c, {Variance::Co, Variance::Co, Variance::Co});
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = j + 1; k < d; ++k) {
        Expr v = DP.at({i, k, j}) - DP.at({i, j, k});
        Y.at({i, j, k}) = v;
        Y.at({i, k, j}) = -v;
      }
  return {std::move(Y)};
}

// Conformal Weyl tensor of a metric (n >= 4); conformally invariant as a
// (1,3) tensor and equal to the trace-free curvature part of every Weyl
// connection of [g].
inline TensorField conformal_weyl_tensor(const MetricField& g) {
  if (g.n() <= 3) throw std::invalid_argument("conformal Weyl tensor needs n >= 4");
  ConnectionField lc = levi_civita(g);
  Curvature cur = curvature(lc);
  TensorField F(g.chart(), {Variance::Co, Variance::Co}); // zero
  TensorField P = detail::rho_from(g, cur.ricci, F);
  return detail::conformal_weyl_from(g, cur.riemann, P, F);
}

inline bool conformally_flat(const MetricField& g) {
  if (g.n() < 3) throw std::invalid_argument("conformal flatness needs n >= 3");
  if (g.n() == 3) return cotton(WeylStructureField::closed(g)).is_zero();
  return conformal_weyl_tensor(g).is_zero();
}

// Sym(Ric(D)) = f g test; residual is the trace-free part of Sym(Ric).
struct EinsteinWeylResult {
  bool verdict;
  TensorField residual;
  Expr factor; // f = tr_g Sym(Ric) / n
};

inline Expr trace_part_factor(const MetricField& g, const TensorField& S) {
  Expr tr = g.trace(S);
  return tr * Expr::rational(g.chart(), Rat(1, g.n()));
}

inline EinsteinWeylResult einstein_weyl(const WeylStructureField& w) {
  ConnectionField D = weyl_connection(w);
  Curvature cur = curvature(D);
  const ChartPtr& c = w.metric.chart();
  int d = w.metric.n();
  TensorField S(c, {Variance::Co, Variance::Co});
  Expr half = Expr::rational(c, Rat(1, 2));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      S.at({i, j}) = half * (cur.ricci.at({i, j}) + cur.ricci.at({j, i}));
  Expr f = trace_part_factor(w.metric, S);
  TensorField resid = S - w.metric.tensor().scaled(f);
  bool ok = resid.is_zero();
  return {ok, std::move(resid), std::move(f)};
}

} // namespace weylkit
