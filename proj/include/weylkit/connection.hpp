#pragma once

#include "weylkit/tensor.hpp"

namespace weylkit {

// Torsion-free linear connection given by Christoffel symbols Gamma^i_{jk},
// symmetric in (j,k).
class ConnectionField {
public:
  explicit ConnectionField(ChartPtr chart)
      : chart_(std::move(chart)),
        g_(static_cast<std::size_t>(chart_->dim() * chart_->dim() * chart_->dim()),
           Expr::zero(chart_)) {}

  static ConnectionField zero(ChartPtr chart) { return ConnectionField(std::move(chart)); }

  const ChartPtr& chart() const { return chart_; }
  int n() const { return chart_->dim(); }

  const Expr& gamma(int i, int j, int k) const { return g_[off(i, j, k)]; }

  // sets both (j,k) and (k,j)
  void set_gamma(int i, int j, int k, const Expr& v) {
    g_[off(i, j, k)] = v;
    g_[off(i, k, j)] = v;
  }

  bool operator==(const ConnectionField& o) const {
    return chart_->same_as(*o.chart_) &&
           std::equal(g_.begin(), g_.end(), o.g_.begin(),
                      [](const Expr& a, const Expr& b) { return a == b; });
  }

  friend ConnectionField operator+(const ConnectionField& a, const ConnectionField& b) {
    require_same_chart(a.chart_, b.chart_);
    ConnectionField r = a;
    for (std::size_t i = 0; i < r.g_.size(); ++i) r.g_[i] = r.g_[i] + b.g_[i];
    return r;
  }
  friend ConnectionField operator-(const ConnectionField& a, const ConnectionField& b) {
    require_same_chart(a.chart_, b.chart_);
    ConnectionField r = a;
    for (std::size_t i = 0; i < r.g_.size(); ++i) r.g_[i] = r.g_[i] - b.g_[i];
    return r;
  }

  bool is_zero() const {
    for (auto& e : g_)
      if (!e.is_zero()) return false;
    return true;
  }

private:
  std::size_t off(int i, int j, int k) const {
    int d = n();
    return static_cast<std::size_t>((i * d + j) * d + k);
  }
  ChartPtr chart_;
  std::vector<Expr> g_;
};

// Projective gauge shift: Gamma + delta^i_j f_k + delta^i_k f_j.
inline ConnectionField projective_shift(const ConnectionField& c, const std::vector<Expr>& f) {
  ConnectionField r = c;
  int d = c.n();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = j; k < d; ++k) {
        Expr v = c.gamma(i, j, k);
        if (i == j) v = v + f[static_cast<std::size_t>(k)];
        if (i == k) v = v + f[static_cast<std::size_t>(j)];
        r.set_gamma(i, j, k, v);
      }
  return r;
}

class MetricField {
public:
  MetricField(ChartPtr chart, TensorField g, int epsilon = 1)
      : chart_(std::move(chart)), g_(std::move(g)), eps_(epsilon) {
    if (g_.rank() != 2 || g_.slots()[0] != Variance::Co || g_.slots()[1] != Variance::Co)
      throw std::invalid_argument("metric must be a (0,2) tensor");
    if (epsilon != 1 && epsilon != -1) throw std::invalid_argument("signature tag must be +1 or -1");
    for (int i = 0; i < g_.n(); ++i)
      for (int j = i + 1; j < g_.n(); ++j)
        if (!(g_.at({i, j}) - g_.at({j, i})).is_zero())
          throw std::invalid_argument("metric entries must be symmetric");
    det_ = determinant();
    if (det_.is_zero()) throw std::invalid_argument("metric is degenerate (det == 0)");
    auto inv = std::make_shared<TensorField>(chart_, std::vector<Variance>{Variance::Contra, Variance::Contra});
    for (int i = 0; i < g_.n(); ++i)
      for (int j = i; j < g_.n(); ++j) {
        Expr e = cofactor(j, i) / det_;
        inv->at({i, j}) = e;
        inv->at({j, i}) = e;
      }
    inv_ = std::move(inv);
  }

  static MetricField euclidean(ChartPtr chart) {
    TensorField g(chart, {Variance::Co, Variance::Co});
    for (int i = 0; i < chart->dim(); ++i) g.at({i, i}) = Expr::one(chart);
    return MetricField(chart, g, 1);
  }

  // conformal factor times the identity matrix
  static MetricField conformally_flat(ChartPtr chart, const Expr& factor) {
    TensorField g(chart, {Variance::Co, Variance::Co});
    for (int i = 0; i < chart->dim(); ++i) g.at({i, i}) = factor;
    return MetricField(chart, g, 1);
  }

  const ChartPtr& chart() const { return chart_; }
  int n() const { return chart_->dim(); }
  int epsilon() const { return eps_; }
  const TensorField& tensor() const { return g_; }
  const Expr& entry(int i, int j) const { return g_.at({i, j}); }
  const Expr& det() const { return det_; }

  // inverse metric as a (2,0) tensor, cached at construction
  const TensorField& inverse() const { return *inv_; }

  TensorField lower(const TensorField& t, int slot) const {
    return apply_metric(t, slot, g_, Variance::Contra, Variance::Co);
  }
  TensorField raise(const TensorField& t, int slot) const {
    return apply_metric(t, slot, inverse(), Variance::Co, Variance::Contra);
  }

  Expr trace(const TensorField& t02) const {
    if (t02.rank() != 2) throw std::invalid_argument("trace expects a rank-2 tensor");
    TensorField gi = inverse();
    Expr acc = Expr::zero(chart_);
    for (int i = 0; i < n(); ++i)
      for (int j = 0; j < n(); ++j) acc = acc + gi.at({i, j}) * t02.at({i, j});
    return acc;
  }

private:
  Expr determinant() const {
    int d = n();
    std::vector<std::vector<Expr>> m(d, std::vector<Expr>(d, Expr::zero(chart_)));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m[i][j] = g_.at({i, j});
    return det_rec(m);
  }

  Expr det_rec(const std::vector<std::vector<Expr>>& m) const {
    std::size_t d = m.size();
    if (d == 1) return m[0][0];
    Expr acc = Expr::zero(chart_);
    for (std::size_t c = 0; c < d; ++c) {
      if (m[0][c].is_zero()) continue;
      std::vector<std::vector<Expr>> sub;
      for (std::size_t r = 1; r < d; ++r) {
        std::vector<Expr> row;
        for (std::size_t cc = 0; cc < d; ++cc)
          if (cc != c) row.push_back(m[r][cc]);
        sub.push_back(std::move(row));
      }
      Expr term = m[0][c] * det_rec(sub);
      acc = (c % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
  }

  Expr cofactor(int r, int c) const {
    int d = n();
    std::vector<std::vector<Expr>> sub;
    for (int i = 0; i < d; ++i) {
      if (i == r) continue;
      std::vector<Expr> row;
      for (int j = 0; j < d; ++j)
        if (j != c) row.push_back(g_.at({i, j}));
      sub.push_back(std::move(row));
    }
    Expr v = d == 1 ? Expr::one(chart_) : det_rec(sub);
    return ((r + c) % 2 == 0) ? v : -v;
  }

  static TensorField apply_metric(const TensorField& t, int slot, const TensorField& g2,
                                  Variance expect, Variance result) {
    if (slot < 0 || slot >= t.rank()) throw std::invalid_argument("slot out of range");
    if (t.slots()[static_cast<std::size_t>(slot)] != expect)
      throw std::invalid_argument("slot variance does not match raise/lower request");
    std::vector<Variance> s = t.slots();
    s[static_cast<std::size_t>(slot)] = result;
    TensorField r(t.chart(), s);
    r.for_each_index([&](const std::vector<int>& I) {
      Expr acc = Expr::zero(t.chart());
      for (int m = 0; m < t.n(); ++m) {
        std::vector<int> J = I;
        J[static_cast<std::size_t>(slot)] = m;
        acc = acc + g2.at({I[static_cast<std::size_t>(slot)], m}) * t.at(J);
      }
      r.at(I) = acc;
    });
    return r;
  }

  ChartPtr chart_;
  TensorField g_;
  int eps_;
  Expr det_;
  std::shared_ptr<const TensorField> inv_;
};

// (g, beta): metric representative plus the 1-form of the Weyl structure.
struct WeylStructureField {
  MetricField metric;
  std::vector<Expr> beta;

  WeylStructureField(MetricField g, std::vector<Expr> b)
      : metric(std::move(g)), beta(std::move(b)) {
    if (static_cast<int>(beta.size()) != metric.n())
      throw std::invalid_argument("beta must have n components");
  }

  static WeylStructureField closed(MetricField g) {
    int d = g.n();
    std::vector<Expr> b(static_cast<std::size_t>(d), Expr::zero(g.chart()));
    return WeylStructureField(std::move(g), std::move(b));
  }
};

// Levi-Civita connection: (1/2) g^{il} (d_j g_lk + d_k g_lj - d_l g_jk).
inline ConnectionField levi_civita(const MetricField& g) {
  const ChartPtr& chart = g.chart();
  int d = g.n();
  TensorField gi = g.inverse();
  ConnectionField c(chart);
  Expr half = Expr::rational(chart, Rat(1, 2));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = j; k < d; ++k) {
        Expr acc = Expr::zero(chart);
        for (int l = 0; l < d; ++l) {
          Expr t = g.entry(l, j).diff(k) + g.entry(l, k).diff(j) - g.entry(j, k).diff(l);
          acc = acc + gi.at({i, l}) * t;
        }
        c.set_gamma(i, j, k, acc * half);
      }
  return c;
}

// The unique torsion-free connection with D_k g_ij = 2 beta_k g_ij:
// Gamma = LC(g) - delta^i_j b_k - delta^i_k b_j + g_jk b^i.
inline ConnectionField weyl_connection(const WeylStructureField& w) {
  const MetricField& g = w.metric;
  const ChartPtr& chart = g.chart();
  int d = g.n();
  ConnectionField c = levi_civita(g);
  TensorField gi = g.inverse();
  std::vector<Expr> bup(static_cast<std::size_t>(d), Expr::zero(chart));
  for (int i = 0; i < d; ++i) {
    Expr acc = Expr::zero(chart);
    for (int l = 0; l < d; ++l) acc = acc + gi.at({i, l}) * w.beta[static_cast<std::size_t>(l)];
    bup[static_cast<std::size_t>(i)] = acc;
  }
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = j; k < d; ++k) {
        Expr v = c.gamma(i, j, k);
        if (i == j) v = v - w.beta[static_cast<std::size_t>(k)];
        if (i == k) v = v - w.beta[static_cast<std::size_t>(j)];
        v = v + g.entry(j, k) * bup[static_cast<std::size_t>(i)];
        c.set_gamma(i, j, k, v);
      }
  return c;
}

struct Curvature {
  TensorField riemann; // R^i_jkl
  TensorField ricci;   // R_jl = R^i_jil
};

// R^i_jkl = d_k Gam^i_lj - d_l Gam^i_kj + Gam^i_km Gam^m_lj - Gam^i_lm Gam^m_kj
// (sign convention anchored by Ric(round sphere) = +2g).
inline Curvature curvature(const ConnectionField& c) {
  const ChartPtr& chart = c.chart();
  int d = c.n();
  TensorField R(chart, {Variance::Contra, Variance::Co, Variance::Co, Variance::Co});
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = k + 1; l < d; ++l) {
          Expr v = c.gamma(i, l, j).diff(k) - c.gamma(i, k, j).diff(l);
          for (int m = 0; m < d; ++m)
            v = v + c.gamma(i, k, m) * c.gamma(m, l, j) - c.gamma(i, l, m) * c.gamma(m, k, j);
          R.at({i, j, k, l}) = v;
          R.at({i, j, l, k}) = -v;
        }
  TensorField ric(chart, {Variance::Co, Variance::Co});
  for (int j = 0; j < d; ++j)
    for (int l = 0; l < d; ++l) {
      Expr acc = Expr::zero(chart);
      for (int i = 0; i < d; ++i) acc = acc + R.at({i, j, i, l});
      ric.at({j, l}) = acc;
    }
  return {std::move(R), std::move(ric)};
}

// Covariant derivative; the new covariant slot is appended last:
// (DT)_{...;k} = d_k T_... + Gam^a_{km} (contra terms) - Gam^m_{ka} (co terms).
inline TensorField covariant_derivative(const TensorField& t, const ConnectionField& conn) {
  require_same_chart(t.chart(), conn.chart());
  const ChartPtr& chart = t.chart();
  int d = t.n();
  std::vector<Variance> s = t.slots();
  s.push_back(Variance::Co);
  TensorField r(chart, s);
  r.for_each_index([&](const std::vector<int>& I) {
    int k = I.back();
    std::vector<int> J(I.begin(), I.end() - 1);
    Expr v = t.at(J).diff(k);
    for (int slot = 0; slot < t.rank(); ++slot) {
      for (int m = 0; m < d; ++m) {
        std::vector<int> Jm = J;
        Jm[static_cast<std::size_t>(slot)] = m;
        if (t.slots()[static_cast<std::size_t>(slot)] == Variance::Contra)
          v = v + conn.gamma(J[static_cast<std::size_t>(slot)], k, m) * t.at(Jm);
        else
          v = v - conn.gamma(m, k, J[static_cast<std::size_t>(slot)]) * t.at(Jm);
      }
    }
    r.at(I) = v;
  });
  return r;
}

} // namespace weylkit
