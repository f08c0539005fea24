#pragma once

#include "weylkit/projective.hpp"

namespace weylkit {

// Vector field on the correspondence space, components in the frame
// (d_x0, d_x1, d_x2, d_p1, d_p2).
struct VectorField5 {
  ChartPtr chart; // fiber chart
  std::array<Expr, 5> comp;

  Expr contact_pairing() const {
    // theta = dx0 - p1 dx1 - p2 dx2
    Expr p1v = Expr::variable(chart, 3), p2v = Expr::variable(chart, 4);
    return comp[0] - p1v * comp[1] - p2v * comp[2];
  }
};

inline VectorField5 bracket(const VectorField5& v, const VectorField5& w) {
  require_same_chart(v.chart, w.chart);
  VectorField5 r{v.chart, {}};
  for (int c = 0; c < 5; ++c) {
    Expr acc = Expr::zero(v.chart);
    for (int k = 0; k < 5; ++k)
      acc = acc + v.comp[static_cast<std::size_t>(k)] * w.comp[static_cast<std::size_t>(c)].diff(k) -
            w.comp[static_cast<std::size_t>(k)] * v.comp[static_cast<std::size_t>(c)].diff(k);
    r.comp[static_cast<std::size_t>(c)] = acc;
  }
  return r;
}

// The para-CR frame (v1, v2) spanning the horizontal Lagrangian complement on
// P_+T*M: the plane-transport lift of Ker(dx0 - p1 dx1 - p2 dx2) through the
// connection. Both fields annihilate the contact form identically, are exact
// projective invariants, and satisfy [v1,v2] = 0 iff the torsion pair
// (W^0_112, W^0_212) vanishes along the fiber.
inline std::pair<VectorField5, VectorField5> paracr_frame(const ConnectionField& conn,
                                                          const ChartPtr& fiber_chart) {
  if (conn.n() != 3) throw std::invalid_argument("paracr_frame requires n = 3");
  if (!fiber_chart->has_fiber())
    throw std::invalid_argument("paracr_frame requires a chart with fiber variables");
  auto G = [&](int m, int k, int j) { return detail::reparse(conn.gamma(m, k, j), fiber_chart); };
  for (int m = 0; m < 3; ++m)
    for (int k = 0; k < 3; ++k)
      for (int j = k; j < 3; ++j) {
        const Expr e = G(m, k, j);
        if (e.num().degree_in(3) > 0 || e.num().degree_in(4) > 0 || e.den().degree_in(3) > 0 ||
            e.den().degree_in(4) > 0)
          throw std::invalid_argument("connection entries must not depend on the fiber variables");
      }
  Expr p1 = Expr::variable(fiber_chart, 3), p2 = Expr::variable(fiber_chart, 4);
  const Expr xi[3] = {Expr::one(fiber_chart), -p1, -p2};
  const Expr pvar[2] = {p1, p2};

  auto build = [&](int base_index) {
    // u = d_{x^i} + p^i d_{x^0}
    Expr u[3] = {pvar[base_index - 1], Expr::zero(fiber_chart), Expr::zero(fiber_chart)};
    u[base_index] = Expr::one(fiber_chart);
    auto dxi = [&](int j) {
      Expr acc = Expr::zero(fiber_chart);
      for (int k = 0; k < 3; ++k) {
        if (u[k].is_zero()) continue;
        for (int m = 0; m < 3; ++m) acc = acc + u[k] * G(m, k, j) * xi[m];
      }
      return acc;
    };
    Expr d0 = dxi(0);
    VectorField5 v{fiber_chart, {}};
    v.comp[0] = pvar[base_index - 1];
    v.comp[1] = base_index == 1 ? Expr::one(fiber_chart) : Expr::zero(fiber_chart);
    v.comp[2] = base_index == 2 ? Expr::one(fiber_chart) : Expr::zero(fiber_chart);
    v.comp[3] = -(dxi(1) + pvar[0] * d0);
    v.comp[4] = -(dxi(2) + pvar[1] * d0);
    return v;
  };
  return {build(1), build(2)};
}

struct ParacrSampleRow {
  std::vector<Rat> point;  // (x0,x1,x2,p1,p2)
  Rat defect_p1, defect_p2;
  Rat weyl_112, weyl_212;  // W^0_112, W^0_212 at the base point
  bool covanish;
};

struct ParacrReport {
  std::vector<ParacrSampleRow> rows;
  bool all_covanish;
  bool bracket_identically_zero;
};

// At each sample: the bracket [v1,v2] reduced modulo span{v1,v2} (its base
// components vanish identically, so the defect sits in the d_p1, d_p2
// directions), reported next to the projective Weyl entries W^0_112, W^0_212
// of the connection at the base point, with a vanishing-locus agreement flag.
inline ParacrReport paracr_torsion_diagnostics(const ConnectionField& conn,
                                               const ChartPtr& fiber_chart,
                                               const std::vector<std::vector<Rat>>& samples) {
  auto [v1, v2] = paracr_frame(conn, fiber_chart);
  VectorField5 br = bracket(v1, v2);
  // membership defect: subtract a v1 + b v2 with a, b matched on dx1, dx2
  Expr a = br.comp[1], b = br.comp[2];
  std::array<Expr, 5> defect;
  for (int c = 0; c < 5; ++c)
    defect[static_cast<std::size_t>(c)] =
        br.comp[static_cast<std::size_t>(c)] - a * v1.comp[static_cast<std::size_t>(c)] -
        b * v2.comp[static_cast<std::size_t>(c)];
  TensorField W = projective_weyl(conn);
  ParacrReport rep;
  rep.bracket_identically_zero =
      std::all_of(br.comp.begin(), br.comp.end(), [](const Expr& e) { return e.is_zero(); });
  rep.all_covanish = true;
  for (auto& s : samples) {
    if (s.size() != 5) throw std::invalid_argument("paracr samples are (x0,x1,x2,p1,p2) tuples");
    ParacrSampleRow row;
    row.point = s;
    row.defect_p1 = defect[3].eval(s);
    row.defect_p2 = defect[4].eval(s);
    std::vector<Rat> base(s.begin(), s.begin() + 3);
    if (conn.chart()->has_fiber()) {
      base = s; // W entries live on the fiber chart but do not depend on p
    }
    row.weyl_112 = W.at({0, 1, 1, 2}).eval(base);
    row.weyl_212 = W.at({0, 2, 1, 2}).eval(base);
    bool dz = row.defect_p1 == 0 && row.defect_p2 == 0;
    bool wz = row.weyl_112 == 0 && row.weyl_212 == 0;
    row.covanish = (dz == wz);
    rep.all_covanish = rep.all_covanish && row.covanish;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

} // namespace weylkit
