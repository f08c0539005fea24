#pragma once

#include <cmath>

#include "weylkit/connection.hpp"

namespace weylkit {

struct GeodesicError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GeodesicSample {
  double t;
  std::vector<double> x;
  std::vector<double> v;
};

using Polyline = std::vector<GeodesicSample>;

// Classical fixed-step RK4 on xdd = -Gamma(x)(xd, xd). Sanity-check role only.
inline Polyline integrate_geodesic(const ConnectionField& conn, std::vector<double> x0,
                                   std::vector<double> v0, double h, int steps) {
  int d = conn.n();
  if (static_cast<int>(x0.size()) != d || static_cast<int>(v0.size()) != d)
    throw std::invalid_argument("geodesic state has wrong arity");
  if (h <= 0) throw std::invalid_argument("step must be positive");

  auto accel = [&](const std::vector<double>& x, const std::vector<double>& v) {
    std::vector<double> pt = x;
    pt.resize(static_cast<std::size_t>(conn.chart()->nvars()), 0.0);
    std::vector<double> a(static_cast<std::size_t>(d), 0.0);
    for (int i = 0; i < d; ++i) {
      double s = 0;
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
          const Expr& gi = conn.gamma(i, j, k);
          if (gi.is_zero()) continue;
          double gv;
          try {
            gv = gi.eval_double(pt);
          } catch (const PoleError&) {
            throw GeodesicError("pole encountered along the geodesic");
          }
          s += gv * v[static_cast<std::size_t>(j)] * v[static_cast<std::size_t>(k)];
        }
      a[static_cast<std::size_t>(i)] = -s;
    }
    return a;
  };

  Polyline out;
  out.push_back({0.0, x0, v0});
  std::vector<double> x = x0, v = v0;
  for (int s = 1; s <= steps; ++s) {
    auto k1x = v;
    auto k1v = accel(x, v);
    auto adv = [&](const std::vector<double>& base, const std::vector<double>& dir, double f) {
      std::vector<double> r = base;
      for (int i = 0; i < d; ++i) r[static_cast<std::size_t>(i)] += f * dir[static_cast<std::size_t>(i)];
      return r;
    };
    auto k2x = adv(v, k1v, h / 2);
    auto k2v = accel(adv(x, k1x, h / 2), k2x);
    auto k3x = adv(v, k2v, h / 2);
    auto k3v = accel(adv(x, k2x, h / 2), k3x);
    auto k4x = adv(v, k3v, h);
    auto k4v = accel(adv(x, k3x, h), k4x);
    double norm2 = 0;
    for (int i = 0; i < d; ++i) {
      x[static_cast<std::size_t>(i)] +=
          h / 6 * (k1x[static_cast<std::size_t>(i)] + 2 * k2x[static_cast<std::size_t>(i)] +
                   2 * k3x[static_cast<std::size_t>(i)] + k4x[static_cast<std::size_t>(i)]);
      v[static_cast<std::size_t>(i)] +=
          h / 6 * (k1v[static_cast<std::size_t>(i)] + 2 * k2v[static_cast<std::size_t>(i)] +
                   2 * k3v[static_cast<std::size_t>(i)] + k4v[static_cast<std::size_t>(i)]);
      norm2 += x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)] +
               v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)];
    }
    if (!std::isfinite(norm2) || norm2 > 1e24) throw GeodesicError("step diverged (norm overflow)");
    out.push_back({s * h, x, v});
  }
  return out;
}

inline double polyline_arclength(const Polyline& p) {
  double L = 0;
  for (std::size_t i = 1; i < p.size(); ++i) {
    double s = 0;
    for (std::size_t c = 0; c < p[i].x.size(); ++c) {
      double dx = p[i].x[c] - p[i - 1].x[c];
      s += dx * dx;
    }
    L += std::sqrt(s);
  }
  return L;
}

// point-to-segment distance in R^d
inline double point_segment_distance(const std::vector<double>& p, const std::vector<double>& a,
                                     const std::vector<double>& b) {
  double ab2 = 0, ap_ab = 0;
  for (std::size_t c = 0; c < p.size(); ++c) {
    ab2 += (b[c] - a[c]) * (b[c] - a[c]);
    ap_ab += (p[c] - a[c]) * (b[c] - a[c]);
  }
  double t = ab2 > 0 ? std::clamp(ap_ab / ab2, 0.0, 1.0) : 0.0;
  double d2 = 0;
  for (std::size_t c = 0; c < p.size(); ++c) {
    double q = a[c] + t * (b[c] - a[c]);
    d2 += (p[c] - q) * (p[c] - q);
  }
  return std::sqrt(d2);
}

inline double one_sided_hausdorff(const Polyline& A, const Polyline& B) {
  double worst = 0;
  for (auto& s : A) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < B.size(); ++i)
      best = std::min(best, point_segment_distance(s.x, B[i - 1].x, B[i].x));
    worst = std::max(worst, best);
  }
  return worst;
}

inline Polyline truncate_to_arclength(const Polyline& p, double L) {
  Polyline out;
  double acc = 0;
  out.push_back(p.front());
  for (std::size_t i = 1; i < p.size(); ++i) {
    double s = 0;
    for (std::size_t c = 0; c < p[i].x.size(); ++c) {
      double dx = p[i].x[c] - p[i - 1].x[c];
      s += dx * dx;
    }
    acc += std::sqrt(s);
    if (acc > L) break;
    out.push_back(p[i]);
  }
  return out;
}

// Unparametrized-path comparison: two-sided Hausdorff distance of the two
// polylines truncated to a common arclength.
inline double unparametrized_path_distance(const Polyline& A, const Polyline& B) {
  double L = 0.9 * std::min(polyline_arclength(A), polyline_arclength(B));
  Polyline At = truncate_to_arclength(A, L), Bt = truncate_to_arclength(B, L);
  return std::max(one_sided_hausdorff(At, B), one_sided_hausdorff(Bt, A));
}

} // namespace weylkit
