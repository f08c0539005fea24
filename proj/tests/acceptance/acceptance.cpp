// Acceptance suite: one pass/fail line per criterion, nonzero exit on failure.
// Every tolerance is pinned here; the symbolic criteria are exact.

#include <iostream>

#include "../quartic_oracle.hpp"
#include "../test_support.hpp"
#include "weylkit/geodesic.hpp"
#include "weylkit/paracr.hpp"

using namespace weylkit;
using wktest::Rng;

namespace {

int failures = 0;

void report(int crit, bool ok, const std::string& what) {
  std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << crit << ": " << what << "\n";
  if (!ok) ++failures;
}

std::vector<WeylStructureField> weyl_corpus(const ChartPtr& c, int count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<WeylStructureField> out;
  for (int t = 0; t < count; ++t) out.push_back(wktest::random_weyl_structure(rng, c));
  return out;
}

} // namespace

int main() {
  auto c3 = Chart::standard(3);
  auto c4 = Chart::standard(4);
  auto cf = Chart::with_fiber();

  // 1. projective invariance, 20 seeded random connections, exact
  {
    Rng rng(0xA11CE);
    bool ok = true;
    std::vector<TensorField> weyls;
    for (int t = 0; t < 20; ++t) {
      ConnectionField a = wktest::random_connection(rng, c3, 5);
      std::vector<Expr> f = wktest::random_covector(rng, c3);
      TensorField Wa = projective_weyl(a);
      TensorField Wb = projective_weyl(projective_shift(a, f));
      ok = ok && (Wa - Wb).is_zero();
      weyls.push_back(std::move(Wa));
    }
    report(1, ok, "projective invariance of W on 20 seeded connections (exact)");

    // 2. trace identities on every computed W
    bool tr = true;
    for (auto& W : weyls) {
      tr = tr && W.contract(0, 2).is_zero() && W.contract(0, 1).is_zero() &&
           W.contract(0, 3).is_zero() && W.antisymmetrize({1, 2, 3}).is_zero();
    }
    report(2, tr, "W^i_jil = 0 and W^i_[jkl] = 0 on every computed Weyl tensor (exact)");
  }

  // 3 + 4. Q-P, W-trace, C-W-Q-P identities on the random Weyl corpus
  {
    auto corpus3 = weyl_corpus(c3, 10, 0xBEEF3);
    auto corpus4 = weyl_corpus(c4, 5, 0xBEEF4);
    bool qp = true, wt = true, cw = true;
    for (auto& w : corpus3) {
      qp = qp && verify_qp_identity(w).is_zero();
      wt = wt && verify_w_trace_identity(w).is_zero();
    }
    for (auto& w : corpus4) {
      qp = qp && verify_qp_identity(w).is_zero();
      wt = wt && verify_w_trace_identity(w).is_zero();
      cw = cw && verify_cwqp_identity(w).is_zero();
    }
    report(3, qp, "Q-P identity residual == 0 on 10 random Weyl structures (n=3) and 5 (n=4)");
    report(4, wt && cw, "W-trace identity on the same corpus and C-W-Q-P on the n=4 corpus (exact)");
  }

  // 5. conformal Beltrami
  {
    bool ok = true;
    for (const MetricField& g : {MetricField::euclidean(c3), wktest::sphere_metric(c3),
                                 wktest::hyperbolic_metric(c3), wktest::klein_metric(c3)}) {
      try {
        BeltramiVerdict v = beltrami_check(WeylStructureField::closed(g));
        ok = ok && v.projectively_flat && v.conformally_flat;
      } catch (const ConventionViolation&) {
        ok = false;
      }
    }
    // randomized corpus: beltrami_check throws on any implication violation,
    // and itself asserts P_(ij) = c g with c constant in every flat case
    Rng rng(0x5E1F);
    for (int t = 0; t < 8 && ok; ++t) {
      try {
        beltrami_check(wktest::random_weyl_structure(rng, c3));
      } catch (const ConventionViolation&) {
        ok = false;
      }
    }
    report(5, ok,
           "flat/sphere/hyperbolic/Klein all projectively AND conformally flat; no implication "
           "counterexample; flat cases have Rho_(ij) = c g with c constant");
  }

  // 6. Lemma 4.5 round trips
  {
    Rng rng(0x445);
    bool ok = true;
    for (int t = 0; t < 10; ++t) {
      MetricField g = wktest::random_metric(rng, c3);
      std::vector<Expr> beta = wktest::random_covector(rng, c3);
      ConnectionField rep = weyl_connection(WeylStructureField(g, beta));
      auto sol = weyl_metrizable_with(rep, g);
      if (!sol) {
        ok = false;
        continue;
      }
      for (int k = 0; k < 3; ++k)
        ok = ok && sol->first[static_cast<std::size_t>(k)] == beta[static_cast<std::size_t>(k)] &&
             sol->second[static_cast<std::size_t>(k)].is_zero();
      if (t < 5) {
        Expr sigma = Expr::one(c3) +
                     wktest::rat_expr(c3, Rat(rng.pick(1, 2), 3)) *
                         Expr::variable(c3, static_cast<int>(rng.pick(0, 2)));
        TensorField resc(c3, {Variance::Co, Variance::Co});
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) resc.at({i, j}) = sigma.pow(2) * g.entry(i, j);
        auto sol2 = weyl_metrizable_with(rep, MetricField(c3, resc));
        if (!sol2) {
          ok = false;
          continue;
        }
        for (int k = 0; k < 3; ++k)
          ok = ok && sol2->first[static_cast<std::size_t>(k)] ==
                         beta[static_cast<std::size_t>(k)] + sigma.diff(k) / sigma;
      }
    }
    report(6, ok, "weyl_metrizable_with recovers beta exactly (10 draws) and beta + d(sigma)/sigma "
                  "under g -> sigma^2 g (5 draws)");
  }

  // 7. ODE bridge round trips + planted quartic counterexample
  {
    Rng rng(0x0DE);
    bool ok = true;
    for (int t = 0; t < 10; ++t) {
      ThomasSymbols pi = thomas(wktest::random_connection(rng, cf, 5));
      ODEPair odes = odes_from_connection(pi.as_connection(), cf);
      ok = ok && odepair_is_projective(odes);
      try {
        ok = ok && thomas_from_odes(odes) == pi;
      } catch (const OdeBridgeError&) {
        ok = false;
      }
    }
    ok = ok && !odepair_is_projective(ODEPair(cf, parse_expr("p1^4", cf), Expr::zero(cf)));
    report(7, ok, "thomas <-> odes round trips on 10 random Thomas symbols; planted p1^4 rejected");
  }

  // 8. Cotton / twistor dichotomy on a corpus of >= 8 metrics
  {
    std::vector<std::pair<MetricField, bool>> corpus; // (metric, expected conformally flat)
    corpus.push_back({MetricField::euclidean(c3), true});
    corpus.push_back({wktest::sphere_metric(c3), true});
    corpus.push_back({wktest::hyperbolic_metric(c3), true});
    corpus.push_back({wktest::klein_metric(c3), true});
    corpus.push_back({MetricField::conformally_flat(c3, parse_expr("(1+x0^2)^2", c3)), true});
    {
      TensorField g(c3, {Variance::Co, Variance::Co});
      g.at({0, 0}) = Expr::one(c3);
      g.at({1, 1}) = parse_expr("1+x0^2", c3);
      g.at({2, 2}) = parse_expr("1+x1^2", c3);
      corpus.push_back({MetricField(c3, g), false});
    }
    {
      TensorField g(c3, {Variance::Co, Variance::Co});
      g.at({0, 0}) = Expr::one(c3);
      g.at({0, 1}) = Expr::variable(c3, 2);
      g.at({1, 0}) = Expr::variable(c3, 2);
      g.at({1, 1}) = Expr::integer(c3, 2);
      g.at({2, 2}) = parse_expr("1+x0", c3);
      corpus.push_back({MetricField(c3, g), false});
    }
    corpus.push_back({MetricField(c3, [&] {
                        TensorField g(c3, {Variance::Co, Variance::Co});
                        g.at({0, 0}) = Expr::one(c3);
                        g.at({1, 1}) = Expr::one(c3);
                        g.at({2, 2}) = parse_expr("1+x0^2+x1^2", c3);
                        return g;
                      }()),
                      false});
    bool ok = corpus.size() >= 8;
    for (auto& [g, expect_flat] : corpus) {
      bool cz = cotton(WeylStructureField::closed(g)).is_zero();
      auto tt = twistor_quartic_type(g);
      ok = ok && cz == expect_flat &&
           (tt.kind == TwistorQuarticType::Kind::Zero) == expect_flat;
    }
    report(8, ok, "Cotton == 0 exactly on the flat subset (incl. delta, sphere, Klein); twistor "
                  "type Zero iff conformally flat, TypeN otherwise (corpus of 8)");
  }

  // 9. quartic classifier vs the 1e-8 numeric oracle, 200 seeded draws
  {
    Rng rng(0x9A47);
    bool ok = true;
    int n = 0;
    while (n < 200) {
      QuarticCoefficients q{rng.rat(-10, 10, 3), rng.rat(-10, 10, 3), rng.rat(-10, 10, 3),
                            rng.rat(-10, 10, 3), rng.rat(-10, 10, 3)};
      if (q.all_zero() || q.C4 == 0) continue;
      ++n;
      auto exact = classify_quartic(q).partition();
      auto num = wktest::numeric_quartic_partition(q);
      ok = ok && exact.first == num.real_mults && exact.second == num.complex_pair_mults;
    }
    report(9, ok, "identical multiplicity partitions on 200 seeded rational quartics "
                  "(numeric clustering tolerance 1e-8; classifier exact)");
  }

  // 10. para-CR frame: contact annihilation, flat-projective brackets, and the
  // planted co-vanishing table frozen from the pre-build oracle
  {
    Rng rng(0xBA6);
    bool ok = true;
    for (int t = 0; t < 10; ++t) {
      auto [v1, v2] = paracr_frame(wktest::random_connection(rng, c3, 6), cf);
      ok = ok && v1.contact_pairing().is_zero() && v2.contact_pairing().is_zero();
    }
    for (int t = 0; t < 5; ++t) {
      ConnectionField g =
          projective_shift(ConnectionField::zero(c3), wktest::random_covector(rng, c3));
      auto [v1, v2] = paracr_frame(g, cf);
      VectorField5 br = bracket(v1, v2);
      for (auto& e : br.comp) ok = ok && e.is_zero();
    }
    ConnectionField planted(c3);
    planted.set_gamma(0, 1, 1, Expr::variable(c3, 2));
    std::vector<std::vector<Rat>> samples = {
        {Rat(0), Rat(0), Rat(0), Rat(0), Rat(0)},
        {Rat(1), Rat(1, 2), Rat(-1), Rat(1, 3), Rat(1, 5)},
        {Rat(-1, 2), Rat(2), Rat(1, 4), Rat(-2, 3), Rat(1)}};
    auto rep = paracr_torsion_diagnostics(planted, cf, samples);
    for (auto& row : rep.rows)
      ok = ok && row.defect_p1 == Rat(1) && row.defect_p2 == 0 && row.weyl_112 == Rat(-1) &&
           row.weyl_212 == 0 && row.covanish;
    report(10, ok, "theta(v1) = theta(v2) = 0 (10 draws); [v1,v2] = 0 on flat-projective inputs; "
                   "planted co-vanishing table matches the frozen oracle");
  }

  // 11. geodesic numerics: unparametrized paths agree within 1e-6 at h = 1e-3
  {
    Rng rng(0x6E0);
    bool ok = true;
    for (int t = 0; t < 5; ++t) {
      ConnectionField a = wktest::random_connection(rng, c3, 4);
      std::vector<Expr> f;
      for (int k = 0; k < 3; ++k)
        f.push_back(wktest::rat_expr(c3, Rat(rng.pick(-1, 1), 8)) +
                    wktest::rat_expr(c3, Rat(rng.pick(-1, 1), 8)) * Expr::variable(c3, k));
      ConnectionField b = projective_shift(a, f);
      std::vector<double> x0 = {0.1, 0.05, -0.1};
      std::vector<double> v0 = {0.9, rng.real(-0.3, 0.3), rng.real(-0.3, 0.3)};
      try {
        Polyline pa = integrate_geodesic(a, x0, v0, 1e-3, 1000);
        Polyline pb = integrate_geodesic(b, x0, v0, 1e-3, 1400);
        double d = unparametrized_path_distance(pa, pb);
        ok = ok && d < 1e-6;
      } catch (const GeodesicError&) {
        ok = false;
      }
    }
    report(11, ok, "projectively equivalent connections give identical unparametrized paths "
                   "(Hausdorff < 1e-6 at h = 1e-3 over unit time, 5 random pairs)");
  }

  if (failures == 0) std::cout << "acceptance: all criteria PASS\n";
  else std::cout << "acceptance: " << failures << " criteria FAILED\n";
  return failures == 0 ? 0 : 1;
}
