#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "weylkit/confweyl.hpp"

namespace weylkit {

// ---------- dense univariate polynomials over Q (small degree) ----------

using UPoly = std::vector<Rat>; // coefficient of t^k at index k

namespace upoly {

inline void trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}
inline int deg(const UPoly& p) { return static_cast<int>(p.size()) - 1; }
inline bool is_zero(const UPoly& p) { return p.empty(); }

inline UPoly derivative(const UPoly& p) {
  UPoly r;
  for (std::size_t k = 1; k < p.size(); ++k) r.push_back(p[k] * Rat(k));
  trim(r);
  return r;
}

inline UPoly scale(UPoly p, const Rat& c) {
  for (auto& x : p) x *= c;
  trim(p);
  return p;
}

inline UPoly sub(const UPoly& a, const UPoly& b) {
  UPoly r(std::max(a.size(), b.size()), Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

inline UPoly mul(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

inline std::pair<UPoly, UPoly> divmod(UPoly a, const UPoly& b) {
  if (b.empty()) throw std::domain_error("univariate division by zero");
  UPoly q(a.size() > b.size() ? a.size() - b.size() + 1 : 1, Rat(0));
  while (!a.empty() && a.size() >= b.size()) {
    Rat c = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    q[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
    trim(a);
  }
  trim(q);
  return {q, a};
}

inline UPoly rem(const UPoly& a, const UPoly& b) { return divmod(a, b).second; }

inline UPoly monic(UPoly p) {
  if (p.empty()) return p;
  Rat lead = p.back();
  for (auto& c : p) c /= lead;
  return p;
}

inline UPoly gcd(UPoly a, UPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly r = rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

inline Rat eval(const UPoly& p, const Rat& t) {
  Rat acc = 0;
  for (std::size_t k = p.size(); k-- > 0;) acc = acc * t + p[k];
  return acc;
}

// Yun squarefree decomposition: p = lead * prod f_m^m, f_m squarefree & monic.
// Returns pairs (f_m, m) for nonconstant f_m.
inline std::vector<std::pair<UPoly, int>> squarefree_decomposition(UPoly p) {
  std::vector<std::pair<UPoly, int>> out;
  trim(p);
  if (deg(p) < 1) return out;
  p = monic(p);
  UPoly dp = derivative(p);
  UPoly a = gcd(p, dp);
  UPoly b = divmod(p, a).first;
  UPoly c = divmod(dp, a).first;
  UPoly d = sub(c, derivative(b));
  int m = 1;
  while (deg(b) > 0) {
    UPoly f = gcd(b, d);
    if (deg(f) > 0) out.push_back({monic(f), m});
    b = divmod(b, f).first;
    c = divmod(d, f).first;
    d = sub(c, derivative(b));
    ++m;
  }
  return out;
}

inline int sign_at_plus_inf(const UPoly& p) {
  if (p.empty()) return 0;
  return p.back() > 0 ? 1 : -1;
}
inline int sign_at_minus_inf(const UPoly& p) {
  if (p.empty()) return 0;
  int s = p.back() > 0 ? 1 : -1;
  return (deg(p) % 2 == 0) ? s : -s;
}

// count of distinct real roots of a squarefree polynomial (Sturm)
inline int count_real_roots(const UPoly& f) {
  if (deg(f) < 1) return 0;
  std::vector<UPoly> chain{f, derivative(f)};
  while (deg(chain.back()) > 0) {
    UPoly r = rem(chain[chain.size() - 2], chain.back());
    if (is_zero(r)) break;
    for (auto& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  auto changes = [&](bool at_plus) {
    int v = 0, prev = 0;
    for (auto& p : chain) {
      int s = at_plus ? sign_at_plus_inf(p) : sign_at_minus_inf(p);
      if (s == 0) continue;
      if (prev != 0 && s != prev) ++v;
      prev = s;
    }
    return v;
  };
  return changes(false) - changes(true);
}

// all rational roots of an integer-coefficient version of p (exact)
inline std::vector<Rat> rational_roots(const UPoly& p) {
  std::vector<Rat> out;
  if (deg(p) < 1) return out;
  // clear denominators
  Int den = 1;
  for (auto& c : p) den = boost::multiprecision::lcm(den, rat_den(c));
  std::vector<Int> z;
  for (auto& c : p) z.push_back(rat_num(c) * (den / rat_den(c)));
  while (!z.empty() && z.back() == 0) z.pop_back();
  // strip t^k factors -> root 0
  std::size_t low = 0;
  while (low < z.size() && z[low] == 0) ++low;
  if (low > 0) out.push_back(Rat(0));
  if (low >= z.size()) return out;
  Int a0 = z[low], an = z.back();
  auto divisors = [](Int v) {
    std::vector<Int> ds;
    if (v < 0) v = -v;
    for (Int d = 1; d * d <= v; ++d)
      if (v % d == 0) {
        ds.push_back(d);
        ds.push_back(v / d);
      }
    std::sort(ds.begin(), ds.end());
    ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
    return ds;
  };
  for (const Int& pnum : divisors(a0))
    for (const Int& qden : divisors(an))
      for (int s : {1, -1}) {
        Rat cand(s * pnum, qden);
        if (eval(p, cand) == 0 &&
            std::find(out.begin(), out.end(), cand) == out.end())
          out.push_back(cand);
      }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool is_rational_square(const Rat& q, Rat* root = nullptr) {
  if (q < 0) return false;
  Int n = rat_num(q), d = rat_den(q);
  Int sn = boost::multiprecision::sqrt(n), sd = boost::multiprecision::sqrt(d);
  if (sn * sn != n || sd * sd != d) return false;
  if (root) *root = Rat(sn, sd);
  return true;
}

// Irreducible factorization over Q for deg <= 4 (monic input, squarefree,
// no rational roots). Quartics split via the classical resolvent cubic.
inline std::vector<UPoly> factor_irreducible(const UPoly& f) {
  int d = deg(f);
  if (d <= 2) return {f};
  if (d == 3) return {f}; // no rational root => irreducible for cubics
  // depressed quartic s^4 + p s^2 + q s + r via t = s - A/4
  Rat A = f[3], B = f[2], C = f[1], D = f[0];
  Rat p = B - 3 * A * A / 8;
  Rat q = C - A * B / 2 + A * A * A / 8;
  Rat r = D - A * C / 4 + A * A * B / 16 - 3 * A * A * A * A / 256;
  auto undepress = [&](const UPoly& gdep) {
    // substitute s = t + A/4
    UPoly shift{A / 4, Rat(1)};
    UPoly acc{Rat(0)}, powp{Rat(1)};
    for (std::size_t k = 0; k < gdep.size(); ++k) {
      UPoly term = scale(powp, gdep[k]);
      acc = sub(acc, scale(term, Rat(-1)));
      powp = mul(powp, shift);
    }
    return monic(acc);
  };
  // u = 0 split: (s^2+v)(s^2+w), v+w = p, vw = r, requires q = 0
  if (q == 0) {
    Rat disc = p * p - 4 * r, sq;
    if (is_rational_square(disc, &sq)) {
      Rat v = (p + sq) / 2, w = (p - sq) / 2;
      UPoly g1{v, Rat(0), Rat(1)}, g2{w, Rat(0), Rat(1)};
      return {undepress(g1), undepress(g2)};
    }
  }
  // resolvent z^3 + 2p z^2 + (p^2-4r) z - q^2 with z = u^2
  UPoly res{-q * q, p * p - 4 * r, 2 * p, Rat(1)};
  for (const Rat& z : rational_roots(res)) {
    if (z <= 0) continue;
    Rat u;
    if (!is_rational_square(z, &u)) continue;
    Rat v = (p + z - q / u) / 2;
    Rat w = (p + z + q / u) / 2;
    UPoly g1{v, u, Rat(1)}, g2{w, -u, Rat(1)};
    if (!is_zero(sub(mul(g1, g2), UPoly{r, q, p, Rat(0), Rat(1)}))) continue;
    return {undepress(g1), undepress(g2)};
  }
  return {f};
}

} // namespace upoly

// ---------- binary quartic classification ----------

// Coefficients of C4 a1^4 + 4 C3 a1^3 a2 + 6 C2 a1^2 a2^2 + 4 C1 a1 a2^3 + C0 a2^4.
struct QuarticCoefficients {
  Rat C4, C3, C2, C1, C0;
  bool all_zero() const { return C4 == 0 && C3 == 0 && C2 == 0 && C1 == 0 && C0 == 0; }
};

struct RealRoot {
  bool at_infinity = false;       // [1:0]
  std::optional<Rat> rational;    // root t = a1/a2 when rational
  int algebraic_degree = 1;       // degree of the minimal polynomial
  int multiplicity = 1;

  std::string projective_string() const {
    if (at_infinity) return "[1:0]";
    if (rational) {
      Int a = rat_num(*rational), b = rat_den(*rational);
      return "[" + a.str() + ":" + b.str() + "]";
    }
    return "[deg " + std::to_string(algebraic_degree) + "]";
  }
};

struct RootType {
  enum class Kind { Zero, Typed };
  Kind kind = Kind::Typed;
  std::vector<RealRoot> real_roots;     // sorted: infinity first, then by value/degree
  std::vector<int> complex_pair_multiplicities;

  bool is_type_n() const {
    return kind == Kind::Typed && real_roots.size() == 1 && real_roots[0].multiplicity == 4 &&
           complex_pair_multiplicities.empty();
  }

  // (multiplicity partition of real roots, multiplicities of complex pairs)
  std::pair<std::vector<int>, std::vector<int>> partition() const {
    std::vector<int> re, im;
    for (auto& r : real_roots) re.push_back(r.multiplicity);
    im = complex_pair_multiplicities;
    std::sort(re.begin(), re.end());
    std::sort(im.begin(), im.end());
    return {re, im};
  }
};

// Exact classification over RP^1: squarefree decomposition, rational-root
// extraction, irreducible splitting and Sturm real-root counts; the root at
// infinity is the degree drop of the dehomogenized quartic.
inline RootType classify_quartic(const QuarticCoefficients& c) {
  RootType out;
  if (c.all_zero()) {
    out.kind = RootType::Kind::Zero;
    return out;
  }
  out.kind = RootType::Kind::Typed;
  UPoly p{c.C0, 4 * c.C1, 6 * c.C2, 4 * c.C3, c.C4};
  upoly::trim(p);
  int mult_inf = 4 - upoly::deg(p);
  if (mult_inf > 0) {
    RealRoot r;
    r.at_infinity = true;
    r.multiplicity = mult_inf;
    out.real_roots.push_back(r);
  }
  for (auto& [f, m] : upoly::squarefree_decomposition(p)) {
    UPoly rest = f;
    for (const Rat& t0 : upoly::rational_roots(f)) {
      RealRoot r;
      r.rational = t0;
      r.multiplicity = m;
      out.real_roots.push_back(r);
      rest = upoly::divmod(rest, UPoly{-t0, Rat(1)}).first;
    }
    if (upoly::deg(rest) > 0) {
      for (const UPoly& irr : upoly::factor_irreducible(upoly::monic(rest))) {
        int nreal = upoly::count_real_roots(irr);
        for (int k = 0; k < nreal; ++k) {
          RealRoot r;
          r.algebraic_degree = upoly::deg(irr);
          r.multiplicity = m;
          out.real_roots.push_back(r);
        }
        int pairs = (upoly::deg(irr) - nreal) / 2;
        for (int k = 0; k < pairs; ++k) out.complex_pair_multiplicities.push_back(m);
      }
    }
  }
  std::sort(out.real_roots.begin(), out.real_roots.end(), [](const RealRoot& a, const RealRoot& b) {
    if (a.at_infinity != b.at_infinity) return a.at_infinity;
    if (a.rational.has_value() != b.rational.has_value()) return a.rational.has_value();
    if (a.rational && b.rational && *a.rational != *b.rational) return *a.rational < *b.rational;
    if (a.algebraic_degree != b.algebraic_degree) return a.algebraic_degree < b.algebraic_degree;
    return a.multiplicity < b.multiplicity;
  });
  std::sort(out.complex_pair_multiplicities.begin(), out.complex_pair_multiplicities.end());
  return out;
}

// ---------- twistor quartic type of a conformal 3-manifold ----------

// Either zero (conformally flat) or type N with the principal root along the
// fiber direction [a1:a2] = [0:1].
struct TwistorQuarticType {
  enum class Kind { Zero, TypeN };
  Kind kind;
  std::string principal_root; // "[0:1]" for TypeN
  int multiplicity;           // 4 for TypeN
};

inline TwistorQuarticType twistor_quartic_type(const MetricField& g) {
  if (g.n() != 3) throw std::invalid_argument("twistor quartic type requires n = 3");
  bool flat = cotton(WeylStructureField::closed(g)).is_zero();
  if (flat) return {TwistorQuarticType::Kind::Zero, "", 0};
  return {TwistorQuarticType::Kind::TypeN, "[0:1]", 4};
}

} // namespace weylkit
