#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "weylkit/chart.hpp"
#include "weylkit/polynomial.hpp"

namespace weylkit {

struct PoleError : std::runtime_error {
  PoleError() : std::runtime_error("denominator vanishes at the evaluation point") {}
};

// Exact rational function over Q in the chart variables, kept canonical:
// gcd(num, den) = 1 (integer content included) and den has positive leading
// coefficient in graded lex order. Zero test is exact: num == 0.
class Expr {
public:
  Expr() = default;

  static Expr zero(ChartPtr c) { return Expr(c, ZPoly(c->nvars()), ZPoly::constant(c->nvars(), 1)); }
  static Expr one(ChartPtr c) { return integer(c, 1); }
  static Expr integer(ChartPtr c, Int k) {
    return Expr(c, ZPoly::constant(c->nvars(), std::move(k)), ZPoly::constant(c->nvars(), 1));
  }
  static Expr rational(ChartPtr c, const Rat& q) {
    return Expr(c, ZPoly::constant(c->nvars(), rat_num(q)), ZPoly::constant(c->nvars(), rat_den(q)));
  }
  static Expr variable(ChartPtr c, int idx) {
    if (idx < 0 || idx >= c->nvars()) throw std::invalid_argument("variable index out of range");
    return Expr(c, ZPoly::variable(c->nvars(), idx), ZPoly::constant(c->nvars(), 1));
  }
  static Expr variable(ChartPtr c, const std::string& name) {
    int idx = c->var_index(name);
    if (idx < 0) throw std::invalid_argument("unknown variable: " + name);
    return variable(c, idx);
  }

  const ChartPtr& chart() const { return chart_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  const ZPoly& num() const { return num_; }
  const ZPoly& den() const { return den_; }

  Rat constant_value() const {
    if (!is_constant()) throw std::domain_error("expression is not constant");
    if (num_.is_zero()) return 0;
    return Rat(num_.constant_value()) / Rat(den_.constant_value());
  }

  friend Expr operator+(const Expr& a, const Expr& b) {
    a.check(b);
    // Henrici: with g = gcd(d1,d2), t = n1*(d2/g) + n2*(d1/g), h = gcd(t, g):
    // result = (t/h) / ((d1/g)*(d2/h... )) -- spelled out below
    ZPoly g = zpoly_gcd(a.den_, b.den_);
    ZPoly d1g = *a.den_.divided_by(g), d2g = *b.den_.divided_by(g);
    int bound = a.chart_->degree_bound();
    ZPoly t = a.num_.mul(d2g, bound) + b.num_.mul(d1g, bound);
    if (t.is_zero()) return zero(a.chart_);
    ZPoly h = zpoly_gcd(t, g);
    ZPoly den = d1g.mul(*b.den_.divided_by(h), bound);
    return Expr(a.chart_, *t.divided_by(h), std::move(den));
  }

  friend Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

  Expr operator-() const { return Expr(chart_, -num_, den_, /*already_canonical=*/true); }

  friend Expr operator*(const Expr& a, const Expr& b) {
    a.check(b);
    if (a.is_zero() || b.is_zero()) return zero(a.chart_);
    int bound = a.chart_->degree_bound();
    ZPoly g1 = zpoly_gcd(a.num_, b.den_);
    ZPoly g2 = zpoly_gcd(b.num_, a.den_);
    ZPoly n = a.num_.divided_by(g1)->mul(*b.num_.divided_by(g2), bound);
    ZPoly d = a.den_.divided_by(g2)->mul(*b.den_.divided_by(g1), bound);
    return Expr(a.chart_, std::move(n), std::move(d), /*already_canonical=*/true);
  }

  friend Expr operator/(const Expr& a, const Expr& b) {
    if (b.is_zero()) throw std::domain_error("division by zero expression");
    Expr binv(b.chart_, b.den_, b.num_);
    return a * binv;
  }

  Expr pow(int k) const {
    if (k == 0) return one(chart_);
    if (k < 0) {
      if (is_zero()) throw std::domain_error("zero to a negative power");
      return Expr(chart_, den_, num_).pow(-k);
    }
    int bound = chart_->degree_bound();
    return Expr(chart_, num_.pow(k, bound), den_.pow(k, bound), /*already_canonical=*/true);
  }

  // exact partial derivative
  Expr diff(int var) const {
    if (var < 0 || var >= chart_->nvars()) throw std::invalid_argument("unknown variable");
    int bound = chart_->degree_bound();
    ZPoly n = num_.derivative(var).mul(den_, bound) - num_.mul(den_.derivative(var), bound);
    ZPoly d = den_.mul(den_, bound);
    return Expr(chart_, std::move(n), std::move(d));
  }
  Expr diff(const std::string& var) const {
    int idx = chart_->var_index(var);
    if (idx < 0) throw std::invalid_argument("unknown variable: " + var);
    return diff(idx);
  }

  Rat eval(const std::vector<Rat>& point) const {
    if (static_cast<int>(point.size()) != chart_->nvars())
      throw std::invalid_argument("evaluation point has wrong arity");
    Rat d = den_.eval(point);
    if (d == 0) throw PoleError();
    return num_.eval(point) / d;
  }

  double eval_double(const std::vector<double>& point) const {
    double d = den_.eval_double(point);
    if (d == 0.0) throw PoleError();
    return num_.eval_double(point) / d;
  }

  bool operator==(const Expr& o) const { return num_ == o.num_ && den_ == o.den_; }

  std::string to_string() const {
    if (num_.is_zero()) return "0";
    std::string ns = poly_string(num_);
    if (den_.is_constant() && den_.constant_value() == 1) return ns;
    std::string ds = poly_string(den_);
    bool np = num_.terms().size() > 1;
    bool dp = needs_paren_as_denominator(den_);
    std::string out;
    out += np ? "(" + ns + ")" : ns;
    out += "/";
    out += dp ? "(" + ds + ")" : ds;
    return out;
  }

private:
  Expr(ChartPtr c, ZPoly n, ZPoly d, bool already_canonical = false)
      : chart_(std::move(c)), num_(std::move(n)), den_(std::move(d)) {
    if (!already_canonical) normalize();
    else fix_sign();
  }

  void check(const Expr& o) const { require_same_chart(chart_, o.chart_); }

  void normalize() {
    if (den_.is_zero()) throw std::domain_error("zero denominator");
    if (num_.is_zero()) {
      den_ = ZPoly::constant(chart_->nvars(), 1);
      return;
    }
    ZPoly g = zpoly_gcd(num_, den_);
    num_ = *num_.divided_by(g);
    den_ = *den_.divided_by(g);
    fix_sign();
  }

  void fix_sign() {
    if (!den_.is_zero() && den_.leading_coeff() < 0) {
      num_ = -num_;
      den_ = -den_;
    }
  }

  std::string poly_string(const ZPoly& p) const {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& t : p.terms()) {
      Int c = t.c;
      bool neg = c < 0;
      if (neg) c = -c;
      if (first) {
        if (neg) os << "-";
        first = false;
      } else {
        os << (neg ? " - " : " + ");
      }
      bool has_vars = t.m.total() > 0;
      if (c != 1 || !has_vars) {
        os << c;
        if (has_vars) os << "*";
      }
      bool firstv = true;
      for (int i = 0; i < chart_->nvars(); ++i) {
        if (t.m.e[i] == 0) continue;
        if (!firstv) os << "*";
        firstv = false;
        os << chart_->var_name(i);
        if (t.m.e[i] > 1) os << "^" << t.m.e[i];
      }
    }
    return os.str();
  }

  // safe without parens only for an integer or a single pure variable power
  static bool needs_paren_as_denominator(const ZPoly& p) {
    if (p.terms().size() != 1) return true;
    const auto& t = p.terms()[0];
    if (t.m.total() == 0) return false;       // integer
    if (t.c != 1) return true;                // 2*x0 would re-associate
    int nz = 0;
    for (auto e : t.m.e)
      if (e > 0) ++nz;
    return nz != 1; // x0^2 fine, x0*x1 not
  }

  ChartPtr chart_;
  ZPoly num_;
  ZPoly den_;
};

inline Expr pow(const Expr& e, int k) { return e.pow(k); }

} // namespace weylkit
