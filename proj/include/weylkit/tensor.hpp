#pragma once

#include <functional>
#include <initializer_list>
#include <numeric>

#include "weylkit/expr.hpp"

namespace weylkit {

enum class Variance { Contra, Co };

// Dense multi-index array of Expr over the chart's base dimension.
// Indices are positional and 0-based throughout.
class TensorField {
public:
  TensorField(ChartPtr chart, std::vector<Variance> slots)
      : chart_(std::move(chart)), slots_(std::move(slots)) {
    std::size_t count = 1;
    for (std::size_t r = 0; r < slots_.size(); ++r) count *= static_cast<std::size_t>(n());
    data_.assign(count, Expr::zero(chart_));
  }

  static TensorField scalar(ChartPtr chart, Expr value) {
    TensorField t(chart, {});
    t.data_[0] = std::move(value);
    return t;
  }

  static TensorField kronecker(ChartPtr chart) {
    TensorField t(chart, {Variance::Contra, Variance::Co});
    for (int i = 0; i < t.n(); ++i) t.at({i, i}) = Expr::one(chart);
    return t;
  }

  const ChartPtr& chart() const { return chart_; }
  int n() const { return chart_->dim(); }
  int rank() const { return static_cast<int>(slots_.size()); }
  const std::vector<Variance>& slots() const { return slots_; }

  Expr& at(const std::vector<int>& idx) { return data_[offset(idx)]; }
  const Expr& at(const std::vector<int>& idx) const { return data_[offset(idx)]; }

  bool is_zero() const {
    for (auto& e : data_)
      if (!e.is_zero()) return false;
    return true;
  }

  friend TensorField operator+(const TensorField& a, const TensorField& b) {
    a.check_same_shape(b);
    TensorField r = a;
    for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] = r.data_[i] + b.data_[i];
    return r;
  }
  friend TensorField operator-(const TensorField& a, const TensorField& b) {
    a.check_same_shape(b);
    TensorField r = a;
    for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] = r.data_[i] - b.data_[i];
    return r;
  }
  TensorField scaled(const Expr& s) const {
    TensorField r = *this;
    for (auto& e : r.data_) e = e * s;
    return r;
  }
  TensorField scaled(const Rat& q) const { return scaled(Expr::rational(chart_, q)); }

  friend TensorField outer(const TensorField& a, const TensorField& b) {
    require_same_chart(a.chart_, b.chart_);
    std::vector<Variance> s = a.slots_;
    s.insert(s.end(), b.slots_.begin(), b.slots_.end());
    TensorField r(a.chart_, s);
    std::vector<int> ia(a.rank()), ib(b.rank());
    a.for_each_index([&](const std::vector<int>& I) {
      b.for_each_index([&](const std::vector<int>& J) {
        std::vector<int> K = I;
        K.insert(K.end(), J.begin(), J.end());
        r.at(K) = a.at(I) * b.at(J);
      });
    });
    return r;
  }

  // Trace over slots a (contravariant) and b (covariant); pass a metric-aware
  // wrapper for same-variance contractions.
  TensorField contract(int sa, int sb) const {
    check_slot(sa);
    check_slot(sb);
    if (sa == sb) throw std::invalid_argument("contract: slots must differ");
    if (slots_[sa] == slots_[sb])
      throw std::invalid_argument("contract: variance mismatch without metric");
    if (sa > sb) std::swap(sa, sb);
    std::vector<Variance> s;
    for (int k = 0; k < rank(); ++k)
      if (k != sa && k != sb) s.push_back(slots_[k]);
    TensorField r(chart_, s);
    r.for_each_index([&](const std::vector<int>& J) {
      Expr acc = Expr::zero(chart_);
      for (int m = 0; m < n(); ++m) {
        std::vector<int> I;
        I.reserve(rank());
        std::size_t jpos = 0;
        for (int k = 0; k < rank(); ++k) {
          if (k == sa || k == sb) I.push_back(m);
          else I.push_back(J[jpos++]);
        }
        acc = acc + at(I);
      }
      r.at(J) = acc;
    });
    return r;
  }

  enum class Bracket { Round, Square };

  // Symmetrize (round) or antisymmetrize (square) over the given slots,
  // which must share variance. Weight 1/k! as in the index-bracket convention.
  TensorField sym_antisym(const std::vector<int>& slots, Bracket mode) const {
    if (slots.size() < 2) return *this;
    for (int s : slots) check_slot(s);
    for (std::size_t i = 1; i < slots.size(); ++i)
      if (slots_[slots[i]] != slots_[slots[0]])
        throw std::invalid_argument("sym_antisym: slots must share variance");
    std::vector<int> perm(slots.begin(), slots.end());
    std::sort(perm.begin(), perm.end());
    TensorField r(chart_, slots_);
    long fact = 1;
    for (std::size_t k = 2; k <= slots.size(); ++k) fact *= static_cast<long>(k);
    Expr w = Expr::rational(chart_, Rat(1, fact));
    r.for_each_index([&](const std::vector<int>& I) {
      std::vector<int> sub;
      for (int s : perm) sub.push_back(I[s]);
      std::sort(sub.begin(), sub.end());
      Expr acc = Expr::zero(chart_);
      // iterate permutations of the multiset positions
      std::vector<int> order(perm.size());
      std::iota(order.begin(), order.end(), 0);
      std::vector<int> vals;
      for (int s : perm) vals.push_back(I[s]);
      do {
        std::vector<int> J = I;
        for (std::size_t k = 0; k < perm.size(); ++k) J[perm[k]] = vals[order[k]];
        int sign = 1;
        if (mode == Bracket::Square) sign = permutation_sign(order);
        acc = sign > 0 ? acc + at(J) : acc - at(J);
      } while (std::next_permutation(order.begin(), order.end()));
      r.at(I) = acc * w;
    });
    return r;
  }

  TensorField symmetrize(const std::vector<int>& slots) const {
    return sym_antisym(slots, Bracket::Round);
  }
  TensorField antisymmetrize(const std::vector<int>& slots) const {
    return sym_antisym(slots, Bracket::Square);
  }

  TensorField transpose(int a, int b) const {
    check_slot(a);
    check_slot(b);
    std::vector<Variance> s = slots_;
    std::swap(s[a], s[b]);
    TensorField r(chart_, s);
    for_each_index([&](const std::vector<int>& I) {
      std::vector<int> J = I;
      std::swap(J[a], J[b]);
      r.at(J) = at(I);
    });
    return r;
  }

  void for_each_index(const std::function<void(const std::vector<int>&)>& f) const {
    std::vector<int> idx(static_cast<std::size_t>(rank()), 0);
    if (rank() == 0) {
      f(idx);
      return;
    }
    while (true) {
      f(idx);
      int k = rank() - 1;
      while (k >= 0) {
        if (++idx[static_cast<std::size_t>(k)] < n()) break;
        idx[static_cast<std::size_t>(k)] = 0;
        --k;
      }
      if (k < 0) return;
    }
  }

  bool operator==(const TensorField& o) const {
    if (!chart_->same_as(*o.chart_) || slots_ != o.slots_) return false;
    for (std::size_t i = 0; i < data_.size(); ++i)
      if (!(data_[i] == o.data_[i])) return false;
    return true;
  }

private:
  static int permutation_sign(const std::vector<int>& order) {
    int sign = 1;
    for (std::size_t i = 0; i < order.size(); ++i)
      for (std::size_t j = i + 1; j < order.size(); ++j)
        if (order[i] > order[j]) sign = -sign;
    return sign;
  }

  std::size_t offset(const std::vector<int>& idx) const {
    if (static_cast<int>(idx.size()) != rank())
      throw std::invalid_argument("tensor index arity mismatch");
    std::size_t off = 0;
    for (int k = 0; k < rank(); ++k) {
      int i = idx[static_cast<std::size_t>(k)];
      if (i < 0 || i >= n()) throw std::out_of_range("tensor index out of range");
      off = off * static_cast<std::size_t>(n()) + static_cast<std::size_t>(i);
    }
    return off;
  }

  void check_slot(int s) const {
    if (s < 0 || s >= rank()) throw std::invalid_argument("slot out of range");
  }

  void check_same_shape(const TensorField& o) const {
    require_same_chart(chart_, o.chart_);
    if (slots_ != o.slots_) throw std::invalid_argument("tensor shape mismatch");
  }

  ChartPtr chart_;
  std::vector<Variance> slots_;
  std::vector<Expr> data_;
};

} // namespace weylkit
