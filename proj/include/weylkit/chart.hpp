#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace weylkit {

// A coordinate chart: n base variables, optionally the two fiber slopes
// (p1, p2) of the projectivized cotangent bundle when n == 3.
// Immutable after construction; shared freely between expressions.
class Chart {
public:
  Chart(int dim, std::vector<std::string> base_vars,
        std::vector<std::string> fiber_vars = {}, int degree_bound = 64)
      : dim_(dim), base_(std::move(base_vars)), fiber_(std::move(fiber_vars)),
        degree_bound_(degree_bound) {
    if (dim_ < 2 || dim_ > 6)
      throw std::invalid_argument("chart dimension must be in [2,6]");
    if (static_cast<int>(base_.size()) != dim_)
      throw std::invalid_argument("chart needs exactly n base variable names");
    if (!fiber_.empty() && (dim_ != 3 || fiber_.size() != 2))
      throw std::invalid_argument("fiber variables are (p1,p2) and require n=3");
    if (degree_bound_ < 1)
      throw std::invalid_argument("degree bound must be positive");
    all_ = base_;
    all_.insert(all_.end(), fiber_.begin(), fiber_.end());
    for (std::size_t i = 0; i < all_.size(); ++i)
      for (std::size_t j = i + 1; j < all_.size(); ++j)
        if (all_[i] == all_[j])
          throw std::invalid_argument("duplicate variable name: " + all_[i]);
  }

  static std::shared_ptr<const Chart> standard(int dim, int degree_bound = 64) {
    std::vector<std::string> v;
    for (int i = 0; i < dim; ++i) v.push_back("x" + std::to_string(i));
    return std::make_shared<const Chart>(dim, std::move(v),
                                         std::vector<std::string>{}, degree_bound);
  }

  // n=3 chart extended by the correspondence-space slopes p1, p2.
  static std::shared_ptr<const Chart> with_fiber(int degree_bound = 64) {
    return std::make_shared<const Chart>(
        3, std::vector<std::string>{"x0", "x1", "x2"},
        std::vector<std::string>{"p1", "p2"}, degree_bound);
  }

  int dim() const { return dim_; }
  bool has_fiber() const { return !fiber_.empty(); }
  int nvars() const { return static_cast<int>(all_.size()); }
  int degree_bound() const { return degree_bound_; }
  const std::vector<std::string>& vars() const { return all_; }
  const std::vector<std::string>& base_vars() const { return base_; }
  const std::string& var_name(int i) const { return all_.at(i); }

  // -1 if unknown
  int var_index(const std::string& name) const {
    for (std::size_t i = 0; i < all_.size(); ++i)
      if (all_[i] == name) return static_cast<int>(i);
    return -1;
  }

  bool same_as(const Chart& other) const {
    return dim_ == other.dim_ && all_ == other.all_;
  }

private:
  int dim_;
  std::vector<std::string> base_;
  std::vector<std::string> fiber_;
  std::vector<std::string> all_;
  int degree_bound_;
};

using ChartPtr = std::shared_ptr<const Chart>;

inline void require_same_chart(const ChartPtr& a, const ChartPtr& b) {
  if (!a || !b || !a->same_as(*b))
    throw std::invalid_argument("chart mismatch");
}

} // namespace weylkit
