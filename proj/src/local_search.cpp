#include "gsc/local_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace gsc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class Simplex {
 public:
  Simplex(const ObjectiveFn& f, const BoxBounds& box, long budget)
      : f_(f), box_(box), budget_(budget) {}

  double eval(const Eigen::VectorXd& x) {
    ++evaluations_;
    const double v = f_(x);
    return std::isnan(v) ? kInf : v;
  }
  bool exhausted() const { return evaluations_ >= budget_; }
  long evaluations() const { return evaluations_; }

  // Runs one Nelder-Mead descent from `start`; returns true on convergence.
  // Vertices live in the columns of pts_; order_ ranks them best to worst.
  bool run(const Eigen::VectorXd& start, double start_value, double step, double xtol) {
    const int n = static_cast<int>(start.size());
    const double alpha = 1.0;
    const double beta = 1.0 + 2.0 / n;
    const double gamma = 0.75 - 1.0 / (2.0 * n);
    const double delta = 1.0 - 1.0 / n;

    pts_ = start.replicate(1, n + 1);
    vals_.assign(n + 1, start_value);
    for (int i = 0; i < n; ++i) {
      auto p = pts_.col(i + 1);
      const double up = p[i] + step;
      p[i] = up <= box_.upper[i] ? up : p[i] - step;
      p = box_.clamp(p);
      vals_[i + 1] = eval(p);
    }
    order_.resize(n + 1);
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) { return vals_[a] < vals_[b]; });
    Eigen::VectorXd sum = pts_.rowwise().sum();

    Eigen::VectorXd centroid(n), xr(n), xt(n);
    while (true) {
      const auto best = pts_.col(order_[0]);
      double extent = 0.0;
      for (int i = 1; i <= n; ++i) extent = std::max(extent, (pts_.col(order_[i]) - best).cwiseAbs().maxCoeff());
      if (extent < xtol) return true;
      if (exhausted()) return false;

      const int w = order_[n];
      centroid = (sum - pts_.col(w)) / n;
      const double f_best = vals_[order_[0]];
      const double f_second_worst = vals_[order_[n - 1]];
      const double f_worst = vals_[w];

      xr = box_.clamp(centroid + alpha * (centroid - pts_.col(w)));
      const double fr = eval(xr);
      if (fr < f_best) {
        xt = box_.clamp(centroid + beta * (xr - centroid));
        const double fe = eval(xt);
        if (fe < fr) replace_worst(xt, fe, sum);
        else replace_worst(xr, fr, sum);
        continue;
      }
      if (fr < f_second_worst) {
        replace_worst(xr, fr, sum);
        continue;
      }
      if (fr < f_worst) {
        xt = box_.clamp(centroid + gamma * (xr - centroid));
        const double fc = eval(xt);
        if (fc <= fr) {
          replace_worst(xt, fc, sum);
          continue;
        }
      } else {
        xt = box_.clamp(centroid - gamma * (centroid - pts_.col(w)));
        const double fc = eval(xt);
        if (fc < f_worst) {
          replace_worst(xt, fc, sum);
          continue;
        }
      }
      const int b0 = order_[0];
      for (int i = 1; i <= n; ++i) {
        const int j = order_[i];
        pts_.col(j) = pts_.col(b0) + delta * (pts_.col(j) - pts_.col(b0));
        vals_[j] = eval(pts_.col(j));
      }
      std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) { return vals_[a] < vals_[b]; });
      sum = pts_.rowwise().sum();
    }
  }

  Eigen::VectorXd best() const { return pts_.col(order_[0]); }
  double best_value() const { return vals_[order_[0]]; }

 private:
  // Overwrites the worst vertex and moves it to its rank; equal values keep
  // the older vertex ahead, as a stable re-sort would.
  void replace_worst(const Eigen::VectorXd& x, double v, Eigen::VectorXd& sum) {
    const int w = order_.back();
    sum += x - pts_.col(w);
    pts_.col(w) = x;
    vals_[w] = v;
    size_t pos = order_.size() - 1;
    while (pos > 0 && vals_[order_[pos - 1]] > v) {
      order_[pos] = order_[pos - 1];
      --pos;
    }
    order_[pos] = w;
  }

  const ObjectiveFn& f_;
  const BoxBounds& box_;
  long budget_;
  long evaluations_ = 0;
  Eigen::MatrixXd pts_;
  std::vector<double> vals_;
  std::vector<int> order_;
};

}  // namespace

LocalSearchResult minimize_in_box(const ObjectiveFn& f, const Eigen::VectorXd& x0, const BoxBounds& box,
                                  const LocalSearchOptions& opts) {
  if (x0.size() == 0) throw std::invalid_argument("empty start vector");
  if (box.lower.size() != x0.size() || box.upper.size() != x0.size())
    throw std::invalid_argument("bounds dimension mismatch");
  if (!(opts.x_tolerance > 0.0)) throw std::invalid_argument("x_tolerance must be positive");

  Simplex simplex(f, box, opts.max_evaluations);
  LocalSearchResult res;
  res.x = box.clamp(x0);
  res.value = simplex.eval(res.x);

  double step = opts.initial_step;
  for (int attempt = 0; attempt <= opts.max_restarts; ++attempt) {
    const bool done = simplex.run(res.x, res.value, step, opts.x_tolerance);
    const double moved = (simplex.best() - res.x).cwiseAbs().maxCoeff();
    const bool improved = simplex.best_value() < res.value;
    if (improved) {
      res.x = simplex.best();
      res.value = simplex.best_value();
    }
    res.converged = done;
    if (!done) break;
    // A restart that neither improves nor moves confirms the minimum.
    if (!improved || moved < opts.x_tolerance) break;
    step = std::max(std::min(opts.initial_step, 10.0 * moved), 1e3 * opts.x_tolerance);
  }
  res.evaluations = simplex.evaluations();
  return res;
}

}  // namespace gsc
