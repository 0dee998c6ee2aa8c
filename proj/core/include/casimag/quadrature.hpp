#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace casimag::quad {

struct Options {
  double rel_tol = 1e-8;
  double abs_tol = 0.0;
  int max_subdivisions = 400;
};

/// Result of a (possibly vector-valued) integration. `error[k]` is the summed
/// Gauss/Kronrod discrepancy of component k.
struct Result {
  std::vector<double> value;
  std::vector<double> error;
  std::size_t evaluations = 0;
  bool converged = true;

  double max_error() const {
    double m = 0.0;
    for (double e : error) m = std::max(m, e);
    return m;
  }
};

namespace detail {

// Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
inline constexpr std::array<double, 8> xgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> wgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Interval {
  double a;
  double b;
  std::size_t slot;  // values at pool[slot], errors at pool[slot + dim]
};

// One 15-point Kronrod panel. `f(x, out)` writes `dim` values; the Kronrod
// estimate goes to out_value and |Kronrod - Gauss| to out_error.
template <class F>
void panel(F& f, double a, double b, std::size_t dim, double* out_value, double* out_error,
           std::vector<double>& scratch) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  scratch.assign(3 * dim, 0.0);
  double* gauss = scratch.data();
  std::span<double> f1(scratch.data() + dim, dim);
  std::span<double> f2(scratch.data() + 2 * dim, dim);

  f(centre, f1);
  for (std::size_t k = 0; k < dim; ++k) {
    out_value[k] = wgk[7] * f1[k];
    gauss[k] = wg[3] * f1[k];
  }
  for (int j = 0; j < 7; ++j) {
    const double dx = half * xgk[j];
    f(centre - dx, f1);
    f(centre + dx, f2);
    for (std::size_t k = 0; k < dim; ++k) {
      const double s = f1[k] + f2[k];
      out_value[k] += wgk[j] * s;
      if (j % 2 == 1) gauss[k] += wg[j / 2] * s;
    }
  }
  for (std::size_t k = 0; k < dim; ++k) {
    out_value[k] *= half;
    out_error[k] = std::abs(out_value[k] - gauss[k] * half);
  }
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) integration of a vector-valued
/// function. The interval list starts from `breakpoints` (both ends
/// included). Each component k must reach
///   error[k] <= max(abs_tol, rel_tol * |value[k]|)
/// on its own; the interval contributing the most to the worst component is
/// bisected until that holds or `max_subdivisions` is exhausted.
///
/// `f` is called as `f(double x, std::span<double> out)` with out.size() == dim.
template <class F>
Result integrate(F&& f, std::size_t dim, std::span<const double> breakpoints, const Options& opt) {
  Result res;
  res.value.assign(dim, 0.0);
  res.error.assign(dim, 0.0);
  std::vector<double> pool;
  std::vector<double> scratch;
  std::vector<detail::Interval> intervals;

  auto evaluate = [&](double a, double b) {
    const std::size_t slot = pool.size();
    pool.resize(slot + 2 * dim);
    detail::panel(f, a, b, dim, pool.data() + slot, pool.data() + slot + dim, scratch);
    res.evaluations += 15;
    return detail::Interval{a, b, slot};
  };
  auto accumulate = [&](const detail::Interval& iv, double sign) {
    for (std::size_t k = 0; k < dim; ++k) {
      res.value[k] += sign * pool[iv.slot + k];
      res.error[k] += sign * pool[iv.slot + dim + k];
    }
  };

  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    intervals.push_back(evaluate(breakpoints[i], breakpoints[i + 1]));
    accumulate(intervals.back(), 1.0);
  }

  std::vector<double> tolerance(dim);
  int subdivisions = 0;
  while (true) {
    bool done = true;
    for (std::size_t k = 0; k < dim; ++k) {
      tolerance[k] = std::max({opt.abs_tol, opt.rel_tol * std::abs(res.value[k]), 1e-300});
      if (res.error[k] > tolerance[k]) done = false;
    }
    if (done) break;
    if (subdivisions >= opt.max_subdivisions) {
      res.converged = false;
      break;
    }
    std::size_t worst = 0;
    double worst_score = -1.0;
    for (std::size_t i = 0; i < intervals.size(); ++i) {
      double score = 0.0;
      for (std::size_t k = 0; k < dim; ++k) {
        score = std::max(score, pool[intervals[i].slot + dim + k] / tolerance[k]);
      }
      if (score > worst_score) {
        worst_score = score;
        worst = i;
      }
    }
    const detail::Interval parent = intervals[worst];
    const double mid = 0.5 * (parent.a + parent.b);
    if (!(mid > parent.a && mid < parent.b)) {
      res.converged = false;  // interval at machine resolution
      break;
    }
    accumulate(parent, -1.0);
    intervals[worst] = evaluate(parent.a, mid);
    intervals.push_back(evaluate(mid, parent.b));
    accumulate(intervals[worst], 1.0);
    accumulate(intervals.back(), 1.0);
    ++subdivisions;
  }

  // Re-sum from the leaves to shed the running-update round-off.
  std::fill(res.value.begin(), res.value.end(), 0.0);
  std::fill(res.error.begin(), res.error.end(), 0.0);
  for (const auto& iv : intervals) accumulate(iv, 1.0);
  return res;
}

template <class F>
Result integrate(F&& f, std::size_t dim, double a, double b, const Options& opt) {
  const std::array<double, 2> ends{a, b};
  return integrate(std::forward<F>(f), dim, std::span<const double>(ends), opt);
}

/// Scalar convenience wrapper.
struct ScalarResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
  bool converged = true;
};

template <class F>
ScalarResult integrate_scalar(F&& f, double a, double b, const Options& opt) {
  auto wrapped = [&f](double x, std::span<double> out) { out[0] = f(x); };
  const auto r = integrate(wrapped, 1, a, b, opt);
  return {r.value[0], r.error[0], r.evaluations, r.converged};
}

}  // namespace casimag::quad
