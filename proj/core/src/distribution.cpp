#include "lambdaes/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace lambdaes {
namespace {

constexpr double kMergeTol = 1e-12;
constexpr double kSumTol = 1e-12;
constexpr double kTinyWidth = 1e-15;

double interpolate(const QuantileSegment& s, double u) {
  if (s.v_hi == s.v_lo) return s.v_lo;
  double w = (u - s.u_lo) / (s.u_hi - s.u_lo);
  return s.v_lo + (s.v_hi - s.v_lo) * std::clamp(w, 0.0, 1.0);
}

double invert(const QuantileSegment& s, double x) {
  if (x >= s.v_hi) return s.u_hi;
  double w = (x - s.v_lo) / (s.v_hi - s.v_lo);
  return s.u_lo + (s.u_hi - s.u_lo) * std::clamp(w, 0.0, 1.0);
}

}  // namespace

Distribution::Distribution(std::vector<QuantileSegment> seg) : seg_(std::move(seg)) {
  if (seg_.empty()) throw std::invalid_argument("Distribution: no segments");
  if (std::abs(seg_.front().u_lo) > kMergeTol || std::abs(seg_.back().u_hi - 1.0) > kMergeTol) {
    throw std::invalid_argument("Distribution: segments must cover [0,1]");
  }
  seg_.front().u_lo = 0.0;
  seg_.back().u_hi = 1.0;
  for (std::size_t k = 0; k < seg_.size(); ++k) {
    auto& s = seg_[k];
    if (!std::isfinite(s.v_lo) || !std::isfinite(s.v_hi)) {
      throw std::invalid_argument("Distribution: non-finite quantile value");
    }
    if (!(s.u_hi > s.u_lo)) throw std::invalid_argument("Distribution: empty segment");
    if (s.v_hi < s.v_lo) throw std::invalid_argument("Distribution: decreasing segment");
    if (k > 0) {
      const auto& p = seg_[k - 1];
      if (std::abs(s.u_lo - p.u_hi) > kMergeTol) {
        throw std::invalid_argument("Distribution: segments do not partition [0,1]");
      }
      s.u_lo = p.u_hi;
      if (s.v_lo < p.v_hi) throw std::invalid_argument("Distribution: quantile decreases");
    }
  }
  tail_.assign(seg_.size() + 1, 0.0);
  for (std::size_t k = seg_.size(); k-- > 0;) {
    const auto& s = seg_[k];
    tail_[k] = tail_[k + 1] + 0.5 * (s.v_lo + s.v_hi) * (s.u_hi - s.u_lo);
  }
}

Distribution Distribution::discrete(std::span<const double> values, std::span<const double> probs) {
  if (values.size() != probs.size()) throw std::invalid_argument("discrete: size mismatch");
  if (values.empty()) throw std::invalid_argument("discrete: no atoms");
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  std::vector<std::pair<double, double>> merged;
  double total = 0.0;
  for (std::size_t i : idx) {
    double v = values[i];
    double p = probs[i];
    if (!std::isfinite(v) || !std::isfinite(p)) throw std::invalid_argument("discrete: non-finite input");
    if (p < 0) throw std::invalid_argument("discrete: negative probability");
    total += p;
    if (p == 0) continue;
    if (!merged.empty() && v - merged.back().first <= kMergeTol) {
      merged.back().second += p;
    } else {
      merged.emplace_back(v, p);
    }
  }
  double tol = kSumTol + 4.0 * static_cast<double>(values.size()) * std::numeric_limits<double>::epsilon();
  if (std::abs(total - 1.0) > tol) throw std::invalid_argument("discrete: probabilities do not sum to 1");

  std::vector<QuantileSegment> seg;
  seg.reserve(merged.size());
  double acc = 0.0;
  for (const auto& [v, p] : merged) {
    double lo = acc / total;
    acc += p;
    seg.push_back({lo, acc / total, v, v});
  }
  seg.back().u_hi = 1.0;
  return Distribution(std::move(seg));
}

Distribution Distribution::point_mass(double c) { return Distribution({{0.0, 1.0, c, c}}); }

Distribution Distribution::piecewise_linear_quantile(std::vector<QuantileSegment> segments) {
  return Distribution(std::move(segments));
}

bool Distribution::is_discrete() const {
  return std::all_of(seg_.begin(), seg_.end(), [](const auto& s) { return s.v_lo == s.v_hi; });
}

std::vector<std::pair<double, double>> Distribution::atoms() const {
  if (!is_discrete()) throw std::logic_error("atoms: law has a continuous part");
  std::vector<std::pair<double, double>> out;
  out.reserve(seg_.size());
  for (const auto& s : seg_) out.emplace_back(s.v_lo, s.u_hi - s.u_lo);
  return out;
}

std::size_t Distribution::segment_at_or_after(double u) const {
  auto it =
      std::lower_bound(seg_.begin(), seg_.end(), u, [](const QuantileSegment& s, double v) { return s.u_hi < v; });
  return it == seg_.end() ? seg_.size() - 1 : static_cast<std::size_t>(it - seg_.begin());
}

double Distribution::cdf(double x) const {
  auto it =
      std::upper_bound(seg_.begin(), seg_.end(), x, [](double v, const QuantileSegment& s) { return v < s.v_lo; });
  if (it == seg_.begin()) return 0.0;
  return invert(*(it - 1), x);
}

double Distribution::cdf_left(double x) const {
  auto it =
      std::lower_bound(seg_.begin(), seg_.end(), x, [](const QuantileSegment& s, double v) { return s.v_lo < v; });
  if (it == seg_.begin()) return 0.0;
  return invert(*(it - 1), x);
}

double Distribution::quantile_left(double u) const {
  if (u <= 0.0) return ess_inf();
  if (u >= 1.0) return ess_sup();
  return interpolate(seg_[segment_at_or_after(u)], u);
}

double Distribution::quantile_right(double u) const {
  if (u >= 1.0) return ess_sup();
  if (u <= 0.0) return ess_inf();
  auto it =
      std::upper_bound(seg_.begin(), seg_.end(), u, [](double v, const QuantileSegment& s) { return v < s.u_hi; });
  return interpolate(*it, u);
}

double Distribution::upper_integral(double u) const {
  if (u <= 0.0) return tail_[0];
  if (u >= 1.0) return 0.0;
  auto it =
      std::upper_bound(seg_.begin(), seg_.end(), u, [](double v, const QuantileSegment& s) { return v < s.u_hi; });
  auto k = static_cast<std::size_t>(it - seg_.begin());
  const auto& s = seg_[k];
  return 0.5 * (interpolate(s, u) + s.v_hi) * (s.u_hi - u) + tail_[k + 1];
}

double Distribution::stop_loss(double t) const {
  double f = cdf(t);
  if (f >= 1.0) return 0.0;
  return std::max(0.0, upper_integral(f) - t * (1.0 - f));
}

double Distribution::conditional_tail_expectation(double t) const {
  double f = cdf_left(t);
  double p = 1.0 - f;
  if (!(p > 0.0)) throw std::domain_error("conditional_tail_expectation: P(X >= t) = 0");
  return upper_integral(f) / p;
}

std::vector<double> Distribution::breakpoints() const {
  std::vector<double> out;
  out.reserve(2 * seg_.size());
  for (const auto& s : seg_) {
    out.push_back(s.v_lo);
    out.push_back(s.v_hi);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Distribution Distribution::affine(double a, double b) const {
  if (!(a >= 0.0)) throw std::invalid_argument("affine: negative scale");
  if (a == 0.0) return point_mass(b);
  std::vector<QuantileSegment> seg = seg_;
  for (auto& s : seg) {
    s.v_lo = a * s.v_lo + b;
    s.v_hi = a * s.v_hi + b;
  }
  return Distribution(std::move(seg));
}

Distribution mixture(const Distribution& f, const Distribution& g, double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw std::invalid_argument("mixture: gamma outside [0,1]");
  if (gamma == 1.0) return f;
  if (gamma == 0.0) return g;

  std::vector<double> xs = f.breakpoints();
  auto gx = g.breakpoints();
  xs.insert(xs.end(), gx.begin(), gx.end());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  auto h = [&](double x) { return gamma * f.cdf(x) + (1 - gamma) * g.cdf(x); };
  auto h_left = [&](double x) { return gamma * f.cdf_left(x) + (1 - gamma) * g.cdf_left(x); };

  std::vector<QuantileSegment> seg;
  double cursor = 0.0;
  auto push = [&](double u_hi, double v_lo, double v_hi) {
    u_hi = std::min(u_hi, 1.0);
    if (u_hi - cursor <= kTinyWidth) return;
    seg.push_back({cursor, u_hi, v_lo, v_hi});
    cursor = u_hi;
  };
  for (std::size_t i = 0; i < xs.size(); ++i) {
    push(h(xs[i]), xs[i], xs[i]);
    if (i + 1 < xs.size()) push(h_left(xs[i + 1]), xs[i], xs[i + 1]);
  }
  seg.back().u_hi = 1.0;
  return Distribution::piecewise_linear_quantile(std::move(seg));
}

bool icx_dominates(const Distribution& x, const Distribution& y) {
  constexpr double tol = 1e-12;
  std::vector<double> ts = x.breakpoints();
  auto ty = y.breakpoints();
  ts.insert(ts.end(), ty.begin(), ty.end());
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

  auto ok = [&](double t) { return x.stop_loss(t) >= y.stop_loss(t) - tol; };
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (!ok(ts[i])) return false;
    if (i + 1 == ts.size()) break;
    // Between breakpoints the stop-loss difference has derivative F_X - F_Y,
    // which is linear there; its interior minimum sits where that crosses 0.
    double d0 = x.cdf(ts[i]) - y.cdf(ts[i]);
    double d1 = x.cdf_left(ts[i + 1]) - y.cdf_left(ts[i + 1]);
    if (d0 < 0 && d1 > 0) {
      double t = ts[i] + (ts[i + 1] - ts[i]) * (-d0) / (d1 - d0);
      if (!ok(t)) return false;
    }
  }
  return true;
}

}  // namespace lambdaes
