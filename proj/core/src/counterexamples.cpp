#include <algorithm>
#include <array>
#include <boost/rational.hpp>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "lambdaes/measures.hpp"
#include "lambdaes/properties.hpp"
#include "lambdaes/random_laws.hpp"

namespace lambdaes {
namespace {

constexpr double kExact = 1e-9;

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

// E[X | X >= VaR_Lambda(X)] for a law with a finite Lambda-VaR.
double tail_candidate(const Distribution& d, const LambdaSpec& lambda) {
  return d.conditional_tail_expectation(lambda_var(d, lambda).value());
}

// Rational arithmetic for the score-based construction.
using Q = boost::rational<long long>;

double to_double(const Q& q) { return boost::rational_cast<double>(q); }

// Lambda_0 = a3 on (-inf, 0), a2 on [0, t0), a1 on [t0, inf).
struct ScoreSetup {
  Q a1, a2, a3, t0, c;

  Q level(const Q& x) const {
    if (x < 0) return a3;
    if (x < t0) return a2;
    return a1;
  }
  // Signed integral of Lambda_0 from lo to hi.
  Q integral(const Q& lo, const Q& hi) const {
    if (hi < lo) return -integral(hi, lo);
    const std::array<Q, 3> cuts{Q(0), t0, hi};
    Q total = 0;
    Q from = lo;
    for (const Q& cut : cuts) {
      Q to = std::min(cut, hi);
      if (to > from) {
        total += level(from) * (to - from);
        from = to;
      }
    }
    return total;
  }
  // S(a, y) = (a - y)+ - int_y^a Lambda_0.
  Q score(const Q& a, const Q& y) const { return std::max(a - y, Q(0)) - integral(y, a); }
  Q g(const Q& x) const { return c * score(t0, x) + x; }

  LambdaSpec lambda() const {
    return LambdaSpec::step({0.0, to_double(t0)}, {to_double(a3), to_double(a2), to_double(a1)}, Side::right);
  }
};

struct Atom {
  Q value;
  Q prob;
};

Q expected_g(const ScoreSetup& s, const std::vector<Atom>& law) {
  Q e = 0;
  for (const auto& [v, p] : law) e += p * s.g(v);
  return e;
}

// min over a of E[c S(a, W) + W]. The objective is piecewise linear in a with
// kinks at the atoms and the breaks of Lambda_0, and grows without bound in
// both directions, so the minimum sits at a kink.
Q min_over_kinks(const ScoreSetup& s, const std::vector<Atom>& law) {
  std::vector<Q> kinks{Q(0), s.t0};
  for (const auto& atom : law) kinks.push_back(atom.value);
  Q best = 0;
  bool first = true;
  for (const Q& a : kinks) {
    Q e = 0;
    for (const auto& [v, p] : law) e += p * (s.c * s.score(a, v) + v);
    if (first || e < best) best = e;
    first = false;
  }
  return best;
}

Distribution to_distribution(const std::vector<Atom>& law) {
  std::vector<double> v;
  std::vector<double> p;
  for (const auto& atom : law) {
    v.push_back(to_double(atom.value));
    p.push_back(to_double(atom.prob));
  }
  return Distribution::discrete(v, p);
}

// Compares slope/intercept of g on each piece, read off from two exact
// evaluations, against the closed-form expansion. Returns the number of
// coefficient mismatches.
int coefficient_mismatches(const ScoreSetup& s, PropertyReport& rep, bool record) {
  const Q one = 1;
  struct Piece {
    Q x0, x1, slope, intercept;
  };
  const std::array<Piece, 3> pieces{{
      {Q(-3), Q(-1), one - s.c * (one - s.a3), s.c * (one - s.a2) * s.t0},
      {Q(0), s.t0 / 2, one - s.c * (one - s.a2), s.c * (one - s.a2) * s.t0},
      {s.t0, s.t0 + 3, one + s.c * s.a1, -s.c * s.a1 * s.t0},
  }};
  int bad = 0;
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    const auto& pc = pieces[k];
    Q slope = (s.g(pc.x1) - s.g(pc.x0)) / (pc.x1 - pc.x0);
    Q intercept = s.g(pc.x0) - slope * pc.x0;
    if (slope != pc.slope || intercept != pc.intercept) ++bad;
    if (record) {
      rep.record("g_slope_" + std::to_string(k), to_double(slope));
      rep.record("g_intercept_" + std::to_string(k), to_double(intercept));
    }
  }
  return bad;
}

}  // namespace

PropertyReport counterexample_a1(std::size_t grid_points) {
  PropertyReport rep;
  rep.name = "a1";
  rep.expect_violation = true;
  rep.trials = 1;
  const double eps = 0.1;
  rep.record("eps", eps);
  const auto lambda = LambdaSpec::clamped_linear(-0.8, 0.9, 0.1, 1.0);

  // X(w) = eps (w - 0.1) + 1{(0.1, 0.9]} + 10 1{(0.9, 1]}, Y(w) = eps (w - 1) + 10 1{(0.9, 1]}.
  auto x_of = [&](double w) { return eps * (w - 0.1) + (w > 0.1 && w <= 0.9 ? 1.0 : 0.0) + (w > 0.9 ? 10.0 : 0.0); };
  auto y_of = [&](double w) { return eps * (w - 1.0) + (w > 0.9 ? 10.0 : 0.0); };
  const auto x = Distribution::piecewise_linear_quantile({
      {0.0, 0.1, -0.1 * eps, 0.0},
      {0.1, 0.9, 1.0, 1.0 + 0.8 * eps},
      {0.9, 1.0, 10.0 + 0.8 * eps, 10.0 + 0.9 * eps},
  });
  const auto y = Distribution::piecewise_linear_quantile({
      {0.0, 0.9, -eps, -0.1 * eps},
      {0.9, 1.0, 10.0 - 0.1 * eps, 10.0},
  });

  const double var_x = lambda_var(x, lambda).value();
  const double var_y = lambda_var(y, lambda).value();
  const double rho_x = tail_candidate(x, lambda);
  const double rho_y = tail_candidate(y, lambda);
  rep.record("var_lambda_x", var_x);
  rep.record("var_lambda_y", var_y);
  rep.record("rho_x", rho_x);
  rep.record("rho_y", rho_y);
  if (!near(var_x, 1.0, kExact) || !near(var_y, 0.0, kExact)) ++rep.mismatches;
  if (!near(rho_x, 2.0 + 0.45 * eps, kExact) || !near(rho_y, 10.0 - 0.05 * eps, kExact)) ++rep.mismatches;

  // Grid discretisation w_i = i / (N - 1).
  std::vector<double> gx(grid_points);
  std::vector<double> gy(grid_points);
  std::vector<double> prob(grid_points, 1.0 / static_cast<double>(grid_points));
  bool pointwise = true;
  for (std::size_t i = 0; i < grid_points; ++i) {
    double w = static_cast<double>(i) / static_cast<double>(grid_points - 1);
    gx[i] = x_of(w);
    gy[i] = y_of(w);
    if (gx[i] < gy[i]) pointwise = false;
  }
  if (!pointwise) ++rep.mismatches;
  auto grid_rho = [&](const std::vector<double>& v) {
    const double t = lambda_var(Distribution::discrete(v, prob), lambda).value();
    double sum = 0.0;
    std::size_t n = 0;
    for (double z : v) {
      if (z >= t) {
        sum += z;
        ++n;
      }
    }
    return sum / static_cast<double>(n);
  };
  const double grid_x = grid_rho(gx);
  const double grid_y = grid_rho(gy);
  rep.record("grid_rho_x", grid_x);
  rep.record("grid_rho_y", grid_y);
  if (!near(grid_x, rho_x, 1e-3) || !near(grid_y, rho_y, 1e-3)) ++rep.mismatches;

  // X >= Y pointwise yet rho(X) < rho(Y): the monotonicity check finds it.
  auto mono = check_monotonicity_pairs("a1_monotonicity",
                                       [&](const Distribution& d) { return tail_candidate(d, lambda); }, {{x, y}});
  rep.failures = mono.failures;
  rep.record("monotonicity_margin", rho_y - rho_x);
  return rep;
}

double rho_two_regime(const Distribution& d, double a0, double alpha, double beta) {
  auto h = [&](double level, double x) { return x + d.stop_loss(x) / (1.0 - level); };
  // x <= a0 at level alpha: convex with minimisers [VaR, VaR+].
  const double lower = var_left(d, alpha).value() <= a0 ? es(d, alpha) : h(alpha, a0);
  // x > a0 at level beta: the infimum reaches a0 from the right when every
  // minimiser lies at or below a0.
  const double upper = var_right(d, beta) > ExtendedReal(a0) ? es(d, beta) : h(beta, a0);
  return std::min(lower, upper);
}

PropertyReport counterexample_a2() {
  PropertyReport rep;
  rep.name = "a2";
  rep.expect_violation = true;
  rep.trials = 1;
  const double a0 = 0.0;
  const double b0 = -1.0;
  const double eps = 0.1;
  const double alpha = 0.9;
  const double beta = 0.8;
  const std::pair<const char*, double> params[] = {
      {"a0", a0}, {"b0", b0}, {"eps", eps}, {"alpha", alpha}, {"beta", beta}};
  for (const auto& [k, v] : params) rep.record(k, v);

  const std::vector<double> zv{b0, a0 - eps};
  const std::vector<double> zp{0.25, 0.75};
  const auto z = Distribution::discrete(zv, zp);
  const auto y = Distribution::point_mass(a0 + 3.0 * eps);
  const std::vector<double> mv{(b0 + a0 + 3.0 * eps) / 2.0, a0 + eps};
  const auto mid = Distribution::discrete(mv, zp);

  const double rz = rho_two_regime(z, a0, alpha, beta);
  const double ry = rho_two_regime(y, a0, alpha, beta);
  const double rm = rho_two_regime(mid, a0, alpha, beta);
  rep.record("rho_z", rz);
  rep.record("rho_y", ry);
  rep.record("rho_mid", rm);
  const double claimed_mid = a0 + 0.75 * eps / (1.0 - beta);
  rep.record("claimed_rho_mid", claimed_mid);
  if (!near(rz, a0 - eps, 1e-12)) ++rep.mismatches;
  if (!near(ry, a0 + 3.0 * eps, 1e-12)) ++rep.mismatches;
  if (!near(rm, claimed_mid, 1e-12)) ++rep.mismatches;
  const double margin = rm - std::max(rz, ry);
  rep.record("quasi_convexity_margin", margin);
  if (margin > 0.0) rep.failures = 1;
  return rep;
}

PropertyReport counterexample_a3() {
  PropertyReport rep;
  rep.name = "a3";
  rep.expect_violation = true;
  rep.trials = 1;
  const ScoreSetup s{Q(1, 5), Q(3, 5), Q(7, 10), Q(2), Q(10, 3)};
  const Q x0 = 1;
  const Q y0 = 4;
  const std::pair<const char*, Q> params[] = {{"x0", x0},       {"t0", s.t0},     {"y0", y0}, {"alpha1", s.a1},
                                              {"alpha2", s.a2}, {"alpha3", s.a3}, {"c", s.c}};
  for (const auto& [k, v] : params) rep.record(k, to_double(v));

  rep.mismatches += static_cast<std::uint64_t>(coefficient_mismatches(s, rep, true));
  // The expansion is an identity in the parameters, not a fact about one
  // choice of them.
  const std::array<ScoreSetup, 3> others{{
      {Q(1, 10), Q(2, 3), Q(4, 5), Q(3), Q(5)},
      {Q(1, 8), Q(5, 8), Q(3, 4), Q(7, 2), Q(9, 2)},
      {Q(0), Q(1, 2), Q(9, 10), Q(1, 3), Q(11)},
  }};
  for (const auto& o : others) rep.mismatches += static_cast<std::uint64_t>(coefficient_mismatches(o, rep, false));

  const std::vector<Atom> law_x{{-x0, Q(1, 4)}, {x0, Q(1, 4)}, {y0, Q(1, 2)}};
  // Y = 2X 1{X = y0} - X flips the two small atoms, so it has the law of X.
  std::vector<Atom> law_y;
  for (const auto& [v, p] : law_x) law_y.push_back({v == y0 ? v : -v, p});
  const std::vector<Atom> law_mid{{Q(0), Q(1, 2)}, {y0, Q(1, 2)}};

  const auto lambda = s.lambda();
  for (const auto* law : std::array<const std::vector<Atom>*, 3>{&law_x, &law_y, &law_mid}) {
    if (lambda_var(to_distribution(*law), lambda) != ExtendedReal(to_double(s.t0))) ++rep.mismatches;
  }

  const Q rho_x = expected_g(s, law_x);
  const Q rho_y = expected_g(s, law_y);
  const Q rho_mid = expected_g(s, law_mid);
  rep.record("rho_x", to_double(rho_x));
  rep.record("rho_y", to_double(rho_y));
  rep.record("rho_mid", to_double(rho_mid));
  if (rho_x != Q(47, 12) || rho_y != Q(47, 12) || rho_mid != Q(4)) ++rep.mismatches;
  if (min_over_kinks(s, law_x) != rho_x || min_over_kinks(s, law_mid) != rho_mid) ++rep.mismatches;

  const Q gap = 2 * s.g(0) - s.g(-x0) - s.g(x0);
  rep.record("midpoint_gap", to_double(gap));
  if (gap <= 0) ++rep.mismatches;
  if (rho_x == rho_y && rho_x < rho_mid) rep.failures = 1;
  rep.record("quasi_convexity_margin", to_double(rho_mid - rho_x));

  // Below c = 1/(1 - alpha3): the gap is c x0 (alpha3 - alpha2), so its sign
  // does not depend on c. Recorded only.
  std::uint64_t flips = 0;
  for (int k = 1; k <= 20; ++k) {
    ScoreSetup low = s;
    low.c = s.c * Q(k, 21);
    if (2 * low.g(0) - low.g(-x0) - low.g(x0) <= 0) ++flips;
  }
  rep.record("c_sweep_points", 20.0);
  rep.record("c_sweep_flips", static_cast<double>(flips));
  return rep;
}

PropertyReport check_convexity_failure(std::uint64_t seed, std::size_t control_searches) {
  PropertyReport rep;
  rep.name = "convexity_failure";
  rep.expect_violation = true;
  rep.seed = seed;
  const auto lambda = LambdaSpec::step({1.0, 1.5}, {0.9, 0.5, 0.2}, Side::right);

  // Convexity: X = {0, 2} equally likely, Y = 0.
  const std::vector<double> xv{0.0, 2.0};
  const std::vector<double> half{0.5, 0.5};
  const std::vector<double> mv{0.0, 1.0};
  const double ex = lambda_es(Distribution::discrete(xv, half), lambda).value;
  const double ey = lambda_es(Distribution::point_mass(0.0), lambda).value;
  const double em = lambda_es(Distribution::discrete(mv, half), lambda).value;
  rep.record("es_lambda_x", ex);
  rep.record("es_lambda_y", ey);
  rep.record("es_lambda_mid", em);
  if (!near(ex, 1.5, kExact) || !near(ey, 0.0, kExact) || !near(em, 1.0, kExact)) ++rep.mismatches;
  if (em > std::max(ex, ey) + 1e-10) ++rep.mismatches;  // quasi-convexity still holds
  if (0.5 * ex + 0.5 * ey < em) ++rep.failures;

  // Concavity in mixtures: x = 2, y = 0, z = 1.5 with gamma = 0.8, so that
  // z < gamma x + (1 - gamma) y and Lambda(z) < gamma p + (1 - gamma) q.
  const double x = 2.0;
  const double y = 0.0;
  const double z = 1.5;
  const double gamma = 0.8;
  const double p = lambda(x);
  const double q = lambda(y);
  rep.record("mix_p", p);
  rep.record("mix_q", q);
  rep.record("mix_gamma", gamma);
  double k = 1.0;
  bool found = false;
  for (int step = 0; step < 60 && !found; ++step, k *= 2.0) {
    const std::vector<double> av{-k, x};
    const std::vector<double> ap{p, 1.0 - p};
    const std::vector<double> bv{-k, y};
    const std::vector<double> bp{q, 1.0 - q};
    const auto dx = Distribution::discrete(av, ap);
    const auto dy = Distribution::discrete(bv, bp);
    const auto dz = mixture(dx, dy, gamma);
    if (es(dz, lambda(z)) > z) continue;
    found = true;
    const double vx = lambda_es(dx, lambda).value;
    const double vy = lambda_es(dy, lambda).value;
    const double vz = lambda_es(dz, lambda).value;
    rep.record("mix_k", k);
    rep.record("mix_es_lambda_x", vx);
    rep.record("mix_es_lambda_y", vy);
    rep.record("mix_es_lambda_z", vz);
    if (!near(vx, x, kExact) || !near(vy, y, kExact)) ++rep.mismatches;
    if (vz < gamma * vx + (1.0 - gamma) * vy) ++rep.failures;
  }
  if (!found) ++rep.mismatches;

  // Constant Lambda: ES is convex and concave in mixtures.
  gen::Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> atoms(1, 6);
  std::uint64_t control = 0;
  for (std::size_t i = 0; i < control_searches; ++i) {
    const auto lc = LambdaSpec::constant(unit(rng) * 0.99);
    const std::size_t m = atoms(rng);
    auto space = RandomVector(gen::simplex_weights(rng, m));
    const auto a = space.add(gen::values(rng, m));
    const auto b = space.add(gen::values(rng, m));
    const double g = unit(rng);
    const auto& va = space.variable(a);
    const auto& vb = space.variable(b);
    const double ra = lambda_es(space.law(a), lc).value;
    const double rb = lambda_es(space.law(b), lc).value;
    const double rc = lambda_es(space.law_of(combine(g, va, 1.0 - g, vb)), lc).value;
    const double rmix = lambda_es(mixture(space.law(a), space.law(b), g), lc).value;
    if (rc > g * ra + (1.0 - g) * rb + 1e-10) ++control;
    if (rmix < g * ra + (1.0 - g) * rb - 1e-10) ++control;
  }
  rep.trials = 2 + control_searches;
  rep.record("control_searches", static_cast<double>(control_searches));
  rep.record("control_violations", static_cast<double>(control));
  rep.mismatches += control;
  return rep;
}

}  // namespace lambdaes
