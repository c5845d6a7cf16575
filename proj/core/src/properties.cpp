#include "lambdaes/properties.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <type_traits>

#include "lambdaes/dual.hpp"
#include "lambdaes/measures.hpp"
#include "lambdaes/random_laws.hpp"
#include "lambdaes/ru_opt.hpp"

namespace lambdaes {

double PropertyReport::at(const std::string& key) const {
  for (const auto& [k, v] : witness) {
    if (k == key) return v;
  }
  throw std::out_of_range("no witness entry '" + key + "'");
}

namespace {

constexpr double kTol = 1e-10;

double uniform(gen::Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

PropertyReport make_report(std::string name, std::uint64_t seed) {
  PropertyReport rep;
  rep.name = std::move(name);
  rep.seed = seed;
  return rep;
}

// a >= b - tol, with infinite values compared exactly.
bool at_least(const ExtendedReal& a, const ExtendedReal& b, double tol) {
  if (!a.is_finite() || !b.is_finite()) return a >= b;
  return a.value() >= b.value() - tol;
}

bool close(const ExtendedReal& a, const ExtendedReal& b, double tol) {
  if (!a.is_finite() || !b.is_finite()) return a == b;
  return std::abs(a.value() - b.value()) <= tol;
}

// Records the first failing trial only.
void fail(PropertyReport& rep, std::size_t trial, std::initializer_list<std::pair<const char*, double>> values) {
  if (rep.failures++ != 0) return;
  rep.record("trial", static_cast<double>(trial));
  for (const auto& [k, v] : values) rep.record(k, v);
}

bool attains_one(const LambdaSpec& lambda) {
  return std::visit(
      [](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ConstantLambda>) return v.alpha >= 1.0;
        if constexpr (std::is_same_v<T, StepLambda>) return v.values.front() >= 1.0;
        if constexpr (std::is_same_v<T, ClampedLinearLambda>) return v.cap >= 1.0;
        return false;
      },
      lambda.variant());
}

LambdaSpec pick_lambda(const std::optional<LambdaSpec>& fixed, gen::Rng& rng) { return fixed ? *fixed : gen::any(rng); }

// Values in [-5, 5]; a third of the time snapped to a 0.5 grid so that ties
// and atoms on Lambda's breaks show up.
std::vector<double> space_values(gen::Rng& rng, std::size_t m) {
  auto v = gen::values(rng, m);
  if (uniform(rng, 0.0, 1.0) < 1.0 / 3.0) {
    for (double& x : v) x = std::round(2.0 * x) / 2.0;
  }
  return v;
}

ExtendedReal evaluate(Measure measure, const Distribution& d, const LambdaSpec& lambda, double alpha) {
  switch (measure) {
    case Measure::lambda_var:
      return lambda_var(d, lambda);
    case Measure::lambda_es:
      return lambda_es(d, lambda).value;
    case Measure::es:
      return es(d, alpha);
    case Measure::var_left:
      return var_left(d, alpha);
  }
  throw std::invalid_argument("unknown measure");
}

const char* measure_name(Measure m) {
  switch (m) {
    case Measure::lambda_var:
      return "lambda_var";
    case Measure::lambda_es:
      return "lambda_es";
    case Measure::es:
      return "es";
    case Measure::var_left:
      return "var_left";
  }
  return "?";
}

// Splits one atom into two with the same mean.
std::vector<std::pair<double, double>> spread(gen::Rng& rng, std::vector<std::pair<double, double>> atoms) {
  std::size_t i = std::uniform_int_distribution<std::size_t>(0, atoms.size() - 1)(rng);
  auto [v, p] = atoms[i];
  double d = uniform(rng, 0.1, 2.0);
  double w = uniform(rng, 0.1, 0.9);
  atoms[i] = {v - d, p * w};
  atoms.emplace_back(v + d * w / (1.0 - w), p * (1.0 - w));
  return atoms;
}

Distribution from_atoms(const std::vector<std::pair<double, double>>& atoms) {
  std::vector<double> v;
  std::vector<double> p;
  for (const auto& [x, q] : atoms) {
    v.push_back(x);
    p.push_back(q);
  }
  return Distribution::discrete(v, p);
}

LambdaSpec left_continuous(gen::Rng& rng) {
  switch (std::uniform_int_distribution<int>(0, 4)(rng)) {
    case 0:
      return LambdaSpec::constant(uniform(rng, 0.0, 1.0));
    case 1:
      return LambdaSpec::logistic(uniform(rng, 0.2, 3.0));
    case 2: {
      double floor = uniform(rng, 0.0, 0.5);
      return LambdaSpec::clamped_linear(-uniform(rng, 0.05, 1.0), uniform(rng, 0.0, 1.0), floor,
                                        uniform(rng, floor, 1.0));
    }
    default:
      return gen::step(rng, Side::left);
  }
}

// Random Q on m points; about a fifth of the weights are zeroed.
MeasureChange random_change(gen::Rng& rng, const RandomVector& space) {
  auto q = gen::simplex_weights(rng, space.size());
  for (double& w : q) {
    if (uniform(rng, 0.0, 1.0) < 0.2) w = 0.0;
  }
  double s = 0.0;
  for (double w : q) s += w;
  if (s == 0.0) {
    q.front() = 1.0;
    s = 1.0;
  }
  for (double& w : q) w /= s;
  return MeasureChange(space.probs(), q);
}

}  // namespace

PropertyReport check_monotonicity(Measure measure, std::size_t trials, std::uint64_t seed) {
  auto rep = make_report(std::string("monotonicity_") + measure_name(measure), seed);
  gen::Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    auto lambda = gen::any(rng);
    double alpha = uniform(rng, 0.0, 1.0);
    if (alpha == 0.0) alpha = 0.5;
    auto space = RandomVector(gen::simplex_weights(rng, 10));
    auto y = space.add(space_values(rng, 10));
    auto bump = gen::values(rng, 10, 0.0, 2.0);
    for (double& b : bump) {
      if (uniform(rng, 0.0, 1.0) < 0.3) b = 0.0;
    }
    std::vector<double> xv = space.variable(y);
    for (std::size_t i = 0; i < xv.size(); ++i) xv[i] += bump[i];
    auto x = space.add(std::move(xv));
    auto rx = evaluate(measure, space.law(x), lambda, alpha);
    auto ry = evaluate(measure, space.law(y), lambda, alpha);
    if (!at_least(rx, ry, 1e-12)) fail(rep, t, {{"rho_x", rx.to_double()}, {"rho_y", ry.to_double()}});
  }
  rep.trials = trials;
  return rep;
}

PropertyReport check_monotonicity_pairs(const std::string& name, const std::function<double(const Distribution&)>& rho,
                                        const std::vector<std::pair<Distribution, Distribution>>& pairs) {
  auto rep = make_report(name, 0);
  for (std::size_t t = 0; t < pairs.size(); ++t) {
    double rx = rho(pairs[t].first);
    double ry = rho(pairs[t].second);
    if (rx < ry - 1e-12) fail(rep, t, {{"rho_x", rx}, {"rho_y", ry}});
  }
  rep.trials = pairs.size();
  return rep;
}

PropertyReport check_cash_subadditivity(const std::optional<LambdaSpec>& fixed, std::size_t trials,
                                        std::uint64_t seed) {
  auto rep = make_report("cash_subadditivity", seed);
  gen::Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    auto lambda = pick_lambda(fixed, rng);
    auto d = gen::law(rng);
    double m = uniform(rng, 0.0, 1.0) < 0.1 ? 0.0 : uniform(rng, 0.0, 3.0);
    double base = lambda_es(d, lambda).value;
    double shifted = lambda_es(d.affine(1.0, m), lambda).value;
    if (shifted > base + m + kTol) fail(rep, t, {{"m", m}, {"rho_x", base}, {"rho_x_plus_m", shifted}});
  }
  rep.trials = trials;
  return rep;
}

PropertyReport check_quasi_convexity(const std::optional<LambdaSpec>& fixed, std::size_t trials, std::uint64_t seed) {
  auto rep = make_report("quasi_convexity", seed);
  gen::Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    auto lambda = pick_lambda(fixed, rng);
    auto space = RandomVector(gen::simplex_weights(rng, 12));
    auto x = space.add(space_values(rng, 12));
    auto y = space.add(space_values(rng, 12));
    double g = uniform(rng, 0.0, 1.0);
    double rx = lambda_es(space.law(x), lambda).value;
    double ry = lambda_es(space.law(y), lambda).value;
    double rm = lambda_es(space.law_of(combine(g, space.variable(x), 1.0 - g, space.variable(y))), lambda).value;
    if (rm > std::max(rx, ry) + kTol) fail(rep, t, {{"gamma", g}, {"rho_x", rx}, {"rho_y", ry}, {"rho_mix", rm}});
  }
  rep.trials = trials;
  return rep;
}

PropertyReport check_normalization(const std::optional<LambdaSpec>& fixed, std::size_t trials, std::uint64_t seed) {
  auto rep = make_report("normalization", seed);
  gen::Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    auto lambda = pick_lambda(fixed, rng);
    double c = uniform(rng, -10.0, 10.0);
    double r = lambda_es(Distribution::point_mass(c), lambda).value;
    if (std::abs(r - c) > kTol) fail(rep, t, {{"c", c}, {"rho", r}});
  }
  rep.trials = trials;
  return rep;
}

PropertyReport check_lambda_monotonicity(std::size_t trials, std::uint64_t seed) {
  auto rep = make_report("lambda_monotonicity", seed);
  gen::Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    double delta = uniform(rng, 0.0, 0.3);
    auto kind = std::uniform_int_distribution<int>(0, 2)(rng);
    LambdaSpec lo = LambdaSpec::constant(0.0);
    LambdaSpec hi = lo;
    if (kind == 0) {
      double a = uniform(rng, 0.0, 1.0);
      lo = LambdaSpec::constant(a);
      hi = LambdaSpec::constant(std::min(1.0, a + delta));
    } else if (kind == 1) {
      double floor = uniform(rng, 0.0, 0.5);
      double cap = uniform(rng, floor, 1.0);
      double slope = -uniform(rng, 0.05, 1.0);
      double icpt = uniform(rng, 0.0, 1.0);
      lo = LambdaSpec::clamped_linear(slope, icpt, floor, cap);
      double cap2 = std::min(1.0, cap + delta);
      hi = LambdaSpec::clamped_linear(slope, icpt + delta, std::min(floor + delta, cap2), cap2);
    } else {
      lo = gen::step(rng, uniform(rng, 0.0, 1.0) < 0.5 ? Side::left : Side::right);
      auto s = std::get<StepLambda>(lo.variant());
      for (double& v : s.values) v = std::min(1.0, v + delta);
      hi = LambdaSpec(s);
    }
    auto d = gen::law(rng);
    double r_lo = lambda_es(d, lo).value;
    double r_hi = lambda_es(d, hi).value;
    if (r_lo > r_hi + kTol) fail(rep, t, {{"delta", delta}, {"rho_lo", r_lo}, {"rho_hi", r_hi}});
  }
  rep.trials = trials;
  return rep;
}

PropertyReport check_dominance(const std::optional<LambdaSpec>& fixed, std::size_t trials, std::uint64_t seed) {
  auto rep = make_report("dominance", seed);
  gen::Rng rng(seed);
  std::uint64_t var_right_checked = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    auto lambda = pick_lambda(fixed, rng);
    auto d = gen::law(rng);
    double alpha = uniform(rng, 0.0, 1.0) < 0.05 ? 1.0 : uniform(rng, 0.0, 1.0);
    double e = es(d, alpha);
    if (!at_least(e, var_left(d, alpha), kTol)) fail(rep, t, {{"alpha", alpha}, {"es", e}});
    if (alpha < 1.0 && !at_least(e, var_right(d, alpha), kTol)) fail(rep, t, {{"alpha", alpha}, {"es", e}});
    double r = lambda_es(d, lambda).value;
    auto v = lambda_var(d, lambda);
    if (!at_least(r, v, kTol)) fail(rep, t, {{"lambda_es", r}, {"lambda_var", v.to_double()}});
    if (!attains_one(lambda)) {
      ++var_right_checked;
      auto vr = lambda_var_right(d, lambda);
      if (!at_least(r, vr, kTol)) fail(rep, t, {{"lambda_es", r}, {"lambda_var_right", vr.to_double()}});
    }
  }
  rep.trials = trials;
  rep.record("lambda_var_right_checked", static_cast<double>(var_right_checked));
  return rep;
}

PropertyReport check_mixture_quasi_concavity(const std::optional<LambdaSpec>& fixed, std::size_t trials,
                                             std::uint64_t seed) {
  auto rep = make_report("mixture_quasi_concavity", seed);
  gen::Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    auto lambda = pick_lambda(fixed, rng);
    auto f = gen::law(rng);
    auto g = gen::law(rng);
    double gamma = uniform(rng, 0.0, 1.0);
    double rf = lambda_es(f, lambda).value;
    double rg = lambda_es(g, lambda).value;
    double rm = lambda_es(mixture(f, g, gamma), lambda).value;
    if (rm < std::min(rf, rg) - kTol) fail(rep, t, {{"gamma", gamma}, {"rho_f", rf}, {"rho_g", rg}, {"rho_mix", rm}});
  }
  rep.trials = trials;
  return rep;
}

PropertyReport check_ssd_consistency(const std::optional<LambdaSpec>& fixed, std::size_t trials, std::uint64_t seed) {
  auto rep = make_report("ssd_consistency", seed);
  gen::Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    auto lambda = pick_lambda(fixed, rng);
    auto y = gen::discrete(rng, std::uniform_int_distribution<std::size_t>(1, 6)(rng));
    auto atoms = y.atoms();
    int spreads = std::uniform_int_distribution<int>(1, 3)(rng);
    for (int k = 0; k < spreads; ++k) atoms = spread(rng, std::move(atoms));
    auto x = from_atoms(atoms);
    if (!icx_dominates(x, y)) ++rep.mismatches;  // generator broken, not the property
    double rx = lambda_es(x, lambda).value;
    double ry = lambda_es(y, lambda).value;
    if (rx < ry - kTol) fail(rep, t, {{"rho_x", rx}, {"rho_y", ry}});
  }
  rep.trials = trials;
  return rep;
}

PropertyReport check_l1_continuity(const LambdaSpec& lambda, const RandomVector& space, std::size_t x_index,
                                   std::size_t z_index) {
  auto rep = make_report("l1_continuity", 0);
  if (attains_one(lambda)) {
    rep.skipped = true;
    rep.note = "Lambda attains 1";
    return rep;
  }
  const auto& x = space.variable(x_index);
  const auto& z = space.variable(z_index);
  double z_abs_mean = 0.0;
  double z_sup = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    z_abs_mean += space.probs()[i] * std::abs(z[i]);
    z_sup = std::max(z_sup, std::abs(z[i]));
  }
  const double base = lambda_es(space.law(x_index), lambda).value;
  const double slack = 1.0 - lambda(space.expectation(x) - z_sup);
  auto envelope = [&](double n) { return z_abs_mean / (n * slack) + kTol; };
  auto delta = [&](double n) {
    return std::abs(lambda_es(space.law_of(combine(1.0, x, 1.0 / n, z)), lambda).value - base);
  };
  for (int n = 1; n <= 64; ++n) {
    ++rep.trials;
    double dn = delta(n);
    if (dn > envelope(n)) fail(rep, static_cast<std::size_t>(n), {{"n", n}, {"delta", dn}, {"envelope", envelope(n)}});
    if (n == 64) rep.record("delta_64", dn);
  }
  // Far enough out that the envelope itself is below 1e-6.
  const double n_tail = std::ldexp(1.0, 26);
  ++rep.trials;
  double tail = delta(n_tail);
  rep.record("delta_tail", tail);
  if (envelope(n_tail) < 1e-6 && tail >= 1e-6) fail(rep, 0, {{"n", n_tail}, {"delta", tail}});
  return rep;
}

PropertyReport check_l1_continuity_sweep(std::size_t trials, std::uint64_t seed) {
  auto rep = make_report("l1_continuity", seed);
  gen::Rng rng(seed);
  double worst_64 = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    auto lambda = gen::bounded_below_one(rng);
    auto space = RandomVector(gen::simplex_weights(rng, 10));
    auto x = space.add(space_values(rng, 10));
    auto z = space.add(gen::values(rng, 10, -1.0, 1.0));
    auto one = check_l1_continuity(lambda, space, x, z);
    rep.trials += one.trials;
    if (one.failures != 0 && rep.failures == 0) {
      rep.record("trial", static_cast<double>(t));
      for (const auto& w : one.witness) rep.witness.push_back(w);
    }
    rep.failures += one.failures;
    if (!one.skipped) worst_64 = std::max(worst_64, one.at("delta_64"));
  }
  rep.record("max_delta_64", worst_64);
  return rep;
}

PropertyReport check_ru_equivalence(std::size_t trials, std::uint64_t seed) {
  auto rep = make_report("ru_equivalence", seed);
  gen::Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    auto lambda = gen::right_continuous(rng);
    auto d = gen::law(rng);
    double direct = lambda_es(d, lambda).value;
    double ru = minimize_t(d, lambda).value;
    if (std::abs(direct - ru) > 1e-9) fail(rep, t, {{"lambda_es", direct}, {"minimize_t", ru}});
  }
  rep.trials = trials;
  return rep;
}

PropertyReport check_sup_inf_identity(std::size_t trials, std::uint64_t seed) {
  auto rep = make_report("sup_inf_identity", seed);
  gen::Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    auto lambda = gen::any(rng);
    auto d = gen::law(rng);
    auto r = lambda_es(d, lambda);
    double inf_form = lambda_es_inf_form(d, lambda);
    if (std::abs(r.value - inf_form) > kTol) fail(rep, t, {{"sup_form", r.value}, {"inf_form", inf_form}});
    if (!r.cert.holds()) {
      fail(rep, t, {{"x_star", r.cert.x_star}, {"left", r.cert.left_value}, {"right", r.cert.right_value}});
    }
  }
  rep.trials = trials;
  return rep;
}

PropertyReport check_bisection_agreement(std::size_t trials, std::uint64_t seed) {
  auto rep = make_report("bisection_agreement", seed);
  gen::Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    auto lambda = gen::any(rng);
    auto d = gen::law(rng);
    double direct = lambda_es(d, lambda).value;
    double bis = lambda_es_bisection(d, lambda);
    if (std::abs(direct - bis) > 1e-8) fail(rep, t, {{"lambda_es", direct}, {"bisection", bis}});
  }
  rep.trials = trials;
  return rep;
}

PropertyReport check_lambda_var_representations(std::size_t trials, std::uint64_t seed) {
  auto rep = make_report("lambda_var_representations", seed);
  gen::Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    auto lambda = gen::any(rng);
    auto d = gen::law(rng);
    auto v = lambda_var(d, lambda);
    auto f = lambda_var_forms(d, lambda);
    if (!close(v, f.sup_form, kTol) || !close(v, f.inf_form, kTol)) {
      fail(rep, t,
           {{"direct", v.to_double()}, {"sup_form", f.sup_form.to_double()}, {"inf_form", f.inf_form.to_double()}});
    }
    auto vr = lambda_var_right(d, lambda);
    auto fr = lambda_var_right_forms(d, lambda);
    if (!close(vr, fr.sup_form, kTol) || !close(vr, fr.inf_form, kTol)) {
      fail(rep, t,
           {{"direct_right", vr.to_double()},
            {"sup_form", fr.sup_form.to_double()},
            {"inf_form", fr.inf_form.to_double()}});
    }
  }
  rep.trials = trials;
  return rep;
}

PropertyReport check_es_self_consistency(std::size_t laws, std::uint64_t seed) {
  auto rep = make_report("es_self_consistency", seed);
  gen::Rng rng(seed);
  for (std::size_t t = 0; t < laws; ++t) {
    auto d = gen::law(rng);
    for (int k = 0; k <= 100; ++k) {
      double alpha = k == 100 ? 1.0 : k / 100.0;
      double integral = es(d, alpha);
      double ru = es_ru(d, alpha).value;
      ++rep.trials;
      if (std::abs(integral - ru) > 1e-9) fail(rep, t, {{"alpha", alpha}, {"integral", integral}, {"ru", ru}});
    }
    if (std::abs(es(d, 0.0) - d.mean()) > 1e-9 || es(d, 1.0) != d.ess_sup()) ++rep.mismatches;
  }
  return rep;
}

PropertyReport check_constraint_rewrite(std::size_t trials, std::uint64_t seed) {
  auto rep = make_report("constraint_rewrite", seed);
  gen::Rng rng(seed);
  std::uint64_t ties = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    auto lambda = gen::right_continuous(rng);
    auto d = gen::law(rng);
    double direct = lambda_es(d, lambda).value;
    // Half the thresholds sit near the value itself, where the two sides are
    // most likely to disagree.
    double ell = uniform(rng, 0.0, 1.0) < 0.5 ? uniform(rng, d.ess_inf() - 1.0, d.ess_sup() + 1.0)
                                              : direct + uniform(rng, -0.05, 0.05);
    double level_es = es(d, constraint_rewrite(lambda, ell));
    if (std::abs(direct - ell) <= 1e-9 || std::abs(level_es - ell) <= 1e-9) {
      ++ties;
      continue;
    }
    if ((direct <= ell) != (level_es <= ell)) {
      fail(rep, t, {{"ell", ell}, {"lambda_es", direct}, {"es_at_rewritten_level", level_es}});
    }
  }
  rep.trials = trials;
  rep.record("ties_skipped", static_cast<double>(ties));
  return rep;
}

PropertyReport check_dual_lower_bound(std::size_t trials, std::uint64_t seed) {
  auto rep = make_report("dual_lower_bound", seed);
  gen::Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    auto lambda = gen::any(rng);
    auto space = RandomVector(gen::simplex_weights(rng, 20));
    auto x = space.add(space_values(rng, 20));
    auto q = random_change(rng, space);
    auto check = dual_lower_bound_check(space, x, lambda, q);
    if (!check.ok) fail(rep, t, {{"lhs", check.lhs.to_double()}, {"rhs", check.rhs}});
  }
  rep.trials = trials;
  return rep;
}

PropertyReport check_dual_witness(std::size_t trials, std::uint64_t seed) {
  auto rep = make_report("dual_witness", seed);
  gen::Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    auto lambda = left_continuous(rng);
    auto space = RandomVector(gen::simplex_weights(rng, 20));
    auto x = space.add(space_values(rng, 20));
    auto q = witness_supremum(space, x, lambda);
    auto lhs = r_function(q.expectation(space.variable(x)), q, lambda);
    double rhs = lambda_es(space.law(x), lambda).value;
    if (!lhs.is_finite() || std::abs(lhs.value() - rhs) > 1e-8)
      fail(rep, t, {{"r_at_witness", lhs.to_double()}, {"lambda_es", rhs}});
  }
  rep.trials = trials;
  return rep;
}

PropertyReport check_r_properties(std::size_t trials, std::uint64_t seed) {
  auto rep = make_report("r_properties", seed);
  gen::Rng rng(seed);
  std::vector<double> grid;
  for (int k = 0; k <= 40; ++k) grid.push_back(-6.0 + 0.3 * k);
  for (std::size_t t = 0; t < trials; ++t) {
    auto lambda = gen::any(rng);
    auto space = RandomVector(gen::simplex_weights(rng, 20));
    auto one = r_properties_check(random_change(rng, space), lambda, grid);
    rep.trials += one.trials;
    if (one.failures != 0 && rep.failures == 0) {
      rep.record("trial", static_cast<double>(t));
      for (const auto& w : one.witness) rep.witness.push_back(w);
    }
    rep.failures += one.failures;
  }
  return rep;
}

const std::vector<HarnessCheck>& harness_checks() {
  static const std::vector<HarnessCheck> checks = [] {
    std::vector<HarnessCheck> c;
    auto add = [&](std::string name, std::function<PropertyReport(std::uint64_t)> run) {
      c.push_back({std::move(name), std::move(run)});
    };
    add("monotonicity_lambda_es", [](std::uint64_t s) { return check_monotonicity(Measure::lambda_es, 1000, s); });
    add("monotonicity_lambda_var", [](std::uint64_t s) { return check_monotonicity(Measure::lambda_var, 1000, s); });
    add("monotonicity_es", [](std::uint64_t s) { return check_monotonicity(Measure::es, 1000, s); });
    add("monotonicity_var_left", [](std::uint64_t s) { return check_monotonicity(Measure::var_left, 1000, s); });
    add("cash_subadditivity", [](std::uint64_t s) { return check_cash_subadditivity(std::nullopt, 1000, s); });
    add("quasi_convexity", [](std::uint64_t s) { return check_quasi_convexity(std::nullopt, 2000, s); });
    add("normalization", [](std::uint64_t s) { return check_normalization(std::nullopt, 1000, s); });
    add("lambda_monotonicity", [](std::uint64_t s) { return check_lambda_monotonicity(1000, s); });
    add("dominance", [](std::uint64_t s) { return check_dominance(std::nullopt, 1000, s); });
    add("mixture_quasi_concavity",
        [](std::uint64_t s) { return check_mixture_quasi_concavity(std::nullopt, 2000, s); });
    add("ssd_consistency", [](std::uint64_t s) { return check_ssd_consistency(std::nullopt, 1000, s); });
    add("l1_continuity", [](std::uint64_t s) { return check_l1_continuity_sweep(1000, s); });
    add("convexity_failure", [](std::uint64_t s) { return check_convexity_failure(s); });
    add("a1", [](std::uint64_t) { return counterexample_a1(); });
    add("a2", [](std::uint64_t) { return counterexample_a2(); });
    add("a3", [](std::uint64_t) { return counterexample_a3(); });
    add("ru_equivalence", [](std::uint64_t s) { return check_ru_equivalence(500, s); });
    add("sup_inf_identity", [](std::uint64_t s) { return check_sup_inf_identity(500, s); });
    add("bisection_agreement", [](std::uint64_t s) { return check_bisection_agreement(500, s); });
    add("lambda_var_representations", [](std::uint64_t s) { return check_lambda_var_representations(500, s); });
    add("es_self_consistency", [](std::uint64_t s) { return check_es_self_consistency(200, s); });
    add("constraint_rewrite", [](std::uint64_t s) { return check_constraint_rewrite(500, s); });
    add("dual_lower_bound", [](std::uint64_t s) { return check_dual_lower_bound(10000, s); });
    add("dual_witness", [](std::uint64_t s) { return check_dual_witness(500, s); });
    add("r_properties", [](std::uint64_t s) { return check_r_properties(200, s); });
    return c;
  }();
  return checks;
}

std::vector<PropertyReport> run_harness(std::uint64_t seed, const std::string& only) {
  const auto& checks = harness_checks();
  std::vector<PropertyReport> out;
  for (std::size_t k = 0; k < checks.size(); ++k) {
    if (!only.empty() && checks[k].name != only) continue;
    auto rep = checks[k].run(seed + 7919 * (k + 1));
    rep.name = checks[k].name;
    rep.seed = seed + 7919 * (k + 1);
    out.push_back(std::move(rep));
  }
  if (!only.empty() && out.empty()) throw std::invalid_argument("unknown check '" + only + "'");
  return out;
}

}  // namespace lambdaes
