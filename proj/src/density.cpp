#include "betafreq/density.hpp"

#include <algorithm>
#include <cmath>

#include "betafreq/errors.hpp"

namespace betafreq {

DensityModel build_density(const TunedParams& params, int terms) {
  const Beta& beta = params.beta;
  const FieldPtr& K = beta.field();
  const int m = params.m;
  if (terms < 0) terms = m;
  if (terms < m) throw InvalidSpec("density truncation needs at least m terms");

  FieldElement one = FieldElement::one(K);
  FieldElement hi = beta.interval_hi();

  // orbit values u_k = T^k(b), v_k = T^k(b+1) under the actual map
  std::vector<FieldElement> u{params.window_lo}, v{params.window_lo + one};
  auto step = [&](const FieldElement& y) {
    int digit = (y - params.cut).sign() >= 0 ? 1 : 0;
    return y * beta.value() - FieldElement::from_rational(K, Rational(digit));
  };
  for (int k = 1; k < terms; ++k) {
    u.push_back(step(u.back()));
    v.push_back(step(v.back()));
  }

  DensityModel model;
  model.params = params;
  std::vector<FieldElement> pts{FieldElement::zero(K), hi};
  for (const auto& e : u) pts.push_back(e);
  for (const auto& e : v) pts.push_back(e);
  std::sort(pts.begin(), pts.end(), [](const FieldElement& a, const FieldElement& b) {
    return a.compare(b) < 0;
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const FieldElement& a, const FieldElement& b) { return a == b; }),
            pts.end());
  if (pts.front().sign() < 0 || (pts.back() - hi).sign() > 0)
    throw IdentityViolated("density breakpoints escaped the expansion interval");
  model.breakpoints = pts;

  // height on a cell: sum of beta^-k over terms whose (u_k, v_k] covers it
  FieldElement inv_beta = beta.value().inverse();
  std::vector<FieldElement> wk(terms);
  wk[0] = one;
  for (int k = 1; k < terms; ++k) wk[k] = wk[k - 1] * inv_beta;

  model.heights.resize(pts.size() - 1);
  for (size_t j = 0; j + 1 < pts.size(); ++j) {
    FieldElement h = FieldElement::zero(K);
    for (int k = 0; k < terms; ++k) {
      if (u[k].compare(pts[j]) <= 0 && pts[j + 1].compare(v[k]) <= 0) h = h + wk[k];
    }
    model.heights[j] = h;
  }
  // canonical form: drop breakpoints that do not change the height (merged
  // orbit points from truncations past m produce degenerate cells)
  std::vector<FieldElement> cpts{model.breakpoints.front()};
  std::vector<FieldElement> chts;
  for (size_t j = 0; j < model.heights.size(); ++j) {
    if (!chts.empty() && chts.back() == model.heights[j]) {
      cpts.back() = model.breakpoints[j + 1];
    } else {
      chts.push_back(model.heights[j]);
      cpts.push_back(model.breakpoints[j + 1]);
    }
  }
  model.breakpoints = std::move(cpts);
  model.heights = std::move(chts);

  // total mass, via the model and via the closed form; they must agree
  FieldElement total = FieldElement::zero(K);
  for (size_t j = 0; j < model.heights.size(); ++j)
    total = total + model.heights[j] * (model.breakpoints[j + 1] - model.breakpoints[j]);
  FieldElement closed = (beta.value().scaled(Rational(m + 1)) -
                         FieldElement::from_rational(K, Rational(2 * m))) /
                        (beta.value() - one);
  if (!(total == closed)) throw IdentityViolated("mu(I) != (m beta + beta - 2m)/(beta - 1)");
  model.mu_total = total;
  model.nu_scale = total.inverse();
  return model;
}

FieldElement density_eval(const DensityModel& model, const FieldElement& x) {
  if (x.sign() < 0 || (x - model.breakpoints.back()).sign() > 0)
    throw OutOfDomain("density_eval outside [0, hi]");
  // left-closed cells; x = hi falls into the last cell
  size_t j = 0;
  while (j + 2 < model.breakpoints.size() && x.compare(model.breakpoints[j + 1]) >= 0) ++j;
  return model.heights[j];
}

FieldElement measure_mu(const DensityModel& model, const FieldElement& a, const FieldElement& b) {
  if (b.compare(a) <= 0) return FieldElement::zero(model.params.beta.field());
  FieldElement acc = FieldElement::zero(model.params.beta.field());
  const auto& pts = model.breakpoints;
  for (size_t j = 0; j + 1 < pts.size(); ++j) {
    // overlap of [pts[j], pts[j+1]) with [a, b)
    const FieldElement& lo = pts[j].compare(a) >= 0 ? pts[j] : a;
    const FieldElement& hi = pts[j + 1].compare(b) <= 0 ? pts[j + 1] : b;
    if (hi.compare(lo) > 0) acc = acc + model.heights[j] * (hi - lo);
  }
  return acc;
}

std::vector<FieldElement> analytic_bin_masses(const DensityModel& model, int bins) {
  if (bins < 1) throw InvalidSpec("need at least one bin");
  const Beta& beta = model.params.beta;
  FieldElement hi = beta.interval_hi();
  std::vector<FieldElement> masses(bins);
  FieldElement prev = FieldElement::zero(beta.field());
  for (int i = 0; i < bins; ++i) {
    FieldElement edge = i + 1 == bins ? hi : hi.scaled(Rational(i + 1, bins));
    masses[i] = measure_mu(model, prev, edge) * model.nu_scale;
    prev = edge;
  }
  return masses;
}

HistogramComparison orbit_histogram_compare(const TunedParams& params, const FieldElement& x0,
                                            size_t n_steps, size_t burn_in, int bins) {
  if (n_steps <= burn_in) throw InvalidSpec("n_steps must exceed burn_in");
  const Beta& beta = params.beta;
  require_in_interval(beta, x0);
  DensityModel model = build_density(params);

  HistogramComparison out;
  out.steps = n_steps;
  out.burn_in = burn_in;
  const double hi_d = beta.interval_hi().to_double();
  std::vector<uint64_t> counts(bins, 0);

  // certified orbit; bin index from the rounded double of the exact point
  Orbit orb = Orbit::exact(beta, x0);
  FieldElement b1 = params.window_lo + FieldElement::one(beta.field());
  int h_b1 = orb.register_constant(b1);
  orb.reserve(n_steps);
  for (size_t i = 0; i < n_steps; ++i) {
    if (i >= burn_in) {
      double y = orb.approx();
      long bix = static_cast<long>(std::floor(y / hi_d * bins));
      bix = std::clamp(bix, 0L, static_cast<long>(bins - 1));
      ++counts[bix];
    }
    orb.mul_beta();
    long digit = orb.sign_vs(h_b1) >= 0 ? 1 : 0;
    orb.sub_digit(digit);
  }

  std::vector<FieldElement> analytic = analytic_bin_masses(model, bins);
  const double total = static_cast<double>(n_steps - burn_in);
  out.bin_lo.resize(bins);
  out.bin_hi.resize(bins);
  out.empirical.resize(bins);
  out.analytic.resize(bins);
  double l1 = 0;
  for (int i = 0; i < bins; ++i) {
    out.bin_lo[i] = hi_d * i / bins;
    out.bin_hi[i] = hi_d * (i + 1) / bins;
    out.empirical[i] = static_cast<double>(counts[i]) / total;
    out.analytic[i] = analytic[i].to_double();
    l1 += std::abs(out.empirical[i] - out.analytic[i]);
  }
  out.l1 = l1;
  return out;
}

} // namespace betafreq
