// betafreq: beta-expansions with prescribed digit-frequency behavior.
//
// Subcommands: expand, density, enumerate, variants, cutpoints, identities,
// verify. Every output records the config and seed that produced it; identical
// config + seed reproduces byte-identical files.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>

#include "betafreq/acceptance.hpp"
#include "betafreq/balanced.hpp"
#include "betafreq/beta_core.hpp"
#include "betafreq/density.hpp"
#include "betafreq/errors.hpp"
#include "betafreq/freq_tuned.hpp"
#include "betafreq/frequency.hpp"
#include "betafreq/multiplicity.hpp"
#include "betafreq/run_config.hpp"

using namespace betafreq;
using nlohmann::ordered_json;

namespace {

constexpr int kExitVerifyFailed = 5;

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) return;
  if (path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open output file " + path);
  f << text;
}

// seeded uniform point of [0, hi]: u/2^64 * hi with a fresh nonzero u
FieldElement seeded_point(const Beta& beta, unsigned long seed) {
  std::mt19937_64 rng(seed);
  unsigned long u = 0;
  while (u == 0) u = rng();
  Rational t(Int(u), Int(1) << 64);
  t.canonicalize();
  return FieldElement::from_rational(beta.field(), t) * beta.interval_hi();
}

FieldElement resolve_x(const Beta& beta, const RunConfig& cfg) {
  if (cfg.x.empty()) return seeded_point(beta, cfg.seed);
  auto q = parse_rational(cfg.x);
  if (!q) throw ConfigError("cannot parse x '" + cfg.x + "'");
  return FieldElement::from_rational(beta.field(), *q);
}

GenOptions gen_options(const RunConfig& cfg) {
  GenOptions opt;
  if (cfg.arith == "ball") opt.arith = Arith::ball;
  else if (cfg.arith != "exact") throw ConfigError("arith must be exact or ball");
  opt.policy.base_bits = cfg.base_bits;
  opt.policy.max_restarts = cfg.max_restarts;
  return opt;
}

ordered_json base_summary(const RunConfig& cfg) {
  // output locations are delivery details, not run content; dropping them
  // keeps summaries byte-identical across destinations
  RunConfig content = cfg;
  content.out.clear();
  content.summary_out.clear();
  ordered_json j;
  j["config"] = ordered_json::parse(content.to_json());
  j["number_format"] = "doubles printed with shortest round-trip precision";
  return j;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int cmd_expand(const RunConfig& cfg) {
  Beta beta = Beta::make(cfg.beta_spec);
  FieldElement x = resolve_x(beta, cfg);
  GenOptions opt = gen_options(cfg);
  DigitSeq s;
  ordered_json j = base_summary(cfg);
  if (cfg.algo == "greedy") {
    s = greedy_expand(beta, x, cfg.n, opt);
  } else if (cfg.algo == "balanced") {
    s = balanced_expand(beta, x, cfg.n, opt);
  } else if (cfg.algo == "tuned") {
    auto p = parse_rational(cfg.p);
    if (!p) throw ConfigError("cannot parse p '" + cfg.p + "'");
    TunedParams tp = target_to_cut(beta, *p);
    s = tuned_expand(tp, x, cfg.n, opt);
    j["p_target"] = p->get_str();
  } else {
    throw ConfigError("algo must be greedy, balanced or tuned");
  }

  FrequencyProfile prof = freq_profile(s.digits, beta.max_digit());
  j["beta"] = beta.spec_str();
  j["x"] = x.str();
  j["n"] = s.digits.size();
  j["arith"] = to_string(s.arith);
  j["precision_bits"] = s.precision_bits;
  j["restarts"] = s.restarts;
  j["degenerate_endpoint"] = s.degenerate_endpoint;
  j["entry_len"] = s.entry_len;
  j["counts"] = prof.counts;
  j["freq"] = prof.point;
  j["freq_upper"] = prof.upper;
  j["freq_lower"] = prof.lower;
  if (cfg.algo == "tuned") {
    double p_target = parse_rational(cfg.p)->get_d();
    j["abs_error"] = std::abs(prof.point[0] - p_target);
  }
  write_text(cfg.out, digit_word(s.digits, beta.max_digit()) + "\n");
  write_text(cfg.summary_out, j.dump(2) + "\n");
  return 0;
}

int cmd_density(const RunConfig& cfg) {
  Beta beta = Beta::make(cfg.beta_spec);
  auto p = parse_rational(cfg.p);
  if (!p) throw ConfigError("cannot parse p '" + cfg.p + "'");
  TunedParams tp = target_to_cut(beta, *p);
  FieldElement x0 = resolve_x(beta, cfg);
  HistogramComparison h = orbit_histogram_compare(tp, x0, cfg.steps, cfg.burn_in, cfg.bins);

  std::string csv = "bin_lo,bin_hi,empirical_mass,analytic_mass\n";
  for (size_t i = 0; i < h.empirical.size(); ++i) {
    csv += format_double(h.bin_lo[i]) + "," + format_double(h.bin_hi[i]) + "," +
           format_double(h.empirical[i]) + "," + format_double(h.analytic[i]) + "\n";
  }
  write_text(cfg.out, csv);

  ordered_json j = base_summary(cfg);
  j["beta"] = beta.spec_str();
  j["x0"] = x0.str();
  j["steps"] = h.steps;
  j["burn_in"] = h.burn_in;
  j["bins"] = cfg.bins;
  j["l1"] = h.l1;
  write_text(cfg.summary_out, j.dump(2) + "\n");
  return 0;
}

int cmd_enumerate(const RunConfig& cfg) {
  Beta beta = Beta::make(cfg.beta_spec);
  FieldElement x = resolve_x(beta, cfg);
  PrefixEnumeration e = enumerate_prefixes(beta, x, cfg.depth);
  std::string body;
  for (const auto& w : e.prefixes) body += w + "\n";
  write_text(cfg.out, body);
  ordered_json j = base_summary(cfg);
  j["beta"] = beta.spec_str();
  j["x"] = x.str();
  j["depth"] = cfg.depth;
  j["count"] = e.prefixes.size();
  j["visited"] = e.visited;
  write_text(cfg.summary_out, j.dump(2) + "\n");
  return 0;
}

int cmd_variants(const RunConfig& cfg) {
  Beta beta = Beta::make(cfg.beta_spec);
  FieldElement x = resolve_x(beta, cfg);
  ExpansionOracle oracle;
  ordered_json j = base_summary(cfg);
  if (cfg.algo == "greedy") {
    oracle = [beta](const FieldElement& y, size_t n) { return greedy_expand(beta, y, n); };
  } else if (cfg.algo == "balanced") {
    oracle = [beta](const FieldElement& y, size_t n) { return balanced_expand(beta, y, n); };
  } else if (cfg.algo == "tuned") {
    auto p = parse_rational(cfg.p);
    if (!p) throw ConfigError("cannot parse p '" + cfg.p + "'");
    TunedParams tp = target_to_cut(beta, *p);
    oracle = [tp](const FieldElement& y, size_t n) { return tuned_expand(tp, y, n); };
    j["p_target"] = p->get_str();
  } else {
    throw ConfigError("algo must be greedy, balanced or tuned");
  }
  auto vs = variants(beta, x, oracle, cfg.count, cfg.n, cfg.horizon);
  std::string body;
  ordered_json meta = ordered_json::array();
  for (const auto& v : vs) {
    body += digit_word(v.digits, beta.max_digit()) + "\n";
    FrequencyProfile prof = freq_profile(v.digits, beta.max_digit());
    ordered_json vj;
    vj["switch_index"] = v.switch_index;
    vj["alt_digit"] = int(v.alt_digit);
    vj["freq"] = prof.point;
    meta.push_back(vj);
  }
  write_text(cfg.out, body);
  j["beta"] = beta.spec_str();
  j["x"] = x.str();
  j["count"] = vs.size();
  j["variants"] = meta;
  write_text(cfg.summary_out, j.dump(2) + "\n");
  return 0;
}

int cmd_cutpoints(const RunConfig& cfg) {
  Beta beta = Beta::make(cfg.beta_spec);
  CutPoints cp = cut_points(beta);
  ordered_json j = base_summary(cfg);
  j["beta"] = beta.spec_str();
  ordered_json zs = ordered_json::array();
  for (const auto& z : cp.z) {
    ordered_json zj;
    zj["exact"] = z.str();
    zj["value"] = z.to_double();
    zs.push_back(zj);
  }
  j["z"] = zs;
  // symmetry residuals at 256 bits
  double worst = 0;
  Ball hi = beta.interval_hi().to_ball(256);
  for (size_t k = 0; k < cp.z.size(); ++k) {
    Ball s = cp.z[k].to_ball(256) + cp.z[cp.z.size() - 1 - k].to_ball(256) - hi;
    worst = std::max(worst, std::abs(s.mid_double()) + s.rad_double());
  }
  j["symmetry_residual_256bit"] = worst;
  write_text(cfg.out.empty() ? "-" : cfg.out, j.dump(2) + "\n");
  return 0;
}

int cmd_identities(const RunConfig& cfg) {
  Beta beta = Beta::make(cfg.beta_spec);
  auto p = parse_rational(cfg.p);
  if (!p) throw ConfigError("cannot parse p '" + cfg.p + "'");
  TunedParams tp = target_to_cut(beta, *p);
  OrbitIdentityReport rep = orbit_identities(tp);
  ordered_json j = base_summary(cfg);
  j["beta"] = beta.spec_str();
  j["p"] = p->get_str();
  j["window_lo"] = tp.window_lo.str();
  j["cut"] = tp.cut.str();
  j["ok"] = rep.ok;
  j["checks"] = rep.lines;
  write_text(cfg.out.empty() ? "-" : cfg.out, j.dump(2) + "\n");
  return 0;
}

int cmd_verify(const RunConfig& cfg) {
  AcceptanceOptions opt;
  opt.only = cfg.only;
  opt.threads = cfg.threads;
  auto results = run_acceptance(opt);
  ordered_json j = base_summary(cfg);
  ordered_json arr = ordered_json::array();
  bool all = true;
  for (const auto& r : results) {
    std::printf("[%s] C%d %s (%.1fs)\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.seconds);
    for (const auto& d : r.details)
      if (!d.empty()) std::printf("       %s\n", d.c_str());
    all = all && r.pass;
    ordered_json rj;
    rj["id"] = r.id;
    rj["name"] = r.name;
    rj["pass"] = r.pass;
    rj["seconds"] = r.seconds;
    rj["details"] = r.details;
    arr.push_back(rj);
  }
  j["criteria"] = arr;
  j["all_pass"] = all;
  write_text(cfg.summary_out, j.dump(2) + "\n");
  std::printf("%s\n", all ? "all criteria passed" : "verification FAILED");
  return all ? 0 : kExitVerifyFailed;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"beta-expansions with prescribed digit frequencies"};
  app.require_subcommand(1);
  RunConfig cfg;
  cfg.out = "-";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--beta", cfg.beta_spec, "base: pg:<m>, decimal/fraction, or poly:c0,..,cd:lo,hi");
    sub->add_option("--seed", cfg.seed, "RNG seed, recorded in outputs");
    sub->add_option("--out", cfg.out, "primary output path ('-' = stdout)");
    sub->add_option("--summary", cfg.summary_out, "JSON summary path ('-' = stdout)");
  };

  CLI::App* expand = app.add_subcommand("expand", "generate one digit stream");
  add_common(expand);
  expand->add_option("--algo", cfg.algo, "greedy | balanced | tuned");
  expand->add_option("--p", cfg.p, "tuned zero-frequency target (rational or decimal)");
  expand->add_option("--x", cfg.x, "start point (rational); omitted = seeded uniform in I");
  expand->add_option("--n", cfg.n, "digits to generate");
  expand->add_option("--arith", cfg.arith, "exact | ball");
  expand->add_option("--base-bits", cfg.base_bits, "ball policy guard bits");
  expand->add_option("--max-restarts", cfg.max_restarts, "ball policy restart cap");

  CLI::App* density = app.add_subcommand("density", "orbit histogram vs analytic density (CSV)");
  add_common(density);
  density->add_option("--m", cfg.m, "pseudo-golden index (shorthand for --beta pg:<m>)");
  density->add_option("--p", cfg.p, "zero-frequency target");
  density->add_option("--steps", cfg.steps, "orbit length");
  density->add_option("--burn-in", cfg.burn_in, "skipped prefix");
  density->add_option("--bins", cfg.bins, "histogram bins");
  density->add_option("--x", cfg.x, "start point; omitted = seeded uniform");

  CLI::App* enumerate = app.add_subcommand("enumerate", "all feasible digit prefixes of x");
  add_common(enumerate);
  enumerate->add_option("--x", cfg.x, "point to expand");
  enumerate->add_option("--depth", cfg.depth, "prefix length");

  CLI::App* vars = app.add_subcommand("variants", "distinct expansions by branch-and-splice");
  add_common(vars);
  vars->add_option("--algo", cfg.algo, "oracle: greedy | balanced | tuned");
  vars->add_option("--p", cfg.p, "tuned target when --algo tuned");
  vars->add_option("--x", cfg.x, "point to expand; omitted = seeded uniform");
  vars->add_option("--count", cfg.count, "number of variants");
  vars->add_option("--n", cfg.n, "stream length");
  vars->add_option("--horizon", cfg.horizon, "branch search window");

  CLI::App* cut = app.add_subcommand("cutpoints", "symmetric-map cut points (beta > 2)");
  add_common(cut);

  CLI::App* ident = app.add_subcommand("identities", "exact orbit identities of the tuned map");
  add_common(ident);
  ident->add_option("--p", cfg.p, "zero-frequency target");

  CLI::App* verify = app.add_subcommand("verify", "run the verification suite");
  add_common(verify);
  verify->add_option("--only", cfg.only, "criteria subset, e.g. --only 1 3");
  verify->add_option("--threads", cfg.threads, "worker threads (0 = hardware)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (expand->parsed()) {
      cfg.command = "expand";
      return cmd_expand(cfg);
    }
    if (density->parsed()) {
      cfg.command = "density";
      if (density->count("--m")) cfg.beta_spec = "pg:" + std::to_string(cfg.m);
      return cmd_density(cfg);
    }
    if (enumerate->parsed()) {
      cfg.command = "enumerate";
      return cmd_enumerate(cfg);
    }
    if (vars->parsed()) {
      cfg.command = "variants";
      return cmd_variants(cfg);
    }
    if (cut->parsed()) {
      cfg.command = "cutpoints";
      return cmd_cutpoints(cfg);
    }
    if (ident->parsed()) {
      cfg.command = "identities";
      return cmd_identities(cfg);
    }
    cfg.command = "verify";
    return cmd_verify(cfg);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.exit_code();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
