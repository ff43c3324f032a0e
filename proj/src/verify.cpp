#include "necklace/verify.hpp"

#include "necklace/ensemble.hpp"
#include "necklace/ids.hpp"
#include "necklace/magnetic.hpp"
#include "necklace/report.hpp"
#include "necklace/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <numbers>
#include <sstream>

namespace necklace {

namespace {

constexpr double pi = std::numbers::pi;

using Check = std::function<CheckResult(const VerifyOptions &)>;

std::string describe(const char *what, double value, const char *limit_what, double limit) {
  std::ostringstream s;
  s << std::setprecision(3) << what << ' ' << value << ' ' << limit_what << ' ' << limit;
  return s.str();
}

ArcLengthDistribution bernoulli() { return ArcLengthDistribution({{2.0, 0.5}, {6.0, 0.5}}, {}); }

EnsembleOptions ensemble_options(const VerifyOptions &o, std::uint64_t index) {
  EnsembleOptions e;
  e.chain_length = o.chain_length;
  e.realizations = o.realizations;
  e.seed = derive_seed(o.seed, index);
  return e;
}

// Random (E, omega0) with E in (0, 200] and omega0 in (0, 6].
template <typename F> double worst_over_random_points(int count, std::uint64_t seed, F &&f) {
  RandomStream rng(seed, 0);
  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    const double e = 200.0 * (1.0 - rng.uniform());
    const double w = 6.0 * (1.0 - rng.uniform());
    worst = std::max(worst, f(e, w));
  }
  return worst;
}

CheckResult step_count_jumps(const VerifyOptions &) {
  const auto dist = bernoulli();
  double worst = 0.0;
  bool monotone = true;
  double prev = 0.0;
  for (int i = 1; i <= 2000; ++i) {
    const double n = expect_step_count(dist, 0.05 * i);
    monotone = monotone && n >= prev;
    prev = n;
  }
  for (const auto &j : jump_set(dist, 150.0)) {
    double expected = 0.0;
    for (const auto &a : atoms_with_integer_ratio(dist, j.energy))
      expected += a.weight;
    const double right = expect_step_count(dist, j.energy * (1 + 1e-7)) - expect_step_count(dist, j.energy);
    const double left = expect_step_count(dist, j.energy) - expect_step_count(dist, j.energy * (1 - 1e-7));
    worst = std::max({worst, std::abs(right - expected), std::abs(left)});
  }
  return {"step count monotone, jumps equal integer-ratio weights", monotone && worst < 1e-12,
          describe("max jump error", worst, "limit", 1e-12)};
}

CheckResult step_count_lipschitz(const VerifyOptions &) {
  const auto dist = ArcLengthDistribution::uniform(0.5, 1.5);
  const double h = dist.max_density();
  const double k = dist.support_bound();
  double worst = 0.0;
  for (int i = 1; i <= 400; ++i) {
    const double e = 0.5 * i;
    const double eps = 1e-6 * e;
    const double bound = h * eps * k * (1 + k * std::sqrt(e) / pi) / (4 * e);
    const double change = expect_step_count(dist, e + eps) - expect_step_count(dist, e);
    worst = std::max(worst, std::abs(change) / bound);
  }
  return {"continuous law: Lipschitz bound on step count", worst <= 1.0,
          describe("max change/bound", worst, "limit", 1.0)};
}

CheckResult step_count_monte_carlo(const VerifyOptions &o) {
  const std::vector<ArcLengthDistribution> laws = {
      ArcLengthDistribution::uniform(0.5, 1.5), bernoulli(),
      ArcLengthDistribution({{1.0, 0.3}}, {{0.5, 2.0, 0.7 / 1.5}})};
  double worst = 0.0;
  std::uint64_t stream = 0;
  for (const auto &law : laws) {
    const auto sample = sample_sequence(law, 1000000, o.seed, stream++);
    for (double e : {10.0, 50.0, 200.0}) {
      const double rate = std::sqrt(e) / pi;
      double sum = 0.0, sum2 = 0.0;
      for (double w : sample.values) {
        const double c = strict_floor(w * rate);
        sum += c;
        sum2 += c * c;
      }
      const double n = static_cast<double>(sample.values.size());
      const double mean = sum / n;
      const double se = std::sqrt(std::max(sum2 / n - mean * mean, 0.0) / n);
      worst = std::max(worst, std::abs(mean - expect_step_count(law, e)) / std::max(se, 1e-300));
    }
  }
  // 4 sigma over nine comparisons keeps the false-alarm rate below 1e-3
  return {"exact step count matches 10^6-sample Monte Carlo", worst < 4.0,
          describe("max |diff|/se", worst, "limit", 4.0)};
}

CheckResult unitarity(const VerifyOptions &o) {
  const double worst = worst_over_random_points(10000, o.seed, [](double e, double w) {
    const auto s = loop_amplitudes(e, w);
    return std::abs(std::norm(s.T) + std::norm(s.R) - 1.0);
  });
  return {"unitarity |T|^2 + |R|^2 = 1", worst < 1e-12, describe("max error", worst, "limit", 1e-12)};
}

CheckResult determinant(const VerifyOptions &o) {
  const double worst = worst_over_random_points(10000, o.seed + 1, [](double e, double w) {
    return std::abs(transfer_matrix(loop_amplitudes(e, w), e).entries.determinant() - 1.0);
  });
  return {"det of loop transfer matrix = 1", worst < 1e-12, describe("max error", worst, "limit", 1e-12)};
}

CheckResult real_trace(const VerifyOptions &o) {
  const double worst = worst_over_random_points(10000, o.seed + 2, [](double e, double w) {
    return std::abs(transfer_matrix(loop_amplitudes(e, w), e).entries.trace().imag());
  });
  return {"trace of transfer matrix is real", worst < 1e-12, describe("max |Im tr|", worst, "limit", 1e-12)};
}

CheckResult trace_is_discriminant(const VerifyOptions &o) {
  const double worst = worst_over_random_points(1000, o.seed + 3, [](double e, double w) {
    const auto tr = transfer_matrix(loop_amplitudes(e, w), e).entries.trace().real();
    return std::abs(tr - hill_discriminant(e, w));
  });
  return {"trace equals Hill discriminant", worst < 1e-10, describe("max error", worst, "limit", 1e-10)};
}

CheckResult relative_reflection(const VerifyOptions &o) {
  RandomStream rng(o.seed + 4, 0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double e = 200.0 * (1.0 - rng.uniform());
    const double s1 = 6.0 * (1.0 - rng.uniform());
    const double s0 = 6.0 * (1.0 - rng.uniform());
    const auto z1 = std::polar(1.0, 2 * s1 * std::sqrt(e));
    const auto z0 = std::polar(1.0, 2 * s0 * std::sqrt(e));
    const auto closed = -3.0 * (z1 - z0) / (z1 - 9.0 * z0);
    worst = std::max(worst, std::abs(relative_amplitudes(e, s1, s0).R - closed));
  }
  return {"relative R from matrix quotient matches closed form", worst < 1e-10,
          describe("max error", worst, "limit", 1e-10)};
}

CheckResult magnetic_reduction(const VerifyOptions &o) {
  RandomStream rng(o.seed + 5, 0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double e = 200.0 * (1.0 - rng.uniform());
    const double w = 6.0 * (1.0 - rng.uniform());
    const auto a = loop_amplitudes_magnetic_offset(e, w, 0.0);
    const auto b = loop_amplitudes(e, w);
    worst = std::max({worst, std::abs(a.T - b.T), std::abs(a.R - b.R), std::abs(a.L - b.L)});
  }
  return {"magnetic solver at B = 0 matches closed form", worst < 1e-10,
          describe("max error", worst, "limit", 1e-10)};
}

CheckResult ids_monotone(const VerifyOptions &o) {
  const auto dist = bernoulli();
  double worst = 0.0;
  EnsembleEstimate prev;
  for (int i = 0; i < 40; ++i) {
    const double e = 0.1 + 0.75 * i;
    const auto cur = phase_density(dist, e, ensemble_options(o, i));
    if (i > 0) {
      const double drop = prev.mean - cur.mean;
      worst = std::max(worst, drop / (3 * std::hypot(prev.std_error, cur.std_error) + 1e-300));
    }
    prev = cur;
  }
  return {"N~ non-decreasing within 3 sigma", worst < 1.0,
          describe("max drop/3se", worst, "limit", 1.0)};
}

// gamma at E and at its image with common random numbers.
CheckResult symmetry(const VerifyOptions &o, bool reflect) {
  const auto dist = bernoulli();
  RandomStream rng(o.seed + (reflect ? 7 : 6), 0);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double q = 0.05 + (3 * pi - 0.05) * rng.uniform();
    const double image = reflect ? std::ceil(q / pi) * pi - q : q + pi;
    const auto opt = ensemble_options(o, 100 + i);
    const auto a = lyapunov(dist, q * q, opt);
    const auto b = lyapunov(dist, image * image, opt);
    worst = std::max(worst, std::abs(a.mean - b.mean) / (3 * std::hypot(a.std_error, b.std_error)));
  }
  return {reflect ? "gamma reflection symmetry about k pi" : "gamma periodic in sqrt(E) with period pi",
          worst < 1.0, describe("max |diff|/3se", worst, "limit", 1.0)};
}

CheckResult chain_splitting(const VerifyOptions &o) {
  const auto dist = ArcLengthDistribution::uniform(0.5, 1.5);
  const LoopTransferSampler sampler(dist, 7.3);
  RandomStream r1(o.seed, 0), r2(o.seed, 0);
  ChainAccumulator one, two;
  extend_chain(one, sampler, r1, 5000);
  extend_chain(two, sampler, r2, 1234);
  extend_chain(two, sampler, r2, 5000 - 1234);
  const bool same = one.log_norm() == two.log_norm() && one.phase() == two.phase() &&
                    one.direction() == two.direction();
  return {"chain split into two runs is bit-identical", same, same ? "identical" : "differs"};
}

CheckResult self_averaging(const VerifyOptions &o) {
  const auto dist = bernoulli();
  const LoopTransferSampler sampler(dist, 5.0);
  RandomStream rng(o.seed, 0);
  ChainAccumulator acc;
  constexpr long block = 1024;
  std::vector<double> small;
  double last = 0.0;
  for (int b = 0; b < 256; ++b) {
    extend_chain(acc, sampler, rng, block);
    small.push_back((acc.log_norm() - last) / block);
    last = acc.log_norm();
  }
  std::vector<double> large;
  for (std::size_t b = 0; b < small.size(); b += 4)
    large.push_back((small[b] + small[b + 1] + small[b + 2] + small[b + 3]) / 4);
  auto spread = [](const std::vector<double> &v) {
    double m = 0.0, s = 0.0;
    for (double x : v)
      m += x;
    m /= static_cast<double>(v.size());
    for (double x : v)
      s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
  };
  const double ratio = spread(small) / spread(large);
  // 4x longer blocks halve the spread; the band allows for 64 large blocks
  return {"gamma spread falls like M^-1/2", ratio > 1.5 && ratio < 2.6,
          describe("spread ratio", ratio, "expected", 2.0)};
}

CheckResult projection_agreement(const VerifyOptions &o) {
  const auto dist = bernoulli();
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double e = 0.5 + 4.0 * i;
    const auto opt = ensemble_options(o, 200 + i);
    const auto p = phase_density(dist, e, opt, Projection::plus);
    const auto m = phase_density(dist, e, opt, Projection::minus);
    const double tol = 3 * std::hypot(p.std_error, m.std_error) + 1.0 / static_cast<double>(o.chain_length);
    worst = std::max(worst, std::abs(p.mean - m.mean) / tol);
  }
  return {"e+ and e- phase estimators agree", worst < 1.0,
          describe("max |diff|/tol", worst, "limit", 1.0)};
}

CheckResult jumps_live_in_loop_part(const VerifyOptions &o) {
  const auto dist = bernoulli();
  double loop_error = 0.0;
  double total_ratio = 0.0;
  int idx = 0;
  for (const auto &j : jump_set(dist, 40.0)) {
    const double lo = j.energy * (1 - 1e-6), hi = j.energy * (1 + 1e-6);
    loop_error = std::max(loop_error, std::abs(loop_ids(dist, hi) - loop_ids(dist, lo) - j.magnitude));
    const auto opt = ensemble_options(o, 300 + idx++);
    const auto a = phase_density(dist, lo, opt);
    const auto b = phase_density(dist, hi, opt);
    const double tol = 3 * std::hypot(a.std_error, b.std_error) + 1.0 / static_cast<double>(o.chain_length);
    total_ratio = std::max(total_ratio, std::abs(b.mean - a.mean) / tol);
  }
  return {"jumps are exact in N_loop, N~ continuous across them",
          loop_error == 0.0 && total_ratio < 1.0,
          describe("N_loop error", loop_error, "N~ |jump|/tol", total_ratio)};
}

CheckResult loop_ids_steps(const VerifyOptions &) {
  const auto dist = bernoulli();
  const auto jumps = jump_set(dist, 100.0);
  bool constant = true;
  double lower = 1e-3;
  for (const auto &j : jumps) {
    // N_loop(E*) is the left limit, so the reference point is interior
    const double first = loop_ids(dist, lower + (j.energy - lower) / 10.0);
    for (int s = 2; s < 10; ++s)
      constant = constant && loop_ids(dist, lower + (j.energy - lower) * s / 10.0) == first;
    lower = j.energy;
  }
  return {"N_loop constant between jumps (atomic law)", constant,
          std::to_string(jumps.size()) + " intervals"};
}

CheckResult magnetic_jump_subset(const VerifyOptions &) {
  const auto dist = bernoulli();
  const auto full = jump_set(dist, 200.0);
  auto energies = [](const std::vector<JumpRecord> &v) {
    std::vector<double> out;
    for (const auto &j : v)
      out.push_back(j.energy);
    return out;
  };
  auto same = [](const std::vector<JumpRecord> &a, const std::vector<JumpRecord> &b) {
    return std::equal(a.begin(), a.end(), b.begin(), b.end(), [](const auto &x, const auto &y) {
      return x.energy == y.energy && x.magnitude == y.magnitude;
    });
  };
  const auto full_energies = energies(full);
  bool ok = true;
  for (double b : {pi * pi / 4, pi * pi / 8, 1.0, pi * pi / 36}) {
    const auto sub = jump_set(dist, 200.0, b);
    const auto sub_energies = energies(sub);
    ok = ok && std::includes(full_energies.begin(), full_energies.end(), sub_energies.begin(),
                             sub_energies.end());
    const bool all_integral = flux_is_integral(2.0, b) && flux_is_integral(6.0, b);
    ok = ok && same(sub, full) == all_integral;
  }
  return {"magnetic jump set is a subset, equal iff all fluxes integral", ok, ok ? "4 fields" : "mismatch"};
}

CheckResult periodic_gaps(const VerifyOptions &o) {
  const auto dist = ArcLengthDistribution::point_mass(1.0);
  std::vector<double> grid;
  for (int i = 1; i <= 150; ++i)
    grid.push_back(0.2 * i);
  CurveOptions co;
  co.chain_length = o.chain_length;
  co.realizations = o.realizations;
  co.seed = o.seed;
  const auto curve = full_curve(dist, grid, co);
  // a deterministic chain has no spread; its O(1/M) end effects remain
  const double slack = 1.0 / static_cast<double>(o.chain_length);
  double flat = 0.0, gamma_gap = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto &p = curve.points[i];
    const double h = std::abs(hill_discriminant(p.energy, 1.0));
    if (h <= 2.0)
      continue;
    gamma_gap = std::max(gamma_gap, (std::acosh(h / 2) - p.gamma) / std::max(3 * p.gamma_se, 5 * slack));
    if (i + 1 < grid.size() && std::abs(hill_discriminant(grid[i + 1], 1.0)) > 2.0) {
      const auto &q = curve.points[i + 1];
      const double step = std::abs(q.n_total - p.n_total);
      flat = std::max(flat, step / (2 * std::hypot(p.n_tilde_se, q.n_tilde_se) + slack));
    }
  }
  return {"periodic law: N flat and gamma >= arccosh(|H|/2) in gaps", flat < 1.0 && gamma_gap < 1.0,
          describe("flatness ratio", flat, "gamma shortfall/3se", gamma_gap)};
}

CheckResult thread_independence(const VerifyOptions &o) {
  const auto dist = ArcLengthDistribution({{2.0, 0.5}}, {{0.5, 1.5, 0.5}});
  std::vector<double> grid;
  for (int i = 1; i <= 12; ++i)
    grid.push_back(2.5 * i);
  CurveOptions co;
  co.chain_length = std::min(o.chain_length, 5000L);
  co.realizations = 2;
  co.seed = o.seed;
  std::string text[2];
  for (int t = 0; t < 2; ++t) {
    co.threads = t == 0 ? 1 : 3;
    std::ostringstream s;
    write_curve_csv(s, full_curve(dist, grid, co));
    text[t] = s.str();
  }
  return {"CSV identical for 1 and 3 worker threads", text[0] == text[1],
          text[0] == text[1] ? "byte-identical" : "differs"};
}

} // namespace

std::vector<CheckResult> run_verification(const VerifyOptions &options) {
  const std::vector<Check> checks = {
      step_count_jumps,
      step_count_lipschitz,
      step_count_monte_carlo,
      unitarity,
      determinant,
      real_trace,
      trace_is_discriminant,
      relative_reflection,
      magnetic_reduction,
      ids_monotone,
      [](const VerifyOptions &o) { return symmetry(o, false); },
      [](const VerifyOptions &o) { return symmetry(o, true); },
      chain_splitting,
      self_averaging,
      projection_agreement,
      jumps_live_in_loop_part,
      loop_ids_steps,
      magnetic_jump_subset,
      periodic_gaps,
      thread_independence,
  };
  std::vector<CheckResult> rows;
  for (const auto &check : checks) {
    try {
      rows.push_back(check(options));
    } catch (const std::exception &ex) {
      rows.push_back({"(check aborted)", false, ex.what()});
    }
  }
  return rows;
}

bool print_table(std::ostream &out, const std::vector<CheckResult> &rows) {
  bool all = true;
  std::size_t width = 0;
  for (const auto &r : rows)
    width = std::max(width, r.name.size());
  for (const auto &r : rows) {
    out << (r.passed ? "PASS  " : "FAIL  ") << std::left << std::setw(static_cast<int>(width) + 2)
        << r.name << r.detail << '\n';
    all = all && r.passed;
  }
  out << (all ? "all checks passed" : "some checks failed") << '\n';
  return all;
}

} // namespace necklace
