// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "nsw/certify.hpp"
#include "nsw/json_io.hpp"
#include "nsw/oracle.hpp"
#include "support.hpp"

using namespace nsw;
using nsw::testing::InvariantChecker;
using nsw::testing::R;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool ok = true;
  std::ostringstream detail;
  std::vector<std::string> problems;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (problems.size() < 5) problems.push_back(what);
    }
  }
};

int failures = 0;

void report(int id, const std::string& name, Outcome& o) {
  std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << id << " (" << name << "): " << o.detail.str();
  for (const auto& p : o.problems) std::cout << " | " << p;
  std::cout << std::endl;
  if (!o.ok) ++failures;
}

// Every solver input seen by criteria 1-10, replayed by criterion 11.
std::vector<std::pair<Instance, Rat>> solved;

SolverOutput solve_logged(const Instance& inst, const Rat& eps, const SolveOptions& opts = {}) {
  solved.emplace_back(inst, eps);
  return solve(inst, eps, opts);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", v);
  return buf;
}

void criterion1() {
  Outcome o;
  const auto start = Clock::now();
  const Instance inst = gen_lower_bound(3, 1, 666);
  const SolverOutput out = solve_logged(inst, R("1/4"));
  const Rat alg = nsw_nth_power(inst, out.state.allocation());
  const Rat opt = brute_force_opt(inst).best_nth_power;
  const double elapsed = seconds_since(start);
  const double ratio = nth_root(opt / alg, 3);
  const double expected = std::pow(666.0 / 667.0, 2.0 / 3.0) * std::cbrt(3.0);
  o.require(ratio >= 1.440, "ratio below 1.440");
  o.require(std::abs(ratio - expected) <= 1e-9, "ratio differs from (666/667)^(2/3) 3^(1/3)");
  o.require(elapsed < 1.0, "runtime not below 1 s");
  o.detail << "OPT/ALG = " << fmt(ratio) << ", expected " << fmt(expected) << ", " << fmt(elapsed) << " s";
  report(1, "lower-bound reproduction", o);
}

void criterion2() {
  Outcome o;
  const double expected[] = {1.44467, 1.44997, 1.45523, 1.46046, 1.46566};
  for (int t = 0; t < 5; ++t) {
    const double got = theoretical_factor(0.01 * t);
    o.require(std::abs(got - expected[t]) <= 5e-6, "gamma " + std::to_string(0.01 * t) + " gives " + fmt(got));
    char buf[16];
    std::snprintf(buf, sizeof buf, "%.5f", got);
    o.detail << (t ? ", " : "") << buf;
  }
  report(2, "factor table", o);
}

void criterion3() {
  Outcome o;
  const Rat eps = R("1/100");
  const Rat sv = envy_example_value(eps);
  const Instance mc = gen_multicopy_envy(eps);
  const Instance ce = gen_capped_envy(eps);
  const OracleResult a = brute_force_opt(mc);
  const OracleResult b = brute_force_opt(ce);
  o.require(a.best_nth_power == Rat(10) * sv * sv, "multicopy optimum is not 10 s^2");
  o.require(b.best_nth_power == Rat(3) * sv * sv, "capped optimum is not 3 s^2");
  o.require(!is_utility_ef1(mc, a.best).ok, "multicopy optimum is EF1");
  o.require(!is_utility_ef1(ce, b.best).ok, "capped optimum is EF1");
  solve_logged(mc, eps);
  solve_logged(ce, eps);
  o.detail << "OPT^2 = " << (a.best_nth_power / (sv * sv)).str() << " s^2 and " << (b.best_nth_power / (sv * sv)).str()
           << " s^2, both optima fail EF1";
  report(3, "worked counterexamples", o);
}

void criterion4() {
  Outcome o;
  const Rat eps = R("1/100");
  const Rat r = Rat(1) + eps;
  const Rat sv = envy_example_value(eps);
  std::vector<PriceStep> steps;
  SolveOptions opts;
  opts.observer = [&](const SolverEvent& ev) {
    if (ev.price) steps.push_back(*ev.price);
  };
  const SolverOutput out = solve_logged(gen_multicopy_envy(eps), eps, opts);
  o.require(steps.size() == 1 && out.price_increases == 1, "expected exactly one price increase");
  if (!steps.empty()) {
    const PriceStep& p = steps.front();
    o.require(p.beta1 == ExtRat(sv), "beta1 != s");
    o.require(p.beta2.is_infinite(), "beta2 is finite");
    o.require(p.beta3 == ExtRat(Rat(2) / (r * r)), "beta3 != 2/r^2");
    o.require(p.beta4 == ExtRat(pow(r, 93)), "beta4 != r^93");
    o.require(p.beta4 >= p.beta3, "beta4 below beta3");
    o.require(p.terminated, "step did not terminate");
    o.detail << "beta1 = s, beta2 = " << p.beta2.str() << ", beta3 = " << p.beta3.str() << ", beta4 = r^93";
  }
  o.require(out.state.mbb(0) == r * r / Rat(2), "alpha_1 != r^2/2");
  o.require(is_eps_p_ef1(out.state, Rat(4) * eps).ok, "final state is not 4eps-p-EF1");
  o.detail << ", alpha_1 = " << out.state.mbb(0).str();
  report(4, "multicopy solver trace", o);
}

// Criteria 5, 6 and 7 share the same runs.
void criteria5to7() {
  Outcome o5;
  Outcome o6;
  Outcome o7;
  const Rat eps = R("1/4");
  const double cap = 1.25 * theoretical_factor(1.0);
  const auto start = Clock::now();
  int runs = 0;
  double worst_ratio = 0.0;
  double worst_individual = 0.0;
  std::int64_t events = 0;
  std::int64_t swaps = 0;
  std::int64_t prices = 0;
  for (std::uint64_t seed = 1; runs < 600; ++seed) {
    SplitMix64 rng(seed * 7919);
    const int n = static_cast<int>(rng.uniform(1, 3));
    const int m = static_cast<int>(rng.uniform(1, 4));
    const int copies = static_cast<int>(rng.uniform(1, 3));
    const CapMode caps = rng.uniform(0, 1) ? CapMode::Random : CapMode::None;
    const Instance inst = gen_random(n, m, copies, 8, caps, seed);
    if (inst.total_items() > 7) continue;
    ++runs;
    const std::string tag = "seed " + std::to_string(seed);

    InvariantChecker checker;
    SolverOutput out = solve_logged(inst, eps, checker.options());
    checker.finish(out);
    events += checker.events();
    swaps += checker.swap_events();
    prices += checker.price_events();
    for (const auto& f : checker.failures()) o6.require(false, tag + ": " + f);

    const Instance& rv = out.state.instance().values;
    const Certificate cert = certify(out);
    const Rat opt_rounded = brute_force_opt(rv).best_nth_power;
    o5.require(cert.alg_nsw_nth_power <= opt_rounded, tag + ": ALG above OPT");
    o5.require(opt_rounded <= cert.upper_bound_nth_power, tag + ": OPT above the auxiliary bound");

    // Approximation factor on the original utilities.
    const Rat opt = brute_force_opt(inst).best_nth_power;
    const Rat alg = nsw_nth_power(inst, out.state.allocation());
    double ratio = 1.0;
    if (alg.is_zero()) {
      o5.require(opt.is_zero(), tag + ": ALG is zero but OPT is not");
    } else {
      ratio = nth_root(opt / alg, n);
    }
    worst_ratio = std::max(worst_ratio, ratio);
    o5.require(ratio <= cap + 1e-9, tag + ": OPT/ALG = " + fmt(ratio) + " above the cap");

    const ExtRat ind = cert.individual.worst_ratio;
    o7.require(ind <= ExtRat(Rat(2) + Rat(4) * eps), tag + ": individual ratio " + ind.str());
    if (!ind.is_infinite()) worst_individual = std::max(worst_individual, ind.value().to_double());
  }
  const double elapsed = seconds_since(start);
  o5.require(elapsed < 120.0, "runtime not below 2 min");
  o5.detail << runs << " instances, worst OPT/ALG = " << fmt(worst_ratio) << " (cap " << fmt(cap) << "), "
            << fmt(elapsed) << " s";
  report(5, "sandwich suite", o5);

  o6.detail << runs << " runs, " << events << " events (" << swaps << " swap walks, " << prices
            << " price increases)";
  report(6, "invariant suite", o6);

  const Rat eps_mc = R("1/100");
  const Rat sv = envy_example_value(eps_mc);
  const SolverOutput mc = solve_logged(gen_multicopy_envy(eps_mc), eps_mc);
  const IndividualGuarantee g = individual_guarantee(mc.state);
  const Rat expected = (Rat(2) * sv + Rat(1)) / (Rat(2) * sv);
  o7.require(g.worst_ratio == ExtRat(expected), "multicopy ratio is not (2s+1)/(2s)");
  o7.require(g.worst_ratio > ExtRat(R("6/5")), "multicopy ratio not above 1.2");
  o7.detail << "worst over suite " << fmt(worst_individual) << " <= 3, multicopy ratio "
            << fmt(g.worst_ratio.is_infinite() ? HUGE_VAL : g.worst_ratio.value().to_double());
  report(7, "individual guarantee", o7);
}

void criterion8() {
  Outcome o;
  const Instance inst = nsw::testing::single_copy_instance({{3, 1, 1}, {3, 1, 1}});
  const AuxiliaryBound b = auxiliary_upper_bound(inst, {{1, 0, 0}, {0, 1, 1}}, {Rat(1), Rat(1)});
  o.require(b.bound_nth_power == Rat(6), "bound^2 != 6");
  o.require(b.bound_nth_power < Rat(8), "bound^2 not below 8");
  o.require(b.h == 1 && b.k == 0 && b.delta == Rat(2), "unexpected (h, k, delta)");
  o.detail << "bound^2 = " << b.bound_nth_power.str() << " (h = " << b.h << ", k = " << b.k
           << ", delta = " << b.delta.str() << ") < 8";
  report(8, "auxiliary bound example", o);
}

void criterion9() {
  Outcome o;
  const Rat eps = R("1/4");
  int runs = 0;
  for (std::uint64_t seed = 1; runs < 250; ++seed) {
    SplitMix64 rng(seed * 104729);
    const int n = static_cast<int>(rng.uniform(1, 3));
    const int m = static_cast<int>(rng.uniform(1, 6));
    const Instance inst = gen_random(n, m, 1, 8, CapMode::None, seed);
    ++runs;
    const std::string tag = "seed " + std::to_string(seed);
    const SolverOutput out = solve_logged(inst, eps);
    const Instance& rv = out.state.instance().values;
    const BmvBound base = bmv_bound(rv, out.state.mbbs());
    o.require(base.bound_nth_power >= brute_force_opt(rv).best_nth_power, tag + ": BMV bound below OPT");
    std::vector<int> order(m);
    for (int j = 0; j < m; ++j) order[j] = j;
    for (int t = 0; t < 10; ++t) {
      for (int j = m - 1; j > 0; --j) std::swap(order[j], order[rng.uniform(0, j)]);
      const BmvBound b = bmv_bound(rv, out.state.mbbs(), order);
      o.require(b.in_s == base.in_s && b.bound_nth_power == base.bound_nth_power,
                tag + ": fixpoint depends on the removal order");
    }
  }
  o.detail << runs << " instances, 10 removal orders each";
  report(9, "BMV consistency", o);
}

void criterion10() {
  Outcome o;
  const Rat eps = R("1/20");
  const Rat delta = R("1/2");
  const double factor = ((Rat(1) + Rat(4) * eps) / (Rat(1) - delta)).to_double();
  int runs = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 1; runs < 60; ++seed) {
    const int n = seed % 3 == 0 ? 3 : 2;
    const int m = n == 3 ? 8 : 5 + static_cast<int>(seed % 4);
    const Instance inst = gen_delta_large(n, m, delta, seed);
    ++runs;
    const std::string tag = "seed " + std::to_string(seed);
    const SolverOutput out = solve_logged(inst, eps);
    const Instance& rv = out.state.instance().values;
    const Rat opt = brute_force_opt(rv).best_nth_power;
    const Rat alg = nsw_nth_power(rv, out.state.allocation());
    if (alg.is_zero()) {
      o.require(false, tag + ": zero ALG");
      continue;
    }
    const double ratio = nth_root(opt / alg, n);
    worst = std::max(worst, ratio);
    o.require(ratio <= factor + 1e-9, tag + ": OPT/ALG = " + fmt(ratio));
    try {
      o.require(large_market_check(out.state, delta).ok, tag + ": social-welfare bound above the factor");
    } catch (const NotLargeMarket& e) {
      o.require(false, tag + ": " + e.what());
    }
  }
  o.detail << runs << " instances, worst OPT/ALG = " << fmt(worst) << " <= " << fmt(factor);
  report(10, "large markets", o);
}

void criterion11() {
  Outcome o;
  for (std::size_t t = 0; t < solved.size(); ++t) {
    const auto& [inst, eps] = solved[t];
    const std::string a = solver_output_to_json(solve(inst, eps)).dump();
    const std::string b = solver_output_to_json(solve(inst, eps)).dump();
    // Also through a serialized copy of the instance.
    const std::string c = solver_output_to_json(solve(parse_instance(instance_to_json(inst)), eps)).dump();
    o.require(a == b && a == c, "run " + std::to_string(t) + " differs between runs");
  }
  o.detail << solved.size() << " solver inputs replayed";
  report(11, "determinism", o);
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criteria5to7();
  criterion8();
  criterion9();
  criterion10();
  criterion11();
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
