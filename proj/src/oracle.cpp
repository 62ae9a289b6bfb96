#include "nsw/oracle.hpp"

#include <gmpxx.h>

#include <cstdlib>
#include <limits>
#include <string>

namespace nsw {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

// C(a, b), saturating.
std::uint64_t binomial(std::uint64_t a, std::uint64_t b) {
  mpz_class c;
  mpz_bin_uiui(c.get_mpz_t(), a, b);
  if (mpz_sizeinbase(c.get_mpz_t(), 2) > 64) return kSaturated;
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, c.get_mpz_t());
  return out;
}

class Search {
 public:
  explicit Search(const Instance& inst) : inst_(inst), val_(inst) {
    const int n = inst.agents();
    mult_.assign(n, std::vector<int>(inst.goods(), 0));
    utility_.assign(n, Rat(0));
  }

  OracleResult run() {
    recurse_good(0);
    return std::move(result_);
  }

 private:
  void recurse_good(int j) {
    if (j == inst_.goods()) {
      evaluate();
      return;
    }
    distribute(j, 0, inst_.copies[j]);
  }

  // Chooses how many of the remaining copies of good j agent i receives.
  void distribute(int j, int i, int remaining) {
    const int n = inst_.agents();
    if (i == n - 1) {
      assign(i, j, remaining);
      recurse_good(j + 1);
      unassign(i, j, remaining);
      return;
    }
    for (int c = remaining; c >= 0; --c) {
      assign(i, j, c);
      distribute(j, i + 1, remaining - c);
      unassign(i, j, c);
    }
  }

  void assign(int i, int j, int c) {
    mult_[i][j] = c;
    if (c > 0) utility_[i] += val_.prefix(i, j, c);
  }

  void unassign(int i, int j, int c) {
    if (c > 0) utility_[i] -= val_.prefix(i, j, c);
    mult_[i][j] = 0;
  }

  void evaluate() {
    ++result_.states;
    Rat product(1);
    for (int i = 0; i < inst_.agents(); ++i) {
      const Rat& u = utility_[i];
      if (inst_.caps[i] && *inst_.caps[i] < u) {
        product *= *inst_.caps[i];
      } else {
        product *= u;
      }
    }
    if (result_.optimum_count == 0 || product > result_.best_nth_power) {
      result_.best_nth_power = std::move(product);
      result_.best = mult_;
      result_.optimum_count = 1;
    } else if (product == result_.best_nth_power) {
      ++result_.optimum_count;
    }
  }

  const Instance& inst_;
  Valuation val_;
  Allocation mult_;
  std::vector<Rat> utility_;
  OracleResult result_;
};

}  // namespace

std::uint64_t oracle_state_space(const Instance& inst) {
  const std::uint64_t n = static_cast<std::uint64_t>(inst.agents());
  std::uint64_t total = 1;
  for (int k : inst.copies) total = saturating_mul(total, binomial(static_cast<std::uint64_t>(k) + n - 1, n - 1));
  return total;
}

std::uint64_t oracle_state_limit() {
  if (const char* env = std::getenv("NSW_MAX_ORACLE_STATES")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return kDefaultOracleStates;
}

OracleResult brute_force_opt(const Instance& inst, std::optional<std::uint64_t> max_states) {
  const std::uint64_t limit = max_states.value_or(oracle_state_limit());
  const std::uint64_t states = oracle_state_space(inst);
  if (states > limit) {
    const std::string size = states == kSaturated ? "more than " + std::to_string(kSaturated) : std::to_string(states);
    throw OracleRefused("oracle refused: state space has " + size + " allocations, limit is " + std::to_string(limit),
                        states);
  }
  return Search(inst).run();
}

Ef1Verdict is_utility_ef1(const Instance& inst, const Allocation& x) {
  const Valuation val(inst);
  const int n = inst.agents();
  for (int i = 0; i < n; ++i) {
    const Rat own = val.bundle_utility(i, x[i]);
    for (int k = 0; k < n; ++k) {
      if (k == i) continue;
      Rat best_drop(0);
      bool nonempty = false;
      for (int j = 0; j < inst.goods(); ++j) {
        if (x[k][j] < 1) continue;
        nonempty = true;
        best_drop = std::max(best_drop, val.marginal(i, j, x[k][j]));
      }
      if (!nonempty) continue;
      if (val.bundle_utility(i, x[k]) - best_drop > own) return {false, EnvyWitness{i, k}};
    }
  }
  return {};
}

}  // namespace nsw
