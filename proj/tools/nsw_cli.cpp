// nsw: solve, certify and benchmark Nash social welfare allocations.
//
// Exit codes: 0 ok, 2 input error, 3 internal error or iteration-cap abort,
// 4 certification failure.

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "nsw/certify.hpp"
#include "nsw/generators.hpp"
#include "nsw/instance.hpp"
#include "nsw/json_io.hpp"
#include "nsw/oracle.hpp"
#include "nsw/solver.hpp"

namespace fs = std::filesystem;
using namespace nsw;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;
constexpr int kExitCertification = 4;

// Input problems that have already been reported on stderr.
struct InvalidInstance {};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

Instance load_instance(const std::string& path) {
  Validation v = validate(parse_instance_text(read_file(path)));
  if (!v.ok()) {
    for (const auto& e : v.errors) std::cerr << "invalid instance: " << e << "\n";
    throw InvalidInstance{};
  }
  return std::move(*v.instance);
}

Rat parse_epsilon(const std::string& text) {
  Rat eps;
  try {
    eps = Rat::parse(text);
  } catch (const std::invalid_argument& e) {
    throw ParameterError("epsilon: " + std::string(e.what()));
  }
  check_epsilon(eps);
  return eps;
}

// Runs `body`, mapping exceptions to exit codes.
template <typename F>
int guarded(F&& body) {
  try {
    return body();
  } catch (const InvalidInstance&) {
    return kExitInput;
  } catch (const InputError& e) {
    std::cerr << e.what() << "\n";
    return kExitInput;
  } catch (const ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return kExitInput;
  } catch (const OracleRefused& e) {
    std::cerr << e.what() << "\n";
    return kExitInput;
  } catch (const IterationCapExceeded& e) {
    std::cerr << "aborted: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

std::string fmt(double v) {
  std::ostringstream ss;
  ss << std::setprecision(12) << v;
  return ss.str();
}

struct BenchRow {
  std::string id;
  std::string cells;  // everything after the id column
};

BenchRow bench_one(const fs::path& file, const Rat& eps, std::uint64_t oracle_limit) {
  BenchRow row{file.stem().string(), ""};
  std::ostringstream cells;
  try {
    Validation v = validate(parse_instance_text(read_file(file.string())));
    if (!v.ok()) throw InputError(v.errors.front());
    const Instance& inst = *v.instance;
    const int n = inst.agents();
    const auto start = std::chrono::steady_clock::now();
    const SolverOutput out = solve(inst, eps);
    const Certificate cert = certify(out);
    const double wall =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    std::string oracle_nsw;
    std::string ratio_opt;
    const Instance& rounded = out.state.instance().values;
    if (oracle_state_space(rounded) <= oracle_limit) {
      const OracleResult opt = brute_force_opt(rounded, oracle_limit);
      oracle_nsw = fmt(nth_root(opt.best_nth_power, n));
      if (cert.alg_nsw_nth_power.is_zero()) {
        ratio_opt = opt.best_nth_power.is_zero() ? "1" : "inf";
      } else {
        ratio_opt = fmt(nth_root(opt.best_nth_power / cert.alg_nsw_nth_power, n));
      }
    }
    cells << n << ',' << inst.goods() << ',' << inst.total_items() << ',' << eps.str() << ','
          << fmt(nth_root(cert.alg_nsw_nth_power, n)) << ',' << oracle_nsw << ','
          << fmt(nth_root(cert.upper_bound_nth_power, n)) << ',' << fmt(cert.ratio) << ',' << ratio_opt << ','
          << out.iterations << ',' << fmt(wall);
  } catch (const std::exception& e) {
    std::cerr << row.id << ": " << e.what() << "\n";
    cells << ",,," << eps.str() << ",,,,,,,";
  }
  row.cells = cells.str();
  return row;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximate Nash social welfare for multi-copy goods with utility caps"};
  app.require_subcommand(1);

  std::string input, output, solution, epsilon_text, dir, csv;

  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance");
  solve_cmd->add_option("--input", input, "Instance JSON file")->required();
  solve_cmd->add_option("--epsilon", epsilon_text, "Rational epsilon in (0, 1/4], e.g. 1/4")->required();
  solve_cmd->add_option("--output", output, "Output file (default stdout)");

  auto* certify_cmd = app.add_subcommand("certify", "Certify a solver output");
  certify_cmd->add_option("--input", input, "Instance JSON file")->required();
  certify_cmd->add_option("--solution", solution, "Solver output JSON file")->required();
  certify_cmd->add_option("--output", output, "Output file (default stdout)");

  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force optimum of a small instance");
  oracle_cmd->add_option("--input", input, "Instance JSON file")->required();
  oracle_cmd->add_option("--output", output, "Output file (default stdout)");

  auto* gen_cmd = app.add_subcommand("gen", "Generate an instance");
  gen_cmd->require_subcommand(1);
  gen_cmd->add_option("--output", output, "Output file (default stdout)");

  int lb_k = 3, lb_s = 1;
  long lb_big_k = 666;
  auto* gen_lb = gen_cmd->add_subcommand("lower-bound", "Identical agents, goods of value K and 1");
  gen_lb->add_option("--k", lb_k)->capture_default_str();
  gen_lb->add_option("--s", lb_s)->capture_default_str();
  gen_lb->add_option("--K", lb_big_k)->capture_default_str();

  std::string gen_eps = "1/100";
  auto* gen_mc = gen_cmd->add_subcommand("multicopy-envy", "Two agents, two multi-copy goods");
  gen_mc->add_option("--epsilon", gen_eps)->capture_default_str();
  auto* gen_ce = gen_cmd->add_subcommand("capped-envy", "Two agents, four goods, one capped agent");
  gen_ce->add_option("--epsilon", gen_eps)->capture_default_str();

  int g_n = 3, g_m = 3, g_copies = 2, g_util = 8;
  std::string g_caps = "none";
  std::uint64_t g_seed = 1;
  auto* gen_rand = gen_cmd->add_subcommand("random", "Seeded random instance");
  gen_rand->add_option("--n", g_n)->capture_default_str();
  gen_rand->add_option("--m", g_m)->capture_default_str();
  gen_rand->add_option("--max-copies", g_copies)->capture_default_str();
  gen_rand->add_option("--max-util", g_util)->capture_default_str();
  gen_rand->add_option("--caps", g_caps)->check(CLI::IsMember({"none", "random"}))->capture_default_str();
  gen_rand->add_option("--seed", g_seed)->capture_default_str();

  std::string g_delta = "1/2";
  int dl_util = 10;
  auto* gen_dl = gen_cmd->add_subcommand("delta-large", "Seeded delta-large market");
  gen_dl->add_option("--n", g_n)->capture_default_str();
  gen_dl->add_option("--m", g_m)->capture_default_str();
  gen_dl->add_option("--delta", g_delta)->capture_default_str();
  gen_dl->add_option("--max-util", dl_util)->capture_default_str();
  gen_dl->add_option("--seed", g_seed)->capture_default_str();

  unsigned threads = 1;
  std::uint64_t bench_oracle_limit = 1'000'000;
  auto* bench_cmd = app.add_subcommand("bench", "Solve and certify every instance in a directory");
  bench_cmd->add_option("--dir", dir, "Directory of instance JSON files")->required();
  bench_cmd->add_option("--epsilon", epsilon_text, "Rational epsilon")->required();
  bench_cmd->add_option("--csv", csv, "CSV output file")->required();
  bench_cmd->add_option("--threads", threads, "Worker threads")->capture_default_str();
  bench_cmd->add_option("--oracle-limit", bench_oracle_limit, "Run the oracle up to this many allocations")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  if (solve_cmd->parsed()) {
    return guarded([&] {
      const Instance inst = load_instance(input);
      const Rat eps = parse_epsilon(epsilon_text);
      write_output(output, dump(solver_output_to_json(solve(inst, eps))));
      return kExitOk;
    });
  }

  if (certify_cmd->parsed()) {
    return guarded([&] {
      const Instance inst = load_instance(input);
      const Solution sol = parse_solution_text(read_file(solution));
      const MarketState state = solution_state(inst, sol);
      const Certificate cert = certify(state);
      write_output(output, dump(certificate_to_json(cert)));
      return cert.passed() ? kExitOk : kExitCertification;
    });
  }

  if (oracle_cmd->parsed()) {
    return guarded([&] {
      const Instance inst = load_instance(input);
      write_output(output, dump(oracle_to_json(brute_force_opt(inst), inst.agents())));
      return kExitOk;
    });
  }

  if (gen_cmd->parsed()) {
    return guarded([&] {
      Instance inst;
      if (gen_lb->parsed()) {
        inst = gen_lower_bound(lb_k, lb_s, lb_big_k);
      } else if (gen_mc->parsed()) {
        inst = gen_multicopy_envy(parse_epsilon(gen_eps));
      } else if (gen_ce->parsed()) {
        inst = gen_capped_envy(parse_epsilon(gen_eps));
      } else if (gen_rand->parsed()) {
        inst = gen_random(g_n, g_m, g_copies, g_util, g_caps == "random" ? CapMode::Random : CapMode::None, g_seed);
      } else {
        Rat delta;
        try {
          delta = Rat::parse(g_delta);
        } catch (const std::invalid_argument& e) {
          throw ParameterError("delta: " + std::string(e.what()));
        }
        inst = gen_delta_large(g_n, g_m, delta, g_seed, dl_util);
      }
      write_output(output, dump(instance_to_json(inst)));
      return kExitOk;
    });
  }

  return guarded([&] {
    const Rat eps = parse_epsilon(epsilon_text);
    if (!fs::is_directory(dir)) throw InputError("not a directory: " + dir);
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<BenchRow> rows(files.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t t = next++; t < files.size(); t = next++) rows[t] = bench_one(files[t], eps, bench_oracle_limit);
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < std::max(1u, threads); ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    std::ostringstream out;
    out << "id,n,m,M,epsilon,alg_nsw,oracle_nsw,upper_bound,ratio_ub,ratio_opt,iterations,wall_ms\n";
    for (const auto& row : rows) out << row.id << ',' << row.cells << '\n';
    write_output(csv, out.str());
    return kExitOk;
  });
}
