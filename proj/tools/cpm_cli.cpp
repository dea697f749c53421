// cpm: solve, generate and verify min-cost perfect matching instances.
//
// Exit codes: 0 success, 1 usage or I/O error, 2 no perfect matching,
// 3 malformed input, 4 structural violation, 5 verification failed.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cpm/driver.hpp"
#include "cpm/errors.hpp"
#include "cpm/oracle.hpp"
#include "cpm/trace.hpp"

namespace {

enum Exit { kOk = 0, kUsage = 1, kNoMatching = 2, kParse = 3, kStructure = 4, kVerifyFailed = 5 };

struct SolveArgs {
  std::string input;
  std::string solver = "simplex";
  std::string trace;
  bool verify = false;
};

struct GenArgs {
  int n = 0;
  double density = 0.5;
  long cost_max = 100;
  std::uint64_t seed = 0;
  std::string family = "uniform";
  std::string out;
};

struct VerifyArgs {
  std::string instance;
  std::string trace;
};

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
  return static_cast<bool>(out);
}

int cmd_solve(const SolveArgs& a) {
  cpm::Graph g;
  try {
    g = cpm::read_instance_file(a.input);
  } catch (const cpm::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  }
  cpm::DriverOptions opts;
  opts.solver = cpm::parse_solver(a.solver);
  cpm::RunResult r;
  try {
    r = cpm::run(g, opts);
  } catch (const cpm::NoPerfectMatching& e) {
    std::cerr << "no perfect matching: " << e.what() << '\n';
    return kNoMatching;
  } catch (const cpm::StructureViolation& e) {
    std::cerr << "structure violation: " << e.what() << '\n';
    if (!a.trace.empty() && write_file(a.trace, e.context))
      std::cerr << "partial trace written to " << a.trace << '\n';
    else
      std::cerr << e.context;
    return kStructure;
  }

  for (cpm::EdgeId e : r.matching) {
    const auto& ed = g.edge(e);
    std::cout << "edge " << e + 1 << ' ' << ed.u + 1 << ' ' << ed.v + 1 << ' ' << ed.cost << '\n';
  }
  std::cout << "cost " << r.cost << '\n';
  std::cout << "perturbed_cost " << r.perturbed_cost << '\n';
  std::cout << "lp_solves " << r.lp_solves << '\n';

  const auto header = cpm::make_header(g, r.costs, opts.solver);
  if (!a.trace.empty()) {
    std::ofstream out(a.trace);
    cpm::write_trace(out, header, r.trace);
    if (!out) {
      std::cerr << "cannot write " << a.trace << '\n';
      return kUsage;
    }
  }
  if (a.verify) {
    const auto report = cpm::verify_trace(g, cpm::Trace{header, r.trace});
    std::cout << report.str();
    if (!report.ok()) return kVerifyFailed;
  }
  return kOk;
}

int cmd_gen(const GenArgs& a) {
  cpm::Graph g;
  if (a.family == "uniform")
    g = cpm::random_instance(a.n, a.density, 0, a.cost_max, a.seed);
  else
    g = cpm::nested_triangle_instance(a.n, a.density, a.seed);
  if (a.out.empty() || a.out == "-") {
    cpm::write_instance(std::cout, g);
    return kOk;
  }
  std::ofstream out(a.out);
  cpm::write_instance(out, g);
  if (!out) {
    std::cerr << "cannot write " << a.out << '\n';
    return kUsage;
  }
  return kOk;
}

int cmd_verify(const VerifyArgs& a) {
  try {
    const auto g = cpm::read_instance_file(a.instance);
    const auto trace = cpm::read_trace_file(a.trace);
    const auto report = cpm::verify_trace(g, trace);
    std::cout << report.str();
    return report.ok() ? kOk : kVerifyFailed;
  } catch (const cpm::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
  } catch (const cpm::SchemaMismatch& e) {
    std::cerr << "trace schema mismatch: " << e.what() << '\n';
  }
  return kParse;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cutting-plane minimum-cost perfect matching"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Solve an instance file");
  s->add_option("file", solve.input, "Instance in 'p edge' format")->required()->check(CLI::ExistingFile);
  s->add_option("--solver", solve.solver, "LP solver for each iteration")
      ->check(CLI::IsMember({"simplex", "combinatorial", "cross-check"}));
  s->add_option("--trace", solve.trace, "Write the JSON-lines trace here");
  s->add_flag("--verify", solve.verify, "Replay the invariant checks on the finished run");

  GenArgs gen;
  auto* gc = app.add_subcommand("gen", "Emit a random instance with a perfect matching");
  gc->add_option("--n", gen.n, "Node count (even)")->required();
  gc->add_option("--density", gen.density, "Edge probability")->check(CLI::Range(0.0, 1.0));
  gc->add_option("--cost-max", gen.cost_max, "Costs are drawn from [0, cost-max]")->check(CLI::NonNegativeNumber);
  gc->add_option("--seed", gen.seed, "Generator seed");
  gc->add_option("--family", gen.family, "uniform or nested")->check(CLI::IsMember({"uniform", "nested"}));
  gc->add_option("--out", gen.out, "Output path, '-' for stdout");

  VerifyArgs ver;
  auto* vc = app.add_subcommand("verify", "Check a recorded trace against its instance");
  vc->add_option("--instance", ver.instance)->required()->check(CLI::ExistingFile);
  vc->add_option("--trace", ver.trace)->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*s) return cmd_solve(solve);
    if (*gc) return cmd_gen(gen);
    return cmd_verify(ver);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}
