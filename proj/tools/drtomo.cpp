#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "drtomo/hardness.hpp"
#include "drtomo/io.hpp"
#include "drtomo/oracle.hpp"
#include "drtomo/random.hpp"
#include "drtomo/solver.hpp"
#include "drtomo/switches.hpp"

using namespace drtomo;

namespace {

enum Exit : int {
  kOk = 0,
  kNegative = 1,
  kUsage = 2,
  kInfeasible = 3,
  kUnsupported = 4,
  kParse = 5,
  kFileIo = 6,
  kInvalid = 7,
  kBudget = 8,
};

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") std::cout << text;
  else write_file(out, text);
}

Instance load_instance(const std::string& path) { return parse_instance(read_file(path)); }
BinaryImage load_image(const std::string& path) { return read_image(read_file(path)); }
OneInThreeInstance load_sat(const std::string& path) { return parse_sat(read_file(path)); }

std::string format_tv(const TVValue& v) {
  std::ostringstream os;
  os << v.a << " + " << v.b << "*sqrt2 = " << std::fixed;
  os.precision(6);
  os << v.approx();
  return os.str();
}

struct Options {
  std::string in, img, sat, out, layout, assign;
  int m = 0, n = 0, k = 2, eps = 0;
  double density = 0.5, fraction = 0.0;
  std::uint64_t seed = 1;
  bool count = false;
  std::size_t limit = 0;
  std::uint64_t max_nodes = 0;
};

int cmd_solve(const Options& o) {
  const Instance inst = load_instance(o.in);
  if (inst.k != 2 || inst.epsilon != 0) {
    std::cerr << "solve handles k = 2, eps = 0 only (got k = " << inst.k << ", eps = " << inst.epsilon
              << "); use 'drtomo oracle' instead\n";
    return kUnsupported;
  }
  auto img = solve_dr(inst);
  if (!img) {
    std::cout << "INFEASIBLE\n";
    return kInfeasible;
  }
  emit(o.out, write_image(*img));
  return kOk;
}

int cmd_verify(const Options& o) {
  const auto report = verify_solution(load_instance(o.in), load_image(o.img));
  std::cout << report.to_string();
  return report.satisfied() ? kOk : kNegative;
}

int cmd_check_unique(const Options& o) {
  const Instance inst = load_instance(o.in);
  if (inst.k != 2 || inst.epsilon != 0) {
    std::cerr << "check-unique handles k = 2, eps = 0 only; use 'drtomo oracle --count --limit 2' instead\n";
    return kUnsupported;
  }
  auto unique = check_unique(inst);
  if (!unique) {
    std::cout << "INFEASIBLE\n";
    return kInfeasible;
  }
  std::cout << (*unique ? "UNIQUE\n" : "NON-UNIQUE\n");
  return *unique ? kOk : kNegative;
}

int cmd_gen_phantom(const Options& o) {
  if (o.m < 1 || o.n < 1) throw std::invalid_argument("phantom size must be positive");
  if (!(o.density >= 0.0 && o.density <= 1.0)) throw std::invalid_argument("density must lie in [0, 1]");
  Rng rng(o.seed);
  BinaryImage img(o.m, o.n);
  for (int q = 1; q <= o.n; ++q)
    for (int p = 1; p <= o.m; ++p) img.set(p, q, rng.bernoulli(o.density));
  emit(o.out, write_image(img));
  return kOk;
}

int cmd_degrade(const Options& o) {
  emit(o.out, write_gray(degrade(load_image(o.img), o.k)));
  return kOk;
}

int cmd_exact(const Options& o) {
  emit(o.out, write_instance(make_exact_instance(load_image(o.img), o.k)));
  return kOk;
}

int cmd_perturb(const Options& o) {
  Instance inst = load_instance(o.in);
  if (o.eps < 0) throw std::invalid_argument("eps must be non-negative");
  inst.epsilon = o.eps;
  emit(o.out, write_instance(perturb_instance(inst, o.fraction, o.seed)));
  return kOk;
}

int cmd_gen_sat(const Options& o) {
  const BoardSpec spec = build_board(load_sat(o.sat));
  if (o.eps >= 3) std::cerr << "warning: eps >= 3 lets unreliable blocks take any value\n";
  emit(o.out, write_instance(gen_sat_instance(spec, o.eps)));
  std::string layout = o.layout;
  if (layout.empty() && !o.out.empty() && o.out != "-") layout = o.out + ".layout.json";
  if (!layout.empty()) write_file(layout, layout_json(spec) + "\n");
  return kOk;
}

int cmd_embed(const Options& o) {
  const BoardSpec spec = build_board(load_sat(o.sat));
  const Instance inst = gen_sat_instance(spec, o.eps);
  auto img = embed_assignment(spec, inst, parse_assignment(o.assign));
  if (!img) {
    std::cout << "INFEASIBLE\n";
    return kInfeasible;
  }
  emit(o.out, write_image(*img));
  return kOk;
}

int cmd_extract(const Options& o) {
  const BoardSpec spec = build_board(load_sat(o.sat));
  std::cout << format_assignment(extract_assignment(spec, load_image(o.img))) << "\n";
  return kOk;
}

int cmd_lift(const Options& o) {
  emit(o.out, write_instance(lift_instance(load_instance(o.in), o.k)));
  return kOk;
}

int cmd_oracle(const Options& o) {
  const Instance inst = load_instance(o.in);
  SearchBudget budget;
  if (o.limit > 0) budget.max_solutions = o.limit;
  if (o.max_nodes > 0) budget.max_nodes = o.max_nodes;
  const OracleResult res = o.count ? oracle_count(inst, budget) : oracle_solve(inst, budget);
  const bool hit_limit = o.limit > 0 && res.count >= o.limit;
  if (o.count) {
    std::cout << res.count << "\n";
  } else {
    std::string text = std::to_string(res.count) + "\n";
    for (const auto& s : res.solutions) text += "\n" + write_image(s);
    emit(o.out, text);
  }
  if (!res.exhausted && !hit_limit) {
    std::cerr << "search budget exhausted after " << res.nodes << " nodes; count is a lower bound\n";
    return kBudget;
  }
  return res.count == 0 ? kInfeasible : kOk;
}

int cmd_tv_reduce(const Options& o) {
  const Instance inst = load_instance(o.in);
  const TVDescent d = tv_descend(inst, load_image(o.img));
  std::cout << "step 0: " << format_tv(d.trace.front()) << "\n";
  for (std::size_t i = 0; i < d.moves.size(); ++i)
    std::cout << "step " << i + 1 << ": " << format_tv(d.trace[i + 1]) << "  " << to_string(d.moves[i]) << "\n";
  write_file(o.out, write_image(d.image));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Binary image reconstruction from projections and block sums"};
  app.require_subcommand(1, 1);
  Options o;
  int (*handler)(const Options&) = nullptr;

  auto add = [&](const char* name, const char* help, int (*fn)(const Options&)) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->callback([&handler, fn] { handler = fn; });
    return sub;
  };

  auto* solve = add("solve", "reconstruct an exact k = 2 instance", cmd_solve);
  solve->add_option("instance", o.in, "instance file")->required();
  solve->add_option("-o,--output", o.out, "output PBM (default stdout)");

  auto* verify = add("verify", "check an image against an instance", cmd_verify);
  verify->add_option("instance", o.in)->required();
  verify->add_option("image", o.img)->required();

  auto* unique = add("check-unique", "decide whether a k = 2 instance has one solution", cmd_check_unique);
  unique->add_option("instance", o.in)->required();

  auto* phantom = add("gen-phantom", "random binary image", cmd_gen_phantom);
  phantom->add_option("-m,--width", o.m)->required();
  phantom->add_option("-n,--height", o.n)->required();
  phantom->add_option("--density", o.density);
  phantom->add_option("--seed", o.seed);
  phantom->add_option("-o,--output", o.out);

  auto* deg = add("degrade", "block-average an image into a PGM", cmd_degrade);
  deg->add_option("image", o.img)->required();
  deg->add_option("-k", o.k)->required();
  deg->add_option("-o,--output", o.out);

  auto* exact = add("exact", "instance with the exact sums of an image", cmd_exact);
  exact->add_option("image", o.img)->required();
  exact->add_option("-k", o.k);
  exact->add_option("-o,--output", o.out);

  auto* perturb = add("perturb", "make some blocks unreliable and shift their values", cmd_perturb);
  perturb->add_option("instance", o.in)->required();
  perturb->add_option("--eps", o.eps)->required();
  perturb->add_option("--fraction", o.fraction)->required();
  perturb->add_option("--seed", o.seed);
  perturb->add_option("-o,--output", o.out);

  auto* gensat = add("gen-sat", "board instance for an exactly-1-in-3 formula", cmd_gen_sat);
  gensat->add_option("formula", o.sat)->required();
  gensat->add_option("--eps", o.eps)->required();
  gensat->add_option("-o,--output", o.out);
  gensat->add_option("--layout", o.layout, "layout JSON (default OUTPUT.layout.json)");

  auto* embed = add("embed", "board solution for a truth assignment", cmd_embed);
  embed->add_option("formula", o.sat)->required();
  embed->add_option("--assign", o.assign)->required();
  embed->add_option("--eps", o.eps)->default_val(1);
  embed->add_option("-o,--output", o.out);

  auto* extract = add("extract", "truth assignment encoded in a board solution", cmd_extract);
  extract->add_option("formula", o.sat)->required();
  extract->add_option("image", o.img)->required();

  auto* lift = add("lift", "equivalent instance with larger blocks", cmd_lift);
  lift->add_option("instance", o.in)->required();
  lift->add_option("-k", o.k)->required();
  lift->add_option("-o,--output", o.out);

  auto* oracle = add("oracle", "exhaustive search for any k and eps", cmd_oracle);
  oracle->add_option("instance", o.in)->required();
  oracle->add_flag("--count", o.count, "print only the number of solutions");
  oracle->add_option("--limit", o.limit, "stop after this many solutions");
  oracle->add_option("--max-nodes", o.max_nodes, "search node cap");
  oracle->add_option("-o,--output", o.out);

  auto* tvr = add("tv-reduce", "lower the total variation of a solution by switches", cmd_tv_reduce);
  tvr->add_option("instance", o.in)->required();
  tvr->add_option("image", o.img)->required();
  tvr->add_option("-o,--output", o.out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    return handler(o);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kFileIo;
  } catch (const UnsupportedInstance& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kUnsupported;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
}
