#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kernelforge/core_model.hpp"
#include "kernelforge/generate.hpp"
#include "kernelforge/kernel_eds.hpp"
#include "kernelforge/kernel_graph.hpp"
#include "kernelforge/kernel_linear.hpp"
#include "kernelforge/logspace_kernel.hpp"
#include "kernelforge/oracles.hpp"
#include "kernelforge/patterns.hpp"
#include "kernelforge/stream.hpp"

namespace {

using namespace kf;

enum ExitCode : int { ok = 0, usage = 1, bad_input = 2, disagreement = 3, over_budget = 4 };

struct Failure {
  int code;
  std::string message;
};

constexpr Element kSetOracleLimit = 20;
constexpr Element kGraphOracleLimit = 12;

bool is_set_problem(const std::string& problem) { return problem == "hs" || problem == "sp"; }

ProblemKind kind_of(const std::string& problem) {
  return problem == "hs" ? ProblemKind::hitting_set : ProblemKind::set_packing;
}

Instance expect_sets(const AnyInstance& any, const std::string& problem, const std::string& path) {
  const auto* inst = std::get_if<Instance>(&any);
  if (!inst || inst->kind != kind_of(problem)) throw Failure{bad_input, path + ": not a " + problem + " instance"};
  return *inst;
}

GraphInstance expect_graph(const AnyInstance& any, const std::string& path) {
  const auto* g = std::get_if<GraphInstance>(&any);
  if (!g) throw Failure{bad_input, path + ": not a graph instance"};
  return *g;
}

AnyInstance load(const std::string& path) {
  try {
    return read_instance_file(path);
  } catch (const InputError& e) {
    throw Failure{bad_input, path + ": " + e.what()};
  }
}

PatternSet load_patterns(const std::string& spec) {
  try {
    return resolve_patterns(spec);
  } catch (const InputError& e) {
    throw Failure{bad_input, spec + ": " + e.what()};
  } catch (const std::invalid_argument& e) {
    throw Failure{usage, e.what()};
  }
}

Pattern single_pattern(const std::string& spec) {
  auto patterns = load_patterns(spec);
  if (patterns.size() != 1) throw Failure{usage, "hpack takes exactly one pattern"};
  return patterns.front();
}

struct KernelOptions {
  std::string problem;
  std::string mode = "logspace";
  std::string pattern = "k3";
  bool audit = false;
  bool sort = true;
};

struct KernelOutcome {
  AnyInstance kernel;
  std::size_t size_in = 0;
  std::size_t size_out = 0;
  std::string bound;
  std::string trace;
  bool no_instance = false;
};

std::string bound_text(std::uint64_t value) { return std::to_string(value); }

KernelOutcome kernelize_sets(const Instance& inst, const KernelOptions& options) {
  KernelOutcome out;
  out.size_in = inst.family.size();
  const bool packing = inst.kind == ProblemKind::set_packing;
  if (!packing) {
    out.bound = bound_text(saturating_pow(inst.k + 1, inst.d));
  } else {
    out.bound = inst.k == 0 ? "none" : bound_text(saturating_pow(ThresholdBase::set_packing(inst.d, inst.k).value, inst.d));
  }

  if (options.mode == "linear") {
    LinearOptions linear;
    linear.sort = options.sort;
    linear.audit = options.audit;
    LinearResult result;
    try {
      result = packing ? kernelize_sp_linear(inst, linear) : kernelize_hs_linear(inst, linear);
    } catch (const std::logic_error& e) {
      throw Failure{disagreement, std::string("audit failed: ") + e.what()};
    }
    out.kernel = result.kernel;
    out.size_out = result.kernel.family.size();
    out.trace = "reads=" + std::to_string(result.tape_reads) + " trie_visits=" + std::to_string(result.trie_visits) +
                " emitted=" + std::to_string(out.size_out);
    return out;
  }

  const auto budget = stream::budget_from_environment();
  LogspaceResult result = packing ? kernelize_sp_logspace(inst, budget) : kernelize_hs_logspace(inst, budget);
  if (options.audit && !(packing && inst.k == 0)) {
    ThresholdBase base = packing ? ThresholdBase::set_packing(inst.d, inst.k) : ThresholdBase::hitting_set(inst.k);
    for (std::uint32_t layer = 0; layer <= inst.d; ++layer) {
      if (!invariant_audit_with(inst, base, LayerId{layer})) {
        throw Failure{disagreement, "audit failed: superset bound violated at layer " + std::to_string(layer)};
      }
    }
  }
  out.kernel = result.kernel;
  out.size_out = result.kernel.family.size();
  out.trace = stream::format_report(result.report);
  return out;
}

KernelOutcome kernelize_graph(const GraphInstance& g, const KernelOptions& options) {
  if (options.mode != "logspace") throw Failure{usage, "linear mode unavailable for " + options.problem};
  const auto budget = stream::budget_from_environment();
  KernelOutcome out;
  out.size_in = g.edges.size();
  if (options.problem == "eds") {
    auto result = kernelize_eds(g, budget);
    out.kernel = result.kernel;
    out.size_out = result.kernel.edges.size();
    out.bound = bound_text(eds_edge_bound(g.k));
    out.trace = stream::format_report(result.report);
    out.no_instance = result.no_instance;
    return out;
  }
  OccurrenceKernelResult result;
  if (options.problem == "hfree") {
    auto patterns = load_patterns(options.pattern);
    result = kernelize_hfree_vd(g, patterns, budget);
    out.bound = bound_text(hfree_edge_bound(max_pattern_size(patterns), g.k));
  } else {
    auto pattern = single_pattern(options.pattern);
    result = kernelize_hpack(g, pattern, budget);
    out.bound = g.k == 0 ? "none" : bound_text(hpack_edge_bound(pattern.v, g.k));
  }
  out.kernel = result.kernel;
  out.size_out = result.kernel.edges.size();
  out.trace = stream::format_report(result.report);
  return out;
}

KernelOutcome run_kernel(const AnyInstance& any, const std::string& path, const KernelOptions& options) {
  if (is_set_problem(options.problem)) return kernelize_sets(expect_sets(any, options.problem, path), options);
  return kernelize_graph(expect_graph(any, path), options);
}

struct Answer {
  bool yes = false;
  std::string text;
};

Answer minimum_answer(std::uint64_t value, std::uint64_t k) {
  if (value <= k) return {true, "≤" + std::to_string(value)};
  return {false, ">" + std::to_string(k)};
}

Answer maximum_answer(std::uint64_t value, std::uint64_t k) {
  if (value >= k) return {true, "≥" + std::to_string(k)};
  return {false, "=" + std::to_string(value)};
}

void guard_size(Element n, Element limit) {
  if (n > limit) {
    throw Failure{bad_input, "instance too large for the oracles (n=" + std::to_string(n) +
                                 ", limit " + std::to_string(limit) + ")"};
  }
}

Answer oracle_answer(const AnyInstance& any, const std::string& problem, const std::string& pattern,
                     const std::string& path) {
  if (is_set_problem(problem)) {
    Instance inst = expect_sets(any, problem, path);
    guard_size(inst.n, kSetOracleLimit);
    if (inst.kind == ProblemKind::hitting_set) return minimum_answer(min_hitting_set_size(inst.family, inst.k), inst.k);
    return maximum_answer(max_packing_size(inst.family, inst.k), inst.k);
  }
  GraphInstance g = expect_graph(any, path);
  guard_size(g.n, kGraphOracleLimit);
  if (problem == "eds") return minimum_answer(min_eds_size(g, g.k), g.k);
  if (problem == "hfree") return minimum_answer(min_hfree_deletion(g, load_patterns(pattern), g.k), g.k);
  return maximum_answer(max_pattern_packing(g, single_pattern(pattern), g.k), g.k);
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Failure{bad_input, "cannot write " + path};
  out << text;
}

int cmd_kernelize(const KernelOptions& options, const std::string& input, const std::string& output, bool trace) {
  if (!is_set_problem(options.problem) && options.mode != "logspace") {
    throw Failure{usage, "linear mode unavailable for " + options.problem};
  }
  AnyInstance any = load(input);
  KernelOutcome outcome;
  try {
    outcome = run_kernel(any, input, options);
  } catch (const stream::BudgetExceeded& e) {
    throw Failure{over_budget, e.what()};
  }
  write_output(output, serialize_instance(outcome.kernel));
  std::ostream& log = output.empty() || output == "-" ? std::cerr : std::cout;
  log << "sets_in=" << outcome.size_in << " sets_out=" << outcome.size_out << " bound=" << outcome.bound << '\n';
  if (outcome.no_instance) log << "no-instance\n";
  if (trace) log << outcome.trace << '\n';
  return ok;
}

std::string verify_line(const std::string& problem, const Answer& in, const Answer& kernel) {
  return problem + ": in" + in.text + " kernel" + kernel.text;
}

int cmd_verify(const KernelOptions& options, const std::string& input, const std::string& kernel) {
  Answer in = oracle_answer(load(input), options.problem, options.pattern, input);
  Answer out = oracle_answer(load(kernel), options.problem, options.pattern, kernel);
  std::cout << verify_line(options.problem, in, out) << '\n';
  if (in.yes != out.yes) {
    std::cout << "disagreement\n";
    return disagreement;
  }
  return ok;
}

std::string problem_for(const AnyInstance& any, const std::string& requested) {
  if (const auto* inst = std::get_if<Instance>(&any)) return inst->kind == ProblemKind::hitting_set ? "hs" : "sp";
  if (requested.empty() || is_set_problem(requested)) throw Failure{usage, "graph files need --problem eds|hfree|hpack"};
  return requested;
}

struct CorpusResult {
  std::string line;
  int code = ok;
};

CorpusResult verify_corpus_file(const std::filesystem::path& file, KernelOptions options) {
  const std::string path = file.string();
  try {
    AnyInstance any = load(path);
    options.problem = problem_for(any, options.problem);
    KernelOutcome outcome = run_kernel(any, path, options);
    Answer in = oracle_answer(any, options.problem, options.pattern, path);
    Answer out = oracle_answer(outcome.kernel, options.problem, options.pattern, path);
    const bool agree = in.yes == out.yes;
    return {file.filename().string() + ": " + verify_line(options.problem, in, out) + (agree ? " ok" : " DISAGREE"),
            agree ? ok : disagreement};
  } catch (const Failure& f) {
    return {file.filename().string() + ": error: " + f.message, f.code};
  } catch (const stream::BudgetExceeded& e) {
    return {file.filename().string() + ": error: " + e.what(), over_budget};
  }
}

int cmd_verify_corpus(const KernelOptions& options, const std::string& dir) {
  std::error_code error;
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir, error)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  if (error) throw Failure{bad_input, "cannot list " + dir + ": " + error.message()};
  std::sort(files.begin(), files.end());

  std::vector<std::future<CorpusResult>> pending;
  for (const auto& file : files) {
    pending.push_back(std::async(std::launch::async, verify_corpus_file, file, options));
  }
  int code = ok;
  std::size_t disagreements = 0;
  for (auto& future : pending) {
    CorpusResult result = future.get();
    std::cout << result.line << '\n';
    if (result.code == disagreement) ++disagreements;
    code = std::max(code, result.code);
  }
  std::cout << "corpus: " << files.size() << " files, " << disagreements << " disagreements\n";
  return code;
}

int cmd_solve(const std::string& problem, const std::string& input, std::uint64_t cap, const std::string& pattern) {
  AnyInstance any = load(input);
  if (problem == "hs" || problem == "eds" || problem == "hfree") {
    std::uint64_t value = 0;
    if (problem == "hs") value = min_hitting_set_size(expect_sets(any, problem, input).family, cap);
    if (problem == "eds") value = min_eds_size(expect_graph(any, input), cap);
    if (problem == "hfree") value = min_hfree_deletion(expect_graph(any, input), load_patterns(pattern), cap);
    std::cout << (value > cap ? ">" + std::to_string(cap) : std::to_string(value)) << '\n';
    return ok;
  }
  std::uint64_t value = problem == "sp" ? max_packing_size(expect_sets(any, problem, input).family, cap)
                                        : max_pattern_packing(expect_graph(any, input), single_pattern(pattern), cap);
  std::cout << (value >= cap ? "≥" + std::to_string(cap) : std::to_string(value)) << '\n';
  return ok;
}

int cmd_gen(const std::string& kind, const SetGenParams& params, std::uint64_t seed, const std::string& output) {
  AnyInstance generated;
  try {
    if (kind == "graph") {
      generated = gen_random_graph(params.n, params.m, params.k, seed);
    } else {
      generated = gen_random_sets(kind_of(kind), params, seed);
    }
  } catch (const std::invalid_argument& e) {
    throw Failure{bad_input, e.what()};
  }
  write_output(output, serialize_instance(generated));
  return ok;
}

int cmd_stats(const std::string& input) {
  AnyInstance any = load(input);
  std::map<std::size_t, std::size_t> histogram;
  if (const auto* inst = std::get_if<Instance>(&any)) {
    std::cout << "kind=" << to_string(inst->kind) << " n=" << inst->n << " m=" << inst->family.size()
              << " d=" << inst->d << " k=" << inst->k << '\n';
    for (const auto& set : inst->family) ++histogram[set.size()];
    for (std::size_t size = 1; size <= inst->d; ++size) std::cout << "size " << size << ": " << histogram[size] << '\n';
    return ok;
  }
  const auto& g = std::get<GraphInstance>(any);
  std::cout << "kind=gr n=" << g.n << " m=" << g.edges.size() << " k=" << g.k << '\n';
  std::vector<std::size_t> degree(g.n + 1, 0);
  for (const auto& e : g.edges) {
    ++degree[e.u];
    ++degree[e.v];
  }
  for (Element v = 1; v <= g.n; ++v) ++histogram[degree[v]];
  for (const auto& [d, count] : histogram) std::cout << "degree " << d << ": " << count << '\n';
  return ok;
}

int cmd_flower(const std::string& input, std::uint64_t l, std::optional<std::uint32_t> d) {
  AnyInstance any = load(input);
  const auto* inst = std::get_if<Instance>(&any);
  if (!inst) throw Failure{bad_input, input + ": flower search needs a set family"};
  const std::uint32_t width = d.value_or(inst->d);
  FlowerWitness witness;
  try {
    witness = find_flower(inst->family, l, width);
  } catch (const std::invalid_argument& e) {
    if (std::string(e.what()) == "family too small") {
      std::cout << "none guaranteed\n";
      return ok;
    }
    throw Failure{bad_input, e.what()};
  }
  std::cout << "core:";
  for (Element e : witness.core) std::cout << ' ' << e;
  if (witness.core.empty()) std::cout << " (empty)";
  std::cout << '\n';
  const bool member = contains_set(inst->family, witness.core);
  const bool flower = is_flower(inst->family, witness.core, l);
  std::cout << "members=" << witness.member_indices.size() << " blocking=" << witness.blocking_number
            << (flower ? " flower" : " core-in-family") << '\n';
  return flower || member ? ok : disagreement;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kernelforge: kernels for hitting set, set packing and graph problems"};
  app.require_subcommand(1, 1);

  const std::vector<std::string> problems{"hs", "sp", "eds", "hfree", "hpack"};
  KernelOptions options;
  std::string input, output, kernel, corpus;
  bool trace = false;
  bool no_sort = false;

  auto* kernelize = app.add_subcommand("kernelize", "Shrink an instance to an equivalent kernel");
  kernelize->add_option("--problem", options.problem)->required()->check(CLI::IsMember(problems));
  kernelize->add_option("--mode", options.mode)->check(CLI::IsMember({"logspace", "linear"}));
  kernelize->add_option("--input", input)->required();
  kernelize->add_option("--output", output)->required();
  kernelize->add_option("--pattern", options.pattern, "k3, p3 or @file");
  kernelize->add_flag("--trace", trace, "Print the run report");
  kernelize->add_flag("--audit", options.audit, "Re-check the kernel invariants");
  kernelize->add_flag("--no-sort", no_sort, "Linear mode: keep input order");

  auto* verify = app.add_subcommand("verify", "Compare oracle answers on an instance and its kernel");
  verify->add_option("--problem", options.problem)->check(CLI::IsMember(problems));
  verify->add_option("--mode", options.mode)->check(CLI::IsMember({"logspace", "linear"}));
  verify->add_option("--input", input);
  verify->add_option("--kernel", kernel);
  verify->add_option("--corpus", corpus, "Kernelize and check every file in a directory");
  verify->add_option("--pattern", options.pattern, "k3, p3 or @file");

  std::uint64_t cap = 0;
  auto* solve = app.add_subcommand("solve", "Print the optimum, truncated at --cap");
  solve->add_option("--problem", options.problem)->required()->check(CLI::IsMember(problems));
  solve->add_option("--input", input)->required();
  solve->add_option("--cap", cap)->required();
  solve->add_option("--pattern", options.pattern, "k3, p3 or @file");

  std::string kind = "hs";
  SetGenParams params;
  params.d = 2;
  params.n = 10;
  params.m = 10;
  std::uint64_t seed = 1;
  auto* gen = app.add_subcommand("gen", "Generate a seeded random instance");
  gen->add_option("--kind", kind)->check(CLI::IsMember({"hs", "sp", "graph"}));
  gen->add_option("--d", params.d);
  gen->add_option("--n", params.n);
  gen->add_option("--m", params.m);
  gen->add_option("--k", params.k);
  gen->add_option("--seed", seed);
  gen->add_flag("--dedup", params.dedup, "Draw distinct sets");
  gen->add_option("--output", output);

  auto* stats = app.add_subcommand("stats", "Print instance statistics");
  stats->add_option("--input", input)->required();

  std::uint64_t l = 2;
  std::optional<std::uint32_t> flower_d;
  auto* flower = app.add_subcommand("flower", "Find a flower core");
  flower->add_option("--input", input)->required();
  flower->add_option("--l", l)->required();
  flower->add_option("--d", flower_d);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? ok : usage;
  }
  options.sort = !no_sort;

  try {
    if (kernelize->parsed()) return cmd_kernelize(options, input, output, trace);
    if (verify->parsed()) {
      if (!corpus.empty()) return cmd_verify_corpus(options, corpus);
      if (options.problem.empty() || input.empty() || kernel.empty()) {
        throw Failure{usage, "verify needs --problem, --input and --kernel, or --corpus"};
      }
      return cmd_verify(options, input, kernel);
    }
    if (solve->parsed()) return cmd_solve(options.problem, input, cap, options.pattern);
    if (gen->parsed()) return cmd_gen(kind, params, seed, output);
    if (stats->parsed()) return cmd_stats(input);
    if (flower->parsed()) return cmd_flower(input, l, flower_d);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    return f.code;
  } catch (const stream::BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return over_budget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return usage;
  }
  return usage;
}
