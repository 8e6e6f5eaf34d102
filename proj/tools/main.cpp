// Command-line front end: transpose .tns files, print plans, verify
// orderings, generate tensors, and benchmark the sort strategies.

#include <CLI11.hpp>

#include <charconv>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "quesadilla/io.hpp"
#include "quesadilla/transpose.hpp"

using namespace quesadilla;

namespace {

std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::vector<std::uint32_t> parse_dims(const std::string& text) {
  std::vector<std::uint32_t> dims;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t x = text.find('x', start);
    const std::string tok =
        text.substr(start, x == std::string::npos ? x : x - start);
    std::uint32_t d = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), d);
    if (ec != std::errc{} || ptr != tok.data() + tok.size() || d == 0) {
      throw CLI::ValidationError("--dims", "expected AxBxC... of positive "
                                           "integers, got '" +
                                               text + "'");
    }
    dims.push_back(d);
    if (x == std::string::npos) break;
    start = x + 1;
  }
  return dims;
}

// Worker count for a subcommand: the --parallel flag wins (0 = auto), then
// the QUESADILLA_WORKERS environment variable, then serial.
unsigned resolve_workers(const std::optional<unsigned>& flag) {
  if (flag) return *flag == 0 ? ParallelConfig::default_workers() : *flag;
  if (std::getenv("QUESADILLA_WORKERS")) {
    return ParallelConfig::default_workers();
  }
  return 1;
}

ParallelConfig::Schedule parse_schedule(const std::string& name) {
  if (name == "dynamic") return ParallelConfig::Schedule::Dynamic;
  if (name == "guided") return ParallelConfig::Schedule::Guided;
  throw CLI::ValidationError("--schedule", "expected dynamic or guided");
}

std::string describe_step(std::size_t index, const PlanStep& step,
                          const Ordering& target) {
  std::string out = "  step " + std::to_string(index + 1) + ": ";
  if (step.bucketed()) {
    out += "bucketed sort on mode " + std::to_string(step.mode + 1) +
           ", keeping prefix (";
    for (Mode i = 0; i < step.prefix_len; ++i) {
      if (i) out += ",";
      out += std::to_string(target.at(i) + 1);
    }
    out += ")";
  } else {
    out += "non-bucketed sort on mode " + std::to_string(step.mode + 1);
  }
  return out;
}

void print_plan(const SortPlan& plan) {
  const PlanCost cost = plan_cost(plan);
  std::cout << "plan for target " << format_ordering(plan.target) << " (rank "
            << plan.target.rank() << ")\n";
  if (plan.steps.empty()) {
    std::cout << "  already sorted; no passes needed\n";
  }
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    std::cout << describe_step(i, plan.steps[i], plan.target) << "\n";
  }
  std::cout << "cost: total passes " << cost.total_passes << ", bucketed "
            << cost.bucketed_passes << "\n";

  // Machine-readable line: steps are prefix_len:mode pairs, modes 1-based.
  std::cout << "PLAN target=" << format_ordering(plan.target)
            << " total=" << cost.total_passes
            << " bucketed=" << cost.bucketed_passes << " steps=";
  if (plan.steps.empty()) {
    std::cout << "-";
  } else {
    for (std::size_t i = 0; i < plan.steps.size(); ++i) {
      if (i) std::cout << ",";
      std::cout << plan.steps[i].prefix_len << ":" << plan.steps[i].mode + 1;
    }
  }
  std::cout << "\n";
}

struct BenchArgs {
  std::string input;
  std::string name;
  std::vector<std::string> strategies{"all"};
  std::vector<std::string> targets{"all"};
  unsigned reps = 100;
  std::string reference = "top1";
  std::string csv;
  std::optional<unsigned> parallel;
  std::string schedule = "dynamic";
  bool no_canonicalize = false;
};

std::vector<SortStrategy> resolve_strategies(
    const std::vector<std::string>& names, Mode rank) {
  std::vector<SortStrategy> out;
  for (const std::string& name : names) {
    if (name == "all") {
      out.push_back(SortStrategy::quesadilla());
      for (Mode k = 1; k <= rank; ++k) out.push_back(SortStrategy::top_k(k));
      out.push_back(SortStrategy::full_radix());
      out.push_back(SortStrategy::comparison_sort());
    } else {
      out.push_back(parse_strategy(name));
    }
  }
  return out;
}

std::vector<Ordering> resolve_targets(const std::vector<std::string>& names,
                                      Mode rank) {
  std::vector<Ordering> out;
  for (const std::string& name : names) {
    if (name == "all") {
      auto every = all_orderings(rank);
      out.insert(out.end(), every.begin(), every.end());
    } else {
      Ordering ord = parse_ordering(name);
      if (ord.rank() != rank) {
        throw std::invalid_argument("target " + name + " has rank " +
                                    std::to_string(ord.rank()) +
                                    " but the tensor has rank " +
                                    std::to_string(rank));
      }
      out.push_back(std::move(ord));
    }
  }
  return out;
}

int run_bench(const BenchArgs& args) {
  ReadOptions ropts;
  ropts.canonicalize = !args.no_canonicalize;
  const CooTensor pristine = read_tns(args.input, ropts);
  const Mode rank = pristine.rank();

  const std::vector<SortStrategy> strategies =
      resolve_strategies(args.strategies, rank);
  const std::vector<Ordering> targets = resolve_targets(args.targets, rank);
  const SortStrategy reference = parse_strategy(args.reference);
  if (args.reps < 1) throw std::invalid_argument("--reps must be >= 1");

  TransposeOptions topts;
  topts.parallel.workers = resolve_workers(args.parallel);
  topts.parallel.bucket_schedule = parse_schedule(args.schedule);

  const std::string tensor_name =
      args.name.empty() ? std::filesystem::path(args.input).stem().string()
                        : args.name;

  std::ofstream file;
  if (!args.csv.empty()) {
    file.open(args.csv, std::ios::trunc);
    if (!file) {
      throw std::runtime_error("cannot open '" + args.csv + "' for writing");
    }
  }
  std::ostream& out = args.csv.empty() ? std::cout : file;

  out << "# timing covers the in-place sort only (planning included); "
         "file I/O and the per-repetition pristine copy are excluded\n";
  out << "tensor,target,strategy,reps,min_ns,normalized,passes,"
         "bucketed_passes\n";

  CooTensor scratch = pristine;
  Workspace ws;
  auto measure = [&](const Ordering& target, const SortStrategy& s) {
    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    for (unsigned rep = 0; rep < args.reps; ++rep) {
      scratch.coords = pristine.coords;
      scratch.values = pristine.values;
      const auto t0 = std::chrono::steady_clock::now();
      transpose_inplace(scratch, target, s, ws, topts);
      const auto t1 = std::chrono::steady_clock::now();
      best = std::min(
          best, static_cast<std::uint64_t>(
                    std::chrono::duration_cast<std::chrono::nanoseconds>(t1 -
                                                                         t0)
                        .count()));
    }
    return best;
  };

  for (const Ordering& target : targets) {
    std::map<std::string, std::uint64_t> times;
    for (const SortStrategy& s : strategies) {
      times.emplace(s.name(), measure(target, s));
    }
    if (!times.count(reference.name())) {
      times.emplace(reference.name(), measure(target, reference));
    }
    const double ref_ns = static_cast<double>(times.at(reference.name()));
    for (const SortStrategy& s : strategies) {
      const std::uint64_t ns = times.at(s.name());
      const PlanCost cost = strategy_pass_cost(s, target);
      out << tensor_name << "," << format_ordering(target) << "," << s.name()
          << "," << args.reps << "," << ns << ","
          << shortest(static_cast<double>(ns) / ref_ns) << ","
          << cost.total_passes << "," << cost.bucketed_passes << "\n";
    }
  }
  if (!args.csv.empty()) {
    std::cerr << "wrote " << targets.size() * strategies.size()
              << " records to " << args.csv << "\n";
  }
  return 0;
}

// Option validators; failures surface as usage errors (exit 2).
std::string check_strategy(const std::string& s) {
  try {
    parse_strategy(s);
    return {};
  } catch (const std::exception& e) {
    return e.what();
  }
}

std::string check_strategy_or_all(const std::string& s) {
  return s == "all" ? std::string{} : check_strategy(s);
}

std::string check_ordering(const std::string& s) {
  try {
    parse_ordering(s);
    return {};
  } catch (const std::exception& e) {
    return e.what();
  }
}

std::string check_ordering_or_all(const std::string& s) {
  return s == "all" ? std::string{} : check_ordering(s);
}

std::string check_dims(const std::string& s) {
  try {
    parse_dims(s);
    return {};
  } catch (const std::exception& e) {
    return e.what();
  }
}

int run_app(int argc, char** argv) {
  CLI::App app{"COO sparse tensor transposition via minimal histogram-sort "
               "passes"};
  app.require_subcommand(1);
  const auto schedule_names = CLI::IsMember({"dynamic", "guided"});

  auto* cmd_transpose = app.add_subcommand(
      "transpose", "Reorder a .tns tensor to a target mode ordering");
  std::string t_input, t_output, t_target, t_strategy = "quesadilla";
  std::string t_schedule = "dynamic";
  std::optional<unsigned> t_parallel;
  bool t_no_canon = false, t_verify = false;
  cmd_transpose->add_option("--input", t_input, ".tns file to read")
      ->required();
  cmd_transpose
      ->add_option("--target", t_target,
                   "target ordering, 1-based digits (e.g. 2134)")
      ->required()
      ->check(check_ordering);
  cmd_transpose->add_option("--output", t_output, ".tns file to write")
      ->required();
  cmd_transpose
      ->add_option("--strategy", t_strategy,
                   "quesadilla | top<K> | radix | comparison")
      ->check(check_strategy);
  cmd_transpose->add_option("--parallel", t_parallel,
                            "worker count (0 = hardware threads)");
  cmd_transpose
      ->add_option("--schedule", t_schedule,
                   "top-K bucket schedule: dynamic | guided")
      ->check(schedule_names);
  cmd_transpose->add_flag("--no-canonicalize", t_no_canon,
                          "trust the file to be sorted already");
  cmd_transpose->add_flag("--verify", t_verify,
                          "check the input is simply sorted before sorting");

  auto* cmd_plan =
      app.add_subcommand("plan", "Print the pass plan for a target ordering");
  std::string p_target;
  unsigned p_rank = 0;
  unsigned p_prefix = 0;
  cmd_plan->add_option("--target", p_target, "target ordering")
      ->required()
      ->check(check_ordering);
  cmd_plan->add_option("--rank", p_rank, "tensor rank (cross-check)");
  cmd_plan->add_option("--prefix", p_prefix,
                       "plan only the first K target modes");

  auto* cmd_verify = app.add_subcommand(
      "verify", "Exit 0 iff the file is sorted under the given ordering");
  std::string v_input, v_ordering;
  cmd_verify->add_option("--input", v_input, ".tns file")->required();
  cmd_verify->add_option("--ordering", v_ordering, "ordering to check")
      ->required()
      ->check(check_ordering);

  auto* cmd_gen =
      app.add_subcommand("gen", "Generate a reproducible random tensor");
  std::string g_dims, g_output;
  std::uint64_t g_seed = 0;
  std::size_t g_nnz = 0;
  bool g_distinct = false;
  cmd_gen->add_option("--dims", g_dims, "dimensions, e.g. 100x50x20")
      ->required()
      ->check(check_dims);
  cmd_gen->add_option("--nnz", g_nnz, "number of nonzeros")->required();
  cmd_gen->add_option("--seed", g_seed, "PRNG seed (std::mt19937_64)");
  cmd_gen->add_option("--output", g_output, ".tns file to write")->required();
  cmd_gen->add_flag("--distinct", g_distinct,
                    "resample until all coordinates are distinct");

  auto* cmd_bench = app.add_subcommand(
      "bench", "Time strategies over target orderings, CSV output");
  BenchArgs bench;
  cmd_bench->add_option("--input", bench.input, ".tns file")->required();
  cmd_bench->add_option("--name", bench.name,
                        "tensor name for the CSV (default: file stem)");
  cmd_bench
      ->add_option("--strategies", bench.strategies,
                   "strategy names or 'all'")
      ->check(check_strategy_or_all);
  cmd_bench
      ->add_option("--targets", bench.targets,
                   "target orderings or 'all'")
      ->check(check_ordering_or_all);
  cmd_bench->add_option("--reps", bench.reps,
                        "repetitions per measurement (min is reported)");
  cmd_bench
      ->add_option("--reference", bench.reference,
                   "strategy normalized times divide by")
      ->check(check_strategy);
  cmd_bench->add_option("--csv", bench.csv, "output file (default: stdout)");
  cmd_bench->add_option("--parallel", bench.parallel,
                        "worker count (0 = hardware threads)");
  cmd_bench
      ->add_option("--schedule", bench.schedule,
                   "top-K bucket schedule: dynamic | guided")
      ->check(schedule_names);
  cmd_bench->add_flag("--no-canonicalize", bench.no_canonicalize,
                      "trust the file to be sorted already");

  auto* cmd_passes = app.add_subcommand(
      "passes", "Distribution of pass counts over all targets of a rank");
  unsigned h_rank = 0;
  cmd_passes->add_option("--rank", h_rank, "tensor rank (2..6)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*cmd_transpose) {
      ReadOptions ropts;
      ropts.canonicalize = !t_no_canon;
      CooTensor tensor = read_tns(t_input, ropts);
      const Ordering target = parse_ordering(t_target);
      TransposeOptions opts;
      opts.verify_input = t_verify;
      opts.parallel.workers = resolve_workers(t_parallel);
      opts.parallel.bucket_schedule = parse_schedule(t_schedule);
      std::vector<PlanStep> log;
      opts.pass_log = &log;
      Workspace ws;
      transpose_inplace(tensor, target, parse_strategy(t_strategy), ws, opts);
      write_tns(tensor, t_output);
      int bucketed = 0;
      for (const PlanStep& s : log) bucketed += s.bucketed() ? 1 : 0;
      std::cout << "transposed " << t_input << " -> " << t_output
                << " (target " << t_target << ", passes=" << log.size()
                << ", bucketed=" << bucketed << ")\n";
    } else if (*cmd_plan) {
      const Ordering target = parse_ordering(p_target);
      if (cmd_plan->count("--rank") && p_rank != target.rank()) {
        throw std::invalid_argument("--rank disagrees with --target length");
      }
      if (cmd_plan->count("--prefix")) {
        print_plan(prefix_plan(target, static_cast<Mode>(p_prefix)));
      } else {
        print_plan(quesadilla_plan(target));
      }
    } else if (*cmd_verify) {
      ReadOptions ropts;
      ropts.canonicalize = false;
      const CooTensor tensor = read_tns(v_input, ropts);
      const Ordering ord = parse_ordering(v_ordering);
      if (is_sorted_under(tensor, ord)) {
        std::cout << "sorted under " << v_ordering << "\n";
        return 0;
      }
      std::cout << "not sorted under " << v_ordering << "\n";
      return 1;
    } else if (*cmd_gen) {
      GenSpec spec;
      spec.dims = parse_dims(g_dims);
      spec.nnz = g_nnz;
      spec.seed = g_seed;
      spec.duplicates = g_distinct ? GenSpec::Duplicates::Distinct
                                   : GenSpec::Duplicates::Allow;
      const CooTensor tensor = generate(spec);
      write_tns(tensor, g_output);
      std::cout << "generated " << g_dims << " tensor, nnz=" << tensor.nnz()
                << ", seed=" << g_seed << " -> " << g_output << "\n";
    } else if (*cmd_bench) {
      return run_bench(bench);
    } else if (*cmd_passes) {
      const auto hist = pass_histogram(static_cast<Mode>(h_rank));
      bool first = true;
      for (const auto& [passes, count] : hist) {
        if (!first) std::cout << " ";
        std::cout << passes << ":" << count;
        first = false;
      }
      std::cout << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_app(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
