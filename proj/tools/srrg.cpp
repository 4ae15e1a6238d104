// Command-line front end: plan runs, seed benchmarks and the SCC work ladder.
//
//   srrg run --env data/fig1_env.json --seed 3 --out result.json --plot run.svg
//   srrg bench --env data/case1_env.json --seeds 20
//   srrg scc-ladder

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "srrg/json_io.hpp"
#include "srrg/svg.hpp"

namespace {

using namespace srrg;

constexpr int kPlanFound = 0;
constexpr int kInputError = 1;
constexpr int kNoPlan = 2;
constexpr int kInvalidPlan = 3;

struct Common {
  std::string env_path, spec, spec_file, step = "inf", buchi_in;
  std::uint64_t seed = 0;
  std::size_t max_iters = 100000;
  double c = 2.0, safety = 0.5, time_limit = 0;
  bool self_loop = true, defer_scc = false;
  CLI::Option *c_opt = nullptr, *safety_opt = nullptr, *step_opt = nullptr, *iters_opt = nullptr;
};

void add_common(CLI::App* app, Common& o)
{
  app->add_option("--env", o.env_path, "environment JSON")->required();
  app->add_option("--spec", o.spec, "LTL formula");
  app->add_option("--spec-file", o.spec_file, "file holding the LTL formula");
  app->add_option("--buchi", o.buchi_in, "use this automaton JSON instead of translating the formula");
  app->add_option("--seed", o.seed, "random seed");
  o.iters_opt = app->add_option("--max-iters", o.max_iters, "iteration budget");
  o.c_opt = app->add_option("--c", o.c, "ratio eta2 / eta1 (> 1)");
  o.safety_opt = app->add_option("--safety", o.safety, "fraction of the sparsity upper bound used for gamma");
  o.step_opt = app->add_option("--step", o.step, "steering step length, or inf");
  app->add_option("--time-limit", o.time_limit, "wall-clock budget per run in seconds (0 = none)");
  app->add_option("--allow-self-loop", o.self_loop, "self-loops at accepting states count as cycles");
  app->add_option("--defer-scc", o.defer_scc, "start SCC maintenance at the first accepting state");
}

std::string read_file(const std::string& path)
{
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Json read_json(const std::string& path)
{
  try {
    return Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text)
{
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError(path + ": cannot write");
  out << text;
}

// Everything a run needs, resolved from flags, the environment file and its
// optional "planner" block (flags win).
struct Setup {
  Json env_json;
  std::optional<Environment> env;
  std::string spec;
  std::optional<Formula> formula;
  BuchiAutomaton buchi;
  PlannerParams params;
};

Setup resolve(const Common& o)
{
  Setup s;
  s.env_json = read_json(o.env_path);
  s.env.emplace(environment_from_json(s.env_json));

  if (!o.spec.empty()) s.spec = o.spec;
  else if (!o.spec_file.empty()) s.spec = read_file(o.spec_file);
  else if (s.env_json.contains("spec")) s.spec = detail::text(s.env_json["spec"], "env.spec");
  else throw InputError("no formula: pass --spec, --spec-file or set \"spec\" in the environment");
  while (!s.spec.empty() && std::isspace(static_cast<unsigned char>(s.spec.back()))) s.spec.pop_back();
  try {
    s.formula = parse(s.spec);
  } catch (const ParseError& e) {
    throw InputError(std::string("spec: ") + e.what());
  }

  if (!o.buchi_in.empty()) s.buchi = buchi_from_json(read_json(o.buchi_in));
  else s.buchi = translate(*s.formula);

  double c = 2.0, safety = 0.5;
  std::string step = "inf";
  std::size_t iters = 100000;
  if (s.env_json.contains("planner")) {
    const Json& p = s.env_json["planner"];
    if (p.contains("c")) c = detail::number(p["c"], "env.planner.c");
    if (p.contains("safety")) safety = detail::number(p["safety"], "env.planner.safety");
    if (p.contains("step")) step = p["step"].is_string() ? p["step"].get<std::string>() : p["step"].dump();
    if (p.contains("max_iterations")) iters = detail::count(p["max_iterations"], "env.planner.max_iterations");
  }
  if (o.c_opt->count()) c = o.c;
  if (o.safety_opt->count()) safety = o.safety;
  if (o.step_opt->count()) step = o.step;
  if (o.iters_opt->count()) iters = o.max_iters;

  try {
    s.params.bounds = PlannerBounds::for_domain(s.env->domain(), c, safety);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  if (step == "inf" || step == "infinity") {
    s.params.step = std::numeric_limits<double>::infinity();
  } else {
    try {
      std::size_t used = 0;
      s.params.step = std::stod(step, &used);
      if (used != step.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw InputError("--step: expected a positive number or inf, got '" + step + "'");
    }
  }
  if (!(s.params.step > 0)) throw InputError("--step: must be positive");
  if (iters < 1) throw InputError("--max-iters: must be at least 1");
  s.params.max_iterations = iters;
  s.params.seed = o.seed;
  s.params.self_loop_termination = o.self_loop;
  s.params.defer_scc = o.defer_scc;
  s.params.time_limit_seconds = o.time_limit;
  return s;
}

int cmd_run(const Common& o, const std::string& out, const std::string& plot, bool timing,
            const std::string& buchi_out, const std::string& ts_out, const std::string& product_out)
{
  Setup s = resolve(o);
  if (!plot.empty() && s.env->dimension() != 2)
    throw InputError("--plot: only 2-D environments can be drawn (dimension " + std::to_string(s.env->dimension()) + ")");
  if (!buchi_out.empty()) write_text(buchi_out, to_json(s.buchi).dump(2) + "\n");

  std::optional<Planner> planner;
  try {
    planner.emplace(*s.env, s.buchi, s.params);
  } catch (const std::domain_error& e) {
    std::cerr << "srrg: " << e.what() << "\n";
    Json j{{"status", "unsatisfiable_from_start"}, {"spec", s.spec}, {"plan", nullptr}};
    write_text(out, j.dump(2) + "\n");
    return kNoPlan;
  }
  const PlanReport r = planner->run();
  write_text(out, result_to_json(planner->ts(), s.buchi, r, s.spec, s.params, timing).dump(2) + "\n");
  if (!ts_out.empty()) write_text(ts_out, to_json(planner->ts()).dump(2) + "\n");
  if (!product_out.empty()) write_text(product_out, to_json(planner->product()).dump(2) + "\n");
  if (!plot.empty()) write_text(plot, render_svg(*s.env, planner->ts(), r.plan));

  std::cerr << (r.plan ? "plan found" : "no plan") << " after " << r.iterations << " iterations: |X| = " << r.ts_states
            << ", |Delta| = " << r.ts_transitions << ", " << r.seconds_total << " s\n";
  if (!r.plan) return kNoPlan;
  if (const auto problem = check_plan(*s.env, planner->ts(), *s.formula, *r.plan); !problem.empty()) {
    std::cerr << "srrg: extracted plan failed validation: " << problem << "\n";
    return kInvalidPlan;
  }
  return kPlanFound;
}

int cmd_bench(const Common& o, std::size_t seeds, const std::string& out)
{
  Setup s = resolve(o);
  std::ostringstream csv;
  csv << "seed,found,iterations,states,transitions,product_states,product_transitions,seconds,search_seconds\n";
  std::vector<double> sum(8, 0.0);
  for (std::size_t i = 0; i < seeds; ++i) {
    PlannerParams p = s.params;
    p.seed = s.params.seed + i;
    const PlanReport r = plan(*s.env, s.buchi, p);
    const std::vector<double> row{r.plan ? 1.0 : 0.0,
                                  static_cast<double>(r.iterations),
                                  static_cast<double>(r.ts_states),
                                  static_cast<double>(r.ts_transitions),
                                  static_cast<double>(r.product_states),
                                  static_cast<double>(r.product_transitions),
                                  r.seconds_total,
                                  r.seconds_search};
    csv << p.seed;
    for (std::size_t k = 0; k < row.size(); ++k) {
      csv << "," << row[k];
      sum[k] += row[k];
    }
    csv << "\n";
  }
  csv << "mean";
  for (double v : sum) csv << "," << v / static_cast<double>(seeds);
  csv << "\n";
  write_text(out, csv.str());
  return 0;
}

int cmd_ladder(const std::vector<std::size_t>& sizes, std::uint64_t seed, const std::string& out)
{
  std::ostringstream csv;
  csv << "m,vertices,components,work,work_per_m15\n";
  for (std::size_t m : sizes) {
    std::mt19937_64 rng(seed);
    const std::size_t n = std::max<std::size_t>(2, m / 2);
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(n - 1));
    SccIndex idx;
    for (std::uint32_t v = 0; v < n; ++v) idx.insert_vertex(v);
    while (idx.num_edges() < m) idx.insert_edge(pick(rng), pick(rng));
    csv << m << "," << n << "," << idx.num_components() << "," << idx.work() << ","
        << static_cast<double>(idx.work()) / std::pow(static_cast<double>(m), 1.5) << "\n";
  }
  write_text(out, csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Sparse random-graph planner for LTL specifications"};
  app.require_subcommand(1);

  Common run_opts;
  std::string out, plot, buchi_out, ts_out, product_out;
  bool timing = false;
  auto* run = app.add_subcommand("run", "plan once and write the result JSON");
  add_common(run, run_opts);
  run->add_option("--out", out, "result JSON path (default stdout)");
  run->add_option("--plot", plot, "SVG path (2-D only)");
  run->add_flag("--timing", timing, "include wall-clock figures in the result JSON");
  run->add_option("--export-buchi", buchi_out, "write the automaton JSON");
  run->add_option("--export-ts", ts_out, "write the transition system (node-link JSON)");
  run->add_option("--export-product", product_out, "write the product automaton JSON");

  Common bench_opts;
  std::size_t seeds = 20;
  std::string bench_out;
  auto* bench = app.add_subcommand("bench", "run consecutive seeds and print a CSV table with a mean row");
  add_common(bench, bench_opts);
  bench->add_option("--seeds", seeds, "number of seeds")->check(CLI::PositiveNumber);
  bench->add_option("--out", bench_out, "CSV path (default stdout)");

  std::vector<std::size_t> sizes{1000, 4000, 16000};
  std::uint64_t ladder_seed = 1;
  std::string ladder_out;
  auto* ladder = app.add_subcommand("scc-ladder", "SCC search work on random sparse insertion sequences");
  ladder->add_option("--sizes", sizes, "edge counts")->delimiter(',');
  ladder->add_option("--seed", ladder_seed, "random seed");
  ladder->add_option("--out", ladder_out, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kInputError;
  }

  try {
    if (*run) return cmd_run(run_opts, out, plot, timing, buchi_out, ts_out, product_out);
    if (*bench) return cmd_bench(bench_opts, seeds, bench_out);
    return cmd_ladder(sizes, ladder_seed, ladder_out);
  } catch (const InputError& e) {
    std::cerr << "srrg: " << e.what() << "\n";
  } catch (const Json::exception& e) {
    std::cerr << "srrg: malformed JSON: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    std::cerr << "srrg: " << e.what() << "\n";
  } catch (const std::out_of_range& e) {
    std::cerr << "srrg: " << e.what() << "\n";
  }
  return kInputError;
}
