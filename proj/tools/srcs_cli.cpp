#include "CLI11.hpp"
#include "json.hpp"
#include "srcs/aptas.hpp"
#include "srcs/gantt.hpp"
#include "srcs/generator.hpp"
#include "srcs/json_io.hpp"
#include "srcs/three_halves.hpp"

#include <chrono>
#include <filesystem>
#include <iostream>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace srcs;

namespace {

struct Options {
  std::string in, schedule_path, out, cert, dir, dump_dir, family = "uniform";
  std::string algo = "greedy";
  std::vector<std::string> algos;
  std::string eps = "1/2";
  std::uint64_t seed = 1;
  int count = 10, n_min = 1, n_max = 8;
  long long m = 3, R = 10;
  long long budget_guesses = 20000, budget_profiles = 20000;
  int oracle_cap = 8;
  bool stable_time = false;
};

Rational parse_eps(const std::string &s) {
  auto q = parse_rational(s);
  if (!q || *q <= 0 || *q >= 1)
    throw std::invalid_argument("epsilon must be a rational in (0, 1)");
  return *q;
}

struct RunOutcome {
  Schedule schedule;
  Rational makespan;
  json cert;
};

RunOutcome run_algo(const Instance &ins, const std::string &algo,
                    const Rational &eps, const Budgets &budgets) {
  RunOutcome out;
  out.cert["algorithm"] = algo;
  if (algo == "greedy") {
    out.schedule = greedy_list_schedule(ins, default_order(ins));
    out.makespan = makespan(ins, out.schedule);
    out.cert["greedy_bound"] = to_string(greedy_bound(ins));
  } else if (algo == "aptas" || algo == "three-halves") {
    AptasResult res = algo == "aptas" ? aptas(ins, eps, budgets)
                                      : three_halves(ins, eps, budgets);
    out.schedule = res.schedule;
    out.makespan = res.makespan;
    out.cert["epsilon"] = to_string(normalize_epsilon(eps));
    out.cert["T"] = to_string(res.T);
    out.cert["T_prime"] = to_string(res.T_prime);
    out.cert["pieces"] = {{"core", to_string(res.cert.core)},
                          {"end_block", to_string(res.cert.end_block)},
                          {"tail", to_string(res.cert.tail)},
                          {"removed_block", to_string(res.cert.removed_block)},
                          {"medium_block", to_string(res.cert.medium_block)}};
    out.cert["removed_count"] = res.removed_count;
    out.cert["deferred_small"] = res.deferred_small;
    if (!res.case_label.empty()) out.cert["case"] = res.case_label;
    if (res.gap_used) {
      out.cert["gap"] = {{"start", to_string(res.gap_start)},
                         {"length", to_string(res.gap_length)},
                         {"jobs", res.gap_jobs}};
    }
    CertifyReport rep = certify(res, ins, eps);
    out.cert["certified"] = rep.ok;
    if (!rep.ok) out.cert["certify_detail"] = rep.detail;
  } else {
    throw std::invalid_argument("unknown algorithm: " + algo);
  }
  out.cert["makespan"] = to_string(out.makespan);
  out.cert["lower_bound_T"] = to_string(lower_bound_T(ins));
  return out;
}

int cmd_solve(const Options &opt) {
  Instance ins = instance_from_json(read_file(opt.in));
  Budgets budgets{opt.budget_guesses, opt.budget_profiles};
  RunOutcome res = run_algo(ins, opt.algo, parse_eps(opt.eps), budgets);
  std::string sched_json = schedule_to_json(res.schedule);
  std::string cert_json = res.cert.dump(2) + "\n";
  if (opt.out.empty()) {
    std::cout << sched_json << cert_json;
  } else {
    write_file(opt.out, sched_json);
    write_file(opt.cert.empty() ? opt.out + ".cert.json" : opt.cert, cert_json);
  }
  return 0;
}

int cmd_verify(const Options &opt) {
  Instance ins = instance_from_json(read_file(opt.in));
  Schedule sched = schedule_from_json(read_file(opt.schedule_path));
  VerificationReport rep = verify_schedule(ins, sched);
  if (rep.feasible) {
    std::cout << "feasible makespan=" << to_string(rep.makespan) << "\n";
    return 0;
  }
  const Violation &v = *rep.first_violation;
  std::cout << "infeasible: "
            << (v.kind == ViolationKind::Machine ? "machine" : "resource")
            << " demand " << to_string(v.demand) << " exceeds "
            << to_string(v.capacity) << " at t=" << to_string(v.time) << "\n";
  return 1;
}

int cmd_oracle(const Options &opt) {
  Instance ins = instance_from_json(read_file(opt.in));
  OracleResult res = oracle_optimal(ins, opt.oracle_cap);
  std::cout << "optimal makespan=" << to_string(res.makespan) << "\n";
  if (!opt.out.empty()) write_file(opt.out, schedule_to_json(res.schedule));
  return 0;
}

int cmd_gantt(const Options &opt) {
  Instance ins = instance_from_json(read_file(opt.in));
  Schedule sched = schedule_from_json(read_file(opt.schedule_path));
  std::string svg = gantt_svg(ins, sched);
  if (opt.out.empty())
    std::cout << svg;
  else
    write_file(opt.out, svg);
  return 0;
}

int cmd_bench(const Options &opt) {
  std::vector<std::pair<std::string, Instance>> instances;
  if (!opt.dir.empty()) {
    std::vector<std::string> names;
    for (const auto &e : fs::directory_iterator(opt.dir))
      if (e.path().extension() == ".json") names.push_back(e.path().string());
    std::sort(names.begin(), names.end());
    for (const std::string &n : names)
      instances.push_back({fs::path(n).filename().string(),
                           instance_from_json(read_file(n))});
  } else {
    GeneratorParams params;
    params.family = opt.family;
    params.n_min = opt.n_min;
    params.n_max = opt.n_max;
    params.m = opt.m;
    params.R = opt.R;
    auto corpus = generate_corpus(params, opt.seed, opt.count);
    for (size_t i = 0; i < corpus.size(); ++i) {
      std::string name = opt.family + "-" + std::to_string(i);
      if (!opt.dump_dir.empty()) {
        fs::create_directories(opt.dump_dir);
        write_file((fs::path(opt.dump_dir) / (name + ".json")).string(),
                   instance_to_json(corpus[i]));
      }
      instances.push_back({name, corpus[i]});
    }
  }

  std::vector<std::string> algos =
      opt.algos.empty()
          ? std::vector<std::string>{"greedy", "aptas", "three-halves"}
          : opt.algos;
  Rational eps = parse_eps(opt.eps);
  Budgets budgets{opt.budget_guesses, opt.budget_profiles};

  std::string csv = "instance,algo,eps,makespan,lowerT,oracleOpt,ratio,seconds\n";
  for (const auto &[name, ins] : instances) {
    Rational lowerT = lower_bound_T(ins);
    std::string oracle_s;
    std::optional<Rational> oracle_opt;
    if ((int)ins.jobs.size() <= opt.oracle_cap) {
      oracle_opt = oracle_optimal(ins, opt.oracle_cap).makespan;
      oracle_s = to_string(*oracle_opt);
    }
    for (const std::string &algo : algos) {
      std::string eps_s = algo == "greedy" ? "-" : to_string(normalize_epsilon(eps));
      auto t0 = std::chrono::steady_clock::now();
      std::string mk = "error", ratio = "-";
      try {
        RunOutcome res = run_algo(ins, algo, eps, budgets);
        mk = to_string(res.makespan);
        Rational denom = oracle_opt ? *oracle_opt : lowerT;
        if (denom > 0) ratio = to_string(Rational(res.makespan / denom));
      } catch (const std::exception &) {
      }
      double secs = std::chrono::duration<double>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
      char tbuf[32];
      std::snprintf(tbuf, sizeof(tbuf), "%.3f", opt.stable_time ? 0.0 : secs);
      csv += name + "," + algo + "," + eps_s + "," + mk + "," +
             to_string(lowerT) + "," + oracle_s + "," + ratio + "," + tbuf +
             "\n";
    }
  }
  if (opt.out.empty())
    std::cout << csv;
  else
    write_file(opt.out, csv);
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"single-resource constrained scheduling toolkit"};
  app.require_subcommand(1);
  Options opt;

  auto add_budgets = [&](CLI::App *c) {
    c->add_option("--budget-guesses", opt.budget_guesses);
    c->add_option("--budget-profiles", opt.budget_profiles);
  };

  CLI::App *solve = app.add_subcommand("solve", "run a solver on an instance");
  solve->add_option("--in", opt.in)->required();
  solve->add_option("--algo", opt.algo);
  solve->add_option("--eps", opt.eps);
  solve->add_option("--out", opt.out);
  solve->add_option("--cert", opt.cert);
  add_budgets(solve);

  CLI::App *verify = app.add_subcommand("verify", "check a schedule");
  verify->add_option("--in", opt.in)->required();
  verify->add_option("--schedule", opt.schedule_path)->required();

  CLI::App *oracle = app.add_subcommand("oracle", "exact optimum, small n");
  oracle->add_option("--in", opt.in)->required();
  oracle->add_option("--out", opt.out);
  oracle->add_option("--cap", opt.oracle_cap);

  CLI::App *bench = app.add_subcommand("bench", "CSV benchmark table");
  bench->add_option("--dir", opt.dir);
  bench->add_option("--family", opt.family);
  bench->add_option("--count", opt.count);
  bench->add_option("--n-min", opt.n_min);
  bench->add_option("--n-max", opt.n_max);
  bench->add_option("--m", opt.m);
  bench->add_option("--R", opt.R);
  bench->add_option("--seed", opt.seed);
  bench->add_option("--algo", opt.algos);
  bench->add_option("--eps", opt.eps);
  bench->add_option("--out", opt.out);
  bench->add_option("--dump-dir", opt.dump_dir);
  bench->add_flag("--stable-time", opt.stable_time);
  add_budgets(bench);

  CLI::App *gantt = app.add_subcommand("gantt", "render a schedule as SVG");
  gantt->add_option("--in", opt.in)->required();
  gantt->add_option("--schedule", opt.schedule_path)->required();
  gantt->add_option("--out", opt.out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return cmd_solve(opt);
    if (verify->parsed()) return cmd_verify(opt);
    if (oracle->parsed()) return cmd_oracle(opt);
    if (bench->parsed()) return cmd_bench(opt);
    if (gantt->parsed()) return cmd_gantt(opt);
  } catch (const BudgetError &e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return 1;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
