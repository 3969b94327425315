// jobshop command line tool: solve / verify / bounds / gantt.
//
// Exit codes: 0 success or feasible, 1 verification failed / infeasible,
// 2 usage, parse or invariant errors.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "jobshop_c.h"

namespace {

template <typename T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() {
    if (p != nullptr) Free(p);
  }
  T** out() { return &p; }
  T* get() const { return p; }
};

struct Str {
  char* p = nullptr;
  Str() = default;
  Str(const Str&) = delete;
  Str& operator=(const Str&) = delete;
  ~Str() { js_string_free(p); }
};

using InstanceHandle = Handle<js_instance, js_instance_free>;
using ScheduleHandle = Handle<js_schedule, js_schedule_free>;
using OrdersHandle = Handle<js_orders, js_orders_free>;
using VerificationHandle = Handle<js_verification, js_verification_free>;
using ReportHandle = Handle<js_solve_report, js_solve_report_free>;
using RegistryHandle = Handle<js_registry, js_registry_free>;

int report_error(js_status status) {
  std::fprintf(stderr, "error: %s\n", js_last_error());
  switch (status) {
    case JS_ERROR_INFEASIBLE:
    case JS_ERROR_CYCLE:
    case JS_ERROR_SHAPE:
      return 1;
    default:
      return 2;
  }
}

bool write_file(const std::string& path, const char* text) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (f == nullptr) {
    std::fprintf(stderr, "error: cannot write %s\n", path.c_str());
    return false;
  }
  std::fputs(text, f);
  std::fclose(f);
  return true;
}

struct SolveArgs {
  std::string instance;
  std::string format = "auto";
  std::string mode = "opt";
  int64_t threshold = -1;
  double timeout_s = 0.0;
  int workers = 1;
  uint64_t seed = 1;
  std::string out;
  std::string trace;
};

int cmd_solve(const SolveArgs& a) {
  InstanceHandle inst;
  js_status s =
      js_instance_load(a.instance.c_str(), a.format.c_str(), inst.out());
  if (s != JS_OK) return report_error(s);

  js_solve_options opts;
  js_solve_options_init(&opts);
  opts.sat_mode = a.mode == "sat" ? 1 : 0;
  opts.timeout_s = a.timeout_s;
  opts.threshold = a.threshold;
  opts.workers = a.workers;
  opts.seed = a.seed;

  ReportHandle report;
  s = js_solve(inst.get(), &opts, report.out());
  if (s != JS_OK) return report_error(s);

  if (!a.out.empty()) {
    if (js_solve_has_schedule(report.get())) {
      ScheduleHandle sched;
      s = js_solve_schedule(report.get(), sched.out());
      if (s != JS_OK) return report_error(s);
      s = js_schedule_save(sched.get(), a.out.c_str());
      if (s != JS_OK) return report_error(s);
    } else {
      std::fprintf(stderr, "no schedule found, %s not written\n",
                   a.out.c_str());
    }
  }
  if (!a.trace.empty()) {
    Str csv;
    s = js_solve_trace_csv(report.get(), &csv.p);
    if (s != JS_OK) return report_error(s);
    if (!write_file(a.trace, csv.p)) return 2;
  }

  const char* status = js_solve_status(report.get());
  int64_t ub = js_solve_ub(report.get());
  std::printf("{\"status\": \"%s\", \"lb\": %" PRId64 ", \"ub\": ", status,
              js_solve_lb(report.get()));
  if (ub < 0)
    std::printf("null}\n");
  else
    std::printf("%" PRId64 "}\n", ub);
  return std::string(status) == "infeasible" ? 1 : 0;
}

struct VerifyArgs {
  std::string instance;
  std::string format = "auto";
  std::string solution;
  std::string orders;
};

int cmd_verify(const VerifyArgs& a) {
  InstanceHandle inst;
  js_status s =
      js_instance_load(a.instance.c_str(), a.format.c_str(), inst.out());
  if (s != JS_OK) return report_error(s);

  ScheduleHandle sched;
  if (!a.solution.empty()) {
    s = js_schedule_load(a.solution.c_str(), sched.out());
    if (s != JS_OK) return report_error(s);
  } else {
    OrdersHandle orders;
    s = js_orders_load(a.orders.c_str(), orders.out());
    if (s != JS_OK) return report_error(s);
    s = js_semi_active(inst.get(), orders.get(), sched.out());
    if (s != JS_OK) return report_error(s);
  }

  VerificationHandle v;
  s = js_verify(inst.get(), sched.get(), v.out());
  if (s != JS_OK) return report_error(s);

  std::printf("makespan: %" PRId64 "\n", js_verification_makespan(v.get()));
  std::vector<int64_t> ends(js_instance_machine_count(inst.get()));
  s = js_machine_end_times(inst.get(), sched.get(), ends.data(),
                           static_cast<int32_t>(ends.size()));
  if (s != JS_OK) return report_error(s);
  std::printf("machine_ends:");
  for (int64_t e : ends) std::printf(" %" PRId64, e);
  std::printf("\n");
  int32_t violations = js_verification_violation_count(v.get());
  for (int32_t i = 0; i < violations; ++i)
    std::printf("violation: %s\n", js_verification_violation(v.get(), i));
  bool feasible = js_verification_feasible(v.get()) != 0;
  std::printf("feasible: %s\n", feasible ? "yes" : "no");
  return feasible ? 0 : 1;
}

struct BoundsArgs {
  std::string registry;
  std::string diff;
  std::string filter;
};

int cmd_bounds(const BoundsArgs& a) {
  RegistryHandle reg;
  js_status s = js_registry_load(a.registry.c_str(), reg.out());
  if (s != JS_OK) return report_error(s);

  Str text;
  if (!a.diff.empty()) {
    RegistryHandle old_reg;
    s = js_registry_load(a.diff.c_str(), old_reg.out());
    if (s != JS_OK) return report_error(s);
    s = js_registry_diff(old_reg.get(), reg.get(), &text.p);
  } else {
    s = js_registry_report(reg.get(), a.filter.c_str(), &text.p);
  }
  if (s != JS_OK) return report_error(s);
  std::fputs(text.p, stdout);
  return 0;
}

struct GanttArgs {
  std::string instance;
  std::string format_in = "auto";
  std::string solution;
  std::string format = "svg";
  std::string out;
};

int cmd_gantt(const GanttArgs& a) {
  InstanceHandle inst;
  js_status s =
      js_instance_load(a.instance.c_str(), a.format_in.c_str(), inst.out());
  if (s != JS_OK) return report_error(s);
  ScheduleHandle sched;
  s = js_schedule_load(a.solution.c_str(), sched.out());
  if (s != JS_OK) return report_error(s);
  Str doc;
  s = js_gantt(inst.get(), sched.get(), a.format.c_str(), &doc.p);
  if (s != JS_OK) return report_error(s);
  if (a.out.empty()) {
    std::fputs(doc.p, stdout);
    return 0;
  }
  return write_file(a.out, doc.p) ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"job shop scheduling toolkit"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  CLI::App* solve = app.add_subcommand("solve", "minimize or probe makespan");
  solve->add_option("--instance", solve_args.instance, "instance file")
      ->required();
  solve->add_option("--format", solve_args.format, "instance format")
      ->check(CLI::IsMember({"auto", "jssp", "fjssp"}));
  solve->add_option("--mode", solve_args.mode, "opt or sat")
      ->check(CLI::IsMember({"opt", "sat"}));
  solve->add_option("--threshold", solve_args.threshold,
                    "sat mode: makespan to test");
  solve->add_option("--timeout-s", solve_args.timeout_s,
                    "wall clock budget, <= 0 unbounded");
  solve->add_option("--workers", solve_args.workers, "parallel searches");
  solve->add_option("--seed", solve_args.seed, "search tie-break seed");
  solve->add_option("--out", solve_args.out, "write best solution JSON here");
  solve->add_option("--trace", solve_args.trace, "write bound trace CSV here");

  VerifyArgs verify_args;
  CLI::App* verify =
      app.add_subcommand("verify", "check a solution against an instance");
  verify->add_option("--instance", verify_args.instance, "instance file")
      ->required();
  verify->add_option("--format", verify_args.format, "instance format")
      ->check(CLI::IsMember({"auto", "jssp", "fjssp"}));
  CLI::Option* opt_solution =
      verify->add_option("--solution", verify_args.solution, "solution JSON");
  CLI::Option* opt_orders = verify->add_option(
      "--orders", verify_args.orders, "machine-order text file");
  opt_solution->excludes(opt_orders);
  opt_orders->excludes(opt_solution);

  BoundsArgs bounds_args;
  CLI::App* bounds =
      app.add_subcommand("bounds", "report or diff a bounds registry");
  bounds->add_option("--registry", bounds_args.registry, "registry CSV")
      ->required();
  bounds->add_option("--diff", bounds_args.diff,
                     "older registry CSV to diff against");
  bounds->add_option("--instance", bounds_args.filter,
                     "only the row with this exact name");

  GanttArgs gantt_args;
  CLI::App* gantt = app.add_subcommand("gantt", "render a schedule");
  gantt->add_option("--instance", gantt_args.instance, "instance file")
      ->required();
  gantt->add_option("--instance-format", gantt_args.format_in,
                    "instance format")
      ->check(CLI::IsMember({"auto", "jssp", "fjssp"}));
  gantt->add_option("--solution", gantt_args.solution, "solution JSON")
      ->required();
  gantt->add_option("--format", gantt_args.format, "svg or text")
      ->check(CLI::IsMember({"svg", "text"}));
  gantt->add_option("--out", gantt_args.out, "output file, stdout if absent");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (solve->parsed()) return cmd_solve(solve_args);
  if (verify->parsed()) {
    if (verify_args.solution.empty() == verify_args.orders.empty()) {
      std::fprintf(stderr,
                   "error: verify needs exactly one of --solution/--orders\n");
      return 2;
    }
    return cmd_verify(verify_args);
  }
  if (bounds->parsed()) return cmd_bounds(bounds_args);
  if (gantt->parsed()) return cmd_gantt(gantt_args);
  return 2;
}
