#include "jobshop_c.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include "jobshop/bounds.hpp"
#include "jobshop/gantt.hpp"
#include "jobshop/instance.hpp"
#include "jobshop/parse.hpp"
#include "jobshop/schedule.hpp"
#include "jobshop/solver.hpp"

struct js_instance {
  jobshop::Instance v;
};
struct js_schedule {
  jobshop::Schedule v;
};
struct js_orders {
  jobshop::MachineOrderSolution v;
};
struct js_verification {
  jobshop::VerificationReport v;
  std::vector<std::string> messages;
};
struct js_solve_report {
  jobshop::SolveReport v;
};
struct js_registry {
  std::vector<jobshop::BoundsRecord> v;
};

namespace {

thread_local std::string g_last_error;

js_status fail(js_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// runs f, translating every library exception to a status code
template <typename F>
js_status guarded(F&& f) {
  try {
    f();
    return JS_OK;
  } catch (const jobshop::ParseError& e) {
    return fail(JS_ERROR_PARSE, e.what());
  } catch (const jobshop::SolutionJsonError& e) {
    return fail(JS_ERROR_PARSE, e.what());
  } catch (const jobshop::CyclicOrdersError& e) {
    return fail(JS_ERROR_CYCLE, e.what());
  } catch (const jobshop::OrdersError& e) {
    return fail(JS_ERROR_PARSE, e.what());
  } catch (const jobshop::ScheduleShapeError& e) {
    return fail(JS_ERROR_SHAPE, e.what());
  } catch (const jobshop::InfeasibleScheduleError& e) {
    return fail(JS_ERROR_INFEASIBLE, e.what());
  } catch (const jobshop::RegistryError& e) {
    return fail(JS_ERROR_INVARIANT, e.what());
  } catch (const jobshop::GapError& e) {
    return fail(JS_ERROR_GAP, e.what());
  } catch (const jobshop::InvalidConfigError& e) {
    return fail(JS_ERROR_INVALID_ARGUMENT, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(JS_ERROR_INVALID_ARGUMENT, e.what());
  } catch (const std::logic_error& e) {
    return fail(JS_ERROR_INVALID_ARGUMENT, e.what());
  } catch (const std::runtime_error& e) {
    return fail(JS_ERROR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(JS_ERROR_INTERNAL, e.what());
  } catch (...) {
    return fail(JS_ERROR_INTERNAL, "unknown error");
  }
}

js_status require(bool ok, const char* message) {
  return ok ? JS_OK : fail(JS_ERROR_INVALID_ARGUMENT, message);
}

jobshop::InstanceFormat parse_format(const char* format) {
  std::string f = format == nullptr ? "auto" : format;
  if (f.empty() || f == "auto") return jobshop::InstanceFormat::Auto;
  if (f == "jssp") return jobshop::InstanceFormat::Jssp;
  if (f == "fjssp") return jobshop::InstanceFormat::Fjssp;
  throw std::invalid_argument("unknown instance format: " + f);
}

jobshop::SolveConfig to_config(const js_solve_options* opts) {
  jobshop::SolveConfig cfg;
  if (opts == nullptr) return cfg;
  cfg.mode = opts->sat_mode != 0 ? jobshop::SolveMode::Sat
                                 : jobshop::SolveMode::Opt;
  cfg.timeout_s = opts->timeout_s;
  cfg.threshold = opts->threshold;
  cfg.workers = opts->workers;
  cfg.seed = opts->seed;
  cfg.propagation = opts->overload_check != 0
                        ? jobshop::PropagationLevel::OverloadCheck
                        : jobshop::PropagationLevel::Basic;
  return cfg;
}

}  // namespace

extern "C" {

const char* js_last_error(void) { return g_last_error.c_str(); }

void js_string_free(char* s) { std::free(s); }

/* ---- instances ---- */

js_status js_instance_load(const char* path, const char* format,
                           js_instance** out) {
  if (js_status s = require(path != nullptr && out != nullptr,
                            "js_instance_load: null argument"))
    return s;
  return guarded([&] {
    auto inst = std::make_unique<js_instance>();
    inst->v = jobshop::load_instance(path, parse_format(format));
    *out = inst.release();
  });
}

js_status js_instance_parse(const char* text, const char* format,
                            const char* name, js_instance** out) {
  if (js_status s = require(text != nullptr && out != nullptr,
                            "js_instance_parse: null argument"))
    return s;
  return guarded([&] {
    auto inst = std::make_unique<js_instance>();
    inst->v = jobshop::parse_instance_text(text, parse_format(format),
                                           name == nullptr ? "" : name);
    *out = inst.release();
  });
}

void js_instance_free(js_instance* inst) { delete inst; }

const char* js_instance_name(const js_instance* inst) {
  return inst == nullptr ? "" : inst->v.name.c_str();
}

int32_t js_instance_job_count(const js_instance* inst) {
  return inst == nullptr ? 0 : inst->v.job_count();
}

int32_t js_instance_machine_count(const js_instance* inst) {
  return inst == nullptr ? 0 : inst->v.machine_count;
}

int32_t js_instance_total_ops(const js_instance* inst) {
  return inst == nullptr ? 0 : inst->v.total_ops();
}

int32_t js_instance_op_count(const js_instance* inst, int32_t job) {
  if (inst == nullptr || job < 0 || job >= inst->v.job_count()) return 0;
  return static_cast<int32_t>(inst->v.jobs[job].size());
}

int32_t js_instance_is_jssp(const js_instance* inst) {
  return inst != nullptr && inst->v.is_jssp() ? 1 : 0;
}

int64_t js_instance_horizon(const js_instance* inst) {
  return inst == nullptr ? 0 : jobshop::horizon(inst->v).value;
}

js_status js_instance_serialize(const js_instance* inst, char** out_text) {
  if (js_status s = require(inst != nullptr && out_text != nullptr,
                            "js_instance_serialize: null argument"))
    return s;
  return guarded([&] { *out_text = dup_string(jobshop::serialize(inst->v)); });
}

/* ---- analytic lower bounds ---- */

int64_t js_lb_job_chain(const js_instance* inst) {
  return inst == nullptr ? 0 : jobshop::lb_job_chain(inst->v);
}

int64_t js_lb_machine_load(const js_instance* inst) {
  return inst == nullptr ? 0 : jobshop::lb_machine_load(inst->v);
}

int64_t js_lb_best(const js_instance* inst) {
  return inst == nullptr ? 0 : jobshop::lb_best(inst->v);
}

/* ---- schedules ---- */

js_status js_schedule_load(const char* path, js_schedule** out) {
  if (js_status s = require(path != nullptr && out != nullptr,
                            "js_schedule_load: null argument"))
    return s;
  return guarded([&] {
    auto sched = std::make_unique<js_schedule>();
    sched->v = jobshop::load_schedule(path);
    *out = sched.release();
  });
}

js_status js_schedule_from_json(const char* text, js_schedule** out) {
  if (js_status s = require(text != nullptr && out != nullptr,
                            "js_schedule_from_json: null argument"))
    return s;
  return guarded([&] {
    auto sched = std::make_unique<js_schedule>();
    sched->v = jobshop::schedule_from_json(text);
    *out = sched.release();
  });
}

js_status js_schedule_to_json(const js_schedule* sched, char** out_text) {
  if (js_status s = require(sched != nullptr && out_text != nullptr,
                            "js_schedule_to_json: null argument"))
    return s;
  return guarded(
      [&] { *out_text = dup_string(jobshop::schedule_to_json(sched->v)); });
}

js_status js_schedule_save(const js_schedule* sched, const char* path) {
  if (js_status s = require(sched != nullptr && path != nullptr,
                            "js_schedule_save: null argument"))
    return s;
  return guarded([&] { jobshop::save_schedule(path, sched->v); });
}

void js_schedule_free(js_schedule* sched) { delete sched; }

int64_t js_schedule_makespan(const js_schedule* sched) {
  return sched == nullptr ? 0 : jobshop::makespan(sched->v);
}

/* ---- machine-order files and reconstruction ---- */

js_status js_orders_load(const char* path, js_orders** out) {
  if (js_status s = require(path != nullptr && out != nullptr,
                            "js_orders_load: null argument"))
    return s;
  return guarded([&] {
    auto orders = std::make_unique<js_orders>();
    orders->v = jobshop::load_orders(path);
    *out = orders.release();
  });
}

js_status js_orders_parse(const char* text, js_orders** out) {
  if (js_status s = require(text != nullptr && out != nullptr,
                            "js_orders_parse: null argument"))
    return s;
  return guarded([&] {
    auto orders = std::make_unique<js_orders>();
    orders->v = jobshop::parse_orders_text(text);
    *out = orders.release();
  });
}

void js_orders_free(js_orders* orders) { delete orders; }

js_status js_semi_active(const js_instance* inst, const js_orders* orders,
                         js_schedule** out) {
  if (js_status s =
          require(inst != nullptr && orders != nullptr && out != nullptr,
                  "js_semi_active: null argument"))
    return s;
  return guarded([&] {
    auto sched = std::make_unique<js_schedule>();
    sched->v = jobshop::semi_active(inst->v, orders->v);
    *out = sched.release();
  });
}

/* ---- verification ---- */

js_status js_verify(const js_instance* inst, const js_schedule* sched,
                    js_verification** out) {
  if (js_status s =
          require(inst != nullptr && sched != nullptr && out != nullptr,
                  "js_verify: null argument"))
    return s;
  return guarded([&] {
    auto v = std::make_unique<js_verification>();
    v->v = jobshop::verify(inst->v, sched->v);
    for (const auto& violation : v->v.violations)
      v->messages.push_back(violation.message);
    *out = v.release();
  });
}

void js_verification_free(js_verification* v) { delete v; }

int32_t js_verification_feasible(const js_verification* v) {
  return v != nullptr && v->v.feasible ? 1 : 0;
}

int64_t js_verification_makespan(const js_verification* v) {
  return v == nullptr ? 0 : v->v.makespan;
}

int32_t js_verification_violation_count(const js_verification* v) {
  return v == nullptr ? 0 : static_cast<int32_t>(v->messages.size());
}

const char* js_verification_violation(const js_verification* v, int32_t i) {
  if (v == nullptr || i < 0 || i >= static_cast<int32_t>(v->messages.size()))
    return "";
  return v->messages[i].c_str();
}

js_status js_machine_end_times(const js_instance* inst,
                               const js_schedule* sched, int64_t* out_ends,
                               int32_t len) {
  if (js_status s =
          require(inst != nullptr && sched != nullptr && out_ends != nullptr,
                  "js_machine_end_times: null argument"))
    return s;
  if (js_status s = require(len >= inst->v.machine_count,
                            "js_machine_end_times: buffer too small"))
    return s;
  return guarded([&] {
    std::vector<int64_t> ends =
        jobshop::machine_end_times(sched->v, inst->v.machine_count);
    for (int m = 0; m < inst->v.machine_count; ++m) out_ends[m] = ends[m];
  });
}

/* ---- gantt rendering ---- */

js_status js_gantt(const js_instance* inst, const js_schedule* sched,
                   const char* format, char** out_doc) {
  if (js_status s =
          require(inst != nullptr && sched != nullptr && out_doc != nullptr,
                  "js_gantt: null argument"))
    return s;
  return guarded([&] {
    std::string f = format == nullptr ? "svg" : format;
    jobshop::GanttFormat gf;
    if (f == "svg")
      gf = jobshop::GanttFormat::Svg;
    else if (f == "text")
      gf = jobshop::GanttFormat::Text;
    else
      throw std::invalid_argument("unknown gantt format: " + f);
    *out_doc = dup_string(jobshop::emit_gantt(inst->v, sched->v, gf));
  });
}

/* ---- solver ---- */

void js_solve_options_init(js_solve_options* opts) {
  if (opts == nullptr) return;
  opts->sat_mode = 0;
  opts->timeout_s = 0.0;
  opts->threshold = -1;
  opts->workers = 1;
  opts->seed = 1;
  opts->overload_check = 1;
}

js_status js_solve(const js_instance* inst, const js_solve_options* opts,
                   js_solve_report** out) {
  if (js_status s = require(inst != nullptr && out != nullptr,
                            "js_solve: null argument"))
    return s;
  return guarded([&] {
    auto report = std::make_unique<js_solve_report>();
    report->v = jobshop::solve(inst->v, to_config(opts));
    *out = report.release();
  });
}

js_status js_sat_probe_ladder(const js_instance* inst, int64_t start_threshold,
                              const js_solve_options* opts,
                              js_solve_report** out) {
  if (js_status s = require(inst != nullptr && out != nullptr,
                            "js_sat_probe_ladder: null argument"))
    return s;
  return guarded([&] {
    jobshop::LadderResult ladder =
        jobshop::sat_probe_ladder(inst->v, start_threshold, to_config(opts));
    auto report = std::make_unique<js_solve_report>();
    report->v.status = ladder.last_status;
    report->v.best_lb = ladder.certified_lb;
    if (ladder.schedule)
      report->v.best_ub = jobshop::makespan(*ladder.schedule);
    report->v.best_schedule = ladder.schedule;
    report->v.trace = ladder.trace;
    *out = report.release();
  });
}

void js_solve_report_free(js_solve_report* report) { delete report; }

const char* js_solve_status(const js_solve_report* report) {
  if (report == nullptr) return "unknown";
  return jobshop::to_string(report->v.status);
}

int64_t js_solve_lb(const js_solve_report* report) {
  return report == nullptr ? 0 : report->v.best_lb;
}

int64_t js_solve_ub(const js_solve_report* report) {
  if (report == nullptr || !report->v.best_ub) return -1;
  return *report->v.best_ub;
}

int32_t js_solve_has_schedule(const js_solve_report* report) {
  return report != nullptr && report->v.best_schedule ? 1 : 0;
}

js_status js_solve_schedule(const js_solve_report* report, js_schedule** out) {
  if (js_status s = require(report != nullptr && out != nullptr,
                            "js_solve_schedule: null argument"))
    return s;
  if (js_status s = require(report->v.best_schedule.has_value(),
                            "js_solve_schedule: report has no schedule"))
    return s;
  return guarded([&] {
    auto sched = std::make_unique<js_schedule>();
    sched->v = *report->v.best_schedule;
    *out = sched.release();
  });
}

js_status js_solve_trace_csv(const js_solve_report* report, char** out_csv) {
  if (js_status s = require(report != nullptr && out_csv != nullptr,
                            "js_solve_trace_csv: null argument"))
    return s;
  return guarded(
      [&] { *out_csv = dup_string(jobshop::trace_to_csv(report->v.trace)); });
}

js_status js_solve_report_json(const js_solve_report* report,
                               int32_t with_elapsed, char** out_json) {
  if (js_status s = require(report != nullptr && out_json != nullptr,
                            "js_solve_report_json: null argument"))
    return s;
  return guarded([&] {
    *out_json =
        dup_string(jobshop::report_to_json(report->v, with_elapsed != 0));
  });
}

/* ---- bounds registry ---- */

js_status js_registry_load(const char* path, js_registry** out) {
  if (js_status s = require(path != nullptr && out != nullptr,
                            "js_registry_load: null argument"))
    return s;
  return guarded([&] {
    auto reg = std::make_unique<js_registry>();
    reg->v = jobshop::registry_load_file(path);
    *out = reg.release();
  });
}

void js_registry_free(js_registry* reg) { delete reg; }

int32_t js_registry_size(const js_registry* reg) {
  return reg == nullptr ? 0 : static_cast<int32_t>(reg->v.size());
}

js_status js_registry_report(const js_registry* reg, const char* filter,
                             char** out_text) {
  if (js_status s = require(reg != nullptr && out_text != nullptr,
                            "js_registry_report: null argument"))
    return s;
  return guarded([&] {
    *out_text = dup_string(
        jobshop::registry_report(reg->v, filter == nullptr ? "" : filter));
  });
}

js_status js_registry_diff(const js_registry* oldr, const js_registry* newr,
                           char** out_text) {
  if (js_status s =
          require(oldr != nullptr && newr != nullptr && out_text != nullptr,
                  "js_registry_diff: null argument"))
    return s;
  return guarded(
      [&] { *out_text = dup_string(jobshop::registry_diff(oldr->v, newr->v)); });
}

} /* extern "C" */
