/* C interface of the jobshop library.
 *
 * Every object is an opaque handle created by a js_*_... function and
 * released by the matching js_*_free. Functions that can fail return a
 * js_status; on anything but JS_OK the output arguments are untouched and
 * js_last_error() describes the problem (per thread, valid until the next
 * failing call on that thread).
 */
#ifndef JOBSHOP_C_H
#define JOBSHOP_C_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum js_status {
  JS_OK = 0,
  JS_ERROR_INVALID_ARGUMENT = 1,
  JS_ERROR_PARSE = 2,
  JS_ERROR_IO = 3,
  JS_ERROR_SHAPE = 4,      /* schedule does not cover the instance */
  JS_ERROR_CYCLE = 5,      /* machine orders deadlock */
  JS_ERROR_INFEASIBLE = 6, /* operation requires a feasible schedule */
  JS_ERROR_INVARIANT = 7,  /* registry row breaks lb/ub/optimal rules */
  JS_ERROR_GAP = 8,        /* bounds diff not an improvement / zero gap */
  JS_ERROR_INTERNAL = 9
} js_status;

const char* js_last_error(void);

typedef struct js_instance js_instance;
typedef struct js_schedule js_schedule;
typedef struct js_orders js_orders;
typedef struct js_verification js_verification;
typedef struct js_solve_report js_solve_report;
typedef struct js_registry js_registry;

/* Strings returned through char** are malloc'd; release with
 * js_string_free. */
void js_string_free(char* s);

/* ---- instances ----
 * format: "auto", "jssp" or "fjssp". */
js_status js_instance_load(const char* path, const char* format,
                           js_instance** out);
js_status js_instance_parse(const char* text, const char* format,
                            const char* name, js_instance** out);
void js_instance_free(js_instance* inst);

const char* js_instance_name(const js_instance* inst);
int32_t js_instance_job_count(const js_instance* inst);
int32_t js_instance_machine_count(const js_instance* inst);
int32_t js_instance_total_ops(const js_instance* inst);
int32_t js_instance_op_count(const js_instance* inst, int32_t job);
int32_t js_instance_is_jssp(const js_instance* inst);
int64_t js_instance_horizon(const js_instance* inst);
js_status js_instance_serialize(const js_instance* inst, char** out_text);

/* ---- analytic lower bounds ---- */
int64_t js_lb_job_chain(const js_instance* inst);
int64_t js_lb_machine_load(const js_instance* inst);
int64_t js_lb_best(const js_instance* inst);

/* ---- schedules ---- */
js_status js_schedule_load(const char* path, js_schedule** out);
js_status js_schedule_from_json(const char* text, js_schedule** out);
js_status js_schedule_to_json(const js_schedule* sched, char** out_text);
js_status js_schedule_save(const js_schedule* sched, const char* path);
void js_schedule_free(js_schedule* sched);
int64_t js_schedule_makespan(const js_schedule* sched);

/* ---- machine-order files and reconstruction ---- */
js_status js_orders_load(const char* path, js_orders** out);
js_status js_orders_parse(const char* text, js_orders** out);
void js_orders_free(js_orders* orders);
js_status js_semi_active(const js_instance* inst, const js_orders* orders,
                         js_schedule** out);

/* ---- verification ---- */
js_status js_verify(const js_instance* inst, const js_schedule* sched,
                    js_verification** out);
void js_verification_free(js_verification* v);
int32_t js_verification_feasible(const js_verification* v);
int64_t js_verification_makespan(const js_verification* v);
int32_t js_verification_violation_count(const js_verification* v);
const char* js_verification_violation(const js_verification* v, int32_t i);

/* Fills out_ends[0 .. machine_count-1] with each machine's last end time
 * (0 for idle machines). len must be at least the machine count. */
js_status js_machine_end_times(const js_instance* inst,
                               const js_schedule* sched, int64_t* out_ends,
                               int32_t len);

/* ---- gantt rendering ----
 * format: "svg" or "text". Rejects infeasible schedules. */
js_status js_gantt(const js_instance* inst, const js_schedule* sched,
                   const char* format, char** out_doc);

/* ---- solver ---- */
typedef struct js_solve_options {
  int32_t sat_mode;       /* 0 = minimize makespan, 1 = threshold probe */
  double timeout_s;       /* <= 0: unbounded */
  int64_t threshold;      /* sat_mode only */
  int32_t workers;        /* >= 1 */
  uint64_t seed;
  int32_t overload_check; /* 0 = basic propagation only */
} js_solve_options;

void js_solve_options_init(js_solve_options* opts);

js_status js_solve(const js_instance* inst, const js_solve_options* opts,
                   js_solve_report** out);
/* Probes thresholds upward from start_threshold until one is feasible or
 * undecided; the report's lb is then certified. */
js_status js_sat_probe_ladder(const js_instance* inst, int64_t start_threshold,
                              const js_solve_options* opts,
                              js_solve_report** out);
void js_solve_report_free(js_solve_report* report);

/* "optimal", "feasible", "infeasible" or "unknown" (static string) */
const char* js_solve_status(const js_solve_report* report);
int64_t js_solve_lb(const js_solve_report* report);
/* -1 while no schedule has been found */
int64_t js_solve_ub(const js_solve_report* report);
int32_t js_solve_has_schedule(const js_solve_report* report);
js_status js_solve_schedule(const js_solve_report* report, js_schedule** out);
js_status js_solve_trace_csv(const js_solve_report* report, char** out_csv);
/* {"status", "lb", "ub"} plus counters; with_elapsed = 0 omits wall clock
 * readings so repeated runs compare byte for byte */
js_status js_solve_report_json(const js_solve_report* report,
                               int32_t with_elapsed, char** out_json);

/* ---- bounds registry ---- */
js_status js_registry_load(const char* path, js_registry** out);
void js_registry_free(js_registry* reg);
int32_t js_registry_size(const js_registry* reg);
/* filter may be NULL or "" for all instances */
js_status js_registry_report(const js_registry* reg, const char* filter,
                             char** out_text);
js_status js_registry_diff(const js_registry* oldr, const js_registry* newr,
                           char** out_text);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* JOBSHOP_C_H */
