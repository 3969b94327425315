#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "jobshop/instance.hpp"
#include "jobshop/schedule.hpp"

namespace jobshop {

enum class SolveMode { Opt, Sat };
enum class PropagationLevel { Basic, OverloadCheck };

struct SolveConfig {
  SolveMode mode = SolveMode::Opt;
  // wall clock budget in seconds, <= 0 means unbounded
  double timeout_s = 0.0;
  // Sat mode only: find any schedule finishing by this time
  int64_t threshold = -1;
  int workers = 1;
  uint64_t seed = 1;
  PropagationLevel propagation = PropagationLevel::OverloadCheck;
};

class InvalidConfigError : public std::runtime_error {
 public:
  explicit InvalidConfigError(const std::string& what);
};

enum class SolveStatus { Optimal, Feasible, Infeasible, Unknown };

const char* to_string(SolveStatus status);

struct TracePoint {
  double elapsed_s = 0.0;
  int64_t lb = 0;
  std::optional<int64_t> ub;
};

struct SolveReport {
  SolveStatus status = SolveStatus::Unknown;
  int64_t best_lb = 0;
  std::optional<int64_t> best_ub;
  std::optional<Schedule> best_schedule;
  // one point per bound improvement, lb never decreasing, ub never
  // increasing
  std::vector<TracePoint> trace;
  uint64_t decisions = 0;
  uint64_t failures = 0;
  uint64_t restarts = 0;
};

// Branch and bound over machine choices and pairwise machine orderings.
// Opt minimizes the makespan anytime-style (incumbents tighten the cap as
// they are found); Sat answers "is there a schedule finishing by
// `threshold`", where exhausting the tree certifies there is none.
SolveReport solve(const Instance& inst, const SolveConfig& config);

struct LadderResult {
  // makespans strictly below this are proven impossible
  int64_t certified_lb = 0;
  SolveStatus last_status = SolveStatus::Unknown;
  std::optional<Schedule> schedule;
  std::vector<TracePoint> trace;
};

// Runs Sat probes at start_threshold, start_threshold + 1, ... until one
// is feasible or undecided. Every refuted threshold T lifts the certified
// bound to T + 1.
LadderResult sat_probe_ladder(const Instance& inst, int64_t start_threshold,
                              const SolveConfig& config);

// CSV with header elapsed_s,lb,ub; ub column empty until one exists.
std::string trace_to_csv(const std::vector<TracePoint>& trace);

// Canonical JSON form of a report. With include_elapsed = false all wall
// clock readings are dropped, leaving only run-to-run reproducible
// content (used to compare repeated runs byte for byte).
std::string report_to_json(const SolveReport& report,
                           bool include_elapsed = true);

// ---- search internals, exposed so propagation can be tested directly ----

enum class PropagateResult { Fixpoint, Pruned };

// Per-operation start window [est, lct - duration], machine candidate
// sets, chosen machines and pairwise machine orderings of one search node.
class SearchState {
 public:
  explicit SearchState(const Instance& inst);

  const Instance& instance() const { return *inst_; }
  int op_id(int job, int op) const;
  int64_t est(int id) const { return est_[id]; }
  int64_t lct(int id) const { return lct_[id]; }
  bool is_candidate(int id, int machine) const;
  int candidate_count(int id) const { return cand_count_[id]; }
  // -1 until the machine is fixed
  int allocation(int id) const { return alloc_[id]; }
  // +1 when a-before-b is decided, -1 for b-before-a, 0 otherwise
  int orientation(int id_a, int id_b) const;

  void restrict_window(int id, int64_t est, int64_t lct);
  void remove_candidate(int id, int machine);
  void allocate(int id, int machine);
  void orient(int id_a, int id_b);

  int total_ops() const { return static_cast<int>(est_.size()); }

 private:
  friend PropagateResult propagate(SearchState&, int64_t, PropagationLevel);
  friend class Search;

  int duration_on(int id, int machine) const;
  int min_duration(int id) const;

  // Every mutation goes through these and lands on the trail, so a search
  // can rewind to any earlier mark.
  void set_est(int id, int64_t value);
  void set_lct(int id, int64_t value);
  void drop_candidate(int id, int machine);
  void do_allocate(int id, int machine);
  void do_orient(int id_a, int id_b);
  size_t trail_mark() const { return trail_.size(); }
  void undo_to(size_t mark);

  enum class ChangeKind : int8_t { Est, Lct, Candidate, Alloc, Order };
  struct Change {
    ChangeKind kind;
    int a = 0;
    int b = 0;
    int64_t old_value = 0;
  };

  const Instance* inst_;
  std::vector<int64_t> est_;
  std::vector<int64_t> lct_;
  std::vector<std::vector<char>> candidate_;  // [id][machine]
  std::vector<int> cand_count_;
  std::vector<int> alloc_;
  std::vector<std::vector<int>> machine_ops_;  // allocated ids per machine
  std::vector<std::vector<int8_t>> order_;     // [a][b] in {-1, 0, +1}
  std::vector<int> job_of_;
  std::vector<int> op_of_;
  std::vector<int> job_first_;  // flat id of (job, 0)
  std::vector<Change> trail_;
};

// Tightens every window under the rule "all work done by makespan_ub".
// Returns Pruned when some operation can no longer fit anywhere; a
// feasible schedule inside the windows is never cut off.
PropagateResult propagate(SearchState& state, int64_t makespan_ub,
                          PropagationLevel level);

}  // namespace jobshop
