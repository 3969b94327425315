#include "jobshop/solver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <memory>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>
#include <tuple>

#include "jobshop/bounds.hpp"
#include "json.hpp"

namespace jobshop {

InvalidConfigError::InvalidConfigError(const std::string& what)
    : std::runtime_error(what) {}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Feasible: return "feasible";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Unknown: return "unknown";
  }
  return "unknown";
}

// ---------------------------------------------------------------- state --

SearchState::SearchState(const Instance& inst) : inst_(&inst) {
  int n = inst.total_ops();
  est_.assign(n, 0);
  lct_.assign(n, horizon(inst).value);
  candidate_.assign(n, std::vector<char>(inst.machine_count, 0));
  cand_count_.assign(n, 0);
  alloc_.assign(n, -1);
  machine_ops_.assign(inst.machine_count, {});
  order_.assign(n, std::vector<int8_t>(n, 0));
  job_of_.resize(n);
  op_of_.resize(n);
  job_first_.resize(inst.job_count());
  int id = 0;
  for (int i = 0; i < inst.job_count(); ++i) {
    job_first_[i] = id;
    for (int j = 0; j < static_cast<int>(inst.jobs[i].size()); ++j, ++id) {
      job_of_[id] = i;
      op_of_[id] = j;
      for (const auto& alt : inst.jobs[i][j].alternatives)
        candidate_[id][alt.machine] = 1;
      cand_count_[id] = static_cast<int>(inst.jobs[i][j].alternatives.size());
    }
  }
}

int SearchState::op_id(int job, int op) const { return job_first_[job] + op; }

bool SearchState::is_candidate(int id, int machine) const {
  return candidate_[id][machine] != 0;
}

int SearchState::orientation(int id_a, int id_b) const {
  return order_[id_a][id_b];
}

int SearchState::duration_on(int id, int machine) const {
  const Alternative* alt =
      inst_->jobs[job_of_[id]][op_of_[id]].find(machine);
  if (alt == nullptr)
    throw std::logic_error("duration requested for an incompatible machine");
  return alt->duration;
}

int SearchState::min_duration(int id) const {
  int best = std::numeric_limits<int>::max();
  for (const auto& alt : inst_->jobs[job_of_[id]][op_of_[id]].alternatives)
    if (candidate_[id][alt.machine]) best = std::min(best, alt.duration);
  return best == std::numeric_limits<int>::max() ? 0 : best;
}

void SearchState::set_est(int id, int64_t value) {
  if (value == est_[id]) return;
  trail_.push_back({ChangeKind::Est, id, 0, est_[id]});
  est_[id] = value;
}

void SearchState::set_lct(int id, int64_t value) {
  if (value == lct_[id]) return;
  trail_.push_back({ChangeKind::Lct, id, 0, lct_[id]});
  lct_[id] = value;
}

void SearchState::drop_candidate(int id, int machine) {
  if (!candidate_[id][machine]) return;
  trail_.push_back({ChangeKind::Candidate, id, machine, 0});
  candidate_[id][machine] = 0;
  --cand_count_[id];
}

void SearchState::do_allocate(int id, int machine) {
  trail_.push_back({ChangeKind::Alloc, id, machine, 0});
  alloc_[id] = machine;
  machine_ops_[machine].push_back(id);
}

void SearchState::do_orient(int id_a, int id_b) {
  trail_.push_back({ChangeKind::Order, id_a, id_b, 0});
  order_[id_a][id_b] = 1;
  order_[id_b][id_a] = -1;
}

void SearchState::undo_to(size_t mark) {
  while (trail_.size() > mark) {
    const Change& c = trail_.back();
    switch (c.kind) {
      case ChangeKind::Est: est_[c.a] = c.old_value; break;
      case ChangeKind::Lct: lct_[c.a] = c.old_value; break;
      case ChangeKind::Candidate:
        candidate_[c.a][c.b] = 1;
        ++cand_count_[c.a];
        break;
      case ChangeKind::Alloc:
        alloc_[c.a] = -1;
        machine_ops_[c.b].pop_back();
        break;
      case ChangeKind::Order:
        order_[c.a][c.b] = 0;
        order_[c.b][c.a] = 0;
        break;
    }
    trail_.pop_back();
  }
}

void SearchState::restrict_window(int id, int64_t est, int64_t lct) {
  if (est > est_[id]) set_est(id, est);
  if (lct < lct_[id]) set_lct(id, lct);
}

void SearchState::remove_candidate(int id, int machine) {
  drop_candidate(id, machine);
}

void SearchState::allocate(int id, int machine) {
  if (!candidate_[id][machine])
    throw std::logic_error("machine is not a candidate for this operation");
  if (alloc_[id] != -1)
    throw std::logic_error("operation already allocated");
  for (const auto& alt : inst_->jobs[job_of_[id]][op_of_[id]].alternatives)
    if (alt.machine != machine && candidate_[id][alt.machine])
      drop_candidate(id, alt.machine);
  do_allocate(id, machine);
}

void SearchState::orient(int id_a, int id_b) {
  if (order_[id_a][id_b] == 1) return;
  if (order_[id_a][id_b] == -1)
    throw std::logic_error("pair already ordered the other way");
  do_orient(id_a, id_b);
}

// ----------------------------------------------------------- propagation --

PropagateResult propagate(SearchState& s, int64_t makespan_ub,
                          PropagationLevel level) {
  const Instance& inst = *s.inst_;
  int n = s.total_ops();
  for (int id = 0; id < n; ++id)
    if (s.lct_[id] > makespan_ub) s.set_lct(id, makespan_ub);

  bool changed = true;
  while (changed) {
    changed = false;

    // work must wait for the previous task of its job, and leave room for
    // the following ones
    for (int i = 0; i < inst.job_count(); ++i) {
      int base = s.job_first_[i];
      int len = static_cast<int>(inst.jobs[i].size());
      for (int j = 1; j < len; ++j) {
        int64_t lo = s.est_[base + j - 1] + s.min_duration(base + j - 1);
        if (lo > s.est_[base + j]) {
          s.set_est(base + j, lo);
          changed = true;
        }
      }
      for (int j = len - 2; j >= 0; --j) {
        int64_t hi = s.lct_[base + j + 1] - s.min_duration(base + j + 1);
        if (hi < s.lct_[base + j]) {
          s.set_lct(base + j, hi);
          changed = true;
        }
      }
    }

    // decided machine orderings act like extra precedences
    for (int m = 0; m < inst.machine_count; ++m) {
      const auto& ops = s.machine_ops_[m];
      for (size_t x = 0; x < ops.size(); ++x)
        for (size_t y = x + 1; y < ops.size(); ++y) {
          int a = ops[x], b = ops[y];
          int dir = s.order_[a][b];
          if (dir == 0) continue;
          if (dir == -1) std::swap(a, b);
          int64_t lo = s.est_[a] + s.duration_on(a, m);
          if (lo > s.est_[b]) {
            s.set_est(b, lo);
            changed = true;
          }
          int64_t hi = s.lct_[b] - s.duration_on(b, m);
          if (hi < s.lct_[a]) {
            s.set_lct(a, hi);
            changed = true;
          }
        }
    }

    // drop machine options the window no longer fits; a single survivor
    // is a forced allocation, none is a dead end
    for (int id = 0; id < n; ++id) {
      const auto& op = inst.jobs[s.job_of_[id]][s.op_of_[id]];
      for (const auto& alt : op.alternatives) {
        if (!s.candidate_[id][alt.machine]) continue;
        if (s.est_[id] + alt.duration > s.lct_[id]) {
          s.drop_candidate(id, alt.machine);
          changed = true;
        }
      }
      if (s.cand_count_[id] == 0) return PropagateResult::Pruned;
      if (s.cand_count_[id] == 1 && s.alloc_[id] == -1) {
        for (const auto& alt : op.alternatives)
          if (s.candidate_[id][alt.machine]) {
            s.do_allocate(id, alt.machine);
            break;
          }
        changed = true;
      }
    }

    // a pair whose windows admit only one ordering gets that ordering;
    // windows admitting neither are a dead end
    for (int m = 0; m < inst.machine_count; ++m) {
      const auto& ops = s.machine_ops_[m];
      for (size_t x = 0; x < ops.size(); ++x)
        for (size_t y = x + 1; y < ops.size(); ++y) {
          int a = ops[x], b = ops[y];
          if (s.order_[a][b] != 0) continue;
          int da = s.duration_on(a, m);
          int db = s.duration_on(b, m);
          bool ab = s.est_[a] + da + db <= s.lct_[b];
          bool ba = s.est_[b] + db + da <= s.lct_[a];
          if (!ab && !ba) return PropagateResult::Pruned;
          if (!ab) {
            s.do_orient(b, a);
            changed = true;
          } else if (!ba) {
            s.do_orient(a, b);
            changed = true;
          }
        }
    }
  }

  if (level == PropagationLevel::OverloadCheck) {
    // per machine: work that must fit between some release a and some
    // deadline b may not exceed b - a
    for (int m = 0; m < inst.machine_count; ++m) {
      std::vector<int> ops = s.machine_ops_[m];
      if (ops.size() < 2) continue;
      std::sort(ops.begin(), ops.end(), [&s](int a, int b) {
        return std::tie(s.est_[b], a) < std::tie(s.est_[a], b);
      });
      std::vector<int64_t> deadlines;
      deadlines.reserve(ops.size());
      for (int id : ops) deadlines.push_back(s.lct_[id]);
      std::sort(deadlines.begin(), deadlines.end());
      deadlines.erase(std::unique(deadlines.begin(), deadlines.end()),
                      deadlines.end());
      for (int64_t b : deadlines) {
        int64_t sum = 0;
        for (int id : ops) {
          if (s.lct_[id] > b) continue;
          sum += s.duration_on(id, m);
          if (sum > b - s.est_[id]) return PropagateResult::Pruned;
        }
      }
    }
  }
  return PropagateResult::Fixpoint;
}

// ---------------------------------------------------------------- search --

namespace {

double seconds_between(std::chrono::steady_clock::time_point from,
                       std::chrono::steady_clock::time_point to) {
  return std::chrono::duration<double>(to - from).count();
}

uint64_t luby(uint64_t x) {
  // 1 1 2 1 1 2 4 1 1 2 1 1 2 4 8 ..., x counts from 0
  uint64_t size = 1, seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) / 2;
    --seq;
    x %= size;
  }
  return uint64_t{1} << seq;
}

}  // namespace

constexpr int64_t kNoUb = std::numeric_limits<int64_t>::max();

// bounds cell shared by all workers; only ever merges improvements
struct SharedBounds {
  std::chrono::steady_clock::time_point t0;
  std::atomic<int64_t> lb{0};
  std::atomic<int64_t> ub{kNoUb};
  std::atomic<bool> stop{false};
  std::atomic<bool> proved{false};
  std::atomic<bool> refuted{false};
  std::mutex mu;
  std::optional<Schedule> schedule;
  std::vector<TracePoint> trace;

  double elapsed() const {
    return seconds_between(t0, std::chrono::steady_clock::now());
  }
  std::optional<int64_t> ub_opt() const {
    int64_t u = ub.load();
    return u == kNoUb ? std::optional<int64_t>{} : std::optional<int64_t>{u};
  }

  void post_lb(int64_t v) {
    std::lock_guard<std::mutex> lock(mu);
    if (v <= lb.load()) return;
    lb.store(v);
    trace.push_back({elapsed(), v, ub_opt()});
    if (ub.load() != kNoUb && v >= ub.load()) {
      proved.store(true);
      stop.store(true);
    }
  }

  void post_ub(int64_t v, Schedule sched) {
    std::lock_guard<std::mutex> lock(mu);
    if (v >= ub.load()) return;
    ub.store(v);
    schedule = std::move(sched);
    trace.push_back({elapsed(), lb.load(), v});
    if (lb.load() >= v) {
      proved.store(true);
      stop.store(true);
    }
  }

  // the tree is exhausted: nothing beats the incumbent
  void post_proof() {
    std::lock_guard<std::mutex> lock(mu);
    if (ub.load() == kNoUb) return;
    if (lb.load() < ub.load()) {
      lb.store(ub.load());
      trace.push_back({elapsed(), lb.load(), ub_opt()});
    }
    proved.store(true);
    stop.store(true);
  }

  // the tree is exhausted under the threshold: no schedule fits it
  void post_refuted(int64_t threshold) {
    std::lock_guard<std::mutex> lock(mu);
    if (threshold + 1 > lb.load()) {
      lb.store(threshold + 1);
      trace.push_back({elapsed(), lb.load(), ub_opt()});
    }
    refuted.store(true);
    stop.store(true);
  }
};

class Search {
 public:
  Search(const Instance& inst, const SolveConfig& cfg, SharedBounds& shared,
         uint64_t seed, bool randomized,
         std::chrono::steady_clock::time_point deadline, bool has_deadline)
      : inst_(inst),
        cfg_(cfg),
        shared_(shared),
        rng_(seed),
        randomized_(randomized),
        deadline_(deadline),
        has_deadline_(has_deadline),
        state_(inst),
        horizon_(horizon(inst).value) {}

  void run();

  uint64_t decisions = 0;
  uint64_t failures = 0;
  uint64_t restarts = 0;

 private:
  enum class Outcome { Exhausted, Budget, Aborted, Found };

  struct Node {
    size_t mark = 0;
    bool alloc = false;
    int op = -1;
    std::vector<int> machines;
    size_t next = 0;
    int a = -1, b = -1;  // orientation branch, preferred direction first
    int tried = 0;
  };

  int64_t cap() const {
    if (cfg_.mode == SolveMode::Sat) return cfg_.threshold;
    int64_t u = shared_.ub.load(std::memory_order_relaxed);
    return u == kNoUb ? horizon_ : u - 1;
  }

  bool should_stop() const {
    if (shared_.stop.load(std::memory_order_relaxed)) return true;
    return has_deadline_ && std::chrono::steady_clock::now() >= deadline_;
  }

  bool choose_alloc(int& out);
  bool choose_pair(int& out_a, int& out_b);
  std::vector<int> machine_values(int id);
  void harvest();
  Outcome run_tree(uint64_t budget);

  const Instance& inst_;
  const SolveConfig& cfg_;
  SharedBounds& shared_;
  std::mt19937_64 rng_;
  bool randomized_;
  std::chrono::steady_clock::time_point deadline_;
  bool has_deadline_;
  SearchState state_;
  int64_t horizon_;
};

bool Search::choose_alloc(int& out) {
  int n = state_.total_ops();
  int best = -1;
  int64_t best_est = 0;
  int best_dur = 0;
  int ties = 0;
  for (int id = 0; id < n; ++id) {
    if (state_.alloc_[id] != -1) continue;
    int64_t e = state_.est_[id];
    int d = state_.min_duration(id);
    if (best == -1 || e < best_est || (e == best_est && d > best_dur)) {
      best = id;
      best_est = e;
      best_dur = d;
      ties = 1;
    } else if (e == best_est && d == best_dur) {
      // flat ids follow (job, op) order, so keeping the first tie is the
      // lexicographic rule; randomized runs pick uniformly instead
      ++ties;
      if (randomized_ && rng_() % ties == 0) best = id;
    }
  }
  out = best;
  return best != -1;
}

std::vector<int> Search::machine_values(int id) {
  struct Option {
    int duration;
    uint64_t shuffle;
    int machine;
  };
  std::vector<Option> options;
  const auto& op = inst_.jobs[state_.job_of_[id]][state_.op_of_[id]];
  for (const auto& alt : op.alternatives)
    if (state_.candidate_[id][alt.machine])
      options.push_back(
          {alt.duration, randomized_ ? rng_() : 0, alt.machine});
  std::sort(options.begin(), options.end(), [](const Option& x, const Option& y) {
    return std::tie(x.duration, x.shuffle, x.machine) <
           std::tie(y.duration, y.shuffle, y.machine);
  });
  std::vector<int> machines;
  machines.reserve(options.size());
  for (const auto& o : options) machines.push_back(o.machine);
  return machines;
}

bool Search::choose_pair(int& out_a, int& out_b) {
  using Key = std::tuple<int64_t, int64_t, int, int, int>;
  bool found = false;
  Key best_key{};
  int best_a = -1, best_b = -1;
  for (int m = 0; m < inst_.machine_count; ++m) {
    std::vector<int> ids = state_.machine_ops_[m];
    std::sort(ids.begin(), ids.end());
    for (size_t x = 0; x < ids.size(); ++x)
      for (size_t y = x + 1; y < ids.size(); ++y) {
        int a = ids[x], b = ids[y];
        if (state_.order_[a][b] != 0) continue;
        Key key{std::min(state_.est_[a], state_.est_[b]),
                std::max(state_.est_[a], state_.est_[b]), m, a, b};
        if (!found || key < best_key) {
          found = true;
          best_key = key;
          best_a = a;
          best_b = b;
        }
      }
  }
  if (!found) return false;
  // try the earlier-starting side first
  bool a_first = state_.est_[best_a] <= state_.est_[best_b];
  if (state_.est_[best_a] == state_.est_[best_b] && randomized_ &&
      (rng_() & 1))
    a_first = false;
  out_a = a_first ? best_a : best_b;
  out_b = a_first ? best_b : best_a;
  return true;
}

void Search::harvest() {
  Schedule sched;
  sched.instance_name = inst_.name;
  int n = state_.total_ops();
  sched.assignments.reserve(n);
  for (int id = 0; id < n; ++id) {
    int m = state_.alloc_[id];
    int d = state_.duration_on(id, m);
    sched.assignments.push_back({state_.job_of_[id], state_.op_of_[id], m,
                                 state_.est_[id], state_.est_[id] + d});
  }
  // never publish junk, whatever the search got wrong
  VerificationReport rep = verify(inst_, sched);
  if (!rep.feasible) return;
  shared_.post_ub(rep.makespan, std::move(sched));
}

Search::Outcome Search::run_tree(uint64_t budget) {
  uint64_t fails_this_run = 0;
  std::vector<Node> stack;
  bool descend = true;
  while (true) {
    if (should_stop()) return Outcome::Aborted;
    if (descend) {
      descend = false;
      int id, a, b;
      if (choose_alloc(id)) {
        Node node;
        node.mark = state_.trail_mark();
        node.alloc = true;
        node.op = id;
        node.machines = machine_values(id);
        stack.push_back(std::move(node));
      } else if (choose_pair(a, b)) {
        Node node;
        node.mark = state_.trail_mark();
        node.a = a;
        node.b = b;
        stack.push_back(std::move(node));
      } else {
        harvest();
        if (cfg_.mode == SolveMode::Sat) return Outcome::Found;
        // minimizing: the leaf tightened the cap, keep searching
      }
    }
    bool advanced = false;
    while (!stack.empty() && !advanced) {
      Node& top = stack.back();
      state_.undo_to(top.mark);
      bool applied = false;
      if (top.alloc) {
        if (top.next < top.machines.size()) {
          state_.allocate(top.op, top.machines[top.next++]);
          applied = true;
        }
      } else if (top.tried == 0) {
        state_.do_orient(top.a, top.b);
        top.tried = 1;
        applied = true;
      } else if (top.tried == 1) {
        state_.do_orient(top.b, top.a);
        top.tried = 2;
        applied = true;
      }
      if (!applied) {
        stack.pop_back();
        continue;
      }
      ++decisions;
      if (propagate(state_, cap(), cfg_.propagation) ==
          PropagateResult::Fixpoint) {
        advanced = true;
        break;
      }
      ++failures;
      if (++fails_this_run > budget) return Outcome::Budget;
      if (should_stop()) return Outcome::Aborted;
    }
    if (!advanced) return Outcome::Exhausted;
    descend = true;
  }
}

void Search::run() {
  size_t root_mark = state_.trail_mark();
  uint64_t luby_index = 0;
  bool posted_root_lb = false;
  while (!should_stop()) {
    if (propagate(state_, cap(), cfg_.propagation) ==
        PropagateResult::Pruned) {
      state_.undo_to(root_mark);
      if (cfg_.mode == SolveMode::Sat)
        shared_.post_refuted(cfg_.threshold);
      else
        shared_.post_proof();
      return;
    }
    if (!posted_root_lb) {
      int64_t bound = 0;
      for (int id = 0; id < state_.total_ops(); ++id)
        bound =
            std::max(bound, state_.est_[id] + state_.min_duration(id));
      shared_.post_lb(bound);
      posted_root_lb = true;
    }
    Outcome out = run_tree(128 * luby(luby_index++));
    state_.undo_to(root_mark);
    switch (out) {
      case Outcome::Exhausted:
        if (cfg_.mode == SolveMode::Sat)
          shared_.post_refuted(cfg_.threshold);
        else
          shared_.post_proof();
        return;
      case Outcome::Found:
        shared_.stop.store(true);
        return;
      case Outcome::Aborted:
        return;
      case Outcome::Budget:
        ++restarts;
        randomized_ = true;
        break;
    }
  }
}

// ----------------------------------------------------------------- solve --

SolveReport solve(const Instance& inst, const SolveConfig& cfg) {
  if (cfg.workers < 1) throw InvalidConfigError("workers must be at least 1");
  if (std::isnan(cfg.timeout_s))
    throw InvalidConfigError("timeout is not a number");
  if (cfg.mode == SolveMode::Sat && cfg.threshold < 0)
    throw InvalidConfigError("sat mode needs a threshold of at least 0");
  validate(inst);

  SharedBounds shared;
  shared.t0 = std::chrono::steady_clock::now();
  shared.post_lb(lb_best(inst));

  SolveReport report;
  if (cfg.mode == SolveMode::Sat && shared.lb.load() > cfg.threshold) {
    // the analytic bound already rules the threshold out, no search needed
    shared.post_refuted(cfg.threshold);
  } else {
    bool has_deadline = cfg.timeout_s > 0;
    auto deadline = shared.t0;
    if (has_deadline)
      deadline += std::chrono::duration_cast<
          std::chrono::steady_clock::duration>(
          std::chrono::duration<double>(cfg.timeout_s));
    std::vector<std::unique_ptr<Search>> searches;
    for (int w = 0; w < cfg.workers; ++w)
      searches.push_back(std::make_unique<Search>(
          inst, cfg, shared, cfg.seed + static_cast<uint64_t>(w), w > 0,
          deadline, has_deadline));
    if (cfg.workers == 1) {
      searches[0]->run();
    } else {
      std::vector<std::thread> threads;
      threads.reserve(searches.size());
      for (auto& s : searches)
        threads.emplace_back([worker = s.get()] { worker->run(); });
      for (auto& t : threads) t.join();
    }
    for (const auto& s : searches) {
      report.decisions += s->decisions;
      report.failures += s->failures;
      report.restarts += s->restarts;
    }
  }

  report.best_lb = shared.lb.load();
  report.best_ub = shared.ub_opt();
  {
    std::lock_guard<std::mutex> lock(shared.mu);
    report.best_schedule = shared.schedule;
    report.trace = shared.trace;
  }
  if (cfg.mode == SolveMode::Sat && shared.refuted.load())
    report.status = SolveStatus::Infeasible;
  else if (report.best_ub && report.best_lb == *report.best_ub)
    report.status = SolveStatus::Optimal;
  else if (report.best_ub)
    report.status = SolveStatus::Feasible;
  else
    report.status = SolveStatus::Unknown;
  return report;
}

LadderResult sat_probe_ladder(const Instance& inst, int64_t start_threshold,
                              const SolveConfig& cfg) {
  if (start_threshold < 0)
    throw InvalidConfigError("start threshold must be at least 0");
  LadderResult result;
  result.certified_lb = lb_best(inst);
  auto t0 = std::chrono::steady_clock::now();
  bool has_deadline = cfg.timeout_s > 0;
  auto elapsed = [&t0] {
    return seconds_between(t0, std::chrono::steady_clock::now());
  };
  result.trace.push_back({elapsed(), result.certified_lb, std::nullopt});

  int64_t threshold = start_threshold;
  while (true) {
    // thresholds under the certified bound are already refuted
    if (threshold < result.certified_lb) threshold = result.certified_lb;
    SolveConfig probe = cfg;
    probe.mode = SolveMode::Sat;
    probe.threshold = threshold;
    if (has_deadline) {
      double left = cfg.timeout_s - elapsed();
      if (left <= 0) {
        result.last_status = SolveStatus::Unknown;
        break;
      }
      probe.timeout_s = left;
    }
    SolveReport r = solve(inst, probe);
    result.last_status = r.status;
    if (r.status == SolveStatus::Infeasible) {
      result.certified_lb = std::max(result.certified_lb, threshold + 1);
      result.trace.push_back({elapsed(), result.certified_lb, std::nullopt});
      ++threshold;
      continue;
    }
    if (r.best_ub) {
      result.certified_lb = std::max(result.certified_lb, r.best_lb);
      result.schedule = r.best_schedule;
      result.trace.push_back({elapsed(), result.certified_lb, r.best_ub});
    }
    break;
  }
  return result;
}

std::string trace_to_csv(const std::vector<TracePoint>& trace) {
  std::ostringstream out;
  out << "elapsed_s,lb,ub\n";
  out << std::fixed << std::setprecision(3);
  for (const auto& p : trace) {
    out << p.elapsed_s << ',' << p.lb << ',';
    if (p.ub) out << *p.ub;
    out << '\n';
  }
  return out.str();
}

std::string report_to_json(const SolveReport& report, bool include_elapsed) {
  nlohmann::json doc;
  doc["status"] = to_string(report.status);
  doc["lb"] = report.best_lb;
  if (report.best_ub)
    doc["ub"] = *report.best_ub;
  else
    doc["ub"] = nullptr;
  doc["decisions"] = report.decisions;
  doc["failures"] = report.failures;
  doc["restarts"] = report.restarts;
  doc["trace"] = nlohmann::json::array();
  for (const auto& p : report.trace) {
    nlohmann::json point;
    if (include_elapsed) point["elapsed_s"] = p.elapsed_s;
    point["lb"] = p.lb;
    if (p.ub)
      point["ub"] = *p.ub;
    else
      point["ub"] = nullptr;
    doc["trace"].push_back(point);
  }
  if (report.best_schedule)
    doc["schedule"] = nlohmann::json::parse(
        schedule_to_json(*report.best_schedule));
  return doc.dump(2) + "\n";
}

}  // namespace jobshop
