#include "jobshop/schedule.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace jobshop {

namespace {

std::string op_name(int job, int op) {
  return std::to_string(job) + "." + std::to_string(op);
}

}  // namespace

int64_t makespan(const Schedule& sched) {
  int64_t best = 0;
  for (const auto& a : sched.assignments) best = std::max(best, a.end);
  return best;
}

ScheduleShapeError::ScheduleShapeError(ScheduleShapeErrorKind kind,
                                       const std::string& what)
    : std::runtime_error(what), kind_(kind) {}

OrdersError::OrdersError(const std::string& what)
    : std::runtime_error(what) {}

CyclicOrdersError::CyclicOrdersError(std::string what,
                                     std::vector<std::pair<int, int>> cycle)
    : std::runtime_error(std::move(what)), cycle_(std::move(cycle)) {}

SolutionJsonError::SolutionJsonError(const std::string& what)
    : std::runtime_error(what) {}

VerificationReport verify(const Instance& inst, const Schedule& sched) {
  // shape first: exactly one assignment per operation of the instance
  std::vector<std::vector<int>> where(inst.job_count());
  for (int i = 0; i < inst.job_count(); ++i)
    where[i].assign(inst.jobs[i].size(), -1);

  for (int k = 0; k < static_cast<int>(sched.assignments.size()); ++k) {
    const auto& a = sched.assignments[k];
    if (a.job < 0 || a.job >= inst.job_count() || a.op < 0 ||
        a.op >= static_cast<int>(inst.jobs[a.job].size()))
      throw ScheduleShapeError(
          ScheduleShapeErrorKind::UnknownOperation,
          "assignment refers to unknown operation " + op_name(a.job, a.op));
    if (where[a.job][a.op] != -1)
      throw ScheduleShapeError(
          ScheduleShapeErrorKind::DuplicateAssignment,
          "operation " + op_name(a.job, a.op) + " assigned twice");
    where[a.job][a.op] = k;
  }
  for (int i = 0; i < inst.job_count(); ++i)
    for (int j = 0; j < static_cast<int>(inst.jobs[i].size()); ++j)
      if (where[i][j] == -1)
        throw ScheduleShapeError(
            ScheduleShapeErrorKind::MissingAssignment,
            "operation " + op_name(i, j) + " has no assignment");

  VerificationReport report;
  report.makespan = makespan(sched);
  auto add = [&report](ViolationKind kind, std::string msg) {
    report.violations.push_back({kind, std::move(msg)});
  };

  for (const auto& a : sched.assignments) {
    if (a.start < 0)
      add(ViolationKind::NegativeStart,
          "operation " + op_name(a.job, a.op) + " starts at " +
              std::to_string(a.start));
    const Alternative* alt = inst.jobs[a.job][a.op].find(a.machine);
    if (alt == nullptr) {
      add(ViolationKind::IncompatibleMachine,
          "operation " + op_name(a.job, a.op) + " cannot run on machine " +
              std::to_string(a.machine));
      continue;  // no duration to check the end against
    }
    if (a.end != a.start + alt->duration)
      add(ViolationKind::WrongEndTime,
          "operation " + op_name(a.job, a.op) + " runs [" +
              std::to_string(a.start) + ", " + std::to_string(a.end) +
              ") but takes " + std::to_string(alt->duration));
  }

  for (int i = 0; i < inst.job_count(); ++i)
    for (int j = 1; j < static_cast<int>(inst.jobs[i].size()); ++j) {
      const auto& prev = sched.assignments[where[i][j - 1]];
      const auto& cur = sched.assignments[where[i][j]];
      if (cur.start < prev.end)
        add(ViolationKind::PrecedenceViolation,
            "operation " + op_name(i, j) + " starts at " +
                std::to_string(cur.start) + " before " + op_name(i, j - 1) +
                " ends at " + std::to_string(prev.end));
    }

  // overlap scan per machine; [start, end) intervals, touching is fine
  std::vector<std::vector<const Assignment*>> per_machine;
  for (const auto& a : sched.assignments) {
    if (a.machine < 0) continue;
    if (a.machine >= static_cast<int>(per_machine.size()))
      per_machine.resize(a.machine + 1);
    per_machine[a.machine].push_back(&a);
  }
  for (auto& ops : per_machine) {
    std::sort(ops.begin(), ops.end(),
              [](const Assignment* x, const Assignment* y) {
                return std::tie(x->start, x->end, x->job, x->op) <
                       std::tie(y->start, y->end, y->job, y->op);
              });
    const Assignment* open = nullptr;
    for (const Assignment* a : ops) {
      if (open != nullptr && a->start < open->end)
        add(ViolationKind::MachineOverlap,
            "operations " + op_name(open->job, open->op) + " and " +
                op_name(a->job, a->op) + " overlap on machine " +
                std::to_string(a->machine));
      if (open == nullptr || a->end > open->end) open = a;
    }
  }

  report.feasible = report.violations.empty();
  return report;
}

std::vector<int64_t> machine_end_times(const Schedule& sched,
                                       int machine_count) {
  std::vector<int64_t> ends(std::max(machine_count, 0), 0);
  for (const auto& a : sched.assignments)
    if (a.machine >= 0 && a.machine < machine_count)
      ends[a.machine] = std::max(ends[a.machine], a.end);
  return ends;
}

MachineOrderSolution parse_orders(std::istream& in) {
  MachineOrderSolution orders;
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::vector<OrderToken> row;
    std::istringstream split(raw);
    std::string tok;
    while (split >> tok) {
      OrderToken t;
      auto dot = tok.find('.');
      std::string job_part = tok.substr(0, dot);
      auto read = [&](const std::string& s, int& out) {
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
        if (ec != std::errc{} || ptr != s.data() + s.size() || out < 0)
          throw OrdersError("line " + std::to_string(number) +
                            ": bad token '" + tok + "'");
      };
      read(job_part, t.job);
      if (dot != std::string::npos) read(tok.substr(dot + 1), t.op);
      row.push_back(t);
    }
    orders.machines.push_back(std::move(row));
  }
  // a trailing newline is not an extra empty machine
  while (!orders.machines.empty() && orders.machines.back().empty())
    orders.machines.pop_back();
  return orders;
}

MachineOrderSolution parse_orders_text(const std::string& text) {
  std::istringstream in(text);
  return parse_orders(in);
}

MachineOrderSolution load_orders(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open orders file: " + path.string());
  return parse_orders(in);
}

std::string serialize_orders(const MachineOrderSolution& orders) {
  std::ostringstream out;
  for (const auto& row : orders.machines) {
    bool first = true;
    for (const auto& tok : row) {
      if (!first) out << ' ';
      first = false;
      out << tok.job;
      if (tok.op >= 0) out << '.' << tok.op;
    }
    out << '\n';
  }
  return out.str();
}

namespace {

// an orders row entry resolved to a concrete operation
struct Placed {
  int job;
  int op;
  int machine;
};

std::vector<Placed> resolve_orders(const Instance& inst,
                                   const MachineOrderSolution& orders,
                                   std::vector<std::vector<int>>& flat_id) {
  if (static_cast<int>(orders.machines.size()) > inst.machine_count)
    throw OrdersError("orders list " + std::to_string(orders.machines.size()) +
                      " machines, instance has " +
                      std::to_string(inst.machine_count));

  flat_id.assign(inst.job_count(), {});
  int next = 0;
  for (int i = 0; i < inst.job_count(); ++i) {
    flat_id[i].assign(inst.jobs[i].size(), 0);
    for (auto& id : flat_id[i]) id = next++;
  }

  std::vector<char> placed_flag(next, 0);
  std::vector<Placed> placed;
  for (int m = 0; m < static_cast<int>(orders.machines.size()); ++m) {
    for (const auto& tok : orders.machines[m]) {
      if (tok.job < 0 || tok.job >= inst.job_count())
        throw OrdersError("unknown job " + std::to_string(tok.job));
      const auto& job = inst.jobs[tok.job];
      int op = tok.op;
      if (op < 0) {
        // bare job token: the job must have exactly one operation that can
        // run here, otherwise the file is ambiguous
        int found = -1;
        for (int j = 0; j < static_cast<int>(job.size()); ++j) {
          if (job[j].find(m) == nullptr) continue;
          if (found != -1)
            throw OrdersError("token " + std::to_string(tok.job) +
                              " on machine " + std::to_string(m) +
                              " is ambiguous, spell out job.op");
          found = j;
        }
        if (found == -1)
          throw OrdersError("job " + std::to_string(tok.job) +
                            " has no operation for machine " +
                            std::to_string(m));
        op = found;
      }
      if (op >= static_cast<int>(job.size()))
        throw OrdersError("unknown operation " + op_name(tok.job, op));
      if (job[op].find(m) == nullptr)
        throw OrdersError("operation " + op_name(tok.job, op) +
                          " cannot run on machine " + std::to_string(m));
      int id = flat_id[tok.job][op];
      if (placed_flag[id])
        throw OrdersError("operation " + op_name(tok.job, op) +
                          " appears twice in the orders");
      placed_flag[id] = 1;
      placed.push_back({tok.job, op, m});
    }
  }
  for (int i = 0; i < inst.job_count(); ++i)
    for (int j = 0; j < static_cast<int>(inst.jobs[i].size()); ++j)
      if (!placed_flag[flat_id[i][j]])
        throw OrdersError("operation " + op_name(i, j) +
                          " is missing from the orders");
  return placed;
}

}  // namespace

Schedule semi_active(const Instance& inst,
                     const MachineOrderSolution& orders) {
  std::vector<std::vector<int>> flat_id;
  std::vector<Placed> placed = resolve_orders(inst, orders, flat_id);

  int n = inst.total_ops();
  // graph over flat ids: job chain edges plus machine sequence edges
  std::vector<int> machine_of(n, -1);
  for (const auto& p : placed) machine_of[flat_id[p.job][p.op]] = p.machine;

  std::vector<std::vector<int>> succ(n);
  std::vector<int> indegree(n, 0);
  std::vector<int> job_pred(n, -1), mach_pred(n, -1);
  auto add_edge = [&](int from, int to) {
    succ[from].push_back(to);
    ++indegree[to];
  };
  for (int i = 0; i < inst.job_count(); ++i)
    for (int j = 1; j < static_cast<int>(inst.jobs[i].size()); ++j) {
      add_edge(flat_id[i][j - 1], flat_id[i][j]);
      job_pred[flat_id[i][j]] = flat_id[i][j - 1];
    }
  {
    std::vector<int> last(inst.machine_count, -1);
    for (const auto& p : placed) {
      int id = flat_id[p.job][p.op];
      if (last[p.machine] != -1) {
        add_edge(last[p.machine], id);
        mach_pred[id] = last[p.machine];
      }
      last[p.machine] = id;
    }
  }

  // longest path in topological order gives the earliest starts
  std::vector<int64_t> start(n, 0), end(n, 0);
  std::deque<int> ready;
  for (int id = 0; id < n; ++id)
    if (indegree[id] == 0) ready.push_back(id);
  std::vector<char> done(n, 0);
  int processed = 0;
  std::vector<int> job_of(n), op_of(n);
  for (int i = 0; i < inst.job_count(); ++i)
    for (int j = 0; j < static_cast<int>(inst.jobs[i].size()); ++j) {
      job_of[flat_id[i][j]] = i;
      op_of[flat_id[i][j]] = j;
    }
  while (!ready.empty()) {
    int id = ready.front();
    ready.pop_front();
    done[id] = 1;
    ++processed;
    int dur =
        inst.jobs[job_of[id]][op_of[id]].find(machine_of[id])->duration;
    end[id] = start[id] + dur;
    for (int nxt : succ[id]) {
      start[nxt] = std::max(start[nxt], end[id]);
      if (--indegree[nxt] == 0) ready.push_back(nxt);
    }
  }

  if (processed != n) {
    // walk predecessors among the stuck operations until one repeats
    int cur = 0;
    while (done[cur]) ++cur;
    std::vector<int> path;
    std::vector<int> seen_at(n, -1);
    while (seen_at[cur] == -1) {
      seen_at[cur] = static_cast<int>(path.size());
      path.push_back(cur);
      int jp = job_pred[cur], mp = mach_pred[cur];
      cur = (jp != -1 && !done[jp]) ? jp : mp;
    }
    std::vector<std::pair<int, int>> cycle;
    for (size_t k = seen_at[cur]; k < path.size(); ++k)
      cycle.push_back({job_of[path[k]], op_of[path[k]]});
    cycle.push_back({job_of[cur], op_of[cur]});
    std::reverse(cycle.begin(), cycle.end());  // follow the arrows forward
    std::ostringstream msg;
    msg << "machine orders deadlock:";
    for (const auto& [job, op] : cycle) msg << ' ' << op_name(job, op);
    throw CyclicOrdersError(msg.str(), std::move(cycle));
  }

  Schedule sched;
  sched.instance_name = inst.name;
  for (int i = 0; i < inst.job_count(); ++i)
    for (int j = 0; j < static_cast<int>(inst.jobs[i].size()); ++j) {
      int id = flat_id[i][j];
      sched.assignments.push_back(
          {i, j, machine_of[id], start[id], end[id]});
    }
  return sched;
}

Schedule schedule_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw SolutionJsonError(std::string("solution is not valid JSON: ") +
                            e.what());
  }
  if (!doc.is_object() || !doc.contains("instance") ||
      !doc.contains("makespan") || !doc.contains("assignments") ||
      !doc["assignments"].is_array())
    throw SolutionJsonError(
        "solution needs instance, makespan and assignments fields");

  Schedule sched;
  try {
    sched.instance_name = doc["instance"].get<std::string>();
    for (const auto& item : doc["assignments"]) {
      Assignment a;
      a.job = item.at("job").get<int>();
      a.op = item.at("op").get<int>();
      a.machine = item.at("machine").get<int>();
      a.start = item.at("start").get<int64_t>();
      a.end = item.at("end").get<int64_t>();
      sched.assignments.push_back(a);
    }
  } catch (const nlohmann::json::exception& e) {
    throw SolutionJsonError(std::string("bad assignment entry: ") + e.what());
  }
  int64_t declared = doc["makespan"].is_number_integer()
                         ? doc["makespan"].get<int64_t>()
                         : -1;
  if (declared != makespan(sched))
    throw SolutionJsonError("declared makespan " + std::to_string(declared) +
                            " does not match assignments (" +
                            std::to_string(makespan(sched)) + ")");
  return sched;
}

std::string schedule_to_json(const Schedule& sched) {
  Schedule sorted = sched;
  std::sort(sorted.assignments.begin(), sorted.assignments.end(),
            [](const Assignment& x, const Assignment& y) {
              return std::tie(x.job, x.op) < std::tie(y.job, y.op);
            });
  nlohmann::json doc;
  doc["instance"] = sorted.instance_name;
  doc["makespan"] = makespan(sorted);
  doc["assignments"] = nlohmann::json::array();
  for (const auto& a : sorted.assignments)
    doc["assignments"].push_back({{"job", a.job},
                                  {"op", a.op},
                                  {"machine", a.machine},
                                  {"start", a.start},
                                  {"end", a.end}});
  return doc.dump(2) + "\n";
}

Schedule load_schedule(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open solution file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return schedule_from_json(buffer.str());
}

void save_schedule(const std::filesystem::path& path, const Schedule& sched) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot write solution file: " + path.string());
  out << schedule_to_json(sched);
}

}  // namespace jobshop
