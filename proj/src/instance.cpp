#include "jobshop/instance.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace jobshop {

int OperationSpec::min_duration() const {
  int best = std::numeric_limits<int>::max();
  for (const auto& alt : alternatives) best = std::min(best, alt.duration);
  return best;
}

int OperationSpec::max_duration() const {
  int best = 0;
  for (const auto& alt : alternatives) best = std::max(best, alt.duration);
  return best;
}

const Alternative* OperationSpec::find(int machine) const {
  for (const auto& alt : alternatives)
    if (alt.machine == machine) return &alt;
  return nullptr;
}

int Instance::total_ops() const {
  int n = 0;
  for (const auto& job : jobs) n += static_cast<int>(job.size());
  return n;
}

bool Instance::is_jssp() const {
  for (const auto& job : jobs)
    for (const auto& op : job)
      if (op.alternatives.size() != 1) return false;
  return true;
}

Horizon horizon(const Instance& inst) {
  int64_t total = 0;
  for (const auto& job : inst.jobs)
    for (const auto& op : job) total += op.max_duration();
  return Horizon{total};
}

std::string serialize(const Instance& inst) {
  std::ostringstream out;
  out << inst.job_count() << ' ' << inst.machine_count << '\n';
  for (const auto& job : inst.jobs) {
    out << job.size();
    for (const auto& op : job) {
      out << ' ' << op.alternatives.size();
      for (const auto& alt : op.alternatives)
        out << ' ' << alt.machine + 1 << ' ' << alt.duration;
    }
    out << '\n';
  }
  return out.str();
}

void validate(const Instance& inst) {
  auto fail = [](const std::string& msg) { throw std::invalid_argument(msg); };
  if (inst.machine_count < 1) fail("machine count must be positive");
  if (inst.jobs.empty()) fail("instance has no jobs");
  for (int i = 0; i < inst.job_count(); ++i) {
    const auto& job = inst.jobs[i];
    if (job.empty()) fail("job " + std::to_string(i) + " has no operations");
    for (int j = 0; j < static_cast<int>(job.size()); ++j) {
      const auto& op = job[j];
      if (op.job != i || op.op != j)
        fail("operation indices disagree with their position");
      if (op.alternatives.empty())
        fail("operation " + std::to_string(i) + "." + std::to_string(j) +
             " has no machine options");
      std::vector<char> seen(inst.machine_count, 0);
      for (const auto& alt : op.alternatives) {
        if (alt.machine < 0 || alt.machine >= inst.machine_count)
          fail("machine index out of range");
        if (alt.duration < 1) fail("durations must be at least 1");
        if (seen[alt.machine]) fail("duplicate machine option");
        seen[alt.machine] = 1;
      }
    }
  }
}

}  // namespace jobshop
