#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace jobshop {

// One (machine, duration) option for an operation.
struct Alternative {
  int machine = 0;
  int duration = 0;

  friend bool operator==(const Alternative&, const Alternative&) = default;
};

// The j-th task of job i. Runs on exactly one machine chosen from
// `alternatives`; the duration depends on that choice. Machines are 0-based
// in memory regardless of how the input file numbered them.
struct OperationSpec {
  int job = 0;
  int op = 0;
  std::vector<Alternative> alternatives;

  int min_duration() const;
  int max_duration() const;
  // nullptr when the machine is not an option for this operation
  const Alternative* find(int machine) const;

  friend bool operator==(const OperationSpec&, const OperationSpec&) = default;
};

struct Instance {
  std::string name;
  int machine_count = 0;
  // jobs[i][j] is operation j of job i; order within a job is the
  // processing order.
  std::vector<std::vector<OperationSpec>> jobs;

  int job_count() const { return static_cast<int>(jobs.size()); }
  int total_ops() const;
  // true when every operation has exactly one machine option
  bool is_jssp() const;

  friend bool operator==(const Instance&, const Instance&) = default;
};

struct Horizon {
  int64_t value = 0;
};

// Sum of per-operation worst-case durations. Any feasible schedule fits
// before this time, so it is a safe universal deadline.
Horizon horizon(const Instance& inst);

// Canonical text form (flexible format, machines written 1-based).
// parse_fjssp(serialize(x)) reproduces x.
std::string serialize(const Instance& inst);

// Structural sanity check for programmatically built instances. Throws
// std::invalid_argument; parsed instances always pass.
void validate(const Instance& inst);

}  // namespace jobshop
