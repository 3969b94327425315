#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "jobshop/instance.hpp"

namespace jobshop {

struct Assignment {
  int job = 0;
  int op = 0;
  int machine = 0;
  int64_t start = 0;
  int64_t end = 0;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

struct Schedule {
  std::string instance_name;
  std::vector<Assignment> assignments;

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

int64_t makespan(const Schedule& sched);

enum class ViolationKind {
  NegativeStart,
  WrongEndTime,
  IncompatibleMachine,
  PrecedenceViolation,
  MachineOverlap,
};

struct Violation {
  ViolationKind kind;
  std::string message;
};

struct VerificationReport {
  bool feasible = false;
  int64_t makespan = 0;
  std::vector<Violation> violations;
};

// Structural problems that make constraint checking meaningless: the
// schedule does not even cover the instance's operations one-to-one.
enum class ScheduleShapeErrorKind {
  UnknownOperation,
  DuplicateAssignment,
  MissingAssignment,
};

class ScheduleShapeError : public std::runtime_error {
 public:
  ScheduleShapeError(ScheduleShapeErrorKind kind, const std::string& what);
  ScheduleShapeErrorKind kind() const { return kind_; }

 private:
  ScheduleShapeErrorKind kind_;
};

// Checks a complete schedule against the instance. Interval semantics are
// half-open: back-to-back operations on one machine do not overlap.
VerificationReport verify(const Instance& inst, const Schedule& sched);

std::vector<int64_t> machine_end_times(const Schedule& sched,
                                       int machine_count);

// One token of a machine-order file. op -1 means "not spelled out":
// resolved later against the instance, which must make the choice unique.
struct OrderToken {
  int job = 0;
  int op = -1;

  friend bool operator==(const OrderToken&, const OrderToken&) = default;
};

// Processing order per machine; line k of the text form is machine k.
// Tokens are "job.op" or a bare job number.
struct MachineOrderSolution {
  std::vector<std::vector<OrderToken>> machines;

  friend bool operator==(const MachineOrderSolution&,
                         const MachineOrderSolution&) = default;
};

class OrdersError : public std::runtime_error {
 public:
  explicit OrdersError(const std::string& what);
};

class CyclicOrdersError : public std::runtime_error {
 public:
  CyclicOrdersError(std::string what, std::vector<std::pair<int, int>> cycle);
  // the offending (job, op) loop, first element repeated at the end
  const std::vector<std::pair<int, int>>& cycle() const { return cycle_; }

 private:
  std::vector<std::pair<int, int>> cycle_;
};

MachineOrderSolution parse_orders(std::istream& in);
MachineOrderSolution parse_orders_text(const std::string& text);
MachineOrderSolution load_orders(const std::filesystem::path& path);
std::string serialize_orders(const MachineOrderSolution& orders);

// Earliest-start schedule for the given machine orders: every operation
// begins the moment both its job predecessor and its machine predecessor
// are done. Throws CyclicOrdersError when the orders deadlock, OrdersError
// when they do not cover the instance.
Schedule semi_active(const Instance& inst, const MachineOrderSolution& orders);

// Solution JSON round-trip. Field names are part of the interface:
// {"instance", "makespan", "assignments": [{job, op, machine, start, end}]}
class SolutionJsonError : public std::runtime_error {
 public:
  explicit SolutionJsonError(const std::string& what);
};

Schedule schedule_from_json(const std::string& text);
std::string schedule_to_json(const Schedule& sched);
Schedule load_schedule(const std::filesystem::path& path);
void save_schedule(const std::filesystem::path& path, const Schedule& sched);

}  // namespace jobshop
