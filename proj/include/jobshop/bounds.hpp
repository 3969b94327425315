#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include "jobshop/instance.hpp"

namespace jobshop {

// Longest job chain when every operation takes its cheapest machine.
int64_t lb_job_chain(const Instance& inst);

// One-machine relaxation: per machine, smallest head + total mandatory
// work + smallest tail. Operations with more than one machine option are
// not mandatory anywhere and contribute nothing here.
int64_t lb_machine_load(const Instance& inst);

int64_t lb_best(const Instance& inst);

struct BoundsRecord {
  std::string instance;
  int64_t lb = 0;
  int64_t ub = 0;
  std::string lb_source;
  std::string ub_source;
  bool optimal = false;

  friend bool operator==(const BoundsRecord&, const BoundsRecord&) = default;
};

struct GapReduction {
  int64_t old_lb = 0;
  int64_t old_ub = 0;
  int64_t new_lb = 0;
  int64_t new_ub = 0;
  // closed fraction of the old interval, in [0, 1]
  double percent = 0.0;
};

enum class GapErrorKind { GapNotClosed, DivisionByZero };

class GapError : public std::runtime_error {
 public:
  GapError(GapErrorKind kind, const std::string& what);
  GapErrorKind kind() const { return kind_; }

 private:
  GapErrorKind kind_;
};

// How much of the old [lb, ub] interval the new bounds close:
//   ((new_lb - old_lb) + (old_ub - new_ub)) / (old_ub - old_lb)
GapReduction gap_reduction(const BoundsRecord& oldr, const BoundsRecord& newr);

// "25%" normally; values strictly between 0 and 1 percent keep one
// decimal ("0.4%"). Rounding is half-up.
std::string render_percent(double fraction);

class RegistryError : public std::runtime_error {
 public:
  RegistryError(int row, const std::string& what);
  // 1-based CSV row (header is row 1), 0 when not row-specific
  int row() const { return row_; }

 private:
  int row_;
};

// CSV with header instance,lb,ub,lb_source,ub_source,optimal.
// Enforced per row: lb <= ub, and optimal exactly when lb == ub.
std::vector<BoundsRecord> registry_load(std::istream& in);
std::vector<BoundsRecord> registry_load_file(const std::filesystem::path& path);

// Plain table, one "name lb ub optimal|open" line per instance, plus a
// closed-count footer. `filter` narrows to a single instance name.
std::string registry_report(const std::vector<BoundsRecord>& records,
                            const std::string& filter = "");

// Gap reductions for instances present in both registries, improved rows
// only. Throws GapError when a "new" row is worse than the old one.
std::string registry_diff(const std::vector<BoundsRecord>& oldr,
                          const std::vector<BoundsRecord>& newr);

}  // namespace jobshop
