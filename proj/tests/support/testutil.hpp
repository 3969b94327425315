#pragma once

// Shared helpers for the test suites: fixture paths, dataset discovery,
// random instance generation sized for the exhaustive oracle, and a
// dispatch-based generator for feasible schedules and machine orders.

#include <unistd.h>

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "jobshop/instance.hpp"
#include "jobshop/parse.hpp"
#include "jobshop/schedule.hpp"

namespace testutil {

inline std::filesystem::path fixtures_dir() {
  return std::filesystem::path(FIXTURES_DIR);
}

inline std::filesystem::path fixture(const std::string& relative) {
  return fixtures_dir() / relative;
}

// Benchmark files are not committed; they live under fixtures/datasets/
// (see the README there) or wherever JOBSHOP_DATA_DIR points.
inline std::filesystem::path dataset_root() {
  if (const char* env = std::getenv("JOBSHOP_DATA_DIR"); env && *env)
    return std::filesystem::path(env);
  return fixtures_dir() / "datasets";
}

inline std::optional<std::filesystem::path> find_dataset_instance(
    const std::string& dataset, const std::string& name) {
  auto path = jobshop::dataset_instance_path(dataset_root(), dataset, name);
  if (std::filesystem::exists(path)) return path;
  return std::nullopt;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::filesystem::path& path,
                       const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

// Fresh directory under the system temp root, unique per call.
inline std::filesystem::path temp_dir(const std::string& tag) {
  static std::atomic<int> counter{0};
  auto dir = std::filesystem::temp_directory_path() /
             ("jobshop_test_" + tag + "_" + std::to_string(::getpid()) + "_" +
              std::to_string(counter++));
  std::filesystem::create_directories(dir);
  return dir;
}

// Classic instance, up to 3 jobs x 3 machines x 3 operations per job,
// durations 1..9. Small enough for the exhaustive oracle.
inline jobshop::Instance random_jssp(std::mt19937& rng) {
  std::uniform_int_distribution<int> jobs_d(1, 3);
  std::uniform_int_distribution<int> machines_d(1, 3);
  std::uniform_int_distribution<int> ops_d(1, 3);
  std::uniform_int_distribution<int> dur_d(1, 9);

  jobshop::Instance inst;
  inst.name = "random_jssp";
  inst.machine_count = machines_d(rng);
  int jobs = jobs_d(rng);
  std::uniform_int_distribution<int> mach_d(0, inst.machine_count - 1);
  for (int i = 0; i < jobs; ++i) {
    std::vector<jobshop::OperationSpec> job;
    int ops = ops_d(rng);
    for (int j = 0; j < ops; ++j) {
      jobshop::OperationSpec spec;
      spec.job = i;
      spec.op = j;
      spec.alternatives.push_back({mach_d(rng), dur_d(rng)});
      job.push_back(std::move(spec));
    }
    inst.jobs.push_back(std::move(job));
  }
  return inst;
}

// Flexible instance with at most two machine options per operation. The
// total operation count is capped at 7 so enumerating every allocation and
// every per-machine permutation stays cheap.
inline jobshop::Instance random_fjssp(std::mt19937& rng) {
  std::uniform_int_distribution<int> jobs_d(1, 3);
  std::uniform_int_distribution<int> machines_d(2, 3);
  std::uniform_int_distribution<int> dur_d(1, 9);

  jobshop::Instance inst;
  inst.name = "random_fjssp";
  inst.machine_count = machines_d(rng);
  int jobs = jobs_d(rng);
  int budget = 7;
  std::uniform_int_distribution<int> mach_d(0, inst.machine_count - 1);
  for (int i = 0; i < jobs; ++i) {
    int slack = budget - (jobs - i - 1);
    int max_ops = std::min(3, slack);
    std::uniform_int_distribution<int> ops_d(1, max_ops);
    int ops = ops_d(rng);
    budget -= ops;
    std::vector<jobshop::OperationSpec> job;
    for (int j = 0; j < ops; ++j) {
      jobshop::OperationSpec spec;
      spec.job = i;
      spec.op = j;
      int first = mach_d(rng);
      spec.alternatives.push_back({first, dur_d(rng)});
      if (inst.machine_count > 1 && rng() % 2 == 0) {
        int second = mach_d(rng);
        if (second != first) spec.alternatives.push_back({second, dur_d(rng)});
      }
      job.push_back(std::move(spec));
    }
    inst.jobs.push_back(std::move(job));
  }
  return inst;
}

struct DispatchResult {
  jobshop::Schedule schedule;
  jobshop::MachineOrderSolution orders;
};

// Random list scheduling: repeatedly start a ready operation on a random
// compatible machine as early as possible. The result is feasible by
// construction and equals the earliest-start schedule of its own orders.
inline DispatchResult random_dispatch(const jobshop::Instance& inst,
                                      std::mt19937& rng) {
  int jobs = inst.job_count();
  std::vector<int> next_op(jobs, 0);
  std::vector<int64_t> job_ready(jobs, 0);
  std::vector<int64_t> machine_ready(inst.machine_count, 0);

  DispatchResult result;
  result.schedule.instance_name = inst.name;
  result.orders.machines.resize(inst.machine_count);

  int remaining = inst.total_ops();
  while (remaining > 0) {
    std::vector<int> ready;
    for (int i = 0; i < jobs; ++i)
      if (next_op[i] < static_cast<int>(inst.jobs[i].size()))
        ready.push_back(i);
    int i = ready[rng() % ready.size()];
    const auto& spec = inst.jobs[i][next_op[i]];
    const auto& alt = spec.alternatives[rng() % spec.alternatives.size()];
    int64_t start = std::max(job_ready[i], machine_ready[alt.machine]);
    int64_t end = start + alt.duration;
    result.schedule.assignments.push_back({i, spec.op, alt.machine, start, end});
    result.orders.machines[alt.machine].push_back({i, spec.op});
    job_ready[i] = end;
    machine_ready[alt.machine] = end;
    ++next_op[i];
    --remaining;
  }
  return result;
}

}  // namespace testutil
