#include "jobshop/bounds.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace jobshop {

int64_t lb_job_chain(const Instance& inst) {
  int64_t best = 0;
  for (const auto& job : inst.jobs) {
    int64_t chain = 0;
    for (const auto& op : job) chain += op.min_duration();
    best = std::max(best, chain);
  }
  return best;
}

int64_t lb_machine_load(const Instance& inst) {
  // head/tail: work that must precede/follow an operation inside its job,
  // counted at the cheapest machine choice
  int64_t best = 0;
  for (int m = 0; m < inst.machine_count; ++m) {
    int64_t load = 0;
    int64_t head = 0, tail = 0;
    bool any = false;
    for (const auto& job : inst.jobs) {
      int64_t before = 0;
      for (int j = 0; j < static_cast<int>(job.size()); ++j) {
        const auto& op = job[j];
        if (op.alternatives.size() == 1 &&
            op.alternatives[0].machine == m) {
          int64_t after = 0;
          for (int k = j + 1; k < static_cast<int>(job.size()); ++k)
            after += job[k].min_duration();
          load += op.alternatives[0].duration;
          head = any ? std::min(head, before) : before;
          tail = any ? std::min(tail, after) : after;
          any = true;
        }
        before += op.min_duration();
      }
    }
    if (any) best = std::max(best, head + load + tail);
  }
  return best;
}

int64_t lb_best(const Instance& inst) {
  return std::max(lb_job_chain(inst), lb_machine_load(inst));
}

GapError::GapError(GapErrorKind kind, const std::string& what)
    : std::runtime_error(what), kind_(kind) {}

RegistryError::RegistryError(int row, const std::string& what)
    : std::runtime_error("registry row " + std::to_string(row) + ": " + what),
      row_(row) {}

GapReduction gap_reduction(const BoundsRecord& oldr, const BoundsRecord& newr) {
  if (oldr.lb >= oldr.ub)
    throw GapError(GapErrorKind::DivisionByZero,
                   oldr.instance + ": old bounds leave no gap to close (" +
                       std::to_string(oldr.lb) + ", " +
                       std::to_string(oldr.ub) + ")");
  if (newr.lb < oldr.lb || newr.ub > oldr.ub || newr.lb > newr.ub)
    throw GapError(GapErrorKind::GapNotClosed,
                   oldr.instance + ": new bounds (" + std::to_string(newr.lb) +
                       ", " + std::to_string(newr.ub) +
                       ") do not tighten old (" + std::to_string(oldr.lb) +
                       ", " + std::to_string(oldr.ub) + ")");
  GapReduction g;
  g.old_lb = oldr.lb;
  g.old_ub = oldr.ub;
  g.new_lb = newr.lb;
  g.new_ub = newr.ub;
  g.percent = static_cast<double>((newr.lb - oldr.lb) + (oldr.ub - newr.ub)) /
              static_cast<double>(oldr.ub - oldr.lb);
  return g;
}

std::string render_percent(double fraction) {
  double pct = fraction * 100.0;
  std::ostringstream out;
  if (pct > 0.0 && pct < 1.0) {
    // keep one decimal for slivers so they do not print as 0% or 1%
    double tenth = std::floor(pct * 10.0 + 0.5) / 10.0;
    out << tenth << '%';
  } else {
    out << static_cast<int64_t>(std::floor(pct + 0.5)) << '%';
  }
  return out.str();
}

namespace {

std::vector<std::string> split_csv_row(const std::string& raw) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : raw) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  fields.push_back(cur);
  for (auto& f : fields) {
    while (!f.empty() && std::isspace(static_cast<unsigned char>(f.front())))
      f.erase(f.begin());
    while (!f.empty() && std::isspace(static_cast<unsigned char>(f.back())))
      f.pop_back();
  }
  return fields;
}

int64_t csv_int(const std::string& field, int row, const char* what) {
  int64_t value = 0;
  auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size())
    throw RegistryError(row, std::string(what) + " is not an integer: '" +
                                field + "'");
  return value;
}

}  // namespace

std::vector<BoundsRecord> registry_load(std::istream& in) {
  std::string raw;
  int row = 0;
  std::vector<BoundsRecord> records;
  std::map<std::string, int> seen;
  while (std::getline(in, raw)) {
    ++row;
    if (raw.empty() || raw == "\r") continue;
    auto fields = split_csv_row(raw);
    if (row == 1) {
      if (fields != std::vector<std::string>{"instance", "lb", "ub",
                                             "lb_source", "ub_source",
                                             "optimal"})
        throw RegistryError(row,
                            "expected header instance,lb,ub,lb_source,"
                            "ub_source,optimal");
      continue;
    }
    if (fields.size() != 6)
      throw RegistryError(row, "expected 6 fields, got " +
                                   std::to_string(fields.size()));
    BoundsRecord rec;
    rec.instance = fields[0];
    rec.lb = csv_int(fields[1], row, "lb");
    rec.ub = csv_int(fields[2], row, "ub");
    rec.lb_source = fields[3];
    rec.ub_source = fields[4];
    if (fields[5] == "true")
      rec.optimal = true;
    else if (fields[5] == "false")
      rec.optimal = false;
    else
      throw RegistryError(row, "optimal must be true or false, got '" +
                                   fields[5] + "'");
    if (rec.instance.empty()) throw RegistryError(row, "empty instance name");
    if (rec.lb > rec.ub)
      throw RegistryError(row, rec.instance + ": lb " +
                                   std::to_string(rec.lb) + " exceeds ub " +
                                   std::to_string(rec.ub));
    if (rec.optimal != (rec.lb == rec.ub))
      throw RegistryError(
          row, rec.instance + ": optimal flag disagrees with lb/ub");
    if (auto [it, inserted] = seen.try_emplace(rec.instance, row); !inserted)
      throw RegistryError(row, rec.instance + " already defined at row " +
                                   std::to_string(it->second));
    records.push_back(std::move(rec));
  }
  if (row == 0) throw RegistryError(0, "empty registry");
  return records;
}

std::vector<BoundsRecord> registry_load_file(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open registry file: " + path.string());
  return registry_load(in);
}

std::string registry_report(const std::vector<BoundsRecord>& records,
                            const std::string& filter) {
  std::ostringstream out;
  int shown = 0, closed = 0;
  for (const auto& rec : records) {
    if (!filter.empty() && rec.instance != filter) continue;
    ++shown;
    if (rec.optimal) ++closed;
    out << rec.instance << ' ' << rec.lb << ' ' << rec.ub << ' '
        << (rec.optimal ? "optimal" : "open") << '\n';
  }
  out << "closed " << closed << '/' << shown << '\n';
  return out.str();
}

std::string registry_diff(const std::vector<BoundsRecord>& oldr,
                          const std::vector<BoundsRecord>& newr) {
  std::map<std::string, const BoundsRecord*> old_by_name;
  for (const auto& rec : oldr) old_by_name[rec.instance] = &rec;

  std::ostringstream out;
  out << "instance old_lb old_ub new_lb new_ub closed\n";
  for (const auto& rec : newr) {
    auto it = old_by_name.find(rec.instance);
    if (it == old_by_name.end()) continue;
    const BoundsRecord& old = *it->second;
    if (old.lb == rec.lb && old.ub == rec.ub) continue;
    GapReduction g = gap_reduction(old, rec);
    out << rec.instance << ' ' << g.old_lb << ' ' << g.old_ub << ' '
        << g.new_lb << ' ' << g.new_ub << ' ' << render_percent(g.percent)
        << '\n';
  }
  return out.str();
}

}  // namespace jobshop
