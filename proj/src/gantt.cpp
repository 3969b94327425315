#include "jobshop/gantt.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

namespace jobshop {

InfeasibleScheduleError::InfeasibleScheduleError(const std::string& what)
    : std::runtime_error(what) {}

namespace {

char job_glyph(int job) {
  if (job < 26) return static_cast<char>('A' + job);
  if (job < 52) return static_cast<char>('a' + job - 26);
  if (job < 62) return static_cast<char>('0' + job - 52);
  return '*';
}

std::string text_chart(const Instance& inst, const Schedule& sched,
                       int64_t mk) {
  // compress time so the busiest row stays near 100 cells wide
  int64_t cell = std::max<int64_t>(1, (mk + 99) / 100);
  int64_t columns = (mk + cell - 1) / cell;

  std::ostringstream out;
  out << sched.instance_name << " makespan=" << mk << " cell=" << cell
      << '\n';
  for (int m = 0; m < inst.machine_count; ++m) {
    std::string row(static_cast<size_t>(columns), ' ');
    for (const auto& a : sched.assignments) {
      if (a.machine != m) continue;
      for (int64_t c = 0; c < columns; ++c) {
        int64_t t = c * cell;
        if (t >= a.start && t < a.end) row[c] = job_glyph(a.job);
      }
    }
    out << 'M' << m << " |" << row << "|\n";
  }
  return out.str();
}

std::string svg_chart(const Instance& inst, const Schedule& sched,
                      int64_t mk) {
  const int left = 70, top = 40, row_h = 22, bar_h = 16;
  int64_t width = left + mk + 20;
  int64_t height = top + static_cast<int64_t>(inst.machine_count) * row_h + 30;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << width
      << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  out << "  <rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\""
      << height << "\" fill=\"#ffffff\"/>\n";
  out << "  <text x=\"" << left << "\" y=\"20\">" << sched.instance_name
      << " (makespan " << mk << ")</text>\n";

  for (int m = 0; m < inst.machine_count; ++m) {
    int64_t y = top + static_cast<int64_t>(m) * row_h;
    out << "  <text x=\"8\" y=\"" << y + bar_h - 3 << "\">M" << m
        << "</text>\n";
    out << "  <line x1=\"" << left << "\" y1=\"" << y + row_h - 2
        << "\" x2=\"" << left + mk << "\" y2=\"" << y + row_h - 2
        << "\" stroke=\"#dddddd\"/>\n";
  }

  std::vector<const Assignment*> ordered;
  for (const auto& a : sched.assignments) ordered.push_back(&a);
  std::sort(ordered.begin(), ordered.end(),
            [](const Assignment* x, const Assignment* y) {
              return std::tie(x->machine, x->start, x->job, x->op) <
                     std::tie(y->machine, y->start, y->job, y->op);
            });
  for (const Assignment* a : ordered) {
    int hue = (a->job * 47) % 360;
    out << "  <rect x=\"" << left + a->start << "\" y=\""
        << top + static_cast<int64_t>(a->machine) * row_h << "\" width=\""
        << a->end - a->start << "\" height=\"" << bar_h << "\" fill=\"hsl("
        << hue << ",65%,60%)\" stroke=\"#333333\" stroke-width=\"0.5\""
        << " data-job=\"" << a->job << "\" data-op=\"" << a->op
        << "\" data-machine=\"" << a->machine << "\" data-start=\""
        << a->start << "\" data-end=\"" << a->end << "\"/>\n";
  }

  // time axis with round tick steps
  int64_t axis_y = top + static_cast<int64_t>(inst.machine_count) * row_h + 8;
  out << "  <line x1=\"" << left << "\" y1=\"" << axis_y << "\" x2=\""
      << left + mk << "\" y2=\"" << axis_y << "\" stroke=\"#333333\"/>\n";
  int64_t step = 1;
  while (mk / step > 10) step *= 10;
  if (step > 1 && mk / step < 3) step /= 2;
  for (int64_t t = 0; t <= mk; t += step) {
    out << "  <line x1=\"" << left + t << "\" y1=\"" << axis_y << "\" x2=\""
        << left + t << "\" y2=\"" << axis_y + 4
        << "\" stroke=\"#333333\"/>\n";
    out << "  <text x=\"" << left + t << "\" y=\"" << axis_y + 16
        << "\" text-anchor=\"middle\">" << t << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace

std::string emit_gantt(const Instance& inst, const Schedule& sched,
                       GanttFormat format) {
  VerificationReport report = verify(inst, sched);
  if (!report.feasible) {
    std::string msg = "refusing to draw an infeasible schedule";
    if (!report.violations.empty())
      msg += ": " + report.violations.front().message;
    throw InfeasibleScheduleError(msg);
  }
  if (format == GanttFormat::Text)
    return text_chart(inst, sched, report.makespan);
  return svg_chart(inst, sched, report.makespan);
}

}  // namespace jobshop
