#include <string>

#include "doctest.h"
#include "jobshop/gantt.hpp"
#include "jobshop/parse.hpp"
#include "jobshop/schedule.hpp"
#include "support/testutil.hpp"

using namespace jobshop;

namespace {

int count_occurrences(const std::string& text, const std::string& needle) {
  int n = 0;
  for (size_t at = text.find(needle); at != std::string::npos;
       at = text.find(needle, at + needle.size()))
    ++n;
  return n;
}

}  // namespace

TEST_CASE("text chart matches the golden file byte for byte") {
  auto inst = load_instance(testutil::fixture("instances/two_singleton.jssp"));
  Schedule sched;
  sched.instance_name = "two_singleton";
  sched.assignments = {{0, 0, 0, 0, 4}, {1, 0, 0, 4, 10}};
  CHECK(emit_gantt(inst, sched, GanttFormat::Text) ==
        testutil::read_file(testutil::fixture("golden/two_singleton_gantt.txt")));
}

TEST_CASE("text chart rows follow the machine timeline") {
  auto inst = load_instance(testutil::fixture("instances/twoxtwo.jssp"));
  auto orders = parse_orders_text(
      testutil::read_file(testutil::fixture("orders/twoxtwo_ok.orders")));
  auto sched = semi_active(inst, orders);
  CHECK(emit_gantt(inst, sched, GanttFormat::Text) ==
        "twoxtwo makespan=4 cell=1\n"
        "M0 |AABB|\n"
        "M1 |BBAA|\n");
}

TEST_CASE("text chart compresses long horizons into wider cells") {
  auto inst = parse_instance_text("1 1\n0 250\n", InstanceFormat::Jssp, "long");
  Schedule sched;
  sched.instance_name = "long";
  sched.assignments = {{0, 0, 0, 0, 250}};
  auto text = emit_gantt(inst, sched, GanttFormat::Text);
  CHECK(text.find("long makespan=250 cell=3\n") == 0);
  // ceil(250 / 3) = 84 columns, all of them busy
  CHECK(text.find("M0 |" + std::string(84, 'A') + "|\n") != std::string::npos);
}

TEST_CASE("job glyphs continue past the uppercase alphabet") {
  std::string text = "30 1\n";
  for (int j = 0; j < 30; ++j) text += "0 1\n";
  auto inst = parse_instance_text(text, InstanceFormat::Jssp, "many");

  MachineOrderSolution orders;
  orders.machines.resize(1);
  for (int j = 0; j < 30; ++j) orders.machines[0].push_back({j, 0});
  auto chart = emit_gantt(inst, semi_active(inst, orders), GanttFormat::Text);
  CHECK(chart.find("M0 |ABCDEFGHIJKLMNOPQRSTUVWXYZabcd|\n") !=
        std::string::npos);
}

TEST_CASE("svg places one labelled bar per assignment") {
  auto inst = load_instance(testutil::fixture("instances/twoxtwo.jssp"));
  auto orders = parse_orders_text(
      testutil::read_file(testutil::fixture("orders/twoxtwo_ok.orders")));
  auto sched = semi_active(inst, orders);
  auto svg = emit_gantt(inst, sched, GanttFormat::Svg);

  CHECK(svg.rfind("<svg xmlns=", 0) == 0);
  CHECK(svg.find("</svg>\n") != std::string::npos);
  CHECK(svg.find("twoxtwo (makespan 4)") != std::string::npos);
  CHECK(count_occurrences(svg, "data-job=") ==
        static_cast<int>(sched.assignments.size()));

  // bars carry their coordinates so the chart is machine-checkable
  CHECK(svg.find("data-job=\"0\" data-op=\"0\" data-machine=\"0\" "
                 "data-start=\"0\" data-end=\"2\"") != std::string::npos);
  CHECK(svg.find("data-job=\"1\" data-op=\"1\" data-machine=\"0\" "
                 "data-start=\"2\" data-end=\"4\"") != std::string::npos);

  // time zero sits at the left margin, one pixel per time unit
  CHECK(svg.find("<rect x=\"70\" y=\"40\" width=\"2\"") != std::string::npos);
  CHECK(svg.find("<rect x=\"72\" y=\"40\" width=\"2\"") != std::string::npos);
  CHECK(svg.find("<rect x=\"72\" y=\"62\" width=\"2\"") != std::string::npos);
}

TEST_CASE("infeasible schedules are rejected, not drawn") {
  auto inst = load_instance(testutil::fixture("instances/twoxtwo.jssp"));
  Schedule sched;
  sched.instance_name = "twoxtwo";
  // both jobs grab machine 0 at once and job 0 runs out of order
  sched.assignments = {{0, 0, 0, 0, 2},
                       {0, 1, 1, 0, 2},
                       {1, 0, 1, 0, 2},
                       {1, 1, 0, 0, 2}};
  CHECK_THROWS_AS(emit_gantt(inst, sched, GanttFormat::Svg),
                  InfeasibleScheduleError);
  try {
    emit_gantt(inst, sched, GanttFormat::Text);
  } catch (const InfeasibleScheduleError& e) {
    CHECK(std::string(e.what()).find("refusing to draw") != std::string::npos);
  }
}
