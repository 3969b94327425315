#include "jobshop/parse.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace jobshop {

namespace {

const char* kind_label(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::MalformedHeader: return "malformed header";
    case ParseErrorKind::TruncatedJobLine: return "truncated job line";
    case ParseErrorKind::WrongPairCount: return "wrong pair count";
    case ParseErrorKind::MachineIndexOutOfRange: return "machine index out of range";
    case ParseErrorKind::NonPositiveDuration: return "non-positive duration";
    case ParseErrorKind::DuplicateMachineAlternative: return "duplicate machine alternative";
    case ParseErrorKind::ExtraContent: return "extra content";
  }
  return "parse error";
}

std::string format_what(ParseErrorKind kind, int line, const std::string& msg) {
  std::ostringstream out;
  out << "line " << line << ": " << kind_label(kind);
  if (!msg.empty()) out << ": " << msg;
  return out.str();
}

// a numbered, whitespace-split input line
struct Line {
  int number = 0;
  std::vector<std::string> tokens;
};

// Blank lines and '#' comment lines are dropped here; everything else is
// significant.
std::vector<Line> read_lines(std::istream& in) {
  std::vector<Line> lines;
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    Line line;
    line.number = number;
    std::istringstream split(raw);
    std::string tok;
    while (split >> tok) line.tokens.push_back(tok);
    if (line.tokens.empty()) continue;
    if (line.tokens.front()[0] == '#') continue;
    lines.push_back(std::move(line));
  }
  return lines;
}

int64_t parse_int(const std::string& tok, int line, ParseErrorKind kind) {
  int64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError(kind, line, "expected an integer, got '" + tok + "'");
  return value;
}

bool looks_numeric(const std::string& tok) {
  if (tok.empty()) return false;
  size_t i = tok[0] == '-' || tok[0] == '+' ? 1 : 0;
  if (i == tok.size()) return false;
  for (; i < tok.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(tok[i])) && tok[i] != '.')
      return false;
  return true;
}

struct Header {
  int jobs = 0;
  int machines = 0;
  int line = 0;
};

Header parse_header(const std::vector<Line>& lines, size_t max_tokens) {
  if (lines.empty())
    throw ParseError(ParseErrorKind::MalformedHeader, 1, "empty input");
  const Line& head = lines.front();
  if (head.tokens.size() < 2 || head.tokens.size() > max_tokens)
    throw ParseError(ParseErrorKind::MalformedHeader, head.number,
                     "expected job and machine counts");
  Header h;
  h.line = head.number;
  h.jobs = static_cast<int>(
      parse_int(head.tokens[0], head.number, ParseErrorKind::MalformedHeader));
  h.machines = static_cast<int>(
      parse_int(head.tokens[1], head.number, ParseErrorKind::MalformedHeader));
  if (h.jobs < 1 || h.machines < 1)
    throw ParseError(ParseErrorKind::MalformedHeader, head.number,
                     "job and machine counts must be positive");
  // an optional third token (average flexibility) is tolerated and ignored
  if (max_tokens >= 3 && head.tokens.size() == 3 &&
      !looks_numeric(head.tokens[2]))
    throw ParseError(ParseErrorKind::MalformedHeader, head.number,
                     "unexpected token '" + head.tokens[2] + "'");
  return h;
}

void check_job_line_count(const std::vector<Line>& lines, const Header& h) {
  if (static_cast<int>(lines.size()) - 1 < h.jobs) {
    int at = lines.empty() ? h.line : lines.back().number;
    throw ParseError(ParseErrorKind::TruncatedJobLine, at,
                     "expected " + std::to_string(h.jobs) + " job lines, got " +
                         std::to_string(lines.size() - 1));
  }
  if (static_cast<int>(lines.size()) - 1 > h.jobs)
    throw ParseError(ParseErrorKind::ExtraContent, lines[h.jobs + 1].number,
                     "input continues after the last job");
}

int check_duration(int64_t value, int line) {
  if (value < 1)
    throw ParseError(ParseErrorKind::NonPositiveDuration, line,
                     "duration " + std::to_string(value));
  return static_cast<int>(value);
}

}  // namespace

ParseError::ParseError(ParseErrorKind kind, int line, const std::string& what)
    : std::runtime_error(format_what(kind, line, what)),
      kind_(kind),
      line_(line) {}

Instance parse_jssp(std::istream& in, const std::string& name) {
  auto lines = read_lines(in);
  Header h = parse_header(lines, 2);
  check_job_line_count(lines, h);

  Instance inst;
  inst.name = name;
  inst.machine_count = h.machines;
  inst.jobs.resize(h.jobs);
  for (int i = 0; i < h.jobs; ++i) {
    const Line& line = lines[i + 1];
    if (line.tokens.size() != static_cast<size_t>(2 * h.machines))
      throw ParseError(ParseErrorKind::WrongPairCount, line.number,
                       "expected " + std::to_string(h.machines) +
                           " machine/duration pairs, got " +
                           std::to_string(line.tokens.size()) + " tokens");
    auto& job = inst.jobs[i];
    job.resize(h.machines);
    for (int j = 0; j < h.machines; ++j) {
      int64_t machine = parse_int(line.tokens[2 * j], line.number,
                                  ParseErrorKind::TruncatedJobLine);
      int64_t duration = parse_int(line.tokens[2 * j + 1], line.number,
                                   ParseErrorKind::TruncatedJobLine);
      if (machine < 0 || machine >= h.machines)
        throw ParseError(ParseErrorKind::MachineIndexOutOfRange, line.number,
                         "machine " + std::to_string(machine));
      job[j].job = i;
      job[j].op = j;
      job[j].alternatives = {{static_cast<int>(machine),
                              check_duration(duration, line.number)}};
    }
  }
  return inst;
}

Instance parse_fjssp(std::istream& in, const std::string& name) {
  auto lines = read_lines(in);
  Header h = parse_header(lines, 3);
  check_job_line_count(lines, h);

  Instance inst;
  inst.name = name;
  inst.machine_count = h.machines;
  inst.jobs.resize(h.jobs);
  for (int i = 0; i < h.jobs; ++i) {
    const Line& line = lines[i + 1];
    size_t pos = 0;
    auto next = [&](const char* what) {
      if (pos >= line.tokens.size())
        throw ParseError(ParseErrorKind::TruncatedJobLine, line.number,
                         std::string("missing ") + what);
      return parse_int(line.tokens[pos++], line.number,
                       ParseErrorKind::TruncatedJobLine);
    };

    int64_t op_count = next("operation count");
    if (op_count < 1)
      throw ParseError(ParseErrorKind::TruncatedJobLine, line.number,
                       "job needs at least one operation");
    auto& job = inst.jobs[i];
    job.resize(op_count);
    for (int j = 0; j < op_count; ++j) {
      int64_t alt_count = next("alternative count");
      if (alt_count < 1)
        throw ParseError(ParseErrorKind::TruncatedJobLine, line.number,
                         "operation needs at least one machine option");
      auto& op = job[j];
      op.job = i;
      op.op = j;
      std::vector<char> seen(h.machines, 0);
      for (int a = 0; a < alt_count; ++a) {
        int64_t machine = next("machine index");
        int64_t duration = next("duration");
        // machines are written 1-based in this format
        if (machine < 1 || machine > h.machines)
          throw ParseError(ParseErrorKind::MachineIndexOutOfRange, line.number,
                           "machine " + std::to_string(machine));
        if (seen[machine - 1])
          throw ParseError(ParseErrorKind::DuplicateMachineAlternative,
                           line.number,
                           "machine " + std::to_string(machine) +
                               " listed twice for one operation");
        seen[machine - 1] = 1;
        op.alternatives.push_back({static_cast<int>(machine - 1),
                                   check_duration(duration, line.number)});
      }
    }
    if (pos != line.tokens.size())
      throw ParseError(ParseErrorKind::ExtraContent, line.number,
                       std::to_string(line.tokens.size() - pos) +
                           " token(s) left over after the last operation");
  }
  return inst;
}

Instance parse_instance(std::istream& in, InstanceFormat format,
                        const std::string& name) {
  if (format == InstanceFormat::Jssp) return parse_jssp(in, name);
  if (format == InstanceFormat::Fjssp) return parse_fjssp(in, name);
  // Auto: buffer everything, pick by header width. A three-token header
  // only fits the flexible format; with two tokens the rectangular format
  // is tried first and the flexible one is the fallback.
  std::ostringstream buffer;
  buffer << in.rdbuf();
  std::string text = buffer.str();
  {
    std::istringstream probe(text);
    auto lines = read_lines(probe);
    if (!lines.empty() && lines.front().tokens.size() == 2) {
      try {
        std::istringstream again(text);
        return parse_jssp(again, name);
      } catch (const ParseError&) {
        // fall through to the flexible parser
      }
    }
  }
  std::istringstream again(text);
  return parse_fjssp(again, name);
}

Instance parse_instance_text(const std::string& text, InstanceFormat format,
                             const std::string& name) {
  std::istringstream in(text);
  return parse_instance(in, format, name);
}

Instance load_instance(const std::filesystem::path& path,
                       InstanceFormat format) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open instance file: " + path.string());
  return parse_instance(in, format, path.stem().string());
}

std::filesystem::path dataset_instance_path(const std::filesystem::path& root,
                                            const std::string& dataset,
                                            const std::string& name) {
  std::filesystem::path direct = root / dataset / (name + ".txt");
  if (std::filesystem::exists(direct)) return direct;
  auto underscore = dataset.find('_');
  if (underscore != std::string::npos) {
    std::filesystem::path nested = root / dataset.substr(0, underscore) /
                                   dataset.substr(underscore + 1) /
                                   (name + ".txt");
    if (std::filesystem::exists(nested)) return nested;
  }
  return direct;
}

}  // namespace jobshop
