#pragma once

#include <filesystem>
#include <istream>
#include <stdexcept>
#include <string>

#include "jobshop/instance.hpp"

namespace jobshop {

enum class ParseErrorKind {
  MalformedHeader,
  TruncatedJobLine,
  WrongPairCount,
  MachineIndexOutOfRange,
  NonPositiveDuration,
  DuplicateMachineAlternative,
  ExtraContent,
};

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, int line, const std::string& what);

  ParseErrorKind kind() const { return kind_; }
  // 1-based line in the input, 0 when the problem is not tied to a line
  int line() const { return line_; }

 private:
  ParseErrorKind kind_;
  int line_;
};

enum class InstanceFormat { Auto, Jssp, Fjssp };

// Classic rectangular format:
//   n m
//   n job lines, each m pairs "machine duration", machines 0-based
Instance parse_jssp(std::istream& in, const std::string& name = "");

// Flexible format:
//   n m [avg-flexibility]
//   n job lines: op-count, then per op "k" followed by k pairs
//   "machine duration", machines 1-based on disk
Instance parse_fjssp(std::istream& in, const std::string& name = "");

// format Auto tries jssp for a 2-token header, fjssp otherwise
Instance parse_instance(std::istream& in, InstanceFormat format,
                        const std::string& name = "");
Instance parse_instance_text(const std::string& text, InstanceFormat format,
                             const std::string& name = "");

// Reads a file; the instance name defaults to the file stem.
Instance load_instance(const std::filesystem::path& path,
                       InstanceFormat format = InstanceFormat::Auto);

// Convention for benchmark collections: <root>/<dataset>/<name>.txt.
// "hurink_vdata" is also tried as "hurink/vdata" for checkouts that keep
// the subsets nested.
std::filesystem::path dataset_instance_path(const std::filesystem::path& root,
                                            const std::string& dataset,
                                            const std::string& name);

}  // namespace jobshop
