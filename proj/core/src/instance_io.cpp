#include "defrag/instance_io.hpp"

#include "defrag/error.hpp"

#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

namespace defrag {

namespace {

[[noreturn]] void parse_error(int line_no, const std::string &what) {
  throw DefragError(ErrorCode::Parse, "line " + std::to_string(line_no) + ": " + what);
}

int parse_int(const std::string &token, int line_no) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(token, &used);
  } catch (const std::exception &) {
    parse_error(line_no, "expected integer, got '" + token + "'");
  }
  if (used != token.size()) parse_error(line_no, "expected integer, got '" + token + "'");
  return value;
}

}  // namespace

Layout read_instance(std::istream &in) {
  std::optional<int> length;
  std::optional<std::string> types;
  std::vector<Placement> placements;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream tokens(line);
    std::string keyword;
    if (!(tokens >> keyword) || keyword[0] == '#') continue;
    std::vector<std::string> args;
    for (std::string arg; tokens >> arg;) args.push_back(arg);
    if (keyword == "device") {
      if (args.size() != 1) parse_error(line_no, "usage: device <length>");
      if (length) parse_error(line_no, "duplicate device line");
      length = parse_int(args[0], line_no);
      if (*length <= 0) parse_error(line_no, "device length must be positive");
    } else if (keyword == "types") {
      if (args.size() != 1) parse_error(line_no, "usage: types <slot-type string>");
      if (types) parse_error(line_no, "duplicate types line");
      types = args[0];
    } else if (keyword == "module") {
      if (args.size() != 3) parse_error(line_no, "usage: module <id> <start> <pattern>");
      placements.push_back({ModuleSpec{parse_int(args[0], line_no), args[2]}, parse_int(args[1], line_no)});
    } else {
      parse_error(line_no, "unknown keyword '" + keyword + "'");
    }
  }
  if (!length) throw DefragError(ErrorCode::Parse, "missing device line");
  if (types && static_cast<int>(types->size()) != *length) {
    throw DefragError(ErrorCode::Parse, "types string has " + std::to_string(types->size()) +
                                            " slots, device declares " + std::to_string(*length));
  }
  Device device = types ? Device(*types) : Device::build(*length);
  return Layout::build(std::move(device), std::move(placements));
}

Layout read_instance_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw DefragError(ErrorCode::Parse, "cannot open instance file '" + path + "'");
  return read_instance(in);
}

void write_instance(std::ostream &out, const Layout &layout, const std::vector<std::string> &comments) {
  for (const auto &c : comments) out << "# " << c << '\n';
  out << "device " << layout.device().length() << '\n';
  if (!layout.device().is_homogeneous()) out << "types " << layout.device().slot_types() << '\n';
  for (std::size_t i = 0; i < layout.module_count(); ++i) {
    out << "module " << layout.module(i).id << ' ' << layout.start(i) << ' ' << layout.module(i).pattern << '\n';
  }
}

void write_moves(std::ostream &out, const std::vector<Move> &moves) {
  for (const auto &m : moves) out << "move " << m.module_id << ' ' << m.new_start << '\n';
}

}  // namespace defrag
