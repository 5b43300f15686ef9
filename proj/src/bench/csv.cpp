#include "nsbench/bench/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "nsbench/errors.hpp"

namespace nsbench::bench {

namespace {

constexpr std::string_view kHeader = "iter,elapsed_sec,f,feval,geval";

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

template <class T>
T parse_number(std::string_view field, std::size_t line, const char* what) {
  T value{};
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end || field.empty()) {
    throw ParseError(line, std::string("bad ") + what + " '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw Error("format_double: conversion failed");
  return std::string(buf, ptr);
}

std::string format_trajectory_csv(const optim::TrajectoryRecord& record) {
  std::string out;
  out += "# problem=" + record.meta.problem + "\n";
  out += "# algorithm=" + record.meta.algorithm + "\n";
  out += "# seed=" + std::to_string(record.meta.seed) + "\n";
  out += "# repetition=" + std::to_string(record.meta.repetition) + "\n";
  out += std::string("# stalled=") + (record.meta.stalled ? "1" : "0") + "\n";
  out += kHeader;
  out += '\n';
  char sec[64];
  for (const auto& r : record.rows) {
    std::snprintf(sec, sizeof sec, "%.9f", r.elapsed_sec);
    out += std::to_string(r.iteration) + "," + sec + "," + format_double(r.f) + "," + std::to_string(r.feval) + "," +
           std::to_string(r.geval) + "\n";
  }
  return out;
}

optim::TrajectoryRecord parse_trajectory_csv(std::string_view text) {
  optim::TrajectoryRecord rec;
  bool header_seen = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;

    if (!header_seen && line.front() == '#') {
      line.remove_prefix(1);
      while (!line.empty() && line.front() == ' ') line.remove_prefix(1);
      const std::size_t eq = line.find('=');
      if (eq == std::string_view::npos) throw ParseError(line_no, "metadata line without '='");
      const std::string_view key = line.substr(0, eq);
      const std::string_view value = line.substr(eq + 1);
      if (key == "problem") rec.meta.problem = std::string(value);
      else if (key == "algorithm") rec.meta.algorithm = std::string(value);
      else if (key == "seed") rec.meta.seed = parse_number<std::uint64_t>(value, line_no, "seed");
      else if (key == "repetition") rec.meta.repetition = parse_number<std::int64_t>(value, line_no, "repetition");
      else if (key == "stalled") {
        if (value != "0" && value != "1") throw ParseError(line_no, "stalled must be 0 or 1");
        rec.meta.stalled = value == "1";
      }
      continue;
    }
    if (!header_seen) {
      if (line != kHeader) throw ParseError(line_no, "expected header '" + std::string(kHeader) + "'");
      header_seen = true;
      continue;
    }

    const auto fields = split(line, ',');
    if (fields.size() != 5) throw ParseError(line_no, "expected 5 fields, got " + std::to_string(fields.size()));
    optim::TrajectoryRow r;
    r.iteration = parse_number<std::int64_t>(fields[0], line_no, "iteration");
    r.elapsed_sec = parse_number<double>(fields[1], line_no, "elapsed_sec");
    r.f = parse_number<double>(fields[2], line_no, "f");
    r.feval = parse_number<std::uint64_t>(fields[3], line_no, "feval");
    r.geval = parse_number<std::uint64_t>(fields[4], line_no, "geval");
    if (rec.rows.empty()) {
      if (r.iteration != 0) throw ParseError(line_no, "first row must have iteration 0");
    } else {
      const auto& p = rec.rows.back();
      if (r.iteration <= p.iteration) throw ParseError(line_no, "iteration column not strictly increasing");
      if (r.elapsed_sec < p.elapsed_sec) throw ParseError(line_no, "elapsed_sec decreased");
      if (r.feval < p.feval || r.geval < p.geval) throw ParseError(line_no, "oracle count decreased");
    }
    rec.rows.push_back(r);
  }
  if (!header_seen) throw ParseError(line_no, "missing header");
  return rec;
}

void write_trajectory_csv(const optim::TrajectoryRecord& record, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << format_trajectory_csv(record);
  if (!out) throw IoError("write failed for '" + path + "'");
}

optim::TrajectoryRecord read_trajectory_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_trajectory_csv(buf.str());
}

}  // namespace nsbench::bench
