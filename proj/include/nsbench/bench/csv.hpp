#pragma once

#include <string>
#include <string_view>

#include "nsbench/optim/trajectory.hpp"

namespace nsbench::bench {

// Metadata as "# key=value" lines, then the header iter,elapsed_sec,f,feval,geval.
// elapsed_sec has nine decimals; f is the shortest text that reads back exactly.
std::string format_trajectory_csv(const optim::TrajectoryRecord& record);
// Throws ParseError with the 1-based line number of the offending row.
optim::TrajectoryRecord parse_trajectory_csv(std::string_view text);

void write_trajectory_csv(const optim::TrajectoryRecord& record, const std::string& path);
optim::TrajectoryRecord read_trajectory_csv(const std::string& path);

// Shortest round-trip decimal form.
std::string format_double(double v);

}  // namespace nsbench::bench
