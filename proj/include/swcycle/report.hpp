#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "swcycle/converter.hpp"

namespace swcycle {

using Json = nlohmann::ordered_json;

/// Shortest text for v rounded to 12 significant digits.
std::string format_number(double v);

/// CSV: t,x,y,mode,arc_index. One row per stored sample.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
/// CSV: t,side,x,y. One row per threshold hit.
void write_events_csv(std::ostream& out, const Trajectory& traj);
/// CSV: t,i_l,u_c,mode,arc_index for a trajectory of the rotated converter.
void write_converter_csv(std::ostream& out, const Trajectory& traj, const Eigen::Vector2d& n);
/// CSV with the SweepRow columns plus an error column.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

Json to_json(const HypothesisReport& report);
Json to_json(const SlidingAnalysis& analysis);
Json to_json(const LimitCycle& cycle);
Json to_json(const CaseStudy& study);
Json error_json(const NumericError& error);

/// Pretty-printed JSON with every number rounded to 12 significant digits,
/// keys in insertion order, trailing newline.
std::string dump(const Json& doc);

}  // namespace swcycle
