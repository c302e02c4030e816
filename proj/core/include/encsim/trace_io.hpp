#pragma once
/// \file trace_io.hpp
/// \brief Trace export: fixed-schema CSV (time plus eight columns per
///        agent) and the companion event log CSV.

#include <filesystem>
#include <string>

#include "encsim/sim.hpp"

namespace encsim {

/// Formats a double with 9 significant digits, '.' decimal point, no
/// thousands separators.
std::string format_number(double value);

/// CSV header: time, then per agent {px, py, theta, theta_cmd, mode, delta,
/// activated, phase}, columns prefixed a<id>_.
std::string trace_csv_header(const SimulationTrace& trace);

/// Full trace CSV (LF line endings, UTF-8).
std::string trace_to_csv(const SimulationTrace& trace);

/// Event log CSV with columns time,kind,agent (agent 0 = system-wide).
std::string events_to_csv(const SimulationTrace& trace);

/// Writes the trace CSV to `path` and the event log next to it, replacing
/// the extension with ".events.csv". Returns the event-log path.
std::filesystem::path write_trace_files(const std::filesystem::path& path,
                                        const SimulationTrace& trace);

}  // namespace encsim
