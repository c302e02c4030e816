#pragma once
/// \file svg_plot.hpp
/// \brief Overhead SVG plot of a simulation trace: one trajectory polyline
///        per airplane, square target markers, circle start markers,
///        highlighted filter-active segments, and event markers.

#include <string>

#include "encsim/scenario.hpp"
#include "encsim/sim.hpp"

namespace encsim {

std::string render_trace_svg(const SimulationTrace& trace, const ScenarioConfig& config,
                             int width_px = 800, int height_px = 600);

}  // namespace encsim
