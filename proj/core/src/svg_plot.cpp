#include "encsim/svg_plot.hpp"

#include <algorithm>
#include <sstream>

#include "encsim/trace_io.hpp"

namespace encsim {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

struct Mapper {
    double min_x, min_y, scale;
    double height;
    double x(double wx) const { return (wx - min_x) * scale + 20.0; }
    // SVG y grows downward.
    double y(double wy) const { return height - ((wy - min_y) * scale + 20.0); }
};

}  // namespace

std::string render_trace_svg(const SimulationTrace& trace, const ScenarioConfig& config,
                             int width_px, int height_px) {
    double min_x = 1e300, min_y = 1e300, max_x = -1e300, max_y = -1e300;
    const auto grow = [&](const Vec2& p) {
        min_x = std::min(min_x, p.x);
        min_y = std::min(min_y, p.y);
        max_x = std::max(max_x, p.x);
        max_y = std::max(max_y, p.y);
    };
    for (const StepRecord& row : trace.steps) {
        for (const AgentStepRecord& a : row.agents) grow(a.position);
    }
    for (const AgentConfig& a : config.agents) {
        grow(a.target);
        grow(a.position);
    }
    if (min_x > max_x) { min_x = min_y = 0.0; max_x = max_y = 1.0; }
    const double span_x = std::max(1e-9, max_x - min_x);
    const double span_y = std::max(1e-9, max_y - min_y);
    const double scale =
        std::min((width_px - 40.0) / span_x, (height_px - 40.0) / span_y);
    const Mapper m{min_x, min_y, scale, static_cast<double>(height_px)};

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_px << "\" height=\""
        << height_px << "\" viewBox=\"0 0 " << width_px << " " << height_px << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    const int n = static_cast<int>(trace.agent_ids.size());
    for (int i = 0; i < n; ++i) {
        const char* color = kPalette[i % 8];
        // Full trajectory.
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (const StepRecord& row : trace.steps) {
            svg << format_number(m.x(row.agents[i].position.x)) << ','
                << format_number(m.y(row.agents[i].position.y)) << ' ';
        }
        svg << "\"/>\n";
        // Filter-active stretches, drawn thicker on top.
        bool open = false;
        std::ostringstream seg;
        const auto flush = [&]() {
            if (!open) return;
            svg << "<polyline class=\"active\" fill=\"none\" stroke=\"" << color
                << "\" stroke-width=\"4\" stroke-opacity=\"0.35\" points=\"" << seg.str()
                << "\"/>\n";
            seg.str("");
            open = false;
        };
        for (const StepRecord& row : trace.steps) {
            if (row.agents[i].activated) {
                seg << format_number(m.x(row.agents[i].position.x)) << ','
                    << format_number(m.y(row.agents[i].position.y)) << ' ';
                open = true;
            } else {
                flush();
            }
        }
        flush();
        // Start circle and target square.
        const Vec2 start = config.agents[i].position;
        const Vec2 target = config.agents[i].target;
        svg << "<circle cx=\"" << format_number(m.x(start.x)) << "\" cy=\""
            << format_number(m.y(start.y)) << "\" r=\"4\" fill=\"" << color << "\"/>\n";
        svg << "<rect x=\"" << format_number(m.x(target.x) - 4.0) << "\" y=\""
            << format_number(m.y(target.y) - 4.0)
            << "\" width=\"8\" height=\"8\" fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
    }

    // Event markers at the emitting agent's position (skip system events).
    for (const Event& e : trace.events) {
        if (e.agent_id == 0) continue;
        const auto it = std::find(trace.agent_ids.begin(), trace.agent_ids.end(), e.agent_id);
        if (it == trace.agent_ids.end()) continue;
        const int idx = static_cast<int>(it - trace.agent_ids.begin());
        const std::size_t step = std::min<std::size_t>(
            trace.steps.size() - 1,
            static_cast<std::size_t>(std::llround(e.time / std::max(trace.dt, 1e-9))));
        const Vec2 p = trace.steps[step].agents[idx].position;
        svg << "<g class=\"event\" data-kind=\"" << to_string(e.kind) << "\"><circle cx=\""
            << format_number(m.x(p.x)) << "\" cy=\"" << format_number(m.y(p.y))
            << "\" r=\"3\" fill=\"black\" fill-opacity=\"0.5\"/></g>\n";
    }

    svg << "</svg>\n";
    return svg.str();
}

}  // namespace encsim
