#include "encsim/trace_io.hpp"

#include <cstdio>

#include "encsim/scenario_io.hpp"

namespace encsim {

namespace {

const char* to_string(ModeKind m) {
    switch (m) {
        case ModeKind::Cruising: return "cruising";
        case ModeKind::Avoiding: return "avoiding";
        case ModeKind::Blocking: return "blocking";
    }
    return "?";
}

const char* to_string(Phase p) {
    switch (p) {
        case Phase::Normal: return "normal";
        case Phase::Interacting: return "interacting";
        case Phase::Unblocking: return "unblocking";
    }
    return "?";
}

}  // namespace

std::string format_number(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", value);
    return buf;
}

std::string trace_csv_header(const SimulationTrace& trace) {
    std::string header = "time";
    for (int id : trace.agent_ids) {
        const std::string p = ",a" + std::to_string(id) + "_";
        for (const char* col :
             {"px", "py", "theta", "theta_cmd", "mode", "delta", "activated", "phase"}) {
            header += p + col;
        }
    }
    return header;
}

std::string trace_to_csv(const SimulationTrace& trace) {
    std::string out = trace_csv_header(trace);
    out += '\n';
    for (const StepRecord& row : trace.steps) {
        out += format_number(row.time);
        for (const AgentStepRecord& a : row.agents) {
            out += ',';
            out += format_number(a.position.x);
            out += ',';
            out += format_number(a.position.y);
            out += ',';
            out += format_number(a.heading);
            out += ',';
            out += format_number(a.heading_cmd);
            out += ',';
            out += to_string(a.mode);
            out += ',';
            out += format_number(a.delta);
            out += ',';
            out += a.activated ? '1' : '0';
            out += ',';
            out += to_string(a.phase);
        }
        out += '\n';
    }
    return out;
}

std::string events_to_csv(const SimulationTrace& trace) {
    std::string out = "time,kind,agent\n";
    for (const Event& e : trace.events) {
        out += format_number(e.time);
        out += ',';
        out += to_string(e.kind);
        out += ',';
        out += std::to_string(e.agent_id);
        out += '\n';
    }
    return out;
}

std::filesystem::path write_trace_files(const std::filesystem::path& path,
                                        const SimulationTrace& trace) {
    write_text_file(path, trace_to_csv(trace));
    std::filesystem::path events_path = path;
    events_path.replace_extension(".events.csv");
    write_text_file(events_path, events_to_csv(trace));
    return events_path;
}

}  // namespace encsim
