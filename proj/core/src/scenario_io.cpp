#include "encsim/scenario_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace encsim {

namespace {

using Json = nlohmann::ordered_json;

const char* to_string(MotionModel m) {
    return m == MotionModel::SingleIntegrator ? "single_integrator" : "unicycle";
}

const char* to_string(ControllerKind c) {
    switch (c) {
        case ControllerKind::Cbf: return "cbf";
        case ControllerKind::VelocityObstacle: return "vo";
        case ControllerKind::PotentialField: return "pf";
    }
    return "?";
}

MotionModel parse_model(const std::string& s) {
    if (s == "single_integrator") return MotionModel::SingleIntegrator;
    if (s == "unicycle") return MotionModel::Unicycle;
    throw ParseError("physics.model: unknown value '" + s + "'");
}

ControllerKind parse_controller(const std::string& s) {
    if (s == "cbf") return ControllerKind::Cbf;
    if (s == "vo") return ControllerKind::VelocityObstacle;
    if (s == "pf") return ControllerKind::PotentialField;
    throw ParseError("agent.controller: unknown value '" + s + "'");
}

Strategy parse_strategy(const std::string& s) {
    if (s == "none") return Strategy::None;
    if (s == "fixed") return Strategy::FixedPriority;
    if (s == "adaptive") return Strategy::Adaptive;
    throw ParseError("agent.strategy: unknown value '" + s + "'");
}

Vec2 parse_vec2(const Json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw ParseError(field + ": expected [x, y]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

template <typename T>
T get_or(const Json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const Json::exception&) {
        throw ParseError(std::string(key) + ": wrong type");
    }
}

}  // namespace

ScenarioConfig parse_scenario(const std::string& json_text) {
    Json doc;
    try {
        doc = Json::parse(json_text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("top level: expected an object");
    if (!doc.contains("schema_version")) throw ParseError("schema_version: missing");

    ScenarioConfig cfg;
    try {
        cfg.schema_version = doc.at("schema_version").get<int>();
        if (doc.contains("physics")) {
            const Json& ph = doc.at("physics");
            cfg.speed = get_or(ph, "speed", cfg.speed);
            cfg.dt = get_or(ph, "dt", cfg.dt);
            cfg.heading_gain = get_or(ph, "heading_gain", cfg.heading_gain);
            if (ph.contains("model")) cfg.model = parse_model(ph.at("model").get<std::string>());
        }
        if (doc.contains("safety")) {
            const Json& sf = doc.at("safety");
            cfg.margin = get_or(sf, "margin", cfg.margin);
            cfg.alpha = get_or(sf, "alpha", cfg.alpha);
        }
        if (doc.contains("tolerances")) {
            const Json& tl = doc.at("tolerances");
            cfg.tol.tie = get_or(tl, "tie", cfg.tol.tie);
            cfg.tol.rate = get_or(tl, "rate", cfg.tol.rate);
            cfg.tol.reach = get_or(tl, "reach", cfg.tol.reach);
            cfg.tol.angle = get_or(tl, "angle", cfg.tol.angle);
        }
        if (doc.contains("interactive")) {
            const Json& in = doc.at("interactive");
            cfg.interactive.gain = get_or(in, "gain", cfg.interactive.gain);
            cfg.interactive.timeout_s = get_or(in, "timeout", cfg.interactive.timeout_s);
            cfg.interactive.min_pose_separation =
                get_or(in, "min_pose_separation", cfg.interactive.min_pose_separation);
        }
        if (doc.contains("vo")) cfg.vo_horizon = get_or(doc.at("vo"), "horizon", cfg.vo_horizon);
        if (doc.contains("pf")) {
            const Json& pf = doc.at("pf");
            cfg.pf.k_att = get_or(pf, "k_att", cfg.pf.k_att);
            cfg.pf.k_rep = get_or(pf, "k_rep", cfg.pf.k_rep);
            cfg.pf.influence_radius = get_or(pf, "influence_radius", cfg.pf.influence_radius);
        }
        cfg.horizon_s = get_or(doc, "horizon", cfg.horizon_s);
        cfg.rng_seed = get_or(doc, "rng_seed", cfg.rng_seed);
        cfg.allow_target_conflict =
            get_or(doc, "allow_target_conflict", cfg.allow_target_conflict);

        if (!doc.contains("agents") || !doc.at("agents").is_array()) {
            throw ParseError("agents: missing or not an array");
        }
        int index = 0;
        for (const Json& ja : doc.at("agents")) {
            const std::string tag = "agents[" + std::to_string(index++) + "].";
            if (!ja.is_object()) throw ParseError(tag + ": expected an object");
            AgentConfig a;
            a.id = get_or(ja, "id", 0);
            if (!ja.contains("position")) throw ParseError(tag + "position: missing");
            a.position = parse_vec2(ja.at("position"), tag + "position");
            if (!ja.contains("target")) throw ParseError(tag + "target: missing");
            a.target = parse_vec2(ja.at("target"), tag + "target");
            if (ja.contains("heading")) a.heading = ja.at("heading").get<double>();
            a.lambda = get_or(ja, "lambda", 1);
            if (ja.contains("controller")) {
                a.controller = parse_controller(ja.at("controller").get<std::string>());
            }
            if (ja.contains("strategy")) {
                a.strategy = parse_strategy(ja.at("strategy").get<std::string>());
            }
            a.knows_opponent_target = get_or(ja, "knows_opponent_target", true);
            cfg.agents.push_back(a);
        }
    } catch (const Json::exception& e) {
        throw ParseError(std::string("malformed scenario: ") + e.what());
    }

    try {
        validate_scenario(cfg);
    } catch (const ScenarioError&) {
        throw;  // distinct from parse errors: exit code 3 vs 2 at the CLI
    }
    return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
    return parse_scenario(read_text_file(path));
}

std::string serialize_scenario(const ScenarioConfig& cfg) {
    Json doc;
    doc["schema_version"] = cfg.schema_version;
    doc["physics"] = {{"model", to_string(cfg.model)},
                      {"speed", cfg.speed},
                      {"heading_gain", cfg.heading_gain},
                      {"dt", cfg.dt}};
    doc["safety"] = {{"margin", cfg.margin}, {"alpha", cfg.alpha}};
    doc["tolerances"] = {{"tie", cfg.tol.tie},
                         {"rate", cfg.tol.rate},
                         {"reach", cfg.tol.reach},
                         {"angle", cfg.tol.angle}};
    doc["interactive"] = {{"gain", cfg.interactive.gain},
                          {"timeout", cfg.interactive.timeout_s},
                          {"min_pose_separation", cfg.interactive.min_pose_separation}};
    doc["vo"] = {{"horizon", cfg.vo_horizon}};
    doc["pf"] = {{"k_att", cfg.pf.k_att},
                 {"k_rep", cfg.pf.k_rep},
                 {"influence_radius", cfg.pf.influence_radius}};
    doc["horizon"] = cfg.horizon_s;
    doc["rng_seed"] = cfg.rng_seed;
    doc["allow_target_conflict"] = cfg.allow_target_conflict;
    doc["agents"] = Json::array();
    for (const AgentConfig& a : cfg.agents) {
        Json ja;
        ja["id"] = a.id;
        ja["position"] = {a.position.x, a.position.y};
        if (a.heading) ja["heading"] = *a.heading;
        ja["target"] = {a.target.x, a.target.y};
        ja["lambda"] = a.lambda;
        ja["controller"] = to_string(a.controller);
        ja["strategy"] = encsim::to_string(a.strategy);
        ja["knows_opponent_target"] = a.knows_opponent_target;
        doc["agents"].push_back(std::move(ja));
    }
    return doc.dump(2) + "\n";
}

std::string serialize_stats(const MonteCarloResult& result) {
    Json doc;
    doc["n"] = result.n;
    doc["seed"] = result.seed;
    doc["strategies"] = Json::object();
    for (const char* name : kStrategyNames) {
        const auto it = result.stats.find(name);
        if (it == result.stats.end()) continue;
        doc["strategies"][name] = {{"mean_completion_s", it->second.mean_completion_s},
                                   {"reduction_pct", it->second.reduction_pct},
                                   {"violations", it->second.violations}};
    }
    doc["scenarios"] = Json::array();
    for (const ScenarioOutcome& sc : result.scenarios) {
        Json row;
        row["index"] = sc.index;
        row["seed"] = sc.seed;
        row["completion_s"] = Json::object();
        for (const char* name : kStrategyNames) {
            const auto it = sc.completion_s.find(name);
            if (it != sc.completion_s.end()) row["completion_s"][name] = it->second;
        }
        row["maintain_blocking_s"] = sc.maintain_blocking_s;
        row["min_separation"] = sc.min_separation;
        doc["scenarios"].push_back(std::move(row));
    }
    return doc.dump(2) + "\n";
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace encsim
