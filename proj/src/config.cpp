#include "fns/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <stdexcept>

namespace fns {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw std::invalid_argument("config: " + where + ": " + what);
}

void check_keys(const json& j, const std::string& where,
                const std::set<std::string>& allowed) {
    if (!j.is_object()) fail(where, "expected an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key())) fail(where + "." + it.key(), "unknown key");
}

double get_number(const json& j, const std::string& where) {
    if (!j.is_number()) fail(where, "expected a number");
    return j.get<double>();
}

int get_int(const json& j, const std::string& where) {
    if (!j.is_number_integer()) fail(where, "expected an integer");
    return j.get<int>();
}

std::string get_string(const json& j, const std::string& where) {
    if (!j.is_string()) fail(where, "expected a string");
    return j.get<std::string>();
}

}  // namespace

SolverConfig parse_solver_config(const nlohmann::json& j) {
    SolverConfig cfg;
    check_keys(j, "<root>",
               {"gamma", "dim", "n", "t_end", "dt", "method", "output_every",
                "snapshot_every", "q_list", "picard", "initial"});

    if (j.contains("gamma")) cfg.gamma = get_number(j["gamma"], "gamma");
    if (j.contains("dim")) cfg.dim = get_int(j["dim"], "dim");
    if (j.contains("n")) cfg.n = get_int(j["n"], "n");
    if (j.contains("t_end")) cfg.t_end = get_number(j["t_end"], "t_end");
    if (j.contains("dt")) cfg.dt = get_number(j["dt"], "dt");
    if (j.contains("method")) cfg.method = parse_method(get_string(j["method"], "method"));
    if (j.contains("output_every"))
        cfg.output_every = get_int(j["output_every"], "output_every");
    if (j.contains("snapshot_every"))
        cfg.snapshot_every = get_int(j["snapshot_every"], "snapshot_every");

    if (j.contains("q_list")) {
        const json& ql = j["q_list"];
        if (!ql.is_array()) fail("q_list", "expected an array");
        for (std::size_t i = 0; i < ql.size(); ++i) {
            const json& e = ql[i];
            const std::string where = "q_list[" + std::to_string(i) + "]";
            if (e.is_string()) {
                if (e.get<std::string>() != "inf")
                    fail(where, "string entries must be \"inf\"");
                cfg.q_list.push_back(std::numeric_limits<double>::infinity());
            } else {
                cfg.q_list.push_back(get_number(e, where));
            }
        }
    }

    if (j.contains("picard")) {
        const json& p = j["picard"];
        check_keys(p, "picard", {"tol", "max_iter", "nodes"});
        if (p.contains("tol")) cfg.picard_tol = get_number(p["tol"], "picard.tol");
        if (p.contains("max_iter"))
            cfg.picard_max_iter = get_int(p["max_iter"], "picard.max_iter");
        if (p.contains("nodes")) cfg.picard_nodes = get_int(p["nodes"], "picard.nodes");
    }

    if (j.contains("initial")) {
        const json& in = j["initial"];
        check_keys(in, "initial", {"kind", "amplitude", "gevrey_radius", "seed", "path"});
        if (in.contains("kind"))
            cfg.initial.kind = parse_initial_kind(get_string(in["kind"], "initial.kind"));
        if (in.contains("amplitude"))
            cfg.initial.amplitude = get_number(in["amplitude"], "initial.amplitude");
        if (in.contains("gevrey_radius"))
            cfg.initial.gevrey_radius =
                get_number(in["gevrey_radius"], "initial.gevrey_radius");
        if (in.contains("seed")) {
            const bool ok = in["seed"].is_number_unsigned() ||
                            (in["seed"].is_number_integer() && in["seed"].get<std::int64_t>() >= 0);
            if (!ok) fail("initial.seed", "expected a non-negative integer");
            cfg.initial.seed = in["seed"].get<std::uint64_t>();
        }
        if (in.contains("path")) cfg.initial.path = get_string(in["path"], "initial.path");
        if (cfg.initial.kind == InitialKind::file && cfg.initial.path.empty())
            fail("initial.path", "required when kind is \"file\"");
    }

    cfg.validate();
    return cfg;
}

SolverConfig load_solver_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("config: " + path + ": " + e.what());
    }
    return parse_solver_config(j);
}

nlohmann::json config_to_json(const SolverConfig& cfg) {
    json j;
    j["gamma"] = cfg.gamma;
    j["dim"] = cfg.dim;
    j["n"] = cfg.n;
    j["t_end"] = cfg.t_end;
    j["dt"] = cfg.dt;
    j["method"] = to_string(cfg.method);
    j["output_every"] = cfg.output_every;
    j["snapshot_every"] = cfg.snapshot_every;
    json ql = json::array();
    for (double q : cfg.q_list) {
        if (std::isinf(q))
            ql.push_back("inf");
        else
            ql.push_back(q);
    }
    j["q_list"] = ql;
    j["picard"] = {{"tol", cfg.picard_tol},
                   {"max_iter", cfg.picard_max_iter},
                   {"nodes", cfg.picard_nodes}};
    json in;
    in["kind"] = to_string(cfg.initial.kind);
    in["amplitude"] = cfg.initial.amplitude;
    in["gevrey_radius"] = cfg.initial.gevrey_radius;
    in["seed"] = cfg.initial.seed;
    in["path"] = cfg.initial.path;
    j["initial"] = in;
    return j;
}

}  // namespace fns
