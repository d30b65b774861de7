#include "nlqs/app/config.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <cmath>
#include <sstream>
#include <tuple>

#include "nlqs/error.hpp"

namespace nlqs::app {

namespace {

using nlohmann::json;

constexpr std::array kKnownKeys = {"kind",  "lambda", "mu",      "eta",         "spectrum_path", "alpha_sq",
                                   "tau_max", "steps", "epsilon", "observables", "l_max",         "quad_order"};

int line_at_offset(std::string_view text, std::size_t offset) {
    offset = std::min(offset, text.size());
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

class Reader {
public:
    Reader(std::string_view text, std::string source, json doc)
        : text_(text), source_(std::move(source)), doc_(std::move(doc)) {}

    [[noreturn]] void fail(std::string_view key, const std::string& message) const {
        throw ConfigError(source_, line_of(key), message);
    }

    int line_of(std::string_view key) const {
        const std::string quoted = "\"" + std::string(key) + "\"";
        const auto pos = text_.find(quoted);
        return pos == std::string_view::npos ? 0 : line_at_offset(text_, pos);
    }

    bool has(const char* key) const { return doc_.contains(key); }
    const json& at(const char* key) const { return doc_.at(key); }

    double number(const char* key) const {
        const auto& v = doc_.at(key);
        if (!v.is_number()) fail(key, std::string("'") + key + "' must be a number");
        return v.get<double>();
    }

    double number_or(const char* key, double fallback) const { return has(key) ? number(key) : fallback; }

    int integer(const char* key) const {
        const auto& v = doc_.at(key);
        if (!v.is_number_integer()) fail(key, std::string("'") + key + "' must be an integer");
        return v.get<int>();
    }

    std::optional<int> integer_or_auto(const char* key) const {
        if (!has(key)) return std::nullopt;
        const auto& v = doc_.at(key);
        if (v.is_string() && v.get<std::string>() == "auto") return std::nullopt;
        if (!v.is_number_integer()) fail(key, std::string("'") + key + "' must be an integer or \"auto\"");
        return v.get<int>();
    }

    std::string string(const char* key) const {
        const auto& v = doc_.at(key);
        if (!v.is_string()) fail(key, std::string("'") + key + "' must be a string");
        return v.get<std::string>();
    }

    const json& doc() const { return doc_; }

private:
    std::string_view text_;
    std::string source_;
    json doc_;
};

const char* parameter_key(Kind kind) {
    switch (kind) {
        case Kind::rai_agarwal: return "mu";
        case Kind::q_deformed: return "lambda";
        case Kind::trapped_ion: return "eta";
        case Kind::spectrum: return "spectrum_path";
        case Kind::identity: return nullptr;
    }
    return nullptr;
}

}  // namespace

RunConfig parse_config(std::string_view text, const std::string& source, const std::filesystem::path& base_dir) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ConfigError(source, line_at_offset(text, e.byte > 0 ? e.byte - 1 : 0), "invalid JSON");
    }
    if (!doc.is_object()) throw ConfigError(source, 1, "config must be a JSON object");
    const Reader r(text, source, doc);

    for (const auto& [key, value] : doc.items()) {
        if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end()) {
            r.fail(key, "unknown key '" + key + "'");
        }
    }
    if (!r.has("kind")) throw ConfigError(source, 1, "missing required key 'kind'");
    if (!r.has("alpha_sq")) throw ConfigError(source, 1, "missing required key 'alpha_sq'");

    RunConfig cfg;
    cfg.source = source;
    auto& sim = cfg.sim;

    Kind kind{};
    try {
        kind = parse_kind(r.string("kind"));
    } catch (const DomainError& e) {
        r.fail("kind", e.what());
    }
    const char* own_key = parameter_key(kind);
    for (const char* key : {"mu", "lambda", "eta", "spectrum_path"}) {
        const bool mine = own_key != nullptr && std::string_view(key) == own_key;
        if (r.has(key) && !mine) {
            r.fail(key, std::string("'") + key + "' does not apply to kind '" + std::string(kind_name(kind)) + "'");
        }
        if (mine && !r.has(key)) {
            throw ConfigError(source, r.line_of("kind"),
                              "kind '" + std::string(kind_name(kind)) + "' requires '" + key + "'");
        }
    }

    try {
        switch (kind) {
            case Kind::identity: sim.spec = NonlinearitySpec::identity(); break;
            case Kind::rai_agarwal: sim.spec = NonlinearitySpec::rai_agarwal(r.number("mu")); break;
            case Kind::q_deformed: sim.spec = NonlinearitySpec::q_deformed(r.number("lambda")); break;
            case Kind::trapped_ion: sim.spec = NonlinearitySpec::trapped_ion(r.number("eta")); break;
            case Kind::spectrum: {
                std::filesystem::path p = r.string("spectrum_path");
                if (p.is_relative()) p = base_dir / p;
                cfg.spectrum_path = p;
                sim.spec = NonlinearitySpec::spectrum(read_spectrum_file(p));
                break;
            }
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const DomainError& e) {
        r.fail(own_key != nullptr ? own_key : "kind", e.what());
    }

    sim.alpha_sq = r.number("alpha_sq");
    sim.tau_max = r.number_or("tau_max", sim.tau_max);
    if (r.has("steps")) sim.steps = r.integer("steps");
    sim.epsilon = r.number_or("epsilon", sim.epsilon);
    sim.l_max = r.integer_or_auto("l_max");
    sim.quad_order = r.integer_or_auto("quad_order");

    if (r.has("observables")) {
        const auto& list = r.at("observables");
        if (!list.is_array() || list.empty()) r.fail("observables", "'observables' must be a non-empty array");
        sim.observables.clear();
        for (const auto& item : list) {
            if (!item.is_string()) r.fail("observables", "observable names must be strings");
            Observable o{};
            try {
                o = parse_observable(item.get<std::string>());
            } catch (const DomainError& e) {
                r.fail("observables", e.what());
            }
            if (std::find(sim.observables.begin(), sim.observables.end(), o) != sim.observables.end()) {
                r.fail("observables", "duplicate observable '" + item.get<std::string>() + "'");
            }
            sim.observables.push_back(o);
        }
    }

    // Map each validation failure back to the key that caused it.
    const std::array<std::tuple<const char*, bool, const char*>, 6> checks = {{
        {"alpha_sq", std::isfinite(sim.alpha_sq) && sim.alpha_sq >= 0.0, "must be finite and >= 0"},
        {"tau_max", std::isfinite(sim.tau_max) && sim.tau_max > 0.0, "must be finite and > 0"},
        {"steps", sim.steps >= 2, "must be >= 2"},
        {"epsilon", sim.epsilon > 0.0 && sim.epsilon <= 1e-3, "must lie in (0, 1e-3]"},
        {"l_max", !sim.l_max || (*sim.l_max >= 0 && *sim.l_max <= 128), "must lie in [0, 128]"},
        {"quad_order", !sim.quad_order || (*sim.quad_order >= 1 && *sim.quad_order <= 256), "must lie in [1, 256]"},
    }};
    for (const auto& [key, ok, rule] : checks) {
        if (!ok) r.fail(key, std::string("'") + key + "' " + rule);
    }
    if (sim.l_max && sim.quad_order && *sim.quad_order < 2 * *sim.l_max) {
        r.fail("quad_order", "'quad_order' must be >= 2*l_max");
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path.string(), 0, "cannot open config file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), path.string(), path.parent_path());
}

nlohmann::json config_to_json(const RunConfig& config) {
    const auto& sim = config.sim;
    json j;
    j["kind"] = std::string(kind_name(sim.spec.kind()));
    if (const auto* ra = sim.spec.get_if<RaiAgarwal>()) j["mu"] = ra->mu;
    if (const auto* q = sim.spec.get_if<QDeformed>()) j["lambda"] = q->lambda;
    if (const auto* ti = sim.spec.get_if<TrappedIon>()) j["eta"] = ti->eta;
    if (config.spectrum_path) j["spectrum_path"] = config.spectrum_path->string();
    j["alpha_sq"] = sim.alpha_sq;
    j["tau_max"] = sim.tau_max;
    j["steps"] = sim.steps;
    j["epsilon"] = sim.epsilon;
    json obs = json::array();
    for (Observable o : sim.observables) obs.push_back(std::string(observable_name(o)));
    j["observables"] = obs;
    j["l_max"] = sim.l_max ? json(*sim.l_max) : json("auto");
    j["quad_order"] = sim.quad_order ? json(*sim.quad_order) : json("auto");
    return j;
}

RunConfig with_parameter(const RunConfig& config, std::string_view param, double value) {
    RunConfig out = config;
    const Kind kind = config.sim.spec.kind();
    const auto mismatch = [&] {
        return ConfigError(config.source, 0,
                           "parameter '" + std::string(param) + "' does not apply to kind '" +
                               std::string(kind_name(kind)) + "'");
    };
    try {
        if (param == "alpha_sq") {
            if (!std::isfinite(value) || value < 0.0) throw DomainError("alpha_sq must be finite and >= 0");
            out.sim.alpha_sq = value;
        } else if (param == "lambda") {
            if (kind != Kind::q_deformed) throw mismatch();
            out.sim.spec = NonlinearitySpec::q_deformed(value);
        } else if (param == "mu") {
            if (kind != Kind::rai_agarwal) throw mismatch();
            out.sim.spec = NonlinearitySpec::rai_agarwal(value);
        } else if (param == "eta") {
            if (kind != Kind::trapped_ion) throw mismatch();
            out.sim.spec = NonlinearitySpec::trapped_ion(value);
        } else {
            throw ConfigError(config.source, 0,
                              "unknown sweep parameter '" + std::string(param) + "' (expected lambda, eta, mu or alpha_sq)");
        }
    } catch (const DomainError& e) {
        throw ConfigError(config.source, 0, "sweep value " + std::to_string(value) + ": " + e.what());
    }
    return out;
}

}  // namespace nlqs::app
