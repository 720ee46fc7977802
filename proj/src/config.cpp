#include "stirap/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "stirap/errors.hpp"

namespace stirap {

using nlohmann::json;

int Document::line_of(const std::string& section, const std::string& key) const {
    auto it = lines.find(key.empty() ? section : section + "." + key);
    return it == lines.end() ? 0 : it->second;
}

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

json scalar(const std::string& raw) {
    if (raw == "true") return true;
    if (raw == "false") return false;
    double v = 0.0;
    const char* end = raw.data() + raw.size();
    auto [ptr, ec] = std::from_chars(raw.data(), end, v);
    if (ec == std::errc() && ptr == end) return v;
    return raw;
}

json value_of(const std::string& raw) {
    if (raw.find(',') == std::string::npos) return scalar(raw);
    json arr = json::array();
    std::stringstream ss(raw);
    std::string item;
    while (std::getline(ss, item, ',')) arr.push_back(scalar(trim(item)));
    return arr;
}

} // namespace

Document parse_text(const std::string& text) {
    Document doc;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto cut = line.find_first_of("#;");
        const std::string body = trim(cut == std::string::npos ? line : line.substr(0, cut));
        if (body.empty()) continue;
        if (body.front() == '[') {
            if (body.back() != ']') throw ConfigError("", "malformed section header '" + body + "'", lineno);
            section = trim(body.substr(1, body.size() - 2));
            if (section.empty()) throw ConfigError("", "empty section name", lineno);
            if (doc.root.contains(section)) throw ConfigError(section, "duplicate section", lineno);
            doc.root[section] = json::object();
            doc.lines[section] = lineno;
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string::npos) throw ConfigError("", "expected 'key = value', got '" + body + "'", lineno);
        const std::string key = trim(body.substr(0, eq));
        const std::string raw = trim(body.substr(eq + 1));
        if (key.empty()) throw ConfigError("", "missing key before '='", lineno);
        if (section.empty()) throw ConfigError(key, "key outside of any [section]", lineno);
        if (raw.empty()) throw ConfigError(section + "." + key, "missing value", lineno);
        if (doc.root[section].contains(key)) throw ConfigError(section + "." + key, "duplicate key", lineno);
        doc.root[section][key] = value_of(raw);
        doc.lines[section + "." + key] = lineno;
    }
    return doc;
}

Document parse_json(const std::string& text) {
    Document doc;
    try {
        doc.root = json::parse(text);
    } catch (const json::parse_error& e) {
        const std::size_t pos = std::min<std::size_t>(e.byte, text.size());
        const int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + pos, '\n'));
        throw ConfigError("", std::string("invalid JSON: ") + e.what(), line);
    }
    if (!doc.root.is_object()) throw ConfigError("", "top-level JSON value must be an object", 1);
    for (auto& [name, sec] : doc.root.items()) {
        if (!sec.is_object()) throw ConfigError(name, "section must be an object");
    }
    return doc;
}

Document parse_document(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return parse_json(text);
    return parse_text(text);
}

Document load_document(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("", "cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_document(ss.str());
}

std::string_view to_string(SweepAxis a) {
    switch (a) {
        case SweepAxis::gamma_flat: return "gamma_flat";
        case SweepAxis::coupling_sq: return "coupling_sq";
        case SweepAxis::n_bar: return "n_bar";
    }
    return "";
}

SweepAxis sweep_axis_from_string(std::string_view name) {
    if (name == "gamma_flat") return SweepAxis::gamma_flat;
    if (name == "coupling_sq") return SweepAxis::coupling_sq;
    if (name == "n_bar") return SweepAxis::n_bar;
    throw ConfigError("sweep.axis", "expected gamma_flat, coupling_sq or n_bar, got '" + std::string(name) + "'");
}

namespace {

class SectionReader {
public:
    SectionReader(const Document& doc, std::string section, std::set<std::string> allowed)
        : doc_(doc), section_(std::move(section)) {
        if (!doc.root.contains(section_)) return;
        node_ = &doc.root.at(section_);
        for (auto& [key, v] : node_->items()) {
            if (!allowed.count(key)) fail(key, "unknown key");
        }
    }

    [[noreturn]] void fail(const std::string& key, const std::string& what) const {
        throw ConfigError(section_ + "." + key, what, doc_.line_of(section_, key));
    }

    bool has(const std::string& key) const { return node_ && node_->contains(key); }

    void number(const std::string& key, double& out) const {
        if (!has(key)) return;
        const json& v = node_->at(key);
        if (v.is_null()) {
            out = std::numeric_limits<double>::infinity();
            return;
        }
        if (!v.is_number()) fail(key, "expected a number");
        out = v.get<double>();
    }

    void integer(const std::string& key, int& out) const {
        if (!has(key)) return;
        const json& v = node_->at(key);
        if (!v.is_number()) fail(key, "expected an integer");
        const double d = v.get<double>();
        if (d != std::floor(d) || std::abs(d) > 1e9) fail(key, "expected an integer");
        out = static_cast<int>(d);
    }

    void boolean(const std::string& key, bool& out) const {
        if (!has(key)) return;
        const json& v = node_->at(key);
        if (!v.is_boolean()) fail(key, "expected true or false");
        out = v.get<bool>();
    }

    std::string text(const std::string& key, const std::string& fallback) const {
        if (!has(key)) return fallback;
        const json& v = node_->at(key);
        if (!v.is_string()) fail(key, "expected a name");
        return v.get<std::string>();
    }

    std::vector<double> numbers(const std::string& key) const {
        std::vector<double> out;
        if (!has(key)) return out;
        const json& v = node_->at(key);
        if (v.is_number()) return {v.get<double>()};
        if (!v.is_array()) fail(key, "expected a list of numbers");
        for (const auto& item : v) {
            if (!item.is_number()) fail(key, "expected a list of numbers");
            out.push_back(item.get<double>());
        }
        return out;
    }

    std::vector<std::string> names(const std::string& key) const {
        std::vector<std::string> out;
        if (!has(key)) return out;
        const json& v = node_->at(key);
        if (v.is_string()) return {v.get<std::string>()};
        if (!v.is_array()) fail(key, "expected a list of names");
        for (const auto& item : v) {
            if (!item.is_string()) fail(key, "expected a list of names");
            out.push_back(item.get<std::string>());
        }
        return out;
    }

    // Re-tags a ConfigError thrown by a validator with this section and the key's line.
    template <class F>
    void checked(F&& f) const {
        try {
            f();
        } catch (const ConfigError& e) {
            const std::string key = e.field();
            std::string what = e.what();
            const auto colon = what.find(": ");
            if (!key.empty() && colon != std::string::npos) what = what.substr(colon + 2);
            throw ConfigError(section_ + "." + key, what, doc_.line_of(section_, key));
        }
    }

private:
    const Document& doc_;
    std::string section_;
    const json* node_ = nullptr;
};

// Attaches the source line of a "section.key" field.
ConfigError with_line(const Document& doc, const ConfigError& e) {
    const std::string& field = e.field();
    const auto dot = field.find('.');
    if (dot == std::string::npos || e.line() > 0) return e;
    std::string what = e.what();
    const auto colon = what.find(": ");
    if (colon != std::string::npos) what = what.substr(colon + 2);
    return ConfigError(field, what, doc.line_of(field.substr(0, dot), field.substr(dot + 1)));
}

void check_sections(const Document& doc, const std::set<std::string>& allowed) {
    for (auto& [name, v] : doc.root.items()) {
        if (!allowed.count(name)) throw ConfigError(name, "unknown section", doc.line_of(name, ""));
    }
}

RunConfig read_run_config(const Document& doc) {
    RunConfig cfg;

    SectionReader pulse(doc, "pulse", {"protocol", "omega0", "sigma", "delay", "alpha", "t_start", "t_end"});
    pulse.checked([&] { cfg.pulse.protocol = protocol_from_string(pulse.text("protocol", "stirap")); });
    pulse.number("omega0", cfg.pulse.omega0);
    pulse.number("sigma", cfg.pulse.sigma);
    if (!(cfg.pulse.sigma > 0)) pulse.fail("sigma", "must be > 0");
    cfg.pulse.delay = default_delay(cfg.pulse.protocol, cfg.pulse.sigma);
    pulse.number("delay", cfg.pulse.delay);
    pulse.number("alpha", cfg.pulse.alpha);
    pulse.number("t_start", cfg.pulse.t_start);
    pulse.number("t_end", cfg.pulse.t_end);
    pulse.checked([&] { validate(cfg.pulse); });

    SectionReader sys(doc, "system",
                      {"delta", "gamma_flat", "n_bar", "coupling_sq", "omega_scale", "bath", "omega_a", "omega_b",
                       "pulse_scaled_coupling"});
    sys.number("delta", cfg.system.delta);
    sys.number("gamma_flat", cfg.system.gamma_flat);
    sys.number("n_bar", cfg.system.n_bar);
    sys.number("coupling_sq", cfg.system.coupling_sq);
    sys.number("omega_scale", cfg.system.omega_scale);
    sys.checked([&] { cfg.system.bath = bath_mode_from_string(sys.text("bath", "flat")); });
    sys.number("omega_a", cfg.system.omega_a);
    sys.number("omega_b", cfg.system.omega_b);
    sys.boolean("pulse_scaled_coupling", cfg.system.pulse_scaled_coupling);
    sys.checked([&] { validate(cfg.system); });

    SectionReader run(doc, "run", {"dt", "stride", "generator", "double_freq", "drive_fraction"});
    run.number("dt", cfg.options.dt_max);
    run.integer("stride", cfg.options.stride);
    run.checked([&] { cfg.options.generator = generator_from_string(run.text("generator", "oracle")); });
    run.boolean("double_freq", cfg.options.double_freq);
    run.number("drive_fraction", cfg.options.drive_fraction);
    if (!(cfg.options.dt_max > 0)) run.fail("dt", "must be > 0");
    if (cfg.options.stride < 0) run.fail("stride", "must be >= 0");
    if (!(cfg.options.drive_fraction >= 0 && cfg.options.drive_fraction < 1))
        run.fail("drive_fraction", "must lie in [0, 1)");
    return cfg;
}

} // namespace

RunConfig run_config_from(const Document& doc) {
    if (doc.root.contains("sweep"))
        throw ConfigError("sweep", "sweep section found; use the sweep subcommand", doc.line_of("sweep", ""));
    check_sections(doc, {"pulse", "system", "run"});
    return read_run_config(doc);
}

RunConfig SweepSpec::run_at(std::size_t i) const {
    RunConfig cfg = base;
    const double v = values.at(i);
    switch (axis) {
        case SweepAxis::gamma_flat: cfg.system.gamma_flat = v; break;
        case SweepAxis::coupling_sq: cfg.system.coupling_sq = v; break;
        case SweepAxis::n_bar: cfg.system.n_bar = v; break;
    }
    return cfg;
}

void validate(const SweepSpec& spec) {
    if (spec.values.empty()) throw ConfigError("sweep.values", "must not be empty");
    for (std::size_t i = 0; i < spec.values.size(); ++i) {
        const double v = spec.values[i];
        if (!std::isfinite(v) || v < 0) throw ConfigError("sweep.values", "entries must be finite and >= 0");
        if (i > 0 && !(v > spec.values[i - 1])) throw ConfigError("sweep.values", "must be strictly increasing");
    }
    if (spec.axis == SweepAxis::gamma_flat && spec.base.system.bath != BathMode::flat)
        throw ConfigError("system.bath", "a gamma_flat sweep requires bath = flat");
    if (spec.axis == SweepAxis::coupling_sq && spec.base.system.bath != BathMode::spectral)
        throw ConfigError("system.bath", "a coupling_sq sweep requires bath = spectral");
    const Observables& o = spec.observables;
    if (!o.bare_pops && !o.bare_cohs && !o.adiabatic_pops)
        throw ConfigError("sweep.observables", "select at least one observable group");
}

SweepSpec sweep_spec_from(const Document& doc) {
    check_sections(doc, {"pulse", "system", "run", "sweep"});
    if (!doc.root.contains("sweep")) throw ConfigError("sweep", "missing [sweep] section");

    SweepSpec spec;
    SectionReader sw(doc, "sweep", {"axis", "values", "start", "stop", "count", "observables"});
    if (!sw.has("axis")) sw.fail("axis", "required");
    if (doc.root.at("sweep").at("axis").is_array()) sw.fail("axis", "exactly one axis per sweep");
    try {
        spec.axis = sweep_axis_from_string(sw.text("axis", ""));
    } catch (const ConfigError& e) {
        throw with_line(doc, e);
    }

    // The bath mode follows the axis unless the system section names one.
    Document adjusted = doc;
    if (!(doc.root.contains("system") && doc.root.at("system").contains("bath"))) {
        if (spec.axis == SweepAxis::coupling_sq) adjusted.root["system"]["bath"] = "spectral";
    }
    adjusted.root.erase("sweep");
    spec.base = read_run_config(adjusted);

    const bool has_list = sw.has("values");
    const bool has_range = sw.has("start") || sw.has("stop") || sw.has("count");
    if (has_list && has_range) sw.fail("values", "give either values or start/stop/count, not both");
    if (has_list) {
        spec.values = sw.numbers("values");
    } else if (has_range) {
        double start = 0.0, stop = 0.0;
        int count = 0;
        if (!sw.has("start") || !sw.has("stop") || !sw.has("count")) sw.fail("count", "start, stop and count go together");
        sw.number("start", start);
        sw.number("stop", stop);
        sw.integer("count", count);
        if (count < 1) sw.fail("count", "must be >= 1");
        for (int i = 0; i < count; ++i)
            spec.values.push_back(count == 1 ? start : start + (stop - start) * i / (count - 1));
    } else {
        sw.fail("values", "required (or start/stop/count)");
    }

    if (sw.has("observables")) {
        Observables o{false, false, false, false};
        for (const auto& name : sw.names("observables")) {
            if (name == "bare_pops") o.bare_pops = true;
            else if (name == "bare_cohs") o.bare_cohs = true;
            else if (name == "adiabatic_pops") o.adiabatic_pops = true;
            else if (name == "finals_only") o.finals_only = true;
            else sw.fail("observables", "unknown observable '" + name + "'");
        }
        if (!o.bare_pops && !o.bare_cohs && !o.adiabatic_pops) o.bare_pops = o.bare_cohs = o.adiabatic_pops = true;
        spec.observables = o;
    }

    try {
        validate(spec);
    } catch (const ConfigError& e) {
        throw with_line(doc, e);
    }
    return spec;
}

json to_json(const RunConfig& cfg) {
    json j;
    j["pulse"] = {{"protocol", std::string(to_string(cfg.pulse.protocol))},
                  {"omega0", cfg.pulse.omega0},
                  {"sigma", cfg.pulse.sigma},
                  {"delay", cfg.pulse.delay},
                  {"alpha", cfg.pulse.alpha},
                  {"t_start", cfg.pulse.t_start},
                  {"t_end", cfg.pulse.t_end}};
    j["system"] = {{"delta", cfg.system.delta},
                   {"gamma_flat", cfg.system.gamma_flat},
                   {"n_bar", cfg.system.n_bar},
                   {"coupling_sq", cfg.system.coupling_sq},
                   {"omega_scale", cfg.system.omega_scale},
                   {"bath", std::string(to_string(cfg.system.bath))},
                   {"omega_a", cfg.system.omega_a},
                   {"omega_b", cfg.system.omega_b},
                   {"pulse_scaled_coupling", cfg.system.pulse_scaled_coupling}};
    j["run"] = {{"dt", std::isfinite(cfg.options.dt_max) ? json(cfg.options.dt_max) : json(nullptr)},
                {"stride", cfg.options.stride},
                {"generator", std::string(to_string(cfg.options.generator))},
                {"double_freq", cfg.options.double_freq},
                {"drive_fraction", cfg.options.drive_fraction}};
    return j;
}

} // namespace stirap
