#include "liemech/scenario.hpp"

#include "liemech/error.hpp"
#include "liemech/format.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace liemech::cli {

using dynamics::Method;

// -----------------------------------------------------------------------------
// Config text
// -----------------------------------------------------------------------------

const ConfigEntry* ConfigDocument::find(const std::string& section, const std::string& key) const {
    const auto it = sections.find(section);
    if (it == sections.end()) return nullptr;
    for (const auto& e : it->second) {
        if (e.key == key) return &e;
    }
    return nullptr;
}

namespace {

[[noreturn]] void parse_fail(int line, int column, const std::string& what) {
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what);
}

bool is_identifier(std::string_view s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
    });
}

int column_of(std::string_view line, std::string_view part) {
    return static_cast<int>(part.data() - line.data()) + 1;
}

}  // namespace

ConfigDocument parse_config(std::string_view text) {
    ConfigDocument doc;
    doc.sections[""];
    std::string current;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find('\n', pos), text.size());
        std::string_view raw = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);

        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        const std::string_view body = trim(line);
        if (body.empty()) {
            if (end == text.size()) break;
            continue;
        }

        if (body.front() == '[') {
            if (body.back() != ']') parse_fail(line_no, column_of(raw, body), "section header is missing ']'");
            const auto name = trim(body.substr(1, body.size() - 2));
            if (!is_identifier(name)) parse_fail(line_no, column_of(raw, body) + 1, "invalid section name");
            current = std::string(name);
            if (doc.sections.count(current) && !doc.sections[current].empty()) {
                parse_fail(line_no, column_of(raw, body), "section [" + current + "] appears twice");
            }
            doc.sections[current];
        } else {
            const auto eq = body.find('=');
            if (eq == std::string_view::npos) parse_fail(line_no, column_of(raw, body), "expected 'key = value'");
            const auto key = trim(body.substr(0, eq));
            const auto value = trim(body.substr(eq + 1));
            if (!is_identifier(key)) parse_fail(line_no, column_of(raw, body), "invalid key");
            const int value_col = value.empty() ? column_of(raw, body) + static_cast<int>(eq) + 1 : column_of(raw, value);
            if (value.empty()) parse_fail(line_no, value_col, "empty value for '" + std::string(key) + "'");
            auto& entries = doc.sections[current];
            const bool repeatable = current == "controls" && key == "row";
            if (!repeatable) {
                for (const auto& e : entries) {
                    if (e.key == key) {
                        parse_fail(line_no, column_of(raw, key),
                                   "duplicate key '" + std::string(key) + "' (first on line " + std::to_string(e.line) + ")");
                    }
                }
            }
            entries.push_back({std::string(key), std::string(value), line_no, value_col});
        }
        if (end == text.size()) break;
    }
    return doc;
}

// -----------------------------------------------------------------------------
// Scenario
// -----------------------------------------------------------------------------

std::optional<ScenarioSystem> scenario_system_from_name(std::string_view name) {
    if (name == "free_euler") return ScenarioSystem::FreeEuler;
    if (name == "heavy_top") return ScenarioSystem::HeavyTop;
    if (name == "hovercraft") return ScenarioSystem::Hovercraft;
    if (name == "satellite") return ScenarioSystem::Satellite;
    if (name == "submarine") return ScenarioSystem::Submarine;
    if (name == "newton_euler") return ScenarioSystem::NewtonEuler;
    if (name == "hamiltonian_particle") return ScenarioSystem::HamiltonianParticle;
    return std::nullopt;
}

std::string_view scenario_system_name(ScenarioSystem s) {
    switch (s) {
        case ScenarioSystem::FreeEuler: return "free_euler";
        case ScenarioSystem::HeavyTop: return "heavy_top";
        case ScenarioSystem::Hovercraft: return "hovercraft";
        case ScenarioSystem::Satellite: return "satellite";
        case ScenarioSystem::Submarine: return "submarine";
        case ScenarioSystem::NewtonEuler: return "newton_euler";
        case ScenarioSystem::HamiltonianParticle: return "hamiltonian_particle";
    }
    return "unknown";
}

namespace {

std::string_view channel_name(Channel c) {
    switch (c) {
        case Channel::Fx: return "fx";
        case Channel::Fy: return "fy";
        case Channel::Fz: return "fz";
        case Channel::Tx: return "tx";
        case Channel::Ty: return "ty";
        case Channel::Tz: return "tz";
    }
    return "?";
}

std::optional<Channel> channel_from_name(std::string_view s) {
    for (Channel c : {Channel::Fx, Channel::Fy, Channel::Fz, Channel::Tx, Channel::Ty, Channel::Tz}) {
        if (channel_name(c) == s) return c;
    }
    return std::nullopt;
}

std::vector<Channel> default_channels(ScenarioSystem s) {
    switch (s) {
        case ScenarioSystem::Hovercraft: return {Channel::Fx, Channel::Fy};
        case ScenarioSystem::FreeEuler:
        case ScenarioSystem::Satellite: return {Channel::Tx, Channel::Ty, Channel::Tz};
        default: return {Channel::Fx, Channel::Fy, Channel::Fz, Channel::Tx, Channel::Ty, Channel::Tz};
    }
}

bool is_rigid(ScenarioSystem s) { return s != ScenarioSystem::HamiltonianParticle; }

// Reads fields out of a ConfigDocument and remembers which keys were consumed.
class Reader {
public:
    explicit Reader(const ConfigDocument& doc) : doc_(doc) {}

    const ConfigEntry* get(const std::string& section, const std::string& key) {
        used_.insert({section, key});
        return doc_.find(section, key);
    }

    const ConfigEntry& require(const std::string& section, const std::string& key) {
        const auto* e = get(section, key);
        if (!e) throw Error(ErrorKind::MissingField, field(section, key));
        return *e;
    }

    static std::string field(const std::string& section, const std::string& key) {
        return section.empty() ? key : section + "." + key;
    }

    static std::string where(const ConfigEntry& e) {
        return "line " + std::to_string(e.line) + ", column " + std::to_string(e.column);
    }

    static double number(const ConfigEntry& e, const std::string& name) {
        try {
            return parse_double(e.value, name);
        } catch (const Error&) {
            throw Error(ErrorKind::ParseError, where(e) + ": '" + name + "' is not a number: " + e.value);
        }
    }

    static std::vector<double> list(const ConfigEntry& e, const std::string& name) {
        std::vector<double> out;
        for (const auto& part : split(e.value, ',')) {
            try {
                out.push_back(parse_double(trim(part), name));
            } catch (const Error&) {
                throw Error(ErrorKind::ParseError, where(e) + ": '" + name + "' has a non-numeric entry '" +
                                                       std::string(trim(part)) + "'");
            }
        }
        return out;
    }

    static Vec3 vec3(const ConfigEntry& e, const std::string& name) {
        const auto v = list(e, name);
        if (v.size() != 3) {
            throw Error(ErrorKind::ValidationError, where(e) + ": '" + name + "' needs 3 values, got " +
                                                        std::to_string(v.size()));
        }
        return {v[0], v[1], v[2]};
    }

    static bool boolean(const ConfigEntry& e, const std::string& name) {
        if (e.value == "true" || e.value == "yes" || e.value == "1") return true;
        if (e.value == "false" || e.value == "no" || e.value == "0") return false;
        throw Error(ErrorKind::ParseError, where(e) + ": '" + name + "' must be true or false");
    }

    double number(const std::string& section, const std::string& key) {
        return number(require(section, key), field(section, key));
    }
    Vec3 vec3(const std::string& section, const std::string& key) {
        return vec3(require(section, key), field(section, key));
    }
    std::optional<Vec3> opt_vec3(const std::string& section, const std::string& key) {
        const auto* e = get(section, key);
        if (!e) return std::nullopt;
        return vec3(*e, field(section, key));
    }

    void reject_unused() const {
        for (const auto& [section, entries] : doc_.sections) {
            for (const auto& e : entries) {
                if (!used_.count({section, e.key})) {
                    throw Error(ErrorKind::ValidationError,
                                where(e) + ": unknown or unused key '" + field(section, e.key) + "'");
                }
            }
        }
    }

private:
    const ConfigDocument& doc_;
    std::set<std::pair<std::string, std::string>> used_;
};

void parse_controls(Reader& r, const ConfigDocument& doc, Scenario& sc) {
    const auto it = doc.sections.find("controls");
    if (it == doc.sections.end()) return;
    sc.controls.channels = default_channels(sc.system);
    if (const auto* e = r.get("controls", "channels")) {
        sc.controls.channels.clear();
        for (const auto& part : split(e->value, ',')) {
            const auto c = channel_from_name(trim(part));
            if (!c) {
                throw Error(ErrorKind::ValidationError, Reader::where(*e) + ": unknown control channel '" +
                                                            std::string(trim(part)) + "' (use fx, fy, fz, tx, ty, tz)");
            }
            sc.controls.channels.push_back(*c);
        }
    }
    r.get("controls", "row");
    for (const auto& e : it->second) {
        if (e.key != "row") continue;
        const auto values = Reader::list(e, "controls.row");
        if (values.size() != sc.controls.channels.size() + 1) {
            throw Error(ErrorKind::ValidationError, Reader::where(e) + ": control row needs t plus " +
                                                        std::to_string(sc.controls.channels.size()) + " values");
        }
        ControlTable::Row row{values[0], std::vector<double>(values.begin() + 1, values.end())};
        if (!sc.controls.rows.empty() && !(row.t > sc.controls.rows.back().t)) {
            throw Error(ErrorKind::ValidationError, Reader::where(e) + ": control rows must have increasing t");
        }
        sc.controls.rows.push_back(std::move(row));
    }
    if (sc.system == ScenarioSystem::HeavyTop || sc.system == ScenarioSystem::HamiltonianParticle) {
        if (!sc.controls.rows.empty()) {
            throw Error(ErrorKind::ValidationError,
                        "controls are not supported for " + std::string(scenario_system_name(sc.system)));
        }
    }
}

VecX to_vecx(const std::vector<double>& v) { return Eigen::Map<const VecX>(v.data(), static_cast<Eigen::Index>(v.size())); }

}  // namespace

dynamics::Wrench ControlTable::at(double t) const {
    dynamics::Wrench w;
    const Row* active = nullptr;
    for (const auto& r : rows) {
        if (r.t <= t) active = &r;
        else break;
    }
    if (!active) return w;
    for (std::size_t c = 0; c < channels.size(); ++c) {
        const double u = active->u[c];
        switch (channels[c]) {
            case Channel::Fx: w.f[0] = u; break;
            case Channel::Fy: w.f[1] = u; break;
            case Channel::Fz: w.f[2] = u; break;
            case Channel::Tx: w.t[0] = u; break;
            case Channel::Ty: w.t[1] = u; break;
            case Channel::Tz: w.t[2] = u; break;
        }
    }
    return w;
}

int Scenario::steps() const { return static_cast<int>(std::llround(duration / dt)); }

Scenario parse_scenario(std::string_view text) {
    const ConfigDocument doc = parse_config(text);
    Reader r(doc);
    Scenario sc;

    const auto& sys = r.require("", "system");
    const auto system = scenario_system_from_name(sys.value);
    if (!system) {
        throw Error(ErrorKind::ValidationError, Reader::where(sys) + ": unknown system '" + sys.value + "'");
    }
    sc.system = *system;

    if (const auto* m = r.get("", "method")) {
        if (m->value == "rk4") sc.method = Method::Rk4;
        else if (m->value == "midpoint") sc.method = Method::Midpoint;
        else throw Error(ErrorKind::ValidationError, Reader::where(*m) + ": method must be rk4 or midpoint");
    }

    sc.dt = r.number("", "dt");
    sc.duration = r.number("", "duration");
    if (!(sc.dt > 0.0) || !std::isfinite(sc.dt)) throw Error(ErrorKind::ValidationError, "dt must be positive");
    if (!(sc.duration > 0.0) || !std::isfinite(sc.duration)) {
        throw Error(ErrorKind::ValidationError, "duration must be positive");
    }
    if (sc.duration / sc.dt > 1e8) throw Error(ErrorKind::ValidationError, "duration / dt exceeds 1e8 steps");
    if (sc.steps() < 1) throw Error(ErrorKind::ValidationError, "duration is shorter than one step");

    if (is_rigid(sc.system)) {
        sc.params.i = r.vec3("body", "i");
        const bool needs_mass = sc.system == ScenarioSystem::Hovercraft || sc.system == ScenarioSystem::Submarine ||
                                sc.system == ScenarioSystem::NewtonEuler;
        if (needs_mass) sc.params.m = r.vec3("body", "m");
        if (sc.system == ScenarioSystem::HeavyTop) {
            sc.params.mgl = r.number("body", "mgl");
            sc.params.chi = r.vec3("body", "chi");
            sc.initial.gamma = r.vec3("initial", "gamma");
        }
        if (sc.system == ScenarioSystem::Hovercraft) sc.params.h = r.number("body", "h");
        sc.params.validate();

        sc.initial.w = r.vec3("initial", "w");
        const bool has_linear = needs_mass;
        if (has_linear) sc.initial.v = r.vec3("initial", "v");
        if (sc.system == ScenarioSystem::Hovercraft) {
            if (sc.initial.v[2] != 0.0 || sc.initial.w[0] != 0.0 || sc.initial.w[1] != 0.0) {
                throw Error(ErrorKind::ValidationError, "hovercraft is planar: v.z, w.x and w.y must be 0");
            }
        }
        if (const auto p = r.opt_vec3("initial", "position")) sc.initial.pose.p = *p;
        if (const auto* q = r.get("initial", "quaternion")) {
            const auto v = Reader::list(*q, "initial.quaternion");
            if (v.size() != 4) throw Error(ErrorKind::ValidationError, "initial.quaternion needs 4 values");
            sc.orientation = {v[0], Vec3(v[1], v[2], v[3])};
            if (std::abs(sc.orientation.norm() - 1.0) > 1e-9) {
                throw Error(ErrorKind::ValidationError, "initial.quaternion must have unit norm");
            }
        }
        sc.initial.pose.rot = sc.orientation.to_rotation();
        if (!sc.initial.finite()) throw Error(ErrorKind::ValidationError, "initial state must be finite");
    } else {
        auto& h = sc.hamiltonian;
        h.mass = r.number("particle", "mass");
        if (!(h.mass > 0.0)) throw Error(ErrorKind::ValidationError, "particle.mass must be positive");
        const auto& pot = r.require("particle", "potential");
        if (pot.value == "free") h.potential = PotentialKind::Free;
        else if (pot.value == "harmonic") h.potential = PotentialKind::Harmonic;
        else if (pot.value == "kepler") h.potential = PotentialKind::Kepler;
        else throw Error(ErrorKind::ValidationError, Reader::where(pot) + ": potential must be free, harmonic or kepler");
        h.k = h.potential == PotentialKind::Free ? 0.0 : r.number("particle", "k");
        h.q0 = to_vecx(Reader::list(r.require("particle", "q"), "particle.q"));
        h.p0 = to_vecx(Reader::list(r.require("particle", "p"), "particle.p"));
        if (h.q0.size() != h.p0.size() || h.q0.size() < 1 || h.q0.size() > 3) {
            throw Error(ErrorKind::ValidationError, "particle.q and particle.p need the same length, 1 to 3");
        }
        if (h.potential == PotentialKind::Kepler && !(h.q0.norm() > 0.0)) {
            throw Error(ErrorKind::ValidationError, "particle.q must be nonzero for the kepler potential");
        }
    }

    parse_controls(r, doc, sc);

    if (const auto* e = r.get("output", "name")) {
        if (!is_identifier(e->value)) {
            throw Error(ErrorKind::ValidationError, Reader::where(*e) + ": output.name must be [A-Za-z0-9_-]+");
        }
        sc.outputs.name = e->value;
    }
    if (const auto* e = r.get("output", "trajectory")) sc.outputs.trajectory = Reader::boolean(*e, "output.trajectory");
    if (const auto* e = r.get("output", "jolt")) sc.outputs.jolt = Reader::boolean(*e, "output.jolt");
    if (const auto* e = r.get("output", "thresholds")) {
        const auto v = Reader::list(*e, "output.thresholds");
        if (v.size() != 2 || !(v[0] >= 0.0) || !(v[1] >= 0.0)) {
            throw Error(ErrorKind::ValidationError, "output.thresholds needs two non-negative values (Fdot, Tdot)");
        }
        sc.outputs.thresholds = jolt::Thresholds{v[0], v[1]};
    }
    if (sc.outputs.jolt && !is_rigid(sc.system)) {
        throw Error(ErrorKind::ValidationError, "output.jolt needs a rigid-body system");
    }
    if (sc.outputs.jolt && sc.steps() < 4) {
        throw Error(ErrorKind::ValidationError, "output.jolt needs at least 4 steps");
    }

    r.reject_unused();
    return sc;
}

// -----------------------------------------------------------------------------
// Canonical text and digest
// -----------------------------------------------------------------------------

namespace {

std::string join(const Eigen::Ref<const VecX>& v) {
    std::string out;
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        if (k) out += ", ";
        out += format_double(v[k]);
    }
    return out;
}

}  // namespace

std::string serialize_scenario(const Scenario& sc) {
    std::ostringstream os;
    os << "system = " << scenario_system_name(sc.system) << "\n";
    os << "method = " << (sc.method == Method::Rk4 ? "rk4" : "midpoint") << "\n";
    os << "dt = " << format_double(sc.dt) << "\n";
    os << "duration = " << format_double(sc.duration) << "\n";

    if (is_rigid(sc.system)) {
        const bool has_linear = sc.system == ScenarioSystem::Hovercraft || sc.system == ScenarioSystem::Submarine ||
                                sc.system == ScenarioSystem::NewtonEuler;
        os << "\n[body]\n";
        if (has_linear) os << "m = " << join(sc.params.m) << "\n";
        os << "i = " << join(sc.params.i) << "\n";
        if (sc.system == ScenarioSystem::HeavyTop) {
            os << "mgl = " << format_double(sc.params.mgl) << "\n";
            os << "chi = " << join(*sc.params.chi) << "\n";
        }
        if (sc.system == ScenarioSystem::Hovercraft) os << "h = " << format_double(sc.params.h) << "\n";

        os << "\n[initial]\n";
        if (has_linear) os << "v = " << join(sc.initial.v) << "\n";
        os << "w = " << join(sc.initial.w) << "\n";
        if (sc.initial.gamma) os << "gamma = " << join(*sc.initial.gamma) << "\n";
        os << "position = " << join(sc.initial.pose.p) << "\n";
        os << "quaternion = " << format_double(sc.orientation.scalar) << ", " << join(sc.orientation.vector) << "\n";
    } else {
        const auto& h = sc.hamiltonian;
        os << "\n[particle]\n";
        os << "mass = " << format_double(h.mass) << "\n";
        os << "potential = "
           << (h.potential == PotentialKind::Free ? "free" : h.potential == PotentialKind::Harmonic ? "harmonic" : "kepler")
           << "\n";
        if (h.potential != PotentialKind::Free) os << "k = " << format_double(h.k) << "\n";
        os << "q = " << join(h.q0) << "\n";
        os << "p = " << join(h.p0) << "\n";
    }

    if (!sc.controls.empty()) {
        os << "\n[controls]\n";
        os << "channels = ";
        for (std::size_t c = 0; c < sc.controls.channels.size(); ++c) {
            os << (c ? ", " : "") << channel_name(sc.controls.channels[c]);
        }
        os << "\n";
        for (const auto& row : sc.controls.rows) {
            os << "row = " << format_double(row.t);
            for (double u : row.u) os << ", " << format_double(u);
            os << "\n";
        }
    }

    os << "\n[output]\n";
    os << "name = " << sc.outputs.name << "\n";
    os << "trajectory = " << (sc.outputs.trajectory ? "true" : "false") << "\n";
    os << "jolt = " << (sc.outputs.jolt ? "true" : "false") << "\n";
    if (sc.outputs.thresholds) {
        os << "thresholds = " << format_double(sc.outputs.thresholds->f_dot_max) << ", "
           << format_double(sc.outputs.thresholds->t_dot_max) << "\n";
    }
    return os.str();
}

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw Error(ErrorKind::IoError, "SHA-256 computation failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int k = 0; k < len; ++k) {
        out += hex[digest[k] >> 4];
        out += hex[digest[k] & 0xf];
    }
    return out;
}

std::string scenario_digest(const Scenario& sc) { return sha256_hex(serialize_scenario(sc)); }

}  // namespace liemech::cli
