#pragma once

#include "liemech/dynamics.hpp"
#include "liemech/error.hpp"
#include "liemech/jolt.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace liemech::cli {

using groups::Vec3;
using groups::VecX;

// -----------------------------------------------------------------------------
// Configuration text
//
//   # comment
//   key = value
//   [section]
//   key = 1, 2, 3
//
// Keys are unique within a section except `row` in [controls], which may repeat.
// -----------------------------------------------------------------------------

struct ConfigEntry {
    std::string key;
    std::string value;
    int line = 0;
    int column = 0;  // 1-based column of the value
};

struct ConfigDocument {
    // "" is the top-level section.
    std::map<std::string, std::vector<ConfigEntry>> sections;

    const ConfigEntry* find(const std::string& section, const std::string& key) const;
};

/// Throws ParseError with line and column.
ConfigDocument parse_config(std::string_view text);

// -----------------------------------------------------------------------------
// Scenario
// -----------------------------------------------------------------------------

enum class ScenarioSystem { FreeEuler, HeavyTop, Hovercraft, Satellite, Submarine, NewtonEuler, HamiltonianParticle };

std::optional<ScenarioSystem> scenario_system_from_name(std::string_view name);
std::string_view scenario_system_name(ScenarioSystem s);

enum class Channel { Fx, Fy, Fz, Tx, Ty, Tz };

/// Piecewise-constant inputs: row k holds from rows[k].t until the next row.
/// Before the first row every channel is zero.
struct ControlTable {
    std::vector<Channel> channels;
    struct Row {
        double t = 0.0;
        std::vector<double> u;
    };
    std::vector<Row> rows;

    bool empty() const { return rows.empty(); }
    dynamics::Wrench at(double t) const;
};

enum class PotentialKind { Free, Harmonic, Kepler };

struct HamiltonianSpec {
    double mass = 1.0;
    PotentialKind potential = PotentialKind::Harmonic;
    double k = 1.0;
    VecX q0;
    VecX p0;
};

struct OutputSpec {
    std::string name = "run";
    bool trajectory = true;
    bool jolt = false;
    std::optional<jolt::Thresholds> thresholds;
};

struct Scenario {
    ScenarioSystem system = ScenarioSystem::FreeEuler;
    dynamics::Method method = dynamics::Method::Rk4;
    double dt = 0.0;
    double duration = 0.0;
    dynamics::BodyParams params;
    dynamics::BodyState initial;
    groups::Quaternion orientation;  // as written; initial.pose.rot is derived from it
    HamiltonianSpec hamiltonian;  // only for hamiltonian_particle
    ControlTable controls;
    OutputSpec outputs;

    int steps() const;
};

/// Throws ParseError, MissingField (naming the field) or ValidationError.
Scenario parse_scenario(std::string_view text);

/// Canonical text: fixed section and key order, shortest round-trip numbers.
std::string serialize_scenario(const Scenario& sc);

/// Lower-case hex SHA-256 of serialize_scenario(sc).
std::string scenario_digest(const Scenario& sc);

std::string sha256_hex(std::string_view bytes);

// -----------------------------------------------------------------------------
// Running
// -----------------------------------------------------------------------------

struct OutputFile {
    std::string file;
    std::string sha256;
};

struct Drift {
    std::string quantity;
    double initial = 0.0;
    double max_abs_drift = 0.0;
};

struct RunManifest {
    std::string tool_version;
    std::string scenario_digest;
    std::string system;
    int steps = 0;
    std::vector<OutputFile> outputs;
    std::vector<Drift> conservation;
    std::string generated_at;  // metadata only; not part of any digest

    const Drift* drift(const std::string& quantity) const;
};

inline constexpr const char* kToolVersion = "0.1.0";

/// Directory from LIEMECH_OUT if set, otherwise `fallback`.
std::filesystem::path output_directory(const std::filesystem::path& fallback);

/// Integrates the scenario and writes `<name>.trajectory.csv`, optionally
/// `<name>.jolt.txt`, and `<name>.manifest.json` into out_dir.
RunManifest run_scenario(const Scenario& sc, const std::filesystem::path& out_dir);

/// Integration and conservation summary only, no files.
RunManifest simulate(const Scenario& sc, std::string* trajectory_csv = nullptr, std::string* jolt_text = nullptr);

std::string manifest_json(const RunManifest& m);

// -----------------------------------------------------------------------------
// Reports
// -----------------------------------------------------------------------------

/// construct -> verify -> base -> Cartan -> diagram -> classify, as text.
std::string roots_report(std::string_view family, int rank);

/// Runs one groups operation; throws UsageError for an unknown op or bad arity.
std::string group_command(std::string_view op, const std::vector<std::string>& args);

std::string jolt_command(const std::filesystem::path& csv, const Vec3& mass, const Vec3& inertia,
                         std::optional<jolt::Thresholds> thresholds);

/// 0 ok, 1 usage, 2 domain or validation error, 3 numerical failure.
int exit_code(ErrorKind kind);

}  // namespace liemech::cli
