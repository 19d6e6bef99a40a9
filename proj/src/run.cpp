#include "liemech/format.hpp"
#include "liemech/scenario.hpp"
#include "liemech/symplectic.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

namespace liemech::cli {

namespace {

namespace fs = std::filesystem;

class DriftTracker {
public:
    void add(const std::string& name, double value) {
        for (auto& d : drifts_) {
            if (d.quantity == name) {
                d.max_abs_drift = std::max(d.max_abs_drift, std::abs(value - d.initial));
                return;
            }
        }
        drifts_.push_back({name, value, 0.0});
    }
    std::vector<Drift> take() { return std::move(drifts_); }

private:
    std::vector<Drift> drifts_;
};

void track_rigid(DriftTracker& tr, ScenarioSystem sys, const dynamics::BodyParams& prm, const dynamics::BodyState& s) {
    switch (sys) {
        case ScenarioSystem::FreeEuler:
        case ScenarioSystem::Satellite: {
            const Vec3 pi = prm.i.cwiseProduct(s.w);
            tr.add("angular_momentum_norm_sq", pi.squaredNorm());
            tr.add("kinetic_energy", 0.5 * s.w.dot(pi));
            break;
        }
        case ScenarioSystem::HeavyTop:
            tr.add("gamma_norm", s.gamma->norm());
            tr.add("total_energy", dynamics::heavy_top_energy(prm, prm.i.cwiseProduct(s.w), *s.gamma));
            break;
        case ScenarioSystem::Hovercraft:
            tr.add("kinetic_energy", 0.5 * prm.m[0] * (s.v[0] * s.v[0] + s.v[1] * s.v[1]) +
                                         0.5 * prm.i[2] * s.w[2] * s.w[2]);
            break;
        case ScenarioSystem::Submarine:
        case ScenarioSystem::NewtonEuler:
            tr.add("kinetic_energy", dynamics::kinetic_energy(prm, s));
            break;
        case ScenarioSystem::HamiltonianParticle:
            break;
    }
}

symplectic::Potential make_potential(const HamiltonianSpec& h) {
    switch (h.potential) {
        case PotentialKind::Free: return symplectic::free_potential();
        case PotentialKind::Harmonic: return symplectic::harmonic_potential(h.k);
        case PotentialKind::Kepler: return symplectic::kepler_potential(h.k);
    }
    return symplectic::free_potential();
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_file(const fs::path& path, const std::string& bytes) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error(ErrorKind::IoError, "cannot open " + path.string() + " for writing");
    os << bytes;
    if (!os) throw Error(ErrorKind::IoError, "failed writing " + path.string());
}

RunManifest simulate_particle(const Scenario& sc, std::string* phase_csv) {
    const auto& h = sc.hamiltonian;
    const symplectic::ParticleHamiltonian ham(h.mass, make_potential(h));
    const auto flow = symplectic::hamiltonian_flow(ham.gradient_fn(), {h.q0, h.p0}, sc.dt, sc.steps());

    DriftTracker tr;
    const int n = static_cast<int>(h.q0.size());
    std::ostringstream os;
    if (phase_csv) {
        os << "t";
        for (int k = 0; k < n; ++k) os << ",q" << k + 1;
        for (int k = 0; k < n; ++k) os << ",p" << k + 1;
        os << ",H\n";
    }
    for (std::size_t k = 0; k < flow.size(); ++k) {
        const auto& z = flow[k];
        const double energy = ham.value(z);
        tr.add("energy", energy);
        if (n == 2) tr.add("angular_momentum", groups::momentum_map_so2(z.q[0], z.q[1], z.p[0], z.p[1]));
        if (n == 3) tr.add("angular_momentum_norm", Vec3(z.q).cross(Vec3(z.p)).norm());
        if (phase_csv) {
            os << format_double(static_cast<double>(k) * sc.dt);
            for (int c = 0; c < n; ++c) os << "," << format_double(z.q[c]);
            for (int c = 0; c < n; ++c) os << "," << format_double(z.p[c]);
            os << "," << format_double(energy) << "\n";
        }
    }
    if (phase_csv) *phase_csv = os.str();

    RunManifest m;
    m.conservation = tr.take();
    return m;
}

}  // namespace

const Drift* RunManifest::drift(const std::string& quantity) const {
    for (const auto& d : conservation) {
        if (d.quantity == quantity) return &d;
    }
    return nullptr;
}

fs::path output_directory(const fs::path& fallback) {
    if (const char* env = std::getenv("LIEMECH_OUT"); env && *env) return fs::path(env);
    return fallback;
}

RunManifest simulate(const Scenario& sc, std::string* trajectory_csv, std::string* jolt_text) {
    RunManifest m;
    if (sc.system == ScenarioSystem::HamiltonianParticle) {
        m = simulate_particle(sc, trajectory_csv);
    } else {
        const auto system = *dynamics::system_from_name(scenario_system_name(sc.system));
        dynamics::ControlSignal controls;
        if (!sc.controls.empty()) controls = [&](double t) { return sc.controls.at(t); };
        const auto traj = dynamics::integrate(system, sc.params, sc.initial, sc.dt, sc.steps(), sc.method, controls);

        DriftTracker tr;
        for (const auto& s : traj.samples) track_rigid(tr, sc.system, sc.params, s.state);
        m.conservation = tr.take();

        if (trajectory_csv) {
            std::ostringstream os;
            dynamics::write_trajectory_csv(os, traj);
            *trajectory_csv = os.str();
        }
        if (jolt_text && sc.outputs.jolt) {
            std::ostringstream os;
            jolt::write_jolt_report(os, jolt::jolt_report(traj, sc.params, sc.outputs.thresholds));
            *jolt_text = os.str();
        }
    }
    m.tool_version = kToolVersion;
    m.scenario_digest = scenario_digest(sc);
    m.system = std::string(scenario_system_name(sc.system));
    m.steps = sc.steps();
    return m;
}

RunManifest run_scenario(const Scenario& sc, const fs::path& out_dir) {
    std::string data;
    std::string jolt_text;
    RunManifest m = simulate(sc, &data, &jolt_text);

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw Error(ErrorKind::IoError, "cannot create output directory " + out_dir.string() + ": " + ec.message());

    const bool particle = sc.system == ScenarioSystem::HamiltonianParticle;
    if (sc.outputs.trajectory) {
        const std::string name = sc.outputs.name + (particle ? ".phase.csv" : ".trajectory.csv");
        write_file(out_dir / name, data);
        m.outputs.push_back({name, sha256_hex(data)});
    }
    if (sc.outputs.jolt) {
        const std::string name = sc.outputs.name + ".jolt.txt";
        write_file(out_dir / name, jolt_text);
        m.outputs.push_back({name, sha256_hex(jolt_text)});
    }
    m.generated_at = utc_timestamp();
    write_file(out_dir / (sc.outputs.name + ".manifest.json"), manifest_json(m));
    return m;
}

std::string manifest_json(const RunManifest& m) {
    nlohmann::ordered_json j;
    j["tool"] = "liemech";
    j["version"] = m.tool_version;
    j["scenario_digest"] = m.scenario_digest;
    j["system"] = m.system;
    j["steps"] = m.steps;
    j["outputs"] = nlohmann::ordered_json::array();
    for (const auto& f : m.outputs) j["outputs"].push_back({{"file", f.file}, {"sha256", f.sha256}});
    j["conservation"] = nlohmann::ordered_json::array();
    for (const auto& d : m.conservation) {
        j["conservation"].push_back({{"quantity", d.quantity}, {"initial", d.initial}, {"max_abs_drift", d.max_abs_drift}});
    }
    j["metadata"] = {{"generated_at", m.generated_at}};
    return j.dump(2) + "\n";
}

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::UsageError: return 1;
        case ErrorKind::NonFiniteState: return 3;
        default: return 2;
    }
}

}  // namespace liemech::cli
