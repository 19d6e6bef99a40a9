#include "liemech/format.hpp"
#include "liemech/scenario.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace liemech;

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error(ErrorKind::IoError, "cannot open " + path.string());
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

std::vector<double> numbers(const std::string& text, const std::string& what, std::size_t count) {
    std::vector<double> out;
    for (const auto& part : split(text, ',')) out.push_back(parse_double(trim(part), what));
    if (out.size() != count) {
        throw Error(ErrorKind::UsageError, what + " needs " + std::to_string(count) + " comma-separated values");
    }
    return out;
}

cli::RunManifest run_one(const fs::path& file, const fs::path& out_dir) {
    try {
        return cli::run_scenario(cli::parse_scenario(read_file(file)), out_dir);
    } catch (const Error& e) {
        throw Error(e.kind(), file.string() + ": " + e.what());
    }
}

void print_summary(const fs::path& file, const cli::RunManifest& m, const fs::path& out_dir) {
    std::cout << file.string() << ": " << m.system << ", " << m.steps << " steps, digest " << m.scenario_digest << "\n";
    for (const auto& f : m.outputs) std::cout << "  wrote " << (out_dir / f.file).string() << "\n";
    for (const auto& d : m.conservation) {
        std::cout << "  " << d.quantity << " drift " << format_double(d.max_abs_drift) << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"liemech: Lie group toolkit and rigid-body simulator"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "Integrate one or more scenario files");
    std::vector<std::string> scenario_files;
    std::string out_dir = ".";
    run->add_option("scenario", scenario_files, "Scenario file(s); several run concurrently")->required();
    run->add_option("--out", out_dir, "Output directory (LIEMECH_OUT takes precedence)");

    auto* roots = app.add_subcommand("roots", "Construct, verify and classify a root system");
    std::string family;
    int rank = 0;
    roots->add_option("family", family, "A-G")->required();
    roots->add_option("rank", rank, "Rank")->required();

    auto* group = app.add_subcommand("group", "Lie group operations");
    std::string op;
    std::vector<std::string> group_args;
    group->add_option("op", op, "exp-so3, log-so3, exp-se3, log-se3, adjoint, coadjoint, bracket, bch, quaternion, catalog")
        ->required();
    group->add_option("args", group_args, "Numeric arguments");
    group->positionals_at_end();

    auto* jolt_cmd = app.add_subcommand("jolt", "SE(3)-jolt report for a trajectory CSV");
    std::string csv;
    std::string mass;
    std::string inertia;
    std::string thresholds;
    std::string jolt_out;
    jolt_cmd->add_option("trajectory", csv, "Trajectory CSV")->required();
    jolt_cmd->add_option("--mass", mass, "m1,m2,m3")->required();
    jolt_cmd->add_option("--inertia", inertia, "I1,I2,I3")->required();
    jolt_cmd->add_option("--thresholds", thresholds, "Fdot_max,Tdot_max");
    jolt_cmd->add_option("--out", jolt_out, "Write the report here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (*run) {
            const fs::path base = cli::output_directory(out_dir);
            if (scenario_files.size() == 1) {
                print_summary(scenario_files[0], run_one(scenario_files[0], base), base);
            } else {
                // Independent scenarios, each in its own directory named after the file.
                std::vector<fs::path> dirs;
                std::vector<std::future<cli::RunManifest>> jobs;
                for (const auto& f : scenario_files) {
                    dirs.push_back(base / fs::path(f).stem());
                    jobs.push_back(std::async(std::launch::async, run_one, fs::path(f), dirs.back()));
                }
                std::optional<Error> first_error;
                for (std::size_t k = 0; k < jobs.size(); ++k) {
                    try {
                        print_summary(scenario_files[k], jobs[k].get(), dirs[k]);
                    } catch (const Error& e) {
                        std::cerr << "error: " << e.what() << "\n";
                        if (!first_error) first_error = e;
                    }
                }
                if (first_error) return cli::exit_code(first_error->kind());
            }
        } else if (*roots) {
            std::cout << cli::roots_report(family, rank);
        } else if (*group) {
            std::cout << cli::group_command(op, group_args);
        } else if (*jolt_cmd) {
            const auto m = numbers(mass, "--mass", 3);
            const auto i = numbers(inertia, "--inertia", 3);
            std::optional<jolt::Thresholds> th;
            if (!thresholds.empty()) {
                const auto t = numbers(thresholds, "--thresholds", 2);
                th = jolt::Thresholds{t[0], t[1]};
            }
            const auto report = cli::jolt_command(csv, {m[0], m[1], m[2]}, {i[0], i[1], i[2]}, th);
            if (jolt_out.empty()) {
                std::cout << report;
            } else {
                std::ofstream os(jolt_out, std::ios::binary);
                if (!os) throw Error(ErrorKind::IoError, "cannot open " + jolt_out + " for writing");
                os << report;
            }
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
