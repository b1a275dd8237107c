#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "fieldtopo/errors.hpp"
#include "fieldtopo/field.hpp"
#include "fieldtopo/mesh.hpp"
#include "fieldtopo/theorems.hpp"

using nlohmann::json;
using namespace fieldtopo;

namespace {

constexpr const char* kSchema = "fieldtopo-report/1";

// exit codes: 0 pass, 1 theorem failure, 2 parse/config, 3 non-manifold,
// 4 field mismatch, 5 non-disk, 6 infeasible targets
enum ExitCode {
    kPass = 0,
    kTheoremFail = 1,
    kBadInput = 2,
    kNonManifold = 3,
    kFieldMismatch = 4,
    kNotADisk = 5,
    kInfeasible = 6,
};

std::string readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void writeFile(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + path);
    out << bytes;
}

Mesh loadMesh(const std::string& path, const std::string& format) {
    if (format.empty()) return load_mesh_file(path);
    return load_mesh(readFile(path), format == "obj" ? MeshFormat::OBJ : MeshFormat::OFF);
}

DirectionField loadField(const std::string& path, const Mesh& m) {
    return read_field(readFile(path), m);
}

std::map<int, Rational> loadTargets(const std::string& path) {
    std::istringstream in(readFile(path));
    std::map<int, Rational> targets;
    std::string line;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        int v;
        long long num, den;
        if (!(row >> v >> num >> den))
            throw ParseError("targets line " + std::to_string(lineNo) +
                             ": expected `vertex num den`");
        targets[v] = Rational(num, den);
    }
    return targets;
}

void emit(const json& report, const std::string& outPath) {
    const std::string text = report.dump(2) + "\n";
    std::cout << text;
    if (!outPath.empty()) writeFile(outPath, text);
}

json rationalJson(const Rational& r) { return to_json(r); }

json cycleTurnings(const Mesh& m, const FrameAtlas& frames, const DirectionField& field,
                   const std::vector<Cycle>& cycles, const char* kind, double tol) {
    json arr = json::array();
    for (std::size_t i = 0; i < cycles.size(); ++i) {
        const SnappedValue t = turning_number_detail(field, frames, m, cycles[i], tol);
        arr.push_back({{"kind", kind},
                       {"id", i},
                       {"length", cycles[i].halfedges.size()},
                       {"turning", rationalJson(t.value)},
                       {"residual", t.residual}});
    }
    return arr;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"n-symmetry direction field topology toolkit"};
    app.require_subcommand(1);

    std::string meshPath, fieldPath, field2Path, targetsPath, outPath, format;
    std::string svgPath, csvPath;
    int n = 1, jumpRange = 2;
    unsigned long long seed = 0;
    double tolerance = kDefaultSnapTolerance;
    int designated = -1;
    bool genRandom = false, genConstant = false;
    std::pair<unsigned long long, unsigned long long> seedRange{0, 0};
    bool haveSeedRange = false;

    auto addCommon = [&](CLI::App* cmd, bool needField) {
        cmd->add_option("--mesh", meshPath, "mesh file (.obj/.off)")->required();
        cmd->add_option("--format", format, "force mesh format")
            ->check(CLI::IsMember({"obj", "off"}));
        cmd->add_option("--tolerance", tolerance, "snap tolerance")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--out", outPath, "write the report/artifact here");
        if (needField) cmd->add_option("--field", fieldPath, "NSYMFIELD file")->required();
    };

    CLI::App* info = app.add_subcommand("info", "mesh topology summary");
    addCommon(info, false);

    CLI::App* indices = app.add_subcommand("indices", "singularity indices of a field");
    addCommon(indices, true);
    indices->add_option("--svg", svgPath, "write an SVG direction plot");
    indices->add_option("--csv", csvPath, "write a CSV direction sampling");

    CLI::App* turning = app.add_subcommand("turning", "turning numbers along canonical cycles");
    addCommon(turning, true);

    CLI::App* check = app.add_subcommand("check", "verify Poincare-Hopf / boundary number");
    addCommon(check, false);
    check->add_option("--field", fieldPath, "NSYMFIELD file");
    check->add_option("--n", n, "symmetry order for --seeds fuzzing");
    check->add_option("--jump-range", jumpRange, "period jump range for --seeds fuzzing");
    check->add_option("--seeds", [&](const std::vector<std::string>& vals) {
        const std::string& s = vals.front();
        const auto dots = s.find("..");
        if (dots == std::string::npos) return false;
        try {
            seedRange.first = std::stoull(s.substr(0, dots));
            seedRange.second = std::stoull(s.substr(dots + 2));
        } catch (const std::exception&) {
            return false;
        }
        haveSeedRange = true;
        return seedRange.first <= seedRange.second;
    }, "fuzz random fields over seeds A..B instead of --field");

    CLI::App* close = app.add_subcommand("close", "cap the boundary and extend the field");
    addCommon(close, true);

    CLI::App* duality = app.add_subcommand("duality", "disk-sphere duality report");
    addCommon(duality, true);
    duality->add_option("--designated", designated, "designated regular interior vertex");

    CLI::App* gen = app.add_subcommand("gen", "generate an NSYMFIELD file");
    addCommon(gen, false);
    gen->add_option("--n", n, "symmetry order")->check(CLI::PositiveNumber);
    gen->add_flag("--random", genRandom, "uniform random field");
    gen->add_flag("--constant", genConstant, "zero field in every frame");
    gen->add_option("--seed", seed, "random seed");
    gen->add_option("--jump-range", jumpRange, "period jump range")
        ->check(CLI::NonNegativeNumber);
    gen->add_option("--targets", targetsPath, "prescription file: `vertex num den` lines");

    CLI::App* equiv = app.add_subcommand("equiv", "topological equivalence of two fields");
    addCommon(equiv, true);
    equiv->add_option("--field2", field2Path, "second NSYMFIELD file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kBadInput;
    }

    try {
        if (*info) {
            const Mesh m = loadMesh(meshPath, format);
            json loops = json::array();
            for (const Cycle& loop : m.boundaryLoops()) loops.push_back(loop.halfedges.size());
            emit(json{{"schema", kSchema},
                      {"command", "info"},
                      {"V", m.numVertices()},
                      {"E", m.numEdges()},
                      {"F", m.numFaces()},
                      {"chi", m.eulerCharacteristic()},
                      {"genus", m.genus()},
                      {"closed", m.isClosed()},
                      {"connected", m.isConnected()},
                      {"boundaryLoops", loops}},
                 outPath);
            return kPass;
        }

        if (*indices) {
            const Mesh m = loadMesh(meshPath, format);
            const FrameAtlas frames = build_frames(m);
            const DirectionField f = loadField(fieldPath, m);
            const TotalIndex total = total_index(f, frames, m, tolerance);
            json singular = json::array();
            for (const auto& rec : total.records)
                singular.push_back({{"vertex", rec.vertex}, {"index", rationalJson(rec.index)}});
            if (!svgPath.empty()) writeFile(svgPath, field_svg(f, frames, m));
            if (!csvPath.empty()) writeFile(csvPath, field_csv(f, frames, m));
            emit(json{{"schema", kSchema},
                      {"command", "indices"},
                      {"n", f.n},
                      {"interior_sum", rationalJson(total.interiorSum)},
                      {"max_residual", total.maxResidual},
                      {"singularities", singular}},
                 outPath);
            return kPass;
        }

        if (*turning) {
            const Mesh m = loadMesh(meshPath, format);
            const FrameAtlas frames = build_frames(m);
            const DirectionField f = loadField(fieldPath, m);
            json cycles = json::array();
            for (auto& entry :
                 cycleTurnings(m, frames, f, m.boundaryLoops(), "boundary", tolerance))
                cycles.push_back(entry);
            for (auto& entry :
                 cycleTurnings(m, frames, f, homology_generators(m), "generator", tolerance))
                cycles.push_back(entry);
            emit(json{{"schema", kSchema}, {"command", "turning"}, {"n", f.n}, {"cycles", cycles}},
                 outPath);
            return kPass;
        }

        if (*check) {
            const Mesh m = loadMesh(meshPath, format);
            const FrameAtlas frames = build_frames(m);
            const auto runOne = [&](const DirectionField& f) {
                return m.isClosed() ? check_poincare_hopf(m, frames, f, tolerance)
                                    : check_boundary_number(m, frames, f, tolerance);
            };
            if (haveSeedRange) {
                json runs = json::array();  // iterated in seed order: deterministic aggregate
                bool all = true;
                for (unsigned long long s = seedRange.first; s <= seedRange.second; ++s) {
                    const TheoremReport r = runOne(random_field(m, n, s, jumpRange));
                    all = all && r.verdict;
                    runs.push_back({{"seed", s}, {"verdict", r.verdict}});
                }
                emit(json{{"schema", kSchema},
                          {"command", "check"},
                          {"mode", "seeds"},
                          {"verdict", all},
                          {"runs", runs}},
                     outPath);
                return all ? kPass : kTheoremFail;
            }
            if (fieldPath.empty())
                throw ParseError("check needs --field or --seeds");
            const TheoremReport r = runOne(loadField(fieldPath, m));
            json report = to_json(r);
            report["schema"] = kSchema;
            report["command"] = "check";
            emit(report, outPath);
            return r.verdict ? kPass : kTheoremFail;
        }

        if (*close) {
            const Mesh m = loadMesh(meshPath, format);
            const DirectionField f = loadField(fieldPath, m);
            if (m.isClosed()) throw ParseError("mesh has no boundary to close");
            const ClosedField c = close_and_extend(m, f, m.boundaryLoops()[0], tolerance);
            const std::string meshOut = outPath.empty() ? "closed.off" : outPath;
            writeFile(meshOut, write_off(c.mesh));
            writeFile(meshOut + ".nsym", write_field(c.field, c.mesh));
            const SnappedValue apexIdx =
                singularity_index_detail(c.field, c.frames, c.mesh, c.apex, tolerance);
            std::cout << json{{"schema", kSchema},
                              {"command", "close"},
                              {"mesh", meshOut},
                              {"field", meshOut + ".nsym"},
                              {"apex", c.apex},
                              {"apex_index", rationalJson(apexIdx.value)}}
                             .dump(2)
                      << "\n";
            return kPass;
        }

        if (*duality) {
            const Mesh m = loadMesh(meshPath, format);
            const FrameAtlas frames = build_frames(m);
            const DirectionField f = loadField(fieldPath, m);
            const std::optional<int> v =
                designated >= 0 ? std::optional<int>(designated) : std::nullopt;
            const DualityReport r = disk_sphere_duality(m, frames, f, v, tolerance);
            json report = to_json(r);
            report["schema"] = kSchema;
            report["command"] = "duality";
            if (!outPath.empty() && r.closed) {
                const std::string closedPath = outPath + ".closed.off";
                writeFile(closedPath, write_off(r.closed->mesh));
                report["closed_mesh"] = closedPath;
            }
            emit(report, outPath);
            return r.dualityResidual == Rational(0) ? kPass : kTheoremFail;
        }

        if (*gen) {
            const Mesh m = loadMesh(meshPath, format);
            DirectionField f;
            if (!targetsPath.empty()) {
                const FrameAtlas frames = build_frames(m);
                std::optional<DirectionField> base;
                if (genRandom) base = random_field(m, n, seed, jumpRange);
                f = prescribe_singularities(m, frames, n, loadTargets(targetsPath), base,
                                            tolerance);
            } else if (genRandom) {
                f = random_field(m, n, seed, jumpRange);
            } else if (genConstant) {
                f = constant_field(m, n);
            } else {
                throw ParseError("gen needs --random, --constant, or --targets");
            }
            const std::string fieldOut = outPath.empty() ? "field.nsym" : outPath;
            writeFile(fieldOut, write_field(f, m));
            std::cout << json{{"schema", kSchema}, {"command", "gen"}, {"field", fieldOut}}.dump(2)
                      << "\n";
            return kPass;
        }

        if (*equiv) {
            const Mesh m = loadMesh(meshPath, format);
            const FrameAtlas frames = build_frames(m);
            const DirectionField f1 = loadField(fieldPath, m);
            const DirectionField f2 = loadField(field2Path, m);
            std::vector<Cycle> basis = homology_generators(m);
            for (const Cycle& loop : m.boundaryLoops()) basis.push_back(loop);
            const TheoremReport r = topological_equivalence(m, frames, f1, f2, basis, tolerance);
            json report = to_json(r);
            report["schema"] = kSchema;
            report["command"] = "equiv";
            emit(report, outPath);
            return r.verdict ? kPass : kTheoremFail;
        }
    } catch (const NonManifoldError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNonManifold;
    } catch (const FieldMismatchError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFieldMismatch;
    } catch (const NotADiskError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNotADisk;
    } catch (const InfeasibleTargetsError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInfeasible;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    }
    return kBadInput;
}
