// Acceptance gate: one line per criterion, exit code = number of failures.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <map>
#include <string>
#include <vector>

#include "fieldtopo/theorems.hpp"
#include "shapes.hpp"

using namespace fieldtopo;

namespace {

int failures = 0;

void report(int criterion, const char* name, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %d: %s — %s\n", ok ? "PASS" : "FAIL", criterion, name,
                detail.c_str());
    if (!ok) ++failures;
}

struct Named {
    const char* name;
    Mesh mesh;
};

// 1. Poincare-Hopf exactness on closed meshes, 100 seeds x n in {1,2,4,6},
//    zero rational residual, under a second per mesh/seed.
void criterion1() {
    const Named rows[] = {{"icosphere", shapes::icosphere(3)},
                          {"torus", shapes::torus()},
                          {"genus2", shapes::genus2()}};
    const int expected[] = {2, 0, -2};
    bool ok = true;
    double worstSeconds = 0;
    std::string bad;
    for (int r = 0; r < 3; ++r) {
        const FrameAtlas frames = build_frames(rows[r].mesh);
        for (int n : {1, 2, 4, 6}) {
            for (unsigned long long seedv = 0; seedv < 100; ++seedv) {
                const DirectionField f = random_field(rows[r].mesh, n, seedv, 3);
                const auto t0 = std::chrono::steady_clock::now();
                const TotalIndex total = total_index(f, frames, rows[r].mesh);
                const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
                worstSeconds = std::max(worstSeconds, dt.count());
                if (total.interiorSum != Rational(expected[r]) || dt.count() >= 1.0) {
                    ok = false;
                    if (bad.empty())
                        bad = std::string(rows[r].name) + " n=" + std::to_string(n) + " seed=" +
                              std::to_string(seedv) + " sum=" + total.interiorSum.str();
                }
            }
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "3 meshes x 4 orders x 100 seeds, exact; slowest evaluation %.3f s%s%s",
                  worstSeconds, bad.empty() ? "" : "; first failure ", bad.c_str());
    report(1, "Poincare-Hopf exactness", ok, buf);
}

// 2. Boundary number theorem: strict form on singularity-free fields,
//    general accounting on 100 random fields per mesh.
void criterion2() {
    const Named rows[] = {{"disk", shapes::gridDisk(7)},
                          {"annulus", shapes::gridWithHoles(8, 1)},
                          {"pants", shapes::gridWithHoles(9, 2)}};
    const int chi[] = {1, 0, -1};
    bool ok = true;
    std::string bad;
    for (int r = 0; r < 3; ++r) {
        const FrameAtlas frames = build_frames(rows[r].mesh);
        const DirectionField clean = prescribe_singularities(rows[r].mesh, frames, 1, {});
        Rational strict(0);
        for (const Cycle& loop : rows[r].mesh.boundaryLoops())
            strict += turning_number(clean, frames, rows[r].mesh, loop);
        if (strict != Rational(-chi[r])) {
            ok = false;
            bad = std::string(rows[r].name) + " strict sum " + strict.str();
        }
        for (unsigned long long seedv = 0; seedv < 100; ++seedv) {
            const DirectionField f = random_field(rows[r].mesh, 4, seedv, 2);
            const TheoremReport rep = check_boundary_number(rows[r].mesh, frames, f);
            if (!rep.verdict) {
                ok = false;
                if (bad.empty()) bad = std::string(rows[r].name) + " seed " +
                                       std::to_string(seedv);
            }
        }
    }
    report(2, "boundary number theorem", ok,
           ok ? "strict sums -1/0/+1 exact; general form 100/100 seeds per mesh"
              : "failed at " + bad);
}

// 3. Link identity T(link(v)) + 1 = I(v), exact, over >= 10^4 vertex-field pairs.
void criterion3() {
    const Named rows[] = {{"icosphere", shapes::icosphere(2)},
                          {"torus", shapes::torus()},
                          {"genus2", shapes::genus2()},
                          {"disk", shapes::gridDisk(8)},
                          {"annulus", shapes::gridWithHoles(9, 1)},
                          {"pants", shapes::gridWithHoles(9, 2)},
                          {"tetrahedron", shapes::tetrahedron()},
                          {"fan", shapes::hexFan(8)}};
    long long pairs = 0, bad = 0;
    for (const Named& row : rows) {
        const FrameAtlas frames = build_frames(row.mesh);
        for (unsigned long long seedv = 0; seedv < 20; ++seedv) {
            const int n = 1 + static_cast<int>(seedv % 4);
            const DirectionField f = random_field(row.mesh, n, 500 + seedv, 2);
            for (int v = 0; v < row.mesh.numVertices(); ++v) {
                if (row.mesh.isBoundaryVertex(v)) continue;
                ++pairs;
                const Rational t = turning_number(f, frames, row.mesh,
                                                  vertex_link_cycle(row.mesh, v));
                if (index_from_turning(t) != singularity_index(f, frames, row.mesh, v)) ++bad;
            }
        }
    }
    report(3, "link identity", bad == 0 && pairs >= 10000,
           std::to_string(pairs) + " vertex-field pairs, " + std::to_string(bad) + " mismatches");
}

// 4. Disk-sphere duality with prescribed indices across n in {1,2,4}.
void criterion4() {
    const Mesh disk = shapes::gridDisk(7);
    const FrameAtlas frames = build_frames(disk);
    int center = -1;
    for (int v = 0; v < disk.numVertices() && center < 0; ++v)
        if (!disk.isBoundaryVertex(v)) center = v;

    bool ok = true;
    int cases = 0;
    std::string bad;
    for (int n : {1, 2, 4}) {
        const Rational indices[] = {Rational(0),     Rational(1, n),  Rational(-1, n),
                                    Rational(2, n),  Rational(-2, n), Rational(1)};
        for (const Rational& target : indices) {
            ++cases;
            std::map<int, Rational> targets;
            if (!target.isZero()) targets[center] = target;
            const DirectionField f = prescribe_singularities(disk, frames, n, targets);
            const DualityReport rep =
                target.isZero() ? disk_sphere_duality(disk, frames, f, center)
                                : disk_sphere_duality(disk, frames, f);
            const bool pass = rep.apexIndexOnSphere == Rational(2) - target &&
                              rep.vertexLinkTurning == -rep.apexLinkTurning &&
                              rep.dualityResidual == Rational(0) && rep.verdict &&
                              *rep.verdict;
            if (!pass) {
                ok = false;
                if (bad.empty())
                    bad = "n=" + std::to_string(n) + " I(v)=" + target.str() + " I1=" +
                          rep.apexIndexOnSphere.str();
            }
        }
    }
    // and the constant-field flat disk reproduces apex index 2 exactly
    const DualityReport flat =
        disk_sphere_duality(disk, frames, shapes::alignedPlanarField(disk, frames, 1), center);
    if (flat.apexIndexOnSphere != Rational(2) || !flat.verdict || !*flat.verdict) {
        ok = false;
        if (bad.empty()) bad = "constant field I1=" + flat.apexIndexOnSphere.str();
    }
    report(4, "disk-sphere duality", ok,
           ok ? std::to_string(cases) + " prescribed cases + constant field, zero residual"
              : "failed at " + bad);
}

// 5. Closure bookkeeping: T(dD) = -(I1 - 1) for 100 random singularity-free disk fields.
void criterion5() {
    const Mesh disk = shapes::gridDisk(7);
    const FrameAtlas frames = build_frames(disk);
    int bad = 0;
    for (unsigned long long seedv = 0; seedv < 100; ++seedv) {
        const DirectionField base = random_field(disk, 4, seedv, 2);
        const DirectionField f = prescribe_singularities(disk, frames, 4, {}, base);
        const Rational t = turning_number(f, frames, disk, disk.boundaryLoops()[0]);
        const ClosedField c = close_and_extend(disk, f, disk.boundaryLoops()[0]);
        const Rational apexIdx = singularity_index(c.field, c.frames, c.mesh, c.apex);
        if (t != -(apexIdx - Rational(1))) ++bad;
    }
    report(5, "closure bookkeeping", bad == 0,
           std::to_string(100 - bad) + "/100 seeds with T(dD) = -(I1 - 1) exactly");
}

// 6. Equivalence: reflexive, invariant under safe theta shifts (50 seeds),
//    and the strengthened check separates a +-1 pair from the clean field.
void criterion6() {
    const Mesh m = shapes::torus(12, 9);
    const FrameAtlas frames = build_frames(m);
    const std::vector<Cycle> basis = homology_generators(m);
    bool ok = basis.size() == 2;
    std::string bad = ok ? "" : "expected 2 torus generators";
    const int n = 4;
    for (unsigned long long seedv = 0; seedv < 50 && ok; ++seedv) {
        const DirectionField f = random_field(m, n, seedv, 2);
        if (!topological_equivalence(m, frames, f, f, basis).verdict) {
            ok = false;
            bad = "reflexivity, seed " + std::to_string(seedv);
            break;
        }
        DirectionField g = f;
        for (double& th : g.theta) th += 0.9 * M_PI / (2 * n);  // uniform, wrap-safe
        const TheoremReport rep = topological_equivalence(m, frames, f, g, basis);
        if (!rep.verdict || !rep.detail.at("indicesMatch").get<bool>()) {
            ok = false;
            bad = "theta perturbation, seed " + std::to_string(seedv);
            break;
        }
    }
    if (ok) {
        const Mesh sphere = shapes::icosphere(1);
        const FrameAtlas sframes = build_frames(sphere);
        const std::vector<Cycle> sbasis = homology_generators(sphere);
        const DirectionField clean = prescribe_singularities(sphere, sframes, 1,
                                                             {{0, Rational(1)}, {7, Rational(1)}});
        const DirectionField paired = prescribe_singularities(
            sphere, sframes, 1,
            {{0, Rational(1)}, {7, Rational(1)}, {3, Rational(1)}, {9, Rational(-1)}});
        const TheoremReport rep =
            topological_equivalence(sphere, sframes, clean, paired, sbasis);
        if (rep.detail.at("indicesMatch").get<bool>()) {
            ok = false;
            bad = "strengthened check missed the +-1 pair";
        }
    }
    report(6, "equivalence", ok,
           ok ? "reflexive + 50 shifted seeds; +-1 pair separated by the strengthened check"
              : bad);
}

// 7. Snapping robustness and Gauss-Bonnet on the bundled meshes.
void criterion7() {
    const Named rows[] = {{"icosphere", shapes::icosphere(3)},
                          {"torus", shapes::torus()},
                          {"genus2", shapes::genus2()},
                          {"disk", shapes::gridDisk(8)},
                          {"pants", shapes::gridWithHoles(9, 2)}};
    constexpr double kPi = 3.14159265358979323846;
    bool ok = true;
    double worstSnap = 0, worstGB = 0;
    std::string bad;
    for (const Named& row : rows) {
        const FrameAtlas frames = build_frames(row.mesh);
        for (unsigned long long seedv = 0; seedv < 5; ++seedv) {
            const DirectionField f = random_field(row.mesh, 4, 900 + seedv, 2);
            for (int v = 0; v < row.mesh.numVertices(); ++v) {
                if (row.mesh.isBoundaryVertex(v)) continue;
                const double res = singularity_index_detail(f, frames, row.mesh, v).residual;
                worstSnap = std::max(worstSnap, res);
            }
            for (const Cycle& loop : row.mesh.boundaryLoops())
                worstSnap = std::max(worstSnap,
                                     turning_number_detail(f, frames, row.mesh, loop).residual);
        }
        if (row.mesh.isClosed()) {
            double defects = 0;
            for (int v = 0; v < row.mesh.numVertices(); ++v)
                defects += row.mesh.angleDefect(v);
            const double gap = std::abs(defects - 2 * kPi * row.mesh.eulerCharacteristic());
            worstGB = std::max(worstGB, gap / row.mesh.numVertices());
            if (gap > 1e-6 * row.mesh.numVertices()) {
                ok = false;
                bad = std::string("Gauss-Bonnet on ") + row.name;
            }
        }
    }
    if (worstSnap >= 1e-6) {
        ok = false;
        if (bad.empty()) bad = "pre-snap residual " + std::to_string(worstSnap);
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "max pre-snap residual %.2e (< 1e-6); Gauss-Bonnet gap %.2e per vertex%s%s",
                  worstSnap, worstGB, bad.empty() ? "" : "; ", bad.c_str());
    report(7, "snapping robustness", ok, buf);
}

// 8. prescribe_singularities round-trips every feasible set; infeasible sets
//    are rejected with the index-budget message.
void criterion8() {
    bool ok = true;
    std::string bad;
    int cases = 0;

    struct Case {
        Mesh mesh;
        int n;
        std::map<int, Rational> targets;
    };
    const Mesh sphere = shapes::icosphere(1);
    std::vector<Case> feasible;
    feasible.push_back({sphere, 1, {{0, Rational(1)}, {7, Rational(1)}}});
    feasible.push_back({sphere, 2,
                        {{1, Rational(1, 2)}, {5, Rational(1, 2)}, {11, Rational(1, 2)},
                         {20, Rational(1, 2)}}});
    feasible.push_back({sphere, 4, {{0, Rational(9, 4)}, {7, Rational(-1, 4)}}});
    feasible.push_back({shapes::torus(10, 8), 4, {{3, Rational(1, 2)}, {17, Rational(-1, 2)}}});
    feasible.push_back({shapes::gridDisk(6), 2, {}});
    {
        Case c{shapes::gridDisk(6), 2, {}};
        for (int v = 0; v < c.mesh.numVertices(); ++v)
            if (!c.mesh.isBoundaryVertex(v)) {
                c.targets[v] = Rational(3, 2);
                break;
            }
        feasible.push_back(std::move(c));
    }
    feasible.push_back({shapes::gridWithHoles(8, 2), 1, {}});

    for (const Case& c : feasible) {
        ++cases;
        const FrameAtlas frames = build_frames(c.mesh);
        const DirectionField f = prescribe_singularities(c.mesh, frames, c.n, c.targets);
        for (int v = 0; v < c.mesh.numVertices(); ++v) {
            if (c.mesh.isBoundaryVertex(v)) continue;
            const auto it = c.targets.find(v);
            const Rational want = it == c.targets.end() ? Rational(0) : it->second;
            if (singularity_index(f, frames, c.mesh, v) != want) {
                ok = false;
                if (bad.empty())
                    bad = "case " + std::to_string(cases) + " vertex " + std::to_string(v);
            }
        }
    }

    const FrameAtlas sframes = build_frames(sphere);
    bool rejected = false;
    try {
        prescribe_singularities(sphere, sframes, 1, {{0, Rational(1)}});
    } catch (const InfeasibleTargetsError& e) {
        rejected = std::strstr(e.what(), "Euler characteristic") != nullptr;
    }
    if (!rejected) {
        ok = false;
        if (bad.empty()) bad = "infeasible set not rejected with the budget message";
    }
    report(8, "prescription round-trip", ok,
           ok ? std::to_string(cases) + " feasible sets exact; infeasible set rejected"
              : "failed at " + bad);
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    return failures;
}
