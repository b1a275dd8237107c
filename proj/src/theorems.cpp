#include "fieldtopo/theorems.hpp"

#include <algorithm>

namespace fieldtopo {

namespace {

const char* theoremName(TheoremKind k) {
    switch (k) {
        case TheoremKind::PoincareHopf: return "poincare_hopf";
        case TheoremKind::BoundaryNumber: return "boundary_number";
        case TheoremKind::Duality: return "duality";
        case TheoremKind::Equivalence: return "equivalence";
    }
    return "?";
}

nlohmann::json recordsJson(const std::vector<SingularityRecord>& records) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : records)
        arr.push_back({{"vertex", r.vertex},
                       {"index", to_json(r.index)},
                       {"kind", r.kind == SingularityRecord::Kind::Apex ? "apex" : "interior"}});
    return arr;
}

}  // namespace

ClosedField close_and_extend(const Mesh& m, const DirectionField& field, const Cycle& loop,
                             double tolerance) {
    auto [closed, apex] = close_boundary(m, loop);
    FrameAtlas frames = build_frames(closed);

    DirectionField extended = constant_field(closed, field.n);
    for (int f = 0; f < m.numFaces(); ++f) extended.theta[f] = field.theta[f];
    for (int e = 0; e < m.numEdges(); ++e) {
        if (field.periodJump[e] == 0) continue;
        const int ne = closed.edgeBetween(m.edge(e).v0, m.edge(e).v1);
        extended.periodJump[ne] = field.periodJump[e];
    }

    // The cap extension scatters the boundary's index budget over the old
    // boundary vertices; shift it all into the apex through the radial edges
    // so the apex is the one singularity stored for this boundary.
    for (int he : loop.halfedges) {
        const int w = m.source(he);
        const Rational idx = singularity_index(extended, frames, closed, w, tolerance);
        if (idx.isZero()) continue;
        const long long units = (idx * Rational(field.n)).num();
        const int radial = closed.edgeBetween(w, apex);
        // canonical direction w -> apex (the apex has the largest id);
        // raising the jump moves one 1/n quantum of index from w to the apex
        extended.periodJump[radial] += static_cast<int>(units);
    }
    return {std::move(closed), std::move(frames), std::move(extended), apex};
}

TheoremReport check_poincare_hopf(const Mesh& m, const FrameAtlas& frames,
                                  const DirectionField& field, double tolerance) {
    if (!m.isClosed())
        throw std::invalid_argument("mesh has boundary; close it first or use the boundary number check");
    if (!m.isConnected()) throw std::invalid_argument("mesh is not connected");
    const TotalIndex total = total_index(field, frames, m, tolerance);
    TheoremReport r;
    r.theorem = TheoremKind::PoincareHopf;
    r.lhs = total.interiorSum;
    r.rhs = Rational(m.eulerCharacteristic());
    r.residual = r.lhs - r.rhs;
    r.verdict = r.residual.isZero();
    r.detail = {{"singularities", recordsJson(total.records)},
                {"maxSnapResidual", total.maxResidual}};
    return r;
}

TheoremReport check_boundary_number(const Mesh& m, const FrameAtlas& frames,
                                    const DirectionField& field, double tolerance) {
    if (m.isClosed()) throw std::invalid_argument("mesh is closed; use the Poincare-Hopf check");
    if (!m.isConnected()) throw std::invalid_argument("mesh is not connected");
    const TotalIndex total = total_index(field, frames, m, tolerance);

    Rational turningSum(0);
    nlohmann::json loops = nlohmann::json::array();
    double maxResidual = total.maxResidual;
    for (const Cycle& loop : m.boundaryLoops()) {
        const auto t = turning_number_detail(field, frames, m, loop, tolerance);
        turningSum += t.value;
        maxResidual = std::max(maxResidual, t.residual);
        loops.push_back({{"length", loop.halfedges.size()}, {"turning", to_json(t.value)}});
    }

    const Rational chi(m.eulerCharacteristic());
    const bool strictApplicable = total.records.empty();
    const bool strictPass = turningSum == -chi;

    TheoremReport r;
    r.theorem = TheoremKind::BoundaryNumber;
    r.lhs = turningSum;
    r.rhs = total.interiorSum - chi;
    r.residual = r.lhs - r.rhs;
    r.verdict = r.residual.isZero() && (!strictApplicable || strictPass);
    r.detail = {{"boundaryLoops", loops},
                {"interiorIndexSum", to_json(total.interiorSum)},
                {"singularities", recordsJson(total.records)},
                {"strictApplicable", strictApplicable},
                {"strictPass", strictPass},
                {"maxSnapResidual", maxResidual}};
    return r;
}

DualityReport disk_sphere_duality(const Mesh& m, const FrameAtlas& frames,
                                  const DirectionField& field, std::optional<int> designated,
                                  double tolerance) {
    if (!m.isConnected()) throw NotADiskError("mesh is not connected");
    if (m.eulerCharacteristic() != 1 || m.boundaryLoops().size() != 1 || m.genus() != 0)
        throw NotADiskError("mesh is not a topological disk (chi=" +
                            std::to_string(m.eulerCharacteristic()) + ", b=" +
                            std::to_string(m.boundaryLoops().size()) + ")");

    const TotalIndex total = total_index(field, frames, m, tolerance);

    DualityReport report;
    report.diskInteriorIndices = total.records;
    report.boundaryTurning = turning_number(field, frames, m, m.boundaryLoops()[0], tolerance);

    ClosedField closed = close_and_extend(m, field, m.boundaryLoops()[0], tolerance);
    report.apex = closed.apex;
    report.apexIndexOnSphere =
        singularity_index(closed.field, closed.frames, closed.mesh, closed.apex, tolerance);
    report.apexLinkTurning = report.apexIndexOnSphere - Rational(1);

    if (total.records.size() > 1) {
        // the two-singularity duality scenario does not apply; report data only
        report.verdict = std::nullopt;
        report.closed = std::move(closed);
        return report;
    }

    int v = -1;
    if (total.records.size() == 1) {
        v = total.records[0].vertex;
    } else if (designated) {
        v = *designated;
        if (v < 0 || v >= m.numVertices() || m.isBoundaryVertex(v))
            throw std::invalid_argument("designated vertex must be an interior vertex of the disk");
    } else {
        for (int cand = 0; cand < m.numVertices(); ++cand)
            if (!m.isBoundaryVertex(cand)) {
                v = cand;
                break;
            }
        if (v < 0) throw std::invalid_argument("disk has no interior vertex to designate");
    }

    report.designatedVertex = v;
    report.vertexPart = singularity_index(closed.field, closed.frames, closed.mesh, v, tolerance);
    report.vertexLinkTurning = report.vertexPart - Rational(1);
    report.dualityResidual = report.vertexLinkTurning + report.apexLinkTurning;
    report.verdict = report.dualityResidual.isZero();
    report.closed = std::move(closed);
    return report;
}

TheoremReport topological_equivalence(const Mesh& m, const FrameAtlas& frames,
                                      const DirectionField& f1, const DirectionField& f2,
                                      const std::vector<Cycle>& basis, double tolerance) {
    if (f1.n != f2.n)
        throw std::invalid_argument("fields have different symmetry orders (" + std::to_string(f1.n) +
                                    " vs " + std::to_string(f2.n) + ")");
    nlohmann::json cycles = nlohmann::json::array();
    Rational sum1(0), sum2(0);
    bool literal = true;
    for (const Cycle& c : basis) {
        const Rational t1 = turning_number(f1, frames, m, c, tolerance);
        const Rational t2 = turning_number(f2, frames, m, c, tolerance);
        sum1 += t1;
        sum2 += t2;
        if (t1 != t2) literal = false;
        cycles.push_back({{"kind", c.kind == CycleKind::Boundary ? "boundary" : "generator"},
                          {"length", c.halfedges.size()},
                          {"turning1", to_json(t1)},
                          {"turning2", to_json(t2)},
                          {"equal", t1 == t2}});
    }

    // Strengthened check: identical singularity placement and indices.
    auto r1 = total_index(f1, frames, m, tolerance).records;
    auto r2 = total_index(f2, frames, m, tolerance).records;
    auto byVertex = [](const SingularityRecord& a, const SingularityRecord& b) {
        return a.vertex < b.vertex;
    };
    std::sort(r1.begin(), r1.end(), byVertex);
    std::sort(r2.begin(), r2.end(), byVertex);
    bool sameIndices = r1.size() == r2.size();
    for (std::size_t i = 0; sameIndices && i < r1.size(); ++i)
        sameIndices = r1[i].vertex == r2[i].vertex && r1[i].index == r2[i].index;

    TheoremReport r;
    r.theorem = TheoremKind::Equivalence;
    r.lhs = sum1;
    r.rhs = sum2;
    r.residual = sum1 - sum2;
    r.verdict = literal;
    r.detail = {{"cycles", cycles},
                {"literalPass", literal},
                {"strengthenedPass", literal && sameIndices},
                {"indicesMatch", sameIndices},
                {"singularities1", recordsJson(r1)},
                {"singularities2", recordsJson(r2)}};
    return r;
}

nlohmann::json to_json(const Rational& r) {
    return {{"num", r.num()}, {"den", r.den()}};
}

nlohmann::json to_json(const TheoremReport& r) {
    return {{"theorem", theoremName(r.theorem)},
            {"lhs", to_json(r.lhs)},
            {"rhs", to_json(r.rhs)},
            {"residual", to_json(r.residual)},
            {"verdict", r.verdict},
            {"detail", r.detail}};
}

nlohmann::json to_json(const DualityReport& r) {
    nlohmann::json j = {{"theorem", "duality"},
                        {"disk_interior_indices", recordsJson(r.diskInteriorIndices)},
                        {"apex", r.apex},
                        {"boundary_turning", to_json(r.boundaryTurning)},
                        {"apex_index_on_sphere", to_json(r.apexIndexOnSphere)},
                        {"apex_link_turning", to_json(r.apexLinkTurning)}};
    if (r.verdict) {
        j["designated_vertex"] = r.designatedVertex;
        j["vertex_part"] = to_json(r.vertexPart);
        j["vertex_link_turning"] = to_json(r.vertexLinkTurning);
        j["duality_residual"] = to_json(r.dualityResidual);
        j["verdict"] = *r.verdict;
    } else {
        j["verdict"] = nullptr;
        j["note"] = "more than one interior singularity; two-singularity duality not applicable";
    }
    return j;
}

}  // namespace fieldtopo
