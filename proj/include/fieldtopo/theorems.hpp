#pragma once

#include <optional>
#include <vector>

#include "fieldtopo/field.hpp"
#include "fieldtopo/mesh.hpp"
#include "fieldtopo/rational.hpp"

#include <json.hpp>

namespace fieldtopo {

enum class TheoremKind { PoincareHopf, BoundaryNumber, Duality, Equivalence };

struct TheoremReport {
    TheoremKind theorem;
    Rational lhs, rhs, residual;  // residual = lhs - rhs
    bool verdict = false;         // pass iff residual == 0 (plus sub-checks, see detail)
    nlohmann::json detail;
};

// Closed mesh obtained by capping a boundary loop, with the field extended
// over the cap (theta = 0, fresh jumps 0) and the indices that the extension
// scattered over the old boundary vertices concentrated into the apex by
// period-jump transfers along the cap's radial edges.
struct ClosedField {
    Mesh mesh;
    FrameAtlas frames;
    DirectionField field;
    int apex = -1;
};

ClosedField close_and_extend(const Mesh& m, const DirectionField& field, const Cycle& loop,
                             double tolerance = kDefaultSnapTolerance);

struct DualityReport {
    std::vector<SingularityRecord> diskInteriorIndices;
    int designatedVertex = -1;
    int apex = -1;
    Rational boundaryTurning;    // T(dD), computed directly on the disk
    Rational apexIndexOnSphere;  // I^1 = I(P_i)_c
    Rational vertexPart;         // I^2 = I(v)
    Rational vertexLinkTurning;  // T(dv) = I(v) - 1
    Rational apexLinkTurning;    // T(dOmega(P_i)) = I^1 - 1
    Rational dualityResidual;    // T(dv) + T(dOmega(P_i))
    std::optional<bool> verdict; // empty when >1 interior singularity
    std::optional<ClosedField> closed;
};

// Sum of interior indices vs chi on a closed connected mesh.
TheoremReport check_poincare_hopf(const Mesh& m, const FrameAtlas& frames,
                                  const DirectionField& field,
                                  double tolerance = kDefaultSnapTolerance);

// General accounting sum(T over boundary loops) = sum(interior indices) - chi,
// always asserted; the strict form sum(T) = -chi is flagged and asserted only
// for fields without interior singularities.
TheoremReport check_boundary_number(const Mesh& m, const FrameAtlas& frames,
                                    const DirectionField& field,
                                    double tolerance = kDefaultSnapTolerance);

// Full disk -> sphere pipeline; `designated` names the regular vertex v when
// the disk carries no interior singularity.
DualityReport disk_sphere_duality(const Mesh& m, const FrameAtlas& frames,
                                  const DirectionField& field,
                                  std::optional<int> designated = std::nullopt,
                                  double tolerance = kDefaultSnapTolerance);

// Equal turning numbers along a shared cycle basis; the strengthened
// per-vertex index comparison is reported as a separate flag in detail.
TheoremReport topological_equivalence(const Mesh& m, const FrameAtlas& frames,
                                      const DirectionField& f1, const DirectionField& f2,
                                      const std::vector<Cycle>& basis,
                                      double tolerance = kDefaultSnapTolerance);

nlohmann::json to_json(const Rational& r);
nlohmann::json to_json(const TheoremReport& r);
nlohmann::json to_json(const DualityReport& r);

}  // namespace fieldtopo
