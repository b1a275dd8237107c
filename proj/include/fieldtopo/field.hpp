#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fieldtopo/mesh.hpp"
#include "fieldtopo/rational.hpp"

namespace fieldtopo {

// n-symmetry direction field: one representative angle per face (in that
// face's frame, normalized into [0, 2pi/n)) and one integer period jump per
// interior edge, oriented with the edge's canonical direction v0 -> v1.
struct DirectionField {
    int n = 1;
    std::vector<double> theta;      // per face
    std::vector<int> periodJump;    // per edge; 0 on boundary edges
};

struct SingularityRecord {
    enum class Kind { Interior, Apex };
    int vertex = -1;
    Rational index;
    Kind kind = Kind::Interior;
};

// Snapping tolerance: base is scaled by the cycle length in edges.
constexpr double kDefaultSnapTolerance = 1e-6;

struct SnappedValue {
    Rational value;
    double residual = 0;  // |pre-snap - value|, radians / 2pi units
};

// Signed rotation of the field across the shared edge of two adjacent faces,
// relative to hinge parallel transport: wrap(theta_to - theta_from - r_e) in
// (-pi/n, pi/n] plus (2pi/n) * periodJump.
double crossing_rotation(const DirectionField& field, const FrameAtlas& frames, const Mesh& m,
                         int from, int to);

// Same quantity for a directed crossing face(he) -> face(twin(he)).
// Computed once per edge in the canonical direction and negated for the twin,
// so opposite crossings cancel exactly.
double halfedge_crossing(const DirectionField& field, const FrameAtlas& frames, const Mesh& m, int he);

SnappedValue singularity_index_detail(const DirectionField& field, const FrameAtlas& frames,
                                      const Mesh& m, int v, double tolerance = kDefaultSnapTolerance);
Rational singularity_index(const DirectionField& field, const FrameAtlas& frames, const Mesh& m,
                           int v, double tolerance = kDefaultSnapTolerance);

SnappedValue turning_number_detail(const DirectionField& field, const FrameAtlas& frames,
                                   const Mesh& m, const Cycle& cycle,
                                   double tolerance = kDefaultSnapTolerance);
Rational turning_number(const DirectionField& field, const FrameAtlas& frames, const Mesh& m,
                        const Cycle& cycle, double tolerance = kDefaultSnapTolerance);

inline Rational index_from_turning(const Rational& t) { return t + Rational(1); }

struct TotalIndex {
    Rational interiorSum;
    std::vector<SingularityRecord> records;  // nonzero indices only
    double maxResidual = 0;
};

TotalIndex total_index(const DirectionField& field, const FrameAtlas& frames, const Mesh& m,
                       double tolerance = kDefaultSnapTolerance);

// theta = 0 in every face frame, all period jumps 0.
DirectionField constant_field(const Mesh& m, int n);

// Uniform theta in [0, 2pi/n), uniform jumps in [-jumpRange, jumpRange],
// deterministic in the seed.
DirectionField random_field(const Mesh& m, int n, unsigned long long seed, int jumpRange);

// Adjusts period jumps of `base` (constant field when absent) along a
// spanning tree so that every interior vertex gets exactly its target index;
// vertices not in `targets` get index 0. Boundary turning numbers absorb the
// residue when the mesh has boundary; closed meshes require
// sum(targets) == chi.
DirectionField prescribe_singularities(const Mesh& m, const FrameAtlas& frames, int n,
                                       const std::map<int, Rational>& targets,
                                       const std::optional<DirectionField>& base = std::nullopt,
                                       double tolerance = kDefaultSnapTolerance);

// NSYMFIELD text format.
DirectionField read_field(const std::string& bytes, const Mesh& m);
std::string write_field(const DirectionField& field, const Mesh& m);

// Plot-ready exports: face centroid plus n unit direction samples per face.
std::string field_csv(const DirectionField& field, const FrameAtlas& frames, const Mesh& m);
std::string field_svg(const DirectionField& field, const FrameAtlas& frames, const Mesh& m);

}  // namespace fieldtopo
