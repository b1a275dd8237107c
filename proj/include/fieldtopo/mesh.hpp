#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fieldtopo/errors.hpp"

namespace fieldtopo {

struct Vec3 {
    double x = 0, y = 0, z = 0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 normalized(const Vec3& a) { return a / norm(a); }

// Undirected edge, canonical direction v0 -> v1 with v0 < v1.
struct Edge {
    int v0 = -1, v1 = -1;
    int heForward = -1;   // halfedge v0 -> v1, -1 if that side has no face
    int heBackward = -1;  // halfedge v1 -> v0
    bool interior() const { return heForward >= 0 && heBackward >= 0; }
};

enum class CycleKind { Boundary, VertexLink, HomologyGenerator, User };

// Closed oriented loop of halfedges together with the face strip on its
// left side: the crossings between consecutive strip faces and the total
// exterior turning of the loop measured inside that strip.
struct Cycle {
    CycleKind kind = CycleKind::User;
    std::vector<int> halfedges;        // he[i+1] starts where he[i] ends
    std::vector<int> crossings;        // halfedge h: strip crosses face(h) -> face(twin(h))
    double totalGeodesicTurning = 0.0; // radians
};

enum class MeshFormat { OBJ, OFF };

// Triangle mesh with halfedge connectivity. Immutable after construction.
// Halfedge 3f+i runs from faces[f][i] to faces[f][(i+1)%3].
class Mesh {
public:
    Mesh(std::vector<Vec3> vertices, std::vector<std::array<int, 3>> faces,
         std::vector<std::array<std::string, 3>> coordTokens = {});

    int numVertices() const { return static_cast<int>(positions_.size()); }
    int numFaces() const { return static_cast<int>(faces_.size()); }
    int numEdges() const { return static_cast<int>(edges_.size()); }
    int numHalfedges() const { return 3 * numFaces(); }

    const Vec3& position(int v) const { return positions_[v]; }
    const std::array<int, 3>& face(int f) const { return faces_[f]; }

    int source(int he) const { return faces_[he / 3][he % 3]; }
    int target(int he) const { return faces_[he / 3][(he % 3 + 1) % 3]; }
    int faceOf(int he) const { return he / 3; }
    int next(int he) const { return (he / 3) * 3 + (he % 3 + 1) % 3; }
    int prev(int he) const { return (he / 3) * 3 + (he % 3 + 2) % 3; }
    int twin(int he) const { return twin_[he]; }

    int edgeOf(int he) const { return edgeOfHalfedge_[he]; }
    const Edge& edge(int e) const { return edges_[e]; }
    // Edge id between two vertices, -1 if absent.
    int edgeBetween(int u, int v) const;
    // Directed halfedge u -> v, -1 if absent.
    int halfedgeBetween(int u, int v) const;

    // For boundary vertices this is the unique outgoing boundary halfedge.
    int outgoing(int v) const { return outgoing_[v]; }
    bool isBoundaryVertex(int v) const { return boundaryVertex_[v]; }

    // Interior angle at the source of `he` inside its face.
    double cornerAngle(int he) const;
    // 2*pi minus the sum of incident interior angles. Defined for any vertex;
    // topologically meaningful only for interior ones.
    double angleDefect(int v) const;

    int eulerCharacteristic() const { return numVertices() - numEdges() + numFaces(); }
    // (2 - chi - b) / 2; throws NonManifoldError when not integral.
    int genus() const;
    bool isClosed() const { return boundaryLoops_.empty(); }
    bool isConnected() const;

    const std::vector<Cycle>& boundaryLoops() const { return boundaryLoops_; }

    // Original coordinate text from the parsed file, empty for programmatic meshes.
    const std::vector<std::array<std::string, 3>>& coordTokens() const { return coordTokens_; }

private:
    std::vector<Vec3> positions_;
    std::vector<std::array<int, 3>> faces_;
    std::vector<std::array<std::string, 3>> coordTokens_;
    std::vector<int> twin_;
    std::vector<int> edgeOfHalfedge_;
    std::vector<Edge> edges_;
    std::vector<int> outgoing_;
    std::vector<bool> boundaryVertex_;
    std::vector<Cycle> boundaryLoops_;

    void buildConnectivity();
    void buildBoundaryLoops();
};

Mesh load_mesh(const std::string& bytes, MeshFormat format);
// Dispatch on file extension (.obj / .off).
Mesh load_mesh_file(const std::string& path);
std::string write_off(const Mesh& m);

// Builds the strip/turning data for a closed loop of halfedges. The strip is
// the fan of faces on the left of the loop; throws if a fan is interrupted by
// the mesh boundary.
Cycle make_cycle(const Mesh& m, std::vector<int> halfedges, CycleKind kind);

// One-ring link of an interior vertex, counterclockwise, with
// totalGeodesicTurning = 2*pi - angleDefect(v).
Cycle vertex_link_cycle(const Mesh& m, int v);

// Caps `loop` with a triangle fan to a fresh apex vertex placed at the loop
// centroid offset by the mean loop radius along the loop normal.
// Vertex and face ids of the input mesh are preserved; the apex is appended.
std::pair<Mesh, int> close_boundary(const Mesh& m, const Cycle& loop);

// 2g independent noncontractible cycles via tree-cotree decomposition.
// Boundary loops are excluded from the basis (virtual dual nodes absorb them).
std::vector<Cycle> homology_generators(const Mesh& m);

std::vector<Mesh> split_components(const Mesh& m);

// Per-face orthonormal tangent frames (e1 along the face's first halfedge)
// and per-interior-edge hinge transition angles in the canonical direction
// face(heForward) -> face(heBackward).
struct FrameAtlas {
    struct Basis {
        Vec3 e1, e2, normal;
    };
    std::vector<Basis> faces;
    std::vector<double> edgeTransition;  // NaN for boundary edges

    // Recomputes the transition between two adjacent faces from geometry.
    double transition(const Mesh& m, int from, int to) const;
};

FrameAtlas build_frames(const Mesh& m);

}  // namespace fieldtopo
