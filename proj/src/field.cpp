#include "fieldtopo/field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <queue>
#include <random>
#include <sstream>

namespace fieldtopo {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Wrap into (-pi/n, pi/n]: the smallest-rotation matching. Period jumps carry
// all multi-period content.
double wrapSym(double x, int n) {
    const double period = 2 * kPi / n;
    return x - period * std::ceil(x / period - 0.5);
}

double normalizeTheta(double x, int n) {
    const double period = 2 * kPi / n;
    double r = x - period * std::floor(x / period);
    if (r >= period) r -= period;
    return r;
}

SnappedValue snapToGrid(double x, int n, double tolerance, const char* what) {
    const auto k = static_cast<long long>(std::llround(x * n));
    const double residual = std::abs(x - static_cast<double>(k) / n);
    if (residual > tolerance)
        throw SnapError(std::string(what) + ": residual " + std::to_string(residual) +
                        " exceeds tolerance " + std::to_string(tolerance) +
                        " (degenerate mesh or broken frames)");
    return {Rational(k, n), residual};
}

void requireMatch(const DirectionField& field, const Mesh& m) {
    if (field.n < 1) throw std::invalid_argument("symmetry order must be >= 1");
    if (static_cast<int>(field.theta.size()) != m.numFaces() ||
        static_cast<int>(field.periodJump.size()) != m.numEdges())
        throw FieldMismatchError("field sized for " + std::to_string(field.theta.size()) + " faces / " +
                                 std::to_string(field.periodJump.size()) + " edges, mesh has " +
                                 std::to_string(m.numFaces()) + " / " + std::to_string(m.numEdges()));
}

}  // namespace

double halfedge_crossing(const DirectionField& field, const FrameAtlas& frames, const Mesh& m, int he) {
    const int e = m.edgeOf(he);
    const Edge& ed = m.edge(e);
    if (!ed.interior()) throw std::invalid_argument("crossing across a boundary edge");
    const int fFwd = m.faceOf(ed.heForward);
    const int fBack = m.faceOf(ed.heBackward);
    const double delta = wrapSym(field.theta[fBack] - field.theta[fFwd] - frames.edgeTransition[e], field.n) +
                         (2 * kPi / field.n) * field.periodJump[e];
    return he == ed.heForward ? delta : -delta;
}

double crossing_rotation(const DirectionField& field, const FrameAtlas& frames, const Mesh& m,
                         int from, int to) {
    requireMatch(field, m);
    for (int i = 0; i < 3; ++i) {
        const int t = m.twin(3 * from + i);
        if (t >= 0 && m.faceOf(t) == to) return halfedge_crossing(field, frames, m, 3 * from + i);
    }
    throw std::invalid_argument("faces " + std::to_string(from) + " and " + std::to_string(to) +
                                " are not adjacent");
}

SnappedValue singularity_index_detail(const DirectionField& field, const FrameAtlas& frames,
                                      const Mesh& m, int v, double tolerance) {
    requireMatch(field, m);
    if (m.isBoundaryVertex(v))
        throw std::invalid_argument("vertex " + std::to_string(v) +
                                    " is on the boundary; its singularity lives on the closed mesh");
    double sum = 0;
    int degree = 0;
    int h = m.outgoing(v);
    do {
        sum += halfedge_crossing(field, frames, m, m.prev(h));  // crossing into the next ccw face
        ++degree;
        h = m.twin(m.prev(h));
    } while (h != m.outgoing(v));
    const double value = (m.angleDefect(v) + sum) / (2 * kPi);
    return snapToGrid(value, field.n, tolerance * std::max(1, degree), "singularity index");
}

Rational singularity_index(const DirectionField& field, const FrameAtlas& frames, const Mesh& m,
                           int v, double tolerance) {
    return singularity_index_detail(field, frames, m, v, tolerance).value;
}

SnappedValue turning_number_detail(const DirectionField& field, const FrameAtlas& frames,
                                   const Mesh& m, const Cycle& cycle, double tolerance) {
    requireMatch(field, m);
    for (int he : cycle.halfedges)
        if (he < 0 || he >= m.numHalfedges()) throw std::invalid_argument("cycle is not on this mesh");
    double sum = 0;
    for (int he : cycle.crossings) sum += halfedge_crossing(field, frames, m, he);
    const double value = (sum - cycle.totalGeodesicTurning) / (2 * kPi);
    const int len = static_cast<int>(cycle.halfedges.size());
    return snapToGrid(value, field.n, tolerance * std::max(1, len), "turning number");
}

Rational turning_number(const DirectionField& field, const FrameAtlas& frames, const Mesh& m,
                        const Cycle& cycle, double tolerance) {
    return turning_number_detail(field, frames, m, cycle, tolerance).value;
}

TotalIndex total_index(const DirectionField& field, const FrameAtlas& frames, const Mesh& m,
                       double tolerance) {
    TotalIndex out;
    out.interiorSum = Rational(0);
    for (int v = 0; v < m.numVertices(); ++v) {
        if (m.isBoundaryVertex(v)) continue;
        const auto snapped = singularity_index_detail(field, frames, m, v, tolerance);
        out.maxResidual = std::max(out.maxResidual, snapped.residual);
        if (!snapped.value.isZero()) {
            out.records.push_back({v, snapped.value, SingularityRecord::Kind::Interior});
            out.interiorSum += snapped.value;
        }
    }
    return out;
}

DirectionField constant_field(const Mesh& m, int n) {
    if (n < 1) throw std::invalid_argument("symmetry order must be >= 1");
    DirectionField f;
    f.n = n;
    f.theta.assign(m.numFaces(), 0.0);
    f.periodJump.assign(m.numEdges(), 0);
    return f;
}

DirectionField random_field(const Mesh& m, int n, unsigned long long seed, int jumpRange) {
    if (n < 1) throw std::invalid_argument("symmetry order must be >= 1");
    if (jumpRange < 0) throw std::invalid_argument("jumpRange must be >= 0");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2 * kPi / n);
    std::uniform_int_distribution<int> jump(-jumpRange, jumpRange);
    DirectionField f;
    f.n = n;
    f.theta.resize(m.numFaces());
    for (int i = 0; i < m.numFaces(); ++i) f.theta[i] = normalizeTheta(angle(rng), n);
    f.periodJump.assign(m.numEdges(), 0);
    for (int e = 0; e < m.numEdges(); ++e)
        if (m.edge(e).interior()) f.periodJump[e] = jump(rng);
    return f;
}

DirectionField prescribe_singularities(const Mesh& m, const FrameAtlas& frames, int n,
                                       const std::map<int, Rational>& targets,
                                       const std::optional<DirectionField>& base, double tolerance) {
    if (n < 1) throw std::invalid_argument("symmetry order must be >= 1");
    if (!m.isConnected()) throw std::invalid_argument("prescribe_singularities requires a connected mesh");
    for (const auto& [v, t] : targets) {
        if (v < 0 || v >= m.numVertices())
            throw std::invalid_argument("target vertex " + std::to_string(v) + " out of range");
        if (m.isBoundaryVertex(v))
            throw std::invalid_argument("vertex " + std::to_string(v) +
                                        " is on the boundary and carries no individual index");
        if (!(t * Rational(n)).isInteger())
            throw std::invalid_argument("target index " + t.str() + " is not a multiple of 1/" +
                                        std::to_string(n));
    }
    if (m.isClosed()) {
        Rational sum(0);
        for (const auto& [v, t] : targets) sum += t;
        const Rational chi(m.eulerCharacteristic());
        if (sum != chi)
            throw InfeasibleTargetsError("sum of prescribed indices " + sum.str() +
                                         " != Euler characteristic " + chi.str() +
                                         "; the index budget on a closed mesh is fixed");
    }

    DirectionField field = base ? *base : constant_field(m, n);
    requireMatch(field, m);
    if (field.n != n) throw std::invalid_argument("base field has a different symmetry order");

    // Integer deficits in units of 1/n.
    std::vector<long long> deficit(m.numVertices(), 0);
    for (int v = 0; v < m.numVertices(); ++v) {
        if (m.isBoundaryVertex(v)) continue;
        Rational target(0);
        if (auto it = targets.find(v); it != targets.end()) target = it->second;
        const Rational diff = (target - singularity_index(field, frames, m, v, tolerance)) * Rational(n);
        deficit[v] = diff.num();  // diff is integral by construction
    }

    // Spanning tree over all vertices, rooted on the boundary when one
    // exists; each unit on edge (v0, v1) moves 1/n of index from v0 to v1.
    int root = 0;
    for (int v = 0; v < m.numVertices() && m.boundaryLoops().size() > 0; ++v)
        if (m.isBoundaryVertex(v)) {
            root = v;
            break;
        }
    std::vector<std::vector<std::pair<int, int>>> adj(m.numVertices());
    for (int e = 0; e < m.numEdges(); ++e) {
        adj[m.edge(e).v0].push_back({m.edge(e).v1, e});
        adj[m.edge(e).v1].push_back({m.edge(e).v0, e});
    }
    std::vector<int> parentEdge(m.numVertices(), -1), order;
    std::vector<bool> seen(m.numVertices(), false);
    std::queue<int> q;
    q.push(root);
    seen[root] = true;
    while (!q.empty()) {
        const int v = q.front();
        q.pop();
        order.push_back(v);
        for (auto [w, e] : adj[v]) {
            if (seen[w]) continue;
            seen[w] = true;
            parentEdge[w] = e;
            q.push(w);
        }
    }

    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const int v = *it;
        if (v == root || m.isBoundaryVertex(v) || deficit[v] == 0) continue;
        const Edge& ed = m.edge(parentEdge[v]);
        const int other = ed.v0 == v ? ed.v1 : ed.v0;
        if (v == ed.v1)
            field.periodJump[parentEdge[v]] += static_cast<int>(deficit[v]);
        else
            field.periodJump[parentEdge[v]] -= static_cast<int>(deficit[v]);
        if (!m.isBoundaryVertex(other)) deficit[other] += deficit[v];
        deficit[v] = 0;
    }
    if (!m.isBoundaryVertex(root) && deficit[root] != 0)
        throw InfeasibleTargetsError("unroutable index residue " + std::to_string(deficit[root]) +
                                     "/" + std::to_string(n) + " at the tree root");
    return field;
}

// ---------------------------------------------------------------------------
// NSYMFIELD text format

DirectionField read_field(const std::string& bytes, const Mesh& m) {
    std::istringstream in(bytes);
    std::string line;
    int lineNo = 0;
    bool headerSeen = false;
    int n = 0;
    std::vector<std::pair<int, double>> thetas;
    std::vector<std::pair<int, int>> jumps;  // edge id, jump
    while (std::getline(in, line)) {
        ++lineNo;
        std::istringstream ss(line);
        std::string tag;
        if (!(ss >> tag) || tag[0] == '#') continue;
        if (tag == "NSYMFIELD") {
            int version = 0;
            if (!(ss >> version) || version != 1)
                throw ParseError("line " + std::to_string(lineNo) + ": unsupported NSYMFIELD version");
            headerSeen = true;
        } else if (tag == "n") {
            if (!(ss >> n) || n < 1)
                throw ParseError("line " + std::to_string(lineNo) + ": bad symmetry order");
        } else if (tag == "t") {
            int f;
            double th;
            if (!(ss >> f >> th)) throw ParseError("line " + std::to_string(lineNo) + ": bad t record");
            if (f < 0 || f >= m.numFaces())
                throw FieldMismatchError("line " + std::to_string(lineNo) + ": face " + std::to_string(f) +
                                         " not in mesh");
            thetas.push_back({f, th});
        } else if (tag == "p") {
            int v0, v1, j;
            if (!(ss >> v0 >> v1 >> j)) throw ParseError("line " + std::to_string(lineNo) + ": bad p record");
            const int e = (v0 >= 0 && v0 < m.numVertices() && v1 >= 0 && v1 < m.numVertices())
                              ? m.edgeBetween(v0, v1)
                              : -1;
            if (e < 0 || !m.edge(e).interior())
                throw FieldMismatchError("line " + std::to_string(lineNo) + ": no interior edge " +
                                         std::to_string(v0) + "-" + std::to_string(v1) + " in mesh");
            jumps.push_back({e, m.edge(e).v0 == v0 ? j : -j});
        } else {
            throw ParseError("line " + std::to_string(lineNo) + ": unknown record '" + tag + "'");
        }
    }
    if (!headerSeen) throw ParseError("missing NSYMFIELD header");
    if (n < 1) throw ParseError("missing symmetry order record");
    DirectionField f = constant_field(m, n);
    for (auto [face, th] : thetas) f.theta[face] = normalizeTheta(th, n);
    for (auto [e, j] : jumps) f.periodJump[e] = j;
    return f;
}

std::string write_field(const DirectionField& field, const Mesh& m) {
    requireMatch(field, m);
    std::ostringstream out;
    out << "NSYMFIELD 1\nn " << field.n << "\n";
    char buf[64];
    for (int f = 0; f < m.numFaces(); ++f) {
        std::snprintf(buf, sizeof buf, "t %d %.17g\n", f, field.theta[f]);
        out << buf;
    }
    for (int e = 0; e < m.numEdges(); ++e) {
        if (field.periodJump[e] == 0) continue;
        out << "p " << m.edge(e).v0 << " " << m.edge(e).v1 << " " << field.periodJump[e] << "\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Plot exports

namespace {

Vec3 faceCentroid(const Mesh& m, int f) {
    return (m.position(m.face(f)[0]) + m.position(m.face(f)[1]) + m.position(m.face(f)[2])) / 3.0;
}

Vec3 sampleDirection(const DirectionField& field, const FrameAtlas& frames, int f, int k) {
    const double a = field.theta[f] + 2 * kPi * k / field.n;
    return frames.faces[f].e1 * std::cos(a) + frames.faces[f].e2 * std::sin(a);
}

}  // namespace

std::string field_csv(const DirectionField& field, const FrameAtlas& frames, const Mesh& m) {
    requireMatch(field, m);
    std::ostringstream out;
    out << "face,cx,cy,cz,sample,dx,dy,dz\n";
    char buf[160];
    for (int f = 0; f < m.numFaces(); ++f) {
        const Vec3 c = faceCentroid(m, f);
        for (int k = 0; k < field.n; ++k) {
            const Vec3 d = sampleDirection(field, frames, f, k);
            std::snprintf(buf, sizeof buf, "%d,%.9g,%.9g,%.9g,%d,%.9g,%.9g,%.9g\n", f, c.x, c.y, c.z, k,
                          d.x, d.y, d.z);
            out << buf;
        }
    }
    return out.str();
}

std::string field_svg(const DirectionField& field, const FrameAtlas& frames, const Mesh& m) {
    requireMatch(field, m);
    double meanEdge = 0;
    for (int e = 0; e < m.numEdges(); ++e)
        meanEdge += norm(m.position(m.edge(e).v1) - m.position(m.edge(e).v0));
    meanEdge /= std::max(1, m.numEdges());
    const double tick = 0.4 * meanEdge;

    double minX = 1e300, minY = 1e300, maxX = -1e300, maxY = -1e300;
    for (int v = 0; v < m.numVertices(); ++v) {
        minX = std::min(minX, m.position(v).x);
        maxX = std::max(maxX, m.position(v).x);
        minY = std::min(minY, m.position(v).y);
        maxY = std::max(maxY, m.position(v).y);
    }
    std::ostringstream out;
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"%g %g %g %g\">\n", minX - tick,
                  minY - tick, (maxX - minX) + 2 * tick, (maxY - minY) + 2 * tick);
    out << buf;
    out << "<g stroke=\"black\" stroke-width=\"" << tick * 0.08 << "\">\n";
    for (int f = 0; f < m.numFaces(); ++f) {
        const Vec3 c = faceCentroid(m, f);
        for (int k = 0; k < field.n; ++k) {
            const Vec3 d = sampleDirection(field, frames, f, k);
            std::snprintf(buf, sizeof buf, "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\"/>\n", c.x, c.y,
                          c.x + tick * d.x, c.y + tick * d.y);
            out << buf;
        }
    }
    out << "</g>\n</svg>\n";
    return out.str();
}

}  // namespace fieldtopo
