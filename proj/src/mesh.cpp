#include "fieldtopo/mesh.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <queue>
#include <sstream>
#include <unordered_map>

namespace fieldtopo {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::int64_t directedKey(int u, int v) {
    return (static_cast<std::int64_t>(u) << 32) | static_cast<std::uint32_t>(v);
}

}  // namespace

Mesh::Mesh(std::vector<Vec3> vertices, std::vector<std::array<int, 3>> faces,
           std::vector<std::array<std::string, 3>> coordTokens)
    : positions_(std::move(vertices)), faces_(std::move(faces)), coordTokens_(std::move(coordTokens)) {
    buildConnectivity();
    buildBoundaryLoops();
}

void Mesh::buildConnectivity() {
    const int nv = numVertices();
    const int nf = numFaces();
    for (int f = 0; f < nf; ++f) {
        for (int i = 0; i < 3; ++i) {
            const int v = faces_[f][i];
            if (v < 0 || v >= nv)
                throw ParseError("face " + std::to_string(f) + " references vertex " + std::to_string(v));
        }
        if (faces_[f][0] == faces_[f][1] || faces_[f][1] == faces_[f][2] || faces_[f][0] == faces_[f][2])
            throw NonManifoldError("face " + std::to_string(f) + " repeats a vertex");
    }

    // Directed halfedge map; a repeated directed edge means two faces traverse
    // an edge the same way, i.e. inconsistent orientation or a >2-fan.
    std::unordered_map<std::int64_t, int> heMap;
    heMap.reserve(3 * nf * 2);
    twin_.assign(3 * nf, -1);
    for (int he = 0; he < 3 * nf; ++he) {
        const auto key = directedKey(source(he), target(he));
        auto [it, fresh] = heMap.emplace(key, he);
        if (!fresh)
            throw NonManifoldError("edge " + std::to_string(source(he)) + "-" + std::to_string(target(he)) +
                                   " traversed twice in the same direction (inconsistent orientation or >2 faces)");
    }
    for (int he = 0; he < 3 * nf; ++he) {
        auto it = heMap.find(directedKey(target(he), source(he)));
        twin_[he] = (it == heMap.end()) ? -1 : it->second;
    }

    // Undirected edges with canonical direction v0 < v1.
    edgeOfHalfedge_.assign(3 * nf, -1);
    for (int he = 0; he < 3 * nf; ++he) {
        if (edgeOfHalfedge_[he] >= 0) continue;
        Edge e;
        const int u = source(he), v = target(he);
        e.v0 = std::min(u, v);
        e.v1 = std::max(u, v);
        if (u == e.v0)
            e.heForward = he;
        else
            e.heBackward = he;
        if (twin_[he] >= 0) {
            if (e.heForward < 0)
                e.heForward = twin_[he];
            else
                e.heBackward = twin_[he];
        }
        const int id = static_cast<int>(edges_.size());
        edges_.push_back(e);
        edgeOfHalfedge_[he] = id;
        if (twin_[he] >= 0) edgeOfHalfedge_[twin_[he]] = id;
    }

    // Outgoing halfedge per vertex; boundary vertices get their unique
    // boundary outgoing halfedge so fan walks can anchor on it.
    outgoing_.assign(nv, -1);
    boundaryVertex_.assign(nv, false);
    for (int he = 0; he < 3 * nf; ++he) {
        const int u = source(he);
        if (twin_[he] < 0) {
            if (boundaryVertex_[u])
                throw NonManifoldError("vertex " + std::to_string(u) + " touches more than one boundary fan");
            boundaryVertex_[u] = true;
            outgoing_[u] = he;
        } else if (outgoing_[u] < 0) {
            outgoing_[u] = he;
        }
    }
    // Boundary halfedge targets are boundary vertices too.
    for (int he = 0; he < 3 * nf; ++he)
        if (twin_[he] < 0 && !boundaryVertex_[target(he)])
            throw NonManifoldError("boundary chain broken at vertex " + std::to_string(target(he)));

    for (int v = 0; v < nv; ++v)
        if (outgoing_[v] < 0) throw NonManifoldError("dangling vertex " + std::to_string(v));

    // Umbrella check: the rotation from the anchor halfedge must visit every
    // incident corner exactly once.
    std::vector<int> cornerCount(nv, 0);
    for (int he = 0; he < 3 * nf; ++he) ++cornerCount[source(he)];
    for (int v = 0; v < nv; ++v) {
        int visited = 0;
        int h = outgoing_[v];
        for (int guard = 0; guard <= 3 * nf; ++guard) {
            ++visited;
            const int p = prev(h);  // targets v
            if (twin_[p] < 0) break;
            h = twin_[p];
            if (h == outgoing_[v]) break;
            if (guard == 3 * nf) throw NonManifoldError("umbrella walk failed at vertex " + std::to_string(v));
        }
        if (visited != cornerCount[v])
            throw NonManifoldError("vertex " + std::to_string(v) + " has a non-disk neighborhood");
    }
}

void Mesh::buildBoundaryLoops() {
    std::vector<bool> seen(numHalfedges(), false);
    for (int he = 0; he < numHalfedges(); ++he) {
        if (twin_[he] >= 0 || seen[he]) continue;
        std::vector<int> loop;
        int h = he;
        do {
            seen[h] = true;
            loop.push_back(h);
            h = outgoing_[target(h)];  // the boundary outgoing halfedge
        } while (h != he);
        boundaryLoops_.push_back(make_cycle(*this, std::move(loop), CycleKind::Boundary));
    }
}

int Mesh::edgeBetween(int u, int v) const {
    const int he = halfedgeBetween(u, v);
    if (he >= 0) return edgeOfHalfedge_[he];
    const int back = halfedgeBetween(v, u);
    return back >= 0 ? edgeOfHalfedge_[back] : -1;
}

int Mesh::halfedgeBetween(int u, int v) const {
    // Rotate around u; vertex valences are tiny so this is cheap.
    int h = outgoing_[u];
    for (int guard = 0; guard < numHalfedges(); ++guard) {
        if (target(h) == v) return h;
        const int p = prev(h);
        if (twin_[p] < 0) return -1;
        h = twin_[p];
        if (h == outgoing_[u]) return -1;
    }
    return -1;
}

double Mesh::cornerAngle(int he) const {
    const Vec3& a = positions_[source(he)];
    const Vec3& b = positions_[target(he)];
    const Vec3& c = positions_[target(next(he))];
    const Vec3 u = b - a, w = c - a;
    return std::atan2(norm(cross(u, w)), dot(u, w));
}

double Mesh::angleDefect(int v) const {
    double sum = 0;
    int h = outgoing_[v];
    for (int guard = 0; guard < numHalfedges(); ++guard) {
        sum += cornerAngle(h);
        const int p = prev(h);
        if (twin_[p] < 0) break;
        h = twin_[p];
        if (h == outgoing_[v]) break;
    }
    return 2 * kPi - sum;
}

int Mesh::genus() const {
    const int chi = eulerCharacteristic();
    const int b = static_cast<int>(boundaryLoops_.size());
    const int twice = 2 - chi - b;
    if (twice < 0 || twice % 2 != 0)
        throw NonManifoldError("2 - chi - b = " + std::to_string(twice) + " is not an even nonnegative integer");
    return twice / 2;
}

bool Mesh::isConnected() const {
    if (numVertices() == 0) return true;
    std::vector<bool> seen(numVertices(), false);
    std::queue<int> q;
    q.push(0);
    seen[0] = true;
    int count = 1;
    while (!q.empty()) {
        const int v = q.front();
        q.pop();
        int h = outgoing_[v];
        for (int guard = 0; guard < numHalfedges(); ++guard) {
            const int w = target(h);
            if (!seen[w]) {
                seen[w] = true;
                ++count;
                q.push(w);
            }
            const int p = prev(h);
            if (twin_[p] < 0) {
                // also hop along the incoming boundary edge
                const int s = source(p);
                if (!seen[s]) {
                    seen[s] = true;
                    ++count;
                    q.push(s);
                }
                break;
            }
            h = twin_[p];
            if (h == outgoing_[v]) break;
        }
    }
    return count == numVertices();
}

Cycle make_cycle(const Mesh& m, std::vector<int> halfedges, CycleKind kind) {
    if (halfedges.empty()) throw std::invalid_argument("empty cycle");
    const int k = static_cast<int>(halfedges.size());
    for (int i = 0; i < k; ++i) {
        if (m.target(halfedges[i]) != m.source(halfedges[(i + 1) % k]))
            throw std::invalid_argument("cycle halfedges do not chain");
    }
    Cycle c;
    c.kind = kind;
    c.halfedges = std::move(halfedges);
    double turning = 0;
    for (int i = 0; i < k; ++i) {
        const int hIn = c.halfedges[i];
        const int hOut = c.halfedges[(i + 1) % k];
        const int v = m.target(hIn);
        int f = m.faceOf(hIn);
        double angles = 0;
        for (int guard = 0; guard <= m.numFaces(); ++guard) {
            // the halfedge of f leaving v
            int hv = -1;
            for (int j = 0; j < 3; ++j)
                if (m.source(3 * f + j) == v) hv = 3 * f + j;
            angles += m.cornerAngle(hv);
            if (f == m.faceOf(hOut)) break;
            const int t = m.twin(hv);
            if (t < 0)
                throw std::invalid_argument("cycle fan interrupted by the mesh boundary at vertex " +
                                            std::to_string(v));
            c.crossings.push_back(hv);
            f = m.faceOf(t);
            if (guard == m.numFaces()) throw std::invalid_argument("cycle fan walk failed");
        }
        turning += kPi - angles;
    }
    c.totalGeodesicTurning = turning;
    return c;
}

Cycle vertex_link_cycle(const Mesh& m, int v) {
    if (m.isBoundaryVertex(v))
        throw std::invalid_argument("vertex " + std::to_string(v) +
                                    " is on the boundary; close the boundary to account for it");
    std::vector<int> link;
    int h = m.outgoing(v);
    do {
        link.push_back(m.next(h));  // opposite edge of the face, oriented ccw around v
        h = m.twin(m.prev(h));
    } while (h != m.outgoing(v));
    return make_cycle(m, std::move(link), CycleKind::VertexLink);
}

std::pair<Mesh, int> close_boundary(const Mesh& m, const Cycle& loop) {
    if (loop.kind != CycleKind::Boundary)
        throw std::invalid_argument("close_boundary expects a boundary loop");
    for (int he : loop.halfedges)
        if (he < 0 || he >= m.numHalfedges() || m.twin(he) >= 0)
            throw std::invalid_argument("cycle is not a boundary loop of this mesh");

    std::vector<int> ring;
    ring.reserve(loop.halfedges.size());
    for (int he : loop.halfedges) ring.push_back(m.source(he));

    Vec3 centroid{};
    for (int v : ring) centroid = centroid + m.position(v);
    centroid = centroid / static_cast<double>(ring.size());
    double meanRadius = 0;
    for (int v : ring) meanRadius += norm(m.position(v) - centroid);
    meanRadius /= static_cast<double>(ring.size());

    Vec3 normal{};
    const int k = static_cast<int>(ring.size());
    for (int i = 0; i < k; ++i)
        normal = normal + cross(m.position(ring[i]), m.position(ring[(i + 1) % k]));
    if (norm(normal) < 1e-12) {
        // collinear-ish loop polygon; fall back to adjacent face normals
        for (int he : loop.halfedges) {
            const int f = m.faceOf(he);
            const Vec3 n =
                cross(m.position(m.face(f)[1]) - m.position(m.face(f)[0]),
                      m.position(m.face(f)[2]) - m.position(m.face(f)[0]));
            normal = normal + normalized(n);
        }
    }
    if (norm(normal) < 1e-12) throw std::invalid_argument("cannot orient boundary loop for closure");
    normal = normalized(normal);

    std::vector<Vec3> vertices(m.numVertices());
    for (int v = 0; v < m.numVertices(); ++v) vertices[v] = m.position(v);
    const int apex = m.numVertices();
    vertices.push_back(centroid + normal * std::max(meanRadius, 1e-9));

    std::vector<std::array<int, 3>> faces(m.numFaces());
    for (int f = 0; f < m.numFaces(); ++f) faces[f] = m.face(f);
    for (int i = 0; i < k; ++i) faces.push_back({ring[(i + 1) % k], ring[i], apex});

    std::vector<std::array<std::string, 3>> tokens = m.coordTokens();
    if (!tokens.empty()) tokens.push_back({"", "", ""});

    return {Mesh(std::move(vertices), std::move(faces), std::move(tokens)), apex};
}

std::vector<Cycle> homology_generators(const Mesh& m) {
    const int nv = m.numVertices();
    const int ne = m.numEdges();
    const int nf = m.numFaces();
    const int b = static_cast<int>(m.boundaryLoops().size());

    // Boundary edges first so the primal tree soaks up each loop's chain and
    // the dual tree can claim the one edge per loop that remains.
    std::vector<int> edgeOrder(ne);
    for (int e = 0; e < ne; ++e) edgeOrder[e] = e;
    std::stable_partition(edgeOrder.begin(), edgeOrder.end(),
                          [&](int e) { return !m.edge(e).interior(); });

    std::vector<std::vector<std::pair<int, int>>> adj(nv);  // (neighbor, edge)
    for (int e : edgeOrder) {
        adj[m.edge(e).v0].push_back({m.edge(e).v1, e});
        adj[m.edge(e).v1].push_back({m.edge(e).v0, e});
    }

    std::vector<int> parentVertex(nv, -1), parentEdge(nv, -1), depth(nv, -1);
    std::vector<bool> inPrimal(ne, false);
    std::queue<int> q;
    q.push(0);
    depth[0] = 0;
    while (!q.empty()) {
        const int v = q.front();
        q.pop();
        for (auto [w, e] : adj[v]) {
            if (depth[w] >= 0) continue;
            depth[w] = depth[v] + 1;
            parentVertex[w] = v;
            parentEdge[w] = e;
            inPrimal[e] = true;
            q.push(w);
        }
    }
    for (int v = 0; v < nv; ++v)
        if (depth[v] < 0) throw std::invalid_argument("homology_generators requires a connected mesh");

    // Loop index per boundary edge, for the virtual dual nodes.
    std::vector<int> loopOfEdge(ne, -1);
    for (int li = 0; li < b; ++li)
        for (int he : m.boundaryLoops()[li].halfedges) loopOfEdge[m.edgeOf(he)] = li;

    // Dual graph over faces plus one virtual node per boundary loop.
    const int dualNodes = nf + b;
    std::vector<std::vector<std::pair<int, int>>> dadj(dualNodes);
    for (int e : edgeOrder) {
        if (inPrimal[e]) continue;
        const Edge& ed = m.edge(e);
        int a, c;
        if (ed.interior()) {
            a = m.faceOf(ed.heForward);
            c = m.faceOf(ed.heBackward);
        } else {
            a = m.faceOf(ed.heForward >= 0 ? ed.heForward : ed.heBackward);
            c = nf + loopOfEdge[e];
        }
        dadj[a].push_back({c, e});
        dadj[c].push_back({a, e});
    }
    std::vector<bool> inDual(ne, false), dualSeen(dualNodes, false);
    std::queue<int> dq;
    dq.push(0);
    dualSeen[0] = true;
    while (!dq.empty()) {
        const int d = dq.front();
        dq.pop();
        for (auto [w, e] : dadj[d]) {
            if (dualSeen[w]) continue;
            dualSeen[w] = true;
            inDual[e] = true;
            dq.push(w);
        }
    }

    std::vector<Cycle> generators;
    for (int e = 0; e < ne; ++e) {
        if (inPrimal[e] || inDual[e]) continue;
        const Edge& ed = m.edge(e);
        if (!ed.interior())
            throw NonManifoldError("homology basis construction left a boundary edge unused");
        // tree paths from both endpoints to their lowest common ancestor
        std::vector<int> up0{ed.v0}, up1{ed.v1};
        int a = ed.v0, c = ed.v1;
        while (a != c) {
            if (depth[a] >= depth[c]) {
                a = parentVertex[a];
                up0.push_back(a);
            } else {
                c = parentVertex[c];
                up1.push_back(c);
            }
        }
        // lca -> ... -> v0 -> v1 -> ... -> back up to lca
        std::vector<int> cycleVerts;
        for (auto it = up0.rbegin(); it != up0.rend(); ++it) cycleVerts.push_back(*it);
        for (auto it = up1.begin(); it + 1 != up1.end(); ++it) cycleVerts.push_back(*it);

        std::vector<int> hes;
        const int n = static_cast<int>(cycleVerts.size());
        for (int i = 0; i < n; ++i) {
            const int he = m.halfedgeBetween(cycleVerts[i], cycleVerts[(i + 1) % n]);
            if (he < 0) throw NonManifoldError("homology generator not representable as directed halfedges");
            hes.push_back(he);
        }
        generators.push_back(make_cycle(m, std::move(hes), CycleKind::HomologyGenerator));
    }

    const int expected = 2 * m.genus();
    if (static_cast<int>(generators.size()) != expected)
        throw NonManifoldError("tree-cotree produced " + std::to_string(generators.size()) +
                               " generators, expected " + std::to_string(expected));
    return generators;
}

std::vector<Mesh> split_components(const Mesh& m) {
    std::vector<int> comp(m.numFaces(), -1);
    int nc = 0;
    for (int f0 = 0; f0 < m.numFaces(); ++f0) {
        if (comp[f0] >= 0) continue;
        std::queue<int> q;
        q.push(f0);
        comp[f0] = nc;
        while (!q.empty()) {
            const int f = q.front();
            q.pop();
            for (int i = 0; i < 3; ++i) {
                const int t = m.twin(3 * f + i);
                if (t >= 0 && comp[m.faceOf(t)] < 0) {
                    comp[m.faceOf(t)] = nc;
                    q.push(m.faceOf(t));
                }
            }
        }
        ++nc;
    }
    std::vector<Mesh> out;
    for (int c = 0; c < nc; ++c) {
        std::vector<int> vmap(m.numVertices(), -1);
        std::vector<Vec3> verts;
        std::vector<std::array<std::string, 3>> tokens;
        std::vector<std::array<int, 3>> faces;
        for (int f = 0; f < m.numFaces(); ++f) {
            if (comp[f] != c) continue;
            std::array<int, 3> tri{};
            for (int i = 0; i < 3; ++i) {
                const int v = m.face(f)[i];
                if (vmap[v] < 0) {
                    vmap[v] = static_cast<int>(verts.size());
                    verts.push_back(m.position(v));
                    if (!m.coordTokens().empty()) tokens.push_back(m.coordTokens()[v]);
                }
                tri[i] = vmap[v];
            }
            faces.push_back(tri);
        }
        out.emplace_back(std::move(verts), std::move(faces), std::move(tokens));
    }
    return out;
}

// ---------------------------------------------------------------------------
// File IO

namespace {

double parseDouble(const std::string& tok, int lineNo) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(lineNo) + ": not a number: '" + tok + "'");
    }
}

long parseLong(const std::string& tok, int lineNo) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(lineNo) + ": not an integer: '" + tok + "'");
    }
}

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream ss(line);
    std::string t;
    while (ss >> t) {
        if (t[0] == '#') break;
        toks.push_back(t);
    }
    return toks;
}

Mesh parseOff(const std::string& bytes) {
    std::istringstream in(bytes);
    std::string line;
    int lineNo = 0;
    auto nextTokens = [&]() -> std::vector<std::string> {
        while (std::getline(in, line)) {
            ++lineNo;
            auto toks = tokenize(line);
            if (!toks.empty()) return toks;
        }
        throw ParseError("OFF: unexpected end of file at line " + std::to_string(lineNo));
    };

    auto header = nextTokens();
    if (header[0] != "OFF") throw ParseError("OFF: missing OFF header");
    std::vector<std::string> counts;
    if (header.size() >= 4)
        counts.assign(header.begin() + 1, header.end());
    else
        counts = nextTokens();
    if (counts.size() < 3) throw ParseError("OFF: counts line needs V F E");
    const long nv = parseLong(counts[0], lineNo);
    const long nf = parseLong(counts[1], lineNo);
    if (nv < 0 || nf < 0) throw ParseError("OFF: negative counts");

    std::vector<Vec3> verts;
    std::vector<std::array<std::string, 3>> tokens;
    for (long i = 0; i < nv; ++i) {
        auto t = nextTokens();
        if (t.size() < 3) throw ParseError("OFF: vertex line " + std::to_string(lineNo) + " too short");
        verts.push_back({parseDouble(t[0], lineNo), parseDouble(t[1], lineNo), parseDouble(t[2], lineNo)});
        tokens.push_back({t[0], t[1], t[2]});
    }
    std::vector<std::array<int, 3>> faces;
    for (long i = 0; i < nf; ++i) {
        auto t = nextTokens();
        const long k = parseLong(t[0], lineNo);
        if (k < 3 || static_cast<long>(t.size()) < k + 1)
            throw ParseError("OFF: face line " + std::to_string(lineNo) + " malformed");
        std::vector<int> poly;
        for (long j = 1; j <= k; ++j) {
            const long idx = parseLong(t[j], lineNo);
            if (idx < 0 || idx >= nv)
                throw ParseError("OFF: vertex index " + std::to_string(idx) + " out of range");
            poly.push_back(static_cast<int>(idx));
        }
        for (std::size_t j = 1; j + 1 < poly.size(); ++j)
            faces.push_back({poly[0], poly[j], poly[j + 1]});
    }
    return Mesh(std::move(verts), std::move(faces), std::move(tokens));
}

Mesh parseObj(const std::string& bytes) {
    std::istringstream in(bytes);
    std::string line;
    int lineNo = 0;
    std::vector<Vec3> verts;
    std::vector<std::array<std::string, 3>> tokens;
    std::vector<std::array<int, 3>> faces;
    while (std::getline(in, line)) {
        ++lineNo;
        auto t = tokenize(line);
        if (t.empty()) continue;
        if (t[0] == "v") {
            if (t.size() < 4) throw ParseError("OBJ: vertex line " + std::to_string(lineNo) + " too short");
            verts.push_back({parseDouble(t[1], lineNo), parseDouble(t[2], lineNo), parseDouble(t[3], lineNo)});
            tokens.push_back({t[1], t[2], t[3]});
        } else if (t[0] == "f") {
            if (t.size() < 4) throw ParseError("OBJ: face line " + std::to_string(lineNo) + " too short");
            std::vector<int> poly;
            for (std::size_t j = 1; j < t.size(); ++j) {
                std::string head = t[j].substr(0, t[j].find('/'));
                const long idx = parseLong(head, lineNo);
                if (idx < 1 || idx > static_cast<long>(verts.size()))
                    throw ParseError("OBJ: line " + std::to_string(lineNo) + ": vertex index " +
                                     std::to_string(idx) + " out of range (indices are 1-based)");
                poly.push_back(static_cast<int>(idx - 1));
            }
            for (std::size_t j = 1; j + 1 < poly.size(); ++j)
                faces.push_back({poly[0], poly[j], poly[j + 1]});
        }
        // all other records ignored
    }
    return Mesh(std::move(verts), std::move(faces), std::move(tokens));
}

}  // namespace

Mesh load_mesh(const std::string& bytes, MeshFormat format) {
    return format == MeshFormat::OFF ? parseOff(bytes) : parseObj(bytes);
}

Mesh load_mesh_file(const std::string& path) {
    FILE* fp = std::fopen(path.c_str(), "rb");
    if (!fp) throw ParseError("cannot open " + path);
    std::string bytes;
    char buf[1 << 16];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, fp)) > 0) bytes.append(buf, got);
    std::fclose(fp);
    const auto dotPos = path.rfind('.');
    std::string ext = dotPos == std::string::npos ? "" : path.substr(dotPos + 1);
    for (char& c : ext) c = static_cast<char>(std::tolower(c));
    if (ext == "obj") return load_mesh(bytes, MeshFormat::OBJ);
    if (ext == "off") return load_mesh(bytes, MeshFormat::OFF);
    throw ParseError("unknown mesh extension: " + path);
}

std::string write_off(const Mesh& m) {
    std::ostringstream out;
    out << "OFF\n" << m.numVertices() << " " << m.numFaces() << " " << m.numEdges() << "\n";
    char buf[80];
    for (int v = 0; v < m.numVertices(); ++v) {
        const bool echo = !m.coordTokens().empty() && !m.coordTokens()[v][0].empty();
        if (echo) {
            const auto& t = m.coordTokens()[v];
            out << t[0] << " " << t[1] << " " << t[2] << "\n";
        } else {
            const Vec3& p = m.position(v);
            std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", p.x, p.y, p.z);
            out << buf;
        }
    }
    for (int f = 0; f < m.numFaces(); ++f)
        out << "3 " << m.face(f)[0] << " " << m.face(f)[1] << " " << m.face(f)[2] << "\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// Frames

double FrameAtlas::transition(const Mesh& m, int from, int to) const {
    int shared = -1;
    for (int i = 0; i < 3; ++i) {
        const int t = m.twin(3 * from + i);
        if (t >= 0 && m.faceOf(t) == to) shared = 3 * from + i;
    }
    if (shared < 0) throw std::invalid_argument("faces are not adjacent");
    const Edge& e = m.edge(m.edgeOf(shared));
    const Vec3 dir = normalized(m.position(e.v1) - m.position(e.v0));
    const double af = std::atan2(dot(dir, faces[from].e2), dot(dir, faces[from].e1));
    const double ag = std::atan2(dot(dir, faces[to].e2), dot(dir, faces[to].e1));
    return std::remainder(ag - af, 2 * kPi);
}

FrameAtlas build_frames(const Mesh& m) {
    FrameAtlas atlas;
    atlas.faces.resize(m.numFaces());
    for (int f = 0; f < m.numFaces(); ++f) {
        const Vec3& a = m.position(m.face(f)[0]);
        const Vec3& b = m.position(m.face(f)[1]);
        const Vec3& c = m.position(m.face(f)[2]);
        const Vec3 n = cross(b - a, c - a);
        const double area2 = norm(n);
        if (area2 < 1e-14)
            throw NonManifoldError("degenerate face " + std::to_string(f));
        auto& basis = atlas.faces[f];
        basis.normal = n / area2;
        basis.e1 = normalized(b - a);
        basis.e2 = cross(basis.normal, basis.e1);
    }
    atlas.edgeTransition.assign(m.numEdges(), std::numeric_limits<double>::quiet_NaN());
    for (int e = 0; e < m.numEdges(); ++e) {
        const Edge& ed = m.edge(e);
        if (!ed.interior()) continue;
        atlas.edgeTransition[e] = atlas.transition(m, m.faceOf(ed.heForward), m.faceOf(ed.heBackward));
    }
    return atlas;
}

}  // namespace fieldtopo
