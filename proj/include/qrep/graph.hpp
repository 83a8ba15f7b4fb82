#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <vector>

#include "qrep/qform.hpp"

namespace qrep {

// One representation-graph job: the Cayley graph on (V, +) with connection
// set {x != 0 : q(x) = a}. Vertices are dense indices in [0, f^n); the
// engine steps by index arithmetic and never materializes adjacency.
struct GraphJob {
    QuadraticForm form;
    std::uint32_t a = 0;
    std::uint64_t max_vertices = kDefaultVertexCap;
    unsigned threads = 1; // parallelism hint for the scan kernels
};

// Exact connection set, sorted by vertex index. Throws CapExceeded.
std::vector<std::uint64_t> neighbor_set(const GraphJob& job);

// Number of connected components. Computed by a full BFS labeling sweep and
// cross-checked against the subgroup index f^n / |<N>| (Cayley components
// are the cosets of the generated subgroup); the two must agree.
std::int64_t component_count(const GraphJob& job);

struct DistanceSpectrum {
    // (value b, distance of a nonzero vertex with q(v) = b); nullopt when
    // unreachable. One entry per value with a nonzero representative.
    std::vector<std::pair<std::uint32_t, std::optional<std::int64_t>>> per_value;
    std::optional<std::int64_t> diameter; // nullopt = infinite
};

// BFS from the origin. With check_value_classes set, verifies that all
// nonzero vertices of equal value share the same distance.
DistanceSpectrum distance_spectrum(const GraphJob& job, bool check_value_classes = false);

// Girth via BFS from the origin: min over non-tree edges {u,v} of
// d(u) + d(v) + 1. The graph is vertex-transitive (translations act), so a
// minimal cycle can be translated through the origin, where the BFS bound is
// attained; nullopt when the graph is acyclic or edgeless.
std::optional<std::int64_t> girth_bruteforce(const GraphJob& job);

struct TriangleCensus {
    std::int64_t c1 = 0; // origin triangles whose two other vertices span a line
    std::int64_t c2 = 0; // ... span a plane
    std::int64_t through_origin = 0;
    std::int64_t total = 0;
};

// Exhaustive pair scan over the connection set: {v,w} with q(v-w) = a.
TriangleCensus triangle_census(const GraphJob& job);

struct FourCycleCensus {
    std::int64_t through_origin = 0;
    std::int64_t total = 0;
};

// Counts 4-cycles (0, u, w, v, 0) by tallying 0-w-paths of length 2 over
// w = u + g (u, g in N), then summing C(paths, 2) per opposite vertex w.
FourCycleCensus four_cycle_census(const GraphJob& job);

// Enumerates every 4-cycle through the origin as (u, w, v) with u < v,
// w the vertex opposite the origin. For property checks on small graphs.
void for_each_four_cycle_through_origin(
    const GraphJob& job,
    const std::function<void(std::uint64_t u, std::uint64_t w, std::uint64_t v)>& fn);

enum class ExportFormat { Edges, Dot };

// Deterministic export: edge list "i j" with i < j in index order, or dot
// with vertices labeled by coordinate tuples. Dot is capped at 10^4 vertices.
void export_graph(const GraphJob& job, ExportFormat format, std::ostream& out);

} // namespace qrep
