#include "qrep/graph.hpp"

#include <algorithm>
#include <future>
#include <thread>

namespace qrep {

namespace {

// Index arithmetic for the vertex space [0, f^n). Because the element
// encoding is itself positional base p, a vertex index is the base-p digit
// string of all coordinates, and vector addition is carry-free digit
// addition (XOR when p = 2).
struct VertexSpace {
    const Field* k;
    std::uint32_t n;
    std::uint64_t f;
    std::uint64_t size;
    std::uint32_t p;
    std::uint32_t digits;           // n * m
    std::vector<std::uint64_t> pw;  // p^i for i <= digits

    explicit VertexSpace(const QuadraticForm& q)
        : k(q.field().get()), n(q.dim()), f(q.field()->order()), size(q.vector_count()),
          p(q.field()->characteristic()), digits(q.dim() * q.field()->extension_degree()) {
        pw.resize(digits + 1);
        pw[0] = 1;
        for (std::uint32_t i = 0; i < digits; ++i) pw[i + 1] = pw[i] * p;
    }

    std::uint64_t add(std::uint64_t x, std::uint64_t y) const {
        if (p == 2) return x ^ y;
        std::uint64_t r = 0;
        for (std::uint32_t i = 0; i < digits && (x | y); ++i) {
            std::uint64_t s = x % p + y % p;
            if (s >= p) s -= p;
            r += s * pw[i];
            x /= p;
            y /= p;
        }
        return r;
    }

    std::uint64_t sub(std::uint64_t x, std::uint64_t y) const { return add(x, neg(y)); }

    std::uint64_t neg(std::uint64_t x) const {
        if (p == 2) return x;
        std::uint64_t r = 0;
        for (std::uint32_t i = 0; i < digits && x; ++i) {
            std::uint64_t d = x % p;
            if (d) r += (p - d) * pw[i];
            x /= p;
        }
        return r;
    }

    void coords_of(std::uint64_t idx, std::uint32_t* out) const {
        for (std::uint32_t i = 0; i < n; ++i) {
            out[i] = static_cast<std::uint32_t>(idx % f);
            idx /= f;
        }
    }
};

struct Engine {
    const GraphJob& job;
    const QuadraticForm& q;
    const Field& k;
    VertexSpace vs;
    std::vector<std::uint64_t> nbr;

    explicit Engine(const GraphJob& j) : job(j), q(j.form), k(*j.form.field()), vs(j.form) {
        if (j.a >= k.order())
            fail(ErrorCode::ParseError, "a is not an element encoding of the field");
        if (vs.size > j.max_vertices)
            fail(ErrorCode::CapExceeded,
                 "graph has " + std::to_string(vs.size) + " vertices, cap is " +
                     std::to_string(j.max_vertices));
        nbr = scan_neighbors();
    }

    std::vector<std::uint64_t> scan_neighbors() const {
        unsigned workers = job.threads > 1 ? job.threads : 1;
        if (workers > 1 && vs.size > 4096) {
            std::vector<std::future<std::vector<std::uint64_t>>> parts;
            std::uint64_t chunk = (vs.size + workers - 1) / workers;
            for (unsigned w = 0; w < workers; ++w) {
                std::uint64_t lo = w * chunk, hi = std::min(vs.size, lo + chunk);
                parts.push_back(std::async(std::launch::async, [this, lo, hi] {
                    return scan_range(lo, hi);
                }));
            }
            std::vector<std::uint64_t> out;
            for (auto& part : parts)
                for (auto idx : part.get()) out.push_back(idx);
            return out; // chunks are in index order, so the merge is sorted
        }
        return scan_range(0, vs.size);
    }

    std::vector<std::uint64_t> scan_range(std::uint64_t lo, std::uint64_t hi) const {
        std::vector<std::uint64_t> out;
        std::uint32_t coords[64];
        for (std::uint64_t idx = std::max<std::uint64_t>(lo, 1); idx < hi; ++idx) {
            vs.coords_of(idx, coords);
            if (q.eval(std::span<const std::uint32_t>(coords, vs.n)) == job.a)
                out.push_back(idx);
        }
        return out;
    }

    // BFS from the origin; dist[-1] marks unreached. Optionally records the
    // parent link of each tree edge and the best non-tree cycle bound.
    std::vector<std::int32_t> bfs(std::int64_t* girth_bound = nullptr) const {
        std::vector<std::int32_t> dist(vs.size, -1);
        std::vector<std::int64_t> parent;
        if (girth_bound) parent.assign(vs.size, -1);
        std::int64_t best = -1;
        std::vector<std::uint64_t> queue;
        queue.reserve(1024);
        queue.push_back(0);
        dist[0] = 0;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            std::uint64_t x = queue[head];
            for (auto g : nbr) {
                std::uint64_t y = vs.add(x, g);
                if (dist[y] < 0) {
                    dist[y] = dist[x] + 1;
                    if (girth_bound) parent[y] = static_cast<std::int64_t>(x);
                    queue.push_back(y);
                } else if (girth_bound && parent[x] != static_cast<std::int64_t>(y)) {
                    std::int64_t cand = static_cast<std::int64_t>(dist[x]) + dist[y] + 1;
                    if (best < 0 || cand < best) best = cand;
                }
            }
        }
        if (girth_bound) *girth_bound = best;
        return dist;
    }
};

std::uint32_t value_of(const Engine& e, std::uint64_t idx) {
    std::uint32_t coords[64];
    e.vs.coords_of(idx, coords);
    return e.q.eval(std::span<const std::uint32_t>(coords, e.vs.n));
}

// w in span(v), both nonzero, coordinate arrays of length n.
bool span_dependent(const Field& k, std::uint32_t n, const std::uint32_t* v,
                    const std::uint32_t* w) {
    std::uint32_t i0 = 0;
    while (v[i0] == 0) ++i0;
    std::uint32_t t = k.mul(w[i0], k.inv(v[i0]));
    for (std::uint32_t i = 0; i < n; ++i)
        if (w[i] != k.mul(t, v[i])) return false;
    return true;
}

std::int64_t transfer_total(std::int64_t through_origin, std::uint64_t vertices,
                            std::int64_t cycle_len) {
    // counting (cycle, vertex) incidences: cycle_len * total = |V| * through
    std::int64_t prod = through_origin * static_cast<std::int64_t>(vertices);
    if (prod % cycle_len != 0)
        fail(ErrorCode::NotApplicable, "cycle transfer count not divisible (impossible)");
    return prod / cycle_len;
}

} // namespace

std::vector<std::uint64_t> neighbor_set(const GraphJob& job) {
    return Engine(job).nbr;
}

std::int64_t component_count(const GraphJob& job) {
    Engine e(job);
    // Full labeling sweep.
    std::vector<std::int32_t> label(e.vs.size, -1);
    std::int64_t count = 0;
    std::vector<std::uint64_t> queue;
    for (std::uint64_t start = 0; start < e.vs.size; ++start) {
        if (label[start] >= 0) continue;
        std::int32_t id = static_cast<std::int32_t>(count++);
        queue.clear();
        queue.push_back(start);
        label[start] = id;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            std::uint64_t x = queue[head];
            for (auto g : e.nbr) {
                std::uint64_t y = e.vs.add(x, g);
                if (label[y] < 0) {
                    label[y] = id;
                    queue.push_back(y);
                }
            }
        }
    }
    // Cross-check: components are cosets of the subgroup generated by N.
    std::uint64_t comp0 = 0;
    for (std::uint64_t x = 0; x < e.vs.size; ++x)
        if (label[x] == 0) ++comp0;
    if (e.vs.size % comp0 != 0 ||
        count != static_cast<std::int64_t>(e.vs.size / comp0))
        fail(ErrorCode::NotApplicable,
             "component count disagrees with the subgroup index (impossible)");
    return count;
}

DistanceSpectrum distance_spectrum(const GraphJob& job, bool check_value_classes) {
    Engine e(job);
    std::vector<std::int32_t> dist = e.bfs();

    std::uint64_t f = e.vs.f;
    std::vector<char> has_rep(f, 0);
    std::vector<std::int64_t> first_dist(f, -2); // -2 unset, -1 unreachable
    for (std::uint64_t idx = 1; idx < e.vs.size; ++idx) {
        std::uint32_t b = value_of(e, idx);
        if (!has_rep[b]) {
            has_rep[b] = 1;
            first_dist[b] = dist[idx];
        } else if (check_value_classes && first_dist[b] != dist[idx]) {
            fail(ErrorCode::NotApplicable,
                 "value-distance well-definedness violated at vertex " + std::to_string(idx));
        }
    }

    DistanceSpectrum out;
    bool infinite = false;
    std::int64_t max_dist = 0;
    for (std::uint32_t b = 0; b < f; ++b) {
        if (!has_rep[b]) continue;
        if (first_dist[b] < 0) {
            out.per_value.emplace_back(b, std::nullopt);
            infinite = true;
        } else {
            out.per_value.emplace_back(b, first_dist[b]);
            max_dist = std::max(max_dist, first_dist[b]);
        }
    }
    if (!infinite) out.diameter = max_dist;
    return out;
}

std::optional<std::int64_t> girth_bruteforce(const GraphJob& job) {
    Engine e(job);
    if (e.nbr.empty()) return std::nullopt;
    std::int64_t bound = -1;
    e.bfs(&bound);
    if (bound < 0) return std::nullopt;
    return bound;
}

TriangleCensus triangle_census(const GraphJob& job) {
    Engine e(job);
    const Field& k = e.k;
    std::uint32_t n = e.vs.n;
    std::size_t cnt = e.nbr.size();
    std::vector<std::uint32_t> coords(cnt * n);
    for (std::size_t i = 0; i < cnt; ++i) e.vs.coords_of(e.nbr[i], &coords[i * n]);

    auto scan = [&](std::size_t lo, std::size_t hi) {
        TriangleCensus part;
        std::uint32_t diff[64];
        for (std::size_t i = lo; i < hi; ++i) {
            const std::uint32_t* vi = &coords[i * n];
            for (std::size_t j = i + 1; j < cnt; ++j) {
                const std::uint32_t* vj = &coords[j * n];
                for (std::uint32_t c = 0; c < n; ++c) diff[c] = k.sub(vi[c], vj[c]);
                if (e.q.eval(std::span<const std::uint32_t>(diff, n)) != job.a) continue;
                if (span_dependent(k, n, vi, vj))
                    ++part.c1;
                else
                    ++part.c2;
            }
        }
        return part;
    };

    TriangleCensus out;
    unsigned workers = job.threads > 1 ? job.threads : 1;
    if (workers > 1 && cnt > 2048) {
        std::vector<std::future<TriangleCensus>> parts;
        std::size_t chunk = (cnt + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            std::size_t lo = std::min(cnt, w * chunk), hi = std::min(cnt, lo + chunk);
            parts.push_back(std::async(std::launch::async, scan, lo, hi));
        }
        for (auto& p : parts) {
            TriangleCensus part = p.get();
            out.c1 += part.c1;
            out.c2 += part.c2;
        }
    } else {
        out = scan(0, cnt);
    }
    out.through_origin = out.c1 + out.c2;
    out.total = transfer_total(out.through_origin, e.vs.size, 3);
    return out;
}

namespace {

std::vector<std::uint32_t> path_counts(const Engine& e) {
    std::vector<std::uint32_t> paths(e.vs.size, 0);
    for (auto u : e.nbr)
        for (auto g : e.nbr) {
            std::uint64_t w = e.vs.add(u, g);
            if (w != 0) ++paths[w];
        }
    return paths;
}

} // namespace

FourCycleCensus four_cycle_census(const GraphJob& job) {
    Engine e(job);
    std::vector<std::uint32_t> paths = path_counts(e);
    FourCycleCensus out;
    for (std::uint64_t w = 1; w < e.vs.size; ++w) {
        std::int64_t p = paths[w];
        out.through_origin += p * (p - 1) / 2;
    }
    out.total = transfer_total(out.through_origin, e.vs.size, 4);
    return out;
}

void for_each_four_cycle_through_origin(
    const GraphJob& job,
    const std::function<void(std::uint64_t, std::uint64_t, std::uint64_t)>& fn) {
    Engine e(job);
    std::vector<std::uint32_t> paths = path_counts(e);
    // Midpoint lists, flat-packed; only vertices with >= 2 paths matter.
    std::vector<std::uint64_t> offset(e.vs.size + 1, 0);
    for (std::uint64_t w = 1; w < e.vs.size; ++w)
        offset[w + 1] = offset[w] + (paths[w] >= 2 ? paths[w] : 0);
    std::vector<std::uint64_t> midpoints(offset[e.vs.size]);
    std::vector<std::uint64_t> fill = offset;
    for (auto u : e.nbr)
        for (auto g : e.nbr) {
            std::uint64_t w = e.vs.add(u, g);
            if (w != 0 && paths[w] >= 2) midpoints[fill[w]++] = u;
        }
    for (std::uint64_t w = 1; w < e.vs.size; ++w) {
        if (paths[w] < 2) continue;
        for (std::uint64_t i = offset[w]; i < offset[w + 1]; ++i)
            for (std::uint64_t j = i + 1; j < offset[w + 1]; ++j)
                fn(midpoints[i], w, midpoints[j]);
    }
}

void export_graph(const GraphJob& job, ExportFormat format, std::ostream& out) {
    if (format == ExportFormat::Dot && job.form.vector_count() > 10'000)
        fail(ErrorCode::CapExceeded, "dot export is capped at 10^4 vertices");
    Engine e(job);
    if (format == ExportFormat::Dot) {
        out << "graph G {\n";
        std::uint32_t coords[64];
        for (std::uint64_t idx = 0; idx < e.vs.size; ++idx) {
            e.vs.coords_of(idx, coords);
            out << "  n" << idx << " [label=\"(";
            for (std::uint32_t i = 0; i < e.vs.n; ++i) {
                if (i) out << ",";
                out << coords[i];
            }
            out << ")\"];\n";
        }
    }
    std::vector<std::uint64_t> larger;
    for (std::uint64_t i = 0; i < e.vs.size; ++i) {
        larger.clear();
        for (auto g : e.nbr) {
            std::uint64_t j = e.vs.add(i, g);
            if (j > i) larger.push_back(j);
        }
        std::sort(larger.begin(), larger.end());
        for (auto j : larger) {
            if (format == ExportFormat::Dot)
                out << "  n" << i << " -- n" << j << ";\n";
            else
                out << i << " " << j << "\n";
        }
    }
    if (format == ExportFormat::Dot) out << "}\n";
}

} // namespace qrep
