#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <map>
#include <sstream>

#include "qrep/counts.hpp"
#include "qrep/graph.hpp"

using namespace qrep;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected a qrep::Error");
    return ErrorCode::ParseError;
}

GraphJob job_of(const QuadraticForm& q, std::uint32_t a,
                std::uint64_t cap = kDefaultVertexCap) {
    return GraphJob{q, a, cap, 1};
}

// All-pairs girth oracle: min cycle over BFS from every root (graphs with at
// most ~2000 vertices).
std::optional<std::int64_t> allpairs_girth(const QuadraticForm& q, std::uint32_t a) {
    std::uint64_t size = q.vector_count();
    std::vector<std::uint64_t> nbr = neighbor_set(job_of(q, a));
    if (nbr.empty()) return std::nullopt;
    auto add = [&](std::uint64_t x, std::uint64_t g) {
        return (Vector::from_index(q.field(), q.dim(), x) +
                Vector::from_index(q.field(), q.dim(), g))
            .index();
    };
    std::optional<std::int64_t> best;
    for (std::uint64_t root = 0; root < size; ++root) {
        std::vector<std::int32_t> dist(size, -1);
        std::vector<std::int64_t> parent(size, -1);
        std::vector<std::uint64_t> queue{root};
        dist[root] = 0;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            std::uint64_t x = queue[head];
            for (auto g : nbr) {
                std::uint64_t y = add(x, g);
                if (dist[y] < 0) {
                    dist[y] = dist[x] + 1;
                    parent[y] = static_cast<std::int64_t>(x);
                    queue.push_back(y);
                } else if (parent[x] != static_cast<std::int64_t>(y)) {
                    std::int64_t cand = dist[x] + dist[y] + 1;
                    if (!best || cand < *best) best = cand;
                }
            }
        }
    }
    return best;
}

} // namespace

TEST_CASE("neighbor sets match the worked examples") {
    auto f5 = make_field(5, 1);
    auto h5 = QuadraticForm::hyperbolic(f5);
    // {(1,1),(2,3),(3,2),(4,4)} as indices x + 5y
    CHECK(neighbor_set(job_of(h5, 1)) == std::vector<std::uint64_t>{6, 13, 17, 24});

    auto f2 = make_field(2, 1);
    CHECK(neighbor_set(job_of(QuadraticForm::hyperbolic(f2), 1)) ==
          std::vector<std::uint64_t>{3});
    CHECK(neighbor_set(job_of(QuadraticForm::binary(f2, 1, 1), 0)).empty());

    // |N| ties out with count_preimage
    for (std::uint32_t a = 0; a < 5; ++a) {
        auto n = neighbor_set(job_of(h5, a));
        CHECK(static_cast<std::int64_t>(n.size()) ==
              count_preimage(h5, a) - (a == 0 ? 1 : 0));
    }

    CHECK(code_of([&] { neighbor_set(job_of(h5, 1, 10)); }) == ErrorCode::CapExceeded);
}

TEST_CASE("component counts") {
    auto f3 = make_field(3, 1);
    CHECK(component_count(job_of(QuadraticForm::hyperbolic(f3), 1)) == 3);
    auto f4 = make_field(2, 2);
    CHECK(component_count(job_of(QuadraticForm::hyperbolic(f4), 1)) == 4);
    auto f5 = make_field(5, 1);
    CHECK(component_count(job_of(QuadraticForm::hyperbolic(f5), 1)) == 1);
    auto f2 = make_field(2, 1);
    CHECK(component_count(job_of(QuadraticForm::hyperbolic(f2), 1)) == 2);
    // isolated points: anisotropic with a = 0, one component per vertex
    CHECK(component_count(job_of(QuadraticForm::binary(f2, 1, 1), 0)) == 4);
    // dim 1 over a prime extension: p^(m-1) cycles of length p
    auto f9 = make_field(3, 2);
    CHECK(component_count(job_of(QuadraticForm::diag(f9, {1}), 1)) == 3);
}

TEST_CASE("distance spectra and diameters") {
    auto f5 = make_field(5, 1);
    auto h5 = QuadraticForm::hyperbolic(f5);
    auto s0 = distance_spectrum(job_of(h5, 0), true);
    CHECK(s0.diameter == 2);

    auto s4 = distance_spectrum(job_of(QuadraticForm::diag(f5, {1, 1, 1, 1}), 1), true);
    CHECK(s4.diameter == 2);

    auto f3 = make_field(3, 1);
    auto s3 = distance_spectrum(job_of(QuadraticForm::hyperbolic(f3), 1), true);
    CHECK(!s3.diameter); // disconnected

    // d(0, v_a) = 1 for the value a itself
    auto s1 = distance_spectrum(job_of(h5, 1), true);
    for (const auto& [value, dist] : s1.per_value)
        if (value == 1) CHECK(dist == 1);
}

TEST_CASE("girth") {
    auto f2 = make_field(2, 1);
    CHECK(!girth_bruteforce(job_of(QuadraticForm::hyperbolic(f2), 1)));
    CHECK(girth_bruteforce(job_of(QuadraticForm::binary(f2, 1, 1), 1)) == 3); // K4

    auto f7 = make_field(7, 1);
    CHECK(girth_bruteforce(job_of(QuadraticForm::diag(f7, {1}), 1)) == 7);

    // spot-check the one-BFS girth against the all-pairs oracle
    for (auto [p, m] : {std::pair{3u, 1u}, {5u, 1u}, {7u, 1u}, {2u, 2u}, {3u, 2u},
                        {11u, 1u}, {13u, 1u}}) {
        auto k = make_field(p, m);
        std::vector<QuadraticForm> forms = {QuadraticForm::hyperbolic(k)};
        if (p != 2)
            forms.push_back(QuadraticForm::diag(k, {1, k->neg(k->nonsquare_witness())}));
        else
            forms.push_back(QuadraticForm::binary(k, 1, k->wp_witness()));
        if (p != 2) forms.push_back(QuadraticForm::diag(k, {1}));
        for (const auto& q : forms)
            for (std::uint32_t a : {std::uint32_t{0}, std::uint32_t{1}}) {
                if (q.vector_count() > 2000) continue;
                CHECK(girth_bruteforce(job_of(q, a)) == allpairs_girth(q, a));
            }
    }
}

TEST_CASE("triangle census") {
    auto f5 = make_field(5, 1);
    auto census = triangle_census(job_of(QuadraticForm::diag(f5, {1, 1, 1, 1}), 1));
    CHECK(census.total == 250000);
    CHECK(census.c1 == 0);
    CHECK(census.c2 == 1200);
    CHECK(census.through_origin == 1200);

    auto f2 = make_field(2, 1);
    CHECK(triangle_census(job_of(QuadraticForm::hyperbolic(f2), 1)).total == 0);

    auto f3 = make_field(3, 1);
    auto c3 = triangle_census(job_of(QuadraticForm::hyperbolic(f3), 1));
    CHECK(c3.c1 == 1); // |V_1|/2 in characteristic 3
    CHECK(c3.c2 == 0);
}

TEST_CASE("four-cycle census") {
    auto f2 = make_field(2, 1);
    auto except = four_cycle_census(job_of(parse_form(f2, "H + bin(1,1)"), 1));
    CHECK(except.through_origin == 225);
    CHECK(except.total == 900);

    auto f5 = make_field(5, 1);
    auto h5 = four_cycle_census(job_of(QuadraticForm::hyperbolic(f5), 1));
    CHECK(h5.total == 25);

    // a diagonal can be shared by two different cycles in dimension 3
    auto q3 = QuadraticForm::diag(f5, {1, 1, 1});
    std::uint64_t target = Vector(f5, {1, 4, 0}).index();
    int through_target = 0;
    for_each_four_cycle_through_origin(job_of(q3, 1),
                                       [&](std::uint64_t, std::uint64_t w, std::uint64_t) {
                                           if (w == target) ++through_target;
                                       });
    CHECK(through_target >= 2);
}

TEST_CASE("four-cycle structure properties") {
    // diagonals perpendicular; dim-2, a != 0: w = u + v, plus the
    // characteristic split of the diagonal relation
    for (auto [p, m] : {std::pair{3u, 1u}, {5u, 1u}, {7u, 1u}, {2u, 2u}, {3u, 2u},
                        {2u, 1u}, {11u, 1u}, {13u, 1u}}) {
        auto k = make_field(p, m);
        std::vector<QuadraticForm> forms = {QuadraticForm::hyperbolic(k)};
        if (p != 2)
            forms.push_back(QuadraticForm::diag(k, {1, k->neg(k->nonsquare_witness())}));
        else
            forms.push_back(QuadraticForm::binary(k, 1, k->wp_witness()));
        for (const auto& q : forms) {
            std::vector<std::uint32_t> a_values{0, 1};
            if (k->order() > 2)
                a_values.push_back(p == 2 ? k->wp_witness() : k->nonsquare_witness());
            for (std::uint32_t a : a_values) {
                for_each_four_cycle_through_origin(
                    job_of(q, a), [&](std::uint64_t ui, std::uint64_t wi, std::uint64_t vi) {
                        Vector u = Vector::from_index(k, q.dim(), ui);
                        Vector w = Vector::from_index(k, q.dim(), wi);
                        Vector v = Vector::from_index(k, q.dim(), vi);
                        // diagonals w - 0 and u - v are perpendicular
                        CHECK(q.bilinear(w, u - v).encoding() == 0);
                        if (a != 0) {
                            CHECK((u + v) == w); // dim-2 uniqueness
                            if (k->char2()) {
                                CHECK(w == (u - v)); // diagonals coincide
                            } else {
                                // q ~ <q(d1), q(d2)>
                                auto d1 = q.eval_q(w).encoding();
                                auto d2 = q.eval_q(u - v).encoding();
                                REQUIRE(d1 != 0);
                                REQUIRE(d2 != 0);
                                CHECK(QuadraticForm::diag(k, {d1, d2}).is_isometric(q));
                            }
                        }
                    });
            }
        }
    }
    // the 4-dimensional exception has perpendicular diagonals too
    auto f2 = make_field(2, 1);
    auto hb = parse_form(f2, "H + bin(1,1)");
    for_each_four_cycle_through_origin(
        job_of(hb, 1), [&](std::uint64_t ui, std::uint64_t wi, std::uint64_t vi) {
            Vector u = Vector::from_index(f2, 4, ui);
            Vector w = Vector::from_index(f2, 4, wi);
            Vector v = Vector::from_index(f2, 4, vi);
            CHECK(hb.bilinear(w, u - v).encoding() == 0);
        });
}

TEST_CASE("sumset-isotropic triviality (dim 2, a != 0)") {
    for (auto [p, m] : {std::pair{3u, 1u}, {5u, 1u}, {7u, 1u}, {11u, 1u}, {13u, 1u},
                        {2u, 1u}, {2u, 2u}, {2u, 3u}, {3u, 2u}}) {
        auto k = make_field(p, m);
        std::vector<QuadraticForm> forms = {QuadraticForm::hyperbolic(k)};
        if (p != 2)
            forms.push_back(QuadraticForm::diag(k, {1, k->neg(k->nonsquare_witness())}));
        else
            forms.push_back(QuadraticForm::binary(k, 1, k->wp_witness()));
        for (const auto& q : forms)
            for (std::uint32_t a = 1; a < k->order(); ++a) {
                std::vector<Vector> va;
                for (std::uint64_t idx = 1; idx < q.vector_count(); ++idx)
                    if (q.eval_index(idx) == a)
                        va.push_back(Vector::from_index(k, 2, idx));
                for (const auto& u : va)
                    for (const auto& v : va) {
                        Vector s = u + v;
                        if (q.eval_q(s).encoding() == 0) CHECK(s.is_zero());
                    }
            }
    }
}

TEST_CASE("hyperbolic isotropic vertices sit within distance 3") {
    for (std::uint64_t f : {5, 7, 8, 9, 11, 13}) {
        auto k = parse_field_spec("q=" + std::to_string(f));
        auto h = QuadraticForm::hyperbolic(k);
        auto spectrum = distance_spectrum(job_of(h, 1), true);
        for (const auto& [value, dist] : spectrum.per_value)
            if (value == 0) {
                REQUIRE(dist);
                CHECK(*dist <= 3);
            }
    }
}

TEST_CASE("value-distance well-definedness on small jobs") {
    for (auto [p, m] : {std::pair{5u, 1u}, {7u, 1u}, {3u, 2u}, {2u, 3u}}) {
        auto k = make_field(p, m);
        std::vector<QuadraticForm> forms = {QuadraticForm::hyperbolic(k)};
        if (p != 2) forms.push_back(QuadraticForm::diag(k, {1, 1, 1}));
        for (const auto& q : forms)
            for (std::uint32_t a = 0; a < k->order(); ++a)
                CHECK_NOTHROW(distance_spectrum(job_of(q, a), true));
    }
}

TEST_CASE("export formats") {
    auto f2 = make_field(2, 1);
    std::ostringstream edges;
    export_graph(job_of(QuadraticForm::hyperbolic(f2), 1), ExportFormat::Edges, edges);
    CHECK(edges.str() == "0 3\n1 2\n");

    std::ostringstream k4;
    export_graph(job_of(QuadraticForm::binary(f2, 1, 1), 1), ExportFormat::Edges, k4);
    CHECK(k4.str() == "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");

    std::ostringstream empty;
    export_graph(job_of(QuadraticForm::binary(f2, 1, 1), 0), ExportFormat::Edges, empty);
    CHECK(empty.str().empty());

    std::ostringstream dot;
    export_graph(job_of(QuadraticForm::hyperbolic(f2), 1), ExportFormat::Dot, dot);
    std::string text = dot.str();
    CHECK(text.find("graph G {") == 0);
    CHECK(text.find("n0 [label=\"(0,0)\"]") != std::string::npos);
    CHECK(text.find("n0 -- n3;") != std::string::npos);

    // determinism: same bytes on a second run
    std::ostringstream again;
    export_graph(job_of(QuadraticForm::hyperbolic(f2), 1), ExportFormat::Dot, again);
    CHECK(text == again.str());

    auto f9 = make_field(3, 2);
    CHECK(code_of([&] {
        std::ostringstream out;
        export_graph(job_of(parse_form(f9, "3*H"), 1), ExportFormat::Dot, out);
    }) == ErrorCode::CapExceeded);
}

TEST_CASE("threaded scans agree with serial ones") {
    auto f13 = make_field(13, 1);
    auto q = QuadraticForm::diag(f13, {1, 1, 1});
    GraphJob serial{q, 1, kDefaultVertexCap, 1};
    GraphJob threaded{q, 1, kDefaultVertexCap, 4};
    CHECK(neighbor_set(serial) == neighbor_set(threaded));
    auto a = triangle_census(serial);
    auto b = triangle_census(threaded);
    CHECK(a.c1 == b.c1);
    CHECK(a.c2 == b.c2);
    CHECK(a.total == b.total);
}
