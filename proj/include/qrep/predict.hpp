#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "qrep/qform.hpp"

namespace qrep {

// Closed-form predictors for the graph invariants. Each result carries the
// clause tag of the table row that produced it, serialized into reports as
// strings like "table2.dim3.det-eq-minus-a".

bool predict_connected(const QuadraticForm& q, std::uint32_t a);

struct DiameterPrediction {
    enum class Kind { Exact, Interval, Infinite };
    Kind kind = Kind::Exact;
    std::int64_t value = 0;       // Exact
    std::int64_t lo = 0, hi = 0;  // Interval; only (3,4) occurs
    std::string clause;

    bool matches(const std::optional<std::int64_t>& oracle) const;
    std::string to_string() const; // "2", "inf", "3..4"
};

DiameterPrediction predict_diameter(const QuadraticForm& q, std::uint32_t a);

// Exact diameter of the hyperbolic-plane graph for f >= 5, a != 0, by
// running the brute-force spectrum. Resolves the 3-or-4 table cell.
std::int64_t resolve_hyperbolic_interval(const FieldPtr& field, std::uint32_t a,
                                         std::uint64_t max_vertices = kDefaultVertexCap);

struct GirthPrediction {
    std::optional<std::int64_t> girth; // nullopt = infinite
    std::string clause;
};

GirthPrediction predict_girth(const QuadraticForm& q, std::uint32_t a);

struct TriangleCountPrediction {
    enum class Route { Diag, Binary, Isotropic0, None };
    std::int64_t c1 = 0;
    std::int64_t c2 = 0;
    std::int64_t total = 0;
    Route route = Route::None;
};

const char* route_name(TriangleCountPrediction::Route route);

// Origin-triangle split (c1, c2) and the full count. For a != 0 the c2
// value comes from the <a>-splitting route when char != 2 and from the
// [a, 1/a]-subform route when char != 3; when both apply they are computed
// and cross-checked, and the cheaper Diag value is reported.
TriangleCountPrediction predict_triangles(const QuadraticForm& q, std::uint32_t a);

struct FourCyclePrediction {
    std::optional<std::int64_t> total; // nullopt = not covered by a formula
    std::string clause;
};

// Dimension-2 forms (all cases), plus the single 4-dimensional exception
// over F_2 with its hand-counted 900. Everything else is not covered.
FourCyclePrediction predict_four_cycles(const QuadraticForm& q, std::uint32_t a);

enum class DistanceClassDim3 { One, Two, MoreThanTwo };

// d(0, v) classification in dimension 3 for a != 0: 1 iff q(v) = a,
// otherwise > 2 iff v is isotropic and -a det(q) is a non-square, else 2.
DistanceClassDim3 distance_class_dim3(const QuadraticForm& q, std::uint32_t a,
                                      const Vector& v);

} // namespace qrep
