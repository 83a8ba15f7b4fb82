#include "qrep/predict.hpp"

#include "qrep/counts.hpp"
#include "qrep/graph.hpp"

namespace qrep {

namespace {

std::int64_t binom(std::int64_t n, int k) {
    if (n < k) return 0;
    std::int64_t num = 1, den = 1;
    for (int i = 0; i < k; ++i) {
        num *= n - i;
        den *= i + 1;
    }
    return num / den;
}

std::int64_t exact_div(std::int64_t num, std::int64_t den, const char* what) {
    if (num % den != 0)
        fail(ErrorCode::NotApplicable, std::string("inexact division in ") + what);
    return num / den;
}

bool value_in_dtilde(const QuadraticForm& q, std::uint32_t a) {
    if (a == 0) return q.is_isotropic();
    if (q.dim() >= 2) return true; // universal
    const Field& k = *q.field();
    return square_class_product(q.determinant_class(), k.square_class(a)) ==
           SquareClass::Square;
}

// Canonical complement q' with q ~ block + q', identified by dimension and
// discriminant arithmetic (det classes multiply; Arf classes add).
QuadraticForm complement_model(const QuadraticForm& q, const QuadraticForm& block) {
    CanonicalType t;
    t.char2 = q.field()->char2();
    t.dim = q.dim() - block.dim();
    if (t.char2) {
        t.arf_trivial = q.arf_trivial() == block.arf_trivial();
        t.hyperbolic = (t.dim % 2 == 0) && t.arf_trivial;
    } else {
        t.det_class = square_class_product(q.determinant_class(), block.determinant_class());
        if (t.dim % 2 == 0) {
            const Field& k = *q.field();
            SquareClass sign_class = (t.dim / 2 % 2 == 0)
                                         ? SquareClass::Square
                                         : k.square_class(k.neg(1));
            t.hyperbolic = square_class_product(sign_class, t.det_class) == SquareClass::Square;
        }
    }
    return canonical_model(q.field(), t);
}

} // namespace

bool predict_connected(const QuadraticForm& q, std::uint32_t a) {
    const Field& k = *q.field();
    if (a == 0) return q.is_isotropic();
    if (q.dim() == 1)
        return k.extension_degree() == 1 &&
               square_class_product(q.determinant_class(), k.square_class(a)) ==
                   SquareClass::Square;
    if (q.dim() == 2 && q.is_hyperbolic() && k.order() <= 4) return false;
    return true;
}

bool DiameterPrediction::matches(const std::optional<std::int64_t>& oracle) const {
    switch (kind) {
    case Kind::Exact: return oracle && *oracle == value;
    case Kind::Interval: return oracle && lo <= *oracle && *oracle <= hi;
    case Kind::Infinite: return !oracle;
    }
    return false;
}

std::string DiameterPrediction::to_string() const {
    switch (kind) {
    case Kind::Exact: return std::to_string(value);
    case Kind::Interval: return std::to_string(lo) + ".." + std::to_string(hi);
    case Kind::Infinite: return "inf";
    }
    return "?";
}

DiameterPrediction predict_diameter(const QuadraticForm& q, std::uint32_t a) {
    const Field& k = *q.field();
    std::int64_t f = static_cast<std::int64_t>(k.order());
    auto exact = [](std::int64_t v, const char* clause) {
        return DiameterPrediction{DiameterPrediction::Kind::Exact, v, 0, 0, clause};
    };
    auto infinite = [](const char* clause) {
        return DiameterPrediction{DiameterPrediction::Kind::Infinite, 0, 0, 0, clause};
    };

    if (a == 0) {
        if (q.is_isotropic()) return exact(2, "table2.a0.isotropic");
        return infinite("table2.a0.anisotropic");
    }
    if (q.dim() == 1) {
        bool represented = square_class_product(q.determinant_class(), k.square_class(a)) ==
                           SquareClass::Square;
        if (k.extension_degree() == 1 && represented)
            return exact((f - 1) / 2, "table2.dim1.prime-field-square");
        return infinite("table2.dim1.disconnected");
    }
    if (q.dim() == 2) {
        if (q.is_hyperbolic()) {
            if (f <= 4) return infinite("table2.dim2.hyperbolic.f-le-4");
            return DiameterPrediction{DiameterPrediction::Kind::Interval, 0, 3, 4,
                                      "table2.dim2.hyperbolic.f-ge-5"};
        }
        if (f == 2) return exact(1, "table2.dim2.anisotropic.f2");
        if (f <= 4) return exact(2, "table2.dim2.anisotropic.f3-f4");
        return exact(3, "table2.dim2.anisotropic.otherwise");
    }
    if (q.dim() == 3) {
        SquareClass cls = square_class_product(q.determinant_class(),
                                               k.square_class(k.neg(a)));
        if (cls == SquareClass::Square) return exact(2, "table2.dim3.det-eq-minus-a");
        return exact(3, "table2.dim3.det-ne-minus-a");
    }
    return exact(2, "table2.dim-ge-4");
}

std::int64_t resolve_hyperbolic_interval(const FieldPtr& field, std::uint32_t a,
                                         std::uint64_t max_vertices) {
    if (field->order() < 5)
        fail(ErrorCode::NotApplicable,
             "hyperbolic-plane graphs over fields with at most 4 elements are disconnected");
    if (a == 0)
        fail(ErrorCode::NotApplicable, "the 3-or-4 interval only arises for a != 0");
    GraphJob job{QuadraticForm::hyperbolic(field), a, max_vertices, 1};
    DistanceSpectrum spectrum = distance_spectrum(job);
    if (!spectrum.diameter)
        fail(ErrorCode::NotApplicable, "unexpected disconnected hyperbolic graph");
    return *spectrum.diameter;
}

GirthPrediction predict_girth(const QuadraticForm& q, std::uint32_t a) {
    const Field& k = *q.field();
    std::int64_t f = static_cast<std::int64_t>(k.order());
    if (!value_in_dtilde(q, a)) return {std::nullopt, "table3.edgeless"};

    if (a == 0) {
        // isotropic here; exactly the two Witt-index-1 forms over F_2 lack triangles
        bool f2_exception = f == 2 && ((q.dim() == 2 && q.is_hyperbolic()) ||
                                       (q.dim() == 4 && !q.is_hyperbolic()));
        if (f2_exception) return {4, "table3.a0.f2-exception"};
        return {3, "table3.a0.generic"};
    }
    if (q.dim() == 1) return {static_cast<std::int64_t>(k.characteristic()), "table3.dim1"};
    if (q.dim() == 2) {
        if (f == 2 && q.is_hyperbolic()) return {std::nullopt, "table3.dim2.f2-hyperbolic"};
        if (k.characteristic() == 3) return {3, "table3.dim2.char3"};
        QuadraticForm model = QuadraticForm::binary(q.field(), a, k.inv(a));
        if (q.is_isometric(model)) return {3, "table3.dim2.a-ainv"};
        return {4, "table3.dim2.otherwise"};
    }
    return {3, "table3.dim-ge-3"};
}

const char* route_name(TriangleCountPrediction::Route route) {
    switch (route) {
    case TriangleCountPrediction::Route::Diag: return "diag";
    case TriangleCountPrediction::Route::Binary: return "binary";
    case TriangleCountPrediction::Route::Isotropic0: return "isotropic0";
    case TriangleCountPrediction::Route::None: return "none";
    }
    return "?";
}

TriangleCountPrediction predict_triangles(const QuadraticForm& q, std::uint32_t a) {
    const Field& k = *q.field();
    std::int64_t f = static_cast<std::int64_t>(k.order());
    std::uint64_t vertices = q.vector_count();
    TriangleCountPrediction out;

    if (!value_in_dtilde(q, a)) return out; // edgeless graph, all zero

    if (a == 0) {
        std::int64_t t1 = totally_isotropic_count(q, 1);
        std::int64_t t2 = totally_isotropic_count(q, 2);
        out.c1 = t1 * binom(f - 1, 2);
        out.c2 = t2 * exact_div((f * f - 1) * (f * f - f), 2, "predict_triangles");
        out.route = TriangleCountPrediction::Route::Isotropic0;
    } else {
        std::int64_t va = count_preimage(q, a);
        out.c1 = k.characteristic() == 3 ? exact_div(va, 2, "predict_triangles.c1") : 0;

        std::uint32_t three = k.from_int(3);
        std::uint32_t three_a = k.mul(three, a);

        std::optional<std::int64_t> c2_diag, c2_binary;
        if (!k.char2()) {
            // q ~ <a> + q'; for dim 1 the complement is empty and only the
            // characteristic-3 value 3a = 0 is represented (by the zero vector).
            std::int64_t raw;
            if (q.dim() == 1) {
                raw = exact_div(va * (three_a == 0 ? 1 : 0), 2, "predict_triangles.diag");
            } else {
                QuadraticForm comp = complement_model(q, QuadraticForm::diag(q.field(), {a}));
                raw = exact_div(va * count_preimage(comp, three_a), 2,
                                "predict_triangles.diag");
            }
            // In characteristic 3 the raw value counts the span-dimension-1
            // triangles as well (3a = 0 admits the zero complement vector).
            c2_diag = raw - out.c1;
        }
        if (k.characteristic() != 3 && q.dim() >= 2) {
            QuadraticForm block = QuadraticForm::binary(q.field(), a, k.inv(a));
            if (q.dim() == 2) {
                c2_binary = q.is_isometric(block) ? count_preimage(block, three_a) : 0;
            } else {
                QuadraticForm comp = complement_model(q, block);
                std::int64_t num = count_preimage(block, three_a) * orthogonal_group_order(q);
                std::int64_t den =
                    orthogonal_group_order(block) * orthogonal_group_order(comp);
                c2_binary = exact_div(num, den, "predict_triangles.binary");
            }
        } else if (k.characteristic() != 3 && q.dim() == 1) {
            c2_binary = 0; // no 2-dimensional subform
        }

        if (c2_diag && c2_binary && *c2_diag != *c2_binary)
            fail(ErrorCode::NotApplicable,
                 "triangle routes disagree: diag " + std::to_string(*c2_diag) + ", binary " +
                     std::to_string(*c2_binary));
        if (c2_diag) {
            out.c2 = *c2_diag;
            out.route = TriangleCountPrediction::Route::Diag;
        } else if (c2_binary) {
            out.c2 = *c2_binary;
            out.route = TriangleCountPrediction::Route::Binary;
        } else {
            fail(ErrorCode::NoRouteApplicable, "no triangle-count route (impossible)");
        }
    }

    out.total = exact_div((out.c1 + out.c2) * static_cast<std::int64_t>(vertices), 3,
                          "predict_triangles.total");
    return out;
}

FourCyclePrediction predict_four_cycles(const QuadraticForm& q, std::uint32_t a) {
    const Field& k = *q.field();
    std::int64_t f = static_cast<std::int64_t>(k.order());
    if (f == 2 && q.dim() == 4 && !q.is_hyperbolic() && a == 1)
        return {900, "table4.exception-4dim-f2"};
    if (q.dim() != 2 || !value_in_dtilde(q, a)) return {std::nullopt, "table4.not-covered"};

    if (a == 0) {
        std::int64_t through = 6 * binom(f - 1, 3) + (f - 1) * (f - 1);
        return {exact_div(f * f * through, 4, "predict_four_cycles"), "table4.a0"};
    }
    bool iso = q.is_isotropic();
    if (!k.char2()) {
        if (iso)
            return {exact_div(f * f * (f - 1) * (f - 3), 8, "predict_four_cycles"),
                    "table4.a-nonzero.isotropic.odd-char"};
        return {exact_div(f * f * (f + 1) * (f - 1), 8, "predict_four_cycles"),
                "table4.a-nonzero.anisotropic.odd-char"};
    }
    if (iso)
        return {exact_div(f * f * (f - 1) * (f - 2), 8, "predict_four_cycles"),
                "table4.a-nonzero.isotropic.char2"};
    return {exact_div(f * f * f * (f + 1), 8, "predict_four_cycles"),
            "table4.a-nonzero.anisotropic.char2"};
}

DistanceClassDim3 distance_class_dim3(const QuadraticForm& q, std::uint32_t a,
                                      const Vector& v) {
    if (q.dim() != 3) fail(ErrorCode::DimensionNotThree, "distance_class_dim3");
    if (a == 0) fail(ErrorCode::NotApplicable, "distance_class_dim3: a must be nonzero");
    if (v.is_zero()) fail(ErrorCode::NotApplicable, "distance_class_dim3: v must be nonzero");
    const Field& k = *q.field();
    std::uint32_t qv = q.eval(v.coords());
    if (qv == a) return DistanceClassDim3::One;
    SquareClass cls =
        square_class_product(q.determinant_class(), k.square_class(k.neg(a)));
    if (qv == 0 && cls == SquareClass::NonSquare) return DistanceClassDim3::MoreThanTwo;
    return DistanceClassDim3::Two;
}

} // namespace qrep
