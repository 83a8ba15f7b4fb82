#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <map>

#include "qrep/qform.hpp"

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

Vector vec(const FieldPtr& k, std::vector<std::uint32_t> coords) {
    return Vector(k, std::move(coords));
}

// Histogram of values over all of V, by exhaustive evaluation.
std::map<std::uint32_t, std::int64_t> value_histogram(const QuadraticForm& q) {
    std::map<std::uint32_t, std::int64_t> h;
    for (std::uint64_t idx = 0; idx < q.vector_count(); ++idx) ++h[q.eval_index(idx)];
    return h;
}

bool has_nonzero_isotropic(const QuadraticForm& q) {
    for (std::uint64_t idx = 1; idx < q.vector_count(); ++idx)
        if (q.eval_index(idx) == 0) return true;
    return false;
}

} // namespace

TEST_CASE("constructors and their guards") {
    auto f5 = make_field(5, 1);
    auto f3 = make_field(3, 1);
    auto f2 = make_field(2, 1);

    auto q = QuadraticForm::diag(f5, {1, 1});
    CHECK(q.eval_q(vec(f5, {2, 1})).encoding() == 0); // 4 + 1 = 5 = 0

    CHECK(code_of([&] { QuadraticForm::diag(f3, {1, 0}); }) == ErrorCode::DegenerateForm);
    CHECK(code_of([&] { QuadraticForm::diag(f2, {1}); }) == ErrorCode::DegenerateForm);

    auto h2 = QuadraticForm::hyperbolic(f2);
    CHECK(h2.eval_q(vec(f2, {1, 1})).encoding() == 1); // xy at (1,1)

    auto b11 = QuadraticForm::binary(f2, 1, 1);
    CHECK(b11.eval_q(vec(f2, {1, 1})).encoding() == 1); // 1+1+1

    // 4ab = 16 = 1 mod 5
    CHECK(code_of([&] { QuadraticForm::binary(f5, 1, 4); }) == ErrorCode::DegenerateForm);

    auto four_dim = QuadraticForm::hyperbolic(f2).orth_sum(QuadraticForm::binary(f2, 1, 1));
    CHECK(four_dim.dim() == 4);

    auto scaled = QuadraticForm::diag(f5, {1, 1}).scaled(2);
    CHECK(scaled.coeff(0, 0) == 2);
    CHECK(scaled.coeff(1, 1) == 2);

    CHECK(code_of([&] {
        QuadraticForm::diag(f5, {1}).orth_sum(QuadraticForm::diag(f3, {1}));
    }) == ErrorCode::FieldMismatch);

    // no odd-dimensional forms in characteristic 2
    CHECK(code_of([&] { QuadraticForm(f2, 1, {1}); }) == ErrorCode::DegenerateForm);
    CHECK(code_of([&] {
        QuadraticForm(f2, 3, {1, 1, 1, 0, 1, 1, 0, 0, 1});
    }) == ErrorCode::DegenerateForm);
}

TEST_CASE("evaluation and the polar form") {
    auto f5 = make_field(5, 1);
    auto h = QuadraticForm::hyperbolic(f5);
    CHECK(h.eval_q(vec(f5, {2, 3})).encoding() == 1); // 6 = 1

    auto f2 = make_field(2, 1);
    auto b11 = QuadraticForm::binary(f2, 1, 1);
    CHECK(b11.bilinear(vec(f2, {1, 0}), vec(f2, {0, 1})).encoding() == 1);

    // b_q(v, 0) = 0 and the defining identity, across a small sample
    for (auto& q : {QuadraticForm::diag(f5, {1, 2, 3}), QuadraticForm::hyperbolic(f5), b11}) {
        const auto& k = q.field();
        std::uint64_t count = q.vector_count();
        Vector zero = Vector::from_index(k, q.dim(), 0);
        for (std::uint64_t i = 1; i < count; i += 3) {
            Vector v = Vector::from_index(k, q.dim(), i);
            CHECK(q.bilinear(v, zero).encoding() == 0);
            for (std::uint64_t j = 1; j < count; j += 5) {
                Vector w = Vector::from_index(k, q.dim(), j);
                // b(v,w) = q(v+w) - q(v) - q(w)
                auto lhs = q.bilinear(v, w);
                auto rhs = q.eval_q(v + w) - q.eval_q(v) - q.eval_q(w);
                CHECK(lhs == rhs);
            }
            // q(cv) = c^2 q(v)
            for (std::uint32_t c = 0; c < k->order(); ++c) {
                auto lhs = q.eval_q(v.scaled(c)).encoding();
                auto rhs = k->mul(k->mul(c, c), q.eval_q(v).encoding());
                CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("determinant class and Arf invariant") {
    auto f5 = make_field(5, 1);
    CHECK(QuadraticForm::diag(f5, {1, 1, 1}).determinant_class() == SquareClass::Square);

    auto f2 = make_field(2, 1);
    CHECK(QuadraticForm::hyperbolic(f2).arf_trivial());
    CHECK(!QuadraticForm::binary(f2, 1, 1).arf_trivial());

    CHECK(code_of([&] { QuadraticForm::hyperbolic(f2).determinant_class(); }) ==
          ErrorCode::WrongCharacteristic);
    CHECK(code_of([&] { QuadraticForm::hyperbolic(f5).arf_representative(); }) ==
          ErrorCode::WrongCharacteristic);
}

TEST_CASE("classification matches isotropy enumeration") {
    auto f5 = make_field(5, 1);
    auto q4 = QuadraticForm::diag(f5, {1, 1, 1, 1});
    CHECK(q4.is_hyperbolic()); // -1 = 4 = 2^2 is a square
    CHECK(q4.classify().canonical_dsl(*f5) == "2*H");

    auto f3 = make_field(3, 1);
    // <1,2> is isotropic over GF(3): q(1,1) = 0. The anisotropic binary form
    // is <1,-lambda> = <1,1>.
    auto q12 = QuadraticForm::diag(f3, {1, 2});
    CHECK(has_nonzero_isotropic(q12));
    CHECK(q12.is_hyperbolic());
    CHECK(q12.is_isometric(QuadraticForm::hyperbolic(f3)));

    auto q11 = QuadraticForm::diag(f3, {1, 1});
    CHECK(!has_nonzero_isotropic(q11));
    CHECK(!q11.is_isotropic());
    CHECK(q11.classify().canonical_dsl(*f3) == "diag(1,1)");

    // H is [0,0] itself
    CHECK(QuadraticForm::hyperbolic(f3).is_isometric(QuadraticForm::binary(f3, 0, 0)));

    // classification agrees with exhaustive isotropy on a grid of forms
    for (auto [p, m] : {std::pair{3u, 1u}, {5u, 1u}, {7u, 1u}, {2u, 1u}, {2u, 2u}, {3u, 2u}}) {
        auto k = make_field(p, m);
        std::vector<QuadraticForm> forms;
        if (p != 2) {
            auto l = k->nonsquare_witness();
            forms.push_back(QuadraticForm::diag(k, {1}));
            forms.push_back(QuadraticForm::diag(k, {l}));
            forms.push_back(QuadraticForm::hyperbolic(k));
            forms.push_back(QuadraticForm::diag(k, {1, k->neg(l)}));
            forms.push_back(QuadraticForm::diag(k, {1, 1, 1}));
        } else {
            auto w = k->wp_witness();
            forms.push_back(QuadraticForm::hyperbolic(k));
            forms.push_back(QuadraticForm::binary(k, 1, w));
            forms.push_back(
                QuadraticForm::hyperbolic(k).orth_sum(QuadraticForm::binary(k, 1, w)));
        }
        for (const auto& q : forms) {
            CHECK(q.is_isotropic() == has_nonzero_isotropic(q));
            // canonicalization is idempotent
            auto model = canonical_model(k, q.classify());
            CHECK(model.classify() == q.classify());
            CHECK(model.dim() == q.dim());
            // equal types have identical value histograms
            CHECK(value_histogram(model) == value_histogram(q));
        }
    }
}

TEST_CASE("find_vector_with_value scans in index order") {
    auto f5 = make_field(5, 1);
    CHECK(!find_vector_with_value(QuadraticForm::diag(f5, {1}), 2)); // squares are {0,1,4}

    auto h = QuadraticForm::hyperbolic(f5);
    auto v = find_vector_with_value(h, 1);
    REQUIRE(v);
    CHECK(v->coords() == std::vector<std::uint32_t>{1, 1});

    // zero vector only when allowed
    auto z = find_vector_with_value(h, 0, true);
    REQUIRE(z);
    CHECK(z->is_zero());
    auto nz = find_vector_with_value(h, 0);
    REQUIRE(nz);
    CHECK(!nz->is_zero());
    CHECK(!find_vector_with_value(QuadraticForm::diag(f5, {1}), 0)); // anisotropic
}

TEST_CASE("witt decomposition") {
    auto f5 = make_field(5, 1);
    auto q4 = QuadraticForm::diag(f5, {1, 1, 1, 1});
    auto w4 = witt_decompose(q4);
    CHECK(w4.witt_index == 2);
    CHECK(!w4.kernel);

    auto f2 = make_field(2, 1);
    auto b11 = QuadraticForm::binary(f2, 1, 1);
    auto wb = witt_decompose(b11);
    CHECK(wb.witt_index == 0);
    REQUIRE(wb.kernel);
    CHECK(wb.kernel->is_isometric(b11));

    auto f3 = make_field(3, 1);
    auto q = QuadraticForm::diag(f3, {1, 1}).orth_sum(QuadraticForm::hyperbolic(f3));
    auto w = witt_decompose(q);
    CHECK(w.witt_index == 1);
    REQUIRE(w.kernel);
    CHECK(w.kernel->dim() == 2);
    CHECK(w.kernel->is_isometric(QuadraticForm::diag(f3, {1, 1})));
    // the kernel is anisotropic
    CHECK(!has_nonzero_isotropic(*w.kernel));

    // the basis realizes the exact block form
    for (const auto& [form, decomp] : {std::pair{q4, w4}, {b11, wb}, {q, w}}) {
        std::uint32_t n = form.dim();
        REQUIRE(decomp.basis.size() == n);
        for (std::uint32_t i = 0; i < decomp.witt_index; ++i) {
            const Vector& e = decomp.basis[2 * i];
            const Vector& f = decomp.basis[2 * i + 1];
            CHECK(form.eval_q(e).is_zero());
            CHECK(form.eval_q(f).is_zero());
            CHECK(form.bilinear(e, f).encoding() == 1);
        }
        // blocks are mutually orthogonal
        for (std::uint32_t i = 0; i < n; ++i)
            for (std::uint32_t j = i + 1; j < n; ++j) {
                bool same_pair = i / 2 == j / 2 && j < 2 * decomp.witt_index;
                bool both_kernel = i >= 2 * decomp.witt_index && j >= 2 * decomp.witt_index;
                if (!same_pair && !both_kernel)
                    CHECK(form.bilinear(decomp.basis[i], decomp.basis[j]).encoding() == 0);
            }
        CHECK((form.is_hyperbolic() == (decomp.witt_index == n / 2 && n % 2 == 0)));
    }
}

TEST_CASE("splitting off subspaces") {
    auto f5 = make_field(5, 1);
    auto q4 = QuadraticForm::diag(f5, {1, 1, 1, 1});
    auto split = split_off_vector(q4, vec(f5, {1, 0, 0, 0}));
    REQUIRE(split.complement);
    CHECK(split.complement->is_isometric(QuadraticForm::diag(f5, {1, 1, 1})));
    CHECK(split.restriction.dim() == 1);
    CHECK(split.restriction.coeff(0, 0) == 1);

    CHECK(code_of([&] { split_off_vector(q4, vec(f5, {1, 2, 0, 0})); }) ==
          ErrorCode::IsotropicSplitVector); // q(1,2) = 5 = 0

    auto f2 = make_field(2, 1);
    auto hb = QuadraticForm::hyperbolic(f2).orth_sum(QuadraticForm::binary(f2, 1, 1));
    auto pair_split = split_off_plane(hb, vec(f2, {1, 0, 0, 0}), vec(f2, {0, 1, 0, 0}));
    REQUIRE(pair_split.complement);
    CHECK(pair_split.complement->is_isometric(QuadraticForm::binary(f2, 1, 1)));

    // degenerate restriction: within a totally isotropic plane of 2*H
    auto f3 = make_field(3, 1);
    auto hh = QuadraticForm::hyperbolic(f3).orth_sum(QuadraticForm::hyperbolic(f3));
    CHECK(code_of([&] {
        split_off_plane(hh, vec(f3, {1, 0, 0, 0}), vec(f3, {0, 0, 1, 0}));
    }) == ErrorCode::DegenerateRestriction);
}

TEST_CASE("find_hyperbolic_containing") {
    auto f5 = make_field(5, 1);
    auto h = QuadraticForm::hyperbolic(f5);
    Vector v = vec(f5, {1, 1});
    Vector w = find_hyperbolic_containing(h, v);
    CHECK(!(w == v));

    auto q4 = QuadraticForm::diag(f5, {1, 1, 1, 1});
    Vector e1 = vec(f5, {1, 0, 0, 0});
    Vector w4 = find_hyperbolic_containing(q4, e1);
    auto restricted = split_off_plane(q4, e1, w4).restriction;
    CHECK(restricted.is_isometric(QuadraticForm::hyperbolic(f5)));

    auto f2 = make_field(2, 1);
    CHECK(code_of([&] {
        find_hyperbolic_containing(QuadraticForm::binary(f2, 1, 1), vec(f2, {1, 0}));
    }) == ErrorCode::AnisotropicForm);
}

TEST_CASE("represented sets") {
    auto f5 = make_field(5, 1);
    CHECK(represented_set(QuadraticForm::diag(f5, {1}), ValueSet::Represented) ==
          std::vector<std::uint32_t>{1, 4});

    auto f2 = make_field(2, 1);
    CHECK(represented_set(QuadraticForm::hyperbolic(f2), ValueSet::RepresentedWithZero) ==
          std::vector<std::uint32_t>{0, 1});
    auto b11 = QuadraticForm::binary(f2, 1, 1);
    CHECK(represented_set(b11, ValueSet::Represented) == std::vector<std::uint32_t>{1});
    CHECK(represented_set(b11, ValueSet::RepresentedWithZero) ==
          std::vector<std::uint32_t>{1});

    CHECK(code_of([&] {
        represented_set(QuadraticForm::diag(f5, {1, 1, 1, 1}), ValueSet::Represented, 100);
    }) == ErrorCode::CapExceeded);
}

TEST_CASE("roundness: scaling by represented values") {
    // even dimension: scale(q, c) isometric to q for every c != 0;
    // odd dimension: exactly when c is a square
    for (auto [p, m] : {std::pair{3u, 1u}, {5u, 1u}, {7u, 1u}, {3u, 2u}}) {
        auto k = make_field(p, m);
        auto l = k->nonsquare_witness();
        std::vector<QuadraticForm> even = {QuadraticForm::hyperbolic(k),
                                           QuadraticForm::diag(k, {1, k->neg(l)})};
        std::vector<QuadraticForm> odd = {QuadraticForm::diag(k, {1}),
                                          QuadraticForm::diag(k, {l}),
                                          QuadraticForm::diag(k, {1, 1, 1})};
        for (std::uint32_t c = 1; c < k->order(); ++c) {
            for (const auto& q : even) CHECK(q.scaled(c).is_isometric(q));
            for (const auto& q : odd)
                CHECK(q.scaled(c).is_isometric(q) ==
                      (k->square_class(c) == SquareClass::Square));
        }
    }
    for (std::uint32_t m : {1u, 2u, 3u}) {
        auto k = make_field(2, m);
        std::vector<QuadraticForm> even = {QuadraticForm::hyperbolic(k),
                                           QuadraticForm::binary(k, 1, k->wp_witness())};
        for (std::uint32_t c = 1; c < k->order(); ++c)
            for (const auto& q : even) CHECK(q.scaled(c).is_isometric(q));
    }
}

TEST_CASE("form DSL") {
    auto f5 = make_field(5, 1);
    auto q = parse_form(f5, "diag(1,1,1,1)");
    CHECK(q.dim() == 4);
    CHECK(q.is_isometric(parse_form(f5, "2*H")));

    auto f2 = make_field(2, 1);
    CHECK(parse_form(f2, "H + bin(1,1)").dim() == 4);
    CHECK(parse_form(f2, "H+bin(1,wp)").is_isometric(
        QuadraticForm::hyperbolic(f2).orth_sum(QuadraticForm::binary(f2, 1, 1))));

    CHECK(parse_form(f5, "diag(lambda)").coeff(0, 0) == 2);
    CHECK(parse_form(f5, " 2*H + diag( 1 , lambda ) ").dim() == 6);

    CHECK(code_of([&] { parse_form(f5, "diag(1,"); }) == ErrorCode::ParseError);
    CHECK(code_of([&] { parse_form(f5, "diag(7)"); }) == ErrorCode::ParseError);
    CHECK(code_of([&] { parse_form(f5, "0*H"); }) == ErrorCode::ParseError);
    CHECK(code_of([&] { parse_form(f5, "H + "); }) == ErrorCode::ParseError);
    CHECK(code_of([&] { parse_form(f5, "spam"); }) == ErrorCode::ParseError);
    CHECK(code_of([&] { parse_form(f5, "bin(1,wp)"); }) == ErrorCode::WrongCharacteristic);
    CHECK(code_of([&] { parse_form(f2, "diag(1)"); }) == ErrorCode::DegenerateForm);
}
