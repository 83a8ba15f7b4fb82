#include "qrep/counts.hpp"

#include <algorithm>

namespace qrep {

namespace {

std::int64_t ipow(std::int64_t base, std::uint32_t e) {
    std::int64_t acc = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
        if (acc > (std::int64_t{1} << 62) / base)
            fail(ErrorCode::CapExceeded, "integer power overflow");
        acc *= base;
    }
    return acc;
}

std::int64_t exact_div(std::int64_t num, std::int64_t den, const char* what) {
    if (den == 0 || num % den != 0)
        fail(ErrorCode::NotApplicable, std::string("inexact division in ") + what);
    return num / den;
}

} // namespace

std::int64_t count_preimage(const QuadraticForm& q, std::uint32_t a) {
    const Field& k = *q.field();
    std::int64_t f = static_cast<std::int64_t>(k.order());
    std::uint32_t n = q.dim();
    if (n % 2 == 0) {
        std::uint32_t m = n / 2;
        std::int64_t f2m1 = ipow(f, 2 * m - 1);
        std::int64_t fm = ipow(f, m);
        std::int64_t fm1 = ipow(f, m - 1);
        if (q.is_hyperbolic()) return a == 0 ? f2m1 + fm - fm1 : f2m1 - fm1;
        return a == 0 ? f2m1 - fm + fm1 : f2m1 + fm1;
    }
    std::uint32_t m = (n - 1) / 2;
    std::int64_t f2m = ipow(f, 2 * m);
    if (a == 0) return f2m;
    SquareClass sign_class =
        (m % 2 == 0) ? SquareClass::Square : k.square_class(k.neg(1));
    SquareClass cls = square_class_product(
        square_class_product(sign_class, q.determinant_class()), k.square_class(a));
    return cls == SquareClass::Square ? f2m + ipow(f, m) : f2m - ipow(f, m);
}

std::vector<std::pair<Vector, Vector>> decompose_sum(const QuadraticForm& q, const Vector& w,
                                                     std::uint32_t a, std::uint32_t b) {
    if (q.dim() != 2) fail(ErrorCode::DimensionNotTwo, "decompose_sum");
    require_same_field(*q.field(), *w.field(), "decompose_sum");
    if (w.is_zero()) fail(ErrorCode::NotApplicable, "decompose_sum: w must be nonzero");
    if (a == 0 || b == 0) fail(ErrorCode::NotApplicable, "decompose_sum: a, b must be nonzero");
    const Field& k = *q.field();

    // Linear constraint (B w)^T u = q(w) + a - b.
    std::uint32_t l0 = k.add(k.mul(q.gram(0, 0), w.coord(0)), k.mul(q.gram(0, 1), w.coord(1)));
    std::uint32_t l1 = k.add(k.mul(q.gram(1, 0), w.coord(0)), k.mul(q.gram(1, 1), w.coord(1)));
    std::uint32_t rhs = k.add(q.eval(w.coords()), k.sub(a, b));

    std::uint32_t pivot = l0 != 0 ? 0 : 1; // first coordinate with nonzero coefficient
    std::uint32_t lp = pivot == 0 ? l0 : l1;
    std::uint32_t lo = pivot == 0 ? l1 : l0;
    std::uint32_t lp_inv = k.inv(lp);

    std::vector<std::pair<Vector, Vector>> out;
    for (std::uint64_t t = 0; t < k.order(); ++t) {
        std::uint32_t free_val = static_cast<std::uint32_t>(t);
        std::uint32_t piv_val = k.mul(k.sub(rhs, k.mul(lo, free_val)), lp_inv);
        std::vector<std::uint32_t> coords(2);
        coords[pivot] = piv_val;
        coords[1 - pivot] = free_val;
        Vector u(q.field(), std::move(coords));
        if (q.eval(u.coords()) != a) continue;
        out.emplace_back(u, w - u);
    }
    std::sort(out.begin(), out.end(),
              [](const auto& x, const auto& y) { return x.first.index() < y.first.index(); });
    if (out.size() > 2)
        fail(ErrorCode::NotApplicable, "decompose_sum: more than two solutions (impossible)");
    return out;
}

namespace {

std::int64_t sumset_k(const QuadraticForm& q) {
    std::int64_t f = static_cast<std::int64_t>(q.field()->order());
    return q.is_isotropic() ? f - 1 : f + 1;
}

} // namespace

// For a != b over an isotropic form, every nonzero isotropic w lies in
// V_a + V_b with a unique decomposition (the linear constraint pins the
// coordinate along the isotropic line), on top of the dependent-pair
// uniques that exist when ab is a square. Anisotropic forms have no
// isotropic w, so only the dependent-pair counts remain.
std::int64_t unique_decomposition_count(const QuadraticForm& q, std::uint32_t a,
                                        std::uint32_t b) {
    if (q.dim() != 2) fail(ErrorCode::DimensionNotTwo, "unique_decomposition_count");
    if (a == 0 || b == 0)
        fail(ErrorCode::NotApplicable, "unique_decomposition_count: a, b must be nonzero");
    const Field& k = *q.field();
    std::int64_t kk = sumset_k(q);
    std::int64_t iso_extra = (a != b && q.is_isotropic()) ? 2 * kk : 0;
    if (k.char2()) return (a == b ? 0 : kk) + iso_extra;
    if (a == b) return kk;
    bool square = k.square_class(k.mul(a, b)) == SquareClass::Square;
    return (square ? 2 * kk : 0) + iso_extra;
}

std::int64_t sumset_size(const QuadraticForm& q, std::uint32_t a, std::uint32_t b) {
    if (q.dim() != 2) fail(ErrorCode::DimensionNotTwo, "sumset_size");
    if (a == 0 || b == 0) fail(ErrorCode::NotApplicable, "sumset_size: a, b must be nonzero");
    const Field& k = *q.field();
    std::int64_t kk = sumset_k(q);
    // |V_a + V_b| = uniques + (k^2 - pairs-consumed-by-uniques-and-zero)/2,
    // where w = 0 absorbs k pairs exactly when a = b.
    if (a == b) {
        std::int64_t uniques = k.char2() ? 0 : kk;
        return uniques + exact_div(kk * kk - uniques - kk, 2, "sumset_size") + 1;
    }
    std::int64_t uniques = unique_decomposition_count(q, a, b);
    return uniques + exact_div(kk * kk - uniques, 2, "sumset_size");
}

bool v1v1_reachable(const QuadraticForm& q, std::uint32_t a) {
    if (q.dim() != 2) fail(ErrorCode::DimensionNotTwo, "v1v1_reachable");
    if (a == 0) fail(ErrorCode::NotApplicable, "v1v1_reachable: a must be nonzero");
    const Field& k = *q.field();
    if (!find_vector_with_value(q, 1))
        fail(ErrorCode::OneNotRepresented, "form does not represent 1");
    if (k.char2()) {
        std::uint32_t delta = q.arf_representative();
        return k.in_artin_schreier_image(k.add(delta, k.inv(a)));
    }
    // det(q) (4a - a^2) a square; 0 counts (the a = 4 case is always reachable)
    std::uint32_t disc = k.sub(k.mul(k.from_int(4), a), k.mul(a, a));
    SquareClass cls = square_class_product(q.determinant_class(), k.square_class(disc));
    return cls != SquareClass::NonSquare;
}

std::int64_t orthogonal_group_order(const QuadraticForm& q) {
    std::int64_t f = static_cast<std::int64_t>(q.field()->order());
    std::uint32_t n = q.dim();
    auto safe_mul = [](std::int64_t x, std::int64_t y) {
        if (y != 0 && x > (std::int64_t{1} << 62) / y)
            fail(ErrorCode::CapExceeded, "orthogonal group order overflow");
        return x * y;
    };
    if (n % 2 == 1) {
        std::uint32_t m = (n - 1) / 2;
        std::int64_t acc = safe_mul(2, ipow(f, m * m));
        for (std::uint32_t i = 1; i <= m; ++i) acc = safe_mul(acc, ipow(f, 2 * i) - 1);
        return acc;
    }
    std::uint32_t m = n / 2;
    std::int64_t acc = safe_mul(2, ipow(f, m * (m - 1)));
    acc = safe_mul(acc, q.is_hyperbolic() ? ipow(f, m) - 1 : ipow(f, m) + 1);
    for (std::uint32_t i = 1; i + 1 <= m; ++i) acc = safe_mul(acc, ipow(f, 2 * i) - 1);
    return acc;
}

std::int64_t totally_isotropic_count(const QuadraticForm& q, int k, std::uint64_t cap) {
    const Field& kf = *q.field();
    std::int64_t f = static_cast<std::int64_t>(kf.order());
    if (k == 1) return exact_div(count_preimage(q, 0) - 1, f - 1, "totally_isotropic_count");
    if (k != 2) fail(ErrorCode::NotApplicable, "totally_isotropic_count: k must be 1 or 2");

    std::uint64_t count = q.vector_count();
    if (count > cap)
        fail(ErrorCode::CapExceeded, "totally_isotropic_count: f^n exceeds cap");
    std::uint32_t n = q.dim();

    std::vector<std::vector<std::uint32_t>> iso;
    for (std::uint64_t idx = 1; idx < count; ++idx)
        if (q.eval_index(idx) == 0)
            iso.push_back(Vector::from_index(q.field(), n, idx).coords());

    // Precompute B v for each isotropic v; then b(v, w) = (B v) . w.
    std::vector<std::vector<std::uint32_t>> bv(iso.size(), std::vector<std::uint32_t>(n));
    for (std::size_t i = 0; i < iso.size(); ++i)
        for (std::uint32_t c = 0; c < n; ++c) {
            std::uint32_t acc = 0;
            for (std::uint32_t r = 0; r < n; ++r)
                acc = kf.add(acc, kf.mul(iso[i][r], q.gram(r, c)));
            bv[i][c] = acc;
        }

    auto dependent = [&](const std::vector<std::uint32_t>& v,
                         const std::vector<std::uint32_t>& w) {
        std::uint32_t i0 = 0;
        while (v[i0] == 0) ++i0;
        std::uint32_t t = kf.mul(w[i0], kf.inv(v[i0]));
        for (std::uint32_t i = 0; i < n; ++i)
            if (w[i] != kf.mul(t, v[i])) return false;
        return true;
    };

    std::int64_t ordered = 0;
    for (std::size_t i = 0; i < iso.size(); ++i)
        for (std::size_t j = 0; j < iso.size(); ++j) {
            if (i == j) continue;
            std::uint32_t b = 0;
            for (std::uint32_t c = 0; c < n; ++c)
                b = kf.add(b, kf.mul(bv[i][c], iso[j][c]));
            if (b != 0) continue;
            if (dependent(iso[i], iso[j])) continue;
            ++ordered;
        }
    return exact_div(ordered, (f * f - 1) * (f * f - f), "totally_isotropic_count");
}

} // namespace qrep
