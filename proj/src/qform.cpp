#include "qrep/qform.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace qrep {

namespace {

// Dense matrix over a field, row-major.
struct Mat {
    const Field* k;
    std::uint32_t rows, cols;
    std::vector<std::uint32_t> a;

    Mat(const Field& field, std::uint32_t r, std::uint32_t c)
        : k(&field), rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}

    std::uint32_t& at(std::uint32_t r, std::uint32_t c) { return a[r * cols + c]; }
    std::uint32_t at(std::uint32_t r, std::uint32_t c) const { return a[r * cols + c]; }
};

std::uint32_t mat_det(Mat m) {
    const Field& k = *m.k;
    std::uint32_t det = 1;
    bool negate = false;
    for (std::uint32_t col = 0; col < m.cols; ++col) {
        std::uint32_t pivot = col;
        while (pivot < m.rows && m.at(pivot, col) == 0) ++pivot;
        if (pivot == m.rows) return 0;
        if (pivot != col) {
            for (std::uint32_t c = 0; c < m.cols; ++c)
                std::swap(m.at(pivot, c), m.at(col, c));
            negate = !negate;
        }
        det = k.mul(det, m.at(col, col));
        std::uint32_t pinv = k.inv(m.at(col, col));
        for (std::uint32_t r = col + 1; r < m.rows; ++r) {
            if (m.at(r, col) == 0) continue;
            std::uint32_t factor = k.mul(m.at(r, col), pinv);
            for (std::uint32_t c = col; c < m.cols; ++c)
                m.at(r, c) = k.sub(m.at(r, c), k.mul(factor, m.at(col, c)));
        }
    }
    return negate ? k.neg(det) : det;
}

// Basis of the solution space of M x = 0, deterministic (RREF with pivots in
// column order, free columns in increasing index order).
std::vector<std::vector<std::uint32_t>> mat_nullspace(Mat m) {
    const Field& k = *m.k;
    std::uint32_t rank = 0;
    std::vector<std::int32_t> pivot_row_of_col(m.cols, -1);
    for (std::uint32_t col = 0; col < m.cols && rank < m.rows; ++col) {
        std::uint32_t pivot = rank;
        while (pivot < m.rows && m.at(pivot, col) == 0) ++pivot;
        if (pivot == m.rows) continue;
        if (pivot != rank)
            for (std::uint32_t c = 0; c < m.cols; ++c)
                std::swap(m.at(pivot, c), m.at(rank, c));
        std::uint32_t pinv = k.inv(m.at(rank, col));
        for (std::uint32_t c = 0; c < m.cols; ++c) m.at(rank, c) = k.mul(m.at(rank, c), pinv);
        for (std::uint32_t r = 0; r < m.rows; ++r) {
            if (r == rank || m.at(r, col) == 0) continue;
            std::uint32_t factor = m.at(r, col);
            for (std::uint32_t c = 0; c < m.cols; ++c)
                m.at(r, c) = k.sub(m.at(r, c), k.mul(factor, m.at(rank, c)));
        }
        pivot_row_of_col[col] = static_cast<std::int32_t>(rank);
        ++rank;
    }
    std::vector<std::vector<std::uint32_t>> basis;
    for (std::uint32_t free_col = 0; free_col < m.cols; ++free_col) {
        if (pivot_row_of_col[free_col] >= 0) continue;
        std::vector<std::uint32_t> v(m.cols, 0);
        v[free_col] = 1;
        for (std::uint32_t col = 0; col < m.cols; ++col) {
            std::int32_t r = pivot_row_of_col[col];
            if (r >= 0) v[col] = k.neg(m.at(static_cast<std::uint32_t>(r), free_col));
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

// q restricted to the span of the given basis vectors, in that basis.
QuadraticForm restrict_to(const QuadraticForm& q, const std::vector<Vector>& basis) {
    std::uint32_t k = static_cast<std::uint32_t>(basis.size());
    std::vector<std::uint32_t> coeffs(static_cast<std::size_t>(k) * k, 0);
    for (std::uint32_t i = 0; i < k; ++i) {
        coeffs[i * k + i] = q.eval(basis[i].coords());
        for (std::uint32_t j = i + 1; j < k; ++j)
            coeffs[i * k + j] = q.polar(basis[i].coords(), basis[j].coords());
    }
    return QuadraticForm(q.field(), k, std::move(coeffs));
}

// Vectors of V orthogonal (w.r.t. the polar form) to all the given ones.
std::vector<Vector> orthogonal_complement(const QuadraticForm& q,
                                          const std::vector<Vector>& vs) {
    const Field& k = *q.field();
    std::uint32_t n = q.dim();
    Mat m(k, static_cast<std::uint32_t>(vs.size()), n);
    for (std::uint32_t r = 0; r < vs.size(); ++r)
        for (std::uint32_t c = 0; c < n; ++c) {
            std::uint32_t acc = 0;
            for (std::uint32_t i = 0; i < n; ++i)
                acc = k.add(acc, k.mul(vs[r].coord(i), q.gram(i, c)));
            m.at(r, c) = acc;
        }
    std::vector<Vector> out;
    for (auto& sol : mat_nullspace(std::move(m))) out.emplace_back(q.field(), std::move(sol));
    return out;
}

} // namespace

Vector::Vector(FieldPtr field, std::vector<std::uint32_t> coords)
    : field_(std::move(field)), coords_(std::move(coords)) {
    for (auto c : coords_)
        if (c >= field_->order())
            fail(ErrorCode::ParseError, "coordinate encoding out of range");
}

Vector Vector::from_index(const FieldPtr& field, std::uint32_t n, std::uint64_t index) {
    std::vector<std::uint32_t> coords(n);
    std::uint64_t f = field->order();
    for (std::uint32_t i = 0; i < n; ++i) {
        coords[i] = static_cast<std::uint32_t>(index % f);
        index /= f;
    }
    return Vector(field, std::move(coords));
}

std::uint64_t Vector::index() const {
    std::uint64_t idx = 0, w = 1, f = field_->order();
    for (auto c : coords_) {
        idx += c * w;
        w *= f;
    }
    return idx;
}

bool Vector::is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](std::uint32_t c) { return c == 0; });
}

Vector Vector::operator+(const Vector& o) const {
    require_same_field(*field_, *o.field_, "vector add");
    if (dim() != o.dim()) fail(ErrorCode::DimensionMismatch, "vector add");
    std::vector<std::uint32_t> c(coords_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = field_->add(coords_[i], o.coords_[i]);
    return Vector(field_, std::move(c));
}

Vector Vector::operator-(const Vector& o) const {
    require_same_field(*field_, *o.field_, "vector sub");
    if (dim() != o.dim()) fail(ErrorCode::DimensionMismatch, "vector sub");
    std::vector<std::uint32_t> c(coords_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = field_->sub(coords_[i], o.coords_[i]);
    return Vector(field_, std::move(c));
}

Vector Vector::scaled(std::uint32_t s) const {
    std::vector<std::uint32_t> c(coords_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = field_->mul(coords_[i], s);
    return Vector(field_, std::move(c));
}

bool Vector::operator==(const Vector& o) const {
    return field_->same_as(*o.field_) && coords_ == o.coords_;
}

std::string Vector::to_string() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i) os << ",";
        os << coords_[i];
    }
    os << ")";
    return os.str();
}

bool CanonicalType::operator==(const CanonicalType& o) const {
    if (char2 != o.char2 || dim != o.dim) return false;
    return char2 ? arf_trivial == o.arf_trivial : det_class == o.det_class;
}

std::string CanonicalType::canonical_dsl(const Field& field) const {
    std::uint32_t k = dim / 2;
    std::ostringstream os;
    auto h_prefix = [&](std::uint32_t count) {
        if (count == 0) return;
        if (count == 1)
            os << "H";
        else
            os << count << "*H";
    };
    if (dim % 2 == 0) {
        if (hyperbolic) {
            h_prefix(k);
        } else {
            h_prefix(k - 1);
            if (k > 1) os << " + ";
            if (char2)
                os << "bin(1," << field.wp_witness() << ")";
            else
                os << "diag(1," << field.neg(field.nonsquare_witness()) << ")";
        }
    } else {
        // odd dimension, odd characteristic
        h_prefix(k);
        if (k > 0) os << " + ";
        SquareClass sign_class =
            (k % 2 == 0) ? SquareClass::Square : field.square_class(field.neg(1));
        std::uint32_t d = square_class_product(sign_class, det_class) == SquareClass::Square
                              ? 1
                              : field.nonsquare_witness();
        os << "diag(" << d << ")";
    }
    return os.str();
}

QuadraticForm::QuadraticForm(FieldPtr field, std::uint32_t n,
                             std::vector<std::uint32_t> upper_coeffs)
    : field_(std::move(field)), n_(n), coeff_(std::move(upper_coeffs)) {
    if (n_ < 1) fail(ErrorCode::DegenerateForm, "dimension must be at least 1");
    if (coeff_.size() != static_cast<std::size_t>(n_) * n_)
        fail(ErrorCode::DimensionMismatch, "coefficient array must be n*n");
    for (std::uint32_t i = 0; i < n_; ++i)
        for (std::uint32_t j = 0; j < i; ++j)
            if (coeff_[i * n_ + j] != 0)
                fail(ErrorCode::DimensionMismatch, "coefficients must be upper-triangular");
    gram_.assign(static_cast<std::size_t>(n_) * n_, 0);
    for (std::uint32_t i = 0; i < n_; ++i) {
        gram_[i * n_ + i] = field_->add(coeff_[i * n_ + i], coeff_[i * n_ + i]);
        for (std::uint32_t j = i + 1; j < n_; ++j)
            gram_[i * n_ + j] = gram_[j * n_ + i] = coeff_[i * n_ + j];
    }
    Mat b(*field_, n_, n_);
    b.a = gram_;
    if (mat_det(std::move(b)) == 0)
        fail(ErrorCode::DegenerateForm, "polar form has nontrivial radical");
}

QuadraticForm QuadraticForm::diag(const FieldPtr& field, const std::vector<std::uint32_t>& a) {
    if (field->char2())
        fail(ErrorCode::DegenerateForm,
             "diagonal forms are degenerate in characteristic 2");
    std::uint32_t n = static_cast<std::uint32_t>(a.size());
    std::vector<std::uint32_t> coeffs(static_cast<std::size_t>(n) * n, 0);
    for (std::uint32_t i = 0; i < n; ++i) {
        if (a[i] == 0) fail(ErrorCode::DegenerateForm, "zero diagonal coefficient");
        coeffs[i * n + i] = a[i];
    }
    return QuadraticForm(field, n, std::move(coeffs));
}

QuadraticForm QuadraticForm::binary(const FieldPtr& field, std::uint32_t a, std::uint32_t b) {
    return QuadraticForm(field, 2, {a, 1, 0, b});
}

QuadraticForm QuadraticForm::hyperbolic(const FieldPtr& field) { return binary(field, 0, 0); }

QuadraticForm QuadraticForm::orth_sum(const QuadraticForm& o) const {
    require_same_field(*field_, *o.field_, "orth_sum");
    std::uint32_t n = n_ + o.n_;
    std::vector<std::uint32_t> coeffs(static_cast<std::size_t>(n) * n, 0);
    for (std::uint32_t i = 0; i < n_; ++i)
        for (std::uint32_t j = i; j < n_; ++j) coeffs[i * n + j] = coeff_[i * n_ + j];
    for (std::uint32_t i = 0; i < o.n_; ++i)
        for (std::uint32_t j = i; j < o.n_; ++j)
            coeffs[(n_ + i) * n + (n_ + j)] = o.coeff_[i * o.n_ + j];
    return QuadraticForm(field_, n, std::move(coeffs));
}

QuadraticForm orth_sum(const QuadraticForm& a, const QuadraticForm& b) { return a.orth_sum(b); }

QuadraticForm QuadraticForm::scaled(std::uint32_t c) const {
    if (c == 0) fail(ErrorCode::DegenerateForm, "scaling by zero");
    std::vector<std::uint32_t> coeffs(coeff_.size(), 0);
    for (std::uint32_t i = 0; i < n_; ++i)
        for (std::uint32_t j = i; j < n_; ++j)
            coeffs[i * n_ + j] = field_->mul(coeff_[i * n_ + j], c);
    return QuadraticForm(field_, n_, std::move(coeffs));
}

std::uint64_t QuadraticForm::vector_count() const {
    std::uint64_t count = 1, f = field_->order();
    for (std::uint32_t i = 0; i < n_; ++i) {
        if (count > (std::uint64_t{1} << 62) / f)
            fail(ErrorCode::CapExceeded, "f^n does not fit the vertex index range");
        count *= f;
    }
    return count;
}

std::uint32_t QuadraticForm::eval(std::span<const std::uint32_t> x) const {
    const Field& k = *field_;
    std::uint32_t acc = 0;
    for (std::uint32_t i = 0; i < n_; ++i) {
        if (x[i] == 0) continue;
        for (std::uint32_t j = i; j < n_; ++j) {
            std::uint32_t c = coeff_[i * n_ + j];
            if (c == 0 || x[j] == 0) continue;
            acc = k.add(acc, k.mul(c, k.mul(x[i], x[j])));
        }
    }
    return acc;
}

std::uint32_t QuadraticForm::eval_index(std::uint64_t index) const {
    std::uint64_t f = field_->order();
    std::uint32_t x[64];
    for (std::uint32_t i = 0; i < n_; ++i) {
        x[i] = static_cast<std::uint32_t>(index % f);
        index /= f;
    }
    return eval(std::span<const std::uint32_t>(x, n_));
}

std::uint32_t QuadraticForm::polar(std::span<const std::uint32_t> v,
                                   std::span<const std::uint32_t> w) const {
    const Field& k = *field_;
    std::uint32_t acc = 0;
    for (std::uint32_t i = 0; i < n_; ++i) {
        if (v[i] == 0) continue;
        std::uint32_t row = 0;
        for (std::uint32_t j = 0; j < n_; ++j) {
            if (w[j] == 0) continue;
            row = k.add(row, k.mul(gram_[i * n_ + j], w[j]));
        }
        acc = k.add(acc, k.mul(v[i], row));
    }
    return acc;
}

FieldElement QuadraticForm::eval_q(const Vector& v) const {
    require_same_field(*field_, *v.field(), "eval_q");
    if (v.dim() != n_) fail(ErrorCode::DimensionMismatch, "eval_q");
    return field_->element(eval(v.coords()));
}

FieldElement QuadraticForm::bilinear(const Vector& v, const Vector& w) const {
    require_same_field(*field_, *v.field(), "bilinear");
    if (v.dim() != n_ || w.dim() != n_) fail(ErrorCode::DimensionMismatch, "bilinear");
    return field_->element(polar(v.coords(), w.coords()));
}

SquareClass QuadraticForm::determinant_class() const {
    if (field_->char2())
        fail(ErrorCode::WrongCharacteristic,
             "determinant class is defined in odd characteristic");
    Mat b(*field_, n_, n_);
    b.a = gram_;
    std::uint32_t det_b = mat_det(std::move(b));
    std::uint32_t half = field_->inv(field_->from_int(2));
    return field_->square_class(field_->mul(det_b, field_->pow(half, n_)));
}

std::uint32_t QuadraticForm::arf_representative() const {
    if (!field_->char2())
        fail(ErrorCode::WrongCharacteristic, "Arf invariant needs characteristic 2");
    const Field& k = *field_;
    // Symplectic reduction of the standard basis, first valid partner in
    // index order, so the representative is reproducible.
    std::vector<Vector> vs;
    for (std::uint32_t i = 0; i < n_; ++i) {
        std::vector<std::uint32_t> c(n_, 0);
        c[i] = 1;
        vs.emplace_back(field_, std::move(c));
    }
    std::uint32_t total = 0;
    while (!vs.empty()) {
        Vector e = vs.front();
        std::size_t fi = 0;
        for (std::size_t j = 1; j < vs.size(); ++j)
            if (polar(e.coords(), vs[j].coords()) != 0) {
                fi = j;
                break;
            }
        if (fi == 0)
            fail(ErrorCode::DegenerateForm, "polar form degenerate during Arf reduction");
        Vector f = vs[fi].scaled(k.inv(polar(e.coords(), vs[fi].coords())));
        total = k.add(total, k.mul(eval(e.coords()), eval(f.coords())));
        std::vector<Vector> rest;
        for (std::size_t j = 1; j < vs.size(); ++j) {
            if (j == fi) continue;
            Vector u = vs[j];
            u = u + e.scaled(polar(u.coords(), f.coords()));
            u = u + f.scaled(polar(u.coords(), e.coords()));
            rest.push_back(std::move(u));
        }
        vs = std::move(rest);
    }
    return total;
}

bool QuadraticForm::arf_trivial() const {
    return field_->in_artin_schreier_image(arf_representative());
}

CanonicalType QuadraticForm::classify() const {
    CanonicalType t;
    t.char2 = field_->char2();
    t.dim = n_;
    if (t.char2) {
        t.arf_trivial = arf_trivial();
        t.hyperbolic = (n_ % 2 == 0) && t.arf_trivial;
    } else {
        t.det_class = determinant_class();
        if (n_ % 2 == 0) {
            SquareClass sign_class = (n_ / 2 % 2 == 0)
                                         ? SquareClass::Square
                                         : field_->square_class(field_->neg(1));
            t.hyperbolic = square_class_product(sign_class, t.det_class) == SquareClass::Square;
        }
    }
    return t;
}

bool QuadraticForm::is_isometric(const QuadraticForm& o) const {
    require_same_field(*field_, *o.field_, "is_isometric");
    return classify() == o.classify();
}

bool QuadraticForm::is_hyperbolic() const { return n_ % 2 == 0 && classify().hyperbolic; }

bool QuadraticForm::is_isotropic() const {
    if (n_ >= 3) return true; // finite fields: u-invariant 2
    if (n_ == 1) return false;
    return is_hyperbolic();
}

std::optional<Vector> find_vector_with_value(const QuadraticForm& q, std::uint32_t b,
                                             bool allow_zero) {
    std::uint64_t count = q.vector_count();
    std::uint64_t start = (b == 0 && allow_zero) ? 0 : 1;
    for (std::uint64_t idx = start; idx < count; ++idx)
        if (q.eval_index(idx) == b) return Vector::from_index(q.field(), q.dim(), idx);
    return std::nullopt;
}

WittDecomposition witt_decompose(const QuadraticForm& q) {
    const Field& k = *q.field();
    WittDecomposition out;
    // Current complement, expressed by a basis in the ambient coordinates.
    std::vector<Vector> cur_basis;
    for (std::uint32_t i = 0; i < q.dim(); ++i) {
        std::vector<std::uint32_t> c(q.dim(), 0);
        c[i] = 1;
        cur_basis.emplace_back(q.field(), std::move(c));
    }
    QuadraticForm cur = q;
    while (true) {
        std::uint64_t count = cur.vector_count();
        std::optional<Vector> iso;
        for (std::uint64_t idx = 1; idx < count; ++idx)
            if (cur.eval_index(idx) == 0) {
                iso = Vector::from_index(cur.field(), cur.dim(), idx);
                break;
            }
        if (!iso) {
            out.kernel = cur;
            for (auto& b : cur_basis) out.basis.push_back(b);
            return out;
        }
        const Vector& v = *iso;
        std::optional<Vector> partner;
        for (std::uint32_t i = 0; i < cur.dim(); ++i) {
            std::vector<std::uint32_t> c(cur.dim(), 0);
            c[i] = 1;
            Vector e(cur.field(), std::move(c));
            if (cur.polar(v.coords(), e.coords()) != 0) {
                partner = e;
                break;
            }
        }
        // partner exists: v is nonzero and the polar form is non-degenerate
        Vector u = partner->scaled(k.inv(cur.polar(v.coords(), partner->coords())));
        Vector w = u + v.scaled(k.neg(cur.eval(u.coords())));
        // q(w) = 0, polar(v,w) = 1: a hyperbolic pair
        auto to_ambient = [&](const Vector& x) {
            Vector acc = cur_basis[0].scaled(x.coord(0));
            for (std::uint32_t i = 1; i < x.dim(); ++i)
                acc = acc + cur_basis[i].scaled(x.coord(i));
            return acc;
        };
        out.basis.push_back(to_ambient(v));
        out.basis.push_back(to_ambient(w));
        ++out.witt_index;
        if (cur.dim() == 2) return out; // nothing left
        std::vector<Vector> comp = orthogonal_complement(cur, {v, w});
        std::vector<Vector> next_basis;
        for (auto& x : comp) next_basis.push_back(to_ambient(x));
        cur = restrict_to(cur, comp);
        cur_basis = std::move(next_basis);
    }
}

SplitOff split_off_vector(const QuadraticForm& q, const Vector& v) {
    require_same_field(*q.field(), *v.field(), "split_off_vector");
    if (v.dim() != q.dim()) fail(ErrorCode::DimensionMismatch, "split_off_vector");
    if (q.field()->char2())
        fail(ErrorCode::DegenerateRestriction,
             "a 1-dimensional restriction is degenerate in characteristic 2");
    if (q.eval(v.coords()) == 0)
        fail(ErrorCode::IsotropicSplitVector, "split vector must be anisotropic");
    SplitOff out{restrict_to(q, {v}), std::nullopt, {}};
    out.basis.push_back(v);
    if (q.dim() > 1) {
        std::vector<Vector> comp = orthogonal_complement(q, {v});
        out.complement = restrict_to(q, comp);
        for (auto& x : comp) out.basis.push_back(std::move(x));
    }
    return out;
}

SplitOff split_off_plane(const QuadraticForm& q, const Vector& v, const Vector& w) {
    require_same_field(*q.field(), *v.field(), "split_off_plane");
    if (v.dim() != q.dim() || w.dim() != q.dim())
        fail(ErrorCode::DimensionMismatch, "split_off_plane");
    const Field& k = *q.field();
    std::uint32_t qv = q.eval(v.coords());
    std::uint32_t qw = q.eval(w.coords());
    std::uint32_t b = q.polar(v.coords(), w.coords());
    // det of the 2x2 restriction Gram [[2qv, b], [b, 2qw]]
    std::uint32_t det = k.sub(k.mul(k.add(qv, qv), k.add(qw, qw)), k.mul(b, b));
    if (det == 0)
        fail(ErrorCode::DegenerateRestriction, "restriction to span(v,w) is degenerate");
    SplitOff out{restrict_to(q, {v, w}), std::nullopt, {}};
    out.basis.push_back(v);
    out.basis.push_back(w);
    if (q.dim() > 2) {
        std::vector<Vector> comp = orthogonal_complement(q, {v, w});
        out.complement = restrict_to(q, comp);
        for (auto& x : comp) out.basis.push_back(std::move(x));
    }
    return out;
}

Vector find_hyperbolic_containing(const QuadraticForm& q, const Vector& v) {
    require_same_field(*q.field(), *v.field(), "find_hyperbolic_containing");
    if (v.dim() != q.dim()) fail(ErrorCode::DimensionMismatch, "find_hyperbolic_containing");
    if (v.is_zero()) fail(ErrorCode::NotApplicable, "v must be nonzero");
    if (!q.is_isotropic()) fail(ErrorCode::AnisotropicForm, "form is anisotropic");
    const Field& k = *q.field();
    std::uint64_t count = q.vector_count();
    std::uint32_t qv = q.eval(v.coords());
    std::uint32_t i0 = 0;
    while (v.coord(i0) == 0) ++i0;
    for (std::uint64_t idx = 1; idx < count; ++idx) {
        Vector w = Vector::from_index(q.field(), q.dim(), idx);
        if (w == v.scaled(k.mul(w.coord(i0), k.inv(v.coord(i0))))) continue; // w in span(v)
        std::uint32_t b = q.polar(v.coords(), w.coords());
        std::uint32_t qw = q.eval(w.coords());
        std::uint32_t det = k.sub(k.mul(k.add(qv, qv), k.add(qw, qw)), k.mul(b, b));
        if (det == 0) continue; // degenerate restriction
        if (qv == 0 || qw == 0) return w; // non-degenerate and isotropic: H
        QuadraticForm restr = restrict_to(q, {v, w});
        if (restr.is_hyperbolic()) return w;
    }
    fail(ErrorCode::AnisotropicForm, "no hyperbolic plane through v (unreachable)");
}

std::vector<std::uint32_t> represented_set(const QuadraticForm& q, ValueSet kind,
                                           std::uint64_t cap) {
    std::uint64_t count = q.vector_count();
    if (count > cap)
        fail(ErrorCode::CapExceeded, "represented_set: f^n = " + std::to_string(count) +
                                         " exceeds cap " + std::to_string(cap));
    std::vector<bool> seen(q.field()->order(), false);
    bool isotropic = false;
    for (std::uint64_t idx = 1; idx < count; ++idx) {
        std::uint32_t value = q.eval_index(idx);
        if (value == 0)
            isotropic = true;
        else
            seen[value] = true;
    }
    std::vector<std::uint32_t> out;
    if (kind == ValueSet::RepresentedWithZero && isotropic) out.push_back(0);
    for (std::uint32_t v = 1; v < q.field()->order(); ++v)
        if (seen[v]) out.push_back(v);
    return out;
}

QuadraticForm canonical_model(const FieldPtr& field, const CanonicalType& type) {
    std::uint32_t k = type.dim / 2;
    std::optional<QuadraticForm> acc;
    auto append = [&](const QuadraticForm& block) {
        acc = acc ? acc->orth_sum(block) : block;
    };
    if (type.dim % 2 == 0) {
        std::uint32_t planes = type.hyperbolic ? k : k - 1;
        for (std::uint32_t i = 0; i < planes; ++i) append(QuadraticForm::hyperbolic(field));
        if (!type.hyperbolic) {
            if (type.char2)
                append(QuadraticForm::binary(field, 1, field->wp_witness()));
            else
                append(QuadraticForm::diag(
                    field, {1, field->neg(field->nonsquare_witness())}));
        }
    } else {
        for (std::uint32_t i = 0; i < k; ++i) append(QuadraticForm::hyperbolic(field));
        SquareClass sign_class =
            (k % 2 == 0) ? SquareClass::Square : field->square_class(field->neg(1));
        std::uint32_t d =
            square_class_product(sign_class, type.det_class) == SquareClass::Square
                ? 1
                : field->nonsquare_witness();
        append(QuadraticForm::diag(field, {d}));
    }
    return *acc;
}

namespace {

// Recursive-descent parser for the form DSL.
struct FormParser {
    const FieldPtr& field;
    const std::string& src;
    std::size_t pos = 0;

    [[noreturn]] void bad(const std::string& why) {
        fail(ErrorCode::ParseError,
             "form '" + src + "' at offset " + std::to_string(pos) + ": " + why);
    }

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < src.size() && src[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    bool peek_alpha() {
        skip_ws();
        return pos < src.size() && std::isalpha(static_cast<unsigned char>(src[pos]));
    }

    std::string word() {
        skip_ws();
        std::size_t start = pos;
        while (pos < src.size() && std::isalpha(static_cast<unsigned char>(src[pos]))) ++pos;
        return src.substr(start, pos - start);
    }

    std::optional<std::uint64_t> number() {
        skip_ws();
        if (pos >= src.size() || !std::isdigit(static_cast<unsigned char>(src[pos])))
            return std::nullopt;
        std::uint64_t v = 0;
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
            v = v * 10 + static_cast<std::uint64_t>(src[pos] - '0');
            if (v > (std::uint64_t{1} << 32)) bad("number too large");
            ++pos;
        }
        return v;
    }

    std::uint32_t element() {
        if (auto n = number()) {
            if (*n >= field->order()) bad("element encoding " + std::to_string(*n) +
                                          " out of range for field of order " +
                                          std::to_string(field->order()));
            return static_cast<std::uint32_t>(*n);
        }
        std::string w = word();
        if (w == "lambda") return field->nonsquare_witness();
        if (w == "wp") return field->wp_witness();
        bad("expected an element (integer, 'lambda' or 'wp')");
    }

    QuadraticForm atom() {
        skip_ws();
        if (peek_alpha()) {
            std::size_t save = pos;
            std::string w = word();
            if (w == "H") return QuadraticForm::hyperbolic(field);
            if (w == "diag") {
                if (!eat('(')) bad("expected '(' after diag");
                std::vector<std::uint32_t> entries;
                entries.push_back(element());
                while (eat(',')) entries.push_back(element());
                if (!eat(')')) bad("expected ')'");
                return QuadraticForm::diag(field, entries);
            }
            if (w == "bin") {
                if (!eat('(')) bad("expected '(' after bin");
                std::uint32_t a = element();
                if (!eat(',')) bad("expected ','");
                std::uint32_t b = element();
                if (!eat(')')) bad("expected ')'");
                return QuadraticForm::binary(field, a, b);
            }
            pos = save;
            bad("unknown atom '" + w + "'");
        }
        bad("expected an atom (H, diag(...), bin(...))");
    }

    QuadraticForm term() {
        skip_ws();
        std::size_t save = pos;
        if (auto n = number()) {
            if (eat('*')) {
                if (*n == 0) bad("multiplicity must be positive");
                QuadraticForm block = atom();
                QuadraticForm acc = block;
                for (std::uint64_t i = 1; i < *n; ++i) acc = acc.orth_sum(block);
                return acc;
            }
            pos = save;
            bad("expected '*' after multiplicity");
        }
        return atom();
    }

    QuadraticForm parse() {
        QuadraticForm acc = term();
        while (true) {
            skip_ws();
            if (pos >= src.size()) break;
            if (!eat('+')) bad("expected '+'");
            acc = acc.orth_sum(term());
        }
        return acc;
    }
};

} // namespace

QuadraticForm parse_form(const FieldPtr& field, const std::string& dsl) {
    FormParser p{field, dsl};
    return p.parse();
}

} // namespace qrep
