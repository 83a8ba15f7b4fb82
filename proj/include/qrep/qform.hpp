#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qrep/gf.hpp"

namespace qrep {

inline constexpr std::uint64_t kDefaultVertexCap = 2'000'000;

// Coordinate vector over a field. Also addressable as a dense integer index
// in [0, f^n) via base-f positional encoding of the coordinate encodings
// (coordinate 0 least significant).
class Vector {
public:
    Vector(FieldPtr field, std::vector<std::uint32_t> coords);
    static Vector from_index(const FieldPtr& field, std::uint32_t n, std::uint64_t index);

    std::uint64_t index() const;
    std::uint32_t dim() const { return static_cast<std::uint32_t>(coords_.size()); }
    const std::vector<std::uint32_t>& coords() const { return coords_; }
    std::uint32_t coord(std::uint32_t i) const { return coords_[i]; }
    const FieldPtr& field() const { return field_; }
    bool is_zero() const;

    Vector operator+(const Vector& o) const;
    Vector operator-(const Vector& o) const;
    Vector scaled(std::uint32_t c) const;
    bool operator==(const Vector& o) const;

    std::string to_string() const; // "(1,4,0)"

private:
    FieldPtr field_;
    std::vector<std::uint32_t> coords_;
};

// Classification tag: exactly two types per (field, dimension). In odd
// characteristic the discriminant is the square class of det of the
// symmetric Gram matrix; in characteristic 2 it is the Arf class.
struct CanonicalType {
    bool char2 = false;
    std::uint32_t dim = 0;
    SquareClass det_class = SquareClass::Zero; // odd characteristic
    bool arf_trivial = false;                  // characteristic 2
    bool hyperbolic = false;                   // meaningful for even dim

    bool operator==(const CanonicalType& o) const;
    bool operator!=(const CanonicalType& o) const { return !(*this == o); }

    // DSL string of the canonical model, e.g. "2*H" or "H + diag(1)".
    std::string canonical_dsl(const Field& field) const;
};

// Non-degenerate quadratic form q(x) = sum_{i<=j} c_ij x_i x_j, stored as an
// upper-triangular coefficient matrix. Construction rejects degenerate input
// (the polar Gram matrix C + C^T must have trivial kernel), so every live
// instance satisfies the standing non-degeneracy assumption. Immutable.
class QuadraticForm {
public:
    QuadraticForm(FieldPtr field, std::uint32_t n, std::vector<std::uint32_t> upper_coeffs);

    // <a_1,...,a_n>: odd characteristic, all a_i nonzero.
    static QuadraticForm diag(const FieldPtr& field, const std::vector<std::uint32_t>& a);
    // [a,b]: (x,y) -> a x^2 + xy + b y^2. Degenerate only when 4ab = 1.
    static QuadraticForm binary(const FieldPtr& field, std::uint32_t a, std::uint32_t b);
    // The hyperbolic plane H = [0,0].
    static QuadraticForm hyperbolic(const FieldPtr& field);

    QuadraticForm orth_sum(const QuadraticForm& o) const;
    QuadraticForm scaled(std::uint32_t c) const; // c nonzero

    const FieldPtr& field() const { return field_; }
    std::uint32_t dim() const { return n_; }
    std::uint64_t vector_count() const; // f^n, throws CapExceeded past 2^62
    std::uint32_t coeff(std::uint32_t i, std::uint32_t j) const { return coeff_[i * n_ + j]; }
    std::uint32_t gram(std::uint32_t i, std::uint32_t j) const { return gram_[i * n_ + j]; }

    std::uint32_t eval(std::span<const std::uint32_t> coords) const;
    std::uint32_t eval_index(std::uint64_t index) const;
    std::uint32_t polar(std::span<const std::uint32_t> v, std::span<const std::uint32_t> w) const;

    FieldElement eval_q(const Vector& v) const;
    FieldElement bilinear(const Vector& v, const Vector& w) const;

    // Square class of det(B/2), B the polar Gram matrix. Odd characteristic.
    SquareClass determinant_class() const;
    // Arf invariant as a representative element sum q(e_i) q(f_i) over a
    // symplectic basis, and its class in F/wp(F). Characteristic 2.
    std::uint32_t arf_representative() const;
    bool arf_trivial() const;

    CanonicalType classify() const;
    bool is_isometric(const QuadraticForm& o) const;
    bool is_isotropic() const;
    bool is_hyperbolic() const; // even dim and hyperbolic type

private:
    FieldPtr field_;
    std::uint32_t n_;
    std::vector<std::uint32_t> coeff_; // n*n row-major, zero below the diagonal
    std::vector<std::uint32_t> gram_;  // C + C^T
};

QuadraticForm orth_sum(const QuadraticForm& a, const QuadraticForm& b);

// Least-index vector v with q(v) = b; the zero vector is admitted for b = 0
// only when allow_zero is set. Witnesses are reproducible (index order).
std::optional<Vector> find_vector_with_value(const QuadraticForm& q, std::uint32_t b,
                                             bool allow_zero = false);

struct WittDecomposition {
    std::uint32_t witt_index = 0;
    std::optional<QuadraticForm> kernel; // anisotropic, absent when dim 0
    // Change of basis: basis[0], basis[1] span the first hyperbolic plane
    // (q = 0 on both, polar value 1), then the next pair, ..., then the
    // kernel basis. Expressing q in this basis yields the exact block form.
    std::vector<Vector> basis;
};

WittDecomposition witt_decompose(const QuadraticForm& q);

struct SplitOff {
    QuadraticForm restriction;            // q restricted to the split subspace
    std::optional<QuadraticForm> complement; // q' with q ~ restriction + q'
    std::vector<Vector> basis;            // split basis then complement basis
};

// Splits span(v) off orthogonally; odd characteristic, q(v) != 0.
SplitOff split_off_vector(const QuadraticForm& q, const Vector& v);
// Splits span(v,w) off; requires the 2-dim restriction to be non-degenerate.
SplitOff split_off_plane(const QuadraticForm& q, const Vector& v, const Vector& w);

// For isotropic q and v != 0: least-index w such that q restricted to
// span(v,w) is isometric to the hyperbolic plane.
Vector find_hyperbolic_containing(const QuadraticForm& q, const Vector& v);

enum class ValueSet {
    Represented,         // D(q): nonzero represented values
    RepresentedWithZero, // D~(q): plus 0 when q is isotropic
};

std::vector<std::uint32_t> represented_set(const QuadraticForm& q, ValueSet kind,
                                           std::uint64_t cap = kDefaultVertexCap);

// The canonical model of a type: k*H + <1>/<lambda>, k*H,
// (k-1)*H + <1,-lambda>, or the characteristic-2 analogues.
QuadraticForm canonical_model(const FieldPtr& field, const CanonicalType& type);

// Form DSL: sum := term ('+' term)*; term := [uint '*'] atom;
// atom := 'H' | 'diag(' elem {',' elem} ')' | 'bin(' elem ',' elem ')';
// elem := uint | 'lambda' | 'wp'. Elements are canonical integer encodings.
QuadraticForm parse_form(const FieldPtr& field, const std::string& dsl);

} // namespace qrep
