#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qrep/error.hpp"

namespace qrep {

enum class SquareClass { Zero, Square, NonSquare };

const char* square_class_name(SquareClass c);

// Product of nonzero square classes (Square acts as identity).
SquareClass square_class_product(SquareClass a, SquareClass b);

class Field;
class FieldElement;
using FieldPtr = std::shared_ptr<const Field>;

// GF(p^m) in the polynomial basis over GF(p). An element with coefficients
// (c_0, ..., c_{m-1}) is canonically encoded as the integer sum c_i * p^i,
// so encoding 0 is the additive identity and encoding 1 the multiplicative
// identity, and the encoding is a bijection onto [0, p^m).
//
// Fields are immutable after construction; every operation is pure and safe
// for unrestricted concurrent use.
class Field : public std::enable_shared_from_this<Field> {
public:
    // Builds GF(p^m). If no modulus is given, the lexicographically least
    // monic irreducible of degree m is selected (coefficients compared as
    // the tuple (c_0, ..., c_{m-1})), so encodings are reproducible.
    // Throws NotPrime / DegreeMismatch / ReducibleModulus.
    static FieldPtr make(std::uint32_t p, std::uint32_t m,
                         std::optional<std::vector<std::uint32_t>> modulus = std::nullopt);

    // "q=<f>" (auto-factored prime power, default modulus) or
    // "p=<p>,m=<m>[,mod=<c0,c1,...,cm>]". Throws ParseError.
    static FieldPtr parse_spec(const std::string& spec);

    std::uint32_t characteristic() const { return p_; }
    std::uint32_t extension_degree() const { return m_; }
    std::uint64_t order() const { return f_; }
    bool char2() const { return p_ == 2; }
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    // Structural identity: same (p, m, modulus).
    bool same_as(const Field& other) const;
    std::string spec_string() const;

    // Arithmetic on canonical encodings.
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t neg(std::uint32_t a) const;
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t inv(std::uint32_t a) const; // throws DivisionByZero
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;

    // n * 1_F (the prime-subfield image of an integer).
    std::uint32_t from_int(std::uint64_t n) const { return static_cast<std::uint32_t>(n % p_); }

    // Zero for 0; in odd characteristic decided by the Euler criterion
    // x^((f-1)/2); in characteristic 2 every nonzero element is a square.
    SquareClass square_class(std::uint32_t a) const;

    // Least non-square by encoding. Throws NoNonSquare in characteristic 2.
    std::uint32_t nonsquare_witness() const;

    // Membership in the Artin-Schreier image wp(F) = {y^2 + y}. Char 2 only.
    bool in_artin_schreier_image(std::uint32_t a) const;

    // Least element outside wp(F). Char 2 only.
    std::uint32_t wp_witness() const;

    std::vector<std::uint32_t> decode(std::uint32_t a) const;
    std::uint32_t encode(const std::vector<std::uint32_t>& coeffs) const;

    FieldElement element(std::uint32_t enc) const;

private:
    Field() = default;

    std::uint32_t p_ = 0;
    std::uint32_t m_ = 0;
    std::uint64_t f_ = 0;
    std::vector<std::uint32_t> modulus_; // little-endian, size m+1, monic

    // Small-field acceleration; built eagerly when f is small.
    std::vector<std::uint32_t> mul_table_; // f*f when f <= kMulTableLimit
    std::vector<std::uint32_t> inv_table_; // f when tabled
    std::vector<bool> wp_image_;           // char 2 only
    std::uint32_t nonsquare_witness_ = 0;  // odd char: least non-square
    std::uint32_t wp_witness_ = 0;         // char 2: least outside wp(F)

    std::uint32_t mul_slow(std::uint32_t a, std::uint32_t b) const;
    static constexpr std::uint64_t kMulTableLimit = 1024;
};

FieldPtr make_field(std::uint32_t p, std::uint32_t m,
                    std::optional<std::vector<std::uint32_t>> modulus = std::nullopt);
FieldPtr parse_field_spec(const std::string& spec);

// Value-semantic element carrying its field identity. Mixed-field operations
// are hard errors (FieldMismatch), never coercions.
class FieldElement {
public:
    FieldElement(FieldPtr field, std::uint32_t enc);

    std::uint32_t encoding() const { return enc_; }
    const FieldPtr& field() const { return field_; }
    bool is_zero() const { return enc_ == 0; }

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement inverse() const;
    FieldElement pow(std::uint64_t e) const;

    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

private:
    FieldPtr field_;
    std::uint32_t enc_;
};

// Spec-surface helpers.
SquareClass square_class(const FieldElement& x);
FieldElement nonsquare_witness(const FieldPtr& field);
bool artin_schreier_class(const FieldElement& x); // true iff x in wp(F)
FieldElement wp_witness(const FieldPtr& field);

// Throws FieldMismatch unless both fields are structurally identical.
void require_same_field(const Field& a, const Field& b, const char* where);

} // namespace qrep
