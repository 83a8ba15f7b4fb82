#include "qrep/gf.hpp"

#include <algorithm>
#include <sstream>

namespace qrep {

namespace {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Polynomials over GF(p) as little-endian coefficient vectors.
using Poly = std::vector<std::uint32_t>;

int degree(const Poly& a) {
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
        if (a[static_cast<std::size_t>(i)] != 0) return i;
    return -1;
}

// Remainder of a modulo b (b monic-normalizable, deg(b) >= 0).
Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
    int db = degree(b);
    std::uint32_t lead_inv = 1;
    {
        // Fermat inverse of the leading coefficient.
        std::uint32_t lead = b[static_cast<std::size_t>(db)];
        std::uint32_t acc = 1, base = lead;
        std::uint32_t e = p - 2;
        while (e) {
            if (e & 1) acc = static_cast<std::uint32_t>((std::uint64_t)acc * base % p);
            base = static_cast<std::uint32_t>((std::uint64_t)base * base % p);
            e >>= 1;
        }
        lead_inv = acc;
    }
    for (int da = degree(a); da >= db; da = degree(a)) {
        std::uint32_t c = static_cast<std::uint32_t>(
            (std::uint64_t)a[static_cast<std::size_t>(da)] * lead_inv % p);
        int shift = da - db;
        for (int i = 0; i <= db; ++i) {
            std::uint64_t sub = (std::uint64_t)c * b[static_cast<std::size_t>(i)] % p;
            std::uint32_t& coef = a[static_cast<std::size_t>(i + shift)];
            coef = static_cast<std::uint32_t>((coef + p - sub) % p);
        }
    }
    return a;
}

bool is_zero_poly(const Poly& a) { return degree(a) < 0; }

// Trial division against all monic polynomials of degree 1..deg/2.
bool is_irreducible(const Poly& g, std::uint32_t p) {
    int dg = degree(g);
    if (dg <= 0) return false;
    if (dg == 1) return true;
    for (int d = 1; 2 * d <= dg; ++d) {
        // Enumerate monic divisor candidates of degree d.
        std::uint64_t count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (std::uint64_t t = 0; t < count; ++t) {
            Poly cand(static_cast<std::size_t>(d) + 1, 0);
            std::uint64_t tt = t;
            for (int i = 0; i < d; ++i) {
                cand[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(tt % p);
                tt /= p;
            }
            cand[static_cast<std::size_t>(d)] = 1;
            if (is_zero_poly(poly_mod(g, cand, p))) return false;
        }
    }
    return true;
}

// Lexicographically least monic irreducible of degree m, coefficients
// compared as the tuple (c_0, ..., c_{m-1}).
Poly default_modulus(std::uint32_t p, std::uint32_t m) {
    if (m == 1) return Poly{0, 1}; // the prime field, "x - 0" convention
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < m; ++i) count *= p;
    for (std::uint64_t t = 0; t < count; ++t) {
        Poly cand(m + 1, 0);
        // c_0 is the most significant position of the lex order.
        std::uint64_t tt = t;
        for (std::uint32_t i = 0; i < m; ++i) {
            std::uint64_t w = 1;
            for (std::uint32_t j = i + 1; j < m; ++j) w *= p;
            cand[i] = static_cast<std::uint32_t>(tt / w);
            tt %= w;
        }
        cand[m] = 1;
        if (is_irreducible(cand, p)) return cand;
    }
    fail(ErrorCode::ReducibleModulus, "no irreducible polynomial found (unreachable)");
}

constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 22;

} // namespace

const char* square_class_name(SquareClass c) {
    switch (c) {
    case SquareClass::Zero: return "zero";
    case SquareClass::Square: return "square";
    case SquareClass::NonSquare: return "nonsquare";
    }
    return "?";
}

SquareClass square_class_product(SquareClass a, SquareClass b) {
    if (a == SquareClass::Zero || b == SquareClass::Zero) return SquareClass::Zero;
    return a == b ? SquareClass::Square : SquareClass::NonSquare;
}

FieldPtr Field::make(std::uint32_t p, std::uint32_t m,
                     std::optional<std::vector<std::uint32_t>> modulus) {
    if (!is_prime(p)) fail(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
    if (m < 1) fail(ErrorCode::DegreeMismatch, "extension degree must be >= 1");

    std::uint64_t f = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
        f *= p;
        if (f > kMaxOrder)
            fail(ErrorCode::DegreeMismatch,
                 "field order exceeds the supported limit 2^22");
    }

    Poly mod;
    if (modulus) {
        mod = *modulus;
        if (mod.size() != static_cast<std::size_t>(m) + 1)
            fail(ErrorCode::DegreeMismatch,
                 "modulus must have m+1 coefficients (degree m)");
        for (auto& c : mod) c %= p;
        if (mod[m] != 1)
            fail(ErrorCode::DegreeMismatch, "modulus must be monic of degree m");
        if (!is_irreducible(mod, p))
            fail(ErrorCode::ReducibleModulus, "modulus is reducible over GF(p)");
    } else {
        mod = default_modulus(p, m);
    }

    auto field = std::shared_ptr<Field>(new Field());
    field->p_ = p;
    field->m_ = m;
    field->f_ = f;
    field->modulus_ = std::move(mod);

    if (f <= kMulTableLimit) {
        field->mul_table_.resize(static_cast<std::size_t>(f) * f);
        for (std::uint64_t a = 0; a < f; ++a)
            for (std::uint64_t b = a; b < f; ++b) {
                std::uint32_t r = field->mul_slow(static_cast<std::uint32_t>(a),
                                                  static_cast<std::uint32_t>(b));
                field->mul_table_[a * f + b] = r;
                field->mul_table_[b * f + a] = r;
            }
        field->inv_table_.assign(static_cast<std::size_t>(f), 0);
        for (std::uint64_t a = 1; a < f; ++a)
            for (std::uint64_t b = 1; b < f; ++b)
                if (field->mul_table_[a * f + b] == 1) {
                    field->inv_table_[a] = static_cast<std::uint32_t>(b);
                    break;
                }
    }

    if (p == 2) {
        field->wp_image_.assign(static_cast<std::size_t>(f), false);
        for (std::uint64_t y = 0; y < f; ++y) {
            std::uint32_t yy = static_cast<std::uint32_t>(y);
            field->wp_image_[field->add(field->mul(yy, yy), yy)] = true;
        }
        field->wp_witness_ = 0;
        for (std::uint64_t a = 0; a < f; ++a)
            if (!field->wp_image_[a]) {
                field->wp_witness_ = static_cast<std::uint32_t>(a);
                break;
            }
    } else {
        for (std::uint64_t a = 1; a < f; ++a)
            if (field->square_class(static_cast<std::uint32_t>(a)) == SquareClass::NonSquare) {
                field->nonsquare_witness_ = static_cast<std::uint32_t>(a);
                break;
            }
    }

    return field;
}

bool Field::same_as(const Field& other) const {
    return p_ == other.p_ && m_ == other.m_ && modulus_ == other.modulus_;
}

std::string Field::spec_string() const {
    std::ostringstream os;
    os << "p=" << p_ << ",m=" << m_;
    if (m_ > 1) {
        os << ",mod=";
        for (std::size_t i = 0; i < modulus_.size(); ++i) {
            if (i) os << ",";
            os << modulus_[i];
        }
    }
    return os.str();
}

std::uint32_t Field::add(std::uint32_t a, std::uint32_t b) const {
    if (p_ == 2) return a ^ b;
    if (m_ == 1) {
        std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    std::uint32_t r = 0, w = 1;
    for (std::uint32_t i = 0; i < m_; ++i) {
        std::uint32_t s = a % p_ + b % p_;
        if (s >= p_) s -= p_;
        r += s * w;
        a /= p_;
        b /= p_;
        w *= p_;
    }
    return r;
}

std::uint32_t Field::neg(std::uint32_t a) const {
    if (p_ == 2) return a;
    if (m_ == 1) return a == 0 ? 0 : p_ - a;
    std::uint32_t r = 0, w = 1;
    for (std::uint32_t i = 0; i < m_; ++i) {
        std::uint32_t d = a % p_;
        r += (d == 0 ? 0 : p_ - d) * w;
        a /= p_;
        w *= p_;
    }
    return r;
}

std::uint32_t Field::sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

std::uint32_t Field::mul_slow(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    if (m_ == 1) return static_cast<std::uint32_t>((std::uint64_t)a * b % p_);
    Poly pa = decode(a), pb = decode(b);
    Poly prod(2 * m_ - 1, 0);
    for (std::uint32_t i = 0; i < m_; ++i) {
        if (pa[i] == 0) continue;
        for (std::uint32_t j = 0; j < m_; ++j)
            prod[i + j] = static_cast<std::uint32_t>(
                (prod[i + j] + (std::uint64_t)pa[i] * pb[j]) % p_);
    }
    Poly rem = poly_mod(std::move(prod), modulus_, p_);
    rem.resize(m_, 0);
    return encode(rem);
}

std::uint32_t Field::mul(std::uint32_t a, std::uint32_t b) const {
    if (!mul_table_.empty()) return mul_table_[(std::uint64_t)a * f_ + b];
    return mul_slow(a, b);
}

std::uint32_t Field::pow(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t acc = 1, base = a;
    while (e) {
        if (e & 1) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

std::uint32_t Field::inv(std::uint32_t a) const {
    if (a == 0) fail(ErrorCode::DivisionByZero, "inverse of zero");
    if (!inv_table_.empty()) return inv_table_[a];
    return pow(a, f_ - 2);
}

SquareClass Field::square_class(std::uint32_t a) const {
    if (a == 0) return SquareClass::Zero;
    if (p_ == 2) return SquareClass::Square; // perfect field
    return pow(a, (f_ - 1) / 2) == 1 ? SquareClass::Square : SquareClass::NonSquare;
}

std::uint32_t Field::nonsquare_witness() const {
    if (p_ == 2)
        fail(ErrorCode::NoNonSquare, "every element of a characteristic-2 field is a square");
    return nonsquare_witness_;
}

bool Field::in_artin_schreier_image(std::uint32_t a) const {
    if (p_ != 2)
        fail(ErrorCode::WrongCharacteristic, "Artin-Schreier map needs characteristic 2");
    return wp_image_[a];
}

std::uint32_t Field::wp_witness() const {
    if (p_ != 2)
        fail(ErrorCode::WrongCharacteristic, "wp witness needs characteristic 2");
    return wp_witness_;
}

std::vector<std::uint32_t> Field::decode(std::uint32_t a) const {
    std::vector<std::uint32_t> c(m_);
    for (std::uint32_t i = 0; i < m_; ++i) {
        c[i] = a % p_;
        a /= p_;
    }
    return c;
}

std::uint32_t Field::encode(const std::vector<std::uint32_t>& coeffs) const {
    std::uint32_t r = 0, w = 1;
    for (std::uint32_t i = 0; i < m_; ++i) {
        r += (coeffs[i] % p_) * w;
        w *= p_;
    }
    return r;
}

FieldElement Field::element(std::uint32_t enc) const {
    return FieldElement(shared_from_this(), enc);
}

FieldPtr Field::parse_spec(const std::string& spec) {
    auto bad = [&](const std::string& why) -> void {
        fail(ErrorCode::ParseError, "field spec '" + spec + "': " + why);
    };

    if (spec.rfind("q=", 0) == 0) {
        std::uint64_t f = 0;
        try {
            std::size_t pos = 0;
            f = std::stoull(spec.substr(2), &pos);
            if (pos != spec.size() - 2) bad("trailing characters after order");
        } catch (const std::logic_error&) {
            bad("order is not a number");
        }
        if (f < 2) bad("order must be at least 2");
        std::uint64_t p = 2;
        while (p * p <= f && f % p != 0) ++p;
        if (f % p != 0) p = f; // f itself prime
        std::uint32_t m = 0;
        std::uint64_t rest = f;
        while (rest % p == 0) {
            rest /= p;
            ++m;
        }
        if (rest != 1) bad("order is not a prime power");
        return make(static_cast<std::uint32_t>(p), m);
    }

    std::optional<std::uint32_t> p, m;
    std::optional<std::vector<std::uint32_t>> mod;
    std::size_t i = 0;
    while (i < spec.size()) {
        std::size_t eq = spec.find('=', i);
        if (eq == std::string::npos) bad("expected key=value");
        std::string key = spec.substr(i, eq - i);
        std::size_t end;
        if (key == "mod") {
            end = spec.size();
        } else {
            end = spec.find(',', eq);
            if (end == std::string::npos) end = spec.size();
        }
        std::string value = spec.substr(eq + 1, end - eq - 1);
        try {
            if (key == "p") {
                p = static_cast<std::uint32_t>(std::stoul(value));
            } else if (key == "m") {
                m = static_cast<std::uint32_t>(std::stoul(value));
            } else if (key == "mod") {
                std::vector<std::uint32_t> coeffs;
                std::istringstream is(value);
                std::string tok;
                while (std::getline(is, tok, ','))
                    coeffs.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
                mod = std::move(coeffs);
            } else {
                bad("unknown key '" + key + "'");
            }
        } catch (const std::logic_error&) {
            bad("value for '" + key + "' is not a number");
        }
        i = end + (end < spec.size() ? 1 : 0);
    }
    if (!p || !m) bad("both p and m are required");
    return make(*p, *m, std::move(mod));
}

FieldPtr make_field(std::uint32_t p, std::uint32_t m,
                    std::optional<std::vector<std::uint32_t>> modulus) {
    return Field::make(p, m, std::move(modulus));
}

FieldPtr parse_field_spec(const std::string& spec) { return Field::parse_spec(spec); }

void require_same_field(const Field& a, const Field& b, const char* where) {
    if (!a.same_as(b))
        fail(ErrorCode::FieldMismatch, std::string(where) + ": operands from different fields");
}

FieldElement::FieldElement(FieldPtr field, std::uint32_t enc)
    : field_(std::move(field)), enc_(enc) {
    if (enc_ >= field_->order())
        fail(ErrorCode::ParseError, "element encoding " + std::to_string(enc_) +
                                        " out of range for field of order " +
                                        std::to_string(field_->order()));
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    require_same_field(*field_, *o.field_, "add");
    return FieldElement(field_, field_->add(enc_, o.enc_));
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    require_same_field(*field_, *o.field_, "sub");
    return FieldElement(field_, field_->sub(enc_, o.enc_));
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    require_same_field(*field_, *o.field_, "mul");
    return FieldElement(field_, field_->mul(enc_, o.enc_));
}

FieldElement FieldElement::operator-() const { return FieldElement(field_, field_->neg(enc_)); }

FieldElement FieldElement::inverse() const { return FieldElement(field_, field_->inv(enc_)); }

FieldElement FieldElement::pow(std::uint64_t e) const {
    return FieldElement(field_, field_->pow(enc_, e));
}

bool FieldElement::operator==(const FieldElement& o) const {
    return field_->same_as(*o.field_) && enc_ == o.enc_;
}

SquareClass square_class(const FieldElement& x) {
    return x.field()->square_class(x.encoding());
}

FieldElement nonsquare_witness(const FieldPtr& field) {
    return FieldElement(field, field->nonsquare_witness());
}

bool artin_schreier_class(const FieldElement& x) {
    return x.field()->in_artin_schreier_image(x.encoding());
}

FieldElement wp_witness(const FieldPtr& field) {
    return FieldElement(field, field->wp_witness());
}

} // namespace qrep
