#pragma once
// Exact arithmetic in small prime fields F_p and their extensions F_{p^k}.
//
// Extensions are always presented absolutely over the prime field by a monic
// irreducible modulus; relative embeddings between extensions are explicit
// Embedding values. Field orders p^k may exceed 64 bits, so exponent
// bookkeeping uses a tiny unsigned bignum (BigUInt) that exists only for this
// purpose. Coefficients are uint32_t with p < 2^31, so products fit in a
// double-width machine word.
//
// Univariate polynomials over any Field live here too, together with
// factorization (squarefree / distinct-degree / equal-degree splitting),
// roots of unity, n-th roots and splitting extensions. Probabilistic steps
// take a caller-provided seed; all public outputs are canonicalized (sorted,
// smallest-element conventions) so results do not depend on the seed.

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace zetadiv {

// Error with a stable machine-readable code ("DivisionByZero", ...) used by
// tests and by the CLI to name the violated precondition.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(std::string code, const std::string& msg) {
    throw Error(std::move(code), msg);
}

// ------------------------------------------------------------------
// BigUInt: minimal unsigned integer, little-endian 64-bit limbs.
// Only what exponent arithmetic needs: p^k, -1, /small, bit access.
// ------------------------------------------------------------------
struct BigUInt {
    std::vector<uint64_t> limbs;  // little-endian, no trailing zero limbs

    BigUInt() = default;
    static BigUInt from(uint64_t v);
    static BigUInt power(uint64_t base, unsigned exp);

    void trim();
    bool is_zero() const { return limbs.empty(); }
    void mul_small(uint64_t m);
    void add_small(uint64_t a);
    void sub_small(uint64_t s);       // requires *this >= s
    uint64_t div_small(uint64_t d);   // in place; returns remainder
    uint64_t mod_small(uint64_t d) const;
    size_t bit_length() const;
    bool bit(size_t i) const;
    bool fits_u64() const { return limbs.size() <= 1; }
    uint64_t as_u64() const { return limbs.empty() ? 0 : limbs[0]; }
    std::string to_string() const;  // decimal

    bool operator==(const BigUInt& o) const { return limbs == o.limbs; }
};

// ------------------------------------------------------------------
// Field
// ------------------------------------------------------------------
struct FieldDesc {
    uint32_t p = 0;                  // odd prime, p < 2^31
    std::vector<uint32_t> modulus;   // monic over F_p; degree k >= 1; prime field uses {0,1}
    unsigned degree() const { return static_cast<unsigned>(modulus.size()) - 1; }
};

class FieldElement;

class Field {
public:
    Field() = default;

    // F_p itself.
    static Field prime(uint32_t p);
    // F_p[t]/(modulus); the modulus is verified monic and irreducible.
    static Field extension(uint32_t p, std::vector<uint32_t> modulus);

    bool valid() const { return static_cast<bool>(d_); }
    uint32_t characteristic() const { return d_->p; }
    unsigned degree() const { return d_->degree(); }
    const std::vector<uint32_t>& modulus() const { return d_->modulus; }
    bool is_prime_field() const { return degree() == 1; }
    BigUInt order() const;  // p^k

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement from_int(long long v) const;                 // constant (prime-subfield) element
    FieldElement from_digits(std::vector<uint32_t> c) const;  // coefficient vector, length <= k
    FieldElement from_index(uint64_t idx) const;              // base-p digit expansion
    FieldElement generator() const;                           // the class of t
    FieldElement random_element(std::mt19937_64& rng) const;

    bool operator==(const Field& o) const;
    bool operator!=(const Field& o) const { return !(*this == o); }

    std::string to_string() const;  // "F_13" or "F_13[t]/(t^2+1)"

private:
    explicit Field(std::shared_ptr<const FieldDesc> d) : d_(std::move(d)) {}
    std::shared_ptr<const FieldDesc> d_;
    friend class FieldElement;
};

// Canonical F_{p^k}: modulus found by a deterministic search, so every part
// of a computation that asks for degree k over p gets the same field.
Field canonical_extension(uint32_t p, unsigned k);

// ------------------------------------------------------------------
// FieldElement
// ------------------------------------------------------------------
class FieldElement {
public:
    FieldElement() = default;

    const Field& field() const { return f_; }
    bool valid() const { return f_.valid(); }
    bool is_zero() const;
    bool is_one() const;
    const std::vector<uint32_t>& digits() const { return c_; }

    FieldElement operator-() const;
    FieldElement inv() const;  // fails with DivisionByZero on 0
    FieldElement pow(uint64_t e) const;
    FieldElement pow(const BigUInt& e) const;

    // Total order fixed across the library: compare coefficient vectors as
    // base-p integers (constant coefficient least significant).
    static int cmp(const FieldElement& a, const FieldElement& b);
    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }
    bool operator<(const FieldElement& o) const { return cmp(*this, o) < 0; }

    uint64_t index() const;         // base-p value; requires it to fit in 64 bits
    std::string to_string() const;  // polynomial in t, e.g. "t^2+3*t+1"

private:
    FieldElement(Field f, std::vector<uint32_t> c) : f_(std::move(f)), c_(std::move(c)) {}
    Field f_;
    std::vector<uint32_t> c_;  // length = field degree

    friend class Field;
    friend FieldElement operator+(const FieldElement&, const FieldElement&);
    friend FieldElement operator-(const FieldElement&, const FieldElement&);
    friend FieldElement operator*(const FieldElement&, const FieldElement&);
    friend FieldElement operator/(const FieldElement&, const FieldElement&);
};

FieldElement operator+(const FieldElement& a, const FieldElement& b);
FieldElement operator-(const FieldElement& a, const FieldElement& b);
FieldElement operator*(const FieldElement& a, const FieldElement& b);
FieldElement operator/(const FieldElement& a, const FieldElement& b);

// ------------------------------------------------------------------
// UniPoly: dense univariate polynomial over a Field, canonical form
// (no trailing zero coefficients; the zero polynomial has no coefficients).
// ------------------------------------------------------------------
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(Field f) : f_(std::move(f)) {}
    UniPoly(Field f, std::vector<FieldElement> coeffs);

    static UniPoly x_power(const Field& f, unsigned e);  // x^e
    static UniPoly constant(const FieldElement& c);
    static UniPoly linear(const FieldElement& c0, const FieldElement& c1);  // c1*x + c0

    const Field& field() const { return f_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const FieldElement& coeff(size_t i) const;  // zero beyond degree
    const std::vector<FieldElement>& coeffs() const { return c_; }
    const FieldElement& leading() const;

    UniPoly operator-() const;
    UniPoly derivative() const;
    UniPoly monic() const;
    FieldElement eval(const FieldElement& x0) const;
    UniPoly map_coeffs(const struct Embedding& e) const;  // coefficientwise embedding

    static int cmp(const UniPoly& a, const UniPoly& b);  // by degree, then coefficients
    bool operator==(const UniPoly& o) const { return cmp(*this, o) == 0; }
    bool operator!=(const UniPoly& o) const { return !(*this == o); }
    bool operator<(const UniPoly& o) const { return cmp(*this, o) < 0; }

    std::string to_string(const std::string& var = "x") const;

private:
    Field f_;
    std::vector<FieldElement> c_;
    void trim();

    friend UniPoly operator+(const UniPoly&, const UniPoly&);
    friend UniPoly operator-(const UniPoly&, const UniPoly&);
    friend UniPoly operator*(const UniPoly&, const UniPoly&);
    friend UniPoly operator*(const FieldElement&, const UniPoly&);
    friend void poly_divmod(const UniPoly&, const UniPoly&, UniPoly&, UniPoly&);
};

UniPoly operator+(const UniPoly& a, const UniPoly& b);
UniPoly operator-(const UniPoly& a, const UniPoly& b);
UniPoly operator*(const UniPoly& a, const UniPoly& b);
UniPoly operator*(const FieldElement& c, const UniPoly& a);

void poly_divmod(const UniPoly& a, const UniPoly& b, UniPoly& q, UniPoly& r);
UniPoly poly_mod(const UniPoly& a, const UniPoly& b);
UniPoly poly_div_exact(const UniPoly& a, const UniPoly& b);  // fails if remainder nonzero
UniPoly poly_gcd(const UniPoly& a, const UniPoly& b);        // monic
UniPoly poly_pow_mod(const UniPoly& base, const BigUInt& e, const UniPoly& m);

// Irreducible monic factors with multiplicities, sorted canonically.
// f = leading(f) * prod factor^mult. Fails with ZeroPolynomial on 0.
std::vector<std::pair<UniPoly, unsigned>> factor(const UniPoly& f, uint64_t seed = 0x5eedf00d);

bool is_irreducible(const UniPoly& f);

// Distinct roots of f in its own coefficient field, ascending.
std::vector<FieldElement> poly_roots(const UniPoly& f, uint64_t seed = 0x5eedf00d);

// ------------------------------------------------------------------
// Embeddings between fields with the same characteristic.
// ------------------------------------------------------------------
struct Embedding {
    Field from, to;
    FieldElement gen_image;  // image of from's generator t (unused for prime from)

    static Embedding identity(const Field& f);
    FieldElement operator()(const FieldElement& a) const;
    bool is_identity() const { return from == to; }
};

// e2 after e1: (e2*e1)(a) = e2(e1(a)).
Embedding compose(const Embedding& e2, const Embedding& e1);

// A field homomorphism sub -> big (sub's degree must divide big's); the image
// of the generator is the smallest root of sub's modulus in big. Fails with
// NoEmbedding when none exists.
Embedding find_embedding(const Field& sub, const Field& big);

// As above but constrained to commute with a common base: the composite
// base -> sub -> big must equal the given base -> big.
Embedding find_embedding_over(const Field& sub, const Field& big,
                              const Embedding& base_in_sub, const Embedding& base_in_big);

// ------------------------------------------------------------------
// Roots of unity, n-th roots, splitting extensions.
// ------------------------------------------------------------------

// Deterministic primitive n-th root of unity (smallest in the element order);
// fails with NoRootOfUnity when n does not divide q-1.
FieldElement primitive_nth_root(const Field& f, unsigned n);

// Some r with r^n = a (smallest), or nullopt if a is not an n-th power here.
std::optional<FieldElement> nth_root(const FieldElement& a, unsigned n);

struct SplittingExtension {
    Field field;
    Embedding emb;  // base field -> field
};

// The smallest-degree extension of the common coefficient field of fs in
// which every f splits into linear factors (degree = lcm of the factor
// degrees), with the embedding of the base field.
SplittingExtension splitting_extension(const Field& base, const std::vector<UniPoly>& fs);

unsigned long long gcd_u64(unsigned long long a, unsigned long long b);
unsigned long long lcm_u64(unsigned long long a, unsigned long long b);

}  // namespace zetadiv
