#pragma once
// The superelliptic curve y^n = (x+alpha_1)...(x+alpha_d) and polynomial
// arithmetic on it: elements of the coordinate ring K[x,y]/(y^n - prod),
// stored as n univariate coordinates in y-power form, n x n matrices over the
// ring with exact determinant/adjugate, and truncated power series for local
// expansions.

#include <memory>
#include <optional>

#include "zetadiv/ff.hpp"

namespace zetadiv {

// ------------------------------------------------------------------
// Curve
// ------------------------------------------------------------------
class Curve {
public:
    unsigned n = 0, d = 0;
    std::vector<FieldElement> alphas;  // distinct
    Field field;
    unsigned genus = 0;
    // The primitive n-th root of unity used consistently by every operation
    // on this curve; absent when n does not divide q-1. Base changes carry it
    // along through the embedding, so towers built over the same base agree
    // on which root "zeta" is.
    std::optional<FieldElement> zeta;

    // Validates: gcd(n,d)=1 (NotCoprime), alphas distinct (DuplicateAlpha),
    // char not dividing n (CharacteristicDividesN).
    static Curve create(unsigned n, unsigned d, std::vector<FieldElement> alphas, Field field);

    UniPoly rhs() const;  // prod (x + alpha_i)
    bool same_as(const Curve& o) const;
    FieldElement zeta_or_fail() const;
    std::string to_string() const;
};

using CurvePtr = std::shared_ptr<const Curve>;

// Base change along an embedding of the coefficient field.
Curve embed_curve(const Curve& c, const Embedding& e);

// ------------------------------------------------------------------
// RingElement: sum_b u_b(x) * y^b with 0 <= b < n.
// ------------------------------------------------------------------
class RingElement {
public:
    RingElement() = default;
    RingElement(CurvePtr curve, std::vector<UniPoly> coords);

    static RingElement zero(CurvePtr c);
    static RingElement one(CurvePtr c);
    static RingElement constant(CurvePtr c, const FieldElement& v);
    static RingElement x(CurvePtr c);
    static RingElement y(CurvePtr c);
    // u(x) * y^b
    static RingElement monomial(CurvePtr c, const UniPoly& u, unsigned b);

    const CurvePtr& curve() const { return c_; }
    const std::vector<UniPoly>& coords() const { return co_; }
    const UniPoly& coord(unsigned b) const { return co_[b]; }
    bool is_zero() const;

    RingElement operator-() const;
    FieldElement eval(const FieldElement& x0, const FieldElement& y0) const;
    // y |-> zeta^(-power) y applied coordinatewise: u_b multiplied by
    // zeta^(-b*power). sigma^n = identity.
    RingElement sigma(long power = 1) const;

    bool operator==(const RingElement& o) const;
    bool operator!=(const RingElement& o) const { return !(*this == o); }
    std::string to_string() const;

private:
    CurvePtr c_;
    std::vector<UniPoly> co_;  // size n

    friend RingElement operator+(const RingElement&, const RingElement&);
    friend RingElement operator-(const RingElement&, const RingElement&);
    friend RingElement operator*(const RingElement&, const RingElement&);
    friend RingElement operator*(const FieldElement&, const RingElement&);
};

RingElement operator+(const RingElement& a, const RingElement& b);
RingElement operator-(const RingElement& a, const RingElement& b);
RingElement operator*(const RingElement& a, const RingElement& b);
RingElement operator*(const FieldElement& c, const RingElement& a);

// Norm to K[x]: the product of all sigma-conjugates, a y-free element equal
// to Res_y(y^n - prod(x+alpha_i), a) up to a scalar; vanishes exactly at the
// x-coordinates of the affine zeros of a. Needs zeta; fails with ZeroElement
// on 0.
UniPoly norm_to_x(const RingElement& a);

// ------------------------------------------------------------------
// Matrices over the coordinate ring. Entry accessors take 1-based indices
// reduced modulo n, so entry(0, 2n) means entry(n, n).
// ------------------------------------------------------------------
class RingMatrix {
public:
    RingMatrix() = default;
    RingMatrix(CurvePtr curve, unsigned size);  // zero matrix

    unsigned size() const { return sz_; }
    const CurvePtr& curve() const { return c_; }

    RingElement& entry(long i, long j);
    const RingElement& entry(long i, long j) const;

    RingMatrix operator*(const RingMatrix& o) const;
    bool operator==(const RingMatrix& o) const;

private:
    CurvePtr c_;
    unsigned sz_ = 0;
    std::vector<RingElement> m_;  // row-major
    size_t idx(long i, long j) const;
};

RingElement det(const RingMatrix& m);
// adj(m) with adj(m)*m = m*adj(m) = det(m)*I; cofactor expansion, exact.
RingMatrix adjugate(const RingMatrix& m);
RingMatrix identity_matrix(CurvePtr c, unsigned size);

// ------------------------------------------------------------------
// Symmetric functions and the A_l band polynomials.
// ------------------------------------------------------------------

// s_0..s_d with sum_j s_j T^(d-j) = prod (T + r_i); s_0 = 1.
std::vector<FieldElement> elementary_symmetric(const std::vector<FieldElement>& roots);

// A_l(x) = sum_k (-1)^((n-1)k) s_(l-nk) x^k, with s_m = 0 outside [0,d].
UniPoly build_A_ell(const std::vector<FieldElement>& s, long ell, unsigned n, const Field& f);

// ------------------------------------------------------------------
// TruncSeries: sum_{i=lo}^{prec-1} c[i-lo] t^i + O(t^prec), Laurent-style.
// Normalized so that either c is empty (nothing known below prec) or c[0]
// is nonzero. Precision is tracked through every operation.
// ------------------------------------------------------------------
class TruncSeries {
public:
    TruncSeries() = default;

    static TruncSeries zero_to(const Field& f, long prec);
    static TruncSeries make(const Field& f, long lo, std::vector<FieldElement> coeffs, long prec);
    static TruncSeries constant(const FieldElement& v, long prec);
    static TruncSeries monomial(const FieldElement& v, long e, long prec);  // v * t^e

    const Field& field() const { return f_; }
    long lo() const { return lo_; }
    long precision() const { return prec_; }
    bool known_nonzero() const { return !c_.empty(); }
    // valuation if a nonzero coefficient is visible, nullopt otherwise
    std::optional<long> valuation() const;
    FieldElement coeff(long i) const;  // zero outside stored range

    TruncSeries operator-() const;
    TruncSeries inv() const;  // leading coefficient must be visible (nonzero)
    TruncSeries pow(unsigned e) const;
    std::string to_string() const;

private:
    Field f_;
    long lo_ = 0, prec_ = 0;
    std::vector<FieldElement> c_;  // dense, size prec-lo
    void normalize();

    friend TruncSeries operator+(const TruncSeries&, const TruncSeries&);
    friend TruncSeries operator-(const TruncSeries&, const TruncSeries&);
    friend TruncSeries operator*(const TruncSeries&, const TruncSeries&);
    friend TruncSeries series_nth_root(const TruncSeries&, unsigned,
                                       const std::optional<FieldElement>&);
    friend TruncSeries series_compose(const TruncSeries&, const TruncSeries&);
};

TruncSeries operator+(const TruncSeries& a, const TruncSeries& b);
TruncSeries operator-(const TruncSeries& a, const TruncSeries& b);
TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);

// r with r^n = s and r^n recovering s to the working precision. The leading
// coefficient of s must have an n-th root in the field (NotAnNthPower
// otherwise); pass leading_hint to select the branch, e.g. the known
// y-coordinate when expanding y along a curve branch.
TruncSeries series_nth_root(const TruncSeries& s, unsigned n,
                            const std::optional<FieldElement>& leading_hint = std::nullopt);

// f(g(t)) for a polynomial f; precision limited by g's.
TruncSeries series_eval_poly(const UniPoly& f, const TruncSeries& g);

// outer(inner(t)); inner must have positive valuation.
TruncSeries series_compose(const TruncSeries& outer, const TruncSeries& inner);

}  // namespace zetadiv
