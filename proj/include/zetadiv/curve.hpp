#pragma once
// Places of the smooth model over stated extension fields, divisor
// arithmetic including gcd, and exact valuations via local expansions.
//
// Places at infinity need no series work: the (n,d)-grading gives the exact
// pole order of any coordinate-ring element because gcd(n,d)=1 makes the
// candidate orders n*deg(u_b) + d*b pairwise distinct.

#include <map>

#include "zetadiv/ring.hpp"

namespace zetadiv {

// ------------------------------------------------------------------
// Place
// ------------------------------------------------------------------
class Place {
public:
    enum class Kind { Affine = 0, Ramified = 1, Infinity = 2 };

    static Place affine(FieldElement x0, FieldElement y0);  // y0 != 0
    static Place ramified(unsigned index);                  // 1-based, the point (-alpha_i, 0)
    static Place infinity();

    Kind kind() const { return kind_; }
    bool is_affine() const { return kind_ == Kind::Affine; }
    bool is_ramified() const { return kind_ == Kind::Ramified; }
    bool is_infinity() const { return kind_ == Kind::Infinity; }
    const FieldElement& x() const;
    const FieldElement& y() const;
    unsigned ram_index() const;

    static int cmp(const Place& a, const Place& b);
    bool operator<(const Place& o) const { return cmp(*this, o) < 0; }
    bool operator==(const Place& o) const { return cmp(*this, o) == 0; }
    bool operator!=(const Place& o) const { return !(*this == o); }

    Place map(const Embedding& e) const;  // embed affine coordinates
    std::string to_string() const;        // "(x0,y0)" / "(x0,y0)@ext:..." / "RAM(i)" / "INF"

private:
    Kind kind_ = Kind::Infinity;
    FieldElement x_, y_;
    unsigned ram_ = 0;
};

// x0/y0 coordinates of a place on c; ramified places resolve through the
// alpha list, infinity is rejected.
std::pair<FieldElement, FieldElement> place_coords(const Curve& c, const Place& p);

bool on_curve(const Curve& c, const FieldElement& x0, const FieldElement& y0);

// Classify a coordinate pair: affine place, or the matching ramified place
// when y0 = 0. Fails with PointNotOnCurve.
Place classify_point(const Curve& c, const FieldElement& x0, const FieldElement& y0);

// zeta action (x,y) -> (x, zeta^k y); ramified places and infinity are fixed.
Place zeta_act(const Curve& c, const Place& p, long k = 1);

// ------------------------------------------------------------------
// Divisor: finite formal sum of places over one common field.
// ------------------------------------------------------------------
class Divisor {
public:
    Divisor() = default;
    explicit Divisor(Field f) : f_(std::move(f)) {}

    const Field& field() const { return f_; }
    const std::map<Place, long long>& terms() const { return m_; }
    bool is_zero() const { return m_.empty(); }
    long long mult_of(const Place& p) const;
    long long degree() const;

    void add(const Place& p, long long k);

    Divisor operator+(const Divisor& o) const;
    Divisor operator-(const Divisor& o) const;
    Divisor operator-() const;
    Divisor scaled(long long k) const;
    bool operator==(const Divisor& o) const { return f_ == o.f_ && m_ == o.m_; }
    bool operator!=(const Divisor& o) const { return !(*this == o); }

    bool is_effective() const;
    Divisor restrict_effective() const;  // positive part
    Divisor map(const Embedding& e) const;

    std::string to_string() const;  // canonical: sorted support, "^k" multiplicities

private:
    Field f_;
    std::map<Place, long long> m_;
    void check_field(const Place& p) const;
};

Divisor divisor_gcd(const Divisor& a, const Divisor& b);  // pointwise min
Divisor zeta_act(const Curve& c, const Divisor& dv, long k = 1);

// Embed two divisors into one canonical common extension (deterministic
// smallest-root embeddings). Distinct embeddings differ by Galois; callers
// that must stay coherent with a particular field chain should embed
// explicitly with find_embedding_over instead.
std::pair<Divisor, Divisor> to_common_field(const Divisor& a, const Divisor& b);

// ------------------------------------------------------------------
// Local expansions and valuations.
// ------------------------------------------------------------------

// Expansion of elt in the local parameter of pl: t = x - x0 at an affine
// place (y lifted by a series n-th root), t = y at a ramified place (x
// recovered by fixed-point iteration). Not defined at infinity.
TruncSeries expand_at(const Place& pl, const RingElement& elt, long prec);

// v_pl(elt) for nonzero elt. At infinity the exact grading formula is used;
// elsewhere the series precision starts at 2g+n+1 and doubles on an
// inconclusive all-zero result, with a hard cap (PrecisionExhausted).
long valuation(const Place& pl, const RingElement& elt);

// ------------------------------------------------------------------
// Divisor of zeros.
// ------------------------------------------------------------------
struct DivisorOfZeros {
    Divisor div;       // effective; over ext_curve.field
    Curve ext_curve;   // base change of the input curve
    Embedding emb;     // input field -> extension
};

// div0(elt): affine and ramified zeros with exact multiplicities, located
// through factor(norm_to_x(elt)) over one splitting extension chosen for the
// whole computation. deg div0 = -v_inf(elt) is re-checked internally.
DivisorOfZeros divisor_of_zeros(const RingElement& elt);

// As above, but reusing a prebuilt extension (must be large enough to split
// the norm and every fiber; InternalInvariantViolation otherwise).
Divisor divisor_of_zeros_in(const RingElement& elt, const Curve& ext_curve, const Embedding& emb);

struct ZeroLocusExtension {
    Curve ext_curve;
    Embedding emb;  // elements' field -> ext_curve.field
};

// One extension big enough for divisor_of_zeros_in on every element of the
// batch: splits all norms, then all fibers above their roots.
ZeroLocusExtension zero_locus_extension(const std::vector<RingElement>& elts);

// ------------------------------------------------------------------
// Translation: move an affine point to x = 0.
// ------------------------------------------------------------------
struct ShiftedCurve {
    Curve curve;          // alphas shifted by the x-coordinate of the point
    FieldElement amount;  // original x-coordinate of the point
    Place point;          // the image of the input point (x = 0)
};

// Move an affine (or ramified) point to x = 0; infinity is rejected with
// InfinityNotShiftable. Divisors in the shifted frame map back to the
// original frame with shift_divisor_by(+amount, ...).
ShiftedCurve shift_to_origin(const Curve& c, const Place& p);
Place shift_place_by(const FieldElement& delta, const Place& p);
Divisor shift_divisor_by(const FieldElement& delta, const Divisor& dv);

}  // namespace zetadiv
