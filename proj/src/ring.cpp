#include "zetadiv/ring.hpp"

#include <algorithm>
#include <sstream>

namespace zetadiv {

// ------------------------------------------------------------------
// Curve
// ------------------------------------------------------------------
Curve Curve::create(unsigned n, unsigned d, std::vector<FieldElement> alphas, Field field) {
    if (n < 2 || d < 2) fail("NotCoprime", "need n, d >= 2");
    if (gcd_u64(n, d) != 1) fail("NotCoprime", "n and d must be coprime");
    if (alphas.size() != d) fail("DuplicateAlpha", "expected d branch values");
    for (const auto& a : alphas)
        if (a.field() != field) fail("FieldMismatch", "alpha outside the coefficient field");
    for (size_t i = 0; i < alphas.size(); ++i)
        for (size_t j = i + 1; j < alphas.size(); ++j)
            if (alphas[i] == alphas[j]) fail("DuplicateAlpha", "branch values must be distinct");
    if (n % field.characteristic() == 0)
        fail("CharacteristicDividesN", "characteristic divides n");
    Curve c;
    c.n = n;
    c.d = d;
    c.alphas = std::move(alphas);
    c.field = field;
    c.genus = (n - 1) * (d - 1) / 2;
    BigUInt qm1 = field.order();
    qm1.sub_small(1);
    if (qm1.mod_small(n) == 0) c.zeta = primitive_nth_root(field, n);
    return c;
}

UniPoly Curve::rhs() const {
    UniPoly f = UniPoly::constant(field.one());
    for (const auto& a : alphas) f = f * UniPoly(field, {a, field.one()});
    return f;
}

bool Curve::same_as(const Curve& o) const {
    return n == o.n && d == o.d && field == o.field && alphas == o.alphas;
}

FieldElement Curve::zeta_or_fail() const {
    if (!zeta) fail("NoRootOfUnity", "curve field has no primitive n-th root of unity");
    return *zeta;
}

std::string Curve::to_string() const {
    std::ostringstream os;
    os << "y^" << n << " = ";
    for (const auto& a : alphas) os << "(x+" << a.to_string() << ")";
    os << " over " << field.to_string();
    return os.str();
}

Curve embed_curve(const Curve& c, const Embedding& e) {
    if (e.from != c.field) fail("FieldMismatch", "embedding does not start at the curve field");
    Curve r;
    r.n = c.n;
    r.d = c.d;
    r.field = e.to;
    r.genus = c.genus;
    r.alphas.reserve(c.d);
    for (const auto& a : c.alphas) r.alphas.push_back(e(a));
    if (c.zeta) {
        r.zeta = e(*c.zeta);
    } else {
        BigUInt qm1 = e.to.order();
        qm1.sub_small(1);
        if (qm1.mod_small(c.n) == 0) r.zeta = primitive_nth_root(e.to, c.n);
    }
    return r;
}

// ------------------------------------------------------------------
// RingElement
// ------------------------------------------------------------------
namespace {
void require_same_curve(const RingElement& a, const RingElement& b) {
    if (!a.curve() || !b.curve() || !a.curve()->same_as(*b.curve()))
        fail("CurveMismatch", "operands live on different curves");
}
}  // namespace

RingElement::RingElement(CurvePtr curve, std::vector<UniPoly> coords)
    : c_(std::move(curve)), co_(std::move(coords)) {
    if (co_.size() != c_->n) fail("CurveMismatch", "expected n coordinates");
    for (const auto& u : co_)
        if (!u.is_zero() && u.field() != c_->field)
            fail("FieldMismatch", "coordinate over the wrong field");
}

RingElement RingElement::zero(CurvePtr c) {
    std::vector<UniPoly> co(c->n, UniPoly(c->field));
    return RingElement(std::move(c), std::move(co));
}

RingElement RingElement::one(CurvePtr c) { return constant(c, c->field.one()); }

RingElement RingElement::constant(CurvePtr c, const FieldElement& v) {
    RingElement r = zero(c);
    if (!v.is_zero()) r.co_[0] = UniPoly::constant(v);
    return r;
}

RingElement RingElement::x(CurvePtr c) {
    RingElement r = zero(c);
    r.co_[0] = UniPoly::x_power(c->field, 1);
    return r;
}

RingElement RingElement::y(CurvePtr c) {
    RingElement r = zero(c);
    r.co_[1] = UniPoly::constant(c->field.one());
    return r;
}

RingElement RingElement::monomial(CurvePtr c, const UniPoly& u, unsigned b) {
    if (b >= c->n) fail("CurveMismatch", "y-power out of range");
    RingElement r = zero(c);
    r.co_[b] = u;
    return r;
}

bool RingElement::is_zero() const {
    for (const auto& u : co_)
        if (!u.is_zero()) return false;
    return true;
}

RingElement RingElement::operator-() const {
    RingElement r = *this;
    for (auto& u : r.co_) u = -u;
    return r;
}

FieldElement RingElement::eval(const FieldElement& x0, const FieldElement& y0) const {
    FieldElement acc = c_->field.zero();
    FieldElement yp = c_->field.one();
    for (unsigned b = 0; b < c_->n; ++b) {
        if (!co_[b].is_zero()) acc = acc + co_[b].eval(x0) * yp;
        yp = yp * y0;
    }
    return acc;
}

RingElement RingElement::sigma(long power) const {
    FieldElement z = c_->zeta_or_fail();
    long n = (long)c_->n;
    long e = ((-power % n) + n) % n;  // sigma^power multiplies u_b by zeta^(-b power)
    RingElement r = *this;
    for (unsigned b = 1; b < c_->n; ++b) {
        unsigned k = (unsigned)(((long)b * e) % n);
        if (k) r.co_[b] = z.pow(k) * r.co_[b];
    }
    return r;
}

bool RingElement::operator==(const RingElement& o) const {
    require_same_curve(*this, o);
    return co_ == o.co_;
}

std::string RingElement::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (unsigned b = 0; b < c_->n; ++b) {
        if (co_[b].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        if (b == 0) {
            os << co_[b].to_string();
        } else {
            os << "(" << co_[b].to_string() << ")*y";
            if (b > 1) os << "^" << b;
        }
    }
    if (first) os << "0";
    return os.str();
}

RingElement operator+(const RingElement& a, const RingElement& b) {
    require_same_curve(a, b);
    RingElement r = a;
    for (unsigned i = 0; i < r.co_.size(); ++i) r.co_[i] = r.co_[i] + b.co_[i];
    return r;
}

RingElement operator-(const RingElement& a, const RingElement& b) {
    require_same_curve(a, b);
    RingElement r = a;
    for (unsigned i = 0; i < r.co_.size(); ++i) r.co_[i] = r.co_[i] - b.co_[i];
    return r;
}

RingElement operator*(const RingElement& a, const RingElement& b) {
    require_same_curve(a, b);
    unsigned n = a.c_->n;
    UniPoly f = a.c_->rhs();
    std::vector<UniPoly> acc(n, UniPoly(a.c_->field));
    for (unsigned i = 0; i < n; ++i) {
        if (a.co_[i].is_zero()) continue;
        for (unsigned j = 0; j < n; ++j) {
            if (b.co_[j].is_zero()) continue;
            UniPoly prod = a.co_[i] * b.co_[j];
            unsigned e = i + j;
            if (e >= n) {  // reduce with y^n = prod(x+alpha)
                e -= n;
                prod = prod * f;
            }
            acc[e] = acc[e] + prod;
        }
    }
    return RingElement(a.c_, std::move(acc));
}

RingElement operator*(const FieldElement& c, const RingElement& a) {
    RingElement r = a;
    for (auto& u : r.co_) u = c * u;
    return r;
}

UniPoly norm_to_x(const RingElement& a) {
    if (a.is_zero()) fail("ZeroElement", "norm of the zero element");
    const auto& c = a.curve();
    RingElement prod = a;
    for (unsigned k = 1; k < c->n; ++k) prod = prod * a.sigma((long)k);
    for (unsigned b = 1; b < c->n; ++b)
        if (!prod.coord(b).is_zero()) fail("InternalInvariantViolation", "norm is not y-free");
    return prod.coord(0);
}

// ------------------------------------------------------------------
// RingMatrix
// ------------------------------------------------------------------
RingMatrix::RingMatrix(CurvePtr curve, unsigned size) : c_(std::move(curve)), sz_(size) {
    m_.assign((size_t)sz_ * sz_, RingElement::zero(c_));
}

size_t RingMatrix::idx(long i, long j) const {
    long n = (long)sz_;
    long r = ((i - 1) % n + n) % n;
    long c = ((j - 1) % n + n) % n;
    return (size_t)(r * n + c);
}

RingElement& RingMatrix::entry(long i, long j) { return m_[idx(i, j)]; }
const RingElement& RingMatrix::entry(long i, long j) const { return m_[idx(i, j)]; }

RingMatrix RingMatrix::operator*(const RingMatrix& o) const {
    RingMatrix r(c_, sz_);
    for (unsigned i = 1; i <= sz_; ++i)
        for (unsigned j = 1; j <= sz_; ++j) {
            RingElement acc = RingElement::zero(c_);
            for (unsigned k = 1; k <= sz_; ++k) acc = acc + entry(i, k) * o.entry(k, j);
            r.entry(i, j) = acc;
        }
    return r;
}

bool RingMatrix::operator==(const RingMatrix& o) const { return sz_ == o.sz_ && m_ == o.m_; }

RingMatrix identity_matrix(CurvePtr c, unsigned size) {
    RingMatrix r(c, size);
    for (unsigned i = 1; i <= size; ++i) r.entry(i, i) = RingElement::one(c);
    return r;
}

namespace {

// determinant of an m x m array (row-major) by Laplace expansion with
// column-subset memoization: O(2^m * m) ring multiplications. The submatrix
// for a mask uses the first popcount(mask) rows and the columns in the mask.
RingElement det_array(const std::vector<RingElement>& a, unsigned m, const CurvePtr& c) {
    if (m == 0) return RingElement::one(c);
    std::vector<RingElement> memo((size_t)1 << m, RingElement::one(c));
    for (uint32_t mask = 1; mask < (1u << m); ++mask) {
        unsigned r = (unsigned)__builtin_popcount(mask);
        RingElement acc = RingElement::zero(c);
        unsigned pos = 0;
        for (unsigned j = 0; j < m; ++j) {
            if (!(mask & (1u << j))) continue;
            const RingElement& e = a[(size_t)(r - 1) * m + j];
            if (!e.is_zero()) {
                RingElement term = e * memo[mask & ~(1u << j)];
                if ((r - 1 + pos) % 2)
                    acc = acc - term;
                else
                    acc = acc + term;
            }
            ++pos;
        }
        memo[mask] = acc;
    }
    return memo[(1u << m) - 1];
}

}  // namespace

RingElement det(const RingMatrix& m) {
    unsigned n = m.size();
    std::vector<RingElement> a;
    a.reserve((size_t)n * n);
    for (unsigned i = 1; i <= n; ++i)
        for (unsigned j = 1; j <= n; ++j) a.push_back(m.entry(i, j));
    return det_array(a, n, m.curve());
}

RingMatrix adjugate(const RingMatrix& m) {
    unsigned n = m.size();
    RingMatrix r(m.curve(), n);
    if (n == 1) {
        r.entry(1, 1) = RingElement::one(m.curve());
        return r;
    }
    for (unsigned i = 1; i <= n; ++i) {
        for (unsigned j = 1; j <= n; ++j) {
            // adj(m)_{i,j} = (-1)^(i+j) det of m with row j and column i removed
            std::vector<RingElement> sub;
            sub.reserve((size_t)(n - 1) * (n - 1));
            for (unsigned r2 = 1; r2 <= n; ++r2) {
                if (r2 == j) continue;
                for (unsigned c2 = 1; c2 <= n; ++c2) {
                    if (c2 == i) continue;
                    sub.push_back(m.entry(r2, c2));
                }
            }
            RingElement dd = det_array(sub, n - 1, m.curve());
            r.entry(i, j) = ((i + j) % 2) ? -dd : dd;
        }
    }
    return r;
}

// ------------------------------------------------------------------
// symmetric functions / A_l
// ------------------------------------------------------------------
std::vector<FieldElement> elementary_symmetric(const std::vector<FieldElement>& roots) {
    if (roots.empty()) fail("FieldMismatch", "need at least one root");
    const Field& f = roots[0].field();
    // coefficients of prod (T + r_i), ascending in T; s_j = coeff of T^(d-j)
    std::vector<FieldElement> cs{f.one()};
    for (const auto& r : roots) {
        std::vector<FieldElement> next(cs.size() + 1, f.zero());
        for (size_t i = 0; i < cs.size(); ++i) {
            next[i + 1] = next[i + 1] + cs[i];
            next[i] = next[i] + r * cs[i];
        }
        cs = std::move(next);
    }
    size_t d = roots.size();
    std::vector<FieldElement> s(d + 1, f.zero());
    for (size_t j = 0; j <= d; ++j) s[j] = cs[d - j];
    return s;
}

UniPoly build_A_ell(const std::vector<FieldElement>& s, long ell, unsigned n, const Field& f) {
    std::vector<FieldElement> cs;
    long d = (long)s.size() - 1;
    bool odd_sign = (n - 1) % 2 != 0;  // (-1)^((n-1)k) is -1 for odd k iff n even
    for (long k = 0; ell - (long)n * k >= 0; ++k) {
        long idx = ell - (long)n * k;
        FieldElement v = (idx <= d) ? s[(size_t)idx] : f.zero();
        if (odd_sign && (k % 2)) v = -v;
        cs.push_back(v);
    }
    return UniPoly(f, std::move(cs));
}

// ------------------------------------------------------------------
// TruncSeries
// ------------------------------------------------------------------
void TruncSeries::normalize() {
    size_t drop = 0;
    while (drop < c_.size() && c_[drop].is_zero()) ++drop;
    if (drop) {
        c_.erase(c_.begin(), c_.begin() + (long)drop);
        lo_ += (long)drop;
    }
    if (c_.empty()) lo_ = prec_;
}

TruncSeries TruncSeries::zero_to(const Field& f, long prec) {
    TruncSeries s;
    s.f_ = f;
    s.lo_ = prec;
    s.prec_ = prec;
    return s;
}

TruncSeries TruncSeries::make(const Field& f, long lo, std::vector<FieldElement> coeffs,
                              long prec) {
    TruncSeries s;
    s.f_ = f;
    s.lo_ = lo;
    s.prec_ = prec;
    s.c_ = std::move(coeffs);
    s.c_.resize((size_t)std::max<long>(0, prec - lo), f.zero());
    s.normalize();
    return s;
}

TruncSeries TruncSeries::constant(const FieldElement& v, long prec) {
    return make(v.field(), 0, {v}, prec);
}

TruncSeries TruncSeries::monomial(const FieldElement& v, long e, long prec) {
    return make(v.field(), e, {v}, prec);
}

std::optional<long> TruncSeries::valuation() const {
    if (c_.empty()) return std::nullopt;
    return lo_;
}

FieldElement TruncSeries::coeff(long i) const {
    if (i < lo_ || i >= prec_ || c_.empty()) return f_.zero();
    size_t k = (size_t)(i - lo_);
    return k < c_.size() ? c_[k] : f_.zero();
}

TruncSeries TruncSeries::operator-() const {
    TruncSeries r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
}

TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
    const Field& f = a.f_.valid() ? a.f_ : b.f_;
    long prec = std::min(a.prec_, b.prec_);
    long lo = std::min({a.lo_, b.lo_, prec});
    std::vector<FieldElement> c;
    c.reserve((size_t)(prec - lo));
    for (long i = lo; i < prec; ++i) c.push_back(a.coeff(i) + b.coeff(i));
    return TruncSeries::make(f, lo, std::move(c), prec);
}

TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) { return a + (-b); }

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    const Field& f = a.f_.valid() ? a.f_ : b.f_;
    long prec = std::min(a.lo_ + b.prec_, b.lo_ + a.prec_);
    if (a.c_.empty() || b.c_.empty()) return TruncSeries::zero_to(f, prec);
    long lo = std::min(a.lo_ + b.lo_, prec);
    std::vector<FieldElement> c((size_t)std::max<long>(0, prec - lo), f.zero());
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) {
            long e = a.lo_ + (long)i + b.lo_ + (long)j;
            if (e >= prec) break;
            if (b.c_[j].is_zero()) continue;
            c[(size_t)(e - lo)] = c[(size_t)(e - lo)] + a.c_[i] * b.c_[j];
        }
    }
    return TruncSeries::make(f, lo, std::move(c), prec);
}

TruncSeries TruncSeries::inv() const {
    if (c_.empty() || c_[0].is_zero())
        fail("NonUnitConstantTerm", "series inverse needs a visible nonzero leading coefficient");
    long m = prec_ - lo_;  // relative precision
    FieldElement u0 = c_[0].inv();
    std::vector<FieldElement> r((size_t)m, f_.zero());
    r[0] = u0;
    for (long k = 1; k < m; ++k) {
        FieldElement acc = f_.zero();
        for (long j = 1; j <= k; ++j) acc = acc + coeff(lo_ + j) * r[(size_t)(k - j)];
        r[(size_t)k] = -(u0 * acc);
    }
    return make(f_, -lo_, std::move(r), -lo_ + m);
}

TruncSeries TruncSeries::pow(unsigned e) const {
    long rel = prec_ - lo_;
    if (e == 0) return TruncSeries::make(f_, 0, {f_.one()}, std::max<long>(rel, 1));
    TruncSeries acc;
    TruncSeries b = *this;
    bool first = true;
    while (e) {
        if (e & 1) {
            acc = first ? b : acc * b;
            first = false;
        }
        e >>= 1;
        if (e) b = b * b;
    }
    return acc;
}

std::string TruncSeries::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (long i = lo_; i < prec_; ++i) {
        FieldElement v = coeff(i);
        if (v.is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << v.to_string();
        if (i != 0) os << "*t^" << i;
    }
    if (first) os << "0";
    os << " + O(t^" << prec_ << ")";
    return os.str();
}

TruncSeries series_nth_root(const TruncSeries& s, unsigned n,
                            const std::optional<FieldElement>& leading_hint) {
    if (s.c_.empty()) fail("NonUnitConstantTerm", "n-th root needs a visible leading coefficient");
    const Field& f = s.f_;
    if (n % f.characteristic() == 0)
        fail("NotAnNthPower", "series n-th root needs n coprime to the characteristic");
    if (s.lo_ % (long)n != 0) fail("NotAnNthPower", "series valuation not divisible by n");
    FieldElement lead;
    if (leading_hint) {
        lead = *leading_hint;
        if (!(lead.pow(n) == s.c_[0])) fail("NotAnNthPower", "leading hint is not a root");
    } else {
        auto r = nth_root(s.c_[0], n);
        if (!r) fail("NotAnNthPower", "leading coefficient has no n-th root in this field");
        lead = *r;
    }
    // u = s / (lead^n t^lo) = 1 + O(t); Newton for r^n = u starting from 1,
    // one doubling of t-adic accuracy per step (n is invertible here).
    long m = s.prec_ - s.lo_;
    std::vector<FieldElement> unit(s.c_);
    FieldElement c0inv = s.c_[0].inv();
    for (auto& v : unit) v = c0inv * v;
    TruncSeries u = TruncSeries::make(f, 0, std::move(unit), m);
    TruncSeries r = TruncSeries::make(f, 0, {f.one()}, 1);
    FieldElement ninv = f.from_int((long long)n).inv();
    long cur = 1;
    while (cur < m) {
        cur = std::min(2 * cur, m);
        std::vector<FieldElement> rc;
        for (long i = 0; i < cur; ++i) rc.push_back(r.coeff(i));
        r = TruncSeries::make(f, 0, std::move(rc), cur);
        std::vector<FieldElement> uc;
        for (long i = 0; i < cur; ++i) uc.push_back(u.coeff(i));
        TruncSeries ucur = TruncSeries::make(f, 0, std::move(uc), cur);
        TruncSeries rn1 = r.pow(n - 1);
        TruncSeries delta = (r * rn1 - ucur) * rn1.inv();
        std::vector<FieldElement> dc;
        for (long i = 0; i < cur; ++i) dc.push_back(ninv * delta.coeff(i));
        r = r - TruncSeries::make(f, 0, std::move(dc), cur);
    }
    std::vector<FieldElement> out;
    for (long i = 0; i < m; ++i) out.push_back(lead * r.coeff(i));
    return TruncSeries::make(f, s.lo_ / (long)n, std::move(out), s.lo_ / (long)n + m);
}

TruncSeries series_eval_poly(const UniPoly& f, const TruncSeries& g) {
    long prec = g.precision();
    if (g.lo() < 0) fail("InternalInvariantViolation", "polynomial evaluation at a Laurent series");
    TruncSeries acc = TruncSeries::zero_to(g.field(), prec);
    for (size_t i = f.coeffs().size(); i-- > 0;)
        acc = acc * g + TruncSeries::constant(f.coeff(i), prec);
    return acc;
}

TruncSeries series_compose(const TruncSeries& outer, const TruncSeries& inner) {
    if (inner.known_nonzero() && inner.lo() < 1)
        fail("InternalInvariantViolation", "series composition needs positive inner valuation");
    if (outer.lo() < 0) fail("InternalInvariantViolation", "composition of a Laurent series");
    const Field& f = outer.field();
    // truncating outer at m terms leaves an error of O(inner^m)
    long ilo = inner.known_nonzero() ? inner.lo() : inner.precision();
    long prec = std::min(inner.precision(), outer.precision() * std::max<long>(1, ilo));
    TruncSeries acc = TruncSeries::zero_to(f, prec);
    for (long i = outer.precision() - 1; i >= 0; --i)
        acc = acc * inner + TruncSeries::constant(outer.coeff(i), prec);
    return acc;
}

}  // namespace zetadiv
