#include "zetadiv/curve.hpp"

#include <algorithm>
#include <sstream>

namespace zetadiv {

// ------------------------------------------------------------------
// Place
// ------------------------------------------------------------------
Place Place::affine(FieldElement x0, FieldElement y0) {
    if (x0.field() != y0.field()) fail("FieldMismatch", "point coordinates in different fields");
    if (y0.is_zero()) fail("PointNotOnCurve", "affine places need y != 0; use a ramified place");
    Place p;
    p.kind_ = Kind::Affine;
    p.x_ = std::move(x0);
    p.y_ = std::move(y0);
    return p;
}

Place Place::ramified(unsigned index) {
    if (index == 0) fail("PointNotOnCurve", "ramified index is 1-based");
    Place p;
    p.kind_ = Kind::Ramified;
    p.ram_ = index;
    return p;
}

Place Place::infinity() { return Place{}; }

const FieldElement& Place::x() const {
    if (kind_ != Kind::Affine) fail("PointNotOnCurve", "place has no affine coordinates");
    return x_;
}

const FieldElement& Place::y() const {
    if (kind_ != Kind::Affine) fail("PointNotOnCurve", "place has no affine coordinates");
    return y_;
}

unsigned Place::ram_index() const {
    if (kind_ != Kind::Ramified) fail("PointNotOnCurve", "not a ramified place");
    return ram_;
}

int Place::cmp(const Place& a, const Place& b) {
    if (a.kind_ != b.kind_) return (int)a.kind_ < (int)b.kind_ ? -1 : 1;
    switch (a.kind_) {
        case Kind::Affine: {
            int c = FieldElement::cmp(a.x_, b.x_);
            if (c) return c;
            return FieldElement::cmp(a.y_, b.y_);
        }
        case Kind::Ramified:
            return a.ram_ < b.ram_ ? -1 : (a.ram_ > b.ram_ ? 1 : 0);
        case Kind::Infinity:
            return 0;
    }
    return 0;
}

Place Place::map(const Embedding& e) const {
    if (kind_ != Kind::Affine) return *this;
    return affine(e(x_), e(y_));
}

namespace {
std::string modulus_string(const Field& f) {
    std::ostringstream os;
    const auto& m = f.modulus();
    bool first = true;
    for (size_t i = m.size(); i-- > 0;) {
        if (!m[i]) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0 || m[i] != 1) os << m[i];
        if (i >= 1) {
            if (m[i] != 1) os << "*";
            os << "t";
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}
}  // namespace

std::string Place::to_string() const {
    switch (kind_) {
        case Kind::Affine: {
            std::ostringstream os;
            os << "(" << x_.to_string() << "," << y_.to_string() << ")";
            if (!x_.field().is_prime_field()) os << "@ext:" << modulus_string(x_.field());
            return os.str();
        }
        case Kind::Ramified:
            return "RAM(" + std::to_string(ram_) + ")";
        case Kind::Infinity:
            return "INF";
    }
    return "?";
}

std::pair<FieldElement, FieldElement> place_coords(const Curve& c, const Place& p) {
    switch (p.kind()) {
        case Place::Kind::Affine:
            return {p.x(), p.y()};
        case Place::Kind::Ramified: {
            unsigned i = p.ram_index();
            if (i > c.d) fail("PointNotOnCurve", "ramified index out of range");
            return {-c.alphas[i - 1], c.field.zero()};
        }
        case Place::Kind::Infinity:
            break;
    }
    fail("InfinityPoint", "infinity has no affine coordinates");
}

bool on_curve(const Curve& c, const FieldElement& x0, const FieldElement& y0) {
    return y0.pow(c.n) == c.rhs().eval(x0);
}

Place classify_point(const Curve& c, const FieldElement& x0, const FieldElement& y0) {
    if (x0.field() != c.field || y0.field() != c.field)
        fail("FieldMismatch", "point coordinates outside the curve field");
    if (!on_curve(c, x0, y0)) fail("PointNotOnCurve", "the point does not satisfy the equation");
    if (!y0.is_zero()) return Place::affine(x0, y0);
    for (unsigned i = 0; i < c.d; ++i)
        if (x0 == -c.alphas[i]) return Place::ramified(i + 1);
    fail("PointNotOnCurve", "y = 0 but x is not a branch point");  // unreachable on a curve
}

Place zeta_act(const Curve& c, const Place& p, long k) {
    if (!p.is_affine()) return p;
    long n = (long)c.n;
    long e = ((k % n) + n) % n;
    if (e == 0) return p;
    FieldElement z = c.zeta_or_fail();
    if (p.x().field() != c.field) fail("FieldMismatch", "place over a different field than the curve");
    return Place::affine(p.x(), z.pow((unsigned)e) * p.y());
}

// ------------------------------------------------------------------
// Divisor
// ------------------------------------------------------------------
void Divisor::check_field(const Place& p) const {
    if (p.is_affine() && p.x().field() != f_)
        fail("FieldMismatch", "place over a different field than the divisor");
}

long long Divisor::mult_of(const Place& p) const {
    auto it = m_.find(p);
    return it == m_.end() ? 0 : it->second;
}

long long Divisor::degree() const {
    long long s = 0;
    for (const auto& [p, k] : m_) s += k;
    return s;
}

void Divisor::add(const Place& p, long long k) {
    if (k == 0) return;
    check_field(p);
    auto it = m_.emplace(p, 0).first;
    it->second += k;
    if (it->second == 0) m_.erase(it);
}

Divisor Divisor::operator+(const Divisor& o) const {
    if (f_ != o.f_) fail("FieldMismatch", "divisors over different fields");
    Divisor r = *this;
    for (const auto& [p, k] : o.m_) r.add(p, k);
    return r;
}

Divisor Divisor::operator-(const Divisor& o) const { return *this + (-o); }

Divisor Divisor::operator-() const {
    Divisor r = *this;
    for (auto& [p, k] : r.m_) k = -k;
    return r;
}

Divisor Divisor::scaled(long long s) const {
    Divisor r(f_);
    if (s)
        for (const auto& [p, k] : m_) r.m_.emplace(p, k * s);
    return r;
}

bool Divisor::is_effective() const {
    for (const auto& [p, k] : m_)
        if (k < 0) return false;
    return true;
}

Divisor Divisor::restrict_effective() const {
    Divisor r(f_);
    for (const auto& [p, k] : m_)
        if (k > 0) r.m_.emplace(p, k);
    return r;
}

Divisor Divisor::map(const Embedding& e) const {
    if (f_ != e.from) fail("FieldMismatch", "embedding does not start at the divisor field");
    Divisor r(e.to);
    for (const auto& [p, k] : m_) r.add(p.map(e), k);
    return r;
}

std::string Divisor::to_string() const {
    if (m_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [p, k] : m_) {
        long long a = k;
        if (first) {
            if (a < 0) os << "-";
        } else {
            os << (a < 0 ? " - " : " + ");
        }
        first = false;
        os << p.to_string();
        if (a < 0) a = -a;
        if (a != 1) os << "^" << a;
    }
    return os.str();
}

Divisor divisor_gcd(const Divisor& a, const Divisor& b) {
    if (a.field() != b.field()) fail("FieldMismatch", "divisors over different fields");
    Divisor r(a.field());
    for (const auto& [p, k] : a.terms()) r.add(p, std::min(k, b.mult_of(p)));
    for (const auto& [p, k] : b.terms())
        if (a.mult_of(p) == 0) r.add(p, std::min(0LL, k));
    return r;
}

Divisor zeta_act(const Curve& c, const Divisor& dv, long k) {
    Divisor r(dv.field());
    for (const auto& [p, m] : dv.terms()) r.add(zeta_act(c, p, k), m);
    return r;
}

std::pair<Divisor, Divisor> to_common_field(const Divisor& a, const Divisor& b) {
    if (a.field() == b.field()) return {a, b};
    if (a.field().characteristic() != b.field().characteristic())
        fail("FieldMismatch", "divisors over fields of different characteristic");
    unsigned kc = (unsigned)lcm_u64(a.field().degree(), b.field().degree());
    Field E = canonical_extension(a.field().characteristic(), kc);
    auto lift = [&](const Divisor& dv) {
        return dv.field() == E ? dv : dv.map(find_embedding(dv.field(), E));
    };
    return {lift(a), lift(b)};
}

// ------------------------------------------------------------------
// expansions and valuations
// ------------------------------------------------------------------
TruncSeries expand_at(const Place& pl, const RingElement& elt, long prec) {
    const Curve& c = *elt.curve();
    const Field& f = c.field;
    switch (pl.kind()) {
        case Place::Kind::Affine: {
            if (pl.x().field() != f) fail("FieldMismatch", "place and element fields differ");
            // t = x - x0; y(t) is the branch of rhs(x0+t)^(1/n) through y0
            TruncSeries xt = TruncSeries::make(f, 0, {pl.x(), f.one()}, prec);
            TruncSeries fx = series_eval_poly(c.rhs(), xt);
            TruncSeries yt = series_nth_root(fx, c.n, pl.y());
            TruncSeries acc = TruncSeries::zero_to(f, prec);
            TruncSeries yp = TruncSeries::constant(f.one(), prec);
            for (unsigned b = 0; b < c.n; ++b) {
                if (!elt.coord(b).is_zero()) acc = acc + series_eval_poly(elt.coord(b), xt) * yp;
                if (b + 1 < c.n) yp = yp * yt;
            }
            return acc;
        }
        case Place::Kind::Ramified: {
            unsigned i = pl.ram_index();
            if (i > c.d) fail("PointNotOnCurve", "ramified index out of range");
            FieldElement ma = -c.alphas[i - 1];
            // x(t) solves x + alpha_i = t^n / prod_{j != i} (x + alpha_j);
            // fixed-point iteration gains n t-digits per step
            UniPoly others = UniPoly::constant(f.one());
            for (unsigned j = 0; j < c.d; ++j)
                if (j + 1 != i) others = others * UniPoly(f, {c.alphas[j], f.one()});
            TruncSeries tn = TruncSeries::monomial(f.one(), (long)c.n, prec);
            TruncSeries xs = TruncSeries::constant(ma, prec);
            long steps = prec / (long)c.n + 2;
            for (long s = 0; s < steps; ++s)
                xs = TruncSeries::constant(ma, prec) + tn * series_eval_poly(others, xs).inv();
            TruncSeries acc = TruncSeries::zero_to(f, prec);
            for (unsigned b = 0; b < c.n; ++b) {
                if (elt.coord(b).is_zero()) continue;
                TruncSeries term = series_eval_poly(elt.coord(b), xs);
                acc = acc + term * TruncSeries::monomial(f.one(), (long)b, prec);
            }
            return acc;
        }
        case Place::Kind::Infinity:
            break;
    }
    fail("InfinityPoint", "series expansion at infinity is not defined; valuations there are exact");
}

long valuation(const Place& pl, const RingElement& elt) {
    if (elt.is_zero()) fail("ZeroElement", "valuation of the zero element");
    const Curve& c = *elt.curve();
    if (pl.is_infinity()) {
        // -v = max_b (n deg u_b + d b); gcd(n,d)=1 keeps the candidates distinct
        long best = -1;
        for (unsigned b = 0; b < c.n; ++b) {
            if (elt.coord(b).is_zero()) continue;
            long v = (long)c.n * elt.coord(b).degree() + (long)c.d * (long)b;
            best = std::max(best, v);
        }
        return -best;
    }
    long prec0 = 2L * c.genus + (long)c.n + 1;
    for (long prec = prec0; prec <= 8 * prec0; prec *= 2) {
        TruncSeries s = expand_at(pl, elt, prec);
        if (auto v = s.valuation()) return *v;
    }
    fail("PrecisionExhausted", "series expansion stayed zero beyond the precision cap");
}

// ------------------------------------------------------------------
// divisor of zeros
// ------------------------------------------------------------------
namespace {

bool is_constant_elt(const RingElement& elt) {
    for (unsigned b = 1; b < elt.curve()->n; ++b)
        if (!elt.coord(b).is_zero()) return false;
    return elt.coord(0).degree() <= 0;
}

UniPoly fiber_poly(const Curve& c, const FieldElement& cval) {
    return UniPoly::x_power(c.field, c.n) - UniPoly::constant(cval);
}

std::optional<unsigned> ramified_index_of(const Curve& c, const FieldElement& x0) {
    for (unsigned i = 0; i < c.d; ++i)
        if (x0 == -c.alphas[i]) return i + 1;
    return std::nullopt;
}

}  // namespace

ZeroLocusExtension zero_locus_extension(const std::vector<RingElement>& elts) {
    if (elts.empty()) fail("ZeroElement", "empty batch");
    const Curve& c = *elts[0].curve();
    const Field& F = c.field;
    // stage 1: split all norms
    unsigned long long rel = 1;
    std::vector<UniPoly> norms;
    for (const auto& e : elts) {
        if (e.is_zero()) fail("ZeroElement", "zero element in batch");
        if (is_constant_elt(e)) continue;
        UniPoly nm = norm_to_x(e);
        for (const auto& [fac, m] : factor(nm)) {
            (void)m;
            rel = lcm_u64(rel, (unsigned long long)fac.degree());
        }
        norms.push_back(std::move(nm));
    }
    Field E1 = rel == 1 ? F : canonical_extension(F.characteristic(), (unsigned)(rel * F.degree()));
    Embedding emb1 = rel == 1 ? Embedding::identity(F) : find_embedding(F, E1);
    Curve c1 = embed_curve(c, emb1);
    // stage 2: split every fiber above the found roots
    unsigned long long rel2 = 1;
    UniPoly rhs1 = c1.rhs();
    for (const auto& nm : norms) {
        for (const auto& x0 : poly_roots(nm.map_coeffs(emb1))) {
            if (ramified_index_of(c1, x0)) continue;
            for (const auto& [fac, m] : factor(fiber_poly(c1, rhs1.eval(x0)))) {
                (void)m;
                rel2 = lcm_u64(rel2, (unsigned long long)fac.degree());
            }
        }
    }
    if (rel2 == 1) return {c1, emb1};
    Field E2 = canonical_extension(F.characteristic(), (unsigned)(rel2 * E1.degree()));
    Embedding emb2 = find_embedding(E1, E2);
    Embedding total = compose(emb2, emb1);
    return {embed_curve(c, total), total};
}

Divisor divisor_of_zeros_in(const RingElement& elt, const Curve& ext_curve, const Embedding& emb) {
    if (elt.is_zero()) fail("ZeroElement", "divisor of the zero element");
    const Curve& c0 = *elt.curve();
    if (emb.from != c0.field || emb.to != ext_curve.field)
        fail("FieldMismatch", "embedding does not connect the element to the extension");
    Divisor dv(ext_curve.field);
    if (is_constant_elt(elt)) return dv;
    auto cp = std::make_shared<Curve>(ext_curve);
    std::vector<UniPoly> co;
    for (unsigned b = 0; b < c0.n; ++b) co.push_back(elt.coord(b).map_coeffs(emb));
    RingElement eltE(cp, std::move(co));
    UniPoly nm = norm_to_x(eltE);
    UniPoly rhsE = ext_curve.rhs();
    // distinct x-coordinates below the zeros
    std::vector<FieldElement> xs;
    for (const auto& [fac, m] : factor(nm)) {
        (void)m;
        if (fac.degree() != 1)
            fail("InternalInvariantViolation", "extension does not split the norm");
        xs.push_back(-fac.coeff(0));
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    for (const auto& x0 : xs) {
        if (auto ram = ramified_index_of(ext_curve, x0)) {
            long v = valuation(Place::ramified(*ram), eltE);
            if (v > 0) dv.add(Place::ramified(*ram), v);
            continue;
        }
        auto fiber = poly_roots(fiber_poly(ext_curve, rhsE.eval(x0)));
        if (fiber.size() != ext_curve.n)
            fail("InternalInvariantViolation", "extension does not split the fiber");
        for (const auto& y0 : fiber) {
            if (!eltE.eval(x0, y0).is_zero()) continue;
            long v = valuation(Place::affine(x0, y0), eltE);
            if (v > 0) dv.add(Place::affine(x0, y0), v);
        }
    }
    if (dv.degree() != -valuation(Place::infinity(), eltE))
        fail("InternalInvariantViolation", "zero count does not match the pole order at infinity");
    return dv;
}

DivisorOfZeros divisor_of_zeros(const RingElement& elt) {
    auto ext = zero_locus_extension({elt});
    Divisor dv = divisor_of_zeros_in(elt, ext.ext_curve, ext.emb);
    return {std::move(dv), std::move(ext.ext_curve), std::move(ext.emb)};
}

// ------------------------------------------------------------------
// translation
// ------------------------------------------------------------------
ShiftedCurve shift_to_origin(const Curve& c, const Place& p) {
    if (p.is_infinity()) fail("InfinityNotShiftable", "cannot translate infinity to the origin");
    auto [x0, y0] = place_coords(c, p);
    std::vector<FieldElement> shifted;
    shifted.reserve(c.d);
    for (const auto& a : c.alphas) shifted.push_back(a + x0);
    Curve sc = Curve::create(c.n, c.d, std::move(shifted), c.field);
    sc.zeta = c.zeta;  // keep the same choice of root of unity
    Place image = p.is_ramified() ? p : classify_point(sc, c.field.zero(), y0);
    return {std::move(sc), x0, image};
}

Place shift_place_by(const FieldElement& delta, const Place& p) {
    if (!p.is_affine()) return p;
    return Place::affine(p.x() + delta, p.y());
}

Divisor shift_divisor_by(const FieldElement& delta, const Divisor& dv) {
    Divisor r(dv.field());
    for (const auto& [p, k] : dv.terms()) r.add(shift_place_by(delta, p), k);
    return r;
}

}  // namespace zetadiv
