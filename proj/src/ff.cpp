#include "zetadiv/ff.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace zetadiv {

unsigned long long gcd_u64(unsigned long long a, unsigned long long b) {
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

unsigned long long lcm_u64(unsigned long long a, unsigned long long b) {
    if (a == 0 || b == 0) return 0;
    return a / gcd_u64(a, b) * b;
}

// ------------------------------------------------------------------
// BigUInt
// ------------------------------------------------------------------
BigUInt BigUInt::from(uint64_t v) {
    BigUInt r;
    if (v) r.limbs.push_back(v);
    return r;
}

BigUInt BigUInt::power(uint64_t base, unsigned exp) {
    BigUInt r = from(1);
    for (unsigned i = 0; i < exp; ++i) r.mul_small(base);
    return r;
}

void BigUInt::trim() {
    while (!limbs.empty() && limbs.back() == 0) limbs.pop_back();
}

void BigUInt::mul_small(uint64_t m) {
    if (m == 0) {
        limbs.clear();
        return;
    }
    unsigned __int128 carry = 0;
    for (auto& l : limbs) {
        unsigned __int128 v = (unsigned __int128)l * m + carry;
        l = (uint64_t)v;
        carry = v >> 64;
    }
    while (carry) {
        limbs.push_back((uint64_t)carry);
        carry >>= 64;
    }
}

void BigUInt::add_small(uint64_t a) {
    size_t i = 0;
    while (a) {
        if (i == limbs.size()) limbs.push_back(0);
        unsigned __int128 v = (unsigned __int128)limbs[i] + a;
        limbs[i] = (uint64_t)v;
        a = (uint64_t)(v >> 64);
        ++i;
    }
}

void BigUInt::sub_small(uint64_t s) {
    size_t i = 0;
    while (s) {
        if (i >= limbs.size()) fail("InternalInvariantViolation", "BigUInt underflow");
        if (limbs[i] >= s) {
            limbs[i] -= s;
            s = 0;
        } else {
            limbs[i] = (uint64_t)(((unsigned __int128)1 << 64) + limbs[i] - s);
            s = 1;  // borrow
        }
        ++i;
    }
    trim();
}

uint64_t BigUInt::div_small(uint64_t d) {
    unsigned __int128 rem = 0;
    for (size_t i = limbs.size(); i-- > 0;) {
        unsigned __int128 cur = (rem << 64) | limbs[i];
        limbs[i] = (uint64_t)(cur / d);
        rem = cur % d;
    }
    trim();
    return (uint64_t)rem;
}

uint64_t BigUInt::mod_small(uint64_t d) const {
    unsigned __int128 rem = 0;
    for (size_t i = limbs.size(); i-- > 0;) rem = ((rem << 64) | limbs[i]) % d;
    return (uint64_t)rem;
}

size_t BigUInt::bit_length() const {
    if (limbs.empty()) return 0;
    uint64_t top = limbs.back();
    size_t b = 0;
    while (top) {
        ++b;
        top >>= 1;
    }
    return (limbs.size() - 1) * 64 + b;
}

bool BigUInt::bit(size_t i) const {
    size_t limb = i / 64;
    if (limb >= limbs.size()) return false;
    return (limbs[limb] >> (i % 64)) & 1;
}

std::string BigUInt::to_string() const {
    if (is_zero()) return "0";
    BigUInt t = *this;
    std::string s;
    while (!t.is_zero()) s.push_back(char('0' + t.div_small(10)));
    std::reverse(s.begin(), s.end());
    return s;
}

// ------------------------------------------------------------------
// Low-level coefficient-vector arithmetic over F_p.
// Vectors are little-endian coefficient lists, not necessarily trimmed.
// ------------------------------------------------------------------
namespace {

using PV = std::vector<uint32_t>;

void pv_trim(PV& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}


PV pv_sub(const PV& a, const PV& b, uint32_t p) {
    PV r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        uint64_t x = i < a.size() ? a[i] : 0;
        uint64_t y = i < b.size() ? b[i] : 0;
        r[i] = (uint32_t)(x >= y ? x - y : x + p - y);
    }
    pv_trim(r);
    return r;
}

PV pv_mul(const PV& a, const PV& b, uint32_t p) {
    if (a.empty() || b.empty()) return {};
    PV r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        unsigned __int128 ai = a[i];
        for (size_t j = 0; j < b.size(); ++j) {
            if (!b[j]) continue;
            uint64_t v = (uint64_t)((ai * b[j] + r[i + j]) % p);
            r[i + j] = (uint32_t)v;
        }
    }
    pv_trim(r);
    return r;
}


uint32_t u32_inv_mod(uint32_t a, uint32_t p) {
    // extended Euclid on machine integers
    int64_t t = 0, nt = 1, r = p, nr = a % p;
    while (nr) {
        int64_t q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    if (r != 1) fail("DivisionByZero", "not invertible mod p");
    if (t < 0) t += p;
    return (uint32_t)t;
}

// reduce a modulo the monic polynomial m (degree >= 1)
void pv_redmod(PV& a, const PV& m, uint32_t p) {
    size_t k = m.size() - 1;
    pv_trim(a);
    while (a.size() > k) {
        uint32_t lead = a.back();
        size_t sh = a.size() - 1 - k;
        if (lead) {
            for (size_t i = 0; i < k; ++i) {
                if (!m[i]) continue;
                uint64_t v = (uint64_t)lead * m[i] % p;
                uint64_t cur = a[i + sh];
                a[i + sh] = (uint32_t)(cur >= v ? cur - v : cur + p - v);
            }
        }
        a.pop_back();
        pv_trim(a);
    }
}


// a = q*b + rem over F_p[x]; b nonzero
void pv_divmod(const PV& a, const PV& b, uint32_t p, PV& q, PV& rem) {
    rem = a;
    pv_trim(rem);
    q.clear();
    if (rem.size() < b.size()) return;
    q.assign(rem.size() - b.size() + 1, 0);
    uint32_t linv = u32_inv_mod(b.back(), p);
    while (rem.size() >= b.size()) {
        size_t sh = rem.size() - b.size();
        uint64_t c = (uint64_t)rem.back() * linv % p;
        q[sh] = (uint32_t)c;
        for (size_t j = 0; j < b.size(); ++j) {
            uint64_t v = c * b[j] % p;
            uint64_t cur = rem[sh + j];
            rem[sh + j] = (uint32_t)(cur >= v ? cur - v : cur + p - v);
        }
        pv_trim(rem);
        if (rem.empty()) break;
    }
    pv_trim(q);
}

// inverse of a modulo the monic m via extended Euclid; a nonzero mod m
PV pv_invmod(const PV& a0, const PV& m, uint32_t p) {
    PV r = m, nr = a0;
    pv_trim(nr);
    PV t, nt = {1};
    while (!nr.empty()) {
        PV q, rem;
        pv_divmod(r, nr, p, q, rem);
        PV newt = pv_sub(t, pv_mul(q, nt, p), p);
        r = nr;
        t = nt;
        nr = rem;
        nt = newt;
    }
    if (r.size() != 1) fail("DivisionByZero", "element not invertible");
    uint32_t scale = u32_inv_mod(r[0], p);
    PV res = t;
    for (auto& c : res) c = (uint32_t)((uint64_t)c * scale % p);
    pv_redmod(res, m, p);
    return res;
}

}  // namespace

// ------------------------------------------------------------------
// Field
// ------------------------------------------------------------------
Field Field::prime(uint32_t p) {
    if (p < 3 || p >= (1u << 31)) fail("InvalidPrime", "need an odd prime below 2^31");
    if (p % 2 == 0) fail("InvalidPrime", "p must be odd");
    for (uint64_t q = 3; q * q <= p; q += 2)
        if (p % q == 0) fail("InvalidPrime", "p is not prime");
    auto d = std::make_shared<FieldDesc>();
    d->p = p;
    d->modulus = {0, 1};
    return Field(std::move(d));
}

Field Field::extension(uint32_t p, std::vector<uint32_t> modulus) {
    Field base = prime(p);
    if (modulus.size() < 3) fail("ReducibleModulus", "extension modulus must have degree >= 2");
    for (auto& c : modulus) c %= p;
    if (modulus.back() != 1) fail("ReducibleModulus", "modulus must be monic");
    std::vector<FieldElement> cs;
    cs.reserve(modulus.size());
    for (uint32_t c : modulus) cs.push_back(base.from_int(c));
    UniPoly f(base, std::move(cs));
    if (!is_irreducible(f)) fail("ReducibleModulus", "modulus is reducible over F_p");
    auto d = std::make_shared<FieldDesc>();
    d->p = p;
    d->modulus = std::move(modulus);
    return Field(std::move(d));
}

BigUInt Field::order() const { return BigUInt::power(d_->p, degree()); }

FieldElement Field::zero() const { return FieldElement(*this, std::vector<uint32_t>(degree(), 0)); }

FieldElement Field::one() const { return from_int(1); }

FieldElement Field::from_int(long long v) const {
    long long p = d_->p;
    long long m = v % p;
    if (m < 0) m += p;
    std::vector<uint32_t> c(degree(), 0);
    c[0] = (uint32_t)m;
    return FieldElement(*this, std::move(c));
}

FieldElement Field::from_digits(std::vector<uint32_t> c) const {
    if (c.size() > degree()) fail("FieldMismatch", "too many coefficients for this field");
    for (auto& x : c) x %= d_->p;
    c.resize(degree(), 0);
    return FieldElement(*this, std::move(c));
}

FieldElement Field::from_index(uint64_t idx) const {
    std::vector<uint32_t> c(degree(), 0);
    for (unsigned i = 0; i < degree() && idx; ++i) {
        c[i] = (uint32_t)(idx % d_->p);
        idx /= d_->p;
    }
    if (idx) fail("FieldMismatch", "element index out of range for this field");
    return FieldElement(*this, std::move(c));
}

FieldElement Field::generator() const {
    if (is_prime_field()) fail("FieldMismatch", "prime field has no extension generator");
    std::vector<uint32_t> c(degree(), 0);
    c[1] = 1;
    return FieldElement(*this, std::move(c));
}

FieldElement Field::random_element(std::mt19937_64& rng) const {
    std::vector<uint32_t> c(degree());
    for (auto& x : c) x = (uint32_t)(rng() % d_->p);
    return FieldElement(*this, std::move(c));
}

bool Field::operator==(const Field& o) const {
    if (d_ == o.d_) return true;
    if (!d_ || !o.d_) return false;
    return d_->p == o.d_->p && d_->modulus == o.d_->modulus;
}

std::string Field::to_string() const {
    if (!valid()) return "<none>";
    std::ostringstream os;
    os << "F_" << d_->p;
    if (!is_prime_field()) {
        os << "[t]/(";
        bool first = true;
        for (size_t i = d_->modulus.size(); i-- > 0;) {
            uint32_t c = d_->modulus[i];
            if (!c) continue;
            if (!first) os << "+";
            first = false;
            if (i == 0 || c != 1) os << c;
            if (i >= 1) {
                if (c != 1) os << "*";
                os << "t";
                if (i > 1) os << "^" << i;
            }
        }
        os << ")";
    }
    return os.str();
}

// ------------------------------------------------------------------
// FieldElement
// ------------------------------------------------------------------
namespace {
void require_same_field(const FieldElement& a, const FieldElement& b) {
    if (a.field() != b.field()) fail("FieldMismatch", "operands live in different fields");
}
}  // namespace

bool FieldElement::is_zero() const {
    for (auto c : c_)
        if (c) return false;
    return true;
}

bool FieldElement::is_one() const {
    if (c_.empty() || c_[0] != 1) return false;
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i]) return false;
    return true;
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    require_same_field(a, b);
    uint32_t p = a.f_.characteristic();
    std::vector<uint32_t> c(a.c_.size());
    for (size_t i = 0; i < c.size(); ++i) {
        uint64_t v = (uint64_t)a.c_[i] + b.c_[i];
        c[i] = (uint32_t)(v >= p ? v - p : v);
    }
    return FieldElement(a.f_, std::move(c));
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    require_same_field(a, b);
    uint32_t p = a.f_.characteristic();
    std::vector<uint32_t> c(a.c_.size());
    for (size_t i = 0; i < c.size(); ++i)
        c[i] = a.c_[i] >= b.c_[i] ? a.c_[i] - b.c_[i] : a.c_[i] + p - b.c_[i];
    return FieldElement(a.f_, std::move(c));
}

FieldElement FieldElement::operator-() const {
    uint32_t p = f_.characteristic();
    std::vector<uint32_t> c(c_.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = c_[i] ? p - c_[i] : 0;
    return FieldElement(f_, std::move(c));
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    require_same_field(a, b);
    uint32_t p = a.f_.characteristic();
    if (a.f_.degree() == 1) {
        uint64_t v = (uint64_t)((unsigned __int128)a.c_[0] * b.c_[0] % p);
        return FieldElement(a.f_, {(uint32_t)v});
    }
    PV r = pv_mul(a.c_, b.c_, p);
    pv_redmod(r, a.f_.modulus(), p);
    r.resize(a.f_.degree(), 0);
    return FieldElement(a.f_, std::move(r));
}

FieldElement FieldElement::inv() const {
    if (is_zero()) fail("DivisionByZero", "inverse of zero");
    uint32_t p = f_.characteristic();
    if (f_.degree() == 1) return FieldElement(f_, {u32_inv_mod(c_[0], p)});
    PV r = pv_invmod(c_, f_.modulus(), p);
    r.resize(f_.degree(), 0);
    return FieldElement(f_, std::move(r));
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inv(); }

FieldElement FieldElement::pow(uint64_t e) const {
    FieldElement r = f_.one(), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

FieldElement FieldElement::pow(const BigUInt& e) const {
    FieldElement r = f_.one();
    if (e.is_zero()) return r;
    for (size_t i = e.bit_length(); i-- > 0;) {
        r = r * r;
        if (e.bit(i)) r = r * *this;
    }
    return r;
}

int FieldElement::cmp(const FieldElement& a, const FieldElement& b) {
    require_same_field(a, b);
    for (size_t i = a.c_.size(); i-- > 0;) {
        if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i] ? -1 : 1;
    }
    return 0;
}

bool FieldElement::operator==(const FieldElement& o) const {
    if (!f_.valid() && !o.f_.valid()) return true;
    return cmp(*this, o) == 0;
}

uint64_t FieldElement::index() const {
    uint64_t v = 0;
    uint32_t p = f_.characteristic();
    for (size_t i = c_.size(); i-- > 0;) {
        if (v > (UINT64_MAX - c_[i]) / p) fail("FieldMismatch", "element index exceeds 64 bits");
        v = v * p + c_[i];
    }
    return v;
}

std::string FieldElement::to_string() const {
    if (f_.is_prime_field()) return std::to_string(c_.empty() ? 0 : c_[0]);
    std::ostringstream os;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
        uint32_t c = c_[i];
        if (!c) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0 || c != 1) os << c;
        if (i >= 1) {
            if (c != 1) os << "*";
            os << "t";
            if (i > 1) os << "^" << i;
        }
    }
    if (first) os << "0";
    return os.str();
}

// ------------------------------------------------------------------
// UniPoly
// ------------------------------------------------------------------
UniPoly::UniPoly(Field f, std::vector<FieldElement> coeffs) : f_(std::move(f)), c_(std::move(coeffs)) {
    for (const auto& c : c_)
        if (c.field() != f_) fail("FieldMismatch", "polynomial coefficient in the wrong field");
    trim();
}

void UniPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

UniPoly UniPoly::x_power(const Field& f, unsigned e) {
    std::vector<FieldElement> c(e + 1, f.zero());
    c[e] = f.one();
    return UniPoly(f, std::move(c));
}

UniPoly UniPoly::constant(const FieldElement& c) { return UniPoly(c.field(), {c}); }

UniPoly UniPoly::linear(const FieldElement& c0, const FieldElement& c1) {
    return UniPoly(c0.field(), {c0, c1});
}

const FieldElement& UniPoly::coeff(size_t i) const {
    static thread_local FieldElement zero_cache;
    if (i < c_.size()) return c_[i];
    zero_cache = f_.zero();
    return zero_cache;
}

const FieldElement& UniPoly::leading() const {
    if (c_.empty()) fail("ZeroPolynomial", "zero polynomial has no leading coefficient");
    return c_.back();
}

UniPoly UniPoly::operator-() const {
    UniPoly r(f_);
    r.c_.reserve(c_.size());
    for (const auto& c : c_) r.c_.push_back(-c);
    return r;
}

UniPoly UniPoly::derivative() const {
    UniPoly r(f_);
    for (size_t i = 1; i < c_.size(); ++i) r.c_.push_back(f_.from_int((long long)i) * c_[i]);
    r.trim();
    return r;
}

UniPoly UniPoly::monic() const {
    if (is_zero()) fail("ZeroPolynomial", "cannot normalize zero polynomial");
    if (leading().is_one()) return *this;
    FieldElement inv = leading().inv();
    UniPoly r(f_);
    r.c_.reserve(c_.size());
    for (const auto& c : c_) r.c_.push_back(inv * c);
    return r;
}

FieldElement UniPoly::eval(const FieldElement& x0) const {
    FieldElement r = f_.zero();
    for (size_t i = c_.size(); i-- > 0;) r = r * x0 + c_[i];
    return r;
}

UniPoly UniPoly::map_coeffs(const Embedding& e) const {
    UniPoly r(e.to);
    r.c_.reserve(c_.size());
    for (const auto& c : c_) r.c_.push_back(e(c));
    return r;
}

int UniPoly::cmp(const UniPoly& a, const UniPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
    for (size_t i = a.c_.size(); i-- > 0;) {
        int c = FieldElement::cmp(a.c_[i], b.c_[i]);
        if (c) return c;
    }
    return 0;
}

std::string UniPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    bool ext = !f_.is_prime_field();
    for (size_t i = c_.size(); i-- > 0;) {
        if (c_[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        std::string cs = c_[i].to_string();
        bool unit = c_[i].is_one();
        if (i == 0) {
            os << (ext && cs.find('+') != std::string::npos ? "(" + cs + ")" : cs);
        } else {
            if (!unit) {
                os << (ext && cs.find('+') != std::string::npos ? "(" + cs + ")" : cs) << "*";
            }
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    UniPoly r(a.f_);
    size_t n = std::max(a.c_.size(), b.c_.size());
    r.c_.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        FieldElement x = i < a.c_.size() ? a.c_[i] : a.f_.zero();
        FieldElement y = i < b.c_.size() ? b.c_[i] : a.f_.zero();
        r.c_.push_back(x + y);
    }
    r.trim();
    return r;
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) {
    UniPoly r(a.f_);
    size_t n = std::max(a.c_.size(), b.c_.size());
    r.c_.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        FieldElement x = i < a.c_.size() ? a.c_[i] : a.f_.zero();
        FieldElement y = i < b.c_.size() ? b.c_[i] : a.f_.zero();
        r.c_.push_back(x - y);
    }
    r.trim();
    return r;
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly(a.f_);
    UniPoly r(a.f_);
    r.c_.assign(a.c_.size() + b.c_.size() - 1, a.f_.zero());
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) {
            if (b.c_[j].is_zero()) continue;
            r.c_[i + j] = r.c_[i + j] + a.c_[i] * b.c_[j];
        }
    }
    r.trim();
    return r;
}

UniPoly operator*(const FieldElement& c, const UniPoly& a) {
    UniPoly r(a.f_);
    r.c_.reserve(a.c_.size());
    for (const auto& x : a.c_) r.c_.push_back(c * x);
    r.trim();
    return r;
}

void poly_divmod(const UniPoly& a, const UniPoly& b, UniPoly& q, UniPoly& r) {
    if (b.is_zero()) fail("DivisionByZero", "polynomial division by zero");
    if (a.field() != b.field()) fail("FieldMismatch", "polynomials over different fields");
    q = UniPoly(a.field());
    r = a;
    int db = b.degree();
    if (a.degree() < db) return;
    FieldElement linv = b.leading().inv();
    q.c_.assign(a.degree() - db + 1, a.field().zero());
    while (!r.is_zero() && r.degree() >= db) {
        int sh = r.degree() - db;
        FieldElement c = r.leading() * linv;
        q.c_[sh] = c;
        for (int i = 0; i <= db; ++i) r.c_[sh + i] = r.c_[sh + i] - c * b.c_[i];
        r.trim();
    }
    q.trim();
}

UniPoly poly_mod(const UniPoly& a, const UniPoly& b) {
    UniPoly q, r;
    poly_divmod(a, b, q, r);
    return r;
}

UniPoly poly_div_exact(const UniPoly& a, const UniPoly& b) {
    UniPoly q, r;
    poly_divmod(a, b, q, r);
    if (!r.is_zero()) fail("InternalInvariantViolation", "expected exact polynomial division");
    return q;
}

UniPoly poly_gcd(const UniPoly& a, const UniPoly& b) {
    UniPoly x = a, y = b;
    while (!y.is_zero()) {
        UniPoly r = poly_mod(x, y);
        x = y;
        y = r;
    }
    if (x.is_zero()) return x;
    return x.monic();
}

UniPoly poly_pow_mod(const UniPoly& base, const BigUInt& e, const UniPoly& m) {
    UniPoly r = UniPoly::constant(base.field().one());
    r = poly_mod(r, m);
    if (e.is_zero()) return r;
    UniPoly b = poly_mod(base, m);
    for (size_t i = e.bit_length(); i-- > 0;) {
        r = poly_mod(r * r, m);
        if (e.bit(i)) r = poly_mod(r * b, m);
    }
    return r;
}

// ------------------------------------------------------------------
// Factorization
// ------------------------------------------------------------------
namespace {

// p-th root of f when f' = 0, i.e. f = g(x^p); needs coefficientwise p-th
// roots, which in F_{p^k} are c -> c^(p^(k-1)).
UniPoly poly_pth_root(const UniPoly& f) {
    const Field& F = f.field();
    uint32_t p = F.characteristic();
    BigUInt e = BigUInt::power(p, F.degree() - 1);
    std::vector<FieldElement> cs;
    for (int i = 0; i <= f.degree(); i += (int)p) cs.push_back(f.coeff((size_t)i).pow(e));
    return UniPoly(F, std::move(cs));
}

// squarefree decomposition of a monic f; appends (g, m*scale) pairs
void squarefree_decompose(const UniPoly& f, unsigned scale,
                          std::vector<std::pair<UniPoly, unsigned>>& out) {
    if (f.degree() == 0) return;
    uint32_t p = f.field().characteristic();
    UniPoly d = f.derivative();
    if (d.is_zero()) {
        squarefree_decompose(poly_pth_root(f), scale * p, out);
        return;
    }
    UniPoly c = poly_gcd(f, d);
    UniPoly w = poly_div_exact(f, c);
    unsigned i = 1;
    while (w.degree() > 0) {
        UniPoly y = poly_gcd(w, c);
        UniPoly fac = poly_div_exact(w, y);
        if (fac.degree() > 0) out.emplace_back(fac.monic(), i * scale);
        w = y;
        c = poly_div_exact(c, y);
        ++i;
    }
    if (c.degree() > 0) squarefree_decompose(poly_pth_root(c), scale * p, out);
}

// distinct-degree: f squarefree monic -> list of (product, factor degree)
std::vector<std::pair<UniPoly, unsigned>> distinct_degree(const UniPoly& f0) {
    std::vector<std::pair<UniPoly, unsigned>> res;
    UniPoly f = f0;
    const Field& F = f.field();
    BigUInt q = F.order();
    UniPoly x = UniPoly::x_power(F, 1);
    UniPoly h = poly_mod(x, f);
    unsigned e = 0;
    while (f.degree() > 0 && 2 * (e + 1) <= (unsigned)f.degree()) {
        ++e;
        h = poly_pow_mod(h, q, f);
        UniPoly g = poly_gcd(h - x, f);
        if (g.degree() > 0) {
            res.emplace_back(g, e);
            f = poly_div_exact(f, g);
            h = poly_mod(h, f);
        }
    }
    if (f.degree() > 0) res.emplace_back(f, (unsigned)f.degree());
    return res;
}

// equal-degree splitting (Cantor-Zassenhaus, p odd)
void equal_degree(const UniPoly& h, unsigned e, std::mt19937_64& rng, std::vector<UniPoly>& out) {
    if ((unsigned)h.degree() == e) {
        out.push_back(h.monic());
        return;
    }
    const Field& F = h.field();
    BigUInt exp = BigUInt::power(F.characteristic(), F.degree() * e);
    exp.sub_small(1);
    exp.div_small(2);
    for (;;) {
        std::vector<FieldElement> cs;
        for (int i = 0; i < h.degree(); ++i) cs.push_back(F.random_element(rng));
        UniPoly a(F, std::move(cs));
        if (a.is_zero()) continue;
        UniPoly g = poly_gcd(a, h);
        if (g.degree() == 0) {
            UniPoly b = poly_pow_mod(a, exp, h);
            g = poly_gcd(b - UniPoly::constant(F.one()), h);
        }
        if (g.degree() > 0 && g.degree() < h.degree()) {
            equal_degree(g, e, rng, out);
            equal_degree(poly_div_exact(h, g), e, rng, out);
            return;
        }
    }
}

}  // namespace

std::vector<std::pair<UniPoly, unsigned>> factor(const UniPoly& f, uint64_t seed) {
    if (f.is_zero()) fail("ZeroPolynomial", "cannot factor the zero polynomial");
    std::vector<std::pair<UniPoly, unsigned>> res;
    if (f.degree() == 0) return res;
    std::mt19937_64 rng(seed);
    std::vector<std::pair<UniPoly, unsigned>> sqf;
    squarefree_decompose(f.monic(), 1, sqf);
    for (const auto& [g, mult] : sqf) {
        for (const auto& [prod, e] : distinct_degree(g)) {
            std::vector<UniPoly> irr;
            equal_degree(prod, e, rng, irr);
            for (auto& q : irr) res.emplace_back(std::move(q), mult);
        }
    }
    std::sort(res.begin(), res.end(), [](const auto& a, const auto& b) {
        int c = UniPoly::cmp(a.first, b.first);
        if (c) return c < 0;
        return a.second < b.second;
    });
    return res;
}

bool is_irreducible(const UniPoly& f) {
    if (f.is_zero()) fail("ZeroPolynomial", "zero polynomial");
    int n = f.degree();
    if (n <= 0) return false;
    if (n == 1) return true;
    const Field& F = f.field();
    BigUInt q = F.order();
    UniPoly x = UniPoly::x_power(F, 1);
    UniPoly fm = f.monic();
    // x^(q^(n/l)) must avoid fixed points for every prime l | n, and
    // x^(q^n) = x.
    std::vector<unsigned> prime_divs;
    {
        unsigned m = (unsigned)n;
        for (unsigned d = 2; d * d <= m; ++d)
            while (m % d == 0) {
                if (prime_divs.empty() || prime_divs.back() != d) prime_divs.push_back(d);
                m /= d;
            }
        if (m > 1) prime_divs.push_back(m);
    }
    // iterate h_e = x^(q^e) mod f
    std::vector<UniPoly> frob(n + 1, UniPoly(F));
    frob[0] = poly_mod(x, fm);
    for (int e = 1; e <= n; ++e) frob[e] = poly_pow_mod(frob[e - 1], q, fm);
    if (!(frob[n] == poly_mod(x, fm))) return false;
    for (unsigned l : prime_divs) {
        UniPoly g = poly_gcd(frob[n / l] - x, fm);
        if (g.degree() != 0) return false;
    }
    return true;
}

std::vector<FieldElement> poly_roots(const UniPoly& f, uint64_t seed) {
    std::vector<FieldElement> roots;
    for (const auto& [fac, mult] : factor(f, seed)) {
        (void)mult;
        if (fac.degree() == 1) roots.push_back(-fac.coeff(0));  // monic x + c0
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

// ------------------------------------------------------------------
// canonical extensions
// ------------------------------------------------------------------
Field canonical_extension(uint32_t p, unsigned k) {
    if (k == 0) fail("FieldMismatch", "extension degree must be positive");
    if (k == 1) return Field::prime(p);
    static std::mutex mu;
    static std::map<std::pair<uint32_t, unsigned>, Field> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({p, k});
        if (it != cache.end()) return it->second;
    }
    Field base = Field::prime(p);
    // deterministic scan: x^k + (lower coefficients counted in base p)
    std::vector<uint32_t> low(k, 0);
    for (;;) {
        std::vector<FieldElement> cs;
        cs.reserve(k + 1);
        for (uint32_t c : low) cs.push_back(base.from_int(c));
        cs.push_back(base.one());
        UniPoly f(base, std::move(cs));
        if (is_irreducible(f)) {
            std::vector<uint32_t> mod(low);
            mod.push_back(1);
            Field ext = Field::extension(p, std::move(mod));
            std::lock_guard<std::mutex> lock(mu);
            cache.emplace(std::make_pair(p, k), ext);
            return ext;
        }
        // increment the base-p counter
        size_t i = 0;
        while (i < k && ++low[i] == p) low[i++] = 0;
        if (i == k) fail("InternalInvariantViolation", "no irreducible modulus found");
    }
}

// ------------------------------------------------------------------
// Embedding
// ------------------------------------------------------------------
Embedding Embedding::identity(const Field& f) {
    return Embedding{f, f, f.is_prime_field() ? f.one() : f.generator()};
}

FieldElement Embedding::operator()(const FieldElement& a) const {
    if (a.field() != from) fail("FieldMismatch", "embedding applied to foreign element");
    if (from.is_prime_field()) return to.from_int(a.digits().empty() ? 0 : a.digits()[0]);
    // same-field maps can still be nontrivial automorphisms (Frobenius powers)
    if (from == to && gen_image == from.generator()) return a;
    const auto& d = a.digits();
    FieldElement r = to.zero();
    for (size_t i = d.size(); i-- > 0;) r = r * gen_image + to.from_int(d[i]);
    return r;
}

Embedding compose(const Embedding& e2, const Embedding& e1) {
    if (e1.to != e2.from) fail("FieldMismatch", "non-composable embeddings");
    return Embedding{e1.from, e2.to, e2(e1.gen_image)};
}

namespace {
Embedding embedding_from_root(const Field& sub, const Field& big, const FieldElement& root) {
    return Embedding{sub, big, root};
}
}  // namespace

Embedding find_embedding(const Field& sub, const Field& big) {
    if (sub.characteristic() != big.characteristic())
        fail("NoEmbedding", "fields of different characteristic");
    if (sub == big) return Embedding::identity(sub);
    if (sub.is_prime_field()) return Embedding{sub, big, big.one()};
    if (big.degree() % sub.degree() != 0)
        fail("NoEmbedding", "subfield degree does not divide extension degree");
    Field base = Field::prime(sub.characteristic());
    std::vector<FieldElement> cs;
    for (uint32_t c : sub.modulus()) cs.push_back(big.from_int(c));
    UniPoly m(big, std::move(cs));
    auto roots = poly_roots(m);
    if (roots.empty()) fail("NoEmbedding", "modulus has no root in the target field");
    return embedding_from_root(sub, big, roots.front());
}

Embedding find_embedding_over(const Field& sub, const Field& big, const Embedding& base_in_sub,
                              const Embedding& base_in_big) {
    if (base_in_sub.from != base_in_big.from) fail("FieldMismatch", "embedding bases disagree");
    if (base_in_sub.to != sub || base_in_big.to != big)
        fail("FieldMismatch", "embedding chain endpoints disagree");
    if (sub.is_prime_field()) return Embedding{sub, big, big.one()};
    // no identity shortcut even when sub == big: the commuting map may be a
    // nontrivial Frobenius power, found below among the modulus roots
    std::vector<FieldElement> cs;
    for (uint32_t c : sub.modulus()) cs.push_back(big.from_int(c));
    UniPoly m(big, std::move(cs));
    for (const auto& root : poly_roots(m)) {
        Embedding cand = embedding_from_root(sub, big, root);
        if (base_in_sub.from.is_prime_field() ||
            cand(base_in_sub.gen_image) == base_in_big.gen_image)
            return cand;
    }
    fail("NoEmbedding", "no embedding commutes with the given base chain");
}

// ------------------------------------------------------------------
// roots of unity, n-th roots, splitting extensions
// ------------------------------------------------------------------
FieldElement primitive_nth_root(const Field& f, unsigned n) {
    if (n == 0) fail("NoRootOfUnity", "n must be positive");
    BigUInt qm1 = f.order();
    qm1.sub_small(1);
    if (qm1.mod_small(n) != 0) fail("NoRootOfUnity", "n does not divide q-1");
    if (n == 1) return f.one();
    UniPoly xn = UniPoly::x_power(f, n) - UniPoly::constant(f.one());
    std::vector<unsigned> prime_divs;
    {
        unsigned m = n;
        for (unsigned d = 2; d * d <= m; ++d)
            while (m % d == 0) {
                if (prime_divs.empty() || prime_divs.back() != d) prime_divs.push_back(d);
                m /= d;
            }
        if (m > 1) prime_divs.push_back(m);
    }
    for (const auto& r : poly_roots(xn)) {
        bool primitive = true;
        for (unsigned l : prime_divs)
            if (r.pow(n / l).is_one()) {
                primitive = false;
                break;
            }
        if (primitive) return r;
    }
    fail("NoRootOfUnity", "no primitive root found");  // unreachable when n | q-1
}

std::optional<FieldElement> nth_root(const FieldElement& a, unsigned n) {
    if (n == 0) fail("NotAnNthPower", "n must be positive");
    if (n % a.field().characteristic() == 0)
        fail("NotAnNthPower", "n must be coprime to the characteristic");
    if (a.is_zero()) return a.field().zero();
    UniPoly f = UniPoly::x_power(a.field(), n) - UniPoly::constant(a);
    auto roots = poly_roots(f);
    if (roots.empty()) return std::nullopt;
    return roots.front();
}

SplittingExtension splitting_extension(const Field& base, const std::vector<UniPoly>& fs) {
    unsigned long long deg = 1;
    for (const auto& f : fs) {
        if (f.field() != base) fail("FieldMismatch", "polynomial not over the stated base field");
        for (const auto& [fac, mult] : factor(f)) {
            (void)mult;
            deg = lcm_u64(deg, (unsigned long long)fac.degree());
        }
    }
    if (deg == 1) return SplittingExtension{base, Embedding::identity(base)};
    unsigned k = (unsigned)(deg * base.degree());
    Field ext = canonical_extension(base.characteristic(), k);
    return SplittingExtension{ext, find_embedding(base, ext)};
}

}  // namespace zetadiv
