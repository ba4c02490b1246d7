#include "zetadiv/gaps.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace zetadiv {

// ------------------------------------------------------------------
// gap sets
// ------------------------------------------------------------------
namespace {

void check_label(unsigned n, unsigned d, const std::vector<unsigned>& a) {
    if (a.size() + 1 != d) fail("InvalidResidue", "expected d-1 residues");
    for (unsigned v : a)
        if (v >= n) fail("InvalidResidue", "residue out of range");
}

}  // namespace

GapProfile gap_set(unsigned n, unsigned d, const std::vector<unsigned>& a) {
    check_label(n, d, a);
    unsigned g = (n - 1) * (d - 1) / 2;
    // membership in S: i belongs iff i >= E(e_i, 0) with e_i the residue-class
    // representative determined by i = A + d e (mod n)
    std::vector<long long> start(n, 0);
    for (unsigned e = 0; e < n; ++e) {
        long long A = 0, F = 0;
        for (unsigned v : a) {
            A += v;
            F += (v + e) / n;
        }
        start[e] = A + (long long)d * e - (long long)n * F;
    }
    GapProfile out;
    out.a = a;
    for (long long i = 0; i < 2LL * g; ++i) {
        bool in_s = false;
        for (unsigned e = 0; e < n && !in_s; ++e)
            if (i >= start[e] && (i - start[e]) % n == 0) in_s = true;
        if (!in_s) out.gaps.push_back((unsigned)i);
    }
    if (out.gaps.size() != g)
        fail("InternalInvariantViolation", "gap count differs from the genus");
    out.lambda.reserve(g);
    for (unsigned i = 0; i < g; ++i) {
        // lambda_i = b_{g-i} - (g-1-i) with gaps ascending
        unsigned b = out.gaps[g - 1 - i];
        out.lambda.push_back(b - (g - 1 - i));
        out.weight += b - (g - 1 - i);
    }
    return out;
}

SeriesZ rho_series(unsigned n, unsigned d, const std::vector<unsigned>& a, unsigned precision) {
    check_label(n, d, a);
    SeriesZ s(precision, 0);
    long long A = 0;
    for (unsigned v : a) A += v;
    for (unsigned e = 0; e < n; ++e) {
        long long F = 0;
        for (unsigned v : a) F += (v + e) / n;
        for (long long m = 0;; ++m) {
            long long exp = A + (long long)n * (m - F) + (long long)d * e;
            if (exp >= (long long)precision) break;
            if (exp >= 0) s[(size_t)exp] += 1;
        }
    }
    return s;
}

long long weight_from_series(unsigned n, unsigned d, const std::vector<unsigned>& a) {
    unsigned g = (n - 1) * (d - 1) / 2;
    SeriesZ rho = rho_series(n, d, a, 2 * g + 1);
    long long acc = 0;
    for (long long i = 0; i + 2 <= 2LL * g; ++i) acc += (2LL * g - i - 1) * rho[(size_t)i];
    long long w = acc - (long long)g * (g - 1) / 2;
    if (w != (long long)gap_set(n, d, a).weight)
        fail("InternalInvariantViolation", "series weight disagrees with the gap-set weight");
    return w;
}

long long weight_total(unsigned n, unsigned d) {
    if (gcd_u64(n, d) != 1) fail("NotCoprime", "n and d must be coprime");
    long long g = (long long)(n - 1) * (d - 1) / 2;
    long long total = 0;
    std::vector<unsigned> a(d - 1, 0);
    for (;;) {
        total += (long long)gap_set(n, d, a).weight;
        size_t i = a.size();
        while (i > 0) {
            if (++a[i - 1] < n) break;
            a[i - 1] = 0;
            --i;
        }
        if (i == 0) break;
    }
    long long pw = 1;
    for (unsigned i = 0; i + 1 < d; ++i) pw *= n;
    long long closed_num = g * (long long)(n + 1) * pw;
    if (closed_num % 12 != 0)
        fail("InternalInvariantViolation", "closed form is not an integer");
    if (total != closed_num / 12)
        fail("InternalInvariantViolation", "total weight misses the closed form");
    return total;
}

IntersectionMultiplicity intersection_multiplicity(unsigned n, unsigned d,
                                                   const std::vector<unsigned>& a) {
    GapProfile p = gap_set(n, d, a);
    return {(long long)p.weight, p.weight == 0};
}

std::vector<unsigned> gap_set_oracle(const Curve& c, const std::vector<unsigned>& a) {
    check_label(c.n, c.d, a);
    TorsionClass t{a};
    Divisor D = torsion_divisor(c, t);
    unsigned g = c.genus;
    std::vector<unsigned> gaps;
    long long prev = -1;
    for (long long k = -1; k <= 2LL * g - 1; ++k) {
        Divisor dk = D;
        dk.add(Place::infinity(), k);
        long long h = rr_space(c, dk).dim;
        if (k >= 0 && h == prev) gaps.push_back((unsigned)k);
        prev = h;
    }
    return gaps;
}

bool charpoly_multiplicity_check(unsigned n, unsigned d) {
    if (gcd_u64(n, d) != 1) fail("NotCoprime", "n and d must be coprime");
    unsigned long long total = 0;
    for (unsigned k = 1; k < n; ++k) {
        unsigned count = 0;
        for (unsigned a = 1; a < d; ++a) {
            if (n * a < d * (n - k)) ++count;  // holomorphic piece, b = n - k
            if (n * a < d * k) ++count;        // conjugate piece, b = k
        }
        if (count != d - 1) return false;
        total += count;
    }
    return total == (unsigned long long)(n - 1) * (d - 1);
}

// ------------------------------------------------------------------
// exact rationals and the cyclotomic identity
// ------------------------------------------------------------------
namespace {

long long checked_mul(long long a, long long b) {
    __int128 v = (__int128)a * b;
    if (v > (__int128)INT64_MAX / 4 || v < (__int128)INT64_MIN / 4)
        fail("InternalInvariantViolation", "rational overflow");
    return (long long)v;
}

long long gcd_ll(long long a, long long b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

}  // namespace

Rational::Rational(long long n, long long d) {
    if (d == 0) fail("DivisionByZero", "rational with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    long long g = gcd_ll(n, d);
    if (g) {
        n /= g;
        d /= g;
    }
    num = n;
    den = d == 0 ? 1 : d;
}

Rational Rational::operator+(const Rational& o) const {
    return Rational(checked_mul(num, o.den) + checked_mul(o.num, den), checked_mul(den, o.den));
}
Rational Rational::operator-(const Rational& o) const { return *this + (-o); }
Rational Rational::operator*(const Rational& o) const {
    return Rational(checked_mul(num, o.num), checked_mul(den, o.den));
}
Rational Rational::operator/(const Rational& o) const {
    if (o.num == 0) fail("DivisionByZero", "division by zero rational");
    return Rational(checked_mul(num, o.den), checked_mul(den, o.num));
}

std::string Rational::to_string() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

std::vector<long long> cyclotomic(unsigned n) {
    // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d, exact integer division
    std::vector<long long> num(n + 1, 0);
    num[0] = -1;
    num[n] = 1;
    for (unsigned d = 1; d < n; ++d) {
        if (n % d) continue;
        std::vector<long long> phi = cyclotomic(d);
        // divide num by phi exactly
        std::vector<long long> q(num.size() - phi.size() + 1, 0);
        std::vector<long long> r = num;
        for (size_t i = q.size(); i-- > 0;) {
            long long c = r[i + phi.size() - 1];  // phi is monic
            q[i] = c;
            if (c)
                for (size_t j = 0; j < phi.size(); ++j) r[i + j] -= c * phi[j];
        }
        for (long long c : r)
            if (c) fail("InternalInvariantViolation", "cyclotomic division not exact");
        num = std::move(q);
    }
    return num;
}

namespace {

using RPoly = std::vector<Rational>;  // ascending, trimmed

void rp_trim(RPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

RPoly rp_mul(const RPoly& a, const RPoly& b) {
    if (a.empty() || b.empty()) return {};
    RPoly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    rp_trim(r);
    return r;
}

RPoly rp_sub(const RPoly& a, const RPoly& b) {
    RPoly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < r.size(); ++i) {
        Rational x = i < a.size() ? a[i] : Rational();
        Rational y = i < b.size() ? b[i] : Rational();
        r[i] = x - y;
    }
    rp_trim(r);
    return r;
}

void rp_divmod(const RPoly& a, const RPoly& b, RPoly& q, RPoly& r) {
    r = a;
    rp_trim(r);
    q.clear();
    if (b.empty()) fail("DivisionByZero", "rational polynomial division by zero");
    if (r.size() < b.size()) return;
    q.assign(r.size() - b.size() + 1, Rational());
    while (r.size() >= b.size()) {
        size_t sh = r.size() - b.size();
        Rational c = r.back() / b.back();
        q[sh] = c;
        for (size_t j = 0; j < b.size(); ++j) r[sh + j] = r[sh + j] - c * b[j];
        rp_trim(r);
        if (r.empty()) break;
    }
    rp_trim(q);
}

RPoly rp_mod(const RPoly& a, const RPoly& b) {
    RPoly q, r;
    rp_divmod(a, b, q, r);
    return r;
}

// inverse of a modulo m (coprime) via extended Euclid
RPoly rp_invmod(const RPoly& a, const RPoly& m) {
    RPoly r = m, nr = a;
    rp_trim(nr);
    RPoly t, nt{Rational(1)};
    while (!nr.empty()) {
        RPoly q, rem;
        rp_divmod(r, nr, q, rem);
        RPoly newt = rp_sub(t, rp_mul(q, nt));
        r = nr;
        t = nt;
        nr = rem;
        nt = newt;
    }
    if (r.size() != 1) fail("DivisionByZero", "element not invertible modulo the cyclotomic");
    Rational scale = Rational(1) / r[0];
    for (auto& c : t) c = c * scale;
    return rp_mod(t, m);
}

}  // namespace

Rational csc_sum_check(unsigned n) {
    if (n < 2) fail("InvalidResidue", "need n >= 2");
    auto phi_int = cyclotomic(n);
    RPoly phi;
    for (long long c : phi_int) phi.emplace_back(c);
    auto tpow = [&](unsigned e) {
        RPoly p(e + 1);
        p[e] = Rational(1);
        return rp_mod(p, phi);
    };
    RPoly one{Rational(1)};
    RPoly acc;
    for (unsigned i = 1; i < n; ++i) {
        RPoly u = rp_mul(rp_sub(one, tpow(i)), rp_sub(one, tpow(n - i)));
        u = rp_mod(u, phi);
        acc = rp_mod(rp_sub(acc, rp_mul(RPoly{Rational(-1)}, rp_invmod(u, phi))), phi);
    }
    rp_trim(acc);
    if (acc.size() > 1)
        fail("InternalInvariantViolation", "cyclotomic sum did not reduce to a rational");
    Rational value = acc.empty() ? Rational() : acc[0];
    Rational expect = Rational((long long)n * n - 1, 12);
    if (!(value == expect))
        fail("InternalInvariantViolation", "cyclotomic sum misses (n^2-1)/12");
    return value;
}

}  // namespace zetadiv
