#pragma once
// Gap sets, partitions and weights attached to the (1-zeta)-torsion classes,
// with two independent routes to every number (direct enumeration and a
// generating series), a Riemann-Roch oracle for the gap sets on actual
// curves, the eigenvalue-multiplicity count on H^1, and one exact cyclotomic
// identity. The reported intersection multiplicity of the torsion class with
// the theta divisor is by definition the partition weight |lambda|.

#include "zetadiv/jac.hpp"

namespace zetadiv {

struct GapProfile {
    std::vector<unsigned> a;        // torsion label, d-1 residues in [0,n)
    std::vector<unsigned> gaps;     // subset of [0, 2g-1] of size g, ascending
    std::vector<unsigned> lambda;   // weakly decreasing, g parts, zeros kept
    unsigned long long weight = 0;  // |lambda| = sum (b_i - (i-1))
};

// Gap set of the class a_1 P_1 + ... + a_{d-1} P_{d-1} - (sum a) inf at
// infinity, computed from the pole-order spectrum E(e,m); |gaps| = g always.
// InvalidResidue on out-of-range labels.
GapProfile gap_set(unsigned n, unsigned d, const std::vector<unsigned>& a);

using SeriesZ = std::vector<long long>;  // index = power of T

// The pole-order generating series as an honest double sum over (e, m); the
// coefficients land in {0,1} because no two exponent pairs collide.
SeriesZ rho_series(unsigned n, unsigned d, const std::vector<unsigned>& a, unsigned precision);

// [T^(2g)] { T^2 (1+T+...)^2 rho_a } - g(g-1)/2; asserted equal to the
// gap_set weight (two independent formulas).
long long weight_from_series(unsigned n, unsigned d, const std::vector<unsigned>& a);

// sum of |lambda| over all n^(d-1) classes; asserted equal to the closed
// form g (n+1) n^(d-1) / 12, which is also the total intersection number.
long long weight_total(unsigned n, unsigned d);

struct IntersectionMultiplicity {
    long long value = 0;     // i(D) = |lambda_D|
    bool off_theta = false;  // weight 0 <=> the class misses the theta divisor
};
IntersectionMultiplicity intersection_multiplicity(unsigned n, unsigned d,
                                                   const std::vector<unsigned>& a);

// Riemann-Roch route to the same gap set on an actual curve: k is a gap iff
// h^0(D + k inf) = h^0(D + (k-1) inf), computed through rr_space.
std::vector<unsigned> gap_set_oracle(const Curve& c, const std::vector<unsigned>& a);

// Each eigenvalue zeta^k on H^1 has multiplicity d-1, counted through the
// monomial differential basis x^(a-1) y^(-b) dx; total 2g.
bool charpoly_multiplicity_check(unsigned n, unsigned d);

// ------------------------------------------------------------------
// Exact rationals (the only non-finite-field arithmetic in the library,
// used for one cyclotomic identity).
// ------------------------------------------------------------------
struct Rational {
    long long num = 0;
    long long den = 1;  // > 0, gcd(num, den) = 1

    Rational() = default;
    Rational(long long n, long long d = 1);
    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    Rational operator-() const { return Rational(-num, den); }
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool is_zero() const { return num == 0; }
    std::string to_string() const;
};

// Cyclotomic polynomial Phi_n, integer coefficients ascending.
std::vector<long long> cyclotomic(unsigned n);

// sum_{i=1}^{n-1} 1/((1 - zeta^i)(1 - zeta^-i)) evaluated exactly in
// Q[T]/Phi_n(T); asserted equal to (n^2 - 1)/12 and returned.
Rational csc_sum_check(unsigned n);

}  // namespace zetadiv
