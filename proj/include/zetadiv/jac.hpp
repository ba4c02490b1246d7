#pragma once
// The (1-zeta)-torsion subgroup in canonical coordinates, Riemann-Roch
// spaces L(D) computed by exact linear algebra, and the linear-equivalence
// oracle built on them: a degree-0 divisor is principal iff h^0 = 1, and the
// witness function is re-verified by valuations. Every "~" claim elsewhere
// in the library is checked against this oracle, never the other way round.

#include "zetadiv/curve.hpp"

namespace zetadiv {

// ------------------------------------------------------------------
// J[1 - zeta] bookkeeping: every class is a_1 P_1 + ... + a_{d-1} P_{d-1}
// - (sum a_i) inf with unique residues a_i in [0, n); the only relation on
// the full d-tuple is (1,...,1) = 0.
// ------------------------------------------------------------------
struct TorsionClass {
    std::vector<unsigned> a;  // length d-1
    bool operator==(const TorsionClass& o) const { return a == o.a; }
    bool operator<(const TorsionClass& o) const { return a < o.a; }
    std::string to_string() const;
};

std::vector<TorsionClass> torsion_enumerate(unsigned n, unsigned d);  // n^(d-1) classes, sorted
TorsionClass torsion_canonicalize(unsigned n, unsigned d, const std::vector<long long>& full);
TorsionClass torsion_add(unsigned n, const TorsionClass& a, const TorsionClass& b);
TorsionClass torsion_neg(unsigned n, const TorsionClass& a);
Divisor torsion_divisor(const Curve& c, const TorsionClass& t);  // degree 0

// ------------------------------------------------------------------
// Riemann-Roch spaces.
// ------------------------------------------------------------------
enum class DenominatorHint { Default, TimesY };

struct RRSpace {
    unsigned dim = 0;
    Curve curve;    // base change of the input (fibers of the support split here)
    Embedding emb;  // input field -> curve.field
    RingElement denominator;
    std::vector<RingElement> numerators;  // basis of L(D) is numerator/denominator
    // every finite place where the support of D or a zero of the denominator
    // sits; poles of any basis function are confined to these and infinity
    std::vector<Place> support_places;
};

// L(D) = { f : div(f) + D >= 0 }. The divisor must live over the curve's
// field (UnsupportedSupport otherwise). Functions are represented as
// g / h with h a product of (x - x0) powers, (x + alpha_i) powers and
// optionally y, and g supported on monomials x^a y^b of bounded pole order;
// vanishing conditions are imposed through local expansions.
RRSpace rr_space(const Curve& c, const Divisor& D, DenominatorHint hint = DenominatorHint::Default);

struct PrincipalityResult {
    bool principal = false;
    Curve curve;    // field of the verified witness
    Embedding emb;  // input field -> curve.field
    RingElement num, den;  // div(num/den) = -D, checked by valuations
};

// deg D = 0 required (NonzeroDegree). When true, the witness is re-verified:
// v_Q(num/den) = -D(Q) on the support of D and of div0(den), and the total
// degree balances, so no zero or pole escapes the check.
PrincipalityResult is_principal(const Curve& c, const Divisor& D);

// ------------------------------------------------------------------
// Exhaustive halving oracle for n = 2.
// ------------------------------------------------------------------

// All effective degree-g divisors D' with support rational over the
// extension of the given degree such that (1 - iota) D' ~ P - inf, found by
// enumeration and is_principal only. SearchSpaceTooLarge guards the
// enumeration; InfinityPoint rejects P = inf. Results are over the
// enumeration field, sorted canonically.
std::vector<Divisor> brute_halving(const Curve& c, const Place& P, unsigned ext_degree,
                                   size_t max_candidates = 2000000);

// canonical order for divisors over one field (support is compared placewise)
int divisor_cmp(const Divisor& a, const Divisor& b);

}  // namespace zetadiv
