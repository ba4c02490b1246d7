#pragma once
// Division by 1 - zeta. For a point P = (0, b) (after translation) and a
// choice of n-th roots r_i of the branch values with prod r_i = b, build the
// band matrix A of the A_l polynomials, M = A - yZ and N = adj M; then
//
//   D = gcd_j div0 N_{1,j}
//
// is effective of degree g with (1 - zeta) D ~ P - inf, certified by the
// exact divisor identity div N_{1,n} - zeta(div N_{1,n-1}) = (1-zeta)D - (P-inf).

#include "zetadiv/jac.hpp"

namespace zetadiv {

struct RootChoice {
    std::vector<FieldElement> r;  // r_i^n = alpha_i of the translated curve
};

struct BuiltMatrices {
    RingMatrix A, Z, M, N;
};

// Matrices over the curve's coordinate ring; the curve must already have the
// point's x-coordinate translated away (its alphas are the r_i^n).
// InvalidRootChoice when r_i^n != alpha_i.
BuiltMatrices build_matrices(const CurvePtr& c, const RootChoice& roots);

// -v_inf(N_{i,j}); ZeroEntry if an entry vanishes (it never does for a valid
// construction). Entry (i,j) of the result must be 2g + (i-1) + (n-j).
std::vector<std::vector<long>> pole_profile(const RingMatrix& N);

struct DivideOptions {
    // check the full zero/pole pattern of every N_{i,j}, the pole profile and
    // the first-row ideal memberships; cheap at desk scale and on by default
    bool verify = true;
    uint64_t seed = 0x5eedf00d;
};

struct DivisionCertificate {
    Curve base_curve;
    Place point;             // P on base_curve
    Embedding base_to_work;  // base field -> root field
    Curve work_curve;        // x(P) translated to 0, over the root field
    Place work_point;
    FieldElement shift;      // x(P) in the root field
    RootChoice roots;
    RingMatrix N;            // adjugate, over work_curve
    std::vector<std::vector<long>> poles;
    Curve ext_curve;         // work_curve over the splitting extension
    Embedding work_to_ext;
    Place point_ext;
    Divisor D, E;            // work frame, over ext_curve.field; deg = g each
    Divisor D_base;          // D in the coordinates of base_curve
    bool pattern_verified = false;
};

// The whole pipeline: translate, build matrices, locate the divisors, check
// the certificate identity exactly (always) and the full pattern (verify).
// InfinityPoint for P = inf; PointNotOnCurve; InvalidRootChoice;
// InternalInvariantViolation if any identity fails.
DivisionCertificate divide_point(const Curve& c, const Place& P, const RootChoice& roots,
                                 const DivideOptions& opt = {});

// Automatic roots: r_i = smallest n-th root of x(P) + alpha_i in a splitting
// extension that also contains zeta, with one root corrected by a power of
// zeta so that prod r_i = y(P).
struct ComputedRoots {
    Embedding base_to_root;
    RootChoice roots;
};
ComputedRoots compute_roots(const Curve& c, const Place& P);

struct QFamily {
    unsigned n = 0;
    std::vector<Divisor> Q;   // row-major n x n; Q_{i,j} effective
    std::vector<Divisor> Di;  // D_i = zeta^(i-1) D
    std::vector<Divisor> Ej;  // E_j = zeta^(j-1) E
};

// Recomputes the full family from a certificate and checks the relations
// D_i + E_j = Q_{i,j}, the zeta recursions and gcd_i D_i = gcd_j E_j = 0.
QFamily q_divisors(const DivisionCertificate& cert);

struct VaryRootsOutcome {
    DivisionCertificate plain;    // roots r, point P
    DivisionCertificate twisted;  // roots zeta^-a r, point zeta^-(sum a) P
    Curve delta_curve;            // common extension, work frame
    Divisor delta;                // D_r - zeta^(sum a) D' - sum a_i P_i + (sum a) inf
    bool principal = false;       // oracle verdict on delta ~ 0
};

// The root-variation law: twisting the roots by zeta^-a moves D by the
// torsion class sum a_i [P_i - inf]; verified through the is_principal
// oracle on a common splitting extension.
VaryRootsOutcome vary_roots(const Curve& c, const Place& P, const RootChoice& roots,
                            const std::vector<unsigned>& a, const DivideOptions& opt = {});

}  // namespace zetadiv
