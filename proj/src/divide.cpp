#include "zetadiv/divide.hpp"

#include <algorithm>

namespace zetadiv {

// ------------------------------------------------------------------
// matrices
// ------------------------------------------------------------------
BuiltMatrices build_matrices(const CurvePtr& c, const RootChoice& roots) {
    unsigned n = c->n, d = c->d;
    if (roots.r.size() != d) fail("InvalidRootChoice", "expected d roots");
    for (unsigned i = 0; i < d; ++i) {
        if (roots.r[i].field() != c->field)
            fail("InvalidRootChoice", "root outside the curve field");
        if (roots.r[i].pow(n) != c->alphas[i])
            fail("InvalidRootChoice", "r_i^n does not equal alpha_i");
    }
    FieldElement z = c->zeta_or_fail();
    auto s = elementary_symmetric(roots.r);

    BuiltMatrices m{RingMatrix(c, n), RingMatrix(c, n), RingMatrix(c, n), RingMatrix(c, n)};
    for (unsigned i = 1; i <= n; ++i)
        for (unsigned j = 1; j <= n; ++j)
            m.A.entry(i, j) = RingElement::monomial(
                c, build_A_ell(s, (long)d + (long)i - (long)j, n, c->field), 0);
    for (unsigned i = 1; i <= n; ++i) {
        // Z_{i,i} = zeta^(1-i)
        unsigned e = (unsigned)(((1 - (long)i) % (long)n + (long)n) % (long)n);
        m.Z.entry(i, i) = RingElement::constant(c, z.pow(e));
    }
    for (unsigned i = 1; i <= n; ++i)
        for (unsigned j = 1; j <= n; ++j) {
            m.M.entry(i, j) = m.A.entry(i, j);
            if (i == j) m.M.entry(i, j) = m.M.entry(i, j) - m.Z.entry(i, i) * RingElement::y(c);
        }
    m.N = adjugate(m.M);
    return m;
}

std::vector<std::vector<long>> pole_profile(const RingMatrix& N) {
    unsigned n = N.size();
    std::vector<std::vector<long>> out(n, std::vector<long>(n, 0));
    for (unsigned i = 1; i <= n; ++i)
        for (unsigned j = 1; j <= n; ++j) {
            const RingElement& e = N.entry(i, j);
            if (e.is_zero())
                fail("ZeroEntry", "adjugate entry vanishes; the construction is broken upstream");
            out[i - 1][j - 1] = -valuation(Place::infinity(), e);
        }
    return out;
}

// ------------------------------------------------------------------
// divide_point
// ------------------------------------------------------------------
namespace {


// sum_{k=j-n}^{i-2} zeta^k P
Divisor p_part(const Curve& cE, const Place& PE, long i, long j, long n) {
    Divisor dv(cE.field);
    for (long k = j - n; k <= i - 2; ++k) dv.add(zeta_act(cE, PE, k), 1);
    return dv;
}

// the first-row entries lie in the ideal (x, prod_{k=j}^{n-1} (y - zeta^k s_d)):
// reduce mod x and divide in K[y]
void check_ideal_membership(const RingMatrix& N, const std::vector<FieldElement>& s) {
    const CurvePtr& c = N.curve();
    unsigned n = c->n;
    FieldElement z = c->zeta_or_fail();
    FieldElement sd = s.back();
    for (unsigned j = 1; j <= n; ++j) {
        // N_{1,j} mod x as a polynomial in y
        std::vector<FieldElement> ycoeffs;
        for (unsigned b = 0; b < n; ++b) ycoeffs.push_back(N.entry(1, j).coord(b).coeff(0));
        UniPoly iny(c->field, std::move(ycoeffs));
        UniPoly w = UniPoly::constant(c->field.one());
        for (unsigned k = j; k <= n - 1; ++k)
            w = w * UniPoly(c->field, {-(z.pow(k) * sd), c->field.one()});
        if (iny.is_zero()) continue;
        UniPoly q, r;
        poly_divmod(iny, w, q, r);
        if (!r.is_zero())
            fail("InternalInvariantViolation",
                 "first-row entry escapes its vanishing ideal at x = 0");
    }
}

}  // namespace

DivisionCertificate divide_point(const Curve& c, const Place& P, const RootChoice& roots,
                                 const DivideOptions& opt) {
    if (P.is_infinity()) fail("InfinityPoint", "cannot divide the base point of the embedding");
    if (roots.r.size() != c.d) fail("InvalidRootChoice", "expected d roots");
    // the root field: an extension of the curve field (identity allowed)
    Field rootF = roots.r.empty() ? c.field : roots.r[0].field();
    for (const auto& r : roots.r)
        if (r.field() != rootF) fail("InvalidRootChoice", "roots in different fields");

    DivisionCertificate cert;
    cert.base_curve = c;
    cert.point = P;
    cert.base_to_work =
        rootF == c.field ? Embedding::identity(c.field) : find_embedding(c.field, rootF);
    Curve cR = rootF == c.field ? c : embed_curve(c, cert.base_to_work);
    Place PR = P.map(cert.base_to_work);
    // validate the point before translating
    {
        auto [x0, y0] = place_coords(cR, PR);
        if (!on_curve(cR, x0, y0)) fail("PointNotOnCurve", "the point is not on the curve");
    }
    ShiftedCurve sh = shift_to_origin(cR, PR);
    cert.work_curve = sh.curve;
    cert.work_point = sh.point;
    cert.shift = sh.amount;
    cert.roots = roots;
    auto wc = std::make_shared<Curve>(sh.curve);
    FieldElement b = place_coords(sh.curve, sh.point).second;

    BuiltMatrices mats = build_matrices(wc, roots);
    {
        FieldElement prod = rootF.one();
        for (const auto& r : roots.r) prod = prod * r;
        if (prod != b) fail("InvalidRootChoice", "prod r_i does not equal the y-coordinate");
    }
    cert.N = mats.N;

    unsigned n = sh.curve.n;
    long g = (long)sh.curve.genus;
    cert.poles = pole_profile(mats.N);
    for (unsigned i = 1; i <= n; ++i)
        for (unsigned j = 1; j <= n; ++j)
            if (cert.poles[i - 1][j - 1] != 2 * g + (long)(i - 1) + (long)(n - j))
                fail("InternalInvariantViolation", "pole profile off the expected ladder");

    if (opt.verify) {
        auto s = elementary_symmetric(roots.r);
        check_ideal_membership(mats.N, s);
    }

    // one splitting extension for every divisor we will read off
    std::vector<RingElement> batch;
    if (opt.verify) {
        for (unsigned i = 1; i <= n; ++i)
            for (unsigned j = 1; j <= n; ++j) batch.push_back(mats.N.entry(i, j));
    } else {
        for (unsigned j = 1; j <= n; ++j) batch.push_back(mats.N.entry(1, j));
    }
    ZeroLocusExtension zle = zero_locus_extension(batch);
    cert.ext_curve = zle.ext_curve;
    cert.work_to_ext = zle.emb;
    cert.point_ext = sh.point.map(zle.emb);
    const Curve& cE = cert.ext_curve;

    std::vector<Divisor> row0;
    for (unsigned j = 1; j <= n; ++j)
        row0.push_back(divisor_of_zeros_in(mats.N.entry(1, j), cE, zle.emb));

    Divisor D = row0[0];
    for (unsigned j = 2; j <= n; ++j) D = divisor_gcd(D, row0[j - 1]);
    Divisor Q11 = row0[0] - p_part(cE, cert.point_ext, 1, 1, (long)n);
    Divisor E = Q11 - D;
    cert.D = D;
    cert.E = E;

    if (D.degree() != g || E.degree() != g)
        fail("InternalInvariantViolation", "divisor degrees differ from the genus");
    if (!D.is_effective() || !E.is_effective())
        fail("InternalInvariantViolation", "divisors are not effective");
    for (const auto& dv : {D, E})
        for (const auto& [p, k] : dv.terms()) {
            (void)k;
            if (!p.is_affine())
                fail("InternalInvariantViolation",
                     "divisor support touches a branch point or infinity");
        }

    // certificate identity, exactly as divisors:
    // div0 N_{1,n} - zeta(div0 N_{1,n-1}) = (1 - zeta) D - P
    {
        Divisor lhs = row0[n - 1] - zeta_act(cE, row0[(n - 2 + n) % n], 1);
        Divisor rhs = D - zeta_act(cE, D, 1);
        rhs.add(cert.point_ext, -1);
        if (lhs != rhs) fail("InternalInvariantViolation", "certificate divisor identity fails");
    }

    if (opt.verify) {
        for (unsigned i = 1; i <= n; ++i)
            for (unsigned j = 1; j <= n; ++j) {
                Divisor dij = (i == 1) ? row0[j - 1]
                                       : divisor_of_zeros_in(mats.N.entry(i, j), cE, zle.emb);
                Divisor expect = zeta_act(cE, D, (long)i - 1) + zeta_act(cE, E, (long)j - 1) +
                                 p_part(cE, cert.point_ext, (long)i, (long)j, (long)n);
                if (dij != expect)
                    fail("InternalInvariantViolation", "zero/pole pattern fails at an entry");
            }
        cert.pattern_verified = true;
    }

    cert.D_base = shift_divisor_by(zle.emb(cert.shift), D);
    return cert;
}

// ------------------------------------------------------------------
// automatic roots
// ------------------------------------------------------------------
ComputedRoots compute_roots(const Curve& c, const Place& P) {
    if (P.is_infinity()) fail("InfinityPoint", "cannot divide the base point of the embedding");
    auto [x0, y0] = place_coords(c, P);
    if (!on_curve(c, x0, y0)) fail("PointNotOnCurve", "the point is not on the curve");
    std::vector<UniPoly> polys;
    polys.push_back(UniPoly::x_power(c.field, c.n) - UniPoly::constant(c.field.one()));
    for (const auto& a : c.alphas)
        polys.push_back(UniPoly::x_power(c.field, c.n) - UniPoly::constant(a + x0));
    SplittingExtension se = splitting_extension(c.field, polys);
    ComputedRoots out;
    out.base_to_root = se.emb;
    FieldElement b = se.emb(y0);
    FieldElement prod = se.field.one();
    for (const auto& a : c.alphas) {
        auto r = nth_root(se.emb(a + x0), c.n);
        if (!r) fail("InternalInvariantViolation", "splitting extension misses an n-th root");
        out.roots.r.push_back(*r);
        prod = prod * *r;
    }
    if (!b.is_zero()) {
        FieldElement z = primitive_nth_root(se.field, c.n);
        FieldElement u = prod / b;
        unsigned k = 0;
        while (k < c.n && !(z.pow(k) == u)) ++k;
        if (k == c.n) fail("InternalInvariantViolation", "root product is off by a non-root of unity");
        if (k) {
            // divide a nonzero root by zeta^k; any index works, use the first
            for (auto& r : out.roots.r)
                if (!r.is_zero()) {
                    r = r / z.pow(k);
                    break;
                }
        }
    }
    return out;
}

// ------------------------------------------------------------------
// Q family
// ------------------------------------------------------------------
QFamily q_divisors(const DivisionCertificate& cert) {
    const Curve& cE = cert.ext_curve;
    unsigned n = cE.n;
    QFamily fam;
    fam.n = n;
    std::vector<Divisor> div0;
    for (unsigned i = 1; i <= n; ++i)
        for (unsigned j = 1; j <= n; ++j)
            div0.push_back(divisor_of_zeros_in(cert.N.entry(i, j), cE, cert.work_to_ext));
    for (unsigned i = 1; i <= n; ++i)
        for (unsigned j = 1; j <= n; ++j) {
            Divisor q = div0[(i - 1) * n + (j - 1)] -
                        p_part(cE, cert.point_ext, (long)i, (long)j, (long)n);
            if (!q.is_effective()) fail("InternalInvariantViolation", "Q_{i,j} not effective");
            fam.Q.push_back(std::move(q));
        }
    for (unsigned i = 1; i <= n; ++i) {
        Divisor di = fam.Q[(i - 1) * n];
        for (unsigned k = 2; k <= n; ++k) di = divisor_gcd(di, fam.Q[(i - 1) * n + (k - 1)]);
        fam.Di.push_back(std::move(di));
    }
    for (unsigned j = 1; j <= n; ++j) fam.Ej.push_back(fam.Q[j - 1] - fam.Di[0]);
    // relations
    for (unsigned i = 1; i <= n; ++i) {
        if (fam.Di[i - 1] != zeta_act(cE, fam.Di[0], (long)i - 1))
            fail("InternalInvariantViolation", "D_i is not the zeta translate of D");
        if (fam.Ej[i - 1] != zeta_act(cE, fam.Ej[0], (long)i - 1))
            fail("InternalInvariantViolation", "E_j is not the zeta translate of E");
    }
    for (unsigned i = 1; i <= n; ++i)
        for (unsigned j = 1; j <= n; ++j)
            if (fam.Di[i - 1] + fam.Ej[j - 1] != fam.Q[(i - 1) * n + (j - 1)])
                fail("InternalInvariantViolation", "D_i + E_j does not recover Q_{i,j}");
    Divisor gd = fam.Di[0], ge = fam.Ej[0];
    for (unsigned i = 2; i <= n; ++i) {
        gd = divisor_gcd(gd, fam.Di[i - 1]);
        ge = divisor_gcd(ge, fam.Ej[i - 1]);
    }
    if (!gd.is_zero() || !ge.is_zero())
        fail("InternalInvariantViolation", "translates of D or E share a point");
    return fam;
}

// ------------------------------------------------------------------
// root variation
// ------------------------------------------------------------------
VaryRootsOutcome vary_roots(const Curve& c, const Place& P, const RootChoice& roots,
                            const std::vector<unsigned>& a, const DivideOptions& opt) {
    if (a.size() != c.d) fail("InvalidRootChoice", "expected one twist exponent per root");
    VaryRootsOutcome out;
    out.plain = divide_point(c, P, roots, opt);
    const Field& rootF = out.plain.work_curve.field;
    FieldElement z = out.plain.work_curve.zeta_or_fail();
    long suma = 0;
    RootChoice twisted;
    for (unsigned i = 0; i < c.d; ++i) {
        suma += a[i];
        twisted.r.push_back(roots.r[i] / z.pow(a[i] % c.n));
    }
    // the twisted roots divide the point zeta^(-sum a) P
    Place Pt = P;
    if (P.is_affine()) {
        Embedding bw = out.plain.base_to_work;
        // act on the work-frame point, then use the root-field curve directly
        Curve cR = rootF == c.field ? c : embed_curve(c, bw);
        Pt = zeta_act(cR, P.map(bw), -suma);
        out.twisted = divide_point(cR, Pt, twisted, opt);
    } else {
        out.twisted = divide_point(c, P, twisted, opt);
    }

    // a common splitting extension over the root field, with embeddings that
    // restrict to the recorded root-field chains
    const Curve& e1 = out.plain.ext_curve;
    const Curve& e2 = out.twisted.ext_curve;
    unsigned k1 = e1.field.degree(), k2 = e2.field.degree();
    unsigned kc = (unsigned)lcm_u64(k1, k2);
    Field E3 = canonical_extension(rootF.characteristic(), kc);
    Embedding rootToE3 =
        E3 == rootF ? Embedding::identity(rootF) : find_embedding(rootF, E3);
    Embedding m1 = find_embedding_over(e1.field, E3, out.plain.work_to_ext, rootToE3);
    Embedding m2 = find_embedding_over(e2.field, E3, out.twisted.work_to_ext, rootToE3);
    Curve cE3 = embed_curve(out.plain.work_curve, rootToE3);
    out.delta_curve = cE3;

    Divisor d1 = out.plain.D.map(m1);
    Divisor d2 = out.twisted.D.map(m2);
    Divisor delta = d1 - zeta_act(cE3, d2, suma);
    for (unsigned i = 0; i < c.d; ++i) delta.add(Place::ramified(i + 1), -(long long)a[i]);
    delta.add(Place::infinity(), suma);
    out.delta = delta;
    out.principal = is_principal(cE3, delta).principal;
    return out;
}

}  // namespace zetadiv
