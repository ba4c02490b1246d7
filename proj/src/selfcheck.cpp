#include "zetadiv/selfcheck.hpp"

#include <functional>
#include <ostream>

#include "zetadiv/gaps.hpp"

namespace zetadiv {

namespace {

struct FactoredQ {
    uint32_t p;
    unsigned k;
};

FactoredQ factor_prime_power(uint64_t q) {
    for (uint64_t p = 2; p * p <= q; ++p) {
        if (q % p) continue;
        unsigned k = 0;
        uint64_t t = q;
        while (t % p == 0) {
            t /= p;
            ++k;
        }
        if (t != 1) fail("InvalidPrime", "q is not a prime power");
        return {(uint32_t)p, k};
    }
    return {(uint32_t)q, 1};
}

struct Instance {
    CurvePtr curve;
    Place P;
    RootChoice roots;
};

// backward construction: roots first, then alphas = r^n and P = (a, b) after
// an optional shift away from the origin
Instance random_instance(unsigned n, unsigned d, const Field& f, std::mt19937_64& rng,
                         bool shifted) {
    for (;;) {
        RootChoice rc;
        std::vector<FieldElement> alphas;
        FieldElement b = f.one();
        for (unsigned i = 0; i < d; ++i) {
            FieldElement r = f.random_element(rng);
            rc.r.push_back(r);
            alphas.push_back(r.pow(n));
            b = b * r;
        }
        bool ok = !b.is_zero();
        for (size_t i = 0; i < alphas.size() && ok; ++i)
            for (size_t j = i + 1; j < alphas.size(); ++j)
                if (alphas[i] == alphas[j]) {
                    ok = false;
                    break;
                }
        if (!ok) continue;
        if (!shifted) {
            auto c = std::make_shared<Curve>(Curve::create(n, d, alphas, f));
            return {c, Place::affine(f.zero(), b), rc};
        }
        FieldElement a = f.random_element(rng);
        std::vector<FieldElement> moved;
        for (const auto& al : alphas) moved.push_back(al - a);
        bool distinct = true;
        for (size_t i = 0; i < moved.size() && distinct; ++i)
            for (size_t j = i + 1; j < moved.size(); ++j)
                if (moved[i] == moved[j]) distinct = false;
        if (!distinct) continue;
        auto c = std::make_shared<Curve>(Curve::create(n, d, moved, f));
        return {c, Place::affine(a, b), rc};
    }
}

RingElement random_ring_elt(const CurvePtr& c, std::mt19937_64& rng, int maxdeg = 2) {
    std::vector<UniPoly> co;
    for (unsigned b = 0; b < c->n; ++b) {
        std::vector<FieldElement> cs;
        int deg = (int)(rng() % (maxdeg + 1));
        for (int i = 0; i <= deg; ++i) cs.push_back(c->field.random_element(rng));
        co.emplace_back(c->field, std::move(cs));
    }
    RingElement e(c, std::move(co));
    return e.is_zero() ? RingElement::one(c) : e;
}

}  // namespace

int run_selfcheck(const SelfCheckParams& prm, std::ostream& os) {
    auto [p, k] = factor_prime_power(prm.q);
    Field f = k == 1 ? Field::prime(p) : canonical_extension(p, k);
    {
        BigUInt qm1 = f.order();
        qm1.sub_small(1);
        if (qm1.mod_small(prm.n) != 0)
            fail("NoRootOfUnity", "selfcheck needs n | q-1");
    }
    if (gcd_u64(prm.n, prm.d) != 1) fail("NotCoprime", "n and d must be coprime");
    if (prm.n % p == 0) fail("CharacteristicDividesN", "characteristic divides n");

    os << "selfcheck n=" << prm.n << " d=" << prm.d << " q=" << prm.q << " trials=" << prm.trials
       << " seed=" << prm.seed << "\n";
    std::mt19937_64 rng(prm.seed);
    unsigned n = prm.n, d = prm.d;
    int failures = 0;

    auto check = [&](const std::string& name, const std::function<bool()>& fn) {
        bool ok = false;
        std::string note;
        try {
            ok = fn();
        } catch (const Error& e) {
            note = std::string(" [") + e.what() + "]";
        }
        os << (ok ? "  ok   " : "  FAIL ") << name << (ok ? "" : note) << "\n";
        if (!ok) {
            ++failures;
            os << "  reproduce with seed=" << prm.seed << "\n";
        }
    };

    check("ff.axioms", [&] {
        for (unsigned t = 0; t < 50; ++t) {
            FieldElement a = f.random_element(rng), b = f.random_element(rng),
                         c = f.random_element(rng);
            if (!((a + b) + c == a + (b + c)) || !(a * b == b * a) ||
                !(a * (b + c) == a * b + a * c))
                return false;
            if (!b.is_zero() && !((a / b) * b == a)) return false;
        }
        return true;
    });

    check("ff.roots_of_unity", [&] {
        FieldElement z = primitive_nth_root(f, n);
        for (unsigned e = 1; e < n; ++e)
            if (z.pow(e).is_one()) return false;
        return z.pow(n).is_one();
    });

    check("ff.factor_roundtrip", [&] {
        for (unsigned t = 0; t < 5; ++t) {
            std::vector<FieldElement> cs;
            unsigned deg = 2 + rng() % 5;
            for (unsigned i = 0; i <= deg; ++i) cs.push_back(f.random_element(rng));
            UniPoly g(f, std::move(cs));
            if (g.is_zero() || g.degree() < 1) continue;
            UniPoly prod = UniPoly::constant(g.leading());
            for (const auto& [fac, m] : factor(g)) {
                if (!is_irreducible(fac)) return false;
                for (unsigned i = 0; i < m; ++i) prod = prod * fac;
            }
            if (!(prod == g)) return false;
        }
        return true;
    });

    check("ff.nth_root", [&] {
        for (unsigned t = 0; t < 10; ++t) {
            FieldElement a = f.random_element(rng);
            FieldElement an = a.pow(n);
            auto r = nth_root(an, n);
            if (!r || !(r->pow(n) == an)) return false;
        }
        return true;
    });

    std::vector<Instance> instances;
    for (unsigned t = 0; t < prm.trials; ++t)
        instances.push_back(random_instance(n, d, f, rng, t % 2 == 1));

    check("ring.determinants", [&] {
        for (const auto& inst : instances) {
            auto sh = shift_to_origin(*inst.curve, inst.P);
            auto wc = std::make_shared<Curve>(sh.curve);
            auto mats = build_matrices(wc, inst.roots);
            if (!(det(mats.A).coord(0) == sh.curve.rhs())) return false;
            RingElement yn = RingElement::one(wc);
            for (unsigned i = 0; i < n; ++i) yn = yn * RingElement::y(wc);
            if (!(det(mats.M) == RingElement::monomial(wc, sh.curve.rhs(), 0) - yn)) return false;
        }
        return true;
    });

    check("ring.sigma_conjugation", [&] {
        const auto& inst = instances[0];
        auto sh = shift_to_origin(*inst.curve, inst.P);
        auto wc = std::make_shared<Curve>(sh.curve);
        auto mats = build_matrices(wc, inst.roots);
        RingMatrix C(wc, n);
        for (unsigned i = 1; i + 1 <= n; ++i) C.entry(i, i + 1) = RingElement::one(wc);
        RingElement corner = RingElement::x(wc);
        if (n % 2 == 0) corner = -corner;
        C.entry(n, 1) = corner;
        for (const RingMatrix* T : {&mats.M, &mats.N}) {
            RingMatrix sig(wc, n);
            for (unsigned i = 1; i <= n; ++i)
                for (unsigned j = 1; j <= n; ++j) sig.entry(i, j) = T->entry(i, j).sigma();
            if (!(sig * C == C * *T)) return false;
        }
        return true;
    });

    check("ring.minors_vanish", [&] {
        const auto& inst = instances[0];
        auto sh = shift_to_origin(*inst.curve, inst.P);
        auto wc = std::make_shared<Curve>(sh.curve);
        auto mats = build_matrices(wc, inst.roots);
        for (unsigned i = 1; i <= n; ++i)
            for (unsigned kk = i + 1; kk <= n; ++kk)
                for (unsigned j = 1; j <= n; ++j)
                    for (unsigned l = j + 1; l <= n; ++l) {
                        RingElement minor = mats.N.entry(i, j) * mats.N.entry(kk, l) -
                                            mats.N.entry(i, l) * mats.N.entry(kk, j);
                        if (!minor.is_zero()) return false;
                    }
        return true;
    });

    check("ring.eigen_relation", [&] {
        const auto& inst = instances[0];
        auto sh = shift_to_origin(*inst.curve, inst.P);
        auto wc = std::make_shared<Curve>(sh.curve);
        auto mats = build_matrices(wc, inst.roots);
        FieldElement z = sh.curve.zeta_or_fail();
        FieldElement tau = f.random_element(rng);
        FieldElement xi = tau.pow(n);
        if (n % 2 == 0) xi = -xi;
        for (unsigned kk = 1; kk <= n; ++kk) {
            FieldElement zk = z.pow(kk);
            FieldElement lambda = f.one();
            for (const auto& r : inst.roots.r) lambda = lambda * (r + zk * tau);
            for (unsigned i = 1; i <= n; ++i) {
                FieldElement acc = f.zero();
                for (unsigned j = 1; j <= n; ++j)
                    acc = acc + mats.A.entry(i, j).coord(0).eval(xi) * (zk * tau).pow(j - 1);
                if (!(acc == lambda * (zk * tau).pow(i - 1))) return false;
            }
        }
        return true;
    });

    check("ring.nonzero_specialization", [&] {
        const auto& inst = instances[0];
        auto sh = shift_to_origin(*inst.curve, inst.P);
        auto wc = std::make_shared<Curve>(sh.curve);
        auto mats = build_matrices(wc, inst.roots);
        for (unsigned t = 0; t < 10; ++t) {
            FieldElement tx = f.random_element(rng), ty = f.random_element(rng);
            bool allzero = true;
            for (unsigned i = 1; i <= n && allzero; ++i)
                for (unsigned j = 1; j <= n; ++j)
                    if (!mats.N.entry(i, j).eval(tx, ty).is_zero()) {
                        allzero = false;
                        break;
                    }
            if (allzero) return false;
        }
        return true;
    });

    check("curve.zero_count", [&] {
        const auto& inst = instances[0];
        for (unsigned t = 0; t < 3; ++t) {
            RingElement e = random_ring_elt(inst.curve, rng);
            auto dz = divisor_of_zeros(e);  // degree balance asserted inside
            if (!dz.div.is_effective()) return false;
        }
        return true;
    });

    check("curve.zeta_valuations", [&] {
        const auto& inst = instances[0];
        Place pl = inst.P;
        for (unsigned t = 0; t < 3; ++t) {
            RingElement e = random_ring_elt(inst.curve, rng);
            if (valuation(zeta_act(*inst.curve, pl, 1), e) != valuation(pl, e.sigma(-1)))
                return false;
        }
        return true;
    });

    std::vector<DivisionCertificate> certs;
    check("divide.certificates", [&] {
        for (const auto& inst : instances) {
            auto cert = divide_point(*inst.curve, inst.P, inst.roots, {true, prm.seed});
            if (cert.D.degree() != (long long)cert.work_curve.genus) return false;
            if (!cert.pattern_verified) return false;
            certs.push_back(std::move(cert));
        }
        return true;
    });

    check("divide.oracle", [&] {
        for (const auto& cert : certs) {
            Divisor delta = cert.D - zeta_act(cert.ext_curve, cert.D, 1);
            delta.add(cert.point_ext, -1);
            delta.add(Place::infinity(), 1);
            if (!is_principal(cert.ext_curve, delta).principal) return false;
        }
        return !certs.empty();
    });

    check("divide.idempotent", [&] {
        if (certs.empty()) return false;
        const auto& inst = instances[0];
        auto c1 = divide_point(*inst.curve, inst.P, inst.roots, {true, prm.seed});
        auto c2 = divide_point(*inst.curve, inst.P, inst.roots, {true, prm.seed});
        return c1.D.to_string() == c2.D.to_string() && c1.E.to_string() == c2.E.to_string();
    });

    check("divide.ramified_point", [&] {
        const auto& inst = instances[0];
        Place P = Place::ramified(1 + (unsigned)(rng() % d));
        auto cr = compute_roots(*inst.curve, P);
        Curve cR = cr.base_to_root.is_identity() ? *inst.curve
                                                 : embed_curve(*inst.curve, cr.base_to_root);
        auto cert = divide_point(cR, P.map(cr.base_to_root), cr.roots, {true, prm.seed});
        Divisor delta = cert.D - zeta_act(cert.ext_curve, cert.D, 1);
        delta.add(cert.point_ext, -1);
        delta.add(Place::infinity(), 1);
        return is_principal(cert.ext_curve, delta).principal;
    });

    check("jac.torsion_kernel", [&] {
        const auto& inst = instances[0];
        Divisor ker(f);
        for (unsigned i = 1; i <= d; ++i) ker.add(Place::ramified(i), 1);
        ker.add(Place::infinity(), -(long long)d);
        auto r = is_principal(*inst.curve, ker);
        if (!r.principal) return false;
        for (unsigned i = 1; i <= d; ++i)
            if (valuation(Place::ramified(i), r.num) - valuation(Place::ramified(i), r.den) != -1)
                return false;
        return true;
    });

    check("jac.torsion_distinct", [&] {
        const auto& inst = instances[0];
        auto classes = torsion_enumerate(n, d);
        for (unsigned t = 0; t < 3; ++t) {
            const auto& a = classes[rng() % classes.size()];
            const auto& b = classes[rng() % classes.size()];
            if (a == b) continue;
            Divisor diff = torsion_divisor(*inst.curve, a) - torsion_divisor(*inst.curve, b);
            if (is_principal(*inst.curve, diff).principal) return false;
        }
        return true;
    });

    check("jac.rr_hint_independent", [&] {
        const auto& inst = instances[0];
        Divisor dv(f);
        dv.add(Place::ramified(1), 1);
        dv.add(Place::infinity(), 2);
        return rr_space(*inst.curve, dv, DenominatorHint::Default).dim ==
               rr_space(*inst.curve, dv, DenominatorHint::TimesY).dim;
    });

    check("gaps.oracle_agreement", [&] {
        const auto& inst = instances[0];
        auto classes = torsion_enumerate(n, d);
        const auto& a = classes[rng() % classes.size()];
        return gap_set_oracle(*inst.curve, a.a) == gap_set(n, d, a.a).gaps;
    });

    check("gaps.weights", [&] {
        (void)weight_total(n, d);
        auto classes = torsion_enumerate(n, d);
        for (const auto& t : classes)
            if (weight_from_series(n, d, t.a) != (long long)gap_set(n, d, t.a).weight)
                return false;
        return true;
    });

    check("gaps.cyclotomic", [&] {
        (void)csc_sum_check(n);
        return true;
    });

    os << (failures ? "FAIL" : "OK") << ": " << failures << " failing check(s)\n";
    return failures ? 2 : 0;
}

}  // namespace zetadiv
