#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "zetadiv/jac.hpp"

using namespace zetadiv;

namespace {

CurvePtr make_curve(unsigned n, unsigned d, std::vector<long long> alphas, uint32_t p) {
    Field f = Field::prime(p);
    std::vector<FieldElement> as;
    for (auto a : alphas) as.push_back(f.from_int(a));
    return std::make_shared<Curve>(Curve::create(n, d, std::move(as), f));
}

}  // namespace

TEST_CASE("torsion enumeration and canonical form") {
    CHECK(torsion_enumerate(2, 3).size() == 4);
    CHECK(torsion_enumerate(3, 4).size() == 27);
    CHECK(torsion_enumerate(5, 4).size() == 125);
    // the all-ones d-tuple is the relation: canonicalizes to zero
    auto z = torsion_canonicalize(3, 4, {1, 1, 1, 1});
    for (unsigned v : z.a) CHECK(v == 0);
    // e_1 + ... + e_d = 0 via repeated addition of canonical basis vectors
    TorsionClass acc{std::vector<unsigned>(3, 0)};
    for (unsigned i = 0; i < 4; ++i) {
        std::vector<long long> e(4, 0);
        e[i] = 1;
        acc = torsion_add(3, acc, torsion_canonicalize(3, 4, e));
    }
    for (unsigned v : acc.a) CHECK(v == 0);
    // (1,...,1,0) respects the relation: equals -e_d
    auto t = torsion_canonicalize(3, 4, {1, 1, 1, 0});
    auto ed = torsion_canonicalize(3, 4, {0, 0, 0, 1});
    CHECK(torsion_add(3, t, ed) == TorsionClass{{0, 0, 0}});
    CHECK(torsion_neg(3, ed) == t);
}

TEST_CASE("rr spaces: pole orders at infinity only") {
    auto c = make_curve(2, 3, {1, 2, 3}, 13);
    // L(0) = constants
    CHECK(rr_space(*c, Divisor(c->field)).dim == 1);
    // L(k inf): dimensions follow the numerical semigroup <2,3>
    auto dim_kinf = [&](long long k) {
        Divisor dv(c->field);
        dv.add(Place::infinity(), k);
        return rr_space(*c, dv).dim;
    };
    CHECK(dim_kinf(1) == 1);
    CHECK(dim_kinf(2) == 2);
    CHECK(dim_kinf(3) == 3);
    CHECK(dim_kinf(4) == 4);
    CHECK(dim_kinf(-1) == 0);
    // the gap at nd-n-d: no new function appears
    for (auto [n, d, p] : {std::tuple{2u, 3u, 13u}, {3u, 4u, 13u}, {4u, 3u, 13u}, {5u, 2u, 31u},
                           {2u, 5u, 11u}, {3u, 5u, 13u}, {5u, 3u, 13u}, {4u, 5u, 13u},
                           {5u, 4u, 13u}, {5u, 6u, 13u}, {6u, 5u, 13u}, {3u, 2u, 13u}}) {
        Field f = Field::prime(p);
        std::vector<FieldElement> as;
        for (unsigned i = 0; i < d; ++i) as.push_back(f.from_int((long long)i + 1));
        Curve cc = Curve::create(n, d, as, f);
        long long k = (long long)n * d - n - d;
        Divisor big(f), small(f);
        big.add(Place::infinity(), k);
        small.add(Place::infinity(), k - 1);
        CHECK(rr_space(cc, big).dim == rr_space(cc, small).dim);
    }
}

TEST_CASE("is_principal on named divisors") {
    auto c = make_curve(2, 3, {1, 2, 3}, 13);
    // n RAM(i) - n INF is cut out by x + alpha_i
    Divisor dv(c->field);
    dv.add(Place::ramified(1), 2);
    dv.add(Place::infinity(), -2);
    auto r = is_principal(*c, dv);
    CHECK(r.principal);
    // witness lies in L(D): div(num/den) = -D, so a pole of order 2 at RAM(1)
    CHECK(valuation(Place::ramified(1), r.num) - valuation(Place::ramified(1), r.den) == -2);

    // RAM(i) - INF is not principal on a genus-1 curve
    Divisor half(c->field);
    half.add(Place::ramified(1), 1);
    half.add(Place::infinity(), -1);
    CHECK(!is_principal(*c, half).principal);

    // zero divisor: principal with constant witness
    auto rz = is_principal(*c, Divisor(c->field));
    CHECK(rz.principal);

    // degree != 0 rejected
    Divisor deg1(c->field);
    deg1.add(Place::ramified(1), 1);
    CHECK_THROWS_WITH_AS((void)is_principal(*c, deg1), doctest::Contains("NonzeroDegree"), Error);

    // the torsion kernel: sum of all (P_i - INF) is cut out by y
    Divisor ker(c->field);
    for (unsigned i = 1; i <= 3; ++i) ker.add(Place::ramified(i), 1);
    ker.add(Place::infinity(), -3);
    auto rk = is_principal(*c, ker);
    CHECK(rk.principal);
    for (unsigned i = 1; i <= 3; ++i)
        CHECK(valuation(Place::ramified(i), rk.num) - valuation(Place::ramified(i), rk.den) == -1);
}

TEST_CASE("torsion classes are pairwise inequivalent") {
    auto c = make_curve(2, 3, {1, 2, 3}, 13);
    auto classes = torsion_enumerate(2, 3);
    for (size_t i = 0; i < classes.size(); ++i)
        for (size_t j = i + 1; j < classes.size(); ++j) {
            Divisor diff = torsion_divisor(*c, classes[i]) - torsion_divisor(*c, classes[j]);
            CHECK(!is_principal(*c, diff).principal);
        }
    // and each class is n-torsion: n * class is principal
    for (const auto& t : classes) {
        Divisor dd = torsion_divisor(*c, t).scaled(2);
        CHECK(is_principal(*c, dd).principal);
    }
}

TEST_CASE("rr dimension is independent of the denominator hint") {
    auto c = make_curve(2, 3, {1, 2, 3}, 13);
    std::vector<Divisor> samples;
    Divisor a(c->field);
    a.add(Place::ramified(1), 1);
    a.add(Place::ramified(2), 1);
    a.add(Place::infinity(), -1);
    samples.push_back(a);
    Divisor b(c->field);
    b.add(Place::infinity(), 3);
    samples.push_back(b);
    Divisor e(c->field);
    e.add(Place::ramified(3), 2);
    samples.push_back(e);
    for (const auto& dv : samples)
        CHECK(rr_space(*c, dv, DenominatorHint::Default).dim ==
              rr_space(*c, dv, DenominatorHint::TimesY).dim);
}

TEST_CASE("rr spaces with affine support") {
    auto c = make_curve(2, 3, {12, 2, 3}, 13);  // rhs(0) = 12*2*3 = 72 = 7; not a square mod 13
    // find an affine point and allow a pole there
    for (long long x = 0; x < 13; ++x) {
        FieldElement x0 = c->field.from_int(x);
        FieldElement v = c->rhs().eval(x0);
        if (v.is_zero()) continue;
        auto y0 = nth_root(v, 2);
        if (!y0) continue;
        Place Q = Place::affine(x0, *y0);
        Divisor dv(c->field);
        dv.add(Q, 1);
        dv.add(Place::infinity(), -1);
        // Q - INF principal iff genus-1 curve has a point of order... generally not
        auto res = is_principal(*c, dv);
        // Abel-Jacobi is injective on a genus-1 curve: Q - INF principal only if Q = INF
        CHECK(!res.principal);
        // but L(Q + INF) has dimension 2 (degree 2 >= 2g = 2)
        Divisor pos(c->field);
        pos.add(Q, 1);
        pos.add(Place::infinity(), 1);
        CHECK(rr_space(*c, pos).dim == 2);
        break;
    }
}

TEST_CASE("riemann-roch dimension law at high degree") {
    // h^0(D) = deg D + 1 - g whenever deg D > 2g - 2, for divisors with
    // mixed affine/ramified/infinity support
    std::mt19937_64 rng(71);
    for (auto [n, d, p] : {std::tuple{2u, 3u, 13u}, {3u, 2u, 7u}, {2u, 5u, 11u}}) {
        Field f = Field::prime(p);
        std::vector<FieldElement> as;
        for (unsigned i = 0; i < d; ++i) as.push_back(f.from_int((long long)i + 1));
        Curve c = Curve::create(n, d, as, f);
        unsigned g = c.genus;
        // gather a few rational affine points
        std::vector<Place> pts;
        for (long long x = 0; x < p && pts.size() < 3; ++x) {
            FieldElement x0 = f.from_int(x);
            FieldElement v = c.rhs().eval(x0);
            if (v.is_zero()) continue;
            if (auto y0 = nth_root(v, n)) pts.push_back(Place::affine(x0, *y0));
        }
        for (int trial = 0; trial < 4; ++trial) {
            Divisor dv(f);
            long long deg = 0;
            for (const auto& q : pts)
                if (rng() % 2) {
                    long long m = 1 + (long long)(rng() % 2);
                    dv.add(q, m);
                    deg += m;
                }
            if (rng() % 2) {
                dv.add(Place::ramified(1 + (unsigned)(rng() % d)), 1);
                deg += 1;
            }
            long long extra = std::max<long long>(0, 2LL * g - 1 - deg) + (long long)(rng() % 2);
            dv.add(Place::infinity(), extra);
            deg += extra;
            CHECK(rr_space(c, dv).dim == (unsigned)(deg + 1 - (long long)g));
        }
    }
}

TEST_CASE("brute halving on a genus-1 curve") {
    // y^2 = (x+1)(x+2)(x+3) over F_13, halve an affine point
    auto c = make_curve(2, 3, {1, 2, 3}, 13);
    // find a point with x-coordinate 0: rhs(0) = 6; 6 is a square mod 13? 6 = 8^2=64=12 no..
    // just scan for the first affine point
    Place P = Place::infinity();
    for (long long x = 0; x < 13 && P.is_infinity(); ++x) {
        FieldElement x0 = c->field.from_int(x);
        FieldElement v = c->rhs().eval(x0);
        if (v.is_zero()) continue;
        if (auto y0 = nth_root(v, 2)) P = Place::affine(x0, *y0);
    }
    REQUIRE(!P.is_infinity());
    auto halves = brute_halving(*c, P, 2);
    CHECK(halves.size() == 4);  // n^(d-1) = 4 halves over a big enough field
    // each result satisfies the defining relation (re-check through the oracle)
    Field E = halves[0].field();
    Embedding emb = find_embedding(c->field, E);
    Curve cE = embed_curve(*c, emb);
    Place PE = P.map(emb);
    for (const auto& D : halves) {
        Divisor delta = D - zeta_act(cE, D);
        delta.add(PE, -1);
        delta.add(Place::infinity(), 1);
        CHECK(is_principal(cE, delta).principal);
    }
    CHECK_THROWS_WITH_AS((void)brute_halving(*c, Place::infinity(), 2),
                         doctest::Contains("InfinityPoint"), Error);
}
