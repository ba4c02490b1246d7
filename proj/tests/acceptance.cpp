// Acceptance suite: one line per criterion, exact checks at the stated
// tolerances, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "zetadiv/divide.hpp"
#include "zetadiv/gaps.hpp"

using namespace zetadiv;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& name, const std::function<bool()>& fn) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string note;
    try {
        ok = fn();
    } catch (const std::exception& e) {
        note = std::string(" [") + e.what() + "]";
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s  %2d %s (%.2fs)%s\n", ok ? "PASS" : "FAIL", number, name.c_str(), secs,
                note.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

struct Instance {
    CurvePtr curve;
    Place P;
    RootChoice roots;
};

Instance backward_instance(unsigned n, unsigned d, uint32_t p, std::mt19937_64& rng) {
    Field f = Field::prime(p);
    for (;;) {
        RootChoice rc;
        std::vector<FieldElement> alphas;
        FieldElement b = f.one();
        for (unsigned i = 0; i < d; ++i) {
            FieldElement r = f.from_int((long long)(rng() % p));
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
        auto c = std::make_shared<Curve>(Curve::create(n, d, alphas, f));
        return {c, Place::affine(f.zero(), b), rc};
    }
}

// the six (n,d) shapes with fields where zeta exists
const std::vector<std::tuple<unsigned, unsigned, uint32_t>> kShapes = {
    {2, 3, 13}, {3, 2, 13}, {2, 5, 41}, {3, 4, 13}, {4, 3, 13}, {5, 2, 31}};

std::vector<Instance> matrix_instances() {
    std::mt19937_64 rng(2024);
    std::vector<Instance> out;
    for (auto [n, d, p] : kShapes)
        for (int t = 0; t < 9; ++t) out.push_back(backward_instance(n, d, p, rng));
    return out;
}

bool oracle_confirms(const DivisionCertificate& cert) {
    Divisor delta = cert.D - zeta_act(cert.ext_curve, cert.D, 1);
    delta.add(cert.point_ext, -1);
    delta.add(Place::infinity(), 1);
    return is_principal(cert.ext_curve, delta).principal;
}

bool division_checks(const DivisionCertificate& cert) {
    long long g = cert.work_curve.genus;
    if (cert.D.degree() != g || cert.E.degree() != g) return false;
    for (const auto& [p, k] : cert.D.terms()) {
        (void)k;
        if (!p.is_affine()) return false;  // support avoids branch points and infinity
    }
    // the divisor identity is checked exactly inside divide_point; the oracle
    // is the independent confirmation
    return oracle_confirms(cert);
}

std::vector<unsigned> all_labels_step(unsigned n, std::vector<unsigned>& a) {
    size_t i = a.size();
    while (i > 0) {
        if (++a[i - 1] < n) break;
        a[i - 1] = 0;
        --i;
    }
    if (i == 0) return {};
    return a;
}

}  // namespace

int main() {
    std::printf("acceptance suite\n");
    std::vector<Instance> instances;   // shared by criteria 1 and 2
    std::vector<BuiltMatrices> mats;   // adjugates computed once in criterion 1

    criterion(1, "determinant identity det M = prod(x+alpha) - y^n, 54 instances", [&] {
        auto t0 = std::chrono::steady_clock::now();
        instances = matrix_instances();
        bool ok = instances.size() >= 50;
        for (const auto& inst : instances) {
            auto wc = inst.curve;
            auto m = build_matrices(wc, inst.roots);
            RingElement yn = RingElement::one(wc);
            for (unsigned k = 0; k < wc->n; ++k) yn = yn * RingElement::y(wc);
            if (!(det(m.A).coord(0) == wc->rhs())) ok = false;
            if (!(det(m.M) == RingElement::monomial(wc, wc->rhs(), 0) - yn)) ok = false;
            mats.push_back(std::move(m));
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return ok && secs < 5.0;
    });

    criterion(2, "pole profile -v_inf(N_ij) = 2g+(i-1)+(n-j) on all entries", [&] {
        if (mats.size() != instances.size() || mats.empty()) return false;
        for (size_t t = 0; t < mats.size(); ++t) {
            const auto& inst = instances[t];
            long g = (long)inst.curve->genus;
            unsigned n = inst.curve->n;
            auto poles = pole_profile(mats[t].N);
            for (unsigned i = 1; i <= n; ++i)
                for (unsigned j = 1; j <= n; ++j)
                    if (poles[i - 1][j - 1] != 2 * g + (long)(i - 1) + (long)(n - j)) return false;
        }
        return true;
    });

    criterion(3, "division correctness on 20 instances incl. 3 ramified", [&] {
        auto t0 = std::chrono::steady_clock::now();
        std::mt19937_64 rng(777);
        unsigned ramified_done = 0, total = 0;
        // affine instances per shape
        const std::vector<std::tuple<unsigned, unsigned, uint32_t, int>> plan = {
            {2, 3, 13, 5}, {3, 2, 13, 4}, {2, 5, 13, 4}, {3, 4, 13, 2}, {4, 3, 13, 1},
            {5, 2, 31, 1}};
        for (auto [n, d, p, count] : plan)
            for (int t = 0; t < count; ++t) {
                auto inst = backward_instance(n, d, p, rng);
                auto cert = divide_point(*inst.curve, inst.P, inst.roots);
                if (!division_checks(cert)) return false;
                ++total;
            }
        // ramified instances: P = (-alpha_i, 0)
        const std::vector<std::tuple<unsigned, unsigned, uint32_t>> rams = {
            {2, 3, 13}, {2, 3, 17}, {3, 2, 13}};
        for (auto [n, d, p] : rams) {
            auto inst = backward_instance(n, d, p, rng);
            Place P = Place::ramified(1 + (unsigned)(rng() % d));
            auto cr = compute_roots(*inst.curve, P);
            Curve cR = cr.base_to_root.is_identity() ? *inst.curve
                                                     : embed_curve(*inst.curve, cr.base_to_root);
            auto cert = divide_point(cR, P.map(cr.base_to_root), cr.roots);
            if (!division_checks(cert)) return false;
            ++ramified_done;
            ++total;
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return total >= 20 && ramified_done >= 3 && secs < 60.0;
    });

    criterion(4, "n=2 oracle equivalence: the 4 root choices match brute force", [&] {
        Field f = Field::prime(13);
        std::vector<FieldElement> alphas{f.from_int(4), f.from_int(10), f.from_int(3)};
        auto c = std::make_shared<Curve>(Curve::create(2, 3, alphas, f));
        Place P = Place::affine(f.zero(), f.from_int(4));
        RootChoice base{{f.from_int(11), f.from_int(6), f.from_int(4)}};
        std::vector<Divisor> produced;
        Field extf = f;
        for (unsigned mask = 0; mask < 4; ++mask) {
            RootChoice rc = base;
            long flips = 0;
            for (unsigned i = 0; i < 2; ++i)
                if (mask & (1u << i)) {
                    rc.r[i] = -rc.r[i];
                    ++flips;
                }
            if (flips % 2) rc.r[2] = -rc.r[2];
            auto cert = divide_point(*c, P, rc);
            produced.push_back(cert.D);
            extf = cert.ext_curve.field;
        }
        auto halves = brute_halving(*c, P, 2);
        if (halves.size() != 4) return false;
        unsigned kc = (unsigned)lcm_u64(extf.degree(), halves[0].field().degree());
        Field E = canonical_extension(13, kc);
        auto lift = [&](const Divisor& dv) {
            return dv.field() == E ? dv : dv.map(find_embedding(dv.field(), E));
        };
        std::set<std::string> got, want;
        for (const auto& dv : produced) got.insert(lift(dv).to_string());
        for (const auto& dv : halves) want.insert(lift(dv).to_string());
        return got == want;  // exact set equality, all 4 on both sides
    });

    criterion(5, "root-variation law over all of (Z/n)^d for (3,2) and (2,3)", [&] {
        std::mt19937_64 rng(55);
        for (auto [n, d, p] : {std::tuple{3u, 2u, 13u}, {2u, 3u, 13u}}) {
            auto inst = backward_instance(n, d, p, rng);
            std::vector<unsigned> a(d, 0);
            for (;;) {
                auto out = vary_roots(*inst.curve, inst.P, inst.roots, a);
                if (!out.principal) return false;
                size_t i = a.size();
                while (i > 0) {
                    if (++a[i - 1] < n) break;
                    a[i - 1] = 0;
                    --i;
                }
                if (i == 0) break;
            }
        }
        return true;
    });

    criterion(6, "gap sets: combinatorial = Riemann-Roch oracle on every class", [&] {
        auto t0 = std::chrono::steady_clock::now();
        const std::vector<std::tuple<unsigned, unsigned, uint32_t>> shapes = {
            {2, 3, 13}, {3, 2, 7}, {2, 5, 11}, {3, 4, 13}};
        for (auto [n, d, p] : shapes) {
            Field f = Field::prime(p);
            std::vector<FieldElement> as;
            for (unsigned i = 0; i < d; ++i) as.push_back(f.from_int((long long)i + 1));
            Curve c = Curve::create(n, d, as, f);
            std::vector<unsigned> a(d - 1, 0);
            for (;;) {
                if (gap_set_oracle(c, a) != gap_set(n, d, a).gaps) return false;
                size_t i = a.size();
                while (i > 0) {
                    if (++a[i - 1] < n) break;
                    a[i - 1] = 0;
                    --i;
                }
                if (i == 0) break;
            }
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return secs < 120.0;
    });

    criterion(7, "weight totals 1,1,8,27,20,5 from the closed form", [&] {
        auto t0 = std::chrono::steady_clock::now();
        const std::vector<long long> expected{1, 1, 8, 27, 20, 5};
        size_t idx = 0;
        for (auto [n, d, p] : kShapes) {
            (void)p;
            if (weight_total(n, d) != expected[idx++]) return false;
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return secs < 1.0;
    });

    criterion(8, "series weight = gap-set weight on every tested class", [&] {
        for (auto [n, d, p] : kShapes) {
            (void)p;
            std::vector<unsigned> a(d - 1, 0);
            for (;;) {
                // weight_from_series asserts agreement internally as well
                if (weight_from_series(n, d, a) != (long long)gap_set(n, d, a).weight) return false;
                size_t i = a.size();
                while (i > 0) {
                    if (++a[i - 1] < n) break;
                    a[i - 1] = 0;
                    --i;
                }
                if (i == 0) break;
            }
        }
        return true;
    });

    criterion(9, "gap count = genus on all classes incl. (5,4)", [&] {
        std::vector<std::pair<unsigned, unsigned>> shapes;
        for (auto [n, d, p] : kShapes) {
            (void)p;
            shapes.emplace_back(n, d);
        }
        shapes.emplace_back(5, 4);
        for (auto [n, d] : shapes) {
            unsigned g = (n - 1) * (d - 1) / 2;
            std::vector<unsigned> a(d - 1, 0);
            for (;;) {
                if (gap_set(n, d, a).gaps.size() != g) return false;
                size_t i = a.size();
                while (i > 0) {
                    if (++a[i - 1] < n) break;
                    a[i - 1] = 0;
                    --i;
                }
                if (i == 0) break;
            }
        }
        return true;
    });

    criterion(10, "cyclotomic identity (n^2-1)/12 for n in [2,12]", [&] {
        for (unsigned n = 2; n <= 12; ++n)
            if (!(csc_sum_check(n) == Rational((long long)n * n - 1, 12))) return false;
        return true;
    });

    criterion(11, "eigenvalue multiplicity d-1 for all coprime n,d <= 8", [&] {
        for (unsigned n = 2; n <= 8; ++n)
            for (unsigned d = 2; d <= 8; ++d)
                if (gcd_u64(n, d) == 1 && !charpoly_multiplicity_check(n, d)) return false;
        return true;
    });

    criterion(12, "semigroup obstruction at nd-n-d for all coprime n,d <= 6", [&] {
        for (unsigned n = 2; n <= 6; ++n)
            for (unsigned d = 2; d <= 6; ++d) {
                if (gcd_u64(n, d) != 1) continue;
                long target = (long)n * d - n - d;
                for (long a = 0; a * (long)n <= target; ++a)
                    if ((target - a * (long)n) % (long)d == 0) return false;  // representable
                Field f = Field::prime(13);
                std::vector<FieldElement> as;
                for (unsigned i = 0; i < d; ++i) as.push_back(f.from_int((long long)i + 1));
                Curve c = Curve::create(n, d, as, f);
                Divisor big(f), small(f);
                big.add(Place::infinity(), target);
                small.add(Place::infinity(), target - 1);
                if (rr_space(c, big).dim != rr_space(c, small).dim) return false;
            }
        return true;
    });

    std::printf("RESULT: %d/12 criteria passed\n", 12 - g_failures);
    return g_failures ? 1 : 0;
}
