#include "vfrac/automorphisms.hpp"

#include <doctest.h>

using namespace vfrac;

namespace {
const FiniteGroup z2 = sample_group("Z2");
const FiniteGroup z4 = sample_group("Z4");
const FiniteGroup s3 = sample_group("S3");
const FiniteGroup d4 = sample_group("D4");
const VElement x0 = parse_velement("10100:11000:1,2,3");
const VElement swp = parse_velement("100:100:2,1");
const VElement cyc = parse_velement("10100:10100:2,3,1");

Dyadic dy(const char* s) { return parse_dyadic(s); }
KElement kel(const FiniteGroup& g, const char* s) { return parse_kelement(g, s); }
int idx(const FiniteGroup& g, const char* name) { return g.index_of(name); }

std::vector<VElement> vcorpus() {
    return {VElement{}, x0, invert(x0), swp, cyc, conjugate(cyc, swp),
            multiply(x0, swp), multiply(swp, invert(x0))};
}

std::vector<Dyadic> points() {
    std::vector<Dyadic> out;
    for (const char* s : {"0", "1/16", "1/8", "1/4", "5/16", "3/8", "1/2", "9/16", "5/8",
                          "3/4", "7/8", "15/16"})
        out.push_back(dy(s));
    return out;
}

std::vector<GElement> gels(const FiniteGroup& g) {
    int a = 1 % g.order(), b = (g.order() - 1) % g.order();
    std::vector<GElement> out;
    out.push_back(g_neutral(g));
    out.push_back({k_point(g, dy("0"), a), VElement{}});
    out.push_back({k_point(g, dy("1/4"), b), x0});
    out.push_back({k_mul(k_point(g, dy("3/8"), a), k_point(g, dy("3/4"), b)), swp});
    out.push_back({k_point(g, dy("5/8"), a), multiply(x0, cyc)});
    out.push_back({k_point(g, dy("1/2"), b), invert(x0)});
    return out;
}

GElement umul(const GElement& a, const GElement& b) {
    return g_multiply(identity_map(a.k.group()), a, b);
}

// brute scan for the conjugation defect, exponent <= 12
KElement defect_scan(const NormalizerMap& f, const VElement& v) {
    VElement vi = invert(v);
    std::vector<std::pair<Dyadic, int>> pts;
    for (long long k = 0; k < (1 << 12); ++k) {
        Dyadic y = Dyadic::from_parts(k, 12);
        int val = f.group.mul(f.at(y), f.group.inv(f.at(apply(vi, y))));
        if (val != 0) pts.emplace_back(y, val);
    }
    return KElement::make(f.group, std::move(pts));
}
} // namespace

TEST_CASE("membership in the distinguished set") {
    CHECK(!in_Y(dy("0")));
    CHECK(in_Y(dy("1/2")));
    CHECK(in_Y(dy("1/4")));
    CHECK(!in_Y(dy("3/4")));
    CHECK(in_Y(dy("5/8")));
    CHECK(!in_Y(dy("7/8")));
    CHECK(in_Y(dy("9/16")));
    CHECK(!in_Y(dy("3/8")));
    CHECK(!in_Y(dy("11/16")));
}

TEST_CASE("normalizer maps evaluate factor by factor") {
    NormalizerMap f = make_normalizer(d4, idx(d4, "r"), kel(d4, "1/2=s"), {idx(d4, "r2")});
    CHECK(f.at(dy("0")) == idx(d4, "r"));
    CHECK(f.at(dy("1/2")) ==
          d4.mul(d4.mul(idx(d4, "r"), idx(d4, "s")), idx(d4, "r2")));
    CHECK(f.at(dy("1/4")) == d4.mul(idx(d4, "r"), idx(d4, "r2")));
    CHECK(f.at(dy("3/4")) == idx(d4, "r"));

    CHECK_THROWS_AS(make_normalizer(d4, 0, KElement(d4), {idx(d4, "r")}), input_error);
    CHECK_THROWS_AS(make_normalizer(d4, 0, KElement(d4), {idx(d4, "s")}), input_error);
    CHECK_THROWS_AS(make_normalizer(z4, 0, KElement(z4), {1}), input_error);
    CHECK_THROWS_AS(make_normalizer(d4, 0, KElement(z4), {}), input_error);
    // order-2 central twists collapse
    NormalizerMap two = make_normalizer(d4, 0, KElement(d4), {idx(d4, "r2"), idx(d4, "r2")});
    CHECK(two.indicators.empty());
}

TEST_CASE("normalizer map grammar") {
    NormalizerMap f = make_normalizer(d4, idx(d4, "r"), kel(d4, "1/2=s"), {idx(d4, "r2")});
    CHECK(format_normalizer(f) == "const:r*finite:1/2^1=s*chiY:r2");
    NormalizerMap back = parse_normalizer(d4, format_normalizer(f));
    for (const Dyadic& x : points()) CHECK(back.at(x) == f.at(x));

    CHECK(format_normalizer(nm_constant(d4, 0)) == "const:e");
    NormalizerMap collapsed = parse_normalizer(d4, "chiY:r2*chiY:r2");
    CHECK(collapsed.indicators.empty());
    CHECK(collapsed.at(dy("1/2")) == 0);
    // product grammar composes factors in order
    NormalizerMap g = parse_normalizer(s3, "const:(12)*finite:0=(123)");
    CHECK(g.at(dy("0")) == s3.mul(idx(s3, "(12)"), idx(s3, "(123)")));
    CHECK_THROWS_AS(parse_normalizer(d4, ""), input_error);
    CHECK_THROWS_AS(parse_normalizer(d4, "spin:r"), input_error);
    CHECK_THROWS_AS(parse_normalizer(d4, "const"), input_error);
    CHECK_THROWS_AS(parse_normalizer(d4, "const:zz"), input_error);
}

TEST_CASE("normalizer maps multiply and invert pointwise") {
    NormalizerMap f1 = make_normalizer(d4, idx(d4, "rs"), kel(d4, "1/4=r;5/8=r2s"),
                                       {idx(d4, "r2")});
    NormalizerMap f2 = make_normalizer(d4, idx(d4, "r3"), kel(d4, "1/4=s;1/2=r2"), {});
    NormalizerMap f3 = parse_normalizer(d4, "chiY:r2*finite:7/8=r2");
    for (const Dyadic& x : points()) {
        CHECK(nm_mul(f1, f2).at(x) == d4.mul(f1.at(x), f2.at(x)));
        CHECK(nm_mul(f2, f3).at(x) == d4.mul(f2.at(x), f3.at(x)));
        CHECK(nm_mul(nm_mul(f1, f2), f3).at(x) == nm_mul(f1, nm_mul(f2, f3)).at(x));
        CHECK(nm_mul(f1, nm_inverse(f1)).at(x) == 0);
        CHECK(nm_mul(nm_inverse(f2), f2).at(x) == 0);
        CHECK(nm_inverse(f3).at(x) == d4.inv(f3.at(x)));
    }
}

TEST_CASE("indicator defect sets") {
    CHECK(chi_defect(VElement{}).empty());
    CHECK(chi_defect(x0) == std::vector<Dyadic>{dy("3/8"), dy("1/2")});
    for (const VElement& v : vcorpus()) {
        std::vector<Dyadic> exact = chi_defect(v);
        for (const Dyadic& y : exact) CHECK(y.exp() <= 12);
        std::vector<Dyadic> scan;
        VElement vi = invert(v);
        for (long long k = 0; k < (1 << 12); ++k) {
            Dyadic y = Dyadic::from_parts(k, 12);
            if (in_Y(y) != in_Y(apply(vi, y))) scan.push_back(y);
        }
        CHECK(exact == scan);
    }
}

TEST_CASE("conjugation defects of normalizer maps") {
    NormalizerMap chi = nm_indicator(z2, 1);
    CHECK(nm_defect(chi, x0) ==
          KElement::make(z2, {{dy("3/8"), 1}, {dy("1/2"), 1}}));
    CHECK(nm_defect(nm_constant(d4, idx(d4, "rs")), x0).is_neutral());

    NormalizerMap comp = make_normalizer(d4, idx(d4, "r"), kel(d4, "1/4=s;5/8=r3"),
                                         {idx(d4, "r2")});
    for (const VElement& v : vcorpus()) {
        KElement exact = nm_defect(comp, v);
        for (const auto& [y, val] : exact.support()) CHECK(y.exp() <= 12);
        CHECK(exact == defect_scan(comp, v));
        CHECK(nm_defect(chi, v) == defect_scan(chi, v));
    }
}

TEST_CASE("slope twist family") {
    for (const GElement& g : gels(z4)) CHECK(E_apply(0, g) == g);
    GElement im = E_apply(1, GElement{KElement(z4), invert(x0)});
    CHECK(im.v == invert(x0));
    CHECK(im.k == kel(z4, "0=1;1/2=3"));

    for (const GElement& a : gels(z4))
        for (const GElement& b : gels(z4)) {
            CHECK(E_apply(1, umul(a, b)) == umul(E_apply(1, a), E_apply(1, b)));
            CHECK(E_apply(1, E_apply(1, a)) == E_apply(2, a));
            CHECK(E_apply(3, E_apply(1, a)) == a);
        }
    CHECK_THROWS_AS(E_apply(2, GElement{KElement(s3), x0}), input_error);
}

TEST_CASE("conjugation by normalizer maps") {
    // constant over an abelian group: the identity automorphism
    NormalizerMap cz = nm_constant(z4, 2);
    for (const GElement& g : gels(z4)) CHECK(ad_apply(cz, g) == g);

    // constant over S3: pointwise conjugation, trivial defect
    NormalizerMap cs = nm_constant(s3, idx(s3, "(12)"));
    GElement g{kel(s3, "0=(123);1/2=(13)"), x0};
    GElement out = ad_apply(cs, g);
    CHECK(out.v == x0);
    int c = idx(s3, "(12)");
    CHECK(out.k.support().size() == 2);
    CHECK(out.k.at(dy("0")) == s3.mul(s3.mul(c, idx(s3, "(123)")), s3.inv(c)));
    CHECK(out.k.at(dy("1/2")) == s3.mul(s3.mul(c, idx(s3, "(13)")), s3.inv(c)));

    // finitely supported map: agrees with conjugation inside the group
    KElement fk = kel(s3, "0=(123);3/8=(12)");
    NormalizerMap fin = nm_finite(fk);
    GElement fhat{fk, VElement{}};
    GroupMap ids3 = identity_map(s3);
    for (const GElement& h : gels(s3))
        CHECK(ad_apply(fin, h) ==
              g_multiply(ids3, g_multiply(ids3, fhat, h), g_invert(ids3, fhat)));

    // indicator over Z/2 on a pure V element: the defect is the whole image
    GElement pure{KElement(z2), x0};
    CHECK(ad_apply(nm_indicator(z2, 1), pure).k ==
          KElement::make(z2, {{dy("3/8"), 1}, {dy("1/2"), 1}}));

    NormalizerMap comp = make_normalizer(d4, idx(d4, "r"), kel(d4, "1/4=s;5/8=r3"),
                                         {idx(d4, "r2")});
    for (const GElement& a : gels(d4))
        for (const GElement& b : gels(d4))
            CHECK(ad_apply(comp, umul(a, b)) == umul(ad_apply(comp, a), ad_apply(comp, b)));
}

TEST_CASE("relabeling automorphisms") {
    GroupMap idz = identity_map(z4);
    for (const GElement& g : gels(z4)) CHECK(A_apply(VElement{}, idz, g) == g);

    GElement loc{k_point(z4, dy("1/4"), 1), VElement{}};
    CHECK(A_apply(swp, idz, loc).k == k_point(z4, dy("3/4"), 1));
    CHECK(A_apply(swp, sample_endo(z4, "inv"), loc).k == k_point(z4, dy("3/4"), 3));

    GroupMap ad12 = inner(s3, idx(s3, "(12)"));
    for (const GElement& a : gels(s3))
        for (const GElement& b : gels(s3))
            CHECK(A_apply(x0, ad12, umul(a, b)) ==
                  umul(A_apply(x0, ad12, a), A_apply(x0, ad12, b)));

    // support carried forward exactly
    for (const GElement& a : gels(s3)) {
        std::vector<Dyadic> expect;
        for (const auto& [x, val] : a.k.support()) expect.push_back(apply(x0, x));
        std::sort(expect.begin(), expect.end());
        GElement out = A_apply(x0, ad12, a);
        std::vector<Dyadic> got;
        for (const auto& [x, val] : out.k.support()) got.push_back(x);
        CHECK(got == expect);
        CHECK(out.v == conjugate(x0, a.v));
    }
    CHECK_THROWS_AS(A_apply(x0, sample_endo(z4, "eps"), gels(z4)[2]), input_error);
    CHECK_THROWS_AS(A_apply(x0, sample_endo(z4, "pow:2"), gels(z4)[2]), input_error);
}

TEST_CASE("slope twists commute with conjugations") {
    NormalizerMap comp = make_normalizer(d4, idx(d4, "rs"), kel(d4, "1/4=r;7/8=s"),
                                         {idx(d4, "r2")});
    for (const GElement& g : gels(d4))
        CHECK(E_apply(2, ad_apply(comp, g)) == ad_apply(comp, E_apply(2, g)));
}

TEST_CASE("composite automorphisms and their inverses") {
    for (const GElement& g : gels(d4)) CHECK(Xi_apply(trivial_auttuple(d4), g) == g);

    // kernel tuples act trivially
    for (const FiniteGroup& grp : {s3, d4})
        for (int v = 0; v < grp.order(); ++v) {
            AutTuple ker = xi_kernel(grp, v);
            for (const GElement& g : gels(grp)) CHECK(Xi_apply(ker, g) == g);
        }

    GroupMap aut = enumerate_automorphisms(d4)[1];
    REQUIRE(!(aut == identity_map(d4)));
    AutTuple t1 = make_auttuple(idx(d4, "r2"),
                                make_normalizer(d4, idx(d4, "r"), kel(d4, "1/4=s;5/8=r3"),
                                                {idx(d4, "r2")}),
                                x0, aut);
    AutTuple t2 = make_auttuple(1, make_normalizer(z4, 3, kel(z4, "3/8=2"), {}),
                                multiply(x0, swp), sample_endo(z4, "inv"));
    AutTuple u1 = xi_inverse(t1);
    for (const GElement& g : gels(d4)) {
        CHECK(Xi_apply(u1, Xi_apply(t1, g)) == g);
        CHECK(Xi_apply(t1, Xi_apply(u1, g)) == g);
    }
    AutTuple u2 = xi_inverse(t2);
    for (const GElement& g : gels(z4)) {
        CHECK(Xi_apply(u2, Xi_apply(t2, g)) == g);
        CHECK(Xi_apply(t2, Xi_apply(u2, g)) == g);
    }
    CHECK_THROWS_AS(make_auttuple(idx(d4, "r"), nm_constant(d4, 0), x0, identity_map(d4)),
                    input_error);
}

TEST_CASE("semidirect action on twist data") {
    NormalizerMap f = make_normalizer(d4, idx(d4, "rs"), kel(d4, "1/4=r;5/8=s"),
                                      {idx(d4, "r2")});
    SigmaImage fixed = sigma_act(VElement{}, identity_map(d4), idx(d4, "r2"), f);
    CHECK(fixed.zeta == idx(d4, "r2"));
    for (const Dyadic& x : points()) {
        CHECK(fixed.f.at(x) == f.at(x));
        CHECK(fixed.eval(x) == f.at(x));
    }

    CHECK(sigma_act(x0, sample_endo(z4, "inv"), 1, nm_constant(z4, 0)).zeta == 3);

    // structured image equals the defining formula everywhere sampled
    GroupMap aut = enumerate_automorphisms(d4)[1];
    for (const VElement& phi : {x0, swp, multiply(x0, cyc), invert(x0)})
        for (const GroupMap& beta : {identity_map(d4), aut}) {
            SigmaImage s = sigma_act(phi, beta, idx(d4, "r2"), f);
            for (const Dyadic& x : points()) CHECK(s.f.at(x) == s.eval(x));
        }

    // cocycle-free composition law, modulo constant maps
    NormalizerMap fz = make_normalizer(z4, 2, kel(z4, "1/2=1;3/4=3"), {});
    GroupMap inv4 = sample_endo(z4, "inv");
    std::vector<std::pair<VElement, GroupMap>> ps = {
        {x0, inv4}, {swp, identity_map(z4)}, {cyc, inv4}, {invert(x0), identity_map(z4)}};
    for (const auto& [phi1, beta1] : ps)
        for (const auto& [phi2, beta2] : ps) {
            SigmaImage inner2 = sigma_act(phi2, beta2, 1, fz);
            SigmaImage rhs = sigma_act(phi1, beta1, inner2.zeta, inner2.f);
            SigmaImage lhs = sigma_act(multiply(phi1, phi2), compose_maps(beta1, beta2), 1, fz);
            CHECK(lhs.zeta == rhs.zeta);
            int shift = z4.mul(lhs.f.at(dy("0")), z4.inv(rhs.f.at(dy("0"))));
            for (const Dyadic& x : points())
                CHECK(z4.mul(lhs.f.at(x), z4.inv(rhs.f.at(x))) == shift);
        }
}

TEST_CASE("conjugating twists through relabelings") {
    // A E ad A^-1 agrees with the semidirect image under Xi
    NormalizerMap f = make_normalizer(d4, idx(d4, "rs"), kel(d4, "1/4=r;5/8=s"),
                                      {idx(d4, "r2")});
    GroupMap aut = enumerate_automorphisms(d4)[1];
    for (const VElement& phi : {x0, swp, multiply(cyc, x0)})
        for (const GroupMap& beta : {identity_map(d4), aut}) {
            SigmaImage s = sigma_act(phi, beta, idx(d4, "r2"), f);
            GroupMap bi = invert_map(beta);
            VElement pi = invert(phi);
            for (const GElement& g : gels(d4)) {
                GElement lhs = A_apply(
                    phi, beta,
                    E_apply(idx(d4, "r2"), ad_apply(f, A_apply(pi, bi, g))));
                GElement rhs = E_apply(s.zeta, ad_apply(s.f, g));
                CHECK(lhs == rhs);
            }
        }
}

TEST_CASE("coefficient relabeling between twisted groups") {
    GroupMap ad12 = inner(s3, idx(s3, "(12)"));
    for (const GElement& g : gels(s3)) CHECK(isomone_apply(identity_map(s3), g) == g);

    GroupMap beta = inner(s3, idx(s3, "(123)"));
    GroupMap alpha = ad12;
    GroupMap moved = compose_maps(beta, compose_maps(alpha, invert_map(beta)));
    for (const GElement& a : gels(s3)) {
        // support preserved pointwise
        CHECK(isomone_apply(beta, a).k.support().size() == a.k.support().size());
        CHECK(isomone_apply(beta, a).v == a.v);
        for (const GElement& b : gels(s3))
            CHECK(isomone_apply(beta, g_multiply(alpha, a, b)) ==
                  g_multiply(moved, isomone_apply(beta, a), isomone_apply(beta, b)));
        // equivariance of the twisted action
        for (const VElement& v : {x0, swp})
            CHECK(isomone_apply(beta, GElement{jones_act(alpha, v, a.k), VElement{}}).k ==
                  jones_act(moved, v, isomone_apply(beta, a).k));
    }
    CHECK_THROWS_AS(isomone_apply(sample_endo(z4, "eps"), gels(z4)[1]), input_error);
}

TEST_CASE("twisting chains") {
    GroupMap id3 = identity_map(s3);
    for (int n = -5; n <= 5; ++n)
        CHECK(k_chain(id3, idx(s3, "(12)"), n) == (n % 2 ? idx(s3, "(12)") : 0));

    GroupMap al = inner(s3, idx(s3, "(12)"));
    int k = idx(s3, "(123)");
    for (int n = -6; n <= 6; ++n)
        for (int m = -6; m <= 6; ++m) {
            int lhs = s3.mul(k_chain(al, k, n), power(al, n)(k_chain(al, k, m)));
            CHECK(lhs == k_chain(al, k, n + m));
        }
}

TEST_CASE("twisted conjugation onto a re-twisted group") {
    GroupMap id3 = identity_map(s3);
    for (const GElement& g : gels(s3)) CHECK(isomtwo_apply(id3, 0, g) == g);

    // defect of a pure V element sits exactly on the perturbed support
    GElement pure{KElement(s3), x0};
    GElement im = isomtwo_apply(id3, idx(s3, "(12)"), pure);
    CHECK(im.v == x0);
    CHECK(im.k == kel(s3, "0=(12);1/4=(12)"));

    for (const GroupMap& alpha : {id3, inner(s3, idx(s3, "(12)"))})
        for (int k : {idx(s3, "(12)"), idx(s3, "(123)")}) {
            GroupMap tw = compose_maps(inner(s3, k), alpha);
            for (const GElement& a : gels(s3)) {
                GElement ia = isomtwo_apply(alpha, k, a);
                for (const GElement& b : gels(s3))
                    CHECK(isomtwo_apply(alpha, k, g_multiply(alpha, a, b)) ==
                          g_multiply(tw, ia, isomtwo_apply(alpha, k, b)));
            }
            // support of the defect stays inside the image of the exceptions
            for (const VElement& v : vcorpus()) {
                GElement dv = isomtwo_apply(alpha, k, GElement{KElement(s3), v});
                std::vector<Dyadic> allowed;
                for (const Dyadic& x : exception_set(v)) allowed.push_back(apply(v, x));
                std::sort(allowed.begin(), allowed.end());
                for (const auto& [y, val] : dv.k.support())
                    CHECK(std::binary_search(allowed.begin(), allowed.end(), y));
            }
        }
    CHECK_THROWS_AS(isomtwo_apply(sample_endo(z4, "pow:2"), 1, gels(z4)[1]), input_error);
}
