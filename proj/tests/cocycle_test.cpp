#include "vfrac/cocycle.hpp"

#include <doctest.h>

using namespace vfrac;

namespace {
const VElement x0 = parse_velement("10100:11000:1,2,3");
const VElement swp = parse_velement("100:100:2,1");
const VElement cyc = parse_velement("10100:10100:2,3,1");
// one piece stretches [1/8,3/16) onto [1/2,1): slope 3 with offset -1/2
const VElement steep = parse_velement("111010000:110101000:1,5,2,3,4");
const FiniteGroup z4 = sample_group("Z4");
const FiniteGroup s3 = sample_group("S3");

std::vector<VElement> corpus() {
    return {VElement{}, x0, invert(x0), swp, cyc, conjugate(cyc, swp),
            multiply(x0, swp), multiply(swp, invert(x0)), steep, invert(steep)};
}

// evaluate p_v at one point straight from the definition
int p_direct(const VElement& v, const Dyadic& y) {
    Dyadic pre = apply(invert(v), y);
    return slope_at(v, pre) - nu(y) + nu(pre);
}

ZValuedSupportMap p_scan(const VElement& v) {
    std::vector<std::pair<Dyadic, int>> entries;
    for (long long k = 0; k < (1 << 12); ++k) {
        Dyadic y = Dyadic::from_parts(k, 12);
        int val = p_direct(v, y);
        if (val != 0) entries.emplace_back(y, val);
    }
    return ZValuedSupportMap::make(std::move(entries));
}

Dyadic dy(const char* s) { return parse_dyadic(s); }
} // namespace

TEST_CASE("valuation convention") {
    CHECK(nu(Dyadic{}) == 0);
    CHECK(nu(dy("1/2")) == -1);
    CHECK(nu(dy("3/8")) == -3);
}

TEST_CASE("support maps are canonical") {
    ZValuedSupportMap m = ZValuedSupportMap::make(
        {{dy("1/2"), -1}, {dy("0"), 2}, {dy("3/4"), 0}});
    REQUIRE(m.support.size() == 2);
    CHECK(m.support[0].first == Dyadic{});
    CHECK(m.at(dy("1/2")) == -1);
    CHECK(m.at(dy("3/4")) == 0);
    CHECK(format_zmap(m) == "0=2;1/2^1=-1");
    CHECK(format_zmap(ZValuedSupportMap{}) == "");
    CHECK_THROWS_AS(ZValuedSupportMap::make({{dy("0"), 1}, {dy("0"), 2}}), input_error);

    ZValuedSupportMap n = ZValuedSupportMap::make({{dy("1/2"), 1}, {dy("1/4"), 3}});
    CHECK(zmap_add(m, n) == ZValuedSupportMap::make({{dy("0"), 2}, {dy("1/4"), 3}}));
    CHECK(zmap_add(m, zmap_negate(m)).empty());
    // pullback by swap relocates the support
    CHECK(zmap_pullback(n, swp) ==
          ZValuedSupportMap::make({{dy("0"), 1}, {dy("3/4"), 3}}));
}

TEST_CASE("perturbed slope map on generators") {
    CHECK(p_cocycle(VElement{}).empty());
    CHECK(p_cocycle(invert(x0)) ==
          ZValuedSupportMap::make({{dy("0"), 1}, {dy("1/2"), -1}}));
    CHECK(p_cocycle(x0) == ZValuedSupportMap::make({{dy("0"), -1}, {dy("1/4"), 1}}));
    // steep piece: 1/8 -> 1/2 with slope 3, deviation +1 at the image
    CHECK(p_cocycle(steep).at(dy("1/2")) == 1);
}

TEST_CASE("perturbed slope map matches the scan oracle") {
    for (const VElement& v : corpus()) {
        ZValuedSupportMap p = p_cocycle(v);
        for (const auto& [y, k] : p.support) CHECK(y.exp() <= 12);
        CHECK(p == p_scan(v));
    }
}

TEST_CASE("perturbed slope map is a cocycle with total weight zero") {
    std::vector<VElement> vs = corpus();
    for (const VElement& v : vs) {
        int total = 0;
        for (const auto& [y, k] : p_cocycle(v).support) total += k;
        CHECK(total == 0);
    }
    for (const VElement& v : vs)
        for (const VElement& w : vs)
            CHECK(p_cocycle(multiply(v, w)) ==
                  zmap_add(p_cocycle(v), zmap_pullback(p_cocycle(w), v)));
}

TEST_CASE("exception sets") {
    CHECK(exception_set(VElement{}).empty());
    CHECK(exception_set(x0) == std::vector<Dyadic>{dy("0"), dy("1/2")});
    for (const VElement& v : corpus()) {
        // pulling the support of p_v back through v recovers the set
        std::vector<Dyadic> back;
        VElement vi = invert(v);
        for (const auto& [y, k] : p_cocycle(v).support) back.push_back(apply(vi, y));
        std::sort(back.begin(), back.end());
        CHECK(exception_set(v) == back);
        for (const Dyadic& x : exception_set(v)) CHECK(p_direct(v, apply(v, x)) != 0);
    }
    std::vector<Dyadic> fs = exception_set(steep);
    CHECK(std::find(fs.begin(), fs.end(), dy("1/8")) != fs.end());
}

TEST_CASE("powers in a finite group") {
    CHECK(group_power(z4, 1, -1) == 3);
    CHECK(group_power(z4, 1, 6) == 2);
    CHECK(group_power(z4, 0, -7) == 0);
    CHECK(group_power(s3, 3, -1) == 4);
    CHECK(group_power(s3, 2, 2) == 0);
}

TEST_CASE("slope cocycle in factored form") {
    SlopeCocycle triv = slope_cocycle(z4, 0, x0);
    CHECK(triv.at(dy("0")) == 0);
    CHECK(triv.at(dy("7/8")) == 0);

    SlopeCocycle s = slope_cocycle(z4, 1, x0);
    CHECK(s.at(dy("0")) == 3);
    CHECK(s.at(dy("1/4")) == 0);
    CHECK(s.at(dy("1/2")) == 1);
    CHECK_THROWS_AS(slope_cocycle(s3, 2, x0), input_error);

    // chain rule at sampled points
    std::vector<Dyadic> points = {dy("0"), dy("1/4"), dy("3/8"), dy("1/2"), dy("3/4")};
    for (const VElement& v : {x0, swp, cyc})
        for (const VElement& w : {invert(x0), swp, multiply(x0, cyc)}) {
            SlopeCocycle sv = slope_cocycle(z4, 1, v);
            SlopeCocycle sw = slope_cocycle(z4, 1, w);
            SlopeCocycle svw = slope_cocycle(z4, 1, multiply(v, w));
            for (const Dyadic& x : points)
                CHECK(svw.at(x) == z4.mul(sv.at(x), sw.at(apply(invert(v), x))));
        }
}

TEST_CASE("cocycle decomposition round trips") {
    KElement f = parse_kelement(z4, "1/2=3");
    CocycleDecomposition dec = decompose_cocycle(cocycle_from_pair(z4, 1, f));
    CHECK(dec.zeta == 1);
    CHECK(dec.f(dy("0")) == 0);
    CHECK(dec.f(dy("1/2")) == 3);
    CHECK(dec.f(dy("1/4")) == 0);

    CocycleDecomposition pw = decompose_cocycle(cocycle_from_power(z4, 1));
    CHECK(pw.zeta == 1);
    for (const char* s : {"1/2", "1/4", "3/8", "5/8"}) {
        Dyadic x = dy(s);
        CHECK(pw.f(x) == group_power(z4, 1, -nu(x)));
    }

    CocycleDecomposition tr = decompose_cocycle(cocycle_trivial(z4));
    CHECK(tr.zeta == 0);
    CHECK(tr.f(dy("1/2")) == 0);
    CHECK(tr.f(dy("3/4")) == 0);

    // generic reconstruction from the recovered data
    CocycleOracle c = cocycle_from_pair(z4, 1, parse_kelement(z4, "1/4=2;5/8=1"));
    CocycleDecomposition d = decompose_cocycle(c);
    for (const VElement& v : {x0, swp, cyc, multiply(swp, x0)})
        for (const char* s : {"0", "1/4", "1/2", "5/8", "7/8"}) {
            Dyadic x = dy(s);
            Dyadic pre = apply(invert(v), x);
            int expect = group_power(z4, d.zeta, slope_at(v, pre));
            expect = z4.mul(expect, d.f(x));
            expect = z4.mul(expect, z4.inv(d.f(pre)));
            CHECK(c.eval(v, x) == expect);
        }
}

TEST_CASE("decomposition rejects bad oracles") {
    CocycleOracle bad{z4, [](const VElement&, const Dyadic&) { return 1; }};
    CHECK_THROWS_WITH_AS(decompose_cocycle(bad), "decompose_cocycle: cocycle identity violated",
                         input_error);
    CocycleOracle off{s3, [](const VElement&, const Dyadic&) { return 2; }};
    CHECK_THROWS_WITH_AS(decompose_cocycle(off),
                         "decompose_cocycle: cocycle value is not central", input_error);
}

TEST_CASE("slope defect of a conjugation") {
    for (const VElement& phi : corpus()) CHECK(gamma(phi, dy("0")) == 0);
    CHECK(gamma(x0, dy("1/2")) == -2);
    CHECK(mu(x0, dy("1/2")) == -1);

    // closed form: gamma_phi(x) = log2 phi'(phi^-1 0) - log2 phi'(phi^-1 x)
    std::vector<Dyadic> points = {dy("0"), dy("1/4"), dy("1/2"), dy("5/8"), dy("3/4"),
                                  dy("7/8")};
    for (const VElement& phi : corpus()) {
        VElement pi = invert(phi);
        for (const Dyadic& x : points) {
            int closed = slope_at(phi, apply(pi, Dyadic{})) - slope_at(phi, apply(pi, x));
            CHECK(gamma(phi, x) == closed);
            CHECK(mu(phi, x) == closed - nu(apply(pi, x)) + nu(x));
        }
    }
}

TEST_CASE("slope defect does not depend on the transporter") {
    std::vector<Dyadic> points = {dy("1/4"), dy("1/2"), dy("5/8"), dy("7/8")};
    for (const VElement& phi : {x0, swp, conjugate(cyc, swp), multiply(x0, cyc)}) {
        for (const Dyadic& x : points) {
            VElement base = find_transitive(Dyadic{}, x);
            int expect = gamma(phi, x);
            for (int e = -2; e <= 2; ++e) {
                // other transporters: twist by stabilizers on either side
                VElement v1 = multiply(base, find_in_stabilizer(Dyadic{}, e));
                VElement v2 = multiply(find_in_stabilizer(x, e), base);
                for (const VElement& v : {v1, v2}) {
                    REQUIRE(apply(v, Dyadic{}) == x);
                    VElement w = multiply(invert(phi), multiply(v, phi));
                    int got = slope_at(w, apply(invert(phi), Dyadic{})) -
                              slope_at(v, Dyadic{});
                    CHECK(got == expect);
                }
            }
        }
    }
}

TEST_CASE("slope defect composition law") {
    std::vector<Dyadic> points = {dy("0"), dy("1/4"), dy("1/2"), dy("3/4"), dy("5/8")};
    std::vector<VElement> phis = {x0, swp, cyc, invert(x0), multiply(x0, swp)};
    for (const VElement& phi : phis)
        for (const VElement& psi : phis) {
            Dyadic anchor = apply(invert(phi), Dyadic{});
            for (const Dyadic& x : points) {
                int lhs = gamma(multiply(phi, psi), x);
                int rhs = gamma(phi, x) + gamma(psi, apply(invert(phi), x)) -
                          gamma(psi, anchor);
                CHECK(lhs == rhs);
            }
        }
}
