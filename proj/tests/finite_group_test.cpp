#include "vfrac/finite_group.hpp"

#include <doctest.h>

#include <set>

using namespace vfrac;

TEST_CASE("load and validate tables") {
    FiniteGroup z3 = load_group("order 3\n0 1 2\n1 2 0\n2 0 1\n");
    CHECK(z3.order() == 3);
    CHECK(z3.mul(1, 2) == 0);
    CHECK(z3.inv(1) == 2);
    CHECK(z3.element_order(1) == 3);

    // a Latin square with identity that is not associative
    CHECK_THROWS_WITH_AS(load_group("order 5\n"
                                    "0 1 2 3 4\n"
                                    "1 0 3 4 2\n"
                                    "2 3 4 0 1\n"
                                    "3 4 1 2 0\n"
                                    "4 2 0 1 3\n"),
                         "table is not associative", input_error);
    CHECK_THROWS_AS(load_group("order 2\n0 1\n1 1\n"), input_error); // no inverse
    CHECK_THROWS_AS(load_group("order 2\n1 0\n0 1\n"), input_error); // bad identity
    CHECK_THROWS_AS(load_group("order 2\n0 1\n"), input_error);      // truncated
    CHECK_THROWS_AS(load_group("order 2\n0 1\n1 0\nnames a\n"), input_error);
    CHECK_THROWS_AS(load_group("nonsense"), input_error);

    FiniteGroup named = load_group("order 2\n0 1\n1 0\nnames e t\n");
    CHECK(named.name_of(1) == "t");
    CHECK(named.index_of("t") == 1);
    CHECK(named.index_of("0") == 0);
    CHECK_THROWS_AS(named.index_of("bogus"), input_error);
    CHECK(load_group(format_group(named)) == named);
}

TEST_CASE("bundled groups") {
    for (const auto& name : sample_group_names()) {
        FiniteGroup g = sample_group(name);
        CHECK(g.order() >= 2);
        CHECK(load_group(format_group(g)) == g);
    }
    CHECK(sample_group("Z6").order() == 6);
    CHECK(sample_group("S3").is_abelian() == false);
    CHECK(sample_group("D4").order() == 8);
    CHECK_THROWS_AS(sample_group("Z5"), input_error);

    FiniteGroup s3 = sample_group("S3");
    CHECK(s3.index_of("(12)") == 2);
    CHECK(s3.element_order(3) == 3); // (123)
    CHECK(s3.mul(2, 2) == 0);
    // (12)(23): apply (23) first, then (12): 1->1->2, 2->3->3, 3->2->1 = (123)
    CHECK(s3.mul(2, 1) == 3);
}

TEST_CASE("centers") {
    CHECK(center(sample_group("Z4")).size() == 4);
    CHECK(center(sample_group("S3")) == std::vector<int>{0});
    FiniteGroup d4 = sample_group("D4");
    CHECK(center(d4) == std::vector<int>{0, d4.index_of("r2")});
}

TEST_CASE("inner automorphisms") {
    FiniteGroup s3 = sample_group("S3");
    CHECK(inner(s3, 0) == identity_map(s3));
    GroupMap ad12 = inner(s3, s3.index_of("(12)"));
    CHECK(ad12.images[s3.index_of("(123)")] == s3.index_of("(132)"));
    CHECK(ad12.images[s3.index_of("(132)")] == s3.index_of("(123)"));
    FiniteGroup z6 = sample_group("Z6");
    for (int a = 0; a < 6; ++a)
        CHECK(inner(z6, a) == identity_map(z6));
}

TEST_CASE("map construction and builders") {
    FiniteGroup z6 = sample_group("Z6");
    GroupMap dbl = sample_endo(z6, "pow:2");
    CHECK(dbl.images == std::vector<int>{0, 2, 4, 0, 2, 4});
    CHECK(sample_endo(z6, "inv").images == std::vector<int>{0, 5, 4, 3, 2, 1});
    CHECK(sample_endo(z6, "eps").images == std::vector<int>(6, 0));
    CHECK_THROWS_AS(sample_endo(sample_group("S3"), "inv"), input_error);
    FiniteGroup s3 = sample_group("S3");
    CHECK(sample_endo(s3, "ad:(12)") == inner(s3, 2));
    CHECK_THROWS_AS(sample_endo(s3, "wat"), input_error);
    CHECK_THROWS_AS(make_map(z6, z6, {0, 2, 4, 0, 2, 5}), input_error);
    CHECK_THROWS_AS(make_map(z6, z6, {1, 2, 4, 0, 2, 4}), input_error);
    CHECK(load_map(z6, z6, format_map(dbl)) == dbl);
    CHECK_THROWS_AS(load_map(z6, z6, "map 0 2 4"), input_error);
}

TEST_CASE("compose, invert, power") {
    FiniteGroup z3 = sample_group("Z3");
    GroupMap inv = sample_endo(z3, "inv");
    CHECK(compose_maps(inv, invert_map(inv)) == identity_map(z3));
    CHECK(power(inv, 2) == identity_map(z3));
    CHECK(power(inv, -1) == inv);
    CHECK(power(inv, 0) == identity_map(z3));
    FiniteGroup z4 = sample_group("Z4");
    GroupMap twice = sample_endo(z4, "pow:2");
    CHECK(is_bijective(twice) == false);
    CHECK_THROWS_AS(power(twice, -1), input_error);
    CHECK(power(twice, 2).images == std::vector<int>(4, 0));
}

TEST_CASE("isomorphism enumeration") {
    CHECK(enumerate_automorphisms(sample_group("Z4")).size() == 2);
    CHECK(enumerate_automorphisms(sample_group("Z6")).size() == 2);
    CHECK(enumerate_automorphisms(sample_group("Z2xZ2")).size() == 6);
    CHECK(enumerate_automorphisms(sample_group("D4")).size() == 8);
    CHECK(enumerate_isomorphisms(sample_group("Z4"), sample_group("Z2xZ2")).empty());
    CHECK(enumerate_isomorphisms(sample_group("Z4"), sample_group("Z6")).empty());

    FiniteGroup s3 = sample_group("S3");
    auto auts = enumerate_automorphisms(s3);
    REQUIRE(auts.size() == 6);
    for (const auto& a : auts) {
        bool is_inner = false;
        for (int g = 0; g < 6 && !is_inner; ++g)
            is_inner = a == inner(s3, g);
        CHECK(is_inner);
    }
    // deterministic order: sorted by image tuple, identity-ish first
    CHECK(std::is_sorted(auts.begin(), auts.end(), [](const GroupMap& x, const GroupMap& y) {
        return x.images < y.images;
    }));
}

TEST_CASE("automorphism group laws on samples") {
    for (const auto& name : sample_group_names()) {
        FiniteGroup g = sample_group(name);
        auto auts = enumerate_automorphisms(g);
        std::set<std::vector<int>> have;
        for (const auto& a : auts)
            have.insert(a.images);
        CHECK(have.count(identity_map(g).images) == 1);
        for (const auto& a : auts) {
            CHECK(have.count(invert_map(a).images) == 1);
            for (const auto& b : auts)
                CHECK(have.count(compose_maps(a, b).images) == 1);
        }
        // inner automorphism count |G| / |Z(G)|
        std::set<std::vector<int>> inners;
        for (int x = 0; x < g.order(); ++x)
            inners.insert(inner(g, x).images);
        CHECK(inners.size() == static_cast<size_t>(g.order()) / center(g).size());
    }
}

TEST_CASE("isomorphisms transport centers") {
    FiniteGroup d4 = sample_group("D4");
    for (const auto& b : enumerate_automorphisms(d4)) {
        auto z = center(d4);
        for (int x : z) {
            bool central = false;
            for (int y : z)
                central |= b.images[x] == y;
            CHECK(central);
        }
    }
}

TEST_CASE("endomorphism enumeration") {
    CHECK(enumerate_endomorphisms(sample_group("Z2")).size() == 2);
    CHECK(enumerate_endomorphisms(sample_group("Z3")).size() == 3);
    CHECK(enumerate_endomorphisms(sample_group("Z4")).size() == 4);
    CHECK(enumerate_endomorphisms(sample_group("Z6")).size() == 6);
    CHECK(enumerate_endomorphisms(sample_group("Z2xZ2")).size() == 16);
    auto ends = enumerate_endomorphisms(sample_group("S3"));
    CHECK(ends.size() == 10);
    // every endomorphism re-validates
    FiniteGroup s3 = sample_group("S3");
    for (const auto& e : ends)
        CHECK_NOTHROW(make_map(s3, s3, e.images));
    // endomorphisms of D4 include all 8 automorphisms plus non-bijective ones
    auto d4_ends = enumerate_endomorphisms(sample_group("D4"));
    int bij = 0;
    for (const auto& e : d4_ends)
        bij += is_bijective(e);
    CHECK(bij == 8);
    CHECK(d4_ends.size() > 8);
}
