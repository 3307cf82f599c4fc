#include "vfrac/verify.hpp"

#include "vfrac/classify.hpp"
#include "vfrac/cocycle.hpp"
#include "vfrac/sampling.hpp"

#include <chrono>
#include <functional>
#include <optional>
#include <sstream>

namespace vfrac {

namespace {

struct Property {
    std::string name;
    std::string suite;
    int default_trials = 1;
    bool seeded = true;
    std::function<std::optional<std::string>(Rng&)> trial;
};

using Fail = std::optional<std::string>;

std::string describe(std::initializer_list<std::pair<const char*, std::string>> parts) {
    std::ostringstream out;
    bool first = true;
    for (const auto& [key, value] : parts) {
        if (!first) out << "  ";
        first = false;
        out << key << "=" << value;
    }
    return out.str();
}

int tree_depth(const Tree& t) {
    int d = 0;
    for (const std::string& a : t.leaf_addresses()) d = std::max(d, static_cast<int>(a.size()));
    return d;
}

// exhaustive scan of the finitely supported part of the slope-valuation
// perturbation, over all dyadics of exponent <= 12
ZValuedSupportMap p_scan(const VElement& v) {
    VElement vi = invert(v);
    std::vector<std::pair<Dyadic, int>> pts;
    for (long long n = 0; n < (1 << 12); ++n) {
        Dyadic y = Dyadic::from_parts(n, 12);
        Dyadic x = apply(vi, y);
        int val = slope_at(v, x) + nu(x) - nu(y);
        if (val != 0) pts.emplace_back(y, val);
    }
    return ZValuedSupportMap::make(std::move(pts));
}

std::vector<Dyadic> indicator_scan(const VElement& v) {
    VElement vi = invert(v);
    std::vector<Dyadic> out;
    for (long long n = 0; n < (1 << 12); ++n) {
        Dyadic y = Dyadic::from_parts(n, 12);
        if (in_Y(y) != in_Y(apply(vi, y))) out.push_back(y);
    }
    return out;
}

KElement normalizer_defect_scan(const NormalizerMap& f, const VElement& v) {
    VElement vi = invert(v);
    std::vector<std::pair<Dyadic, int>> pts;
    for (long long n = 0; n < (1 << 12); ++n) {
        Dyadic y = Dyadic::from_parts(n, 12);
        int val = f.group.mul(f.at(y), f.group.inv(f.at(apply(vi, y))));
        if (val != 0) pts.emplace_back(y, val);
    }
    return KElement::make(f.group, std::move(pts));
}

std::vector<Property> build_battery() {
    std::vector<Property> props;

    props.push_back({"forest.caret-relations", "forest", 1, false, [](Rng&) -> Fail {
        for (int n = 1; n <= 6; ++n)
            for (int j = 1; j <= n; ++j)
                for (int q = j + 2; q <= n + 1; ++q) {
                    Forest lhs = compose_forests(make_generator(q, n + 1), make_generator(j, n));
                    Forest rhs =
                        compose_forests(make_generator(j, n + 1), make_generator(q - 1, n));
                    if (!(lhs == rhs))
                        return describe({{"j", std::to_string(j)},
                                         {"q", std::to_string(q)},
                                         {"n", std::to_string(n)}});
                }
        // adjacent carets must not commute past each other
        if (compose_forests(make_generator(2, 2), make_generator(1, 1)) ==
            compose_forests(make_generator(1, 2), make_generator(1, 1)))
            return std::string("adjacent caret pair unexpectedly commuted");
        return std::nullopt;
    }});

    props.push_back({"v.compose-pointwise", "v", 1000, true, [](Rng& rng) -> Fail {
        VElement v = random_velement(rng, 8);
        VElement w = random_velement(rng, 8);
        VElement vw = multiply(v, w);
        for (int i = 0; i < 50; ++i) {
            Dyadic x = random_dyadic(rng, 10);
            if (!(apply(vw, x) == apply(v, apply(w, x))))
                return describe({{"v", format_velement(v)},
                                 {"w", format_velement(w)},
                                 {"x", format_dyadic(x)}});
        }
        return std::nullopt;
    }});

    props.push_back({"v.normal-form", "v", 1000, true, [](Rng& rng) -> Fail {
        VElement v = random_velement(rng, 8);
        Tree refined = tree_union(v.dom(), random_tree(rng, 6));
        TreePairPerm expanded = with_domain(v, refined);
        VElement back = VElement::make(expanded.dom, expanded.ran, expanded.p);
        if (!(back == v))
            return describe({{"v", format_velement(v)}, {"refined", format_tree(refined)}});
        VElement w = random_velement(rng, 8);
        int depth = std::max(std::max(tree_depth(v.dom()), tree_depth(v.ran())),
                             std::max(tree_depth(w.dom()), tree_depth(w.ran()))) +
                    1;
        bool pointwise = true;
        for (long long n = 0; n < (1LL << depth) && pointwise; ++n) {
            Dyadic x = Dyadic::from_parts(n, depth);
            pointwise = apply(v, x) == apply(w, x);
        }
        if (pointwise != (v == w))
            return describe({{"v", format_velement(v)}, {"w", format_velement(w)}});
        return std::nullopt;
    }});

    props.push_back({"v.chain-rule", "v", 1000, true, [](Rng& rng) -> Fail {
        VElement v = random_velement(rng, 8);
        VElement w = random_velement(rng, 8);
        VElement vw = multiply(v, w);
        VElement vi = invert(v);
        for (int i = 0; i < 10; ++i) {
            Dyadic x = random_dyadic(rng, 10);
            if (slope_at(vw, x) != slope_at(v, apply(w, x)) + slope_at(w, x))
                return describe({{"v", format_velement(v)},
                                 {"w", format_velement(w)},
                                 {"x", format_dyadic(x)}});
            Dyadic y = random_dyadic(rng, 10);
            if (ell_function(vw).at(y) !=
                ell_function(v).at(y) + ell_function(w).at(apply(vi, y)))
                return describe({{"v", format_velement(v)},
                                 {"w", format_velement(w)},
                                 {"y", format_dyadic(y)}});
        }
        return std::nullopt;
    }});

    props.push_back({"v.conjugation-example", "v", 1, false, [](Rng&) -> Fail {
        VElement cyc = parse_velement("10100:10100:2,3,1");
        VElement swp = parse_velement("100:100:2,1");
        VElement c = conjugate(cyc, swp);
        bool ok = slope_at(c, parse_dyadic("0")) == -2 &&
                  slope_at(c, parse_dyadic("1/4")) == -2 &&
                  apply(c, parse_dyadic("0")) == parse_dyadic("5/8") &&
                  apply(c, parse_dyadic("1/4")) == parse_dyadic("11/16") &&
                  apply(c, parse_dyadic("3/8")) == parse_dyadic("23/32");
        if (!ok) return std::string("conjugate=" + format_velement(c));
        return std::nullopt;
    }});

    props.push_back({"v.fixed-point-slope", "v", 500, true, [](Rng& rng) -> Fail {
        Dyadic x = random_dyadic(rng, 6);
        VElement v = multiply(find_in_stabilizer(x, rng.range(-2, 2)),
                              find_in_stabilizer(x, rng.range(-2, 2)));
        VElement phi = random_velement(rng, 8);
        if (!(apply(v, x) == x))
            return describe({{"v", format_velement(v)}, {"x", format_dyadic(x)}});
        if (slope_at(conjugate(phi, v), apply(phi, x)) != slope_at(v, x))
            return describe({{"phi", format_velement(phi)},
                             {"v", format_velement(v)},
                             {"x", format_dyadic(x)}});
        return std::nullopt;
    }});

    props.push_back({"cocycle.p-identity", "cocycle", 1000, true, [](Rng& rng) -> Fail {
        VElement v = random_velement(rng, 8);
        VElement w = random_velement(rng, 8);
        ZValuedSupportMap lhs = p_cocycle(multiply(v, w));
        ZValuedSupportMap rhs = zmap_add(p_cocycle(v), zmap_pullback(p_cocycle(w), v));
        if (!(lhs == rhs))
            return describe({{"v", format_velement(v)}, {"w", format_velement(w)}});
        return std::nullopt;
    }});

    props.push_back({"cocycle.p-zero-sum", "cocycle", 300, true, [](Rng& rng) -> Fail {
        VElement v = random_velement(rng, 10);
        int total = 0;
        for (const auto& [y, k] : p_cocycle(v).support) total += k;
        if (total != 0) return describe({{"v", format_velement(v)}});
        return std::nullopt;
    }});

    props.push_back({"cocycle.p-pinned", "cocycle", 1, false, [](Rng&) -> Fail {
        VElement x0 = parse_velement("10100:11000:1,2,3");
        ZValuedSupportMap p = p_cocycle(x0);
        if (format_zmap(p) != "0=-1;1/2^2=1") return std::string("p(x0)=" + format_zmap(p));
        ZValuedSupportMap q = p_cocycle(invert(x0));
        if (format_zmap(q) != "0=1;1/2^1=-1")
            return std::string("p(x0^-1)=" + format_zmap(q));
        if (!(p == p_scan(x0))) return std::string("scan disagrees for x0");
        std::vector<Dyadic> f = exception_set(x0);
        if (!(f == std::vector<Dyadic>{parse_dyadic("0"), parse_dyadic("1/2")}))
            return std::string("exception set has wrong support");
        return std::nullopt;
    }});

    props.push_back({"cocycle.decomposition-roundtrip", "cocycle", 100, true,
                     [](Rng& rng) -> Fail {
        FiniteGroup grp = sample_group(rng.flip() ? "Z4" : "Z2xZ2");
        int zeta = rng.below(grp.order());
        KElement f0 = random_kelement(rng, grp, 3, 5);
        CocycleOracle c = cocycle_from_pair(grp, zeta, f0);
        CocycleDecomposition d = decompose_cocycle(c);
        if (d.zeta != zeta)
            return describe({{"f", format_kelement(f0)},
                             {"zeta", grp.name_of(zeta)},
                             {"recovered", grp.name_of(d.zeta)}});
        int shift = grp.inv(f0.at(parse_dyadic("0")));
        std::vector<Dyadic> probes;
        for (const auto& [x, val] : f0.support()) probes.push_back(x);
        for (int i = 0; i < 5; ++i) probes.push_back(random_dyadic(rng, 6));
        for (const Dyadic& x : probes)
            if (d.f(x) != grp.mul(f0.at(x), shift))
                return describe({{"f", format_kelement(f0)}, {"x", format_dyadic(x)}});
        return std::nullopt;
    }});

    props.push_back({"cocycle.gamma-composition", "cocycle", 200, true, [](Rng& rng) -> Fail {
        VElement phi = random_velement(rng, 8);
        VElement psi = random_velement(rng, 8);
        Dyadic x = random_dyadic(rng, 8);
        VElement pi = invert(phi);
        int lhs = gamma(multiply(phi, psi), x);
        int rhs = gamma(phi, x) + gamma(psi, apply(pi, x)) - gamma(psi, apply(pi, Dyadic{}));
        if (lhs != rhs)
            return describe({{"phi", format_velement(phi)},
                             {"psi", format_velement(psi)},
                             {"x", format_dyadic(x)}});
        // closed form: slopes of phi at the preimages of 0 and x
        int closed = slope_at(phi, apply(pi, Dyadic{})) - slope_at(phi, apply(pi, x));
        if (gamma(phi, x) != closed)
            return describe({{"phi", format_velement(phi)}, {"x", format_dyadic(x)}});
        return std::nullopt;
    }});

    props.push_back({"wreath.theta-equivariance", "wreath", 500, true, [](Rng& rng) -> Fail {
        FiniteGroup grp = sample_group(rng.flip() ? "Z4" : "S3");
        GroupMap alpha = grp.is_abelian() ? sample_endo(grp, rng.flip() ? "id" : "inv")
                                          : sample_endo(grp, rng.flip() ? "id" : "ad:(12)");
        VElement v = random_velement(rng, 6);
        KElement a = random_kelement(rng, grp, 4, 5);
        if (!(jones_act(alpha, v, a) == jones_act_by_refinement(alpha, v, a)))
            return describe({{"v", format_velement(v)}, {"a", format_kelement(a)}});
        TreeRepresentative rep = random_representative(rng, grp, 6);
        KElement k = theta_t(alpha, rep);
        if (!(theta_t(alpha, theta_inverse(alpha, k)) == k))
            return describe({{"tree", format_tree(rep.tree)}, {"k", format_kelement(k)}});
        return std::nullopt;
    }});

    props.push_back({"aut.slope-twist", "aut", 1000, true, [](Rng& rng) -> Fail {
        FiniteGroup z4 = sample_group("Z4");
        GroupMap id4 = identity_map(z4);
        GElement a = random_gelement(rng, z4, 3, 6);
        GElement b = random_gelement(rng, z4, 3, 6);
        if (!(E_apply(1, g_multiply(id4, a, b)) ==
              g_multiply(id4, E_apply(1, a), E_apply(1, b))))
            return describe({{"a", format_gelement(a)}, {"b", format_gelement(b)}});
        if (!(E_apply(3, E_apply(1, a)) == a))
            return describe({{"a", format_gelement(a)}});
        return std::nullopt;
    }});

    props.push_back({"aut.indicator-defect", "aut", 100, true, [](Rng& rng) -> Fail {
        FiniteGroup z2 = sample_group("Z2");
        VElement v = random_velement(rng, 8);
        if (!(chi_defect(v) == indicator_scan(v)))
            return describe({{"v", format_velement(v)}});
        NormalizerMap chi = nm_indicator(z2, 1);
        if (!(nm_defect(chi, v) == normalizer_defect_scan(chi, v)))
            return describe({{"v", format_velement(v)}});
        return std::nullopt;
    }});

    props.push_back({"aut.xi-kernel", "aut", 100, true, [](Rng& rng) -> Fail {
        for (const std::string& name : sample_group_names()) {
            FiniteGroup grp = sample_group(name);
            for (int g = 0; g < grp.order(); ++g) {
                GElement sample = random_gelement(rng, grp, 2, 5);
                if (!(Xi_apply(xi_kernel(grp, g), sample) == sample))
                    return describe({{"group", name},
                                     {"g", grp.name_of(g)},
                                     {"sample", format_gelement(sample)}});
            }
        }
        return std::nullopt;
    }});

    props.push_back({"aut.semidirect-compat", "aut", 200, true, [](Rng& rng) -> Fail {
        FiniteGroup d4 = sample_group("D4");
        std::vector<GroupMap> auts = enumerate_automorphisms(d4);
        VElement phi = random_velement(rng, 6);
        GroupMap beta = auts[rng.below(static_cast<int>(auts.size()))];
        int zeta = random_central(rng, d4);
        NormalizerMap f = random_normalizer(rng, d4);
        SigmaImage s = sigma_act(phi, beta, zeta, f);
        GElement g = random_gelement(rng, d4, 3, 6);
        GElement lhs = A_apply(
            phi, beta, E_apply(zeta, ad_apply(f, A_apply(invert(phi), invert_map(beta), g))));
        GElement rhs = E_apply(s.zeta, ad_apply(s.f, g));
        if (!(lhs == rhs))
            return describe({{"phi", format_velement(phi)},
                             {"beta", format_map(beta)},
                             {"zeta", d4.name_of(zeta)},
                             {"f", format_normalizer(f)},
                             {"g", format_gelement(g)}});
        return std::nullopt;
    }});

    props.push_back({"aut.isomtwo-homomorphism", "aut", 500, true, [](Rng& rng) -> Fail {
        FiniteGroup s3 = sample_group("S3");
        int k = s3.index_of("(12)");
        GroupMap alpha = rng.flip() ? identity_map(s3) : inner(s3, k);
        GroupMap twisted = compose_maps(inner(s3, k), alpha);
        GElement a = random_gelement(rng, s3, 3, 6);
        GElement b = random_gelement(rng, s3, 3, 6);
        GElement lhs = isomtwo_apply(alpha, k, g_multiply(alpha, a, b));
        GElement rhs = g_multiply(twisted, isomtwo_apply(alpha, k, a),
                                  isomtwo_apply(alpha, k, b));
        if (!(lhs == rhs))
            return describe({{"a", format_gelement(a)}, {"b", format_gelement(b)}});
        return std::nullopt;
    }});

    props.push_back({"aut.isomtwo-defect", "aut", 200, true, [](Rng& rng) -> Fail {
        FiniteGroup s3 = sample_group("S3");
        int k = s3.index_of("(12)");
        VElement v = random_velement(rng, 8);
        GElement dv = isomtwo_apply(identity_map(s3), k, GElement{KElement(s3), v});
        std::vector<Dyadic> allowed;
        for (const Dyadic& x : exception_set(v)) allowed.push_back(apply(v, x));
        std::sort(allowed.begin(), allowed.end());
        for (const auto& [y, val] : dv.k.support())
            if (!std::binary_search(allowed.begin(), allowed.end(), y))
                return describe({{"v", format_velement(v)}, {"y", format_dyadic(y)}});
        return std::nullopt;
    }});

    props.push_back({"classify.pinned", "classify", 1, false, [](Rng&) -> Fail {
        FiniteGroup z3 = sample_group("Z3");
        FiniteGroup z6 = sample_group("Z6");
        FiniteGroup s3 = sample_group("S3");
        if (decide_iso(z3, sample_endo(z3, "id"), z3, sample_endo(z3, "inv")).isomorphic)
            return std::string("identity and inversion on Z3 confused");
        IsoDecision inner_vs_id =
            decide_iso(s3, inner(s3, s3.index_of("(12)")), s3, sample_endo(s3, "id"));
        if (!inner_vs_id.isomorphic ||
            !check_witness(s3, inner(s3, s3.index_of("(12)")), s3, sample_endo(s3, "id"),
                           *inner_vs_id.witness))
            return std::string("inner twist of S3 not recognized");
        IsoDecision reduced =
            decide_iso(z6, sample_endo(z6, "pow:2"), z3, sample_endo(z3, "inv"));
        if (!reduced.isomorphic ||
            !check_witness(z6, sample_endo(z6, "pow:2"), z3, sample_endo(z3, "inv"),
                           *reduced.witness))
            return std::string("doubling on Z6 not reduced to inversion on Z3");
        return std::nullopt;
    }});

    props.push_back({"classify.battery", "classify", 1, false, [](Rng&) -> Fail {
        std::vector<std::pair<FiniteGroup, GroupMap>> corpus;
        for (const std::string& name : sample_group_names()) {
            FiniteGroup g = sample_group(name);
            for (GroupMap& m : enumerate_endomorphisms(g)) corpus.emplace_back(g, std::move(m));
        }
        for (const auto& [g, a] : corpus) {
            IsoDecision d = decide_iso(g, a, g, a);
            if (!d.isomorphic || !check_witness(g, a, g, a, *d.witness))
                return std::string("reflexivity failed for " + format_map(a));
        }
        for (size_t i = 0; i < corpus.size(); ++i)
            for (size_t j = i + 1; j < corpus.size(); ++j) {
                bool ij = decide_iso(corpus[i].first, corpus[i].second, corpus[j].first,
                                     corpus[j].second)
                              .isomorphic;
                bool ji = decide_iso(corpus[j].first, corpus[j].second, corpus[i].first,
                                     corpus[i].second)
                              .isomorphic;
                if (ij != ji)
                    return std::string("symmetry failed between corpus entries " +
                                       std::to_string(i) + " and " + std::to_string(j));
            }
        FiniteGroup s3 = sample_group("S3");
        for (const GroupMap& beta : enumerate_automorphisms(s3))
            for (const char* desc : {"id", "ad:(12)", "eps"}) {
                GroupMap a = sample_endo(s3, desc);
                GroupMap moved = compose_maps(beta, compose_maps(a, invert_map(beta)));
                IsoDecision d = decide_iso(s3, a, s3, moved);
                if (!d.isomorphic || !check_witness(s3, a, s3, moved, *d.witness))
                    return std::string("relabeling invariance failed for " + format_map(a));
            }
        FiniteGroup d4 = sample_group("D4");
        for (int k = 0; k < d4.order(); ++k) {
            GroupMap twisted = compose_maps(inner(d4, k), sample_endo(d4, "id"));
            IsoDecision d = decide_iso(d4, sample_endo(d4, "id"), d4, twisted);
            if (!d.isomorphic ||
                !check_witness(d4, sample_endo(d4, "id"), d4, twisted, *d.witness))
                return std::string("inner twist invariance failed at k=" + d4.name_of(k));
        }
        return std::nullopt;
    }});

    return props;
}

const std::vector<Property>& battery() {
    static const std::vector<Property> props = build_battery();
    return props;
}

} // namespace

const std::vector<std::string>& verify_suites() {
    static const std::vector<std::string> names = {"forest", "v",   "cocycle", "wreath",
                                                   "aut",    "classify", "all"};
    return names;
}

VerifyReport run_verify(std::string_view suite, std::uint64_t seed, int trials) {
    bool known = false;
    for (const std::string& name : verify_suites()) known = known || name == suite;
    if (!known) throw input_error("unknown verify suite '" + std::string(suite) + "'");

    VerifyReport report;
    report.suite = suite;
    report.seed = seed;
    report.trials_requested = trials;
    auto start = std::chrono::steady_clock::now();
    for (const Property& p : battery()) {
        if (suite != "all" && p.suite != suite) continue;
        int runs = p.seeded ? (trials > 0 ? trials : p.default_trials) : 1;
        PropertyRun run{p.name, runs, 0};
        for (int t = 0; t < runs; ++t) {
            std::uint64_t sub = substream_seed(seed, p.suite, p.name, t);
            Rng rng(sub);
            std::optional<std::string> failed = p.trial(rng);
            ++report.trials_run;
            if (failed) {
                ++run.failures;
                if (report.failures.size() < 64)
                    report.failures.push_back({p.name, sub, *failed});
            }
        }
        report.properties.push_back(std::move(run));
    }
    auto stop = std::chrono::steady_clock::now();
    report.wall_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count();
    return report;
}

std::string format_report(const VerifyReport& report) {
    std::ostringstream out;
    out << "suite " << report.suite << "  seed " << report.seed << "  trials ";
    if (report.trials_requested > 0)
        out << report.trials_requested;
    else
        out << "default";
    out << "\n";
    for (const PropertyRun& p : report.properties) {
        out << (p.failures == 0 ? "  ok    " : "  FAIL  ") << p.name;
        for (size_t pad = p.name.size(); pad < 34; ++pad) out << ' ';
        out << " trials=" << p.trials;
        if (p.failures > 0) out << " failures=" << p.failures;
        out << "\n";
    }
    for (const VerifyFailure& f : report.failures)
        out << "  reproduce: property=" << f.property << " seed=" << f.seed << "  "
            << f.detail << "\n";
    out << (report.ok() ? "PASS" : "FAIL") << " (" << report.properties.size()
        << " properties, " << report.trials_run << " trials, " << report.wall_ms << " ms)\n";
    return out.str();
}

} // namespace vfrac
