#include "vfrac/automorphisms.hpp"
#include "vfrac/classify.hpp"
#include "vfrac/cocycle.hpp"
#include "vfrac/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace vfrac;
using nlohmann::json;

namespace {

struct Output {
    std::string text;
    json data;
    int code = 0;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot read file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// A group argument is a bundled name (Z2, ..., D4) or a path to a file in
// the `order N / table rows / names` format.
FiniteGroup resolve_group(const std::string& token) {
    for (const std::string& name : sample_group_names())
        if (name == token) return sample_group(token);
    return load_group(slurp(token));
}

// A map argument is a descriptor (id | inv | eps | pow:k | ad:g) or a path
// to a file in the `map i0 i1 ...` format.
GroupMap resolve_endo(const FiniteGroup& g, const std::string& token) {
    if (std::ifstream probe(token); probe) return load_map(g, g, slurp(token));
    return sample_endo(g, token);
}

std::vector<int> parse_values(const FiniteGroup& g, const std::string& csv) {
    std::vector<int> out;
    size_t pos = 0;
    while (pos <= csv.size()) {
        size_t comma = csv.find(',', pos);
        if (comma == std::string::npos) comma = csv.size();
        out.push_back(g.index_of(csv.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return out;
}

json kelement_json(const KElement& k) {
    json arr = json::array();
    for (const auto& [x, val] : k.support())
        arr.push_back({{"x", format_dyadic(x)}, {"value", k.group().name_of(val)}});
    return arr;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact kernel for Thompson's group V and decorated fraction groups"};
    app.require_subcommand(1);
    std::string format = "text";
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json"}));

    Output out;

    // ---- v ---------------------------------------------------------------
    CLI::App* v = app.add_subcommand("v", "elements of Thompson's group V");
    v->require_subcommand(1);
    v->fallthrough();
    static std::string va, vb, vx;

    CLI::App* vparse = v->add_subcommand("parse", "normalize and reprint an element");
    vparse->fallthrough();
    vparse->add_option("element", va)->required();
    vparse->callback([&] {
        VElement e = parse_velement(va);
        out.text = format_velement(e);
        out.data = {{"v", format_velement(e)}};
    });

    CLI::App* vmul = v->add_subcommand("mul", "product (right factor acts first)");
    vmul->fallthrough();
    vmul->add_option("left", va)->required();
    vmul->add_option("right", vb)->required();
    vmul->callback([&] {
        VElement e = multiply(parse_velement(va), parse_velement(vb));
        out.text = format_velement(e);
        out.data = {{"v", format_velement(e)}};
    });

    CLI::App* vinv = v->add_subcommand("inv", "inverse");
    vinv->fallthrough();
    vinv->add_option("element", va)->required();
    vinv->callback([&] {
        VElement e = invert(parse_velement(va));
        out.text = format_velement(e);
        out.data = {{"v", format_velement(e)}};
    });

    CLI::App* vapply = v->add_subcommand("apply", "image of a dyadic point");
    vapply->fallthrough();
    vapply->add_option("element", va)->required();
    vapply->add_option("point", vx)->required();
    vapply->callback([&] {
        Dyadic y = apply(parse_velement(va), parse_dyadic(vx));
        out.text = format_dyadic(y);
        out.data = {{"y", format_dyadic(y)}};
    });

    CLI::App* vslope = v->add_subcommand("slope", "log2 of the slope at a point");
    vslope->fallthrough();
    vslope->add_option("element", va)->required();
    vslope->add_option("point", vx)->required();
    vslope->callback([&] {
        int s = slope_at(parse_velement(va), parse_dyadic(vx));
        out.text = std::to_string(s);
        out.data = {{"slope", s}};
    });

    CLI::App* vell = v->add_subcommand("ell", "slope function transported to the range side");
    vell->fallthrough();
    vell->add_option("element", va)->required();
    vell->callback([&] {
        SlopeFunction f = ell_function(parse_velement(va));
        out.text = format_slope_function(f);
        json pieces = json::array();
        for (const auto& [sdi, value] : f.pieces())
            pieces.push_back({{"left", format_dyadic(sdi.left())},
                              {"depth", sdi.depth()},
                              {"value", value}});
        out.data = {{"pieces", pieces}};
    });

    CLI::App* vclassify = v->add_subcommand("classify", "smallest Thompson group containing it");
    vclassify->fallthrough();
    vclassify->add_option("element", va)->required();
    vclassify->callback([&] {
        out.text = to_string(classify(parse_velement(va)));
        out.data = {{"class", out.text}};
    });

    // ---- group -----------------------------------------------------------
    CLI::App* grp = app.add_subcommand("group", "finite coefficient groups");
    grp->require_subcommand(1);
    grp->fallthrough();
    static std::string gfile;

    CLI::App* gcheck = grp->add_subcommand("check", "validate a Cayley table");
    gcheck->fallthrough();
    gcheck->add_option("group", gfile, "bundled name or file")->required();
    gcheck->callback([&] {
        FiniteGroup g = resolve_group(gfile);
        std::ostringstream t;
        t << "order " << g.order() << "\nabelian " << (g.is_abelian() ? "yes" : "no");
        out.text = t.str();
        json names = json::array();
        for (int i = 0; i < g.order(); ++i) names.push_back(g.name_of(i));
        out.data = {{"order", g.order()}, {"abelian", g.is_abelian()}, {"names", names}};
    });

    CLI::App* gcenter = grp->add_subcommand("center", "central elements");
    gcenter->fallthrough();
    gcenter->add_option("group", gfile)->required();
    gcenter->callback([&] {
        FiniteGroup g = resolve_group(gfile);
        std::ostringstream t;
        json arr = json::array();
        for (int z : center(g)) {
            if (arr.size() > 0) t << " ";
            t << g.name_of(z);
            arr.push_back(g.name_of(z));
        }
        out.text = t.str();
        out.data = {{"center", arr}};
    });

    CLI::App* gaut = grp->add_subcommand("aut", "all automorphisms");
    gaut->fallthrough();
    gaut->add_option("group", gfile)->required();
    gaut->callback([&] {
        FiniteGroup g = resolve_group(gfile);
        std::vector<GroupMap> auts = enumerate_automorphisms(g);
        std::ostringstream t;
        json arr = json::array();
        for (const GroupMap& m : auts) {
            t << format_map(m) << "\n";
            arr.push_back(m.images);
        }
        t << "count " << auts.size();
        out.text = t.str();
        out.data = {{"count", auts.size()}, {"automorphisms", arr}};
    });

    // ---- limg ------------------------------------------------------------
    CLI::App* limg = app.add_subcommand("limg", "stabilized pair of a group endomorphism");
    limg->fallthrough();
    static std::string lgroup, lmap;
    limg->add_option("group", lgroup, "bundled name or file")->required();
    limg->add_option("map", lmap, "descriptor or map file")->required();
    limg->callback([&] {
        FiniteGroup g = resolve_group(lgroup);
        LimPair lim = limit_pair(g, resolve_endo(g, lmap));
        std::ostringstream t;
        t << format_group(lim.group) << "\n"
          << format_map(lim.alpha) << "\nstabilization " << lim.stabilization;
        out.text = t.str();
        json names = json::array();
        for (int i = 0; i < lim.group.order(); ++i) names.push_back(lim.group.name_of(i));
        out.data = {{"order", lim.group.order()},
                    {"table", lim.group.table()},
                    {"names", names},
                    {"map", lim.alpha.images},
                    {"stabilization", lim.stabilization}};
    });

    // ---- isocheck ----------------------------------------------------------
    CLI::App* iso = app.add_subcommand(
        "isocheck", "decide whether two coefficient pairs give the same fraction group");
    iso->fallthrough();
    static std::string i_g1, i_a1, i_g2, i_a2;
    bool want_witness = false;
    iso->add_option("--g1", i_g1, "first group")->required();
    iso->add_option("--a1", i_a1, "first endomorphism")->required();
    iso->add_option("--g2", i_g2, "second group")->required();
    iso->add_option("--a2", i_a2, "second endomorphism")->required();
    iso->add_flag("--witness", want_witness, "print the witness for a yes answer");
    iso->callback([&] {
        FiniteGroup g1 = resolve_group(i_g1);
        FiniteGroup g2 = resolve_group(i_g2);
        GroupMap a1 = resolve_endo(g1, i_a1);
        GroupMap a2 = resolve_endo(g2, i_a2);
        IsoDecision d = decide_iso(g1, a1, g2, a2);
        std::ostringstream t;
        t << (d.isomorphic ? "isomorphic" : "not isomorphic");
        json jw = nullptr;
        if (d.isomorphic && want_witness) {
            t << "\nbeta " << format_map(d.witness->beta) << "\nh "
              << d.witness->beta.target.name_of(d.witness->h);
            jw = {{"beta", d.witness->beta.images},
                  {"h", d.witness->beta.target.name_of(d.witness->h)}};
        }
        out.text = t.str();
        out.data = {{"isomorphic", d.isomorphic}, {"witness", jw}};
        out.code = d.isomorphic ? 0 : 1;
    });

    // ---- g -----------------------------------------------------------------
    CLI::App* gg = app.add_subcommand("g", "elements of a decorated fraction group");
    gg->require_subcommand(1);
    gg->fallthrough();
    static std::string w_group, w_alpha, w_a, w_b;

    auto add_pair_options = [&](CLI::App* sub) {
        sub->add_option("--group", w_group, "coefficient group")->required();
        sub->add_option("--alpha", w_alpha, "twisting endomorphism")->required();
    };

    CLI::App* gmul = gg->add_subcommand("mul", "twisted product");
    gmul->fallthrough();
    add_pair_options(gmul);
    gmul->add_option("left", w_a)->required();
    gmul->add_option("right", w_b)->required();
    gmul->callback([&] {
        FiniteGroup g = resolve_group(w_group);
        GroupMap alpha = resolve_endo(g, w_alpha);
        GElement e = g_multiply(alpha, parse_gelement(g, w_a), parse_gelement(g, w_b));
        out.text = format_gelement(e);
        out.data = {{"g", format_gelement(e)}};
    });

    CLI::App* ginv = gg->add_subcommand("inv", "twisted inverse");
    ginv->fallthrough();
    add_pair_options(ginv);
    ginv->add_option("element", w_a)->required();
    ginv->callback([&] {
        FiniteGroup g = resolve_group(w_group);
        GroupMap alpha = resolve_endo(g, w_alpha);
        GElement e = g_invert(alpha, parse_gelement(g, w_a));
        out.text = format_gelement(e);
        out.data = {{"g", format_gelement(e)}};
    });

    CLI::App* gact = gg->add_subcommand("act", "action of V on the coefficient part");
    gact->fallthrough();
    add_pair_options(gact);
    gact->add_option("element", w_a, "acting V element")->required();
    gact->add_option("coefficients", w_b, "finitely supported map")->required();
    gact->callback([&] {
        FiniteGroup g = resolve_group(w_group);
        GroupMap alpha = resolve_endo(g, w_alpha);
        KElement k = jones_act(alpha, parse_velement(w_a), parse_kelement(g, w_b));
        out.text = format_kelement(k);
        out.data = {{"k", format_kelement(k)}, {"support", kelement_json(k)}};
    });

    // ---- theta --------------------------------------------------------------
    CLI::App* th = app.add_subcommand("theta", "tree representatives of coefficient maps");
    th->require_subcommand(1);
    th->fallthrough();
    static std::string t_tree, t_values;

    CLI::App* tto = th->add_subcommand("to", "leaf decoration -> finitely supported map");
    tto->fallthrough();
    add_pair_options(tto);
    tto->add_option("tree", t_tree)->required();
    tto->add_option("values", t_values, "comma-separated, one per leaf")->required();
    tto->callback([&] {
        FiniteGroup g = resolve_group(w_group);
        GroupMap alpha = resolve_endo(g, w_alpha);
        TreeRepresentative rep{parse_tree(t_tree), parse_values(g, t_values)};
        KElement k = theta_t(alpha, rep);
        out.text = format_kelement(k);
        out.data = {{"k", format_kelement(k)}, {"support", kelement_json(k)}};
    });

    CLI::App* tfrom = th->add_subcommand("from", "finitely supported map -> minimal decoration");
    tfrom->fallthrough();
    add_pair_options(tfrom);
    tfrom->add_option("coefficients", w_a)->required();
    tfrom->callback([&] {
        FiniteGroup g = resolve_group(w_group);
        GroupMap alpha = resolve_endo(g, w_alpha);
        TreeRepresentative rep = theta_inverse(alpha, parse_kelement(g, w_a));
        std::ostringstream t;
        t << "tree " << format_tree(rep.tree) << "\nvalues ";
        json vals = json::array();
        for (size_t i = 0; i < rep.values.size(); ++i) {
            if (i) t << ",";
            t << g.name_of(rep.values[i]);
            vals.push_back(g.name_of(rep.values[i]));
        }
        out.text = t.str();
        out.data = {{"tree", format_tree(rep.tree)}, {"values", vals}};
    });

    // ---- cocycle ------------------------------------------------------------
    CLI::App* co = app.add_subcommand("cocycle", "slope-valuation cocycles on V");
    co->require_subcommand(1);
    co->fallthrough();
    static std::string c_v, c_x, c_zeta, c_f, c_group;

    CLI::App* cpv = co->add_subcommand("pv", "finitely supported slope-valuation perturbation");
    cpv->fallthrough();
    cpv->add_option("element", c_v)->required();
    cpv->callback([&] {
        ZValuedSupportMap p = p_cocycle(parse_velement(c_v));
        out.text = format_zmap(p);
        json arr = json::array();
        for (const auto& [y, k] : p.support)
            arr.push_back({{"y", format_dyadic(y)}, {"value", k}});
        out.data = {{"support", arr}};
    });

    CLI::App* cfv = co->add_subcommand("fv", "exception set of the valuation identity");
    cfv->fallthrough();
    cfv->add_option("element", c_v)->required();
    cfv->callback([&] {
        std::vector<Dyadic> f = exception_set(parse_velement(c_v));
        std::ostringstream t;
        json arr = json::array();
        for (size_t i = 0; i < f.size(); ++i) {
            if (i) t << " ";
            t << format_dyadic(f[i]);
            arr.push_back(format_dyadic(f[i]));
        }
        out.text = t.str();
        out.data = {{"points", arr}};
    });

    CLI::App* cgamma = co->add_subcommand("gamma", "germ cocycle at a point");
    cgamma->fallthrough();
    cgamma->add_option("element", c_v)->required();
    cgamma->add_option("point", c_x)->required();
    cgamma->callback([&] {
        int value = gamma(parse_velement(c_v), parse_dyadic(c_x));
        out.text = std::to_string(value);
        out.data = {{"gamma", value}};
    });

    CLI::App* cmu = co->add_subcommand("mu", "valuation-corrected germ cocycle");
    cmu->fallthrough();
    cmu->add_option("element", c_v)->required();
    cmu->add_option("point", c_x)->required();
    cmu->callback([&] {
        int value = mu(parse_velement(c_v), parse_dyadic(c_x));
        out.text = std::to_string(value);
        out.data = {{"mu", value}};
    });

    CLI::App* cdec = co->add_subcommand(
        "decompose", "rebuild a cocycle from (zeta, f) and recover the parts");
    cdec->fallthrough();
    cdec->add_option("--group", c_group, "abelian coefficient group")->required();
    cdec->add_option("--zeta", c_zeta, "group element")->required();
    cdec->add_option("--f", c_f, "finitely supported map, e.g. 0=1;1/2=3")->required();
    cdec->callback([&] {
        FiniteGroup g = resolve_group(c_group);
        int zeta = g.index_of(c_zeta);
        KElement f = parse_kelement(g, c_f);
        CocycleDecomposition d = decompose_cocycle(cocycle_from_pair(g, zeta, f));
        std::vector<std::pair<Dyadic, int>> pts;
        for (const auto& [x, val] : f.support())
            if (d.f(x) != 0) pts.emplace_back(x, d.f(x));
        KElement recovered = KElement::make(g, std::move(pts));
        out.text = "zeta " + g.name_of(d.zeta) + "\nf " + format_kelement(recovered);
        out.data = {{"zeta", g.name_of(d.zeta)},
                    {"f", format_kelement(recovered)},
                    {"support", kelement_json(recovered)}};
    });

    // ---- aut ---------------------------------------------------------------
    CLI::App* au = app.add_subcommand("aut", "composite automorphisms of fraction groups");
    au->require_subcommand(1);
    au->fallthrough();
    static std::string u_group, u_zeta, u_f, u_phi, u_beta, u_g;

    CLI::App* uapply = au->add_subcommand("apply", "apply a composite automorphism");
    uapply->fallthrough();
    uapply->add_option("--group", u_group)->required();
    uapply->add_option("--zeta", u_zeta, "central slope twist")->required();
    uapply->add_option("--f", u_f, "normalizer map, e.g. const:r*finite:1/2=s*chiY:r2")
        ->required();
    uapply->add_option("--phi", u_phi, "relabeling V element")->required();
    uapply->add_option("--beta", u_beta, "coefficient automorphism descriptor or file")
        ->required();
    uapply->add_option("element", u_g)->required();
    uapply->callback([&] {
        FiniteGroup g = resolve_group(u_group);
        AutTuple t = make_auttuple(g.index_of(u_zeta), parse_normalizer(g, u_f),
                                   parse_velement(u_phi), resolve_endo(g, u_beta));
        GElement image = Xi_apply(t, parse_gelement(g, u_g));
        out.text = format_gelement(image);
        out.data = {{"g", format_gelement(image)}};
    });

    // ---- verify ------------------------------------------------------------
    CLI::App* ver = app.add_subcommand("verify", "seeded property battery");
    ver->fallthrough();
    static std::string suite = "all";
    static std::uint64_t seed = 0;
    static int trials = 0;
    ver->add_option("--suite", suite)->check(CLI::IsMember(verify_suites()));
    ver->add_option("--seed", seed);
    ver->add_option("--trials", trials, "0 = per-property defaults")
        ->check(CLI::NonNegativeNumber);
    ver->callback([&] {
        VerifyReport r = run_verify(suite, seed, trials);
        out.text = format_report(r);
        if (!out.text.empty() && out.text.back() == '\n') out.text.pop_back();
        json props = json::array();
        for (const PropertyRun& p : r.properties)
            props.push_back({{"name", p.name}, {"trials", p.trials}, {"failures", p.failures}});
        json fails = json::array();
        for (const VerifyFailure& f : r.failures)
            fails.push_back({{"property", f.property}, {"seed", f.seed}, {"detail", f.detail}});
        out.data = {{"suite", r.suite},       {"seed", r.seed},
                    {"trials", r.trials_requested}, {"trials_run", r.trials_run},
                    {"properties", props},    {"failures", fails},
                    {"wall_ms", r.wall_ms},   {"ok", r.ok()}};
        out.code = r.ok() ? 0 : 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }

    if (format == "json")
        std::cout << out.data.dump(2) << "\n";
    else
        std::cout << out.text << "\n";
    return out.code;
}
