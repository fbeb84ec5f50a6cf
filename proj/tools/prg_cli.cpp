#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "prg/automorphism.hpp"
#include "prg/character.hpp"
#include "prg/config.hpp"
#include "prg/cycles.hpp"
#include "prg/errors.hpp"
#include "prg/group.hpp"
#include "prg/involution.hpp"
#include "prg/isomorphism.hpp"
#include "prg/kernels.hpp"
#include "prg/numtheory.hpp"
#include "prg/report.hpp"
#include "prg/split.hpp"

using json = nlohmann::ordered_json;
using namespace prg;

namespace {

// Bad arguments that CLI11 cannot see: malformed groups, elements, files.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

GroupParams group_arg(const std::string& s)
{
    try {
        return parse_group(s);
    } catch (const Error& e) {
        throw UsageError("invalid group '" + s + "': " + e.what());
    }
}

GroupParams ambient(const GroupParams& G) { return make_group(G.r, 1, G.q, G.n); }

Element element_arg(const GroupParams& P, const std::string& s)
{
    try {
        return parse_element(P, s);
    } catch (const Error& e) {
        throw UsageError("invalid element '" + s + "': " + e.what());
    }
}

std::vector<int64_t> int_list(const std::string& s)
{
    std::vector<int64_t> out;
    std::stringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        try {
            size_t used = 0;
            out.push_back(std::stoll(tok, &used));
            if (used != tok.size())
                throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw UsageError("expected comma-separated integers, got '" + s + "'");
        }
    }
    return out;
}

// "tau", "id", "Ad(...)" or "Ad(...)*tau", with the element in G(r,1,q,n).
NuChoice nu_arg(const GroupParams& G, const std::string& s)
{
    NuChoice nu;
    std::string body = s;
    nu.with_tau = false;
    const std::string suffix = "*tau";
    if (body == "tau")
        return nu_tau();
    if (body == "id")
        return nu;
    if (body.size() > suffix.size() && body.compare(body.size() - suffix.size(), suffix.size(), suffix) == 0) {
        nu.with_tau = true;
        body.resize(body.size() - suffix.size());
    }
    if (body.rfind("Ad", 0) != 0)
        throw UsageError("nu must be tau, id, Ad(...) or Ad(...)*tau");
    nu.g = element_arg(ambient(G), body.substr(2));
    return nu;
}

json elem_json(const GroupParams& P, const Element& e) { return format_element(P, e); }

json cplx_json(std::complex<double> z)
{
    auto clean = [](double v) {
        double r = std::round(v * 1e9) / 1e9;
        return r == 0 ? 0.0 : r;
    };
    return json::array({clean(z.real()), clean(z.imag())});
}

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

// ---- iso

int cmd_iso(const std::string& left, const std::string& right, bool do_certify)
{
    const auto a = group_arg(left), b = group_arg(right);
    const IsoQuery Q = make_iso_query(a, b);
    const IsoVerdict v = isomorphic(Q);
    json out;
    out["left"] = a.str();
    out["right"] = b.str();
    out["isomorphic"] = v.isomorphic;
    out["branch"] = v.branch;
    out["reason"] = v.reason;
    out["witness"] = nullptr;
    std::optional<IsoMap> map;
    if (v.isomorphic)
        map = find_isomorphism(Q);
    if (do_certify) {
        const Certificate c = certify(Q);
        out["certified"] = c.certified;
        out["evidence"] = c.evidence;
        if (c.map)
            map = c.map;
    }
    if (map) {
        json w;
        w["kind"] = map->kind;
        if (map->kind == "crt")
            w["x"] = map->x;
        if (map->d)
            w["d"] = map->d;
        w["eta"] = map->eta;
        w["delta"] = map->delta;
        json imgs = json::array();
        for (const auto& g : standard_generators(map->from))
            imgs.push_back({{"generator", format_element(map->from, g)},
                            {"image", format_element(map->to, map->apply(g))}});
        w["generator_images"] = imgs;
        out["witness"] = w;
    }
    print(out);
    return 0;
}

// ---- aut

struct AutArgs {
    std::string group, alpha, ad;
    bool phi4 = false, tau = false, outer = false, characteristic = false;
};

int cmd_aut(const AutArgs& A)
{
    const auto G = group_arg(A.group);
    json out;
    out["group"] = G.str();
    const int chosen = int(!A.alpha.empty()) + int(!A.ad.empty()) + int(A.phi4) + int(A.tau);
    if (chosen > 1)
        throw UsageError("choose at most one of --alpha, --ad, --phi4, --tau");
    if (chosen == 0 && !A.outer && !A.characteristic)
        throw UsageError("nothing to do: give an automorphism, --outer-search or --characteristic");
    if (chosen == 1) {
        AutSpec a;
        if (!A.alpha.empty()) {
            auto v = int_list(A.alpha);
            if (v.size() < 2 || v.size() > 3)
                throw UsageError("--alpha takes j,k or j,k,z");
            a = make_alpha(G, v[0], v[1], v.size() == 3 ? v[2] : 0);
        } else if (!A.ad.empty()) {
            a = make_ad(G, element_arg(ambient(G), A.ad));
        } else if (A.phi4) {
            if (G.n != 4)
                throw UsageError("phi4 is defined in rank 4 only");
            a = make_phi4(G.r, G.p, G.q);
        } else {
            a = make_tau(G);
        }
        const AutCheck chk = verify_automorphism(a);
        json j;
        j["automorphism"] = a.describe();
        j["homomorphism"] = chk.homomorphism;
        j["bijective"] = chk.bijective;
        if (chk.homomorphism && chk.bijective) {
            j["class_preserving"] = is_class_preserving(a);
            auto h = find_inner(a);
            j["inner"] = h.has_value();
            if (h)
                j["inner_by"] = format_element(G, *h);
            try {
                const AutReport rep = decompose_automorphism(a);
                json d;
                d["is_inner"] = rep.is_inner;
                d["is_class_preserving"] = rep.is_class_preserving;
                d["decomposed"] = rep.decomposed;
                d["g"] = format_element(ambient(G), rep.g);
                d["phi"] = rep.phi;
                d["j"] = rep.j;
                d["k"] = rep.k;
                d["z"] = rep.z;
                d["recomposition_matches"] = same_on_generators(recompose(G, rep), a);
                j["report"] = d;
            } catch (const NotDecomposable& e) {
                j["report"] = {{"decomposed", false}, {"reason", e.what()}};
            }
        }
        out["check"] = j;
    }
    if (A.outer) {
        auto o = find_class_preserving_outer(G);
        out["class_preserving_outer"] = o ? json(o->describe()) : json(nullptr);
    }
    if (A.characteristic) {
        const auto c = is_diagonal_characteristic(G);
        out["diagonal_characteristic"] = c.characteristic;
        out["by_search"] = c.brute_force;
    }
    print(out);
    return 0;
}

// ---- chartable

int cmd_chartable(const std::string& group, bool values, const std::string& format)
{
    const auto G = group_arg(group);
    const auto T = character_table(G);
    const auto& cs = T->classes;
    std::vector<std::string> reps;
    for (uint32_t c = 0; c < cs.count(); ++c)
        reps.push_back(format_element(G, element_at(G, cs.reps[c])));
    if (format == "csv") {
        std::cout << "irreducible,degree";
        if (values)
            for (uint32_t c = 0; c < cs.count(); ++c)
                std::cout << ",\"" << reps[c] << " [" << cs.sizes[c] << "]\"";
        std::cout << "\n";
        for (uint32_t i = 0; i < T->count(); ++i) {
            std::cout << i << "," << T->degrees[i];
            if (values)
                for (uint32_t c = 0; c < cs.count(); ++c) {
                    auto z = cplx_json(T->values(i, c));
                    std::cout << "," << z[0].get<double>() << (z[1].get<double>() < 0 ? "" : "+") << z[1].get<double>()
                              << "i";
                }
            std::cout << "\n";
        }
        return 0;
    }
    json out;
    out["group"] = G.str();
    out["order"] = T->order;
    json cl = json::array();
    for (uint32_t c = 0; c < cs.count(); ++c)
        cl.push_back({{"rep", reps[c]}, {"size", cs.sizes[c]}});
    out["classes"] = cl;
    out["degrees"] = T->degrees;
    if (values) {
        json m = json::array();
        for (uint32_t i = 0; i < T->count(); ++i) {
            json row = json::array();
            for (uint32_t c = 0; c < cs.count(); ++c)
                row.push_back(cplx_json(T->values(i, c)));
            m.push_back(row);
        }
        out["values"] = m;
    }
    const auto h = check_table(*T);
    out["health"] = {{"row_orthogonality", h.row_orthogonality},
                     {"column_orthogonality", h.column_orthogonality},
                     {"degrees_square_sum", h.degrees_square_sum}};
    print(out);
    return 0;
}

// ---- gim

json model_json(const ModelDatum& md)
{
    json out;
    out["group"] = md.G.str();
    out["nu"] = md.nu.str(md.G);
    json entries = json::array();
    for (const auto& e : md.entries) {
        json gens = json::array(), vals = json::array();
        for (size_t i = 0; i < e.gens.size(); ++i) {
            gens.push_back(format_element(md.G, e.gens[i]));
            const int64_t num = nt::mod(e.num[i], e.den), g = std::gcd(num, e.den);
            vals.push_back(std::to_string(num / g) + "/" + std::to_string(e.den / g));
        }
        entries.push_back({{"rep", format_element(md.G, e.rep)}, {"subgroup_gens", gens}, {"char_values", vals}});
    }
    out["entries"] = entries;
    return out;
}

// char_values are fractions of a turn: "k/d" stands for exp(2πi k/d).
ModelDatum model_from_json(const json& j, const std::string& group_opt, const std::string& nu_opt)
{
    ModelDatum md;
    const json* entries = &j;
    std::string group = group_opt, nu = nu_opt;
    if (j.is_object()) {
        if (group.empty() && j.contains("group"))
            group = j["group"].get<std::string>();
        if (nu.empty() && j.contains("nu"))
            nu = j["nu"].get<std::string>();
        if (!j.contains("entries"))
            throw UsageError("model object needs an 'entries' array");
        entries = &j["entries"];
    }
    if (group.empty())
        throw UsageError("model file names no group; pass --group");
    md.G = group_arg(group);
    md.nu = nu.empty() ? nu_tau() : nu_arg(md.G, nu);
    if (!entries->is_array())
        throw UsageError("model entries must be an array");
    for (const auto& e : *entries) {
        ModelEntry en;
        en.rep = element_arg(md.G, e.at("rep").get<std::string>());
        std::vector<std::pair<int64_t, int64_t>> fr;
        for (const auto& g : e.at("subgroup_gens"))
            en.gens.push_back(element_arg(md.G, g.get<std::string>()));
        for (const auto& v : e.at("char_values")) {
            auto parts = int_list([&] {
                std::string s = v.get<std::string>();
                for (char& c : s)
                    if (c == '/')
                        c = ',';
                return s;
            }());
            if (parts.size() == 1)
                parts.push_back(1);
            if (parts.size() != 2 || parts[1] <= 0)
                throw UsageError("char_values entries look like \"k/d\"");
            fr.emplace_back(parts[0], parts[1]);
        }
        if (fr.size() != en.gens.size())
            throw UsageError("char_values and subgroup_gens differ in length");
        en.den = 1;
        for (auto [a, d] : fr)
            en.den = std::lcm(en.den, d);
        for (auto [a, d] : fr)
            en.num.push_back(a * (en.den / d));
        md.entries.push_back(std::move(en));
    }
    return md;
}

json gim_json(const GroupParams& G, const GimResult& r)
{
    json out;
    out["group"] = G.str();
    out["status"] = to_string(r.status);
    out["source"] = r.source;
    out["branch"] = r.branch;
    out["notes"] = r.notes;
    if (!r.tried.empty()) {
        json t = json::array();
        for (const auto& nu : r.tried)
            t.push_back(nu.str(G));
        out["tried"] = t;
    }
    if (r.witness)
        out["witness"] = model_json(*r.witness);
    return out;
}

int cmd_gim_classify(const std::string& group)
{
    const auto G = group_arg(group);
    print(gim_json(G, classify(G)));
    return 0;
}

int cmd_gim_search(const std::string& group, const std::string& nu, std::optional<uint64_t> cap)
{
    const auto G = group_arg(group);
    if (cap)
        caps().gim = *cap;
    GimResult r;
    if (nu == "all")
        r = gim_search(G, true);
    else if (nu == "default")
        r = gim_search(G, false);
    else
        r = gim_search_with(G, {nu_arg(G, nu)});
    print(gim_json(G, r));
    return 0;
}

int cmd_gim_verify(const std::string& path, const std::string& group, const std::string& nu)
{
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot open '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw UsageError("'" + path + "' is not JSON: " + e.what());
    }
    ModelDatum md;
    try {
        md = model_from_json(j, group, nu);
    } catch (const json::exception& e) {
        throw UsageError("malformed model: " + std::string(e.what()));
    }
    const ModelCheck c = verify_model(md);
    json out;
    out["group"] = md.G.str();
    out["nu"] = md.nu.str(md.G);
    out["ok"] = c.ok;
    out["multiplicities"] = c.multiplicities;
    print(out);
    return 0;
}

int cmd_gim_descent(const std::string& rpn, int m)
{
    auto v = int_list(rpn);
    if (v.size() != 3)
        throw UsageError("descent takes r,p,n");
    const DescentCheck d = quotient_descent_check(int(v[0]), int(v[1]), int(v[2]), m);
    json out;
    out["L"] = std::to_string(v[0]) + "," + std::to_string(v[1]) + ",1," + std::to_string(v[2]);
    out["m"] = m;
    out["cond_i"] = to_string(d.cond_i);
    out["cond_ii"] = d.cond_ii;
    out["cond_ii_coset"] = d.cond_ii_coset;
    out["checked"] = d.checked;
    print(out);
    return 0;
}

// ---- conj

int cmd_conj(const std::string& group, const std::string& gs, const std::string& hs, bool data, bool classes)
{
    const auto G = group_arg(group);
    json out;
    out["group"] = G.str();
    if (!gs.empty()) {
        const Element g = element_arg(G, gs);
        out["g"] = format_element(G, g);
        if (data || hs.empty()) {
            const CycleData d = decompose(G, g);
            json cyc = json::array();
            for (const auto& c : d.cycles) {
                std::vector<int> one;
                for (int i : c.cycle)
                    one.push_back(i + 1);
                cyc.push_back({{"cycle", one}, {"colors", c.colors}, {"length", c.length}, {"color", c.color},
                               {"s", c.s}, {"s_modulus", c.s_modulus}});
            }
            out["cycles"] = cyc;
            out["d_p"] = d.d_p;
            out["s_p"] = d.s_p;
            out["d_eff"] = d.d_eff;
            out["s_eff"] = d.s_eff;
        }
        if (!hs.empty()) {
            const Element h = element_arg(G, hs);
            out["h"] = format_element(G, h);
            out["conjugate_in_Grn"] = conjugate_in_Grn(G, g, h);
            out["conjugate_in_Grpn"] = conjugate_in_Grpn(G, g, h);
            out["conjugate_in_quotient"] = conjugate_in_quotient(G, g, h);
        }
    } else if (!hs.empty()) {
        throw UsageError("--other needs --g");
    }
    if (classes) {
        json cl = json::array();
        for (const auto& c : conjugacy_classes(G))
            cl.push_back({{"rep", format_element(G, c.rep)}, {"size", c.size}, {"s_p", c.s_p}, {"d_p", c.d_p}});
        out["classes"] = cl;
    }
    if (gs.empty() && !classes)
        throw UsageError("give --g or --classes");
    print(out);
    return 0;
}

// ---- invol

int cmd_invol(const std::string& group, const std::string& nu_s, bool classes)
{
    const auto G = group_arg(group);
    const NuChoice nu = nu_arg(G, nu_s);
    const bool is_tau = nu.with_tau && nu.g.n == 0;
    json out;
    out["group"] = G.str();
    out["nu"] = nu.str(G);
    out["involutive"] = is_involutive(G, nu);
    if (is_tau) {
        out["count"] = count_tau_involutions(G);
        out["degree_sum"] = sum_of_degrees(G);
        out["has_split"] = has_split_representations(G);
        out["has_antisymmetric"] = has_antisymmetric(G);
        if (auto w = antisymmetric_witness(G))
            out["antisymmetric_witness"] = format_element(G, *w);
    }
    if (classes || !is_tau) {
        const TwistedData td = twisted_classes(G, nu);
        out["count"] = td.involutions.size();
        json cl = json::array();
        for (const auto& c : td.classes) {
            const Element& rep = td.E->elems[c.rep];
            json j = {{"rep", format_element(G, rep)}, {"size", c.members.size()}, {"centralizer_order", c.centralizer.size()}};
            if (is_tau)
                j["parity"] = classify_absolute(G, rep) == Parity::Symmetric ? "symmetric" : "antisymmetric";
            cl.push_back(j);
        }
        out["classes"] = cl;
    }
    print(out);
    return 0;
}

// ---- scan

struct ScanArgs {
    ScanSpec spec;
    std::string after, format = "table", nu = "default";
};

int cmd_scan(ScanArgs A, bool strict)
{
    if (!A.after.empty()) {
        auto v = int_list(A.after);
        if (v.size() != 4 || !is_valid_tuple(int(v[0]), int(v[1]), int(v[2]), int(v[3])))
            throw UsageError("--after takes a valid tuple r,p,q,n");
        A.spec.after = std::array<int, 4>{int(v[0]), int(v[1]), int(v[2]), int(v[3])};
    }
    A.spec.all_nu = A.nu == "all";
    if (A.format == "table")
        std::cout << table_header() << "\n";
    else if (A.format == "csv")
        std::cout << csv_header() << "\n";
    std::optional<ReportRow> bad;
    scan(A.spec, [&](const ReportRow& w) {
        if (A.format == "table")
            std::cout << to_table(w) << "\n";
        else if (A.format == "csv")
            std::cout << to_csv(w) << "\n";
        else
            std::cout << to_json_line(w) << "\n";
        if (strict && (!w.agree || !w.error.empty())) {
            bad = w;
            return false;
        }
        return true;
    });
    std::cout.flush();
    if (bad) {
        json e = {{"error", bad->error.empty() ? "Disagreement" : "RowError"},
                  {"message", "row (" + std::to_string(bad->r) + "," + std::to_string(bad->p) + "," +
                                  std::to_string(bad->q) + "," + std::to_string(bad->n) + ") " +
                                  (bad->error.empty() ? "classifier and search disagree" : bad->error)}};
        std::cerr << e.dump() << "\n";
        return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Projective reflection groups G(r,p,q,n): conjugacy, isomorphism, automorphisms, characters, "
                 "involution models"};
    app.require_subcommand(1);
    app.fallthrough();
    bool strict = false;
    std::optional<uint64_t> enum_cap, table_cap, class_cap, gim_cap, aut_cap;
    app.add_flag("--strict", strict, "Fail on the first scan row that errors or disagrees");
    app.add_option("--enum-cap", enum_cap, "Enumeration cap (group order)");
    app.add_option("--table-cap", table_cap, "Character table order cap");
    app.add_option("--class-cap", class_cap, "Character table class-count cap");
    app.add_option("--gim-cap", gim_cap, "GIM search order cap");
    app.add_option("--aut-cap", aut_cap, "Automorphism search order cap");

    std::function<int()> run;

    auto* iso = app.add_subcommand("iso", "Decide isomorphism of G(r,p,q,n) and G(r,p',q',n)");
    std::string iso_l, iso_r;
    bool iso_cert = false;
    iso->add_option("--left", iso_l, "r,p,q,n")->required();
    iso->add_option("--right", iso_r, "r,p',q',n")->required();
    iso->add_flag("--certify", iso_cert, "Verify an explicit map or exhibit a differing invariant");
    iso->callback([&] { run = [&] { return cmd_iso(iso_l, iso_r, iso_cert); }; });

    auto* aut = app.add_subcommand("aut", "Build, validate and decompose automorphisms");
    AutArgs aa;
    aut->add_option("--group", aa.group, "r,p,q,n")->required();
    aut->add_option("--alpha", aa.alpha, "alpha_{j,k,z} as j,k[,z]");
    aut->add_option("--ad", aa.ad, "Ad(g) with g in G(r,1,q,n)");
    aut->add_flag("--phi4", aa.phi4, "The exceptional rank-4 automorphism");
    aut->add_flag("--tau", aa.tau, "Inverse transpose");
    aut->add_flag("--outer-search", aa.outer, "Search for a class-preserving outer automorphism");
    aut->add_flag("--characteristic", aa.characteristic, "Is the diagonal subgroup characteristic");
    aut->callback([&] { run = [&] { return cmd_aut(aa); }; });

    auto* ct = app.add_subcommand("chartable", "Character table");
    std::string ct_group, ct_format = "json";
    bool ct_values = false;
    ct->add_option("--group", ct_group, "r,p,q,n")->required();
    ct->add_flag("--values", ct_values, "Include the value matrix");
    ct->add_option("--format", ct_format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    ct->callback([&] { run = [&] { return cmd_chartable(ct_group, ct_values, ct_format); }; });

    auto* gim = app.add_subcommand("gim", "Generalized involution models");
    gim->require_subcommand(1);
    gim->fallthrough();
    std::string g_group, g_nu = "default", g_file, g_vgroup, g_vnu, g_rpn;
    std::optional<uint64_t> g_cap;
    int g_m = 1;
    auto* gc = gim->add_subcommand("classify", "Classify from the parameters");
    gc->add_option("group", g_group, "r,p,q,n")->required();
    gc->callback([&] { run = [&] { return cmd_gim_classify(g_group); }; });
    auto* gs = gim->add_subcommand("search", "Exhaustive search for a model");
    gs->add_option("group", g_group, "r,p,q,n")->required();
    gs->add_option("--nu", g_nu, "default, tau, all, or a twist Ad(...)[*tau]");
    gs->add_option("--cap", g_cap, "Search order cap");
    gs->callback([&] { run = [&] { return cmd_gim_search(g_group, g_nu, g_cap); }; });
    auto* gv = gim->add_subcommand("verify", "Check a model file");
    gv->add_option("model", g_file, "JSON model file")->required();
    gv->add_option("--group", g_vgroup, "r,p,q,n when the file does not name it");
    gv->add_option("--nu", g_vnu, "Twist when the file does not name it (default tau)");
    gv->callback([&] { run = [&] { return cmd_gim_verify(g_file, g_vgroup, g_vnu); }; });
    auto* gd = gim->add_subcommand("descent", "Descent conditions from G(r,p,1,n) to its quotient by C_m");
    gd->add_option("rpn", g_rpn, "r,p,n")->required();
    gd->add_option("--m", g_m, "Order of the central subgroup")->required();
    gd->callback([&] { run = [&] { return cmd_gim_descent(g_rpn, g_m); }; });

    auto* conj = app.add_subcommand("conj", "Colored cycles and conjugacy");
    std::string c_group, c_g, c_h;
    bool c_data = false, c_classes = false;
    conj->add_option("--group", c_group, "r,p,q,n")->required();
    conj->add_option("--g", c_g, "Element (p1 ... pn | c1 ... cn)");
    conj->add_option("--other", c_h, "Second element for a conjugacy test");
    conj->add_flag("--data", c_data, "Cycle data of g");
    conj->add_flag("--classes", c_classes, "List the conjugacy classes");
    conj->callback([&] { run = [&] { return cmd_conj(c_group, c_g, c_h, c_data, c_classes); }; });

    auto* inv = app.add_subcommand("invol", "Twisted involutions");
    std::string i_group, i_nu = "tau";
    bool i_classes = false;
    inv->add_option("--group", i_group, "r,p,q,n")->required();
    inv->add_option("--nu", i_nu, "tau, id, Ad(...) or Ad(...)*tau");
    inv->add_flag("--classes", i_classes, "List twisted classes");
    inv->callback([&] { run = [&] { return cmd_invol(i_group, i_nu, i_classes); }; });

    auto* sc = app.add_subcommand("scan", "Classification report over a parameter range");
    ScanArgs sa;
    sc->add_option("--min-order", sa.spec.order_min);
    sc->add_option("--max-order", sa.spec.order_max);
    sc->add_option("--r-min", sa.spec.r_min);
    sc->add_option("--r-max", sa.spec.r_max);
    sc->add_option("--n-min", sa.spec.n_min);
    sc->add_option("--n-max", sa.spec.n_max);
    sc->add_flag("--verify", sa.spec.verify, "Confirm each row by search");
    sc->add_option("--nu", sa.nu, "Twists tried when verifying")->check(CLI::IsMember({"default", "all"}));
    sc->add_option("--after", sa.after, "Resume after this r,p,q,n");
    sc->add_option("--format", sa.format, "table, jsonl or csv")->check(CLI::IsMember({"table", "jsonl", "csv"}));
    sc->add_option("--batch", sa.spec.batch, "Rows computed concurrently")->check(CLI::PositiveNumber);
    sc->callback([&] { run = [&] { return cmd_scan(sa, strict); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    Caps& c = caps();
    if (enum_cap)
        c.enumeration = *enum_cap;
    if (table_cap)
        c.table = *table_cap;
    if (class_cap)
        c.table_classes = *class_cap;
    if (gim_cap)
        c.gim = *gim_cap;
    if (aut_cap)
        c.aut = *aut_cap;

    try {
        return run();
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << json{{"error", e.kind()}, {"message", e.what()}}.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", "InternalError"}, {"message", e.what()}}.dump() << "\n";
        return 1;
    }
}
