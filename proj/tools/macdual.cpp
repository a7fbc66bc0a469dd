// Command-line front end: every pipeline of the library behind
// reproducible text or JSON output. Exit codes: 0 success, 2
// inconclusive result, 1 error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "macdual/gadmissible.hpp"
#include "macdual/points.hpp"
#include "macdual/poly_io.hpp"
#include "macdual/semigroup.hpp"

using nlohmann::json;
using namespace macdual;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInconclusive = 2;

struct InconclusiveExit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<int> parse_int_list(const std::string& s, const char* what) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw usage_error(std::string("bad ") + what + " entry: '" + item + "'");
        }
    }
    if (out.empty()) throw usage_error(std::string("empty ") + what + " list");
    return out;
}

Rat parse_rat(const std::string& s) {
    std::string t = s;
    bool neg = false;
    if (!t.empty() && (t[0] == '-' || t[0] == '+')) {
        neg = t[0] == '-';
        t = t.substr(1);
    }
    auto slash = t.find('/');
    try {
        Int num(slash == std::string::npos ? t : t.substr(0, slash), 10);
        Int den(slash == std::string::npos ? std::string("1") : t.substr(slash + 1), 10);
        if (den == 0) throw usage_error("zero denominator in '" + s + "'");
        Rat q(num, den);
        q.canonicalize();
        return neg ? Rat(-q) : q;
    } catch (const std::invalid_argument&) {
        throw usage_error("bad rational '" + s + "'");
    }
}

Action parse_action(const std::string& s) {
    if (s == "contract" || s == "contraction") return Action::Contraction;
    if (s == "derive" || s == "derivation") return Action::Derivation;
    throw usage_error("unknown action '" + s + "' (use contract or derive)");
}

struct LoadedIdeal {
    GradedIdeal ideal;
    int nvars;
};

LoadedIdeal load_ideal(const std::string& path, const std::string& weights_flag) {
    std::ifstream in(path);
    if (!in) throw usage_error("cannot open ideal file '" + path + "'");
    std::optional<std::vector<int>> flag_weights;
    if (!weights_flag.empty()) flag_weights = parse_int_list(weights_flag, "weights");
    PolyFileData data = read_poly_file(
        in, Flavor::Ring, flag_weights ? static_cast<int>(flag_weights->size()) : 0);
    Weighting w = flag_weights ? Weighting(*flag_weights)
                               : (data.weights ? *data.weights : Weighting::standard(data.nvars));
    if (w.size() < data.nvars)
        throw usage_error("weights list shorter than the number of variables in the file");
    return LoadedIdeal{GradedIdeal(std::move(data.polys), w), data.nvars};
}

DualPresentation load_module(const std::string& path, const std::string& weights_flag,
                             Action act) {
    std::ifstream in(path);
    if (!in) throw usage_error("cannot open module file '" + path + "'");
    std::optional<std::vector<int>> flag_weights;
    if (!weights_flag.empty()) flag_weights = parse_int_list(weights_flag, "weights");
    PolyFileData data = read_poly_file(
        in, Flavor::Dual, flag_weights ? static_cast<int>(flag_weights->size()) : 0);
    Weighting w = flag_weights ? Weighting(*flag_weights)
                               : (data.weights ? *data.weights : Weighting::standard(data.nvars));
    return DualPresentation(std::move(data.polys), act, w);
}

std::vector<ProjectivePoint> parse_points(const std::string& s) {
    std::vector<ProjectivePoint> pts;
    std::stringstream ss(s);
    std::string chunk;
    while (std::getline(ss, chunk, ';')) {
        if (chunk.empty()) continue;
        std::vector<Rat> coords;
        std::stringstream cs(chunk);
        std::string item;
        while (std::getline(cs, item, ',')) coords.push_back(parse_rat(item));
        pts.emplace_back(std::move(coords));
    }
    if (pts.empty()) throw usage_error("no points given");
    return pts;
}

void emit(const json& j, const std::string& format, const std::string& text) {
    if (format == "json")
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

json point_json(const ProjectivePoint& p) {
    json a = json::array();
    for (int i = 0; i < p.size(); ++i) a.push_back(p[i].get_str());
    return a;
}

json certificate_json(const ReducednessCertificate& c) {
    json j;
    j["reduced"] = c.reduced;
    j["r"] = c.r;
    j["s"] = c.s;
    j["H"] = to_string(c.H);
    if (c.points) {
        json pts = json::array();
        for (const auto& p : *c.points) pts.push_back(point_json(p));
        j["points"] = pts;
    } else {
        j["points"] = nullptr;
    }
    if (c.alphas) {
        json as = json::array();
        for (const auto& a : *c.alphas) as.push_back(a.get_str());
        j["alphas"] = as;
    } else {
        j["alphas"] = nullptr;
    }
    j["diagnostics"] = {{"trace_det", c.trace_det.get_str()},
                        {"minpoly_squarefree", c.minpoly_squarefree},
                        {"nonsquarefree_lambdas", c.nonsquarefree_lambdas},
                        {"points_rational", c.points_rational},
                        {"hf", c.hf}};
    return j;
}

std::string certificate_text(const ReducednessCertificate& c) {
    std::ostringstream os;
    os << "reduced: " << (c.reduced ? "true" : "false") << "\n";
    os << "r = " << c.r << ", s = " << c.s << "\n";
    os << "H = " << to_string(c.H) << "\n";
    os << "trace determinant: " << c.trace_det.get_str() << "\n";
    if (!c.reduced)
        os << "non-squarefree minimal polynomials among sampled lambdas: "
           << c.nonsquarefree_lambdas << "\n";
    if (c.points) {
        os << "points:";
        for (const auto& p : *c.points) {
            os << " (";
            for (int i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i].get_str();
            os << ")";
        }
        os << "\n";
    } else if (c.reduced && !c.points_rational) {
        os << "points: not rational (reducedness verdict unaffected)\n";
    }
    if (c.alphas) {
        os << "alphas:";
        for (const auto& a : *c.alphas) os << " " << a.get_str();
        os << "\n";
    }
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Macaulay inverse systems: semigroup duals, G-admissible "
                 "sequences and reducedness certificates"};
    app.require_subcommand(1);
    std::string format = "text";
    app.add_option("--output", format, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));

    // semigroup-dual
    auto* sd = app.add_subcommand("semigroup-dual",
                                  "dual generators of I(a1..an) + (x1^t) for t = 1..trunc");
    std::string sd_gens;
    int sd_trunc = 1;
    bool sd_all = false;
    sd->add_option("--gens", sd_gens, "semigroup generators, e.g. 5,6,9")->required();
    sd->add_option("--trunc", sd_trunc, "largest truncation exponent")->required();
    sd->add_flag("--all", sd_all, "include non-minimal generators");

    // lform
    auto* lf = app.add_subcommand("lform", "the dual form L_{w,j} of a numerical semigroup");
    std::string lf_gens;
    long long lf_j = 0;
    lf->add_option("--gens", lf_gens)->required();
    lf->add_option("--j", lf_j)->required();

    // apply
    auto* ap = app.add_subcommand("apply", "apply a ring element to a dual element");
    std::string ap_action = "contract", ap_f, ap_F;
    ap->add_option("--action", ap_action);
    ap->add_option("-f", ap_f, "ring polynomial")->required();
    ap->add_option("-F", ap_F, "dual polynomial")->required();

    // dual
    auto* du = app.add_subcommand("dual", "basis of the dual component I^perp at one degree");
    std::string du_ideal, du_weights, du_action = "contract";
    long long du_j = 0;
    du->add_option("--ideal", du_ideal)->required();
    du->add_option("--j", du_j)->required();
    du->add_option("--weights", du_weights);
    du->add_option("--action", du_action);

    // hf
    auto* hf_cmd = app.add_subcommand("hf", "Hilbert function value at one degree");
    std::string hf_ideal, hf_weights;
    long long hf_j = 0;
    hf_cmd->add_option("--ideal", hf_ideal)->required();
    hf_cmd->add_option("--j", hf_j)->required();
    hf_cmd->add_option("--weights", hf_weights);

    // hvector
    auto* hv_cmd = app.add_subcommand("hvector", "h-vector and socle degree");
    std::string hv_ideal, hv_weights;
    long long hv_jmax = 0;
    hv_cmd->add_option("--ideal", hv_ideal)->required();
    hv_cmd->add_option("--jmax", hv_jmax)->required();
    hv_cmd->add_option("--weights", hv_weights);

    // ann
    auto* an = app.add_subcommand("ann", "annihilator component of a dual module");
    std::string an_module, an_weights, an_action = "contract";
    long long an_degree = 0;
    an->add_option("--module", an_module)->required();
    an->add_option("--degree", an_degree)->required();
    an->add_option("--weights", an_weights);
    an->add_option("--action", an_action);

    // gsequence
    auto* gs = app.add_subcommand("gsequence", "G-admissible generator sequence H_1..H_T");
    std::string gs_ideal, gs_weights, gs_z = "x1", gs_action = "contract";
    int gs_T = 1, gs_verify = -1;
    gs->add_option("--ideal", gs_ideal)->required();
    gs->add_option("--z", gs_z);
    gs->add_option("--T", gs_T)->required();
    gs->add_option("--weights", gs_weights);
    gs->add_option("--action", gs_action);
    gs->add_option("--verify", gs_verify, "check Def-admissibility for l <= this bound");

    // probe
    auto* pr = app.add_subcommand("probe", "bounded divisibility probes (primality evidence)");
    std::string pr_ideal, pr_weights, pr_z = "x1", pr_action = "contract", pr_a;
    int pr_t = 1, pr_rmax = 4, pr_e = -1, pr_threads = 1;
    pr->add_option("--ideal", pr_ideal)->required();
    pr->add_option("--z", pr_z);
    pr->add_option("--t", pr_t);
    pr->add_option("--rmax", pr_rmax)->required();
    pr->add_option("--a", pr_a, "probe one homogeneous element instead of all monomials");
    pr->add_option("--e", pr_e, "probe monomials of total degree <= e-1 (default a1 for weights)");
    pr->add_option("--weights", pr_weights);
    pr->add_option("--action", pr_action);
    pr->add_option("--threads", pr_threads);

    // reduced
    auto* rd = app.add_subcommand("reduced", "reducedness certificate of a 0-dimensional scheme");
    std::string rd_ideal, rd_z = "x3";
    unsigned rd_seed = 12345;
    int rd_attempts = 8;
    rd->add_option("--ideal", rd_ideal)->required();
    rd->add_option("--z", rd_z)->required();
    rd->add_option("--seed", rd_seed);
    rd->add_option("--attempts", rd_attempts);

    // member
    auto* mb = app.add_subcommand("member", "membership of a dual element in a dual module");
    std::string mb_G, mb_module, mb_weights, mb_action = "contract";
    mb->add_option("-G", mb_G, "dual polynomial")->required();
    mb->add_option("--module", mb_module)->required();
    mb->add_option("--weights", mb_weights);
    mb->add_option("--action", mb_action);

    // waring-verify
    auto* wv = app.add_subcommand("waring-verify",
                                  "check H = sum c_i L_i^deg(H) over supplied points");
    std::string wv_H, wv_points, wv_z;
    wv->add_option("-H,--form", wv_H, "dual polynomial")->required();
    wv->add_option("--points", wv_points, "e.g. \"1,0,1;0,1,1\"")->required();
    wv->add_option("--z", wv_z, "also report alphas relative to this linear form");

    try {
        app.parse(argc, argv);

        if (*sd) {
            NumericalSemigroup S(parse_int_list(sd_gens, "generator"));
            json levels = json::array();
            std::ostringstream text;
            text << "S = <" << sd_gens << ">  frobenius = " << S.frobenius() << "\n";
            for (int t = 1; t <= sd_trunc; ++t) {
                auto gens = S.truncated_dual_generators(t);
                int minimal_count = 0;
                json rows = json::array();
                std::ostringstream rows_text;
                for (const auto& g : gens) {
                    if (g.minimal) ++minimal_count;
                    if (!g.minimal && !sd_all) continue;
                    rows.push_back({{"j", g.j}, {"form", to_string(g.form)}, {"minimal", g.minimal}});
                    rows_text << "  j=" << g.j << "  " << to_string(g.form)
                              << (g.minimal ? "" : "  (non-minimal)") << "\n";
                }
                levels.push_back({{"t", t}, {"minimal_count", minimal_count}, {"rows", rows}});
                text << "t=" << t << "  (" << minimal_count << " minimal generator"
                     << (minimal_count == 1 ? "" : "s") << ")\n"
                     << rows_text.str();
            }
            json out = {{"generators", parse_int_list(sd_gens, "generator")},
                        {"frobenius", S.frobenius()},
                        {"levels", levels}};
            emit(out, format, text.str());
            return kExitOk;
        }

        if (*lf) {
            NumericalSemigroup S(parse_int_list(lf_gens, "generator"));
            SparsePoly L = S.l_form(lf_j);
            emit({{"j", lf_j}, {"form", to_string(L)}}, format, to_string(L) + "\n");
            return kExitOk;
        }

        if (*ap) {
            SparsePoly f0 = parse_poly(ap_f, Flavor::Ring);
            SparsePoly F0 = parse_poly(ap_F, Flavor::Dual);
            int n = std::max(f0.nvars(), F0.nvars());
            SparsePoly f = parse_poly(ap_f, Flavor::Ring, n);
            SparsePoly F = parse_poly(ap_F, Flavor::Dual, n);
            SparsePoly r = apply(f, F, parse_action(ap_action));
            emit({{"result", to_string(r)}}, format, to_string(r) + "\n");
            return kExitOk;
        }

        if (*du) {
            auto [I, nvars] = load_ideal(du_ideal, du_weights);
            auto basis = dual_component(I, du_j, parse_action(du_action));
            json forms = json::array();
            std::ostringstream text;
            text << "dimension " << basis.size() << " at degree " << du_j << "\n";
            for (const auto& b : basis) {
                forms.push_back(to_string(b));
                text << to_string(b) << "\n";
            }
            emit({{"j", du_j}, {"dimension", basis.size()}, {"basis", forms}}, format, text.str());
            return kExitOk;
        }

        if (*hf_cmd) {
            auto [I, nvars] = load_ideal(hf_ideal, hf_weights);
            long long v = hilbert_function(I, hf_j);
            emit({{"j", hf_j}, {"value", v}}, format, std::to_string(v) + "\n");
            return kExitOk;
        }

        if (*hv_cmd) {
            auto [I, nvars] = load_ideal(hv_ideal, hv_weights);
            HVector hv = h_vector(I, hv_jmax);
            json out = {{"conclusive", hv.conclusive}, {"hf", hv.hf}};
            std::ostringstream text;
            if (hv.conclusive) {
                out["h"] = hv.h;
                out["socle_degree"] = hv.socle_degree;
                out["stable_value"] = hv.stable_value;
                text << "h = (";
                for (std::size_t i = 0; i < hv.h.size(); ++i) text << (i ? "," : "") << hv.h[i];
                text << ")  socle degree s = " << hv.socle_degree << "  stable value r = "
                     << hv.stable_value << "\n";
            } else {
                text << "inconclusive: Hilbert function did not stabilize by jmax\n";
            }
            emit(out, format, text.str());
            if (!hv.conclusive) return kExitInconclusive;
            return kExitOk;
        }

        if (*an) {
            DualPresentation W = load_module(an_module, an_weights, parse_action(an_action));
            auto basis = annihilator_component(W, an_degree);
            json forms = json::array();
            std::ostringstream text;
            text << "dimension " << basis.size() << " at degree " << an_degree << "\n";
            for (const auto& b : basis) {
                forms.push_back(to_string(b));
                text << to_string(b) << "\n";
            }
            emit({{"degree", an_degree}, {"dimension", basis.size()}, {"basis", forms}}, format,
                 text.str());
            return kExitOk;
        }

        if (*gs) {
            auto [I, nvars] = load_ideal(gs_ideal, gs_weights);
            SparsePoly z = parse_poly(gs_z, Flavor::Ring, I.nvars());
            GSequence seq = g_sequence(I, z, gs_T, parse_action(gs_action));
            json hs = json::array(), degs = json::array();
            std::ostringstream text;
            for (int t = 1; t <= seq.size(); ++t) {
                hs.push_back(to_string(seq.at(t)));
                long long d = *homogeneous_degree(seq.at(t), I.omega());
                degs.push_back(d);
                text << "H" << t << " = " << to_string(seq.at(t)) << "   (degree " << d << ")\n";
            }
            json out = {{"z", to_string(z)}, {"T", gs_T}, {"H", hs}, {"degrees", degs}};
            bool verify_failed = false;
            if (gs_verify >= 0) {
                auto rep = verify_admissible(seq, gs_verify);
                json levels = json::array();
                for (const auto& lev : rep.levels) {
                    levels.push_back({{"l", lev.l},
                                      {"chain", lev.chain_condition},
                                      {"annihilator", lev.annihilator_condition}});
                    text << "l=" << lev.l << "  chain "
                         << (lev.chain_condition ? "pass" : "FAIL") << "  annihilator "
                         << (lev.annihilator_condition ? "pass" : "FAIL") << "\n";
                }
                out["verify"] = {{"levels", levels}, {"all_pass", rep.all_pass}};
                verify_failed = !rep.all_pass;
            }
            emit(out, format, text.str());
            return verify_failed ? kExitError : kExitOk;
        }

        if (*pr) {
            auto [I, nvars] = load_ideal(pr_ideal, pr_weights);
            SparsePoly z = parse_poly(pr_z, Flavor::Ring, I.nvars());
            Action act = parse_action(pr_action);
            GSequence seq = g_sequence(I, z, pr_rmax, act);
            if (!pr_a.empty()) {
                SparsePoly a = parse_poly(pr_a, Flavor::Ring, I.nvars());
                auto wit = divisibility_probe(seq, a, pr_t, pr_rmax);
                json out = {{"t", pr_t}, {"r_max", pr_rmax}, {"a", to_string(a)}};
                std::ostringstream text;
                if (wit) {
                    out["witness"] = {{"F", to_string(wit->factor)}, {"r", wit->r}};
                    text << "witness: F = " << to_string(wit->factor) << ", r = " << wit->r
                         << "\n";
                } else {
                    out["witness"] = nullptr;
                    text << "no witness up to r = " << pr_rmax << " (inconclusive)\n";
                }
                emit(out, format, text.str());
                return wit ? kExitOk : kExitInconclusive;
            }
            int e = pr_e;
            if (e < 0) e = I.omega()[0];
            ProbeReport rep = probe_all(seq, e - 1, pr_t, pr_rmax, pr_threads);
            json entries = json::array();
            std::ostringstream text;
            for (const auto& en : rep.entries) {
                if (en.witness) {
                    entries.push_back({{"a", to_string(en.a)},
                                       {"witness",
                                        {{"F", to_string(en.witness->factor)},
                                         {"r", en.witness->r}}}});
                    text << "a = " << to_string(en.a) << ":  F = "
                         << to_string(en.witness->factor) << ", r = " << en.witness->r << "\n";
                } else {
                    entries.push_back({{"a", to_string(en.a)}, {"witness", nullptr}});
                    text << "a = " << to_string(en.a) << ":  NO WITNESS\n";
                }
            }
            text << (rep.all_witnessed ? "all probed elements admit witnesses\n"
                                       : "some probes found no witness (inconclusive)\n");
            emit({{"t", pr_t},
                  {"r_max", pr_rmax},
                  {"max_total_degree", e - 1},
                  {"entries", entries},
                  {"all_witnessed", rep.all_witnessed}},
                 format, text.str());
            return rep.all_witnessed ? kExitOk : kExitInconclusive;
        }

        if (*rd) {
            auto [I, nvars] = load_ideal(rd_ideal, "");
            SparsePoly z = parse_poly(rd_z, Flavor::Ring, I.nvars());
            ReducednessCertificate cert = reducedness_certificate(I, z, rd_seed, rd_attempts);
            emit(certificate_json(cert), format, certificate_text(cert));
            return kExitOk;
        }

        if (*mb) {
            DualPresentation W = load_module(mb_module, mb_weights, parse_action(mb_action));
            SparsePoly G = parse_poly(mb_G, Flavor::Dual, W.omega.size());
            auto wit = module_membership(G, W);
            json out;
            std::ostringstream text;
            if (wit) {
                out["member"] = true;
                json parts = json::array();
                for (const auto& [gi, f] : wit->expansion) {
                    parts.push_back({{"generator", gi}, {"f", to_string(f)}});
                    text << "(" << to_string(f) << ") o F" << (gi + 1) << "\n";
                }
                out["expansion"] = parts;
                if (wit->expansion.empty()) text << "0 (trivial membership)\n";
            } else {
                out["member"] = false;
                text << "not a member at its degree\n";
            }
            emit(out, format, text.str());
            return kExitOk;
        }

        if (*wv) {
            SparsePoly H0 = parse_poly(wv_H, Flavor::Dual);
            auto pts = parse_points(wv_points);
            int n = std::max(H0.nvars(), pts.front().size());
            SparsePoly H = parse_poly(wv_H, Flavor::Dual, n);
            WaringCheck wc = waring_verify(H, pts);
            json out = {{"feasible", wc.feasible}, {"unique", wc.unique}};
            std::ostringstream text;
            if (wc.feasible) {
                json cs = json::array();
                text << "feasible; coefficients:";
                for (const auto& c : wc.coefficients) {
                    cs.push_back(c.get_str());
                    text << " " << c.get_str();
                }
                text << "\n";
                out["coefficients"] = cs;
                if (!wv_z.empty()) {
                    SparsePoly z = parse_poly(wv_z, Flavor::Ring, n);
                    auto deg = homogeneous_degree(H, Weighting::standard(n));
                    Rat dfac{factorial(static_cast<unsigned long>(*deg))};
                    json as = json::array();
                    text << "alphas:";
                    for (std::size_t i = 0; i < pts.size(); ++i) {
                        Rat zi = z.evaluate(pts[i].coords());
                        if (zi == 0) throw bad_z_error("z vanishes at a supplied point");
                        Rat a = wc.coefficients[i] * dfac * zi;
                        as.push_back(a.get_str());
                        text << " " << a.get_str();
                    }
                    text << "\n";
                    out["alphas"] = as;
                }
            } else {
                text << "infeasible: no such decomposition over these points\n";
            }
            emit(out, format, text.str());
            return kExitOk;
        }

        return kExitError;  // unreachable: a subcommand is required
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const inconclusive_error& e) {
        std::cerr << "inconclusive: " << e.what() << "\n";
        return kExitInconclusive;
    } catch (const parse_error& e) {
        std::cerr << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
}
