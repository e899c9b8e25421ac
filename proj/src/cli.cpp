/* Subcommand dispatch with byte-stable run records: the serializer sorts
 * object keys and integers print in canonical decimal, so identical inputs
 * give identical bytes apart from the runtime field. */
#include "grasscalc/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <limits>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "grasscalc/bott.hpp"
#include "grasscalc/cache.hpp"
#include "grasscalc/chowring.hpp"
#include "grasscalc/jetcheck.hpp"
#include "grasscalc/pipelines.hpp"

namespace grasscalc::cli {
namespace {

using nlohmann::json;

json json_int(const Int& v) {
    static const Int lo = std::numeric_limits<long long>::min();
    static const Int hi = std::numeric_limits<long long>::max();
    if (v >= lo && v <= hi) return v.convert_to<long long>();
    return v.str();
}

std::string strip_spaces(std::string s) {
    s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
    return s;
}

std::vector<long> parse_longs(const std::string& text, const std::string& what) {
    std::vector<long> out;
    if (text.empty()) return out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string tok =
            text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        try {
            std::size_t used = 0;
            long v = std::stol(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            out.push_back(v);
        } catch (const std::exception&) {
            throw PreconditionViolation("could not parse " + what + " entry \"" + tok + "\"");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

bott::Policy parse_policy(const std::string& name) {
    return name == "constraints-only" ? bott::Policy::ConstraintsOnly
                                      : bott::Policy::MaximalRank;
}

std::string cell_key(const std::pair<int, int>& kj) {
    return std::to_string(kj.first) + "," + std::to_string(kj.second);
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact Schubert-calculus and cohomology engine for plane loci on cubics"};
    app.name("grasscalc");
    bool no_cache = false;
    bool verbose = false;
    app.add_flag("--no-cache", no_cache, "disable the on-disk memo cache for this run");
    app.add_flag("--verbose", verbose, "attach derivation detail to the record notes");
    app.require_subcommand(1);
    app.fallthrough();

    int vd_r = 2;
    auto* vd = app.add_subcommand("voisin-degree", "degree of the residual-plane self-map");
    vd->add_option("--r", vd_r, "plane dimension")->capture_default_str();

    int fl_r = 2;
    auto* fl = app.add_subcommand("fixed-locus-class",
                                  "class of the fixed locus in the ambient Chern generators");
    fl->add_option("--r", fl_r, "plane dimension")->capture_default_str();

    int i0_r = 2;
    auto* i0 = app.add_subcommand("ind0-class",
                                  "degree-2 class of the first indeterminacy locus");
    i0->add_option("--r", i0_r, "plane dimension")->capture_default_str();

    int pp_r = 2;
    auto* pp = app.add_subcommand("psi-pullback",
                                  "multiplier of the hyperplane class under pullback");
    pp->add_option("--r", pp_r, "plane dimension")->capture_default_str();

    int ge_r = 2;
    auto* ge = app.add_subcommand("geometry", "dimension and codimension bookkeeping");
    ge->add_option("--r", ge_r, "plane dimension")->capture_default_str();

    int bt_n = 0;
    int bt_k = 0;
    std::string bt_lq = "0";
    std::string bt_le = "0";
    auto* bt = app.add_subcommand("bott", "cohomology of an irreducible homogeneous bundle");
    bt->add_option("--N", bt_n, "ambient dimension")->required();
    bt->add_option("--k", bt_k, "subbundle rank")->required();
    bt->add_option("--lq", bt_lq, "quotient weight, comma separated")->capture_default_str();
    bt->add_option("--le", bt_le, "subbundle weight, comma separated")->capture_default_str();

    int kt_r = 2;
    std::string kt_bundle;
    auto* kt = app.add_subcommand("koszul-table",
                                  "first page of the restriction resolution for a bundle");
    kt->add_option("--r", kt_r, "plane dimension")->capture_default_str();
    kt->add_option("--bundle", kt_bundle, "bundle name")
        ->required()
        ->check(CLI::IsMember({"sym3e", "sym3e-dual", "e-qdual", "edual-q"}));

    int as_r = 2;
    std::string as_bundle;
    std::string as_policy = "maximal-rank";
    auto* as = app.add_subcommand("assemble", "abutment of the restriction resolution");
    as->add_option("--r", as_r, "plane dimension")->capture_default_str();
    as->add_option("--bundle", as_bundle, "bundle name")
        ->required()
        ->check(CLI::IsMember({"sym3e", "sym3e-dual", "e-qdual", "edual-q"}));
    as->add_option("--policy", as_policy, "differential rank policy")
        ->capture_default_str()
        ->check(CLI::IsMember({"maximal-rank", "constraints-only"}));

    int hn_r = 2;
    std::string hn_policy = "maximal-rank";
    std::vector<std::string> hn_omit;
    auto* hn = app.add_subcommand("hodge-numbers", "cotangent cohomology of the plane locus");
    hn->add_option("--r", hn_r, "plane dimension")->capture_default_str();
    hn->add_option("--policy", hn_policy, "differential rank policy")
        ->capture_default_str()
        ->check(CLI::IsMember({"maximal-rank", "constraints-only"}));
    hn->add_option("--omit-fact", hn_omit, "drop an external input fact by key");

    int vw_r = 2;
    std::string vw_window;
    auto* vw = app.add_subcommand("vanishing-window",
                                  "forbidden-degree audit of a restriction table");
    vw->add_option("--r", vw_r, "plane dimension")->capture_default_str();
    vw->add_option("--window", vw_window, "window name")
        ->required()
        ->check(CLI::IsMember({"alpha", "beta"}));

    int jc_r = 2;
    std::string jc_seeds = "1,2,3,4,5";
    long long jc_prime = 10007;
    bool jc_exact = false;
    auto* jc = app.add_subcommand("jet-check",
                                  "eigenstructure of the self-map differential at a "
                                  "triple-contact plane");
    jc->add_option("--r", jc_r, "plane dimension")->capture_default_str();
    jc->add_option("--seeds", jc_seeds, "sampling seeds, comma separated")
        ->capture_default_str();
    jc->add_option("--prime", jc_prime, "field characteristic")->capture_default_str();
    jc->add_flag("--exact", jc_exact, "also run over the rationals (r = 1)");

    long fb_n = 0;
    auto* fb = app.add_subcommand("fibgen-bound", "fibering-genus lower bound");
    fb->add_option("--n", fb_n, "ambient projective dimension")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n\n" << app.help();
        return 64;
    }

    cache::reset();
    cache::set_disk_enabled(!no_cache);

    auto started = std::chrono::steady_clock::now();
    std::string name;
    json inputs = json::object();
    json result;
    std::vector<std::string> assumptions;
    std::vector<std::string> notes;
    try {
        if (vd->parsed()) {
            name = "voisin-degree";
            inputs["r"] = vd_r;
            pipelines::VoisinDegree d = pipelines::voisin_degree(vd_r);
            result = json_int(d.degree);
            notes.push_back("series coefficient before normalization: " +
                            d.raw_coefficient.str() + " = 2^" + std::to_string(d.n));
        } else if (fl->parsed()) {
            name = "fixed-locus-class";
            inputs["r"] = fl_r;
            pipelines::FixedLocusClass f = pipelines::fixed_locus_class(fl_r);
            result = json::object();
            for (const auto& [mono, coeff] : f.coeffs) result[strip_spaces(mono)] = json_int(coeff);
            notes = f.notes;
            if (verbose)
                for (const auto& [mono, block] : f.blocks)
                    notes.push_back("fibre block " + strip_spaces(mono) + ": " + block);
        } else if (i0->parsed()) {
            name = "ind0-class";
            inputs["r"] = i0_r;
            chowring::GradedClass g = chowring::porteous_ind0(i0_r);
            result = json::object();
            result["c1^2"] = json_int(rat_to_int(g.coefficient({2, 0})));
            result["c2"] = json_int(rat_to_int(g.coefficient({0, 1})));
        } else if (pp->parsed()) {
            name = "psi-pullback";
            inputs["r"] = pp_r;
            pipelines::PsiPullback p = pipelines::psi_pullback_divisor(pp_r);
            result = json::object();
            result["coefficient"] = json_int(p.coefficient);
            notes = p.steps;
        } else if (ge->parsed()) {
            name = "geometry";
            inputs["r"] = ge_r;
            pipelines::GeometryReport g = pipelines::geometry_dims(ge_r);
            result = json::object();
            result["r"] = g.r;
            result["n"] = g.n;
            result["dim_gr"] = g.dim_gr;
            result["section_rank"] = g.section_rank;
            result["dim_x"] = g.dim_x;
            result["h0_cubics"] = json_int(g.h0_cubics);
            result["gl_dim"] = json_int(g.gl_dim);
            result["deformation_dim"] = json_int(g.deformation_dim);
            result["psl_dim"] = json_int(g.psl_dim);
            result["codim_ind0"] = g.codim_ind0;
            result["codim_fix"] = g.codim_fix;
            result["codim_ind1"] = g.codim_ind1 ? json(*g.codim_ind1) : json(nullptr);
        } else if (bt->parsed()) {
            name = "bott";
            auto lq = parse_longs(bt_lq, "quotient weight");
            auto le = parse_longs(bt_le, "subbundle weight");
            inputs["N"] = bt_n;
            inputs["k"] = bt_k;
            inputs["lq"] = lq;
            inputs["le"] = le;
            symfunc::Weight lqw(lq.begin(), lq.end());
            symfunc::Weight lew(le.begin(), le.end());
            bott::BottResult br = bott::bott_cohomology(bt_n, bt_k, lqw, lew);
            result = json::object();
            result["vanishing"] = br.vanishing;
            if (br.vanishing) {
                result["q"] = nullptr;
                result["dim"] = 0;
                result["xi"] = nullptr;
            } else {
                result["q"] = br.q;
                result["dim"] = json_int(br.dim);
                result["xi"] = br.xi;
            }
        } else if (kt->parsed()) {
            name = "koszul-table";
            inputs["r"] = kt_r;
            inputs["bundle"] = kt_bundle;
            bott::FanoSpec spec = bott::fano_spec(kt_r);
            bott::KoszulTable table = koszul_e1_table(spec, bundle_by_name(spec, kt_bundle));
            result = json::object();
            result["bundle"] = kt_bundle;
            result["r"] = kt_r;
            json cells = json::object();
            for (const auto& [kj, cell] : table.cells) cells[cell_key(kj)] = json_int(cell.total);
            result["cells"] = cells;
            result["euler"] = json_int(table.euler());
            json fibre = json::array();
            for (const Int& v : table.fibre_rank) fibre.push_back(json_int(v));
            result["fibre_rank"] = fibre;
        } else if (as->parsed()) {
            name = "assemble";
            inputs["r"] = as_r;
            inputs["bundle"] = as_bundle;
            inputs["policy"] = as_policy;
            bott::FanoSpec spec = bott::fano_spec(as_r);
            bott::KoszulTable table = koszul_e1_table(spec, bundle_by_name(spec, as_bundle));
            bott::SSReport rep = assemble_restriction(table, parse_policy(as_policy));
            result = json::object();
            result["policy"] = as_policy;
            result["exact"] = rep.exact;
            json values = json::object();
            for (const auto& [p, v] : rep.values) values[std::to_string(p)] = json_int(v);
            result["values"] = values;
            json ranges = json::object();
            for (const auto& [p, pr] : rep.ranges)
                ranges[std::to_string(p)] = json::array({json_int(pr.first), json_int(pr.second)});
            result["ranges"] = ranges;
            result["euler"] = json_int(rep.euler);
            assumptions = rep.assumptions;
        } else if (hn->parsed()) {
            name = "hodge-numbers";
            std::set<std::string> omitted(hn_omit.begin(), hn_omit.end());
            inputs["r"] = hn_r;
            inputs["policy"] = hn_policy;
            inputs["omit_fact"] = std::vector<std::string>(omitted.begin(), omitted.end());
            bott::HodgeReport rep =
                bott::hodge_numbers_omega(hn_r, parse_policy(hn_policy), omitted);
            result = json::object();
            for (const auto& [p, v] : rep.h) result[std::to_string(p)] = json_int(v);
            assumptions = rep.assumptions;
            notes.push_back("euler characteristic " + rep.euler.str());
        } else if (vw->parsed()) {
            name = "vanishing-window";
            inputs["r"] = vw_r;
            inputs["window"] = vw_window;
            bott::WindowReport rep =
                verify_vanishing_window(bott::fano_spec(vw_r), vw_window);
            result = json::object();
            result["bundle"] = rep.bundle;
            result["window"] = rep.window;
            result["cells_checked"] = rep.cells_checked;
            json info = json::object();
            for (const auto& [kj, v] : rep.info_cells) info[cell_key(kj)] = json_int(v);
            result["info"] = info;
            json violations = json::array();
            for (const bott::WindowViolation& v : rep.violations) {
                json item = json::object();
                item["k"] = v.k;
                item["j"] = v.j;
                item["dim"] = json_int(v.dim);
                violations.push_back(item);
            }
            result["violations"] = violations;
        } else if (jc->parsed()) {
            name = "jet-check";
            jetcheck::JetOptions opt;
            opt.r = jc_r;
            opt.prime = jc_prime;
            opt.exact = jc_exact;
            opt.seeds.clear();
            for (long s : parse_longs(jc_seeds, "seed"))
                opt.seeds.push_back(static_cast<std::uint64_t>(s));
            inputs["r"] = jc_r;
            inputs["prime"] = jc_prime;
            inputs["exact"] = jc_exact;
            inputs["seeds"] = opt.seeds;
            jetcheck::JetReport rep = verify_eigenpoly(opt);
            result = json::object();
            result["r"] = rep.r;
            result["n"] = rep.n;
            result["tangent_dim"] = rep.tangent_dim;
            result["prime"] = rep.prime;
            result["all_ok"] = rep.all_ok;
            json seeds = json::array();
            for (const jetcheck::SeedReport& sr : rep.seeds) {
                json item = json::object();
                item["seed"] = sr.seed;
                item["attempts"] = sr.attempts_used;
                item["charpoly_matches"] = sr.charpoly_matches;
                item["det_matches"] = sr.det_matches;
                item["eigenspace_matches"] = sr.eigenspace_matches;
                item["trace"] = json_int(sr.trace);
                item["exact_ran"] = sr.exact_ran;
                item["exact_agrees"] = sr.exact_agrees;
                seeds.push_back(item);
            }
            result["seeds"] = seeds;
        } else if (fb->parsed()) {
            name = "fibgen-bound";
            inputs["n"] = fb_n;
            pipelines::FibgenBound b = pipelines::fibgen_bound(fb_n);
            result = json::object();
            result["n"] = b.n;
            result["closed_form"] = b.closed_form;
            result["brute_force"] = b.brute_force;
            result["agree"] = b.closed_form == b.brute_force;
        }
    } catch (const AmbiguousAssembly& e) {
        json rec;
        rec["error"]["type"] = e.kind;
        rec["error"]["message"] = e.what();
        out << rec.dump(2) << "\n";
        return 3;
    } catch (const EngineError& e) {
        json rec;
        rec["error"]["type"] = e.kind;
        rec["error"]["message"] = e.what();
        out << rec.dump(2) << "\n";
        return 2;
    }
    auto elapsed = std::chrono::steady_clock::now() - started;
    json rec;
    rec["subcommand"] = name;
    rec["inputs"] = inputs;
    rec["result"] = result;
    rec["assumptions"] = assumptions;
    rec["notes"] = notes;
    rec["engine_version"] = "0.1.0";
    rec["runtime_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
    out << rec.dump(2) << "\n";
    return 0;
}

}  // namespace grasscalc::cli
