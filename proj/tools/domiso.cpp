// domiso: exact domination, isoperimetry and stability computations for
// direct products of complete multipartite graphs.
#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <thread>

#include "domiso/certificates.hpp"
#include "domiso/domination.hpp"
#include "domiso/isoperimetry.hpp"
#include "domiso/setops.hpp"
#include "domiso/stability.hpp"

using json = nlohmann::ordered_json;
using namespace domiso;

namespace {

json interval_json(const Interval& iv) {
    return json{{"lo", iv.lo_str()}, {"hi", iv.hi_str()}, {"bits", static_cast<long>(iv.prec())}};
}

json factors_json(const ProductSpec& s) {
    json fs = json::array();
    for (const auto& f : s.factors) fs.push_back(f.parts);
    return fs;
}

json solve_report_json(const SolveReport& rep) {
    return json{{"param", rep.param},     {"value", rep.value.get_str()},
                {"witness", rep.witness.to_hex()}, {"optimal", rep.optimal},
                {"nodes", rep.nodes},     {"millis", rep.millis}};
}

void emit(const json& j) { std::cout << j.dump() << "\n"; }

struct CommonOpts {
    std::string format = "json";
    std::uint64_t budget = 0;  // 0 = per-command default
    long bits = 128;
    long threads = 1;
    double timeout = 60.0;
    std::string set_file;
    std::string nu = "";
    std::string method = "";
};

ProductGraph graph_for_solver(const std::string& spec_text) {
    ProductSpec spec = parse_spec(spec_text);
    ProductSpec canon = spec.balanced() ? spec.canonical_t_desc() : spec.canonical_beta_asc();
    return ProductGraph::full(canon);
}

int cmd_info(const std::string& spec_text) {
    ProductSpec spec = parse_spec(spec_text);
    bool bal = spec.balanced();
    ProductSpec canon = bal ? spec.canonical_t_desc() : spec.canonical_beta_asc();
    json betas = json::array();
    for (const auto& b : canon.betas()) betas.push_back(rat_str(b));
    emit(json{{"spec", spec.to_string()},
              {"vertices", spec.vertex_count().get_str()},
              {"collapsed", spec.collapsed_count().get_str()},
              {"n", spec.n()},
              {"balanced", bal},
              {"betas", betas},
              {"canonical",
               json{{"factors", factors_json(canon)},
                    {"balanced", bal},
                    {"order", bal ? "t-desc" : "beta-asc"}}},
              {"canonical_spec", canon.to_string()}});
    return 0;
}

int cmd_alpha(const std::string& spec_text, const CommonOpts& o) {
    ProductSpec spec = parse_spec(spec_text);
    bool use_formula = o.method == "formula" || (o.method.empty() && spec.balanced());
    if (use_formula) {
        emit(json{{"param", "alpha"}, {"value", alpha_formula(spec).get_str()}, {"method", "formula"}});
        return 0;
    }
    ProductGraph g = graph_for_solver(spec_text);
    SolveOptions opt{o.budget ? o.budget : 64, o.timeout};
    SolveReport rep = max_independent_set(g, opt);
    json j = solve_report_json(rep);
    j["method"] = "solver";
    emit(j);
    return rep.optimal ? 0 : 1;
}

int cmd_upper(const std::string& spec_text, UpperMode mode, const CommonOpts& o) {
    ProductGraph g = graph_for_solver(spec_text);
    SolveOptions opt{o.budget ? o.budget : 64, o.timeout};
    SolveReport rep = upper_irredundance(g, mode, opt);
    emit(solve_report_json(rep));
    return rep.optimal ? 0 : 1;
}

int cmd_decompose(const CommonOpts& o) {
    LoadedSubset in = read_subset_file(o.set_file);
    auto res = irredundance_certificate(in.set);
    if (auto* w = std::get_if<RedundancyWitness>(&res)) {
        emit(json{{"irredundant", false}, {"redundant_vertex", w->v}});
        return 0;
    }
    auto& cert = std::get<IrredundantCertificate>(res);
    json members = json::array();
    for (const auto& m : cert.members) {
        if (m.lonely)
            members.push_back(json{{"v", m.v}, {"lonely", true}});
        else
            members.push_back(json{{"v", m.v}, {"lonely", false}, {"private", m.private_neighbor}});
    }
    long rank = soc_rank_certificate(cert);
    Int cap = Int(1) << in.graph.n();
    emit(json{{"irredundant", true},
              {"lon", cert.lon.to_hex()},
              {"soc", cert.soc.to_hex()},
              {"members", members},
              {"soc_rank", rank},
              {"soc_cap", cap.get_str()}});
    return 0;
}

int cmd_profile(const std::string& spec_text, const CommonOpts& o) {
    ProductSpec spec = parse_spec(spec_text).canonical_beta_asc();
    if (o.nu.empty()) throw CLI::ValidationError("--nu is required for profile");
    Rat nu = parse_rat(o.nu);
    std::string method = o.method.empty() ? "recursive" : o.method;
    json out{{"spec", spec.to_string()}, {"nu", rat_str(nu)}};
    std::optional<Rat> rec_v, ora_v;
    if (method == "recursive" || method == "both") {
        rec_v = profile_eval(spec, nu);
        out["recursive"] = rat_str(*rec_v);
    }
    if (method == "oracle" || method == "both") {
        ora_v = profile_oracle(spec, nu, o.budget ? o.budget : 22).value;
        out["oracle"] = rat_str(*ora_v);
    }
    if (method == "both") out["match"] = (*rec_v == *ora_v);
    emit(out);
    if (method == "both" && *rec_v != *ora_v) return 1;
    return 0;
}

int cmd_profile_table(const std::string& spec_text, const CommonOpts& o) {
    ProductSpec spec = parse_spec(spec_text).canonical_beta_asc();
    auto steps = profile_steps(spec);
    if (o.format == "json") {
        json arr = json::array();
        for (const auto& [thr, val] : steps)
            arr.push_back(json{{"nu", rat_str(thr)}, {"value", rat_str(val)}});
        emit(json{{"spec", spec.to_string()}, {"steps", arr}});
    } else {
        for (const auto& [thr, val] : steps)
            std::cout << thr.get_num().get_str() << "\t" << thr.get_den().get_str() << "\t"
                      << val.get_num().get_str() << "\t" << val.get_den().get_str() << "\n";
    }
    return 0;
}

int cmd_oracle(const std::string& spec_text, const CommonOpts& o) {
    ProductSpec spec = parse_spec(spec_text).canonical_beta_asc();
    if (o.nu.empty()) throw CLI::ValidationError("--nu is required for oracle");
    Rat nu = parse_rat(o.nu);
    ProfileOracle oracle(spec, o.budget ? o.budget : 22);
    oracle.set_threads(o.threads);
    auto res = oracle.eval(nu);
    emit(json{{"spec", spec.to_string()},
              {"nu", rat_str(nu)},
              {"value", rat_str(res.value)},
              {"witness", res.witness.to_hex()},
              {"witness_measure", rat_str(res.witness.measure())},
              {"mode", "collapsed"},
              {"order", "beta-asc"}});
    return 0;
}

int cmd_stability(const CommonOpts& o) {
    LoadedSubset in = read_subset_file(o.set_file);
    StabilityReport rep = thm6_verify(in.set, o.bits);
    json out{{"spec", in.graph.spec().to_string()},
             {"I", in.set.to_hex()},
             {"mu", rat_str(rep.mu)},
             {"eps", rat_str(rep.eps)}};
    if (rep.has_witness) {
        out["witness"] = json{{"j", rep.j}, {"a", rep.a}};
        out["delta"] = rat_str(rep.delta);
    }
    out["bound_lo"] = rep.bound.lo_str();
    out["bound_hi"] = rep.bound.hi_str();
    out["t_threshold"] = rat_str(rep.t_threshold);
    out["status"] = to_string(rep.status);
    emit(out);
    return rep.status == StabilityReport::Status::Fail ? 1 : 0;
}

int cmd_exceptions(const CommonOpts& o) {
    auto e = enumerate_exceptions(o.bits);
    if (o.format == "tsv") {
        for (const auto& rec : e.exceptional)
            std::cout << rec.spec.to_string() << "\t" << rat_str(rec.eps0) << "\texceptional\n";
        std::cout << e.special->spec.to_string() << "\t" << rat_str(e.special->eps0)
                  << "\tspecial-case\n";
        return 0;
    }
    json arr = json::array();
    for (const auto& rec : e.exceptional)
        arr.push_back(json{{"spec", rec.spec.to_string()},
                           {"factors", factors_json(rec.spec)},
                           {"n", rec.n},
                           {"eps0", rat_str(rec.eps0)},
                           {"verdict", "exceptional"}});
    emit(json{{"count", arr.size()},
              {"threshold", interval_json(e.threshold)},
              {"exceptional", arr},
              {"special",
               json{{"spec", e.special->spec.to_string()},
                    {"n", e.special->n},
                    {"eps0", rat_str(e.special->eps0)},
                    {"verdict", "special-case"}}},
              {"max_n", e.max_n},
              {"candidates", e.candidates},
              {"notes", e.notes}});
    return 0;
}

int cmd_verify(const std::string& name, const CommonOpts& o) {
    std::vector<InequalityCert> certs;
    const auto& suites = suite_names();
    if (std::find(suites.begin(), suites.end(), name) != suites.end())
        certs = run_suite(name, o.bits);
    else
        certs.push_back(verify_inequality(name, o.bits));
    bool all_ok = true;
    for (const auto& c : certs) {
        json j{{"id", c.id},
               {"suite", c.suite},
               {"region", c.region},
               {"verdict", to_string(c.verdict)},
               {"margin_lo", c.margin_lo},
               {"margin_hi", c.margin_hi},
               {"points", c.points},
               {"bits", static_cast<long>(c.bits)}};
        if (c.verdict != InequalityCert::Verdict::Verified) {
            j["counterexample"] = c.counterexample;
            all_ok = false;
        }
        emit(j);
    }
    return all_ok ? 0 : 1;
}

std::vector<long> parse_coords(const std::string& text) {
    std::vector<long> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(std::stol(tok));
    return out;
}

int cmd_fold(const std::string& coords, const CommonOpts& o) {
    LoadedSubset in = read_subset_file(o.set_file);
    VertexSet folded = fold(in.set, parse_coords(coords));
    emit(json{{"spec", in.graph.spec().to_string()},
              {"mode", "collapsed"},
              {"set", folded.to_hex()},
              {"measure", rat_str(folded.measure())},
              {"boundary_measure", rat_str(boundary(folded).measure())}});
    return 0;
}

int cmd_compress(const CommonOpts& o, long coord) {
    LoadedSubset in = read_subset_file(o.set_file);
    json out{{"spec", in.graph.spec().to_string()}, {"mode", "collapsed"}};
    if (coord > 0) {
        VertexSet c = compress(in.set, coord - 1);
        out["set"] = c.to_hex();
        out["measure"] = rat_str(c.measure());
    } else {
        auto run = compress_fully(in.set);
        out["set"] = run.fixed_point.to_hex();
        out["applied"] = run.applied;
        out["measure"] = rat_str(run.fixed_point.measure());
    }
    emit(out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact domination-chain, isoperimetry and stability toolkit for direct products "
                 "of complete multipartite graphs"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string spec_text, verify_name, fold_coords;
    long compress_coord = 0;

    auto add_common = [&](CLI::App* c, bool with_set = false) {
        c->add_option("--format", o.format, "json|tsv")->check(CLI::IsMember({"json", "tsv"}));
        c->add_option("--budget", o.budget, "size budget for exhaustive work");
        c->add_option("--bits", o.bits, "interval precision in fractional bits");
        c->add_option("--threads", o.threads, "worker threads where supported");
        c->add_option("--timeout", o.timeout, "solver timeout in seconds");
        if (with_set) c->add_option("--set", o.set_file, "subset file (spec/mode/hex)")->required();
    };

    auto* info = app.add_subcommand("info", "parse a spec and print its canonical forms");
    info->add_option("spec", spec_text)->required();
    add_common(info);

    auto* alpha = app.add_subcommand("alpha", "independence number");
    alpha->add_option("spec", spec_text)->required();
    alpha->add_option("--method", o.method, "formula|solver")->check(CLI::IsMember({"formula", "solver"}));
    add_common(alpha);

    auto* gamma = app.add_subcommand("gamma", "upper domination number");
    gamma->add_option("spec", spec_text)->required();
    add_common(gamma);

    auto* ir = app.add_subcommand("ir", "upper irredundance number");
    ir->add_option("spec", spec_text)->required();
    add_common(ir);

    auto* dec = app.add_subcommand("decompose", "lonely/social certificate of a subset");
    add_common(dec, true);

    auto* prof = app.add_subcommand("profile", "isoperimetric profile at one density");
    prof->add_option("spec", spec_text)->required();
    prof->add_option("--nu", o.nu, "density p/q")->required();
    prof->add_option("--method", o.method, "recursive|oracle|both")
        ->check(CLI::IsMember({"recursive", "oracle", "both"}));
    add_common(prof);

    auto* table = app.add_subcommand("profile-table", "full step function of the profile");
    table->add_option("spec", spec_text)->required();
    o.format = "json";
    add_common(table);

    auto* orac = app.add_subcommand("oracle", "exhaustive profile optimum with witness");
    orac->add_option("spec", spec_text)->required();
    orac->add_option("--nu", o.nu, "density p/q")->required();
    add_common(orac);

    auto* stab = app.add_subcommand("stability", "stability verification of an independent set");
    add_common(stab, true);

    auto* exc = app.add_subcommand("exceptions", "enumerate the exceptional balanced products");
    add_common(exc);

    auto* ver = app.add_subcommand("verify", "run a certificate suite or a single inequality id");
    ver->add_option("name", verify_name, "suite name or inequality id")->required();
    add_common(ver);

    auto* fo = app.add_subcommand("fold", "apply the folding operator to a collapsed subset");
    fo->add_option("coords", fold_coords, "comma list of coordinates (1-based, none equal to n)")
        ->required();
    add_common(fo, true);

    auto* comp = app.add_subcommand("compress", "compress a collapsed subset to its fixed point");
    comp->add_option("--coord", compress_coord, "single 1-based coordinate instead of a full run");
    add_common(comp, true);

    std::string table_default_format = "tsv";

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (info->parsed()) return cmd_info(spec_text);
        if (alpha->parsed()) return cmd_alpha(spec_text, o);
        if (gamma->parsed()) return cmd_upper(spec_text, UpperMode::Gamma, o);
        if (ir->parsed()) return cmd_upper(spec_text, UpperMode::IR, o);
        if (dec->parsed()) return cmd_decompose(o);
        if (prof->parsed()) return cmd_profile(spec_text, o);
        if (table->parsed()) {
            if (table->count("--format") == 0) o.format = table_default_format;
            return cmd_profile_table(spec_text, o);
        }
        if (orac->parsed()) return cmd_oracle(spec_text, o);
        if (stab->parsed()) return cmd_stability(o);
        if (exc->parsed()) return cmd_exceptions(o);
        if (ver->parsed()) return cmd_verify(verify_name, o);
        if (fo->parsed()) return cmd_fold(fold_coords, o);
        if (comp->parsed()) return cmd_compress(o, compress_coord);
    } catch (const SpecParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const HypothesisViolated& e) {
        std::cerr << "error: " << e.what() << "; violating subset:";
        for (long k : e.witness) std::cerr << " " << k;
        std::cerr << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
