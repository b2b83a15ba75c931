// xgev: command-line front end for the extended-regularity toolkit.
// Exit codes: 0 ok, 2 precondition/usage error, 3 numerical-policy failure
// (a report was produced but a checked invariant failed).

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <iostream>

#include "xgev/cutoffs.hpp"
#include "xgev/decay.hpp"
#include "xgev/field_io.hpp"
#include "xgev/fft.hpp"
#include "xgev/operators.hpp"
#include "xgev/sequences.hpp"
#include "xgev/synth.hpp"
#include "xgev/wavefront.hpp"

using json = nlohmann::ordered_json;
using namespace xgev;

namespace {

constexpr int kSchemaVersion = 1;
constexpr int kExitPolicyFailure = 3;

json base_report(const std::string& kind, std::uint64_t seed) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = kind;
    j["seed"] = seed;
    return j;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

json load_json(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path);
    json j;
    is >> j;
    return j;
}

ConstCoeffOperator operator_from_json(const json& j) {
    ConstCoeffOperator P;
    P.dim = 1;
    for (auto it = j.begin(); it != j.end(); ++it) {
        MultiIndex al{0, 0};
        std::string key = it.key();
        auto comma = key.find(',');
        al[0] = std::stoi(key.substr(0, comma));
        if (comma != std::string::npos) {
            al[1] = std::stoi(key.substr(comma + 1));
            if (al[1] != 0) P.dim = 2;
        }
        const auto& v = it.value();
        P.coeffs[al] = cplx(v.at(0).get<double>(), v.at(1).get<double>());
    }
    P.validate();
    return P;
}

DecaySamples samples_from_json(const json& j) {
    DecaySamples s;
    const json& arr = j.is_array() ? j : j.at("groups");
    for (const auto& e : arr) {
        DecaySamples::Group g;
        g.N = e.at("N").get<int>();
        for (const auto& x : e.at("xi")) g.xi_norm.push_back(x.get<double>());
        for (const auto& m : e.at("log_mag")) g.log_mag.push_back(m.get<double>());
        if (g.xi_norm.size() != g.log_mag.size())
            throw std::runtime_error("xi/log_mag length mismatch");
        s.groups.push_back(std::move(g));
    }
    if (!j.is_array()) {
        s.xi_min = j.value("xi_min", 0.0);
        s.xi_max = j.value("xi_max", 0.0);
    }
    return s;
}

WavefrontQuery query_from_json(const json& j) {
    WavefrontQuery q;
    for (const auto& p : j.at("points"))
        q.points.push_back({p.at(0).get<double>(),
                            p.size() > 1 ? p.at(1).get<double>() : 0.0});
    for (const auto& d : j.at("directions"))
        q.directions.push_back({d.at(0).get<double>(),
                                d.size() > 1 ? d.at(1).get<double>() : 0.0});
    q.params.tau = j.at("tau").get<double>();
    q.params.sigma = j.at("sigma").get<double>();
    q.r = j.value("r", q.r);
    q.N_max = j.value("N_max", q.N_max);
    q.cone_half_angle = j.value("cone_half_angle", q.cone_half_angle);
    q.xi_min = j.value("xi_min", q.xi_min);
    q.tol = j.value("tol", q.tol);
    return q;
}

json fit_to_json(const DecayFit& f) {
    json j;
    j["condition"] = f.condition.name();
    j["pass"] = f.pass;
    j["undecided"] = f.undecided;
    j["log_A"] = f.log_A;
    j["log_h"] = f.log_h;
    j["max_residual"] = f.max_residual;
    j["informative_count"] = f.informative_count;
    j["boundary_hits"] = f.boundary_hits;
    j["coverage"] = f.coverage;
    return j;
}

json estimate_to_json(const WavefrontEstimate& est) {
    json j;
    j["band"] = est.band;
    j["entries"] = json::array();
    for (std::size_t pi = 0; pi < est.query.points.size(); ++pi) {
        for (std::size_t di = 0; di < est.query.directions.size(); ++di) {
            json e;
            e["point"] = {est.query.points[pi][0], est.query.points[pi][1]};
            e["direction"] = {est.query.directions[di][0],
                              est.query.directions[di][1]};
            e["in_wavefront"] = static_cast<bool>(est.in_wf[pi][di]);
            e["fit"] = fit_to_json(est.fits[pi][di]);
            j["entries"].push_back(e);
        }
    }
    return j;
}

GridSpec grid_from_flags(int dim, int n, double lo, double hi) {
    return dim == 1 ? GridSpec::line(n, lo, hi) : GridSpec::square(n, lo, hi);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"extended-Gevrey regularity toolkit"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    double tol = kDefaultFitTol;
    int jobs = 1;
    app.add_option("--seed", seed, "seed for randomized sweeps");
    app.add_option("--tol", tol, "fit tolerance in log units");
    app.add_option("--jobs", jobs, "parallelism for sweeps");

    int exit_code = 0;

    // ---- seq ----
    auto* seq = app.add_subcommand("seq", "defining-sequence calculus");
    auto* seq_check = seq->add_subcommand("check", "verify sequence properties");
    double s_tau = 1.0, s_sigma = 2.0;
    int s_pmax = 200;
    seq_check->add_option("--tau", s_tau)->required();
    seq_check->add_option("--sigma", s_sigma)->required();
    seq_check->add_option("--pmax", s_pmax);
    seq_check->callback([&] {
        PropertyReport rep = verify_sequence_properties({s_tau, s_sigma}, s_pmax);
        json j = base_report("sequence_properties", seed);
        j["tau"] = s_tau;
        j["sigma"] = s_sigma;
        j["p_max"] = s_pmax;
        j["m1_ok"] = rep.m1_ok;
        j["m2prime_constant"] = rep.m2prime_constant;
        j["m2_constant"] = rep.m2_constant;
        j["m3prime_sum"] = rep.m3prime_partial_sums.back();
        j["simple_inequality_ok"] = rep.simple_inequality_ok;
        emit(j);
        if (!rep.m1_ok || !rep.simple_inequality_ok) exit_code = kExitPolicyFailure;
    });

    // ---- cutoff ----
    auto* cut = app.add_subcommand("cutoff", "admissible cut-off sequences");
    auto* cut_build = cut->add_subcommand("build", "build one chi_N");
    double c_tau = 1.0, c_sigma = 2.0, c_r = 1.0, c_lo = -4.5, c_hi = 4.5;
    int c_N = 4, c_n = 2048, c_dim = 1;
    std::string c_out = "chi.xgf";
    cut_build->add_option("--tau", c_tau)->required();
    cut_build->add_option("--sigma", c_sigma)->required();
    cut_build->add_option("--N", c_N)->required();
    cut_build->add_option("--r", c_r);
    cut_build->add_option("--grid", c_n);
    cut_build->add_option("--dim", c_dim);
    cut_build->add_option("--lo", c_lo);
    cut_build->add_option("--hi", c_hi);
    cut_build->add_option("-o,--out", c_out);
    cut_build->callback([&] {
        CutoffSpec spec;
        spec.params = {c_tau, c_sigma};
        spec.N = c_N;
        spec.r = c_r;
        spec.grid = grid_from_flags(c_dim, c_n, c_lo, c_hi);
        SampledField f = build_cutoff(spec);
        save_field(f, c_out);
        json j = base_report("cutoff_build", seed);
        j["N"] = c_N;
        j["factor_count"] = spec.factor_count();
        j["width"] = spec.width();
        j["out"] = c_out;
        emit(j);
    });
    auto* cut_verify = cut->add_subcommand("verify", "admissibility of a family");
    std::string cv_manifest;
    int cv_beta_max = 2, cv_alpha_cap = 0;
    cut_verify->add_option("--manifest", cv_manifest, "JSON family manifest")
        ->required();
    cut_verify->add_option("--beta-max", cv_beta_max);
    cut_verify->add_option("--alpha-cap", cv_alpha_cap);
    cut_verify->callback([&] {
        json m = load_json(cv_manifest);
        CutoffSequence cseq;
        for (const auto& e : m.at("fields")) {
            CutoffSpec spec;
            spec.params = {m.at("tau").get<double>(), m.at("sigma").get<double>()};
            spec.r = m.at("r").get<double>();
            spec.N = e.at("N").get<int>();
            SampledField f = load_field(e.at("path").get<std::string>());
            spec.grid = f.grid;
            spec.x0 = {m.value("x0", 0.0), m.value("x1", 0.0)};
            cseq.specs.push_back(spec);
            cseq.fields.push_back(std::move(f));
        }
        AdmissibilityReport rep =
            verify_admissibility(cseq, cv_alpha_cap, cv_beta_max);
        json j = base_report("cutoff_admissibility", seed);
        j["pass"] = rep.pass;
        j["alpha_cap"] = rep.alpha_cap;
        json cb = json::object();
        for (const auto& [key, c] : rep.c_beta) cb[std::to_string(key)] = c;
        j["c_beta"] = cb;
        j["worst"] = {{"N", rep.worst.N},
                      {"alpha", {rep.worst.alpha[0], rep.worst.alpha[1]}},
                      {"beta", {rep.worst.beta[0], rep.worst.beta[1]}}};
        emit(j);
        if (!rep.pass) exit_code = kExitPolicyFailure;
    });

    // ---- classify ----
    auto* cls = app.add_subcommand("classify", "regularity class of samples");
    std::string cl_samples, cl_ladder;
    cls->add_option("--samples", cl_samples)->required();
    cls->add_option("--ladder", cl_ladder);
    cls->callback([&] {
        DecaySamples s = samples_from_json(load_json(cl_samples));
        Ladder ladder = Ladder::standard();
        if (!cl_ladder.empty()) {
            json lj = load_json(cl_ladder);
            ladder.t_grid = lj.at("t_grid").get<std::vector<double>>();
            ladder.tau_grid = lj.at("tau_grid").get<std::vector<double>>();
            ladder.sigma_grid = lj.at("sigma_grid").get<std::vector<double>>();
        }
        ClassVerdict v = classify_regularity(s, ladder, tol);
        json j = base_report("classification", seed);
        const char* kinds[] = {"analytic", "gevrey", "extended", "smooth",
                               "unclassified"};
        j["verdict"] = kinds[static_cast<int>(v.kind)];
        j["t"] = v.t;
        j["tau"] = v.tau;
        j["sigma"] = v.sigma;
        j["detail"] = v.detail;
        j["fits"] = v.fits;
        emit(j);
    });

    // ---- op ----
    auto* op = app.add_subcommand("op", "constant-coefficient operators");
    std::string op_file;
    op->add_option("--op", op_file, "operator JSON")->required();
    auto* op_char = op->add_subcommand("char", "characteristic directions");
    int oc_res = 256;
    double oc_tol = 1e-9;
    op_char->add_option("--resolution", oc_res);
    op_char->add_option("--char-tol", oc_tol);
    op_char->callback([&] {
        ConstCoeffOperator P = operator_from_json(load_json(op_file));
        auto dirs = characteristic_set(P, oc_res, oc_tol);
        json j = base_report("characteristic_set", seed);
        j["order"] = P.order();
        j["elliptic"] = dirs.empty();
        j["directions"] = json::array();
        for (const auto& d : dirs) j["directions"].push_back({d[0], d[1]});
        emit(j);
    });
    auto* op_ellip = op->add_subcommand("ellip", "cone ellipticity constants");
    double oe_dx = 1.0, oe_dy = 0.0, oe_angle = M_PI / 8.0;
    op_ellip->add_option("--dir-x", oe_dx);
    op_ellip->add_option("--dir-y", oe_dy);
    op_ellip->add_option("--half-angle", oe_angle);
    op_ellip->callback([&] {
        ConstCoeffOperator P = operator_from_json(load_json(op_file));
        ConeSpec cone;
        double n = std::hypot(oe_dx, oe_dy);
        cone.direction = {oe_dx / n, oe_dy / n};
        cone.half_angle = oe_angle;
        auto [c1, c2] = cone_ellipticity_constants(P, cone, 512);
        json j = base_report("cone_ellipticity", seed);
        j["C1"] = c1;
        j["C2"] = c2;
        emit(j);
    });
    auto* op_par = op->add_subcommand("parametrix", "fundamental-identity residual");
    std::string pp_chi;
    int pp_N = 16;
    double pp_xi = 40.0, pp_xi_y = 0.0, pp_tau = 1.0, pp_sigma = 2.0,
           pp_res_tol = 1e-6;
    op_par->add_option("--chi", pp_chi, "cut-off field file")->required();
    op_par->add_option("--N", pp_N);
    op_par->add_option("--xi", pp_xi);
    op_par->add_option("--xi-y", pp_xi_y);
    op_par->add_option("--tau", pp_tau);
    op_par->add_option("--sigma", pp_sigma);
    op_par->add_option("--residual-tol", pp_res_tol);
    op_par->callback([&] {
        ConstCoeffOperator P = operator_from_json(load_json(op_file));
        SampledField chi = load_field(pp_chi);
        ParametrixConfig cfg;
        cfg.params = {pp_tau, pp_sigma};
        cfg.N = pp_N;
        std::array<double, 2> xi{pp_xi, pp_xi_y};
        double residual = verify_fundamental_identity(P, chi, xi, cfg);
        SampledField w1 = parametrix_partial_sum(P, chi, xi, cfg);
        SampledField w2 = parametrix_neumann(P, chi, xi, cfg);
        axpy(w2, -1.0, w1);
        json j = base_report("parametrix", seed);
        j["N"] = pp_N;
        j["S_max"] = cfg.S_max(P.order());
        j["residual"] = residual;
        j["dual_path_diff"] = w2.sup_abs();
        j["error_term_count"] = error_term_count(P, cfg);
        emit(j);
        if (residual > pp_res_tol || w2.sup_abs() > 1e-8)
            exit_code = kExitPolicyFailure;
    });

    // ---- wf ----
    auto* wf = app.add_subcommand("wf", "wave-front estimation");
    auto* wf_est = wf->add_subcommand("estimate", "estimate a wave-front set");
    std::string we_field, we_query;
    wf_est->add_option("--field", we_field)->required();
    wf_est->add_option("--query", we_query)->required();
    wf_est->callback([&] {
        SampledField u = load_field(we_field);
        WavefrontQuery q = query_from_json(load_json(we_query));
        WavefrontEstimate est = estimate_wavefront(u, q);
        json j = base_report("wavefront_estimate", seed);
        j["tau"] = q.params.tau;
        j["sigma"] = q.params.sigma;
        j.update(estimate_to_json(est));
        emit(j);
    });
    auto* wf_thm = wf->add_subcommand("theorem", "operator inclusion chain");
    std::string wt_field, wt_op, wt_query;
    wf_thm->add_option("--field", wt_field)->required();
    wf_thm->add_option("--op", wt_op)->required();
    wf_thm->add_option("--query", wt_query)->required();
    wf_thm->callback([&] {
        SampledField u = load_field(wt_field);
        ConstCoeffOperator P = operator_from_json(load_json(wt_op));
        WavefrontQuery q = query_from_json(load_json(wt_query));
        InclusionReport rep = check_inclusion_theorem(u, P, q);
        json j = base_report("inclusion_chain", seed);
        j["tau"] = q.params.tau;
        j["sigma"] = q.params.sigma;
        j["chain_ok"] = rep.chain_ok;
        j["first_inclusion_ok"] = rep.first_ok;
        j["second_inclusion_ok"] = rep.second_ok;
        j["derivative_inclusion_ok"] = rep.derivative_ok;
        j["violations"] = rep.violations;
        j["wf_rescaled_Pu"] = estimate_to_json(rep.wf_rescaled_Pu);
        j["wf_rescaled_u"] = estimate_to_json(rep.wf_rescaled_u);
        j["wf_Pu"] = estimate_to_json(rep.wf_Pu);
        emit(j);
        if (!rep.chain_ok || !rep.derivative_ok) exit_code = kExitPolicyFailure;
    });

    // ---- synth ----
    auto* syn = app.add_subcommand("synth", "synthesize a test field");
    std::string sy_kind = "gaussian", sy_out = "field.xgf";
    int sy_n = 16384, sy_dim = 1;
    double sy_lo = -5.0, sy_hi = 5.0, sy_c = 1.0, sy_t = 2.0, sy_kappa = 0.25,
           sy_q = 2.0, sy_s = 3.0, sy_pos = 0.0, sy_width = 1.0;
    syn->add_option("--kind", sy_kind,
                    "exp_linear|exp_root|exp_log_power|poly|step|kink|gaussian");
    syn->add_option("--grid", sy_n);
    syn->add_option("--dim", sy_dim);
    syn->add_option("--lo", sy_lo);
    syn->add_option("--hi", sy_hi);
    syn->add_option("--c", sy_c);
    syn->add_option("--t", sy_t);
    syn->add_option("--kappa", sy_kappa);
    syn->add_option("--q", sy_q);
    syn->add_option("--s", sy_s);
    syn->add_option("--position", sy_pos);
    syn->add_option("--width", sy_width);
    syn->add_option("-o,--out", sy_out);
    syn->callback([&] {
        SignalProfile p;
        using K = SignalProfile::Kind;
        if (sy_kind == "exp_linear") p.kind = K::ExpLinear;
        else if (sy_kind == "exp_root") p.kind = K::ExpRoot;
        else if (sy_kind == "exp_log_power") p.kind = K::ExpLogPower;
        else if (sy_kind == "poly") p.kind = K::PolyDecay;
        else if (sy_kind == "step") p.kind = K::Step;
        else if (sy_kind == "kink") p.kind = K::Kink;
        else if (sy_kind == "gaussian") p.kind = K::Gaussian;
        else throw CLI::ValidationError("unknown profile kind " + sy_kind);
        p.c = sy_c;
        p.t = sy_t;
        p.kappa = sy_kappa;
        p.q = sy_q;
        p.s = sy_s;
        p.position = sy_pos;
        p.width = sy_width;
        SynthesisResult res =
            synthesize(p, grid_from_flags(sy_dim, sy_n, sy_lo, sy_hi));
        save_field(res.field, sy_out);
        json j = base_report("synthesis", seed);
        j["profile"] = sy_kind;
        j["out"] = sy_out;
        j["underflow_warning"] = res.underflow_warning;
        emit(j);
    });

    // ---- io ----
    auto* io = app.add_subcommand("io", "field file utilities");
    auto* io_conv = io->add_subcommand("convert", "binary <-> CSV (1-D)");
    std::string ioc_in, ioc_out;
    io_conv->add_option("--in", ioc_in)->required();
    io_conv->add_option("--out", ioc_out)->required();
    io_conv->callback([&] {
        auto ends_with = [](const std::string& s, const std::string& suf) {
            return s.size() >= suf.size() &&
                   s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
        };
        if (ends_with(ioc_in, ".csv"))
            throw CLI::ValidationError("CSV input needs a grid; load binary instead");
        SampledField f = load_field(ioc_in);
        if (ends_with(ioc_out, ".csv"))
            save_field_csv(f, ioc_out);
        else
            save_field(f, ioc_out);
        json j = base_report("io_convert", seed);
        j["in"] = ioc_in;
        j["out"] = ioc_out;
        emit(j);
    });

    // Let the global flags (--seed, --tol, --jobs) appear after any
    // subcommand by enabling fallthrough on the whole command tree.
    std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* a) {
        a->fallthrough();
        for (CLI::App* s : a->get_subcommands([](const CLI::App*) { return true; }))
            enable_fallthrough(s);
    };
    enable_fallthrough(&app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
