// Command-line front end for the g2ell library.
//
// Exit codes: 0 success, 1 identity failure, 2 invalid input, 3 numerical failure.

#include "g2ell/g2ell.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

using namespace g2ell;
using json = nlohmann::ordered_json;

namespace {

struct RunConfig {
    std::string alpha = "2", beta = "3", e1, e2;
    double tol = 1e-13;
    int samples = 20;
    std::uint64_t seed = 42;
    std::string output;
    std::string suite = "all";
    double perturb_lambda4 = 0.0;
};

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// "re,im", "re" or "[re,im,...]" into a list of doubles
std::vector<double> parse_numbers(std::string s)
{
    for (char& c : s)
        if (c == '[' || c == ']' || c == '(' || c == ')') c = ' ';
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::istringstream is(item);
        is.imbue(std::locale::classic());
        double v = 0.0;
        if (!(is >> v)) throw usage_error("cannot parse number '" + item + "'");
        std::string rest;
        if (is >> rest) throw usage_error("cannot parse number '" + item + "'");
        out.push_back(v);
    }
    return out;
}

cplx parse_complex(const std::string& s)
{
    const auto v = parse_numbers(s);
    if (v.size() == 1) return {v[0], 0.0};
    if (v.size() == 2) return {v[0], v[1]};
    throw usage_error("expected a complex number \"re,im\", got '" + s + "'");
}

Vec2 parse_vec2(const std::string& s)
{
    const auto v = parse_numbers(s);
    if (v.size() != 4) throw usage_error("expected [re,im,re,im], got '" + s + "'");
    return vec2({v[0], v[1]}, {v[2], v[3]});
}

json cj(cplx z) { return json::array({z.real() + 0.0, z.imag() + 0.0}); } // + 0.0 turns -0 into 0

json mat_json(const Mat2& m)
{
    json a = json::array();
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) a.push_back(cj(m(r, c)));
    return a;
}

CurveV make_curve(const RunConfig& cfg)
{
    if (!cfg.e1.empty() || !cfg.e2.empty()) {
        if (cfg.e1.empty() || cfg.e2.empty()) throw usage_error("--e1 and --e2 must be given together");
        const auto [a, b] = alpha_beta_from_e(parse_complex(cfg.e1), parse_complex(cfg.e2));
        return curve_v_from_alpha_beta(a, b);
    }
    return curve_v_from_alpha_beta(parse_complex(cfg.alpha), parse_complex(cfg.beta));
}

Tolerance make_tol(const RunConfig& cfg)
{
    Tolerance t;
    t.abs_tol = cfg.tol;
    t.rel_tol = cfg.tol;
    t.validate();
    return t;
}

void check_samples(const RunConfig& cfg)
{
    if (cfg.samples < 1) throw usage_error("--samples must be at least 1");
}

void emit(const RunConfig& cfg, const std::string& text)
{
    if (cfg.output.empty() || cfg.output == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(cfg.output, std::ios::binary);
    if (!f) throw usage_error("cannot open output file '" + cfg.output + "'");
    f << text;
}

std::string fmt(double x)
{
    std::ostringstream o;
    o.imbue(std::locale::classic());
    o << std::setprecision(17) << x;
    return o.str();
}

// RFC 4180 field quoting
std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

std::string csv_row(const std::vector<std::string>& fields)
{
    std::string r;
    for (std::size_t i = 0; i < fields.size(); ++i) r += (i ? "," : "") + csv_field(fields[i]);
    return r + "\r\n";
}

void push_complex(std::vector<std::string>& row, cplx z)
{
    row.push_back(fmt(z.real()));
    row.push_back(fmt(z.imag()));
}

void push_header(std::vector<std::string>& row, const std::string& name)
{
    row.push_back(name + "_re");
    row.push_back(name + "_im");
}

json point_json(const AffinePoint& P)
{
    if (P.infinite) return "infinity";
    return json{{"x", cj(P.x)}, {"y", cj(P.y)}};
}

json curve_json(const CurveV& V)
{
    return json{{"alpha", cj(V.alpha)}, {"beta", cj(V.beta)}};
}

// ---------------------------------------------------------------------------

int cmd_curve_info(const RunConfig& cfg)
{
    const CurveV V = make_curve(cfg);
    const auto [e1, e2] = e_from_alpha_beta(V.alpha, V.beta);
    const auto [L1, L2] = elliptic_targets(V);
    const auto k = IsogenyCoefficients::from(V);
    json j = curve_json(V);
    j["lambda2"] = cj(V.lambda2);
    j["lambda4"] = cj(V.lambda4);
    j["lambda6"] = cj(V.lambda6);
    j["lambda8"] = cj(V.lambda8);
    j["lambda10"] = cj(V.lambda10);
    json bp = json::array();
    for (cplx e : V.branch_points()) bp.push_back(cj(e));
    j["branch_points"] = bp;
    j["e1"] = cj(e1);
    j["e2"] = cj(e2);
    j["E1_roots"] = json::array({cj(0.0), cj(L1.b), cj(L1.c)});
    j["E2_roots"] = json::array({cj(0.0), cj(L2.b), cj(L2.c)});
    j["kappa1"] = cj(kappa(V, 1));
    j["kappa2"] = cj(kappa(V, 2));
    j["O1"] = point_json(base_point_O(V, 1));
    j["O2"] = point_json(base_point_O(V, 2));
    j["isogeny"] = json{{"a1", cj(k.a1)}, {"b1", cj(k.b1)}, {"c1", cj(k.c1)}, {"d1", cj(k.d1)},
                        {"a2", cj(k.a2)}, {"b2", cj(k.b2)}, {"c2", cj(k.c2)}, {"d2", cj(k.d2)}};
    emit(cfg, j.dump(2) + "\n");
    return 0;
}

int cmd_periods(const RunConfig& cfg)
{
    const CurveV V = make_curve(cfg);
    const PeriodsG2 P = periods_g2(V, make_tol(cfg));
    json j = curve_json(V);
    j["omega_prime"] = mat_json(P.omega_p);
    j["omega_double_prime"] = mat_json(P.omega_pp);
    j["eta_prime"] = mat_json(P.eta_p);
    j["eta_double_prime"] = mat_json(P.eta_pp);
    j["tau"] = mat_json(P.tau);
    j["legendre_residual"] = P.legendre_residual;
    if (const auto h = humbert_delta4(P.tau)) {
        j["humbert"] = json{{"h", json(std::vector<long long>(h->h.begin(), h->h.end()))},
                            {"delta", h->delta},
                            {"residual", h->residual}};
    }
    emit(cfg, j.dump(2) + "\n");
    return 0;
}

struct EvalArgs {
    std::string jk = "11", u, z;
    int i = 1, j = 1;
};

int cmd_eval(const RunConfig& cfg, const std::string& what, const EvalArgs& a)
{
    const CurveV V = make_curve(cfg);
    const ReductionContext C(V, make_tol(cfg));
    json out;
    auto need = [](const std::string& s, const char* flag) {
        if (s.empty()) throw usage_error(std::string("missing ") + flag);
        return s;
    };
    if (what == "wp") {
        static const std::vector<std::string> ok{"11", "13", "33", "111", "113", "133", "333"};
        if (std::find(ok.begin(), ok.end(), a.jk) == ok.end()) throw usage_error("--jk must be one of 11 13 33 111 113 133 333");
        const WpValues w = C.wp(parse_vec2(need(a.u, "--u")));
        const int d = std::stoi(a.jk);
        out["value"] = cj(a.jk.size() == 2 ? w.get(d / 10, d % 10) : w.get(d / 100, (d / 10) % 10, d % 10));
    }
    else if (what == "sigma") {
        out["value"] = cj(C.sigma().sigma(parse_vec2(need(a.u, "--u"))));
    }
    else if (what == "wpE") {
        check_index(a.i);
        const auto [p, dp] = C.E(a.i).sigma->derivs(parse_complex(need(a.z, "--z")));
        out["value"] = cj(p);
        out["derivative"] = cj(dp);
    }
    else if (what == "sn") {
        check_index(a.i);
        const auto s = C.jacobi(a.i).sn_cn_dn(parse_complex(need(a.z, "--z")));
        out["sn"] = cj(s[0]);
        out["cn"] = cj(s[1]);
        out["dn"] = cj(s[2]);
        out["modulus"] = cj(C.jacobi(a.i).modulus());
    }
    else if (what == "al") {
        check_index(a.i);
        out["value"] = cj(C.E_tilde(a.i).sigma->al(a.j, parse_complex(need(a.z, "--z"))));
    }
    emit(cfg, out.dump(2) + "\n");
    return 0;
}

int cmd_verify(const RunConfig& cfg)
{
    check_samples(cfg);
    const CurveV V = make_curve(cfg);
    const ReductionContext C(V, make_tol(cfg));
    VerifyConfig vc;
    vc.samples = cfg.samples;
    vc.seed = cfg.seed;
    vc.lambda4_perturbation = cfg.perturb_lambda4;
    const Report rep = run_suite(cfg.suite, C, vc);
    json j = curve_json(V);
    j["suite"] = cfg.suite;
    j["samples"] = cfg.samples;
    j["seed"] = cfg.seed;
    if (cfg.perturb_lambda4 != 0.0) j["lambda4_perturbation"] = cfg.perturb_lambda4;
    json items = json::array();
    for (const auto& c : rep.checks) {
        json e{{"suite", c.suite}, {"name", c.name}, {"samples", c.samples}, {"max_residual", c.max_residual},
               {"threshold", c.threshold}, {"pass", c.pass()}};
        if (c.informational) e["informational"] = true;
        if (!c.note.empty()) e["note"] = c.note;
        items.push_back(e);
    }
    j["identities"] = items;
    j["pass"] = rep.pass();
    emit(cfg, j.dump(2) + "\n");
    return rep.pass() ? 0 : 1;
}

int cmd_kummer(const RunConfig& cfg)
{
    check_samples(cfg);
    const ReductionContext C(make_curve(cfg), make_tol(cfg));
    Sampler R(cfg.seed);
    std::vector<std::string> h;
    for (auto n : {"u1", "u3", "p11", "p13", "p33", "Z1", "Z2", "Z3"}) push_header(h, n);
    std::string out = csv_row(h);
    for (int n = 0; n < cfg.samples; ++n) {
        const Vec2 u = R.jacobian_point(C.sigma());
        const WpValues w = C.wp(u);
        const auto Z = C.kummer_Z(w);
        std::vector<std::string> row;
        for (cplx z : {u(0), u(1), w.p11, w.p13, w.p33, Z[0], Z[1], Z[2]}) push_complex(row, z);
        out += csv_row(row);
    }
    emit(cfg, out);
    return 0;
}

int cmd_kdv(const RunConfig& cfg)
{
    check_samples(cfg);
    const ReductionContext C(make_curve(cfg), make_tol(cfg));
    // grid u = u0 + (s, t) h_grid around a random base point
    Sampler R(cfg.seed);
    Vec2 u0;
    do u0 = R.jacobian_point(C.sigma());
    while (C.sigma().divisor_distance(u0) < 1e-2);
    const double step = 0.05;
    std::vector<std::string> h;
    push_header(h, "u1");
    push_header(h, "u3");
    for (auto n : {"r1_rel", "r2_rel", "r3_rel"}) h.push_back(n);
    std::string out = csv_row(h);
    int side = 1;
    while (side * side < cfg.samples) ++side;
    int count = 0;
    for (int a = 0; a < side && count < cfg.samples; ++a)
        for (int b = 0; b < side && count < cfg.samples; ++b, ++count) {
            const Vec2 u = u0 + vec2(step * a, step * b);
            std::vector<std::string> row;
            push_complex(row, u(0));
            push_complex(row, u(1));
            try {
                const auto k = C.kdv_residuals(u);
                for (double r : {k.rel1(), k.rel2(), k.rel3()}) row.push_back(fmt(r));
            }
            catch (const error& e) {
                if (e.kind() != error_kind::on_theta_divisor) throw;
                for (int r = 0; r < 3; ++r) row.push_back("nan");
            }
            out += csv_row(row);
        }
    emit(cfg, out);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Genus-2 curves with split Jacobians: periods, sigma functions and reduction identities"};
    app.require_subcommand(1);
    RunConfig cfg;
    auto common = [&](CLI::App* s) {
        s->add_option("--alpha", cfg.alpha, "alpha as \"re,im\"")->capture_default_str();
        s->add_option("--beta", cfg.beta, "beta as \"re,im\"")->capture_default_str();
        s->add_option("--e1", cfg.e1, "alternative parameter e1 as \"re,im\"");
        s->add_option("--e2", cfg.e2, "alternative parameter e2 as \"re,im\"");
        s->add_option("--tol", cfg.tol, "quadrature tolerance")->capture_default_str();
        s->add_option("-o,--output", cfg.output, "output file (default stdout)");
    };
    auto sampling = [&](CLI::App* s) {
        s->add_option("--samples", cfg.samples, "number of random samples")->capture_default_str();
        s->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    };

    auto* curve = app.add_subcommand("curve", "curve constructions");
    curve->require_subcommand(1);
    auto* info = curve->add_subcommand("info", "derived constants of V as JSON");
    common(info);

    auto* periods = app.add_subcommand("periods", "period matrices and Humbert relation as JSON");
    common(periods);

    auto* eval = app.add_subcommand("eval", "evaluate a single function");
    eval->require_subcommand(1);
    EvalArgs ea;
    std::string eval_what;
    for (const char* w : {"wp", "wpE", "sn", "al", "sigma"}) {
        auto* e = eval->add_subcommand(w, std::string("evaluate ") + w);
        common(e);
        if (std::string(w) == "wp") e->add_option("--jk", ea.jk, "index 11|13|33|111|113|133|333")->capture_default_str();
        if (std::string(w) == "wp" || std::string(w) == "sigma") e->add_option("--u", ea.u, "point [re,im,re,im]");
        else {
            e->add_option("--z", ea.z, "point \"re,im\"");
            e->add_option("--i", ea.i, "factor index 1 or 2")->capture_default_str();
        }
        if (std::string(w) == "al") e->add_option("--j", ea.j, "al index 1, 2 or 3")->capture_default_str();
        e->callback([&eval_what, w] { eval_what = w; });
    }

    auto* verify = app.add_subcommand("verify", "run identity suites, JSON report");
    common(verify);
    sampling(verify);
    std::vector<std::string> suites = suite_names();
    suites.insert(suites.begin(), "all");
    verify->add_option("--suite", cfg.suite, "suite name")->check(CLI::IsMember(suites))->capture_default_str();
    verify->add_option("--perturb-lambda4", cfg.perturb_lambda4, "add this to lambda4 inside the identities");

    auto* kummer = app.add_subcommand("kummer", "CSV of p_jk and Kummer coordinates at random points");
    common(kummer);
    sampling(kummer);
    auto* kdv = app.add_subcommand("kdv", "CSV of KdV residuals over a grid");
    common(kdv);
    sampling(kdv);

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (info->parsed()) return cmd_curve_info(cfg);
        if (periods->parsed()) return cmd_periods(cfg);
        if (eval->parsed()) return cmd_eval(cfg, eval_what, ea);
        if (verify->parsed()) return cmd_verify(cfg);
        if (kummer->parsed()) return cmd_kummer(cfg);
        if (kdv->parsed()) return cmd_kdv(cfg);
    }
    catch (const usage_error& e) {
        std::cerr << "InvalidParameters: " << e.what() << "\n";
        return 2;
    }
    catch (const error& e) {
        std::cerr << e.what() << "\n";
        const bool input = e.kind() == error_kind::invalid_parameters ||
                           e.kind() == error_kind::near_degenerate_branch_points;
        return input ? 2 : 3;
    }
    catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
