/*
 * mkit -- command-line front door to the engine.
 *
 * Subcommands: weights, milnor, decompose, normalize, classify,
 * flux-check, verify. Inputs and reports are JSON with rationals as
 * strings; reports are byte-stable across runs and every report can be
 * fed back to `mkit verify`.
 *
 * Exit codes: 0 success, 2 malformed input, 3 precondition or
 * genericity failure, 4 verification failure (certificate mismatch or
 * residual above tolerance).
 */
#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include <martinet/martinet.hpp>

using namespace martinet;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitVerification = 4;

struct verification_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw input_error("bad JSON in '" + path + "': " + e.what());
    }
}

void emit(const Json& report) { std::cout << report.dump(2) << "\n"; }

std::pair<Rational, Rational> parse_weight_pair(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos)
        throw input_error("--weights expects m1,m2 (e.g. 1/2,1/3)");
    return {parse_rational(s.substr(0, comma)),
            parse_rational(s.substr(comma + 1))};
}

std::vector<double> parse_grid_spec(const std::string& s) {
    double a = 0, b = 0;
    int n = 0;
    char c1 = 0, c2 = 0;
    std::istringstream is(s);
    if (!(is >> a >> c1 >> b >> c2 >> n) || c1 != ':' || c2 != ':')
        throw input_error("--grid expects a:b:n (e.g. 0.25:1:4)");
    return parse_grid(a, b, n);
}

WeightSystem resolve_weights(const Poly& f, const std::string& override_spec) {
    if (override_spec.empty()) return detect_weights(f);
    auto [m1, m2] = parse_weight_pair(override_spec);
    return WeightSystem(m1, m2);
}

// ---- report builders (verify re-runs these and compares) ----

Json report_weights(const Poly& f) {
    Json out;
    out["command"] = "weights";
    out["weights"] = to_json(detect_weights(f));
    out["input"] = Json{{"f", to_json(f)}};
    return out;
}

Json report_milnor(const Poly& f, const std::string& wspec, long cap) {
    BoundaryGerm germ = milnor_boundary(f, resolve_weights(f, wspec), cap);
    Json out;
    out["command"] = "milnor";
    out["mu"] = germ.mu;
    out["mu1"] = germ.mu1;
    out["mu0"] = germ.mu0;
    out["basis"] = basis_to_json(germ.basis);
    out["engine"] = engine_block(germ);
    out["input"] = Json{{"f", to_json(f)}};
    out["options"] = Json{{"weights", wspec}, {"cap", cap}};
    return out;
}

Json report_decompose(const Poly& f, const TwoForm& omega,
                      const std::string& wspec, long order, long cap) {
    BoundaryGerm germ = milnor_boundary(f, resolve_weights(f, wspec), cap);
    DecompositionResult dec = decompose(omega, germ, order);
    Json out;
    out["command"] = "decompose";
    Json dj = to_json(dec);
    out.update(dj);
    out["engine"] = engine_block(germ);
    out["input"] = Json{{"f", to_json(f)}, {"omega", to_json(omega)}};
    out["options"] = Json{{"weights", wspec}, {"order", order}, {"cap", cap}};
    return out;
}

Json report_normalize(const Poly& f, const TwoForm& omega, long order,
                      long cap) {
    NormalizePairResult np =
        normalize_pair(omega, f, cap, static_cast<size_t>(order));
    Json out;
    out["command"] = "normalize";
    out.update(to_json(np));
    out["engine"] = engine_block(np.germ);
    out["input"] = Json{{"f", to_json(f)}, {"omega", to_json(omega)}};
    out["options"] = Json{{"order", order}, {"cap", cap}};
    return out;
}

Json report_classify(const OneForm& alpha, const Poly& f, long order,
                     long cap) {
    ClassificationReport rep =
        classify(LagrangianGerm{alpha, f}, cap, static_cast<size_t>(order));
    Json out;
    out["command"] = "classify";
    out.update(to_json(rep));
    out["input"] = Json{{"alpha", to_json(alpha)}, {"f", to_json(f)}};
    out["options"] = Json{{"order", order}, {"cap", cap}};
    return out;
}

Json report_flux(const Series& c, const std::vector<double>& grid, int nodes,
                 double fd_step, double tol, const std::string& grid_spec) {
    auto samples = flux_samples(c, grid, fd_step, nodes);
    Json out;
    out["command"] = "flux-check";
    out.update(flux_report(samples));
    double series_gap = 0;
    for (const auto& s : samples) {
        double vs = flux_V_series(s.t, c);
        series_gap = std::max(series_gap,
                              std::abs(s.V - vs) / std::max(1.0, std::abs(vs)));
    }
    out["series_vs_quadrature"] = series_gap;
    out["tol"] = tol;
    out["pass"] = out["max_residual"].get<double>() <= tol && series_gap <= tol;
    out["input"] = Json{{"c", to_json(c)}};
    out["options"] = Json{{"grid", grid_spec},
                          {"nodes", nodes},
                          {"fd_step", fd_step},
                          {"tol", tol}};
    return out;
}

int run_verify(const std::string& path) {
    Json saved = read_json_file(path);
    if (!saved.contains("command") || !saved.contains("input"))
        throw input_error("not a mkit report");
    std::string cmd = saved["command"].get<std::string>();
    const Json& input = saved["input"];
    Json rebuilt;

    if (cmd == "weights") {
        rebuilt = report_weights(poly_from_json(input.at("f")));
    } else if (cmd == "milnor") {
        rebuilt = report_milnor(poly_from_json(input.at("f")),
                                saved["options"].at("weights").get<std::string>(),
                                saved["options"].at("cap").get<long>());
    } else if (cmd == "decompose") {
        Poly f = poly_from_json(input.at("f"));
        TwoForm omega = twoform_from_json(input.at("omega"));
        std::string wspec = saved["options"].at("weights").get<std::string>();
        long cap = saved["options"].at("cap").get<long>();
        rebuilt = report_decompose(f, omega, wspec,
                                   saved["options"].at("order").get<long>(), cap);
        // Independently re-check the exact certificate from the saved data.
        BoundaryGerm germ = milnor_boundary(f, resolve_weights(f, wspec), cap);
        DecompositionResult dec;
        dec.germ = germ;
        for (const auto& cj : saved.at("c")) dec.c.push_back(series_from_json(cj));
        if (static_cast<long>(dec.c.size()) != germ.mu)
            throw verification_failure("saved c has wrong arity");
        dec.xi = poly_from_json(saved.at("xi"));
        dec.residual = saved.at("residual").is_null()
                           ? TwoForm{}
                           : TwoForm{poly_from_json(saved.at("residual"))};
        dec.iterations = saved.at("iterations").get<long>();
        if (!verify_certificate(dec, omega))
            throw verification_failure("saved certificate identity fails");
    } else if (cmd == "normalize") {
        rebuilt = report_normalize(poly_from_json(input.at("f")),
                                   twoform_from_json(input.at("omega")),
                                   saved["options"].at("order").get<long>(),
                                   saved["options"].at("cap").get<long>());
    } else if (cmd == "classify") {
        rebuilt = report_classify(oneform_from_json(input.at("alpha")),
                                  poly_from_json(input.at("f")),
                                  saved["options"].at("order").get<long>(),
                                  saved["options"].at("cap").get<long>());
    } else if (cmd == "flux-check") {
        const Json& opt = saved["options"];
        std::string grid_spec = opt.at("grid").get<std::string>();
        rebuilt = report_flux(series_from_json(input.at("c")),
                              parse_grid_spec(grid_spec),
                              opt.at("nodes").get<int>(),
                              opt.at("fd_step").get<double>(),
                              opt.at("tol").get<double>(), grid_spec);
    } else {
        throw input_error("unknown command '" + cmd + "' in report");
    }

    if (rebuilt != saved) throw verification_failure("report does not re-verify");
    Json out;
    out["command"] = "verify";
    out["verified"] = true;
    out["target"] = cmd;
    emit(out);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"mkit: exact invariants and normal forms of Martinet pairs"};
    app.require_subcommand(1);

    std::string f_path, omega_path, alpha_path, c_path, weights_spec;
    std::string grid_spec = "0.1:1:10", verify_path;
    long order = kDefaultMaxOrder, cap = kNoCap;
    int nodes = 64;
    double tol = 1e-6, fd_step = 1e-5;

    auto add_f = [&](CLI::App* cmd) {
        cmd->add_option("-f,--function", f_path, "function germ JSON file")
            ->required();
    };

    CLI::App* cmd_weights = app.add_subcommand("weights", "detect quasihomogeneous weights");
    add_f(cmd_weights);

    CLI::App* cmd_milnor = app.add_subcommand("milnor", "Milnor numbers and basis of the boundary local algebra");
    add_f(cmd_milnor);
    cmd_milnor->add_option("--weights", weights_spec, "override weights m1,m2");
    cmd_milnor->add_option("--cap", cap, "quasidegree level cap");

    CLI::App* cmd_dec = app.add_subcommand("decompose", "decompose a 2-form in the deformation module");
    add_f(cmd_dec);
    cmd_dec->add_option("--omega", omega_path, "2-form JSON file")->required();
    cmd_dec->add_option("--weights", weights_spec, "override weights m1,m2");
    cmd_dec->add_option("--order", order, "series truncation order");
    cmd_dec->add_option("--cap", cap, "quasidegree level cap");

    CLI::App* cmd_norm = app.add_subcommand("normalize", "normalize an A1 Martinet pair and solve the Vey ODE");
    add_f(cmd_norm);
    cmd_norm->add_option("--omega", omega_path, "2-form JSON file")->required();
    cmd_norm->add_option("--order", order, "series truncation order");
    cmd_norm->add_option("--cap", cap, "quasidegree level cap");

    CLI::App* cmd_cls = app.add_subcommand("classify", "classify a singular Lagrangian germ (alpha, f)");
    add_f(cmd_cls);
    cmd_cls->add_option("--alpha", alpha_path, "1-form JSON file")->required();
    cmd_cls->add_option("--order", order, "invariant series order");
    cmd_cls->add_option("--cap", cap, "quasidegree level cap");

    CLI::App* cmd_flux = app.add_subcommand("flux-check", "check t V' = c V0 by quadrature");
    cmd_flux->add_option("--c", c_path, "invariant series JSON file")->required();
    cmd_flux->add_option("--grid", grid_spec, "t grid a:b:n");
    cmd_flux->add_option("--nodes", nodes, "quadrature nodes");
    cmd_flux->add_option("--tol", tol, "residual tolerance");
    cmd_flux->add_option("--fd-step", fd_step, "relative finite-difference step");

    CLI::App* cmd_ver = app.add_subcommand("verify", "re-verify a saved report");
    cmd_ver->add_option("file", verify_path, "report file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitBadInput;
    }

    try {
        if (cmd_weights->parsed()) {
            emit(report_weights(poly_from_json(read_json_file(f_path))));
        } else if (cmd_milnor->parsed()) {
            emit(report_milnor(poly_from_json(read_json_file(f_path)),
                               weights_spec, cap));
        } else if (cmd_dec->parsed()) {
            Json rep = report_decompose(
                poly_from_json(read_json_file(f_path)),
                twoform_from_json(read_json_file(omega_path)), weights_spec,
                order, cap);
            emit(rep);
            if (!rep["residual"].is_null()) {
                std::cerr << "mkit: nonzero residual at order " << order << "\n";
                return kExitVerification;
            }
        } else if (cmd_norm->parsed()) {
            emit(report_normalize(poly_from_json(read_json_file(f_path)),
                                  twoform_from_json(read_json_file(omega_path)),
                                  order == kDefaultMaxOrder ? 8 : order, cap));
        } else if (cmd_cls->parsed()) {
            emit(report_classify(oneform_from_json(read_json_file(alpha_path)),
                                 poly_from_json(read_json_file(f_path)),
                                 order == kDefaultMaxOrder ? 8 : order, cap));
        } else if (cmd_flux->parsed()) {
            Json rep = report_flux(series_from_json(read_json_file(c_path)),
                                   parse_grid_spec(grid_spec), nodes, fd_step,
                                   tol, grid_spec);
            emit(rep);
            if (!rep["pass"].get<bool>()) {
                std::cerr << "mkit: flux residual above tolerance\n";
                return kExitVerification;
            }
        } else if (cmd_ver->parsed()) {
            return run_verify(verify_path);
        }
        return kExitOk;
    } catch (const input_error& e) {
        std::cerr << "mkit: input error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const precondition_error& e) {
        std::cerr << "mkit: precondition failed: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const verification_failure& e) {
        std::cerr << "mkit: verification failed: " << e.what() << "\n";
        return kExitVerification;
    } catch (const invariant_violation& e) {
        std::cerr << "mkit: invariant violation: " << e.what() << "\n";
        return kExitVerification;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "mkit: input error: " << e.what() << "\n";
        return kExitBadInput;
    }
}
