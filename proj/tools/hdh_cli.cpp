// Command-line front end: dataset ingestion, complexity estimation, bound
// assembly, subset-sum solving, transfer checks, training, sweeps and the
// verification batteries.

#include <ctime>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "hdh/discrepancy.hpp"
#include "hdh/rademacher.hpp"
#include "hdh/train.hpp"
#include "hdh/transfer.hpp"
#include "hdh/verify.hpp"

namespace {

struct GlobalOpts {
    std::uint64_t seed = 20240813;
    int threads = 1;
    std::string out;
    std::string config;
    bool no_timestamp = false;
};

void apply_config_file(GlobalOpts& g, int argc, char** argv) {
    // config precedence: CLI flags > config file > defaults; the config file
    // is applied before CLI11 parses, so flags override it.
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--config" && i + 1 < argc) g.config = argv[i + 1];
        else if (a.rfind("--config=", 0) == 0) g.config = a.substr(9);
    }
    if (g.config.empty()) return;
    std::ifstream in(g.config);
    if (!in) throw hdh::validation_error("cannot open config file: " + g.config);
    nlohmann::json j;
    in >> j;
    for (auto& [key, val] : j.items()) {
        if (key == "seed") g.seed = val.get<std::uint64_t>();
        else if (key == "threads") g.threads = val.get<int>();
        else if (key == "out") g.out = val.get<std::string>();
        else if (key == "no_timestamp") g.no_timestamp = val.get<bool>();
        else throw hdh::validation_error("unknown config key: " + key);
    }
}

void emit_report(const GlobalOpts& g, nlohmann::json report) {
    if (!g.no_timestamp) {
        std::time_t now = std::time(nullptr);
        char buf[32];
        std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        report["timestamp"] = buf;
    }
    std::string text = report.dump(2) + "\n";
    if (g.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(g.out, std::ios::binary);
        if (!out) throw hdh::validation_error("cannot write output file: " + g.out);
        out << text;
    }
}

hdh::NormOrder parse_p(const std::string& s) {
    if (s == "inf" || s == "Inf" || s == "INF") return hdh::NormOrder::inf();
    return hdh::NormOrder(std::stod(s));
}

std::vector<double> parse_grid(const std::string& csv) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos < csv.size()) {
        std::size_t next = csv.find(',', pos);
        if (next == std::string::npos) next = csv.size();
        std::string tok = csv.substr(pos, next - pos);
        if (!tok.empty()) {
            try {
                out.push_back(std::stod(tok));
            } catch (const std::exception&) {
                throw hdh::validation_error("cannot parse grid value '" + tok + "'");
            }
        }
        pos = next + 1;
    }
    return out;
}

std::string grid_to_string(const std::vector<double>& grid) {
    std::string s;
    char buf[64];
    for (double v : grid) {
        std::snprintf(buf, sizeof(buf), "%.10g", v);
        if (!s.empty()) s += ",";
        s += buf;
    }
    return s;
}

hdh::ModelKind parse_kind(const std::string& s) {
    if (s == "linear-classification") return hdh::ModelKind::kLinearClassification;
    if (s == "linear-regression") return hdh::ModelKind::kLinearRegression;
    if (s == "two-layer-relu") return hdh::ModelKind::kTwoLayerRelu;
    throw hdh::validation_error("unknown hypothesis class: " + s);
}

nlohmann::json bracket_json(const hdh::ComplexityBracket& b, const std::string& quantity,
                            const nlohmann::json& params) {
    if (b.tight()) return b.lower.to_json(quantity, params);
    return nlohmann::json{{"lower", b.lower.to_json(quantity + "-lower", params)},
                          {"upper", b.upper.to_json(quantity + "-upper", params)}};
}

int cmd_complexity(const GlobalOpts& g, const std::string& data_path, const std::string& kind_str,
                   const std::string& p_str, double W, double A, int m, double eps_val,
                   const std::string& method, long samples, const std::string& constant_mode,
                   double c_override) {
    hdh::DesignMatrix X = hdh::load_design_csv(data_path);
    hdh::HypothesisClass H;
    H.kind = parse_kind(kind_str);
    H.p = parse_p(p_str);
    H.W = W;
    H.A = A;
    H.m = m;
    H.validate();
    hdh::AdversaryBudget eps(eps_val);
    bool exact = method == "exact";
    if (exact && X.n() > 12 && H.kind != hdh::ModelKind::kTwoLayerRelu)
        throw hdh::validation_error("exact enumeration needs n <= 12; pass --method mc");
    hdh::ConstantMode cmode = constant_mode == "simplified" ? hdh::ConstantMode::kSimplified
                                                            : hdh::ConstantMode::kExplicit;

    nlohmann::json params{{"n", X.n()},   {"d", X.d()}, {"p", H.p.is_inf() ? -1.0 : H.p.p},
                          {"W", H.W},     {"eps", eps.epsilon}, {"seed", g.seed}};
    nlohmann::json report;
    report["dataset"] = data_path;
    nlohmann::json estimates = nlohmann::json::array();

    if (H.kind == hdh::ModelKind::kLinearClassification) {
        auto std_c = hdh::std_complexity_classification(X, H, exact, samples, g.seed);
        auto bern = hdh::std_upper_bernstein_classification(X, H);
        auto gap = hdh::adv_upper_classification(X, H, eps, cmode, c_override);
        auto lower = hdh::adv_lower_gap_classification(X, H, exact && X.n() <= 12, samples, g.seed);
        estimates.push_back(bracket_json(std_c, "std-complexity", params));
        estimates.push_back(bern.to_json("std-bernstein-upper", params));
        estimates.push_back(gap.to_json("adv-gap-upper", params));
        estimates.push_back(lower.raw.to_json("adv-gap-lower-raw", params));
        report["adv_gap_lower_clamped"] = lower.clamped;
        report["adv_upper_total"] = std_c.upper.value + gap.value;
        report["dominance"] = {{"bernstein_geq_std", bern.value >= std_c.upper.value - 1e-12},
                               {"adv_upper_geq_std", eps.epsilon == 0.0
                                                         ? gap.value == 0.0
                                                         : gap.value >= 0.0}};
    } else if (H.kind == hdh::ModelKind::kLinearRegression) {
        auto std_c = hdh::std_complexity_regression(X, H, exact, samples, g.seed);
        auto bern = hdh::std_upper_bernstein_regression(X, H);
        auto gap = hdh::adv_upper_regression(X, H, eps, cmode, c_override);
        estimates.push_back(bracket_json(std_c, "std-complexity", params));
        estimates.push_back(bern.to_json("std-bernstein-upper", params));
        estimates.push_back(gap.to_json("adv-gap-upper", params));
        report["adv_upper_total"] = std_c.upper.value + gap.value;
        if (H.p.p == 2.0 && X.d() <= 3 && X.n() <= 12) {
            auto adv = hdh::adv_complexity_regression_exact_small(X, H, eps);
            nlohmann::json grid_params = params;
            grid_params["sphere_grid"] = X.d() == 3 ? 2000 : 720;
            grid_params["grid_rel_tol"] = 1e-3;
            estimates.push_back(adv.to_json("adv-complexity-grid", grid_params));
            report["dominance"] = {
                {"bernstein_geq_std", bern.value >= std_c.upper.value - 1e-12},
                {"adv_geq_std", adv.value >= std_c.lower.value - 1e-3 * (1.0 + std_c.lower.value)},
                {"adv_leq_std_plus_gap", adv.value <= std_c.upper.value + gap.value + 1e-12}};
        } else {
            report["dominance"] = {{"bernstein_geq_std", bern.value >= std_c.upper.value - 1e-12}};
        }
    } else {
        params["A"] = H.A;
        params["m"] = H.m;
        auto nn = hdh::nn_adv_upper(X, H, eps, H.p.dual());
        estimates.push_back(nn.to_json("nn-adv-upper", params));
    }
    report["estimates"] = estimates;
    emit_report(g, report);
    return 0;
}

int cmd_bound(const GlobalOpts& g, const std::string& form, hdh::BoundParts parts,
              const std::string& src_csv, const std::string& tgt_csv, double W, double eps_val) {
    if (!src_csv.empty() && !tgt_csv.empty()) {
        hdh::DomainPair pair;
        pair.source = hdh::load_design_csv(src_csv);
        pair.target = hdh::load_design_csv(tgt_csv);
        pair.validate();
        hdh::HypothesisClass H{hdh::ModelKind::kLinearRegression, hdh::NormOrder(2.0), W};
        parts.discrepancy = hdh::hdh_discrepancy_regression(pair.source, pair.target, H);
        hdh::AdversaryBudget eps(eps_val);
        auto domain_complexity = [&](const hdh::DesignMatrix& X) {
            double c = X.n() <= 12 ? hdh::std_complexity_regression(X, H).upper.value
                                   : hdh::std_complexity_regression(X, H, false, 10000, g.seed)
                                         .upper.value;
            if (eps_val > 0.0) c += hdh::adv_upper_regression(X, H, eps).value;
            return c;
        };
        parts.complexity_source = domain_complexity(pair.source);
        parts.complexity_target = domain_complexity(pair.target);
        parts.n_source = pair.source.n();
        parts.n_target = pair.target.n();
    }

    hdh::BoundReport rep;
    if (form == "standard") rep = hdh::assemble_standard_bound(parts);
    else if (form == "adversarial") rep = hdh::assemble_adversarial_bound(parts);
    else if (form == "compounded-4")
        rep = hdh::assemble_compounded_bound(parts, hdh::CompoundedDiscCoef::kFour);
    else if (form == "compounded-3")
        rep = hdh::assemble_compounded_bound(parts, hdh::CompoundedDiscCoef::kThree);
    else throw hdh::validation_error("unknown bound form: " + form);

    auto line = [](const char* name, double v) {
        std::fprintf(stdout, "  %-22s %.10g\n", name, v);
    };
    std::fprintf(stdout, "bound components (%s):\n", form.c_str());
    line("source_risk", rep.source_risk);
    line("discrepancy", rep.discrepancy);
    line("lambda_terms", rep.lambda_terms);
    line("complexity_source", rep.complexity_source);
    line("complexity_target", rep.complexity_target);
    line("concentration_source", rep.concentration_source);
    line("concentration_target", rep.concentration_target);
    line("total", rep.total);

    nlohmann::json report = rep.to_json();
    report["form"] = form;
    emit_report(g, report);
    return 0;
}

int cmd_subset_sum(const GlobalOpts& g, const std::string& instance_path,
                   const std::string& solver, bool renormalize) {
    std::ifstream in(instance_path);
    if (!in) throw hdh::validation_error("cannot open instance file: " + instance_path);
    nlohmann::json j;
    in >> j;
    auto inst = hdh::SubsetSumInstance::from_json(j, renormalize);

    nlohmann::json report{{"instance", inst.to_json()}};
    auto put = [&](const char* name, const hdh::SubsetSumSolution& s) {
        report[name] = {{"optimum", s.optimum},
                        {"witness", std::vector<int>(s.witness.begin(), s.witness.end())}};
    };
    if (solver == "brute" || solver == "both") put("bruteforce", hdh::vstar_bruteforce(inst));
    if (solver == "mitm" || solver == "both") put("meet_in_middle", hdh::vstar_meet_in_middle(inst));
    if (solver == "both") {
        bool agree = report["bruteforce"] == report["meet_in_middle"];
        report["solvers_agree"] = agree;
        emit_report(g, report);
        return agree ? 0 : 1;
    }
    emit_report(g, report);
    return 0;
}

int cmd_transfer_check(const GlobalOpts& g, const std::string& instance_path, int random_count) {
    nlohmann::json report;
    if (!instance_path.empty()) {
        std::ifstream in(instance_path);
        if (!in) throw hdh::validation_error("cannot open instance file: " + instance_path);
        nlohmann::json j;
        in >> j;
        hdh::DiscreteDomainPair pair;
        pair.support = j.at("support").get<std::vector<hdh::Vec>>();
        pair.mass_T = j.at("mass_T").get<hdh::Vec>();
        pair.mass_Tprime = j.at("mass_Tprime").get<hdh::Vec>();
        pair.labels = j.at("labels").get<std::vector<int>>();
        hdh::Vec w = j.at("w").get<hdh::Vec>();
        hdh::AdversaryBudget eps(j.at("eps").get<double>());
        auto cmp = hdh::erm_vs_robust_comparison(pair, w, eps);
        report = {{"lhs", cmp.robust.lhs},
                  {"robust_risk", cmp.robust.robust_risk},
                  {"vstar", cmp.robust.vstar},
                  {"rhs", cmp.robust.rhs},
                  {"holds", cmp.robust.holds},
                  {"vstar_erm", cmp.erm.vstar},
                  {"vstar_ordered", cmp.vstar_ordered},
                  {"lambda_eps_size", cmp.robust.lambda_set.size()}};
        emit_report(g, report);
        return cmp.robust.holds ? 0 : 1;
    }
    if (random_count <= 0)
        throw hdh::validation_error("pass --instance FILE or --random N");
    auto results = hdh::run_verify(g.seed, {"risk-transfer"}, "", g.threads);
    report = {{"battery", results.front().name},
              {"passed", results.front().passed},
              {"detail", results.front().detail}};
    emit_report(g, report);
    return results.front().passed ? 0 : 1;
}

int cmd_train(const GlobalOpts& g, const std::string& data_path, const std::string& mode_str,
              hdh::TrainConfig cfg, const std::string& model_out) {
    hdh::DesignMatrix data = hdh::load_design_csv(data_path);
    if (!data.labels)
        throw hdh::validation_error("dataset " + data_path +
                                    " has no 'label' column; training requires labels");
    cfg.seed = g.seed;
    hdh::TrainMode mode = mode_str == "adversarial" ? hdh::TrainMode::kAdversarial
                                                    : hdh::TrainMode::kStandard;
    hdh::DesignMatrix train_part, test_part;
    hdh::split_train_test(data, g.seed, train_part, test_part);
    hdh::LinearModel model = hdh::train(train_part, cfg, mode);
    auto acc_train = hdh::evaluate(model, train_part, cfg.eps, cfg);
    auto acc_test = hdh::evaluate(model, test_part, cfg.eps, cfg);

    nlohmann::json report{{"model", model.to_json()},
                          {"train", {{"sa", acc_train.sa}, {"ra", acc_train.ra}, {"ra_pgd", acc_train.ra_pgd}}},
                          {"test", {{"sa", acc_test.sa}, {"ra", acc_test.ra}, {"ra_pgd", acc_test.ra_pgd}}}};
    if (!model_out.empty()) {
        std::ofstream out(model_out, std::ios::binary);
        if (!out) throw hdh::validation_error("cannot write model file: " + model_out);
        out << model.to_json().dump(2) << "\n";
    }
    emit_report(g, report);
    return 0;
}

int cmd_sweep(const GlobalOpts& g, hdh::SyntheticDomainSpec spec, std::vector<double> mu_grid,
              std::vector<double> eps_grid, hdh::TrainConfig cfg) {
    if (mu_grid.empty() || eps_grid.empty())
        throw hdh::validation_error("sweep requires nonempty --mu-grid and --eps-grid");
    spec.seed = g.seed;
    cfg.seed = g.seed;
    auto cells = hdh::l1_sweep_experiment(spec, mu_grid, eps_grid, cfg, g.threads);
    std::string csv = hdh::sweep_to_csv(cells);
    if (g.out.empty()) {
        std::cout << csv;
    } else {
        std::ofstream out(g.out, std::ios::binary);
        if (!out) throw hdh::validation_error("cannot write output file: " + g.out);
        out << csv;
    }
    return 0;
}

int cmd_verify(const GlobalOpts& g, const std::vector<std::string>& only,
               const std::string& golden) {
    auto results = hdh::run_verify(g.seed, only, golden, g.threads);
    bool all_ok = true;
    for (const auto& r : results) {
        std::printf("[%s] %-18s %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(),
                    r.detail.c_str());
        if (!r.passed) {
            all_ok = false;
            std::string path = (g.out.empty() ? std::string("violation-") + r.name + ".json"
                                              : g.out);
            nlohmann::json v = r.violation;
            v["seed"] = g.seed;
            std::ofstream out(path, std::ios::binary);
            out << v.dump(2) << "\n";
            std::fprintf(stderr, "violating instance written to %s\n", path.c_str());
        }
    }
    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    GlobalOpts g;
    try {
        apply_config_file(g, argc, argv);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }

    CLI::App app{"Rademacher complexities, adversarial transfer bounds and the associated "
                 "verification batteries for linear models"};
    app.require_subcommand(1);
    app.add_option("--seed", g.seed, "master seed; all randomness derives from it");
    app.add_option("--threads", g.threads, "worker cap; 1 guarantees bit-reproducible output");
    app.add_option("--out", g.out, "output file (default: stdout)");
    app.add_option("--config", g.config, "JSON config file; CLI flags take precedence")
        ->expected(1);
    app.add_flag("--no-timestamp", g.no_timestamp, "omit the timestamp field from reports");

    // complexity
    auto* complexity = app.add_subcommand("complexity", "estimate Rademacher quantities");
    std::string data_path, kind_str = "linear-classification", p_str = "2", method = "exact";
    std::string constant_mode = "explicit";
    double W = 1.0, A = 1.0, eps_val = 0.0, c_override = -1.0;
    int m = 1;
    long samples = 10000;
    complexity->add_option("--data", data_path, "dataset CSV")->required();
    complexity->add_option("--class", kind_str,
                           "linear-classification | linear-regression | two-layer-relu");
    complexity->add_option("--p", p_str, "norm order (number or 'inf')");
    complexity->add_option("--W", W, "weight radius");
    complexity->add_option("--A", A, "outer l1 radius (ReLU)");
    complexity->add_option("--m", m, "hidden width (ReLU)");
    complexity->add_option("--eps", eps_val, "adversary budget");
    complexity->add_option("--method", method, "exact | mc");
    complexity->add_option("--samples", samples, "Monte Carlo sample count");
    complexity->add_option("--constant-mode", constant_mode, "explicit | simplified");
    complexity->add_option("--c", c_override, "constant for the simplified gap shape");

    // bound
    auto* bound = app.add_subcommand("bound", "assemble a generalization bound");
    std::string form = "standard", src_csv, tgt_csv;
    hdh::BoundParts parts;
    std::vector<double> lambda_in;
    double bW = 1.0, beps = 0.0;
    bound->add_option("--form", form,
                      "standard | adversarial | compounded-4 | compounded-3");
    bound->add_option("--source-risk", parts.source_risk, "source (robust) risk term");
    bound->add_option("--disc", parts.discrepancy, "discrepancy term");
    bound->add_option("--lambda", lambda_in, "lambda components (2 or 3 values)");
    bound->add_option("--complexity-source", parts.complexity_source, "source complexity");
    bound->add_option("--complexity-target", parts.complexity_target, "target complexity");
    bound->add_option("--M", parts.loss_bound, "loss bound M");
    bound->add_option("--confidence", parts.confidence, "confidence level c in (0,1)");
    bound->add_option("--n-source", parts.n_source, "source sample count");
    bound->add_option("--n-target", parts.n_target, "target sample count");
    bound->add_option("--data-source", src_csv, "compute p=2 regression disc/complexities: source CSV");
    bound->add_option("--data-target", tgt_csv, "target CSV");
    bound->add_option("--W", bW, "weight radius for computed components");
    bound->add_option("--eps", beps, "adversary budget for computed components");

    // subset-sum
    auto* subset = app.add_subcommand("subset-sum", "solve a subset-sum instance");
    std::string instance_path, solver = "both";
    bool renormalize = false;
    subset->add_option("--instance", instance_path, "instance JSON")->required();
    subset->add_option("--solver", solver, "brute | mitm | both");
    subset->add_flag("--renormalize", renormalize, "rescale masses onto the simplex before solving");

    // transfer-check
    auto* transfer = app.add_subcommand("transfer-check", "robust-to-standard risk transfer");
    std::string transfer_instance;
    int random_count = 0;
    transfer->add_option("--instance", transfer_instance, "instance JSON");
    transfer->add_option("--random", random_count, "run the seeded random battery");

    // train
    auto* train_cmd = app.add_subcommand("train", "train a linear classifier");
    std::string train_data, train_mode = "standard", model_out, loss_str = "logistic";
    hdh::TrainConfig tcfg;
    train_cmd->add_option("--data", train_data, "labeled dataset CSV")->required();
    train_cmd->add_option("--mode", train_mode, "standard | adversarial");
    train_cmd->add_option("--eps", tcfg.eps, "attack budget");
    train_cmd->add_option("--pgd-steps", tcfg.pgd_steps, "PGD step count");
    train_cmd->add_option("--pgd-step-size", tcfg.pgd_step_size, "PGD step size");
    train_cmd->add_option("--epochs", tcfg.epochs, "training epochs");
    train_cmd->add_option("--lr", tcfg.learning_rate, "learning rate");
    train_cmd->add_option("--mu", tcfg.l1_mu, "l1 regularization strength");
    train_cmd->add_option("--loss", loss_str, "logistic | hinge");
    train_cmd->add_option("--model-out", model_out, "also write the model JSON here");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "l1-regularization transfer sweep");
    hdh::SyntheticDomainSpec spec = hdh::reference_sweep_spec();
    hdh::TrainConfig scfg = hdh::reference_sweep_config();
    std::string mu_grid_str = grid_to_string(hdh::reference_mu_grid());
    std::string eps_grid_str = grid_to_string(hdh::reference_eps_grid());
    sweep->add_option("--n", spec.n_per_domain, "samples per domain");
    sweep->add_option("--d", spec.d, "feature dimension");
    sweep->add_option("--separation", spec.separation, "class mean separation");
    sweep->add_option("--cov", spec.covariance_scale, "covariance scale");
    sweep->add_option("--rotation", spec.rotation, "target rotation (radians)");
    sweep->add_option("--translation", spec.translation, "target translation");
    sweep->add_option("--mu-grid", mu_grid_str, "comma-separated l1 strengths");
    sweep->add_option("--eps-grid", eps_grid_str, "comma-separated attack budgets");
    sweep->add_option("--epochs", scfg.epochs, "training epochs");
    sweep->add_option("--lr", scfg.learning_rate, "learning rate");

    // verify
    auto* verify = app.add_subcommand("verify", "run the verification batteries");
    std::vector<std::string> only;
    std::string golden;
    verify->add_option("--only", only, "restrict to named batteries");
    verify->add_option("--golden", golden, "golden sweep CSV for the byte-exact comparison");

    // global flags remain valid after the subcommand name
    for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*complexity)
            return cmd_complexity(g, data_path, kind_str, p_str, W, A, m, eps_val, method,
                                  samples, constant_mode, c_override);
        if (*bound) {
            parts.lambda_terms = lambda_in;
            if (parts.lambda_terms.empty())
                parts.lambda_terms = form == "standard" ? hdh::Vec{0.0, 0.0}
                                                        : hdh::Vec{0.0, 0.0, 0.0};
            return cmd_bound(g, form, parts, src_csv, tgt_csv, bW, beps);
        }
        if (*subset) return cmd_subset_sum(g, instance_path, solver, renormalize);
        if (*transfer) return cmd_transfer_check(g, transfer_instance, random_count);
        if (*train_cmd) {
            tcfg.loss = loss_str == "hinge" ? hdh::TrainLoss::kHinge : hdh::TrainLoss::kLogistic;
            return cmd_train(g, train_data, train_mode, tcfg, model_out);
        }
        if (*sweep) return cmd_sweep(g, spec, parse_grid(mu_grid_str), parse_grid(eps_grid_str), scfg);
        if (*verify) return cmd_verify(g, only, golden);
    } catch (const hdh::validation_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const hdh::numeric_error& e) {
        std::fprintf(stderr, "numeric failure: %s\n", e.what());
        return 1;
    } catch (const nlohmann::json::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
