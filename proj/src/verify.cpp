#include "hdh/verify.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "hdh/discrepancy.hpp"
#include "hdh/transfer.hpp"

namespace hdh {

SyntheticDomainSpec reference_sweep_spec() {
    SyntheticDomainSpec spec;
    spec.n_per_domain = 1000;
    spec.d = 24;
    spec.separation = 0.5;   // image-like feature scale, so 2/255..8/255 budgets bite
    spec.covariance_scale = 0.15;
    spec.rotation = 0.3;
    spec.translation = 0.04;
    spec.seed = 777;
    return spec;
}

TrainConfig reference_sweep_config() {
    TrainConfig cfg;
    cfg.epochs = 250;
    cfg.learning_rate = 0.5;
    cfg.loss = TrainLoss::kLogistic;
    cfg.seed = 777;
    return cfg;
}

Vec reference_mu_grid() { return {0.0, 1e-2}; }
Vec reference_eps_grid() { return {2.0 / 255.0, 4.0 / 255.0, 8.0 / 255.0}; }

namespace {

Vec random_vec(Rng& rng, std::size_t d, double lo, double hi, double zero_prob = 0.0) {
    Vec v(d);
    for (auto& x : v) {
        x = rng.uniform(lo, hi);
        if (zero_prob > 0.0 && rng.uniform() < zero_prob) x = 0.0;
    }
    return v;
}

DesignMatrix random_design(Rng& rng, std::size_t n, std::size_t d, double lo, double hi) {
    DesignMatrix m;
    m.X = Mat(n, d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j) m.X(i, j) = rng.uniform(lo, hi);
    return m;
}

Vec random_simplex(Rng& rng, std::size_t n) {
    Vec v(n);
    double s = 0.0;
    for (auto& x : v) {
        x = -std::log(std::max(rng.uniform(), 1e-300));
        s += x;
    }
    for (auto& x : v) x /= s;
    return v;
}

struct Failure {
    bool failed = false;
    nlohmann::json info;

    void record(const nlohmann::json& j) {
        if (!failed) {
            failed = true;
            info = j;
        }
    }
};

BatteryResult finish(const std::string& name, const Failure& f, std::size_t count,
                     const std::string& what) {
    BatteryResult r;
    r.name = name;
    r.passed = !f.failed;
    r.detail = (r.passed ? "ok: " : "FAILED: ") + std::to_string(count) + " " + what;
    r.violation = f.info;
    return r;
}

BatteryResult battery_inner_solvers(std::uint64_t seed) {
    Rng rng(derive_seed(seed, 1));
    Failure fail;
    const int kInstances = 500;
    for (int t = 0; t < kInstances && !fail.failed; ++t) {
        std::size_t d = 1 + static_cast<std::size_t>(t % 3);
        Vec w = random_vec(rng, d, -2.0, 2.0, 0.1);
        double a = rng.uniform() < 0.1 ? 0.0 : rng.uniform(-2.0, 2.0);
        AdversaryBudget eps(rng.uniform() < 0.1 ? 0.0 : rng.uniform(0.0, 1.0));

        auto cf_max = max_shifted_square(w, a, eps);
        auto cf_min = min_shifted_square(w, a, eps);
        auto objective = [&](const Vec& delta) {
            double t2 = dot(w, delta) + a;
            return t2 * t2;
        };
        auto g_max = eps.epsilon > 0.0 ? grid_maximize(objective, d, eps, 201)
                                       : InnerSolution{objective(Vec(d, 0.0)), Vec(d, 0.0), false};
        auto g_min = eps.epsilon > 0.0 ? grid_minimize(objective, d, eps, 201)
                                       : InnerSolution{objective(Vec(d, 0.0)), Vec(d, 0.0), false};

        bool ok = g_max.optimum <= cf_max.optimum + 1e-9 &&
                  g_min.optimum >= cf_min.optimum - 1e-9;
        for (const auto* sol : {&cf_max, &cf_min}) {
            double linf = 0.0;
            for (double c : sol->argpoint) linf = std::max(linf, std::abs(c));
            ok = ok && linf <= eps.epsilon + 1e-12;
            ok = ok && std::abs(objective(sol->argpoint) - sol->optimum) <= 1e-12;
        }
        if (!ok)
            fail.record({{"battery", "inner-solvers"},
                         {"instance", t},
                         {"w", w},
                         {"a", a},
                         {"eps", eps.epsilon},
                         {"closed_max", cf_max.optimum},
                         {"closed_min", cf_min.optimum},
                         {"grid_max", g_max.optimum},
                         {"grid_min", g_min.optimum}});
    }
    return finish("inner-solvers", fail, kInstances, "closed-form vs 201-grid instances");
}

BatteryResult battery_lower_bounds(std::uint64_t seed) {
    Rng rng(derive_seed(seed, 2));
    Failure fail;
    const int kInstances = 50;

    for (int t = 0; t < kInstances && !fail.failed; ++t) {
        std::size_t n = 2 + static_cast<std::size_t>(t % 9);
        std::size_t d = 1 + static_cast<std::size_t>(t % 2);
        DesignMatrix X = random_design(rng, n, d, -1.0, 1.0);
        HypothesisClass H{ModelKind::kLinearRegression, NormOrder(2.0), rng.uniform(0.3, 1.5)};
        AdversaryBudget eps(rng.uniform(0.0, 0.4));
        double std_val = std_complexity_regression(X, H).lower.value;
        double adv_val = adv_complexity_regression_exact_small(X, H, eps, 720).value;
        if (!(adv_val >= std_val - 1e-3 * (1.0 + std_val)))
            fail.record({{"battery", "lower-bounds"},
                         {"case", "regression"},
                         {"instance", t},
                         {"std", std_val},
                         {"adv", adv_val}});
    }

    for (int t = 0; t < kInstances && !fail.failed; ++t) {
        std::size_t n = 2 + static_cast<std::size_t>(t % 5);
        std::size_t d = 1 + static_cast<std::size_t>(t % 2);
        AdversaryBudget eps(rng.uniform(0.0, 0.1));
        // well-spread support: jittered angular grid, radii comfortably above
        // the flip range, so every clean disagreement pattern also has a
        // flip-free realization nearby
        DesignMatrix X;
        X.X = Mat(n, d);
        for (std::size_t i = 0; i < n; ++i) {
            double r = rng.uniform(2.0, 3.5);
            if (d == 1) {
                X.X(i, 0) = rng.sign() * r;
            } else {
                double th = (static_cast<double>(i) + 0.5 + 0.35 * rng.uniform(-1.0, 1.0)) *
                            M_PI / static_cast<double>(n);
                X.X(i, 0) = r * std::cos(th);
                X.X(i, 1) = r * std::sin(th);
            }
        }
        HypothesisClass H{ModelKind::kLinearClassification, NormOrder(2.0), 1.0};
        auto cmp = zero_one_adv_vs_std_check(X, H, eps, 360);
        if (!cmp.adversarial_dominates)
            fail.record({{"battery", "lower-bounds"},
                         {"case", "zero-one"},
                         {"instance", t},
                         {"n", n},
                         {"d", d},
                         {"eps", eps.epsilon},
                         {"std", cmp.standard_value},
                         {"adv", cmp.adversarial_value}});
    }
    return finish("lower-bounds", fail, 2 * kInstances,
                  "adversarial >= standard complexity instances");
}

BatteryResult battery_upper_dominance(std::uint64_t seed) {
    Rng rng(derive_seed(seed, 3));
    Failure fail;
    const int kInstances = 100;
    for (int t = 0; t < kInstances && !fail.failed; ++t) {
        std::size_t n = 2 + static_cast<std::size_t>(t % 5);
        std::size_t d = 1 + static_cast<std::size_t>(t % 2);
        DesignMatrix X = random_design(rng, n, d, -1.0, 1.0);
        double W = rng.uniform(0.5, 2.0);
        AdversaryBudget eps(rng.uniform(0.0, 0.3));
        HypothesisClass Hc{ModelKind::kLinearClassification, NormOrder(2.0), W};
        HypothesisClass Hr{ModelKind::kLinearRegression, NormOrder(2.0), W};

        double exact_cls = std_complexity_classification(X, Hc).lower.value;
        double bern_cls = std_upper_bernstein_classification(X, Hc).value;
        double exact_reg = std_complexity_regression(X, Hr).lower.value;
        double bern_reg = std_upper_bernstein_regression(X, Hr).value;

        auto mc = std_complexity_classification(X, Hc, false, 2000, derive_seed(seed, 300 + t));
        bool ok = bern_cls >= exact_cls - 1e-12 && bern_reg >= exact_reg - 1e-12 &&
                  bern_cls >= mc.lower.value - 4.0 * mc.lower.stderr_ &&
                  std::abs(mc.lower.value - exact_cls) <= 4.0 * std::max(mc.lower.stderr_, 1e-6);

        double adv_cls_grid =
            adv_complexity_classification_grid_small(X, Hc, eps, d == 1 ? 2 : 48, 21).value;
        double cls_bound = exact_cls + adv_upper_classification(X, Hc, eps).value;
        ok = ok && cls_bound >= adv_cls_grid - 1e-12;

        double adv_reg_grid = adv_complexity_regression_exact_small(X, Hr, eps, 360).value;
        double reg_bound = exact_reg + adv_upper_regression(X, Hr, eps).value;
        ok = ok && reg_bound >= adv_reg_grid - 1e-12;

        HypothesisClass Hn{ModelKind::kTwoLayerRelu, NormOrder(2.0), W, rng.uniform(0.5, 2.0),
                           1 + t % 4};
        NormOrder q = Hn.p.dual();
        double nn0 = nn_adv_upper(X, Hn, AdversaryBudget(0.0), q).value;
        // eps-free evaluation of the same expression
        double sum_sq = 0.0, max_t = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double nx = p_norm(X.row_vec(i), q);
            sum_sq += nx * nx * nx * nx;
            max_t = std::max(max_t, nx * nx);
        }
        double nn_free = 2.0 / static_cast<double>(n) * Hn.A * Hn.A * Hn.W * Hn.W *
                         (std::sqrt(sum_sq) *
                              std::sqrt((1.0 + static_cast<double>(d)) * 4.0 *
                                        static_cast<double>(Hn.m) *
                                        std::log(3.0 * static_cast<double>(n))) +
                          4.0 * max_t);
        double nn_eps = nn_adv_upper(X, Hn, eps, q).value;
        ok = ok && std::abs(nn0 - nn_free) <= 1e-9 * (1.0 + nn_free) && nn_eps >= nn0 - 1e-12;

        if (!ok)
            fail.record({{"battery", "upper-dominance"},
                         {"instance", t},
                         {"exact_cls", exact_cls},
                         {"bern_cls", bern_cls},
                         {"mc_cls", mc.lower.value},
                         {"mc_stderr", mc.lower.stderr_},
                         {"adv_cls_grid", adv_cls_grid},
                         {"cls_bound", cls_bound},
                         {"exact_reg", exact_reg},
                         {"bern_reg", bern_reg},
                         {"adv_reg_grid", adv_reg_grid},
                         {"reg_bound", reg_bound},
                         {"nn0", nn0},
                         {"nn_free", nn_free}});
    }
    return finish("upper-dominance", fail, kInstances, "bound dominance instances");
}

BatteryResult battery_spot_values(std::uint64_t) {
    Failure fail;
    DesignMatrix X;
    X.X = Mat(1, 2);
    X.X(0, 0) = 1.0;
    HypothesisClass H{ModelKind::kLinearClassification, NormOrder(2.0), 1.0};
    double bern = std_upper_bernstein_classification(X, H).value;
    if (std::abs(bern - 2.127207) > 1e-5)
        fail.record({{"battery", "spot-values"}, {"which", "bernstein"}, {"value", bern}});

    SubsetSumInstance inst;
    inst.p = {0.5, 0.3, 0.2};
    inst.p_prime = {0.2, 0.3, 0.5};
    inst.ell = {1, 0, 0};
    inst.free_set = {1, 2};
    auto sol = vstar_bruteforce(inst);
    std::vector<std::uint8_t> expect{1, 0, 0};
    if (sol.optimum != 0.3 || sol.witness != expect)
        fail.record({{"battery", "spot-values"}, {"which", "vstar"}, {"value", sol.optimum}});
    return finish("spot-values", fail, 2, "frozen formula values");
}

BatteryResult battery_subset_sum(std::uint64_t seed) {
    Rng rng(derive_seed(seed, 5));
    Failure fail;
    const int kAgreement = 500;
    for (int t = 0; t < kAgreement && !fail.failed; ++t) {
        std::size_t N = 3 + static_cast<std::size_t>(t % 18);
        SubsetSumInstance inst;
        inst.p = random_simplex(rng, N);
        inst.p_prime = random_simplex(rng, N);
        inst.ell.resize(N);
        for (auto& b : inst.ell) b = rng.uniform() < 0.5 ? 1 : 0;
        for (std::size_t i = 0; i < N; ++i)
            if (rng.uniform() < 0.6 && inst.free_set.size() < 16) inst.free_set.push_back(i);
        auto a = vstar_bruteforce(inst);
        auto b = vstar_meet_in_middle(inst);
        if (a.optimum != b.optimum || a.witness != b.witness)
            fail.record({{"battery", "subset-sum"},
                         {"case", "cross-solver"},
                         {"instance", t},
                         {"json", inst.to_json()},
                         {"brute", a.optimum},
                         {"mitm", b.optimum}});
    }
    const int kMono = 200;
    for (int t = 0; t < kMono && !fail.failed; ++t) {
        std::size_t N = 3 + static_cast<std::size_t>(t % 14);
        SubsetSumInstance inst;
        inst.p = random_simplex(rng, N);
        inst.p_prime = random_simplex(rng, N);
        inst.ell.resize(N);
        for (auto& b : inst.ell) b = rng.uniform() < 0.5 ? 1 : 0;
        SubsetSumInstance larger = inst;
        for (std::size_t i = 0; i < N; ++i) {
            double u = rng.uniform();
            if (u < 0.3 && inst.free_set.size() < 14) {
                inst.free_set.push_back(i);
                larger.free_set.push_back(i);
            } else if (u < 0.6 && larger.free_set.size() < 15) {
                larger.free_set.push_back(i);
            }
        }
        double v_small = vstar_bruteforce(inst).optimum;
        double v_large = vstar_bruteforce(larger).optimum;
        if (!(v_large <= v_small))
            fail.record({{"battery", "subset-sum"},
                         {"case", "monotonicity"},
                         {"instance", t},
                         {"v_small", v_small},
                         {"v_large", v_large}});
    }
    return finish("subset-sum", fail, kAgreement + kMono, "solver instances");
}

BatteryResult battery_risk_transfer(std::uint64_t seed) {
    Rng rng(derive_seed(seed, 6));
    Failure fail;
    const int kInstances = 200;
    for (int t = 0; t < kInstances && !fail.failed; ++t) {
        std::size_t N = 2 + static_cast<std::size_t>(t % 9);
        std::size_t d = 1 + static_cast<std::size_t>(t % 3);
        DiscreteDomainPair pair;
        for (std::size_t i = 0; i < N; ++i) pair.support.push_back(random_vec(rng, d, -1.0, 1.0));
        pair.mass_T = random_simplex(rng, N);
        pair.mass_Tprime = random_simplex(rng, N);
        for (std::size_t i = 0; i < N; ++i) pair.labels.push_back(rng.sign());
        Vec w = random_vec(rng, d, -1.0, 1.0);
        bool zero = true;
        for (double c : w) zero = zero && c == 0.0;
        if (zero) w[0] = 1.0;
        AdversaryBudget eps(rng.uniform(0.0, 0.6));

        auto cmp = erm_vs_robust_comparison(pair, w, eps);
        if (!cmp.robust.holds || !cmp.erm.holds || !cmp.vstar_ordered)
            fail.record({{"battery", "risk-transfer"},
                         {"instance", t},
                         {"lhs", cmp.robust.lhs},
                         {"rhs", cmp.robust.rhs},
                         {"vstar_eps", cmp.robust.vstar},
                         {"vstar_zero", cmp.erm.vstar}});
    }
    return finish("risk-transfer", fail, kInstances, "transfer-bound instances");
}

BatteryResult battery_pgd(std::uint64_t seed) {
    Rng rng(derive_seed(seed, 7));
    Failure fail;
    const int kInstances = 100;
    TrainConfig cfg;  // protocol defaults: eps 8/255, k 7, alpha 2/255, logistic
    for (int t = 0; t < kInstances && !fail.failed; ++t) {
        std::size_t d = 1 + static_cast<std::size_t>(t % 5);
        LinearModel model;
        model.w = random_vec(rng, d, -1.0, 1.0, 0.15);
        Vec x = random_vec(rng, d, -1.0, 1.0);
        int y = rng.sign();
        Vec xp = pgd_attack_linear(model, x, y, cfg);
        double pgd_loss = point_loss(cfg.loss, static_cast<double>(y) * dot(model.w, xp));
        double wl1 = 0.0;
        for (double c : model.w) wl1 += std::abs(c);
        double worst = point_loss(cfg.loss, static_cast<double>(y) * dot(model.w, x) - cfg.eps * wl1);
        if (std::abs(pgd_loss - worst) > 1e-9)
            fail.record({{"battery", "pgd"},
                         {"instance", t},
                         {"pgd_loss", pgd_loss},
                         {"worst_case", worst}});
    }
    return finish("pgd", fail, kInstances, "PGD corner-exactness instances");
}

BatteryResult battery_sweep(const std::string& golden_path, int threads) {
    Failure fail;
    auto cells = l1_sweep_experiment(reference_sweep_spec(), reference_mu_grid(),
                                     reference_eps_grid(), reference_sweep_config(), threads);
    std::string csv = sweep_to_csv(cells);

    // qualitative direction: the regularized column never transfers worse
    for (double eps : reference_eps_grid()) {
        double delta_mu0 = 0.0, delta_mu = 0.0;
        for (const auto& c : cells) {
            if (c.eps == eps && c.mu == 0.0) delta_mu0 = c.delta;
            if (c.eps == eps && c.mu == 1e-2) delta_mu = c.delta;
        }
        if (!(delta_mu <= delta_mu0))
            fail.record({{"battery", "sweep"},
                         {"case", "delta-ordering"},
                         {"eps", eps},
                         {"delta_mu0", delta_mu0},
                         {"delta_mu1e-2", delta_mu}});
    }

    if (!golden_path.empty()) {
        std::ifstream in(golden_path, std::ios::binary);
        if (!in) {
            fail.record({{"battery", "sweep"}, {"case", "golden-missing"}, {"path", golden_path}});
        } else {
            std::stringstream buf;
            buf << in.rdbuf();
            if (buf.str() != csv)
                fail.record({{"battery", "sweep"},
                             {"case", "golden-mismatch"},
                             {"path", golden_path},
                             {"produced", csv}});
        }
    }
    return finish("sweep", fail, cells.size(), "sweep cells");
}

BatteryResult battery_discrepancy_slack(std::uint64_t seed) {
    Rng rng(derive_seed(seed, 9));
    Failure fail;
    const int kInstances = 50;
    for (int t = 0; t < kInstances && !fail.failed; ++t) {
        std::size_t nS = 2 + static_cast<std::size_t>(t % 5);
        std::size_t nT = 2 + static_cast<std::size_t>((t / 5) % 5);
        DesignMatrix S = random_design(rng, nS, 2, -1.5, 1.5);
        DesignMatrix T = random_design(rng, nT, 2, -1.5, 1.5);
        HypothesisClass H{ModelKind::kLinearRegression, NormOrder(2.0), rng.uniform(0.2, 1.0)};
        AdversaryBudget eps(rng.uniform(0.01, 0.25));
        LossSpec loss{LossKind::kSquared, 1.0};

        double std_exact = hdh_discrepancy_regression(S, T, H);
        BruteforceOptions opt;
        opt.w_grid = 360;
        double adv_grid = hdh_discrepancy_bruteforce(S, T, H, loss, true, eps, opt);
        for (auto variant : {SlackVariant::kStatement, SlackVariant::kProof}) {
            double slack = estimate_adv_disc_from_std(S, T, H, eps, loss, variant);
            double tol = 1e-9 * (1.0 + slack);
            if (!(adv_grid <= std_exact + slack + tol))
                fail.record({{"battery", "discrepancy-slack"},
                             {"instance", t},
                             {"variant", variant == SlackVariant::kStatement ? "statement" : "proof"},
                             {"std_exact", std_exact},
                             {"adv_grid", adv_grid},
                             {"slack", slack}});
        }
    }
    return finish("discrepancy-slack", fail, kInstances, "slack-certificate instances");
}

}  // namespace

std::vector<std::string> verify_battery_names() {
    return {"inner-solvers", "lower-bounds", "upper-dominance", "spot-values", "subset-sum",
            "risk-transfer", "pgd",          "sweep",           "discrepancy-slack"};
}

std::vector<BatteryResult> run_verify(std::uint64_t seed, const std::vector<std::string>& only,
                                      const std::string& golden_sweep_path, int threads) {
    auto wanted = [&](const std::string& name) {
        return only.empty() || std::find(only.begin(), only.end(), name) != only.end();
    };
    std::vector<BatteryResult> results;
    if (wanted("inner-solvers")) results.push_back(battery_inner_solvers(seed));
    if (wanted("lower-bounds")) results.push_back(battery_lower_bounds(seed));
    if (wanted("upper-dominance")) results.push_back(battery_upper_dominance(seed));
    if (wanted("spot-values")) results.push_back(battery_spot_values(seed));
    if (wanted("subset-sum")) results.push_back(battery_subset_sum(seed));
    if (wanted("risk-transfer")) results.push_back(battery_risk_transfer(seed));
    if (wanted("pgd")) results.push_back(battery_pgd(seed));
    if (wanted("sweep")) results.push_back(battery_sweep(golden_sweep_path, threads));
    if (wanted("discrepancy-slack")) results.push_back(battery_discrepancy_slack(seed));
    return results;
}

}  // namespace hdh
