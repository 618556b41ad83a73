#include "hdh/train.hpp"

#include <algorithm>
#include <cstdio>
#include <future>
#include <numeric>
#include <sstream>

namespace hdh {

nlohmann::json LinearModel::to_json() const {
    return nlohmann::json{{"w", w},
                          {"final_loss", final_loss},
                          {"epochs_run", epochs_run},
                          {"config", config_snapshot}};
}

LinearModel LinearModel::from_json(const nlohmann::json& j) {
    LinearModel m;
    m.w = j.at("w").get<Vec>();
    m.final_loss = j.value("final_loss", 0.0);
    m.epochs_run = j.value("epochs_run", 0);
    if (j.contains("config")) m.config_snapshot = j.at("config");
    return m;
}

double point_loss(TrainLoss loss, double margin) {
    switch (loss) {
        case TrainLoss::kLogistic:
            // stable log(1 + exp(-m))
            return margin > 0.0 ? std::log1p(std::exp(-margin))
                                : -margin + std::log1p(std::exp(margin));
        case TrainLoss::kHinge:
            return std::max(0.0, 1.0 - margin);
    }
    return 0.0;
}

namespace {

// dphi/dmargin; <= 0 for both losses.
double point_loss_grad(TrainLoss loss, double margin) {
    switch (loss) {
        case TrainLoss::kLogistic:
            return -1.0 / (1.0 + std::exp(margin));
        case TrainLoss::kHinge:
            return margin < 1.0 ? -1.0 : 0.0;
    }
    return 0.0;
}

nlohmann::json config_json(const TrainConfig& cfg, TrainMode mode) {
    return nlohmann::json{{"eps", cfg.eps},
                          {"pgd_steps", cfg.pgd_steps},
                          {"pgd_step_size", cfg.pgd_step_size},
                          {"epochs", cfg.epochs},
                          {"learning_rate", cfg.learning_rate},
                          {"cosine_decay", cfg.cosine_decay},
                          {"l1_mu", cfg.l1_mu},
                          {"loss", cfg.loss == TrainLoss::kLogistic ? "logistic" : "hinge"},
                          {"mode", mode == TrainMode::kStandard ? "standard" : "adversarial"},
                          {"seed", cfg.seed}};
}

}  // namespace

Vec pgd_attack_linear(const LinearModel& model, const Vec& x, int y, const TrainConfig& cfg) {
    cfg.validate();
    if (model.w.size() != x.size()) throw validation_error("model/sample dimension mismatch");
    if (cfg.eps == 0.0) return x;
    Vec delta(x.size(), 0.0);
    for (int step = 0; step < cfg.pgd_steps; ++step) {
        double margin = static_cast<double>(y) * (dot(model.w, x) + dot(model.w, delta));
        double g = point_loss_grad(cfg.loss, margin);
        for (std::size_t j = 0; j < delta.size(); ++j) {
            double gj = g * static_cast<double>(y) * model.w[j];  // d loss / d delta_j
            double s = gj > 0.0 ? 1.0 : (gj < 0.0 ? -1.0 : 0.0);
            delta[j] = std::clamp(delta[j] + cfg.pgd_step_size * s, -cfg.eps, cfg.eps);
        }
    }
    Vec out(x);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += delta[j];
    return out;
}

LinearModel train(const DesignMatrix& data, const TrainConfig& cfg, TrainMode mode) {
    cfg.validate();
    data.validate();
    if (!data.labels) throw validation_error("training requires a dataset with a 'label' column");

    const std::size_t n = data.n();
    const std::size_t d = data.d();
    LinearModel model;
    model.w.assign(d, 0.0);
    model.config_snapshot = config_json(cfg, mode);

    Vec grad(d);
    double mean_loss = 0.0;
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        double lr = cfg.learning_rate;
        if (cfg.cosine_decay && cfg.epochs > 1)
            lr *= 0.5 * (1.0 + std::cos(M_PI * static_cast<double>(epoch) /
                                        static_cast<double>(cfg.epochs)));

        std::fill(grad.begin(), grad.end(), 0.0);
        mean_loss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            int y = (*data.labels)[i];
            Vec x = data.row_vec(i);
            if (mode == TrainMode::kAdversarial) x = pgd_attack_linear(model, x, y, cfg);
            double margin = static_cast<double>(y) * dot(model.w, x);
            mean_loss += point_loss(cfg.loss, margin);
            double g = point_loss_grad(cfg.loss, margin) * static_cast<double>(y);
            for (std::size_t j = 0; j < d; ++j) grad[j] += g * x[j];
        }
        mean_loss /= static_cast<double>(n);
        for (std::size_t j = 0; j < d; ++j) {
            double gj = grad[j] / static_cast<double>(n);
            if (cfg.l1_mu > 0.0 && model.w[j] != 0.0)
                gj += cfg.l1_mu * (model.w[j] > 0.0 ? 1.0 : -1.0);
            model.w[j] -= lr * gj;
            if (!std::isfinite(model.w[j]))
                throw numeric_error("training diverged at epoch " + std::to_string(epoch) +
                                    " (non-finite weight); mean loss " + std::to_string(mean_loss));
        }
        model.epochs_run = epoch + 1;
    }
    model.final_loss = mean_loss;
    return model;
}

Accuracy evaluate(const LinearModel& model, const DesignMatrix& data, double eps,
                  const TrainConfig& attack_cfg) {
    data.validate();
    if (!data.labels) throw validation_error("evaluation requires a dataset with a 'label' column");
    double wl1 = 0.0;
    for (double c : model.w) wl1 += std::abs(c);

    TrainConfig atk = attack_cfg;
    atk.eps = eps;

    Accuracy acc;
    const std::size_t n = data.n();
    for (std::size_t i = 0; i < n; ++i) {
        int y = (*data.labels)[i];
        Vec x = data.row_vec(i);
        double score = dot(model.w, x);
        int pred = score >= 0.0 ? 1 : -1;
        if (pred == y) acc.sa += 1.0;
        if (static_cast<double>(y) * score > eps * wl1) acc.ra += 1.0;
        Vec xp = pgd_attack_linear(model, x, y, atk);
        double sp = dot(model.w, xp);
        int pred_p = sp >= 0.0 ? 1 : -1;
        if (pred_p == y) acc.ra_pgd += 1.0;
    }
    acc.sa /= static_cast<double>(n);
    acc.ra /= static_cast<double>(n);
    acc.ra_pgd /= static_cast<double>(n);
    return acc;
}

LabeledDomainPair generate_domains(const SyntheticDomainSpec& spec) {
    spec.validate();
    Rng rng(derive_seed(spec.seed, 0xD037A1));
    const std::size_t n = spec.n_per_domain;
    const std::size_t d = spec.d;

    // class means at +/- (separation/2) along a fixed decaying direction:
    // a strong head coordinate with a long weak tail, so sparsity-inducing
    // training keeps a meaningful trade-off between margin and ||w||_1
    Vec profile(d);
    double pn = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        profile[j] = 1.0 / std::sqrt(1.0 + static_cast<double>(j));
        pn += profile[j] * profile[j];
    }
    pn = std::sqrt(pn);
    Vec mean_pos(d), mean_neg(d);
    for (std::size_t j = 0; j < d; ++j) {
        mean_pos[j] = spec.separation / 2.0 * profile[j] / pn;
        mean_neg[j] = -mean_pos[j];
    }

    auto sample_domain = [&](bool shifted) {
        DesignMatrix m;
        m.X = Mat(n, d);
        std::vector<int> labels(n);
        for (std::size_t i = 0; i < n; ++i) {
            int y = (i % 2 == 0) ? 1 : -1;  // balanced classes
            const Vec& mu = y > 0 ? mean_pos : mean_neg;
            Vec x(d);
            for (std::size_t j = 0; j < d; ++j)
                x[j] = mu[j] + spec.covariance_scale * rng.gaussian();
            if (shifted) {
                if (d >= 2) {
                    double c = std::cos(spec.rotation), s = std::sin(spec.rotation);
                    double x0 = x[0], x1 = x[1];
                    x[0] = c * x0 - s * x1;
                    x[1] = s * x0 + c * x1;
                }
                for (std::size_t j = 0; j < d; ++j) x[j] += spec.translation;
            }
            for (std::size_t j = 0; j < d; ++j) m.X(i, j) = x[j];
            labels[i] = y;
        }
        m.labels = std::move(labels);
        return m;
    };

    LabeledDomainPair pair;
    pair.source = sample_domain(false);
    pair.target = sample_domain(true);
    return pair;
}

void split_train_test(const DesignMatrix& data, std::uint64_t seed, DesignMatrix& train_part,
                      DesignMatrix& test_part, double train_fraction) {
    data.validate();
    const std::size_t n = data.n();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    Rng rng(derive_seed(seed, 0x5917));
    for (std::size_t i = n; i > 1; --i)
        std::swap(idx[i - 1], idx[rng.next_u64() % i]);

    std::size_t n_train = std::max<std::size_t>(1, static_cast<std::size_t>(
                                                       train_fraction * static_cast<double>(n)));
    n_train = std::min(n_train, n - 1);

    auto subset = [&](std::size_t from, std::size_t to) {
        DesignMatrix m;
        m.X = Mat(to - from, data.d());
        std::vector<int> labels;
        for (std::size_t r = from; r < to; ++r) {
            for (std::size_t j = 0; j < data.d(); ++j) m.X(r - from, j) = data.X(idx[r], j);
            if (data.labels) labels.push_back((*data.labels)[idx[r]]);
        }
        if (data.labels) m.labels = std::move(labels);
        return m;
    };
    train_part = subset(0, n_train);
    test_part = subset(n_train, n);
}

std::vector<SweepCell> l1_sweep_experiment(const SyntheticDomainSpec& spec, const Vec& mu_grid,
                                           const Vec& eps_grid, const TrainConfig& base_cfg,
                                           int threads) {
    if (mu_grid.empty() || eps_grid.empty())
        throw validation_error("sweep grids must be nonempty");
    base_cfg.validate();

    LabeledDomainPair pair = generate_domains(spec);
    DesignMatrix src_train, src_test;
    split_train_test(pair.source, spec.seed, src_train, src_test);

    auto run_cell = [&](double mu, double eps) {
        TrainConfig cfg = base_cfg;
        cfg.l1_mu = mu;
        cfg.eps = eps;
        LinearModel model = train(src_train, cfg, TrainMode::kAdversarial);
        Accuracy s = evaluate(model, src_test, eps, cfg);
        Accuracy t = evaluate(model, pair.target, eps, cfg);
        SweepCell cell;
        cell.mu = mu;
        cell.eps = eps;
        cell.ra_source = s.ra;
        cell.ra_target = t.ra;
        cell.delta = s.ra - t.ra;
        cell.sa_source = s.sa;
        cell.sa_target = t.sa;
        return cell;
    };

    std::vector<std::pair<double, double>> grid;
    for (double mu : mu_grid)
        for (double eps : eps_grid) grid.emplace_back(mu, eps);

    std::vector<SweepCell> cells(grid.size());
    if (threads <= 1) {
        for (std::size_t i = 0; i < grid.size(); ++i)
            cells[i] = run_cell(grid[i].first, grid[i].second);
    } else {
        // cells are independent; results land in fixed slots so the output
        // does not depend on scheduling
        std::vector<std::future<SweepCell>> futs;
        futs.reserve(grid.size());
        for (auto& [mu, eps] : grid)
            futs.push_back(std::async(std::launch::async, run_cell, mu, eps));
        for (std::size_t i = 0; i < futs.size(); ++i) cells[i] = futs[i].get();
    }
    return cells;
}

std::string sweep_to_csv(const std::vector<SweepCell>& cells) {
    std::ostringstream out;
    out << "mu,eps,ra_source,ra_target,delta,sa_source,sa_target\n";
    char buf[256];
    for (const SweepCell& c : cells) {
        std::snprintf(buf, sizeof(buf), "%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g\n", c.mu, c.eps,
                      c.ra_source, c.ra_target, c.delta, c.sa_source, c.sa_target);
        out << buf;
    }
    return out.str();
}

}  // namespace hdh
