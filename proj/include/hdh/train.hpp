#pragma once

#include <cstdint>
#include <string>

#include "hdh/inner.hpp"
#include "hdh/linalg.hpp"

#include "json.hpp"

namespace hdh {

enum class TrainLoss { kLogistic, kHinge };
enum class TrainMode { kStandard, kAdversarial };

// Protocol defaults: eps = 8/255, k = 7 PGD steps of size 2/255, full-batch
// subgradient descent with cosine-decayed learning rate.
struct TrainConfig {
    double eps = 8.0 / 255.0;
    int pgd_steps = 7;
    double pgd_step_size = 2.0 / 255.0;
    int epochs = 100;
    double learning_rate = 1e-2;
    bool cosine_decay = true;
    double l1_mu = 0.0;
    TrainLoss loss = TrainLoss::kLogistic;
    std::uint64_t seed = 1;

    void validate() const {
        if (!(eps >= 0.0)) throw validation_error("eps must be nonnegative");
        if (pgd_steps < 0) throw validation_error("pgd_steps must be nonnegative");
        if (!(pgd_step_size > 0.0)) throw validation_error("pgd step size must be positive");
        if (epochs < 0) throw validation_error("epochs must be nonnegative");
        if (!(learning_rate > 0.0)) throw validation_error("learning rate must be positive");
        if (!(l1_mu >= 0.0)) throw validation_error("l1 strength must be nonnegative");
    }
};

struct LinearModel {
    Vec w;
    double final_loss = 0.0;
    int epochs_run = 0;
    nlohmann::json config_snapshot;

    nlohmann::json to_json() const;
    static LinearModel from_json(const nlohmann::json& j);
};

// Two-class Gaussian mixture source plus a rotated/translated target sharing
// the labeling rule.  Rotation acts in the (0,1) coordinate plane.
struct SyntheticDomainSpec {
    std::size_t n_per_domain = 200;
    std::size_t d = 2;
    double separation = 2.0;       // distance between the class means
    double covariance_scale = 1.0;
    double rotation = 0.0;         // radians, in [0, pi)
    double translation = 0.0;      // added to every target coordinate
    std::uint64_t seed = 1;

    void validate() const {
        if (n_per_domain < 2 || d < 1) throw validation_error("domain sizes must be positive");
        if (!(covariance_scale > 0.0))
            throw validation_error("covariance scale must be positive (degenerate covariance)");
        if (!(rotation >= 0.0 && rotation < M_PI))
            throw validation_error("rotation must lie in [0, pi)");
    }
};

struct LabeledDomainPair {
    DesignMatrix source;
    DesignMatrix target;
};

double point_loss(TrainLoss loss, double margin);

// k-step signed-gradient ascent on the per-sample loss, projected onto the
// eps box.  For a monotone loss on a linear model this reaches the corner
// -eps * y * sign(w) whenever k * alpha >= eps.
Vec pgd_attack_linear(const LinearModel& model, const Vec& x, int y, const TrainConfig& cfg);

// Full-batch subgradient descent on mean loss + mu ||w||_1 (subgradient 0 at
// 0), cosine-decayed learning rate, PGD examples recomputed each epoch in
// adversarial mode.  Deterministic for a fixed config.
LinearModel train(const DesignMatrix& data, const TrainConfig& cfg, TrainMode mode);

struct Accuracy {
    double sa = 0.0;      // clean accuracy, sign(0) -> +1
    double ra = 0.0;      // exact worst-case accuracy: y w.x > eps ||w||_1
    double ra_pgd = 0.0;  // accuracy against the PGD attack, for protocol fidelity
};
Accuracy evaluate(const LinearModel& model, const DesignMatrix& data, double eps,
                  const TrainConfig& attack_cfg);

LabeledDomainPair generate_domains(const SyntheticDomainSpec& spec);

// Deterministic 70/30 split of a labeled dataset.
void split_train_test(const DesignMatrix& data, std::uint64_t seed, DesignMatrix& train_part,
                      DesignMatrix& test_part, double train_fraction = 0.7);

struct SweepCell {
    double mu = 0.0;
    double eps = 0.0;
    double ra_source = 0.0;
    double ra_target = 0.0;
    double delta = 0.0;
    double sa_source = 0.0;
    double sa_target = 0.0;
};

// One adversarially trained model per (mu, eps) cell; the model is fit on a
// 70% source split and scored on the held-out source split and the full
// target sample.  delta = ra_source - ra_target.
std::vector<SweepCell> l1_sweep_experiment(const SyntheticDomainSpec& spec, const Vec& mu_grid,
                                           const Vec& eps_grid, const TrainConfig& base_cfg,
                                           int threads = 1);

std::string sweep_to_csv(const std::vector<SweepCell>& cells);

}  // namespace hdh
