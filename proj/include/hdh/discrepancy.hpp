#pragma once

#include "hdh/rademacher.hpp"

namespace hdh {

struct DomainPair {
    DesignMatrix source;
    DesignMatrix target;

    void validate() const {
        source.validate();
        target.validate();
        if (source.d() != target.d())
            throw validation_error("source and target must share the feature dimension");
    }
};

// Itemized generalization bound.  Components are stored after their
// coefficients have been applied, so total is always their plain sum.
struct BoundReport {
    double source_risk = 0.0;
    double discrepancy = 0.0;
    double lambda_terms = 0.0;
    double complexity_source = 0.0;
    double complexity_target = 0.0;
    double concentration_source = 0.0;
    double concentration_target = 0.0;
    double total = 0.0;
    double confidence = 0.05;
    double loss_bound = 1.0;

    nlohmann::json to_json() const;
};

// Exact HDH discrepancy for squared loss with an l2-ball class:
//   4 W^2 || C_S - C_T ||_2,  C the empirical second-moment matrix.
double hdh_discrepancy_regression(const DesignMatrix& S, const DesignMatrix& T,
                                  const HypothesisClass& H);

// Grid maximization of |R_S - R_T| over hypothesis pairs, with the inner
// perturbation handled per loss (closed form for squared loss, a delta grid
// otherwise).  d <= 2, n_S + n_T <= 24.  Underestimates the true maximum.
struct BruteforceOptions {
    int w_grid = 48;       // directions per model vector
    int radius_grid = 6;   // radii per model vector (classification losses)
    int delta_grid = 21;   // points per axis of the inner perturbation grid
};
double hdh_discrepancy_bruteforce(const DesignMatrix& S, const DesignMatrix& T,
                                  const HypothesisClass& H, const LossSpec& loss,
                                  bool adversarial, const AdversaryBudget& eps,
                                  const BruteforceOptions& opt = {});

enum class SlackVariant { kStatement, kProof };

// Additive slack certifying adv_disc <= std_disc + slack.
// Classification: 2 W^2 L_phi sqrt(d) eps (mean_T + mean_S) * p-factor.
// Regression:     8 sqrt(d) eps W^2 (mean_T + mean_S) * p-factor, or the
//                 W^1 variant selected by SlackVariant::kProof.
double estimate_adv_disc_from_std(const DesignMatrix& S, const DesignMatrix& T,
                                  const HypothesisClass& H, const AdversaryBudget& eps,
                                  const LossSpec& loss,
                                  SlackVariant variant = SlackVariant::kStatement);

// Inputs common to the bound assemblers; risks and lambda terms are supplied
// by the caller (the artifact never searches for best-in-class models).
struct BoundParts {
    double source_risk = 0.0;   // disagreement or robust risk of the model under study
    double discrepancy = 0.0;   // standard or adversarial, matching the form
    Vec lambda_terms;           // the form-specific lambda components
    double complexity_source = 0.0;  // Rademacher complexity on the source sample
    double complexity_target = 0.0;
    double loss_bound = 1.0;    // M
    double confidence = 0.05;   // c
    std::size_t n_source = 1;
    std::size_t n_target = 1;

    void validate() const;
};

// target risk <= source risk + disc + lambda + 2M R_S + 2M R_T
//               + 3M sqrt(log(1/c)/n_S) + 3M sqrt(log(1/c)/n_T)
BoundReport assemble_standard_bound(const BoundParts& parts);

// Same shape with robust risks, adversarial discrepancy and a three-term
// lambda.
BoundReport assemble_adversarial_bound(const BoundParts& parts);

// The Jensen-compounded variant ships with two published coefficient sets
// that differ only in the discrepancy multiplier.
enum class CompoundedDiscCoef { kFour, kThree };

// Jensen-compounded variant: 6 x source robust risk, lambda coefficients
// 6/3/3, (4 or 3) x discrepancy, 3 x complexities, 9M concentration per
// domain.
BoundReport assemble_compounded_bound(const BoundParts& parts, CompoundedDiscCoef coef);

}  // namespace hdh
