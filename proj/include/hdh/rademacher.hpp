#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "hdh/inner.hpp"
#include "hdh/linalg.hpp"

#include "json.hpp"

namespace hdh {

enum class ModelKind { kLinearClassification, kLinearRegression, kTwoLayerRelu };

std::string to_string(ModelKind k);

// Hypothesis class the suprema range over: linear models with ||w||_p <= W,
// or a two-layer ReLU network with row norms ||w(r)||_p <= W and outer
// weights ||a||_1 <= A, width m.
struct HypothesisClass {
    ModelKind kind = ModelKind::kLinearClassification;
    NormOrder p = NormOrder(2.0);
    double W = 1.0;
    double A = 1.0;  // ReLU only
    int m = 1;       // ReLU only

    void validate() const {
        if (!(W > 0.0)) throw validation_error("weight radius W must be positive");
        if (kind == ModelKind::kTwoLayerRelu) {
            if (!(A > 0.0)) throw validation_error("outer radius A must be positive");
            if (m < 1) throw validation_error("hidden width m must be >= 1");
        }
    }
};

enum class LossKind { kClassificationPhi, kSquared, kZeroOne };

struct LossSpec {
    LossKind kind = LossKind::kClassificationPhi;
    double lipschitz = 1.0;

    void validate() const {
        if (!(lipschitz > 0.0)) throw validation_error("Lipschitz constant must be positive");
    }
};

enum class EstimateMethod { kExactEnumeration, kMonteCarlo, kWitnessLower, kAnalyticUpper };

std::string to_string(EstimateMethod m);

struct RademacherEstimate {
    double value = 0.0;
    double stderr_ = 0.0;  // 0 for deterministic methods
    EstimateMethod method = EstimateMethod::kExactEnumeration;
    long samples = 0;

    nlohmann::json to_json(const std::string& quantity,
                           const nlohmann::json& params = nlohmann::json::object()) const;
};

// Lower/upper pair; for p = 2 the two coincide.  For p != 2 the exact value
// is only known up to the norm-equivalence factors {1, d^{1-2/p}}.
struct ComplexityBracket {
    RademacherEstimate lower;
    RademacherEstimate upper;
    bool tight() const { return lower.value == upper.value; }
};

enum class EnumMode { kAll, kHalfDoubled };

// E over sigma in {+-1}^n of || sum_i sigma_i x_i x_i^T ||_2.
// exact: full 2^n enumeration (n <= 12), or the halved enumeration that
// doubles the sigma_1 = +1 orbit; both paths must agree exactly.
RademacherEstimate expected_spectral_norm_exact(const DesignMatrix& X,
                                                EnumMode mode = EnumMode::kHalfDoubled);
RademacherEstimate expected_spectral_norm_mc(const DesignMatrix& X, long samples,
                                             std::uint64_t seed);

// Product-class complexity for linear classification.  Exact at p = 2:
// (W^2/n) E ||S(sigma)||_2; bracketed otherwise.
ComplexityBracket std_complexity_classification(const DesignMatrix& X, const HypothesisClass& H,
                                                bool exact = true, long samples = 10000,
                                                std::uint64_t seed = 1);

// Concentration upper bound for the classification product class:
// (W^2/n) (sqrt(2 ||sum (x_i x_i^T)^2||_2 log(2d)) + ||X||_{2,inf}^2 log(2d)/3)
// times the p-factor.  Natural logarithms.
RademacherEstimate std_upper_bernstein_classification(const DesignMatrix& X,
                                                      const HypothesisClass& H);

enum class ConstantMode { kSimplified, kExplicit };

// Additive adversarial gap for linear classification.  Explicit mode uses
// the fully worked-out constant
//   (2 eps d^{1/p*} W^2 / sqrt(n)) (1 + sqrt(d) sqrt(log(3 sqrt(n))))
//   (eps d^{1/p*} + 2 ||X||_{p*,inf});
// simplified mode evaluates the compact shape c W^2 sqrt(d log n)/sqrt(n)
// eps d^{1/p*} (eps d^{1/p*} + ||X||_{p*,inf}) for a caller-supplied c;
// c < 0 falls back to the explicit value.
RademacherEstimate adv_upper_classification(const DesignMatrix& X, const HypothesisClass& H,
                                            const AdversaryBudget& eps,
                                            ConstantMode mode = ConstantMode::kExplicit,
                                            double c = -1.0);

// Gap lower bound: 0 for 1 <= p <= 2, otherwise
// (W^2/n)(1 - d^{1-2/p}) E ||S(sigma)||_2 (raw, may be negative) with the
// clamped max(0, .) reported alongside.
struct GapLowerBound {
    RademacherEstimate raw;
    double clamped = 0.0;
};
GapLowerBound adv_lower_gap_classification(const DesignMatrix& X, const HypothesisClass& H,
                                           bool exact = true, long samples = 10000,
                                           std::uint64_t seed = 1);

// Regression complexity over v = w - w', ||v||_p <= 2W.  Exact at p = 2:
// (4W^2/n) E max(lambda_max(S(sigma)), 0).
ComplexityBracket std_complexity_regression(const DesignMatrix& X, const HypothesisClass& H,
                                            bool exact = true, long samples = 10000,
                                            std::uint64_t seed = 1);

RademacherEstimate std_upper_bernstein_regression(const DesignMatrix& X,
                                                  const HypothesisClass& H);

// Adversarial regression complexity at p = 2, small instances: enumerate all
// sign patterns and maximize (1/n) sum sigma_i (eps ||v||_1 + |v^T x_i|)^2
// over directions of v (degree-2 homogeneous, so radius 2W suffices when the
// best direction is positive).  Grid over the sphere plus local refinement.
RademacherEstimate adv_complexity_regression_exact_small(const DesignMatrix& X,
                                                         const HypothesisClass& H,
                                                         const AdversaryBudget& eps,
                                                         int sphere_grid = 720);

// Adversarial gap upper bound for regression, explicit constant:
//   (4W^2/n) sqrt(d) eps ( sqrt(d) eps + (2/n) sum ||x_i||_2
//     + sqrt(sum (sqrt(d) eps + 2||x_i||_2)^2) sqrt(2 d log(6n)) )
// times the p-factor.
RademacherEstimate adv_upper_regression(const DesignMatrix& X, const HypothesisClass& H,
                                        const AdversaryBudget& eps,
                                        ConstantMode mode = ConstantMode::kExplicit,
                                        double c = -1.0);

// Small-instance grid estimate of the adversarial product-class complexity
// for classification at p = 2 (d <= 2, n <= 12).  Direction grid over both
// model vectors, exact-small inner minimization; a certified lower estimate.
RademacherEstimate adv_complexity_classification_grid_small(const DesignMatrix& X,
                                                            const HypothesisClass& H,
                                                            const AdversaryBudget& eps,
                                                            int direction_grid = 72,
                                                            int delta_grid = 41);

// Two-layer ReLU adversarial upper bound with explicit constants:
//   (2/n) A^2 W^2 [ sqrt(sum (||x_i||_q^2 + d^{2/q} eps^2)^2)
//                   sqrt((1+d) 4 m log(3n)) + 4 (max_i ||x_i||_q^2 + d^{2/q} eps^2) ].
RademacherEstimate nn_adv_upper(const DesignMatrix& X, const HypothesisClass& H,
                                const AdversaryBudget& eps, const NormOrder& q);

// Exhaustive small-instance comparison of the sign-classifier disagreement
// complexities, standard vs adversarial (d <= 2, n <= 10).  Hypotheses are
// sampled on a direction grid; the inner perturbation problem is linear in
// delta, so the flip test is solved exactly per pair (no perturbation grid).
struct ZeroOneComparison {
    double standard_value = 0.0;
    double adversarial_value = 0.0;
    double slack = 0.0;
    bool adversarial_dominates = false;
};
ZeroOneComparison zero_one_adv_vs_std_check(const DesignMatrix& X, const HypothesisClass& H,
                                            const AdversaryBudget& eps, int w_grid = 360);

}  // namespace hdh
