#include "hdh/discrepancy.hpp"

#include <algorithm>

namespace hdh {

nlohmann::json BoundReport::to_json() const {
    return nlohmann::json{{"source_risk", source_risk},
                          {"discrepancy", discrepancy},
                          {"lambda_terms", lambda_terms},
                          {"complexity_source", complexity_source},
                          {"complexity_target", complexity_target},
                          {"concentration_source", concentration_source},
                          {"concentration_target", concentration_target},
                          {"total", total},
                          {"confidence", confidence},
                          {"loss_bound", loss_bound}};
}

double hdh_discrepancy_regression(const DesignMatrix& S, const DesignMatrix& T,
                                  const HypothesisClass& H) {
    H.validate();
    S.validate();
    T.validate();
    if (S.d() != T.d()) throw validation_error("domains must share the feature dimension");
    if (H.p.p != 2.0)
        throw validation_error("exact regression discrepancy requires p = 2; use the brute-force estimator");
    Mat CS = second_moment(S);
    Mat CT = second_moment(T);
    Mat D(S.d(), S.d());
    for (std::size_t i = 0; i < D.data().size(); ++i) D.data()[i] = CS.data()[i] - CT.data()[i];
    return 4.0 * H.W * H.W * spectral_norm_symmetric(D);
}

namespace {

double ramp_phi(double t) { return std::min(1.0, std::max(0.0, 1.0 - t)); }

inline int sign_plus(double t) { return t >= 0.0 ? 1 : -1; }

std::vector<Vec> circle_directions(std::size_t d, int count) {
    std::vector<Vec> dirs;
    if (d == 1) {
        dirs = {{1.0}, {-1.0}};
    } else {
        dirs.reserve(count);
        for (int k = 0; k < count; ++k) {
            double th = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(count);
            dirs.push_back({std::cos(th), std::sin(th)});
        }
    }
    return dirs;
}

std::vector<Vec> delta_grid_points(std::size_t d, double eps, int per_axis) {
    Vec axis(per_axis);
    int half = per_axis / 2;
    for (int k = 0; k < per_axis; ++k)
        axis[k] = eps * static_cast<double>(k - half) / static_cast<double>(half);
    std::vector<Vec> pts;
    if (d == 1)
        for (double a : axis) pts.push_back({a});
    else
        for (double a : axis)
            for (double b : axis) pts.push_back({a, b});
    return pts;
}

double mean_row_norm(const DesignMatrix& X) {
    double s = 0.0;
    for (std::size_t i = 0; i < X.n(); ++i) s += p_norm(X.row_vec(i), NormOrder(2.0));
    return s / static_cast<double>(X.n());
}

}  // namespace

double hdh_discrepancy_bruteforce(const DesignMatrix& S, const DesignMatrix& T,
                                  const HypothesisClass& H, const LossSpec& loss,
                                  bool adversarial, const AdversaryBudget& eps,
                                  const BruteforceOptions& opt) {
    H.validate();
    loss.validate();
    S.validate();
    T.validate();
    if (S.d() != T.d()) throw validation_error("domains must share the feature dimension");
    if (S.d() > 2) throw validation_error("brute-force discrepancy requires d <= 2");
    if (S.n() + T.n() > 24) throw validation_error("brute-force discrepancy requires n_S + n_T <= 24");
    if (opt.delta_grid < 3 || opt.delta_grid % 2 == 0)
        throw validation_error("delta_grid must be odd and >= 3");

    const std::size_t d = S.d();
    auto dirs = circle_directions(d, opt.w_grid);

    if (loss.kind == LossKind::kSquared) {
        // v = w - w' substitution; both risks are degree-2 homogeneous in v,
        // so the maximum sits at radius 2W and only directions matter.  The
        // adversarial inner maximum has the closed form (eps||v||_1+|v.x|)^2.
        double best = 0.0;
        for (const Vec& u : dirs) {
            Vec v = u;
            for (auto& c : v) c *= 2.0 * H.W;
            double vl1 = 0.0;
            for (double c : v) vl1 += std::abs(c);
            auto risk = [&](const DesignMatrix& D) {
                double acc = 0.0;
                for (std::size_t i = 0; i < D.n(); ++i) {
                    double t = std::abs(dot(D.X.row(i), v));
                    if (adversarial) t += eps.epsilon * vl1;
                    acc += t * t;
                }
                return acc / static_cast<double>(D.n());
            };
            best = std::max(best, std::abs(risk(S) - risk(T)));
        }
        return best;
    }

    // Classification losses: grid over (direction, radius) for each model.
    std::vector<Vec> models;
    if (loss.kind == LossKind::kZeroOne) {
        models = dirs;  // sign classifiers are scale invariant
    } else {
        for (const Vec& u : dirs)
            for (int r = 1; r <= opt.radius_grid; ++r) {
                Vec w = u;
                double radius = H.W * static_cast<double>(r) / static_cast<double>(opt.radius_grid);
                for (auto& c : w) c *= radius;
                models.push_back(w);
            }
    }
    std::vector<Vec> deltas =
        adversarial ? delta_grid_points(d, eps.epsilon, opt.delta_grid) : std::vector<Vec>{};

    auto pair_risk = [&](const DesignMatrix& D, const Vec& w, const Vec& w2) {
        double acc = 0.0;
        for (std::size_t i = 0; i < D.n(); ++i) {
            double a = dot(D.X.row(i), w);
            double b = dot(D.X.row(i), w2);
            if (loss.kind == LossKind::kZeroOne) {
                double li = sign_plus(a) != sign_plus(b) ? 1.0 : 0.0;
                if (adversarial && li == 0.0) {
                    for (const Vec& dl : deltas) {
                        double da = dot(w.data(), dl), db = dot(w2.data(), dl);
                        if (sign_plus(a + da) != sign_plus(b + db)) {
                            li = 1.0;
                            break;
                        }
                    }
                }
                acc += li;
            } else {
                double prod = a * b;
                if (adversarial) {
                    for (const Vec& dl : deltas) {
                        double cand = (a + dot(w.data(), dl)) * (b + dot(w2.data(), dl));
                        if (cand < prod) prod = cand;
                    }
                }
                acc += ramp_phi(prod);
            }
        }
        return acc / static_cast<double>(D.n());
    };

    double best = 0.0;
    for (std::size_t i = 0; i < models.size(); ++i)
        for (std::size_t j = 0; j < models.size(); ++j)
            best = std::max(best,
                            std::abs(pair_risk(S, models[i], models[j]) -
                                     pair_risk(T, models[i], models[j])));
    return best;
}

double estimate_adv_disc_from_std(const DesignMatrix& S, const DesignMatrix& T,
                                  const HypothesisClass& H, const AdversaryBudget& eps,
                                  const LossSpec& loss, SlackVariant variant) {
    H.validate();
    loss.validate();
    S.validate();
    T.validate();
    if (H.kind == ModelKind::kTwoLayerRelu)
        throw validation_error("discrepancy slack is defined for linear classes only");
    double d = static_cast<double>(S.d());
    double factor = std::max(1.0, std::pow(d, H.p.is_inf() ? 1.0 : 1.0 - 2.0 / H.p.p));
    double means = mean_row_norm(T) + mean_row_norm(S);
    if (loss.kind == LossKind::kSquared) {
        double w_term = variant == SlackVariant::kStatement ? H.W * H.W : H.W;
        return 8.0 * std::sqrt(d) * eps.epsilon * w_term * means * factor;
    }
    return 2.0 * H.W * H.W * loss.lipschitz * std::sqrt(d) * eps.epsilon * means * factor;
}

void BoundParts::validate() const {
    if (!(confidence > 0.0 && confidence < 1.0))
        throw validation_error("confidence must lie strictly between 0 and 1");
    if (!(loss_bound >= 0.0)) throw validation_error("loss bound M must be nonnegative");
    if (n_source < 1 || n_target < 1) throw validation_error("sample counts must be >= 1");
    auto nonneg = [](double v, const char* name) {
        if (!(v >= 0.0)) throw validation_error(std::string(name) + " must be nonnegative");
    };
    nonneg(source_risk, "source risk");
    nonneg(discrepancy, "discrepancy");
    nonneg(complexity_source, "source complexity");
    nonneg(complexity_target, "target complexity");
    for (double l : lambda_terms) nonneg(l, "lambda term");
}

namespace {

double concentration_term(double M, double c, std::size_t n) {
    return 3.0 * M * std::sqrt(std::log(1.0 / c) / static_cast<double>(n));
}

double finish_total(BoundReport& r) {
    r.total = r.source_risk + r.discrepancy + r.lambda_terms + r.complexity_source +
              r.complexity_target + r.concentration_source + r.concentration_target;
    return r.total;
}

}  // namespace

BoundReport assemble_standard_bound(const BoundParts& parts) {
    parts.validate();
    if (parts.lambda_terms.size() != 2)
        throw validation_error("the standard bound takes two lambda terms");
    BoundReport r;
    r.source_risk = parts.source_risk;
    r.discrepancy = parts.discrepancy;
    r.lambda_terms = parts.lambda_terms[0] + parts.lambda_terms[1];
    r.complexity_source = 2.0 * parts.loss_bound * parts.complexity_source;
    r.complexity_target = 2.0 * parts.loss_bound * parts.complexity_target;
    r.concentration_source = concentration_term(parts.loss_bound, parts.confidence, parts.n_source);
    r.concentration_target = concentration_term(parts.loss_bound, parts.confidence, parts.n_target);
    r.confidence = parts.confidence;
    r.loss_bound = parts.loss_bound;
    finish_total(r);
    return r;
}

BoundReport assemble_adversarial_bound(const BoundParts& parts) {
    parts.validate();
    if (parts.lambda_terms.size() != 3)
        throw validation_error("the adversarial bound takes three lambda terms");
    BoundReport r;
    r.source_risk = parts.source_risk;
    r.discrepancy = parts.discrepancy;
    r.lambda_terms = parts.lambda_terms[0] + parts.lambda_terms[1] + parts.lambda_terms[2];
    r.complexity_source = 2.0 * parts.loss_bound * parts.complexity_source;
    r.complexity_target = 2.0 * parts.loss_bound * parts.complexity_target;
    r.concentration_source = concentration_term(parts.loss_bound, parts.confidence, parts.n_source);
    r.concentration_target = concentration_term(parts.loss_bound, parts.confidence, parts.n_target);
    r.confidence = parts.confidence;
    r.loss_bound = parts.loss_bound;
    finish_total(r);
    return r;
}

BoundReport assemble_compounded_bound(const BoundParts& parts, CompoundedDiscCoef coef) {
    parts.validate();
    if (parts.lambda_terms.size() != 3)
        throw validation_error("the compounded bound takes three lambda terms");
    BoundReport r;
    r.source_risk = 6.0 * parts.source_risk;
    r.discrepancy = (coef == CompoundedDiscCoef::kFour ? 4.0 : 3.0) * parts.discrepancy;
    r.lambda_terms =
        6.0 * parts.lambda_terms[0] + 3.0 * parts.lambda_terms[1] + 3.0 * parts.lambda_terms[2];
    r.complexity_source = 3.0 * parts.complexity_source;
    r.complexity_target = 3.0 * parts.complexity_target;
    r.concentration_source =
        3.0 * concentration_term(parts.loss_bound, parts.confidence, parts.n_source);
    r.concentration_target =
        3.0 * concentration_term(parts.loss_bound, parts.confidence, parts.n_target);
    r.confidence = parts.confidence;
    r.loss_bound = parts.loss_bound;
    finish_total(r);
    return r;
}

}  // namespace hdh
