#include "hdh/rademacher.hpp"

#include <algorithm>
#include <set>

namespace hdh {

std::string to_string(ModelKind k) {
    switch (k) {
        case ModelKind::kLinearClassification: return "linear-classification";
        case ModelKind::kLinearRegression: return "linear-regression";
        case ModelKind::kTwoLayerRelu: return "two-layer-relu";
    }
    return "?";
}

std::string to_string(EstimateMethod m) {
    switch (m) {
        case EstimateMethod::kExactEnumeration: return "exact-enumeration";
        case EstimateMethod::kMonteCarlo: return "monte-carlo";
        case EstimateMethod::kWitnessLower: return "witness-lower";
        case EstimateMethod::kAnalyticUpper: return "analytic-upper";
    }
    return "?";
}

nlohmann::json RademacherEstimate::to_json(const std::string& quantity,
                                           const nlohmann::json& params) const {
    return nlohmann::json{{"quantity", quantity}, {"method", to_string(method)},
                          {"value", value},      {"stderr", stderr_},
                          {"samples", samples},  {"params", params}};
}

namespace {

constexpr std::size_t kExactEnumLimit = 12;

// p-norm equivalence factor d^{1-2/p}; < 1 for p < 2, > 1 for p > 2.
double p_factor(const NormOrder& p, std::size_t d) {
    double expo = p.is_inf() ? 1.0 : 1.0 - 2.0 / p.p;
    return std::pow(static_cast<double>(d), expo);
}

// Upper-bound multiplier used by the concentration bounds: 1 for p <= 2.
double p_factor_upper(const NormOrder& p, std::size_t d) {
    return std::max(1.0, p_factor(p, d));
}

void require_exactable(const DesignMatrix& X) {
    if (X.n() > kExactEnumLimit)
        throw validation_error("exact enumeration limited to n <= " +
                               std::to_string(kExactEnumLimit) + " samples");
}

std::vector<int> sigma_from_bits(std::uint64_t bits, std::size_t n) {
    std::vector<int> sigma(n);
    // bit (n-1-i) drives sigma_i, so patterns with sigma_1 = +1 come first
    for (std::size_t i = 0; i < n; ++i)
        sigma[i] = (bits >> (n - 1 - i)) & 1u ? -1 : 1;
    return sigma;
}

// Enumerates f over all sign patterns (or the sigma_1 = +1 half) and returns
// the exact mean.  The caller guarantees f(sigma) == f(-sigma) in half mode.
double enumerate_mean(const DesignMatrix& X, EnumMode mode,
                      const std::function<double(const std::vector<int>&)>& f) {
    const std::size_t n = X.n();
    const std::uint64_t total = 1ull << n;
    const std::uint64_t count = mode == EnumMode::kHalfDoubled ? total / 2 : total;
    Vec vals(count);
    for (std::uint64_t bits = 0; bits < count; ++bits) vals[bits] = f(sigma_from_bits(bits, n));
    return pairwise_sum(vals) / static_cast<double>(count);
}

struct McStats {
    double mean = 0.0;
    double stderr_ = 0.0;
};

McStats mc_over_sigma(const DesignMatrix& X, long samples, std::uint64_t seed,
                      const std::function<double(const std::vector<int>&)>& f) {
    if (samples < 100) throw validation_error("monte-carlo needs at least 100 samples");
    const std::size_t n = X.n();
    Rng rng(seed);
    Vec vals(static_cast<std::size_t>(samples));
    std::vector<int> sigma(n);
    for (long s = 0; s < samples; ++s) {
        std::uint64_t bits = rng.next_u64();
        for (std::size_t i = 0; i < n; ++i) sigma[i] = (bits >> (i % 64)) & 1u ? -1 : 1;
        if (n > 64)
            for (std::size_t i = 64; i < n; ++i) sigma[i] = rng.sign();
        vals[static_cast<std::size_t>(s)] = f(sigma);
    }
    McStats st;
    st.mean = mean_pairwise(vals);
    Vec sq(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) {
        double dlt = vals[i] - st.mean;
        sq[i] = dlt * dlt;
    }
    double var = vals.size() > 1 ? pairwise_sum(sq) / static_cast<double>(vals.size() - 1) : 0.0;
    st.stderr_ = std::sqrt(var / static_cast<double>(vals.size()));
    return st;
}

double spectral_of_sigma(const DesignMatrix& X, const std::vector<int>& sigma) {
    return spectral_norm_symmetric(sign_weighted_covariance(X, sigma));
}

double lambda_plus_of_sigma(const DesignMatrix& X, const std::vector<int>& sigma) {
    return std::max(0.0, lambda_max_symmetric(sign_weighted_covariance(X, sigma)));
}

ComplexityBracket bracket_from_base(double base, double stderr_, EstimateMethod method,
                                    long samples, const NormOrder& p, std::size_t d) {
    double f = p_factor(p, d);
    double lo = std::min(1.0, f), hi = std::max(1.0, f);
    ComplexityBracket b;
    b.lower = RademacherEstimate{base * lo, stderr_ * lo,
                                 lo == hi ? method : EstimateMethod::kWitnessLower, samples};
    b.upper = RademacherEstimate{base * hi, stderr_ * hi,
                                 lo == hi ? method : EstimateMethod::kAnalyticUpper, samples};
    return b;
}

}  // namespace

RademacherEstimate expected_spectral_norm_exact(const DesignMatrix& X, EnumMode mode) {
    X.validate();
    require_exactable(X);
    RademacherEstimate est;
    est.value = enumerate_mean(X, mode, [&](const std::vector<int>& s) {
        return spectral_of_sigma(X, s);
    });
    est.method = EstimateMethod::kExactEnumeration;
    est.samples = 1l << X.n();
    return est;
}

RademacherEstimate expected_spectral_norm_mc(const DesignMatrix& X, long samples,
                                             std::uint64_t seed) {
    X.validate();
    auto st = mc_over_sigma(X, samples, seed,
                            [&](const std::vector<int>& s) { return spectral_of_sigma(X, s); });
    return RademacherEstimate{st.mean, st.stderr_, EstimateMethod::kMonteCarlo, samples};
}

ComplexityBracket std_complexity_classification(const DesignMatrix& X, const HypothesisClass& H,
                                                bool exact, long samples, std::uint64_t seed) {
    H.validate();
    if (H.kind != ModelKind::kLinearClassification)
        throw validation_error("std_complexity_classification requires a linear-classification class");
    double scale = H.W * H.W / static_cast<double>(X.n());
    if (exact) {
        auto e = expected_spectral_norm_exact(X);
        return bracket_from_base(scale * e.value, 0.0, EstimateMethod::kExactEnumeration,
                                 e.samples, H.p, X.d());
    }
    auto e = expected_spectral_norm_mc(X, samples, seed);
    return bracket_from_base(scale * e.value, scale * e.stderr_, EstimateMethod::kMonteCarlo,
                             samples, H.p, X.d());
}

namespace {

// ||sum_i (x_i x_i^T)^2||_2 and ||X||_{2,inf}^2, shared by both Bernstein bounds.
void bernstein_ingredients(const DesignMatrix& X, double& q_norm, double& max_row_sq) {
    const std::size_t d = X.d();
    Mat Q(d, d, 0.0);
    for (std::size_t i = 0; i < X.n(); ++i) {
        const double* x = X.X.row(i);
        double nx2 = 0.0;
        for (std::size_t a = 0; a < d; ++a) nx2 += x[a] * x[a];
        // (x x^T)^2 = ||x||^2 x x^T
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b) Q(a, b) += nx2 * x[a] * x[b];
    }
    q_norm = spectral_norm_symmetric(Q);
    double r = group_norm(X.X, NormOrder(2.0), NormOrder::inf());
    max_row_sq = r * r;
}

}  // namespace

RademacherEstimate std_upper_bernstein_classification(const DesignMatrix& X,
                                                      const HypothesisClass& H) {
    H.validate();
    X.validate();
    if (H.kind != ModelKind::kLinearClassification)
        throw validation_error("std_upper_bernstein_classification requires a linear-classification class");
    double q_norm = 0.0, max_row_sq = 0.0;
    bernstein_ingredients(X, q_norm, max_row_sq);
    double logterm = std::log(2.0 * static_cast<double>(X.d()));
    double val = H.W * H.W / static_cast<double>(X.n()) *
                 (std::sqrt(2.0 * q_norm * logterm) + max_row_sq * logterm / 3.0) *
                 p_factor_upper(H.p, X.d());
    return RademacherEstimate{val, 0.0, EstimateMethod::kAnalyticUpper, 0};
}

RademacherEstimate adv_upper_classification(const DesignMatrix& X, const HypothesisClass& H,
                                            const AdversaryBudget& eps, ConstantMode mode,
                                            double c) {
    H.validate();
    X.validate();
    if (H.kind != ModelKind::kLinearClassification)
        throw validation_error("adv_upper_classification requires a linear-classification class");
    const double n = static_cast<double>(X.n());
    const double d = static_cast<double>(X.d());
    NormOrder pstar = H.p.dual();
    double dstar = pstar.is_inf() ? 1.0 : std::pow(d, 1.0 / pstar.p);
    double rows = group_norm(X.X, pstar, NormOrder::inf());

    double explicit_gap = 2.0 * eps.epsilon * dstar * H.W * H.W / std::sqrt(n) *
                          (1.0 + std::sqrt(d) * std::sqrt(std::log(3.0 * std::sqrt(n)))) *
                          (eps.epsilon * dstar + 2.0 * rows);
    double val = explicit_gap;
    if (mode == ConstantMode::kSimplified && c >= 0.0) {
        val = c * H.W * H.W * std::sqrt(d * std::log(n)) / std::sqrt(n) * eps.epsilon * dstar *
              (eps.epsilon * dstar + rows);
    }
    return RademacherEstimate{val, 0.0, EstimateMethod::kAnalyticUpper, 0};
}

GapLowerBound adv_lower_gap_classification(const DesignMatrix& X, const HypothesisClass& H,
                                           bool exact, long samples, std::uint64_t seed) {
    H.validate();
    if (H.kind != ModelKind::kLinearClassification)
        throw validation_error("adv_lower_gap_classification requires a linear-classification class");
    GapLowerBound g;
    if (H.p.p <= 2.0) {
        g.raw = RademacherEstimate{0.0, 0.0, EstimateMethod::kWitnessLower, 0};
        g.clamped = 0.0;
        return g;
    }
    RademacherEstimate e = exact ? expected_spectral_norm_exact(X)
                                 : expected_spectral_norm_mc(X, samples, seed);
    double coef = H.W * H.W / static_cast<double>(X.n()) * (1.0 - p_factor(H.p, X.d()));
    g.raw = RademacherEstimate{coef * e.value, std::abs(coef) * e.stderr_,
                               EstimateMethod::kWitnessLower, e.samples};
    g.clamped = std::max(0.0, g.raw.value);
    return g;
}

ComplexityBracket std_complexity_regression(const DesignMatrix& X, const HypothesisClass& H,
                                            bool exact, long samples, std::uint64_t seed) {
    H.validate();
    X.validate();
    if (H.kind != ModelKind::kLinearRegression)
        throw validation_error("std_complexity_regression requires a linear-regression class");
    double scale = 4.0 * H.W * H.W / static_cast<double>(X.n());
    if (exact) {
        require_exactable(X);
        double base = enumerate_mean(X, EnumMode::kAll, [&](const std::vector<int>& s) {
            return lambda_plus_of_sigma(X, s);
        });
        return bracket_from_base(scale * base, 0.0, EstimateMethod::kExactEnumeration,
                                 1l << X.n(), H.p, X.d());
    }
    auto st = mc_over_sigma(X, samples, seed,
                            [&](const std::vector<int>& s) { return lambda_plus_of_sigma(X, s); });
    return bracket_from_base(scale * st.mean, scale * st.stderr_, EstimateMethod::kMonteCarlo,
                             samples, H.p, X.d());
}

RademacherEstimate std_upper_bernstein_regression(const DesignMatrix& X,
                                                  const HypothesisClass& H) {
    H.validate();
    X.validate();
    if (H.kind != ModelKind::kLinearRegression)
        throw validation_error("std_upper_bernstein_regression requires a linear-regression class");
    double q_norm = 0.0, max_row_sq = 0.0;
    bernstein_ingredients(X, q_norm, max_row_sq);
    double logterm = std::log(2.0 * static_cast<double>(X.d()));
    double val = 4.0 * H.W * H.W / static_cast<double>(X.n()) *
                 (std::sqrt(2.0 * q_norm * logterm) + max_row_sq * logterm / 3.0) *
                 p_factor_upper(H.p, X.d());
    return RademacherEstimate{val, 0.0, EstimateMethod::kAnalyticUpper, 0};
}

namespace {

struct DirectionSet {
    std::vector<Vec> dirs;
};

DirectionSet unit_directions(std::size_t d, int count) {
    DirectionSet set;
    if (d == 1) {
        set.dirs = {{1.0}, {-1.0}};
    } else if (d == 2) {
        set.dirs.reserve(count);
        for (int k = 0; k < count; ++k) {
            double th = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(count);
            set.dirs.push_back({std::cos(th), std::sin(th)});
        }
    } else if (d == 3) {
        int n = std::max(count, 2000);
        set.dirs.reserve(n);
        const double golden = M_PI * (3.0 - std::sqrt(5.0));
        for (int k = 0; k < n; ++k) {
            double z = 1.0 - 2.0 * (static_cast<double>(k) + 0.5) / static_cast<double>(n);
            double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            double th = golden * static_cast<double>(k);
            set.dirs.push_back({r * std::cos(th), r * std::sin(th), z});
        }
    } else {
        throw validation_error("direction grids support d <= 3");
    }
    return set;
}

// Objective of the adversarial regression identity on a unit direction.
double adv_reg_objective(const DesignMatrix& X, const std::vector<int>& sigma, double eps,
                         const Vec& u) {
    double ul1 = 0.0;
    for (double v : u) ul1 += std::abs(v);
    double acc = 0.0;
    for (std::size_t i = 0; i < X.n(); ++i) {
        double t = eps * ul1 + std::abs(dot(X.X.row(i), u));
        acc += static_cast<double>(sigma[i]) * t * t;
    }
    return acc / static_cast<double>(X.n());
}

// Deterministic local polish of a direction: shrinking coordinate rotations.
Vec refine_direction(const DesignMatrix& X, const std::vector<int>& sigma, double eps, Vec u,
                     double initial_step, double& best) {
    const std::size_t d = u.size();
    if (d == 1) return u;
    double step = initial_step;
    for (int round = 0; round < 40 && step > 1e-7; ++round) {
        bool improved = false;
        for (std::size_t a = 0; a + 1 < d; ++a) {
            // rotations in the (a, a+1) coordinate planes
            for (double s : {step, -step}) {
                Vec cand = u;
                double ca = std::cos(s), sa = std::sin(s);
                double xa = cand[a], xb = cand[a + 1];
                cand[a] = ca * xa - sa * xb;
                cand[a + 1] = sa * xa + ca * xb;
                double val = adv_reg_objective(X, sigma, eps, cand);
                if (val > best) {
                    best = val;
                    u = cand;
                    improved = true;
                }
            }
        }
        if (!improved) step *= 0.5;
    }
    return u;
}

}  // namespace

RademacherEstimate adv_complexity_regression_exact_small(const DesignMatrix& X,
                                                         const HypothesisClass& H,
                                                         const AdversaryBudget& eps,
                                                         int sphere_grid) {
    H.validate();
    X.validate();
    if (H.kind != ModelKind::kLinearRegression)
        throw validation_error("adv_complexity_regression_exact_small requires a linear-regression class");
    if (H.p.p != 2.0)
        throw validation_error("adversarial regression enumeration requires p = 2");
    if (X.d() > 3) throw validation_error("adversarial regression enumeration requires d <= 3");
    require_exactable(X);

    auto dirs = unit_directions(X.d(), sphere_grid);
    const std::size_t n = X.n();

    // Precompute, per direction, the per-sample terms (eps ||u||_1 + |u.x_i|)^2.
    std::vector<Vec> csq(dirs.dirs.size(), Vec(n));
    for (std::size_t k = 0; k < dirs.dirs.size(); ++k) {
        const Vec& u = dirs.dirs[k];
        double ul1 = 0.0;
        for (double v : u) ul1 += std::abs(v);
        for (std::size_t i = 0; i < n; ++i) {
            double t = eps.epsilon * ul1 + std::abs(dot(X.X.row(i), u));
            csq[k][i] = t * t;
        }
    }

    const double radius_sq = 4.0 * H.W * H.W;  // degree-2 homogeneous, radius 2W
    const double step = X.d() == 2 ? 2.0 * M_PI / static_cast<double>(dirs.dirs.size()) : 0.05;

    double value = enumerate_mean(X, EnumMode::kAll, [&](const std::vector<int>& sigma) {
        double best = 0.0;
        std::size_t best_k = 0;
        bool any = false;
        for (std::size_t k = 0; k < dirs.dirs.size(); ++k) {
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) acc += static_cast<double>(sigma[i]) * csq[k][i];
            acc /= static_cast<double>(n);
            if (!any || acc > best) {
                best = acc;
                best_k = k;
                any = true;
            }
        }
        if (best > 0.0 && X.d() > 1)
            refine_direction(X, sigma, eps.epsilon, dirs.dirs[best_k], step, best);
        return radius_sq * std::max(0.0, best);
    });

    RademacherEstimate est;
    est.value = value;
    est.method = EstimateMethod::kWitnessLower;  // sphere grid only bounds the sup from below
    est.samples = 1l << n;
    return est;
}

RademacherEstimate adv_upper_regression(const DesignMatrix& X, const HypothesisClass& H,
                                        const AdversaryBudget& eps, ConstantMode mode, double c) {
    H.validate();
    X.validate();
    if (H.kind != ModelKind::kLinearRegression)
        throw validation_error("adv_upper_regression requires a linear-regression class");
    const double n = static_cast<double>(X.n());
    const double d = static_cast<double>(X.d());
    const double e = eps.epsilon;

    double sum_norms = 0.0, sum_sq = 0.0;
    for (std::size_t i = 0; i < X.n(); ++i) {
        double nx = p_norm(X.row_vec(i), NormOrder(2.0));
        sum_norms += nx;
        double t = std::sqrt(d) * e + 2.0 * nx;
        sum_sq += t * t;
    }
    double explicit_gap = 4.0 * H.W * H.W / n * std::sqrt(d) * e *
                          (std::sqrt(d) * e + 2.0 / n * sum_norms +
                           std::sqrt(sum_sq) * std::sqrt(2.0 * d * std::log(6.0 * n))) *
                          p_factor_upper(H.p, X.d());
    double val = explicit_gap;
    if (mode == ConstantMode::kSimplified && c >= 0.0) {
        double rows = group_norm(X.X, NormOrder(2.0), NormOrder::inf());
        val = c * H.W * H.W * d * std::sqrt(std::log(n)) / std::sqrt(n) *
              (e * rows + std::sqrt(d) * e * e) * p_factor_upper(H.p, X.d());
    }
    return RademacherEstimate{val, 0.0, EstimateMethod::kAnalyticUpper, 0};
}

RademacherEstimate adv_complexity_classification_grid_small(const DesignMatrix& X,
                                                            const HypothesisClass& H,
                                                            const AdversaryBudget& eps,
                                                            int direction_grid, int delta_grid) {
    H.validate();
    X.validate();
    if (H.kind != ModelKind::kLinearClassification)
        throw validation_error("adv_complexity_classification_grid_small requires a linear-classification class");
    if (H.p.p != 2.0) throw validation_error("grid estimate requires p = 2");
    if (X.d() > 2) throw validation_error("grid estimate requires d <= 2");
    require_exactable(X);
    if (delta_grid < 3 || delta_grid % 2 == 0)
        throw validation_error("delta_grid must be odd and >= 3");

    const std::size_t n = X.n();
    const std::size_t d = X.d();
    auto dirs = unit_directions(d, direction_grid);
    const std::size_t G = dirs.dirs.size();

    // delta grid points
    std::vector<Vec> deltas;
    {
        Vec axis(delta_grid);
        int half = delta_grid / 2;
        for (int k = 0; k < delta_grid; ++k)
            axis[k] = eps.epsilon * static_cast<double>(k - half) / static_cast<double>(half);
        if (d == 1)
            for (double a : axis) deltas.push_back({a});
        else
            for (double a : axis)
                for (double b : axis) deltas.push_back({a, b});
    }
    const std::size_t K = deltas.size();

    // per direction: projections onto samples and grid deltas
    std::vector<Vec> proj_x(G, Vec(n)), proj_d(G, Vec(K));
    for (std::size_t g = 0; g < G; ++g) {
        for (std::size_t i = 0; i < n; ++i) proj_x[g][i] = dot(X.X.row(i), dirs.dirs[g]);
        for (std::size_t k = 0; k < K; ++k) proj_d[g][k] = dot(dirs.dirs[g], deltas[k]);
    }

    // inner minimum per (pair, sample), on unit directions
    std::vector<Vec> inner(G * G, Vec(n));
    for (std::size_t g1 = 0; g1 < G; ++g1) {
        for (std::size_t g2 = 0; g2 < G; ++g2) {
            Vec& m = inner[g1 * G + g2];
            for (std::size_t i = 0; i < n; ++i) {
                double a = proj_x[g1][i], b = proj_x[g2][i];
                double best = a * b;
                for (std::size_t k = 0; k < K; ++k) {
                    double v = (a + proj_d[g1][k]) * (b + proj_d[g2][k]);
                    if (v < best) best = v;
                }
                m[i] = best;
            }
        }
    }

    const double scale = H.W * H.W / static_cast<double>(n);
    double value = enumerate_mean(X, EnumMode::kAll, [&](const std::vector<int>& sigma) {
        double best = 0.0;  // pair w = w' = 0 is feasible
        for (std::size_t pq = 0; pq < G * G; ++pq) {
            const Vec& m = inner[pq];
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) acc += static_cast<double>(sigma[i]) * m[i];
            if (acc > best) best = acc;
        }
        return scale * best;
    });

    RademacherEstimate est;
    est.value = value;
    est.method = EstimateMethod::kWitnessLower;
    est.samples = 1l << n;
    return est;
}

RademacherEstimate nn_adv_upper(const DesignMatrix& X, const HypothesisClass& H,
                                const AdversaryBudget& eps, const NormOrder& q) {
    H.validate();
    X.validate();
    if (H.kind != ModelKind::kTwoLayerRelu)
        throw validation_error("nn_adv_upper requires a two-layer-relu class");
    NormOrder expected = H.p.dual();
    bool q_ok = (expected.is_inf() && q.is_inf()) ||
                (!expected.is_inf() && !q.is_inf() && std::abs(expected.p - q.p) <= 1e-9);
    if (!q_ok) throw validation_error("q must be the conjugate exponent of the class norm p");

    const double n = static_cast<double>(X.n());
    const double d = static_cast<double>(X.d());
    const double d2q = q.is_inf() ? 1.0 : std::pow(d, 2.0 / q.p);
    const double e2 = eps.epsilon * eps.epsilon;

    double sum_sq = 0.0, max_term = 0.0;
    for (std::size_t i = 0; i < X.n(); ++i) {
        double nx = p_norm(X.row_vec(i), q);
        double t = nx * nx + d2q * e2;
        sum_sq += t * t;
        max_term = std::max(max_term, t);
    }
    double m = static_cast<double>(H.m);
    double val = 2.0 / n * H.A * H.A * H.W * H.W *
                 (std::sqrt(sum_sq) * std::sqrt((1.0 + d) * 4.0 * m * std::log(3.0 * n)) +
                  4.0 * max_term);
    return RademacherEstimate{val, 0.0, EstimateMethod::kAnalyticUpper, 0};
}

namespace {

inline int sign_plus(double t) { return t >= 0.0 ? 1 : -1; }

// max c.delta over the eps box subject to w.delta >= bound; -inf if the
// constraint cuts off the whole box.  Fractional-knapsack greedy: start at
// the unconstrained corner and buy w-gain at the cheapest c-cost.
double box_lp_max(const Vec& c, const Vec& w, double bound, double eps) {
    const std::size_t d = c.size();
    double value = 0.0, attained = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        double dj = c[j] > 0.0 ? eps : (c[j] < 0.0 ? -eps : (w[j] > 0.0 ? eps : -eps));
        value += c[j] * dj;
        attained += w[j] * dj;
    }
    if (attained >= bound) return value;

    std::vector<std::pair<double, std::size_t>> moves;  // (cost per unit gain, coord)
    for (std::size_t j = 0; j < d; ++j) {
        if (w[j] == 0.0) continue;
        double dj = c[j] > 0.0 ? eps : (c[j] < 0.0 ? -eps : (w[j] > 0.0 ? eps : -eps));
        double gain = eps * std::abs(w[j]) - w[j] * dj;  // moving dj to eps*sgn(w_j)
        if (gain <= 0.0) continue;
        moves.emplace_back(std::abs(c[j]) / std::abs(w[j]), j);
    }
    std::sort(moves.begin(), moves.end());
    double deficit = bound - attained;
    for (const auto& [ratio, j] : moves) {
        double dj = c[j] > 0.0 ? eps : -eps;
        double gain = eps * std::abs(w[j]) - w[j] * dj;
        double take = std::min(gain, deficit);
        value -= ratio * take;
        deficit -= take;
        if (deficit <= 0.0) return value;
    }
    return -kInf;
}

// Can some feasible delta make sign_plus(w.(x+delta)) != sign_plus(w2.(x+delta))?
// Exact for linear scores: check both disagreement quadrants with a box LP.
bool disagreement_achievable(double a, double b, const Vec& w, const Vec& w2, double eps) {
    if (sign_plus(a) != sign_plus(b)) return true;
    if (eps <= 0.0) return false;
    Vec neg_w2(w2), neg_w(w);
    for (auto& v : neg_w2) v = -v;
    for (auto& v : neg_w) v = -v;
    // s >= 0 and s2 < 0: maximize -s2 subject to s >= 0
    if (-b + box_lp_max(neg_w2, w, -a, eps) > 0.0) return true;
    // s2 >= 0 and s < 0
    if (-a + box_lp_max(neg_w, w2, -b, eps) > 0.0) return true;
    return false;
}

}  // namespace

ZeroOneComparison zero_one_adv_vs_std_check(const DesignMatrix& X, const HypothesisClass& H,
                                            const AdversaryBudget& eps, int w_grid) {
    H.validate();
    X.validate();
    if (X.d() > 2) throw validation_error("zero-one comparison requires d <= 2");
    if (X.n() > 10) throw validation_error("zero-one comparison requires n <= 10");

    const std::size_t n = X.n();
    const std::size_t d = X.d();
    auto dirs = unit_directions(d, w_grid);
    const std::size_t G = dirs.dirs.size();

    std::vector<Vec> proj_x(G, Vec(n));
    for (std::size_t g = 0; g < G; ++g)
        for (std::size_t i = 0; i < n; ++i) proj_x[g][i] = dot(X.X.row(i), dirs.dirs[g]);

    // Achievable 0/1 loss vectors over all hypothesis pairs, deduplicated.
    std::set<std::uint32_t> std_masks, adv_masks;
    std_masks.insert(0);  // w = w'
    adv_masks.insert(0);
    for (std::size_t g1 = 0; g1 < G; ++g1) {
        for (std::size_t g2 = 0; g2 < G; ++g2) {
            std::uint32_t um = 0, vm = 0;
            for (std::size_t i = 0; i < n; ++i) {
                double a = proj_x[g1][i], b = proj_x[g2][i];
                if (sign_plus(a) != sign_plus(b)) um |= 1u << i;
                if (disagreement_achievable(a, b, dirs.dirs[g1], dirs.dirs[g2], eps.epsilon))
                    vm |= 1u << i;
            }
            std_masks.insert(um);
            adv_masks.insert(vm);
        }
    }

    auto complexity = [&](const std::set<std::uint32_t>& masks) {
        std::vector<std::uint32_t> ms(masks.begin(), masks.end());
        return enumerate_mean(X, EnumMode::kAll, [&](const std::vector<int>& sigma) {
            double best = 0.0;
            for (std::uint32_t m : ms) {
                double acc = 0.0;
                for (std::size_t i = 0; i < n; ++i)
                    if (m & (1u << i)) acc += static_cast<double>(sigma[i]);
                if (acc > best) best = acc;
            }
            return best / static_cast<double>(n);
        });
    };

    ZeroOneComparison cmp;
    cmp.standard_value = complexity(std_masks);
    cmp.adversarial_value = complexity(adv_masks);
    cmp.slack = 1e-3 * (1.0 + cmp.standard_value);
    cmp.adversarial_dominates = cmp.adversarial_value >= cmp.standard_value - cmp.slack;
    return cmp;
}

}  // namespace hdh
