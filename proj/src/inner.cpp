#include "hdh/inner.hpp"

#include <algorithm>

namespace hdh {

namespace {

double l1(const Vec& v) {
    double s = 0.0;
    for (double x : v) s += std::abs(x);
    return s;
}

}  // namespace

InnerSolution max_dot_over_box(const Vec& z, const AdversaryBudget& eps) {
    InnerSolution sol;
    sol.argpoint = sign_vector(z);
    for (auto& c : sol.argpoint) c *= eps.epsilon;
    sol.optimum = eps.epsilon * l1(z);
    sol.attained = true;
    return sol;
}

InnerSolution min_dot_over_box(const Vec& z, const AdversaryBudget& eps) {
    InnerSolution sol = max_dot_over_box(z, eps);
    sol.optimum = -sol.optimum;
    for (auto& c : sol.argpoint) c = -c;
    return sol;
}

InnerSolution max_shifted_square(const Vec& w, double a, const AdversaryBudget& eps) {
    InnerSolution sol;
    double sa = a >= 0.0 ? 1.0 : -1.0;  // sign(0) -> +1, documented tie-break
    sol.argpoint = sign_vector(w);
    for (auto& c : sol.argpoint) c *= eps.epsilon * sa;
    double t = eps.epsilon * l1(w) + std::abs(a);
    sol.optimum = t * t;
    sol.attained = true;
    return sol;
}

InnerSolution min_shifted_square(const Vec& w, double a, const AdversaryBudget& eps) {
    InnerSolution sol;
    sol.argpoint.assign(w.size(), 0.0);
    sol.attained = true;
    if (a == 0.0) {
        sol.optimum = 0.0;
        return sol;
    }
    double wl1 = l1(w);
    double scale = wl1 > 0.0 ? std::min(1.0 / wl1, eps.epsilon / std::abs(a)) : 0.0;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i] != 0.0) sol.argpoint[i] = -a * (w[i] / std::abs(w[i])) * scale;
    double r = 1.0 - std::min(1.0, eps.epsilon * wl1 / std::abs(a));
    sol.optimum = a * a * r * r;
    return sol;
}

namespace {

template <typename Better>
InnerSolution grid_search(const std::function<double(const Vec&)>& objective, std::size_t d,
                          const AdversaryBudget& eps, int points_per_axis, Better better) {
    if (d == 0 || d > 3) throw validation_error("grid oracle supports 1 <= d <= 3");
    if (points_per_axis < 3 || points_per_axis % 2 == 0)
        throw validation_error("points_per_axis must be odd and >= 3");

    Vec axis(points_per_axis);
    const int half = points_per_axis / 2;
    for (int k = 0; k < points_per_axis; ++k)
        axis[k] = eps.epsilon * static_cast<double>(k - half) / static_cast<double>(half);
    axis[0] = -eps.epsilon;  // exact endpoints and center
    axis[half] = 0.0;
    axis[points_per_axis - 1] = eps.epsilon;

    InnerSolution best;
    best.attained = false;
    bool first = true;
    Vec delta(d, 0.0);

    const int n1 = points_per_axis;
    const int n2 = d >= 2 ? points_per_axis : 1;
    const int n3 = d >= 3 ? points_per_axis : 1;
    for (int i3 = 0; i3 < n3; ++i3) {
        if (d >= 3) delta[2] = axis[i3];
        for (int i2 = 0; i2 < n2; ++i2) {
            if (d >= 2) delta[1] = axis[i2];
            for (int i1 = 0; i1 < n1; ++i1) {
                delta[0] = axis[i1];
                double val = objective(delta);
                if (first || better(val, best.optimum)) {
                    best.optimum = val;
                    best.argpoint = delta;
                    first = false;
                }
            }
        }
    }
    return best;
}

}  // namespace

InnerSolution grid_minimize(const std::function<double(const Vec&)>& objective, std::size_t d,
                            const AdversaryBudget& eps, int points_per_axis) {
    return grid_search(objective, d, eps, points_per_axis,
                       [](double a, double b) { return a < b; });
}

InnerSolution grid_maximize(const std::function<double(const Vec&)>& objective, std::size_t d,
                            const AdversaryBudget& eps, int points_per_axis) {
    return grid_search(objective, d, eps, points_per_axis,
                       [](double a, double b) { return a > b; });
}

InnerSolution min_bilinear_over_box(const Vec& w, const Vec& w2, const Vec& x,
                                    const AdversaryBudget& eps, BilinearMode mode,
                                    int points_per_axis) {
    if (w.size() != w2.size() || w.size() != x.size())
        throw validation_error("min_bilinear_over_box: dimension mismatch");
    const std::size_t d = w.size();

    if (mode == BilinearMode::kExactSmall) {
        if (d > 3) throw validation_error("exact bilinear minimization requires d <= 3");
        auto objective = [&](const Vec& delta) {
            double a = 0.0, b = 0.0;
            for (std::size_t i = 0; i < d; ++i) {
                a += w[i] * (x[i] + delta[i]);
                b += w2[i] * (x[i] + delta[i]);
            }
            return a * b;
        };
        return grid_minimize(objective, d, eps, points_per_axis);
    }

    // Certified lower bound: split into the clean value, the linear term
    // minimized in closed form, and the pure quadratic term bounded by
    // -eps^2 ||w||_1 ||w2||_1.
    double wx = dot(w, x);
    double w2x = dot(w2, x);
    Vec mx(d, 0.0);  // (w w2^T + w2 w^T) x
    for (std::size_t i = 0; i < d; ++i) mx[i] = w[i] * w2x + w2[i] * wx;
    double lin = 0.0;
    for (double v : mx) lin += std::abs(v);
    double wl1 = 0.0, w2l1 = 0.0;
    for (double v : w) wl1 += std::abs(v);
    for (double v : w2) w2l1 += std::abs(v);

    InnerSolution sol;
    sol.optimum = wx * w2x - eps.epsilon * lin - eps.epsilon * eps.epsilon * wl1 * w2l1;
    sol.argpoint.assign(d, 0.0);
    sol.attained = false;
    return sol;
}

}  // namespace hdh
