#pragma once

#include <functional>

#include "hdh/linalg.hpp"

namespace hdh {

// l-infinity perturbation radius, in feature units.
struct AdversaryBudget {
    double epsilon = 0.0;

    AdversaryBudget() = default;
    explicit AdversaryBudget(double eps) : epsilon(eps) {
        if (!(eps >= 0.0)) throw validation_error("adversary budget must be nonnegative");
    }
};

// Result of an inner box-constrained optimization.  `attained` is true when
// the argpoint provably achieves the optimum (closed forms); grid searches
// report attained = false since they only bound the true optimum.
struct InnerSolution {
    double optimum = 0.0;
    Vec argpoint;
    bool attained = false;
};

// max over ||delta||_inf <= eps of z^T delta  =  eps * ||z||_1.
InnerSolution max_dot_over_box(const Vec& z, const AdversaryBudget& eps);

// min over ||delta||_inf <= eps of z^T delta  =  -eps * ||z||_1.
InnerSolution min_dot_over_box(const Vec& z, const AdversaryBudget& eps);

// max over ||delta||_inf <= eps of (w^T delta + a)^2  =  (eps*||w||_1 + |a|)^2.
// Tie-break: sign(a) counts as +1 when a == 0 (affects the argpoint only).
InnerSolution max_shifted_square(const Vec& w, double a, const AdversaryBudget& eps);

// min over ||delta||_inf <= eps of (w^T delta + a)^2
//   = a^2 * (1 - min{1, eps*||w||_1 / |a|})^2,  and 0 when a == 0.
InnerSolution min_shifted_square(const Vec& w, double a, const AdversaryBudget& eps);

// Exhaustive evaluation of an arbitrary objective on the uniform grid over
// [-eps, eps]^d.  points_per_axis must be odd (>= 3) so corners and the
// center are on the grid.  d <= 3 only.
InnerSolution grid_minimize(const std::function<double(const Vec&)>& objective, std::size_t d,
                            const AdversaryBudget& eps, int points_per_axis = 201);
InnerSolution grid_maximize(const std::function<double(const Vec&)>& objective, std::size_t d,
                            const AdversaryBudget& eps, int points_per_axis = 201);

enum class BilinearMode { kExactSmall, kLowerBound };

// min over ||delta||_inf <= eps of w^T(x+delta) * w2^T(x+delta).
// kExactSmall runs the grid oracle (d <= 3); kLowerBound returns the
// certified value  w^T x * w2^T x - eps*||(w w2^T + w2 w^T) x||_1
//                  - eps^2 * ||w||_1 * ||w2||_1.
InnerSolution min_bilinear_over_box(const Vec& w, const Vec& w2, const Vec& x,
                                    const AdversaryBudget& eps, BilinearMode mode,
                                    int points_per_axis = 201);

}  // namespace hdh
