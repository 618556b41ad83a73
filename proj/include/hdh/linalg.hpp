#pragma once

#include <optional>
#include <string>

#include "hdh/common.hpp"

namespace hdh {

// Extended norm exponent p in [1, +inf].
struct NormOrder {
    double p = 2.0;

    NormOrder() = default;
    explicit NormOrder(double value) : p(value) {
        if (!(p >= 1.0))
            throw validation_error("norm order must satisfy p >= 1 (got " + std::to_string(p) + ")");
    }

    static NormOrder inf() { return NormOrder(kInf); }
    bool is_inf() const { return std::isinf(p); }

    // Conjugate exponent: 1/p + 1/p* = 1, with dual(1) = inf and dual(inf) = 1.
    NormOrder dual() const {
        if (is_inf()) return NormOrder(1.0);
        if (p == 1.0) return NormOrder::inf();
        return NormOrder(p / (p - 1.0));
    }
};

// n x d sample matrix, rows are samples, with optional +/-1 labels.
struct DesignMatrix {
    Mat X;
    std::optional<std::vector<int>> labels;

    std::size_t n() const { return X.rows(); }
    std::size_t d() const { return X.cols(); }

    void validate() const;

    Vec row_vec(std::size_t i) const {
        return Vec(X.row(i), X.row(i) + d());
    }
};

// CSV with a required header; feature columns first, optional final column
// named "label" holding -1/+1.
DesignMatrix load_design_csv(const std::string& path);
void save_design_csv(const DesignMatrix& m, const std::string& path);

double p_norm(const Vec& v, const NormOrder& p);

// Row-wise group norm of a data matrix: inner norm over each row x_i, outer
// norm over the resulting length-n vector.  group_norm(X, q, inf) is the
// largest q-norm among the rows.
double group_norm(const Mat& M, const NormOrder& inner, const NormOrder& outer);

// Componentwise sign with sign(0) = 0.
Vec sign_vector(const Vec& v);

// Largest absolute eigenvalue of a symmetric matrix via power iteration on
// M^2.  Deterministic: start vector (1,...,1)/sqrt(d), one orthogonal restart
// if the iterate stagnates, then failure.  Rejects non-symmetric input.
double spectral_norm_symmetric(const Mat& M, double tol = 1e-10);

// Largest (signed) eigenvalue, computed by shifting M to a PSD matrix and
// reusing the power kernel.
double lambda_max_symmetric(const Mat& M, double tol = 1e-10);

// S(sigma) = sum_i sigma_i x_i x_i^T for rows x_i of X.
Mat sign_weighted_covariance(const DesignMatrix& X, const std::vector<int>& sigma);

// Empirical second-moment matrix (1/n) sum_i x_i x_i^T.
Mat second_moment(const DesignMatrix& X);

}  // namespace hdh
