#include "hdh/linalg.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace hdh {

void DesignMatrix::validate() const {
    if (n() == 0 || d() == 0) throw validation_error("design matrix must have n >= 1 and d >= 1");
    for (double v : X.data())
        if (!std::isfinite(v)) throw validation_error("design matrix entries must be finite");
    if (labels) {
        if (labels->size() != n())
            throw validation_error("label count does not match sample count");
        for (int y : *labels)
            if (y != -1 && y != 1) throw validation_error("labels must be -1 or +1");
    }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) {
        // trim surrounding whitespace
        auto b = field.find_first_not_of(" \t\r");
        auto e = field.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? std::string() : field.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

double parse_double(const std::string& s, const std::string& context) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw validation_error("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw validation_error("cannot parse numeric value '" + s + "' in " + context);
    }
}

}  // namespace

DesignMatrix load_design_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open dataset file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw validation_error("dataset file is empty: " + path);
    auto header = split_csv_line(line);
    if (header.empty()) throw validation_error("dataset header row is empty: " + path);

    bool has_label = header.back() == "label";
    std::size_t d = header.size() - (has_label ? 1 : 0);
    if (d == 0) throw validation_error("dataset has no feature columns: " + path);

    std::vector<double> values;
    std::vector<int> labels;
    std::size_t n = 0;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != header.size())
            throw validation_error(path + ":" + std::to_string(lineno) + ": expected " +
                                   std::to_string(header.size()) + " columns, got " +
                                   std::to_string(fields.size()));
        for (std::size_t j = 0; j < d; ++j)
            values.push_back(parse_double(fields[j], path + ":" + std::to_string(lineno)));
        if (has_label) {
            double y = parse_double(fields.back(), path + ":" + std::to_string(lineno));
            if (y != -1.0 && y != 1.0)
                throw validation_error(path + ":" + std::to_string(lineno) +
                                       ": label must be -1 or +1");
            labels.push_back(static_cast<int>(y));
        }
        ++n;
    }
    if (n == 0) throw validation_error("dataset has no data rows: " + path);

    DesignMatrix m;
    m.X = Mat(n, d);
    std::copy(values.begin(), values.end(), m.X.data().begin());
    if (has_label) m.labels = std::move(labels);
    m.validate();
    return m;
}

void save_design_csv(const DesignMatrix& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw validation_error("cannot write dataset file: " + path);
    for (std::size_t j = 0; j < m.d(); ++j) out << (j ? ",x" : "x") << j;
    if (m.labels) out << ",label";
    out << "\n";
    char buf[64];
    for (std::size_t i = 0; i < m.n(); ++i) {
        for (std::size_t j = 0; j < m.d(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", m.X(i, j));
            out << (j ? "," : "") << buf;
        }
        if (m.labels) out << "," << (*m.labels)[i];
        out << "\n";
    }
}

double p_norm(const Vec& v, const NormOrder& p) {
    if (v.empty()) throw validation_error("p_norm of empty vector");
    if (p.is_inf()) {
        double m = 0.0;
        for (double x : v) m = std::max(m, std::abs(x));
        return m;
    }
    if (p.p == 1.0) {
        double s = 0.0;
        for (double x : v) s += std::abs(x);
        return s;
    }
    if (p.p == 2.0) {
        double s = 0.0;
        for (double x : v) s += x * x;
        return std::sqrt(s);
    }
    double s = 0.0;
    for (double x : v) s += std::pow(std::abs(x), p.p);
    return std::pow(s, 1.0 / p.p);
}

double group_norm(const Mat& M, const NormOrder& inner, const NormOrder& outer) {
    if (M.rows() == 0 || M.cols() == 0) throw validation_error("group_norm of empty matrix");
    Vec row_norms(M.rows());
    for (std::size_t i = 0; i < M.rows(); ++i)
        row_norms[i] = p_norm(Vec(M.row(i), M.row(i) + M.cols()), inner);
    return p_norm(row_norms, outer);
}

Vec sign_vector(const Vec& v) {
    Vec s(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        s[i] = v[i] > 0.0 ? 1.0 : (v[i] < 0.0 ? -1.0 : 0.0);
    return s;
}

namespace {

void require_symmetric(const Mat& M) {
    if (M.rows() != M.cols()) throw validation_error("matrix must be square");
    for (std::size_t i = 0; i < M.rows(); ++i)
        for (std::size_t j = i + 1; j < M.cols(); ++j)
            if (std::abs(M(i, j) - M(j, i)) > 1e-12)
                throw validation_error("matrix is not symmetric within 1e-12");
}

Vec matvec(const Mat& M, const Vec& v) {
    Vec out(M.rows(), 0.0);
    for (std::size_t i = 0; i < M.rows(); ++i) out[i] = dot(M.row(i), v);
    return out;
}

double norm2(const Vec& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

}  // namespace

namespace {

// One power-iteration run on M^2 from a fixed start.  Returns the Rayleigh
// quotient of M^2 (i.e. lambda_max(M)^2) once the eigen-residual drops below
// tol, or a negative value if the iteration budget runs out first.  The
// residual test certifies closeness to a true eigenvalue, so a slowly
// converging run can never stop on a wrong value.
double power_run_m2(const Mat& M, Vec v, double tol, std::size_t max_iter) {
    const std::size_t d = M.rows();
    bool restarted = false;
    for (std::size_t it = 0; it < max_iter; ++it) {
        Vec mv = matvec(M, v);
        Vec m2v = matvec(M, mv);
        double rho = dot(v, m2v);
        double res = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            double r = m2v[i] - rho * v[i];
            res += r * r;
        }
        if (std::sqrt(res) <= tol * std::max(1.0, rho)) return rho;

        double nrm = norm2(m2v);
        if (nrm == 0.0) {
            // landed in the kernel of M^2; one orthogonal restart
            if (restarted) return -1.0;
            restarted = true;
            std::size_t k = 0;
            for (std::size_t i = 1; i < d; ++i)
                if (std::abs(v[i]) < std::abs(v[k])) k = i;
            Vec u(d, 0.0);
            u[k] = 1.0;
            double proj = dot(u, v);
            for (std::size_t i = 0; i < d; ++i) u[i] -= proj * v[i];
            double un = norm2(u);
            if (un == 0.0) return -1.0;
            for (auto& x : u) x /= un;
            v = u;
            continue;
        }
        for (std::size_t i = 0; i < d; ++i) v[i] = m2v[i] / nrm;
    }
    return -1.0;
}

// Deterministic cyclic Jacobi completion for spectra the power iteration
// cannot separate within its budget (near-equal eigenvalue magnitudes).
double jacobi_spectral(Mat A) {
    const std::size_t n = A.rows();
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += A(p, q) * A(p, q);
        if (off < 1e-28) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (A(p, q) == 0.0) continue;
                double theta = (A(q, q) - A(p, p)) / (2.0 * A(p, q));
                double t = (theta >= 0.0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    double akp = A(k, p), akq = A(k, q);
                    A(k, p) = c * akp - s * akq;
                    A(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double apk = A(p, k), aqk = A(q, k);
                    A(p, k) = c * apk - s * aqk;
                    A(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(A(i, i)));
    return m;
}

}  // namespace

double spectral_norm_symmetric(const Mat& M, double tol) {
    require_symmetric(M);
    if (!(tol > 0.0)) throw validation_error("tolerance must be positive");
    const std::size_t d = M.rows();

    double frob = 0.0;
    for (double x : M.data()) frob += x * x;
    if (frob == 0.0) return 0.0;

    const std::size_t max_iter =
        static_cast<std::size_t>(10.0 * static_cast<double>(d) *
                                 std::log(static_cast<double>(d) + 2.0)) + 200;

    Vec v0(d, 1.0 / std::sqrt(static_cast<double>(d)));
    double rho1 = power_run_m2(M, v0, tol, max_iter);

    // second deterministic start; guards against a start vector that happens
    // to be orthogonal to the top eigenspace
    Vec v1(d, 0.0);
    for (std::size_t i = 0; i < d; ++i) v1[i] = (i % 2 == 0 ? 1.0 : -1.0);
    if (d == 1) v1[0] = 1.0;
    double n1 = norm2(v1);
    for (auto& x : v1) x /= n1;
    double rho2 = d > 1 ? power_run_m2(M, v1, tol, max_iter) : rho1;

    if (rho1 < 0.0 || rho2 < 0.0) return jacobi_spectral(M);
    return std::sqrt(std::max(rho1, rho2));
}

double lambda_max_symmetric(const Mat& M, double tol) {
    double s = spectral_norm_symmetric(M, tol);
    if (s == 0.0) return 0.0;
    Mat shifted = M;
    for (std::size_t i = 0; i < M.rows(); ++i) shifted(i, i) += s;
    // shifted is PSD with top eigenvalue lambda_max + s
    return spectral_norm_symmetric(shifted, tol) - s;
}

Mat sign_weighted_covariance(const DesignMatrix& X, const std::vector<int>& sigma) {
    if (sigma.size() != X.n()) throw validation_error("sigma length must equal sample count");
    const std::size_t d = X.d();
    Mat S(d, d, 0.0);
    for (std::size_t i = 0; i < X.n(); ++i) {
        const double* x = X.X.row(i);
        double s = static_cast<double>(sigma[i]);
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b) S(a, b) += s * x[a] * x[b];
    }
    return S;
}

Mat second_moment(const DesignMatrix& X) {
    const std::size_t d = X.d();
    Mat C(d, d, 0.0);
    for (std::size_t i = 0; i < X.n(); ++i) {
        const double* x = X.X.row(i);
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b) C(a, b) += x[a] * x[b];
    }
    double inv = 1.0 / static_cast<double>(X.n());
    for (auto& v : C.data()) v *= inv;
    return C;
}

}  // namespace hdh
