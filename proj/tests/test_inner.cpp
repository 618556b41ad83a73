#include "doctest.h"

#include "hdh/inner.hpp"

using namespace hdh;

namespace {

double linf(const Vec& v) {
    double m = 0.0;
    for (double c : v) m = std::max(m, std::abs(c));
    return m;
}

}  // namespace

TEST_CASE("max/min dot over box") {
    auto sol = max_dot_over_box({1, -2}, AdversaryBudget(0.5));
    CHECK(sol.optimum == doctest::Approx(1.5));
    CHECK(sol.argpoint == Vec{0.5, -0.5});
    CHECK(max_dot_over_box({0, 0, 0}, AdversaryBudget(3.0)).optimum == 0.0);
    CHECK(max_dot_over_box({3}, AdversaryBudget(0.0)).optimum == 0.0);

    CHECK(min_dot_over_box({1, -2}, AdversaryBudget(0.5)).optimum == doctest::Approx(-1.5));
    CHECK(min_dot_over_box({1, 1, 1}, AdversaryBudget(1.0)).optimum == doctest::Approx(-3.0));

    Rng rng(3);
    for (int t = 0; t < 100; ++t) {
        Vec z(1 + t % 4);
        for (auto& x : z) x = rng.uniform(-2, 2);
        AdversaryBudget eps(rng.uniform(0, 1));
        CHECK(min_dot_over_box(z, eps).optimum ==
              doctest::Approx(-max_dot_over_box(z, eps).optimum));
    }
}

TEST_CASE("max_shifted_square closed form") {
    auto sol = max_shifted_square({1, 2}, 5.0, AdversaryBudget(1.0));
    CHECK(sol.optimum == doctest::Approx(64.0));  // (1*3 + 5)^2, grid-verified
    auto obj = [&](const Vec& d) {
        double t = d[0] * 1 + d[1] * 2 + 5.0;
        return t * t;
    };
    auto grid = grid_maximize(obj, 2, AdversaryBudget(1.0), 201);
    CHECK(grid.optimum <= sol.optimum + 1e-9);
    CHECK(obj(sol.argpoint) == doctest::Approx(sol.optimum));

    CHECK(max_shifted_square({1, 2}, 3.0, AdversaryBudget(0.0)).optimum == doctest::Approx(9.0));
    CHECK(max_shifted_square({0, 0}, 3.0, AdversaryBudget(1.0)).optimum == doctest::Approx(9.0));
}

TEST_CASE("min_shifted_square closed form") {
    auto sol = min_shifted_square({1, 2}, 5.0, AdversaryBudget(1.0));
    CHECK(sol.optimum == doctest::Approx(4.0));  // 25 (1 - 3/5)^2, grid-verified
    auto obj = [&](const Vec& d) {
        double t = d[0] * 1 + d[1] * 2 + 5.0;
        return t * t;
    };
    auto grid = grid_minimize(obj, 2, AdversaryBudget(1.0), 201);
    CHECK(grid.optimum >= sol.optimum - 1e-9);
    CHECK(obj(sol.argpoint) == doctest::Approx(sol.optimum));

    // eps ||w||_1 >= |a|  ->  zero is reachable
    CHECK(min_shifted_square({2, 2}, 1.0, AdversaryBudget(1.0)).optimum == doctest::Approx(0.0));
    CHECK(min_shifted_square({1, 2}, 5.0, AdversaryBudget(0.0)).optimum == doctest::Approx(25.0));
    CHECK(min_shifted_square({1, 1}, 0.0, AdversaryBudget(1.0)).optimum == 0.0);
}

TEST_CASE("shifted-square properties on random instances") {
    Rng rng(17);
    for (int t = 0; t < 500; ++t) {
        std::size_t d = 1 + t % 3;
        Vec w(d);
        for (auto& x : w) x = rng.uniform() < 0.15 ? 0.0 : rng.uniform(-2, 2);
        double a = rng.uniform() < 0.1 ? 0.0 : rng.uniform(-2, 2);
        AdversaryBudget eps(rng.uniform(0, 1));
        auto obj = [&](const Vec& delta) {
            double s = a;
            for (std::size_t i = 0; i < d; ++i) s += w[i] * delta[i];
            return s * s;
        };
        auto mx = max_shifted_square(w, a, eps);
        auto mn = min_shifted_square(w, a, eps);

        CHECK(linf(mx.argpoint) <= eps.epsilon + 1e-12);
        CHECK(linf(mn.argpoint) <= eps.epsilon + 1e-12);
        CHECK(std::abs(obj(mx.argpoint) - mx.optimum) <= 1e-12);
        CHECK(std::abs(obj(mn.argpoint) - mn.optimum) <= 1e-12);

        if (eps.epsilon > 0) {
            auto g_mx = grid_maximize(obj, d, eps, 41);
            auto g_mn = grid_minimize(obj, d, eps, 41);
            CHECK(g_mx.optimum <= mx.optimum + 1e-9);
            CHECK(g_mn.optimum >= mn.optimum - 1e-9);
        }

        // case split: minimum is zero exactly when eps ||w||_1 >= |a|
        double wl1 = 0;
        for (double c : w) wl1 += std::abs(c);
        if (eps.epsilon * wl1 >= std::abs(a))
            CHECK(mn.optimum == 0.0);
        else if (a != 0.0)
            CHECK(mn.optimum > 0.0);

        // monotone in the budget
        AdversaryBudget eps2(eps.epsilon + rng.uniform(0, 0.5));
        CHECK(max_shifted_square(w, a, eps2).optimum >= mx.optimum - 1e-12);
        CHECK(min_shifted_square(w, a, eps2).optimum <= mn.optimum + 1e-12);
    }
}

TEST_CASE("grid oracle basics") {
    auto obj1 = [](const Vec& d) {
        double t = d[0] + 5;
        return t * t;
    };
    auto res = grid_minimize(obj1, 1, AdversaryBudget(1.0), 201);
    CHECK(res.optimum == doctest::Approx(16.0));
    CHECK(res.argpoint[0] == doctest::Approx(-1.0));
    CHECK_FALSE(res.attained);

    auto constant = [](const Vec&) { return 7.0; };
    CHECK(grid_minimize(constant, 2, AdversaryBudget(0.5), 11).optimum == 7.0);

    CHECK_THROWS_AS(grid_minimize(constant, 4, AdversaryBudget(1.0), 11), validation_error);
    CHECK_THROWS_AS(grid_minimize(constant, 2, AdversaryBudget(1.0), 10), validation_error);
}

TEST_CASE("grid refinement self-consistency on bilinear objectives") {
    Rng rng(31);
    for (int t = 0; t < 20; ++t) {
        Vec w{rng.uniform(-1, 1), rng.uniform(-1, 1)};
        Vec w2{rng.uniform(-1, 1), rng.uniform(-1, 1)};
        Vec x{rng.uniform(-1, 1), rng.uniform(-1, 1)};
        auto obj = [&](const Vec& d) {
            return (w[0] * (x[0] + d[0]) + w[1] * (x[1] + d[1])) *
                   (w2[0] * (x[0] + d[0]) + w2[1] * (x[1] + d[1]));
        };
        AdversaryBudget eps(0.3);
        double coarse = grid_minimize(obj, 2, eps, 21).optimum;
        double fine = grid_minimize(obj, 2, eps, 201).optimum;
        CHECK(fine <= coarse + 1e-12);
        CHECK(coarse <= fine + 1e-6 * (1 + std::abs(fine)) + 0.05);
    }
}

TEST_CASE("min_bilinear_over_box") {
    Rng rng(41);
    for (int t = 0; t < 60; ++t) {
        std::size_t d = 1 + t % 2;
        Vec w(d), x(d);
        for (auto& c : w) c = rng.uniform(-1, 1);
        for (auto& c : x) c = rng.uniform(-1, 1);
        AdversaryBudget eps(0.3);

        // w2 = w collapses to the shifted-square minimum
        double a = dot(w, x);
        auto same = min_bilinear_over_box(w, w, x, eps, BilinearMode::kExactSmall, 201);
        double cf = min_shifted_square(w, a, eps).optimum;
        CHECK(same.optimum >= cf - 1e-9);
        CHECK(same.optimum <= cf + 1e-3 * (1 + cf) + 1e-4);
        CHECK(same.optimum >= -1e-12);

        // w2 = -w collapses to the negated maximum
        Vec wneg(w);
        for (auto& c : wneg) c = -c;
        auto neg = min_bilinear_over_box(w, wneg, x, eps, BilinearMode::kExactSmall, 201);
        double cf_neg = -max_shifted_square(w, a, eps).optimum;
        CHECK(neg.optimum >= cf_neg - 1e-9);

        // certified lower bound never exceeds the grid value
        Vec w2(d);
        for (auto& c : w2) c = rng.uniform(-1, 1);
        auto lower = min_bilinear_over_box(w, w2, x, eps, BilinearMode::kLowerBound);
        auto exact = min_bilinear_over_box(w, w2, x, eps, BilinearMode::kExactSmall, 201);
        CHECK(lower.optimum <= exact.optimum + 1e-9);
    }
    CHECK_THROWS_AS(min_bilinear_over_box({1, 0, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 0},
                                          AdversaryBudget(0.1), BilinearMode::kExactSmall),
                    validation_error);
}
