#pragma once

#include <cstdint>

#include "hdh/inner.hpp"
#include "hdh/linalg.hpp"

#include "json.hpp"

namespace hdh {

// Two simplex vectors, a binary loss vector and a free-index set; the free
// indices are the coordinates of ell that the optimizer may rewrite.
struct SubsetSumInstance {
    Vec p;
    Vec p_prime;
    std::vector<std::uint8_t> ell;
    std::vector<std::size_t> free_set;  // 0-based, strictly increasing

    void validate() const;

    // Rescales p and p_prime to sum exactly to 1.  Off by default everywhere:
    // silently repairing masses hides data bugs, so callers must opt in.
    void renormalize();

    // {"p":[...],"p_prime":[...],"ell":[...],"free":[...]} with 1-based "free".
    static SubsetSumInstance from_json(const nlohmann::json& j, bool renormalize = false);
    nlohmann::json to_json() const;
};

struct SubsetSumSolution {
    double optimum = 0.0;
    std::vector<std::uint8_t> witness;
};

// Exhaustive minimization of |p^T l~ - p_prime^T ell| over completions of the
// free coordinates; |free| <= 24.  Ties break toward the lexicographically
// smallest witness.
SubsetSumSolution vstar_bruteforce(const SubsetSumInstance& inst);

// Meet-in-the-middle solver for the same optimum; |free| <= 48.  Must agree
// with the brute force exactly (value and witness) wherever both run, so the
// final value is always re-evaluated canonically from the witness.
SubsetSumSolution vstar_meet_in_middle(const SubsetSumInstance& inst);

// Indices with |w^T x_i| <= eps * ||w||_1 (boundary inclusive): exactly the
// support points whose sign an l-infinity adversary can flip.
std::vector<std::size_t> lambda_eps_set(const std::vector<Vec>& support, const Vec& w,
                                        const AdversaryBudget& eps);

// Discrete domain pair sharing one labeling over a common support.
struct DiscreteDomainPair {
    std::vector<Vec> support;
    Vec mass_T;
    Vec mass_Tprime;
    std::vector<int> labels;  // +/-1 per support point

    void validate() const;
};

struct TransferBoundResult {
    double lhs = 0.0;          // standard risk on T'
    double robust_risk = 0.0;  // robust risk on T
    double vstar = 0.0;
    double rhs = 0.0;          // robust_risk + vstar
    bool holds = false;
    std::vector<std::size_t> lambda_set;
};

// R_T'(h_w, y) <= robust risk on T + V*(p', p, ell, Lambda_eps).
// Conventions: sign(0) counts as +1 for the clean prediction, and robust
// correctness requires the strict margin y * w^T x > eps * ||w||_1 so that
// boundary points (which lie in Lambda_eps) count as flippable.
TransferBoundResult risk_transfer_bound(const DiscreteDomainPair& pair, const Vec& w,
                                        const AdversaryBudget& eps);

struct ErmComparison {
    TransferBoundResult robust;  // at the given eps
    TransferBoundResult erm;     // at eps = 0
    bool vstar_ordered = false;  // V*(Lambda_eps) <= V*(Lambda_0)
};

// Bounds at eps and at 0; more free indices can only lower V*.
ErmComparison erm_vs_robust_comparison(const DiscreteDomainPair& pair, const Vec& w,
                                       const AdversaryBudget& eps);

}  // namespace hdh
