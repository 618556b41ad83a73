#include "hdh/transfer.hpp"

#include <algorithm>
#include <map>

namespace hdh {

namespace {

constexpr double kSimplexTol = 1e-9;
constexpr double kTieBand = 1e-12;

void check_simplex(const Vec& v, const char* name) {
    double s = 0.0;
    for (double x : v) {
        if (!(x >= 0.0)) throw validation_error(std::string(name) + " must be entrywise nonnegative");
        s += x;
    }
    if (std::abs(s - 1.0) > kSimplexTol)
        throw validation_error(std::string(name) + " must sum to 1 within 1e-9 (got " +
                               std::to_string(s) + ")");
}

// |p . witness - p' . ell| summed in index order; the single evaluation both
// solvers report, so cross-solver equality is equality of witnesses.
double canonical_value(const SubsetSumInstance& inst, const std::vector<std::uint8_t>& witness) {
    double a = 0.0, b = 0.0;
    for (std::size_t i = 0; i < inst.p.size(); ++i) {
        if (witness[i]) a += inst.p[i];
        if (inst.ell[i]) b += inst.p_prime[i];
    }
    return std::abs(a - b);
}

std::vector<std::uint8_t> witness_from_mask(const SubsetSumInstance& inst, std::uint64_t mask) {
    std::vector<std::uint8_t> w(inst.ell);
    const std::size_t k = inst.free_set.size();
    for (std::size_t j = 0; j < k; ++j)
        w[inst.free_set[j]] = (mask >> (k - 1 - j)) & 1u ? 1 : 0;  // free[0] most significant
    return w;
}

SubsetSumSolution pick_best(const SubsetSumInstance& inst,
                            const std::vector<std::uint64_t>& candidate_masks) {
    SubsetSumSolution best;
    bool first = true;
    for (std::uint64_t mask : candidate_masks) {
        auto w = witness_from_mask(inst, mask);
        double val = canonical_value(inst, w);
        if (first || val < best.optimum ||
            (val == best.optimum && std::lexicographical_compare(w.begin(), w.end(),
                                                                 best.witness.begin(),
                                                                 best.witness.end()))) {
            best.optimum = val;
            best.witness = std::move(w);
            first = false;
        }
    }
    return best;
}

}  // namespace

void SubsetSumInstance::validate() const {
    const std::size_t N = p.size();
    if (N == 0) throw validation_error("subset-sum instance must be nonempty");
    if (p_prime.size() != N || ell.size() != N)
        throw validation_error("p, p_prime and ell must share the same length");
    check_simplex(p, "p");
    check_simplex(p_prime, "p_prime");
    for (auto b : ell)
        if (b != 0 && b != 1) throw validation_error("ell entries must be 0 or 1");
    std::size_t prev = 0;
    bool started = false;
    for (std::size_t i : free_set) {
        if (i >= N) throw validation_error("free index out of range");
        if (started && i <= prev) throw validation_error("free indices must be strictly increasing");
        prev = i;
        started = true;
    }
}

void SubsetSumInstance::renormalize() {
    for (Vec* v : {&p, &p_prime}) {
        double s = 0.0;
        for (double x : *v) {
            if (!(x >= 0.0)) throw validation_error("masses must be nonnegative");
            s += x;
        }
        if (s <= 0.0) throw validation_error("masses must have positive total");
        for (double& x : *v) x /= s;
    }
}

SubsetSumInstance SubsetSumInstance::from_json(const nlohmann::json& j, bool renormalize) {
    SubsetSumInstance inst;
    inst.p = j.at("p").get<Vec>();
    inst.p_prime = j.at("p_prime").get<Vec>();
    for (int b : j.at("ell").get<std::vector<int>>()) {
        if (b != 0 && b != 1) throw validation_error("ell entries must be 0 or 1");
        inst.ell.push_back(static_cast<std::uint8_t>(b));
    }
    for (long i : j.at("free").get<std::vector<long>>()) {
        if (i < 1) throw validation_error("free indices are 1-based");
        inst.free_set.push_back(static_cast<std::size_t>(i - 1));
    }
    std::sort(inst.free_set.begin(), inst.free_set.end());
    if (renormalize) inst.renormalize();
    inst.validate();
    return inst;
}

nlohmann::json SubsetSumInstance::to_json() const {
    std::vector<long> free1;
    for (std::size_t i : free_set) free1.push_back(static_cast<long>(i + 1));
    std::vector<int> ell_int(ell.begin(), ell.end());
    return nlohmann::json{{"p", p}, {"p_prime", p_prime}, {"ell", ell_int}, {"free", free1}};
}

SubsetSumSolution vstar_bruteforce(const SubsetSumInstance& inst) {
    inst.validate();
    const std::size_t k = inst.free_set.size();
    if (k > 24) throw validation_error("brute-force subset sum limited to 24 free indices");

    double base = 0.0, target = 0.0;
    std::vector<bool> is_free(inst.p.size(), false);
    for (std::size_t i : inst.free_set) is_free[i] = true;
    for (std::size_t i = 0; i < inst.p.size(); ++i) {
        if (!is_free[i] && inst.ell[i]) base += inst.p[i];
        if (inst.ell[i]) target += inst.p_prime[i];
    }

    // First pass: approximate values, keeping the lex-first mask per distinct
    // value inside the running tie band.
    std::map<double, std::uint64_t> near_best;
    double min_val = kInf;
    const std::uint64_t total = 1ull << k;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        double s = base;
        for (std::size_t j = 0; j < k; ++j)
            if ((mask >> (k - 1 - j)) & 1u) s += inst.p[inst.free_set[j]];
        double val = std::abs(s - target);
        if (val <= min_val + kTieBand) {
            near_best.emplace(val, mask);  // keeps the first (lex-min) mask per value
            if (val < min_val) {
                min_val = val;
                while (!near_best.empty() && near_best.rbegin()->first > min_val + kTieBand)
                    near_best.erase(std::prev(near_best.end()));
            }
        }
    }

    std::vector<std::uint64_t> candidates;
    for (const auto& [val, mask] : near_best) candidates.push_back(mask);
    return pick_best(inst, candidates);
}

SubsetSumSolution vstar_meet_in_middle(const SubsetSumInstance& inst) {
    inst.validate();
    const std::size_t k = inst.free_set.size();
    if (k > 48) throw validation_error("meet-in-the-middle limited to 48 free indices");

    double base = 0.0, target = 0.0;
    std::vector<bool> is_free(inst.p.size(), false);
    for (std::size_t i : inst.free_set) is_free[i] = true;
    for (std::size_t i = 0; i < inst.p.size(); ++i) {
        if (!is_free[i] && inst.ell[i]) base += inst.p[i];
        if (inst.ell[i]) target += inst.p_prime[i];
    }

    const std::size_t ka = k / 2;        // first half: more significant bits
    const std::size_t kb = k - ka;
    auto half_sums = [&](std::size_t offset, std::size_t count) {
        std::vector<std::pair<double, std::uint64_t>> sums;
        sums.reserve(1ull << count);
        for (std::uint64_t mask = 0; mask < (1ull << count); ++mask) {
            double s = 0.0;
            for (std::size_t j = 0; j < count; ++j)
                if ((mask >> (count - 1 - j)) & 1u) s += inst.p[inst.free_set[offset + j]];
            sums.emplace_back(s, mask);
        }
        return sums;
    };
    auto a_sums = half_sums(0, ka);
    auto b_sums = half_sums(ka, kb);
    std::sort(b_sums.begin(), b_sums.end());

    // Pass 1: locate the approximate minimum.
    double min_val = kInf;
    for (const auto& [sa, amask] : a_sums) {
        double want = target - base - sa;
        auto it = std::lower_bound(b_sums.begin(), b_sums.end(),
                                   std::make_pair(want, std::uint64_t{0}));
        for (auto probe : {it, it == b_sums.begin() ? b_sums.end() : std::prev(it)}) {
            if (probe == b_sums.end()) continue;
            min_val = std::min(min_val, std::abs(base + sa + probe->first - target));
        }
    }

    // Pass 2: collect every completion whose approximate value falls in the
    // tie band, then decide canonically.
    std::vector<std::uint64_t> candidates;
    for (const auto& [sa, amask] : a_sums) {
        double lo = target - base - sa - (min_val + kTieBand);
        double hi = target - base - sa + (min_val + kTieBand);
        auto first = std::lower_bound(b_sums.begin(), b_sums.end(),
                                      std::make_pair(lo, std::uint64_t{0}));
        for (auto it = first; it != b_sums.end() && it->first <= hi; ++it) {
            double val = std::abs(base + sa + it->first - target);
            if (val <= min_val + kTieBand)
                candidates.push_back((amask << kb) | it->second);
        }
    }
    return pick_best(inst, candidates);
}

std::vector<std::size_t> lambda_eps_set(const std::vector<Vec>& support, const Vec& w,
                                        const AdversaryBudget& eps) {
    bool all_zero = true;
    for (double c : w)
        if (c != 0.0) all_zero = false;
    if (all_zero) throw validation_error("lambda_eps_set: weight vector must be nonzero");
    double wl1 = 0.0;
    for (double c : w) wl1 += std::abs(c);
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < support.size(); ++i)
        if (std::abs(dot(w, support[i])) <= eps.epsilon * wl1) idx.push_back(i);
    return idx;
}

void DiscreteDomainPair::validate() const {
    const std::size_t N = support.size();
    if (N == 0) throw validation_error("discrete domain pair must have a nonempty support");
    if (mass_T.size() != N || mass_Tprime.size() != N || labels.size() != N)
        throw validation_error("masses and labels must match the support size");
    if (!support.empty()) {
        std::size_t d = support.front().size();
        for (const Vec& x : support)
            if (x.size() != d) throw validation_error("support points must share a dimension");
    }
    check_simplex(mass_T, "mass_T");
    check_simplex(mass_Tprime, "mass_Tprime");
    for (int y : labels)
        if (y != -1 && y != 1) throw validation_error("labels must be -1 or +1");
}

TransferBoundResult risk_transfer_bound(const DiscreteDomainPair& pair, const Vec& w,
                                        const AdversaryBudget& eps) {
    pair.validate();
    const std::size_t N = pair.support.size();
    if (N > 24) throw validation_error("risk transfer harness limited to 24 support points");

    double wl1 = 0.0;
    for (double c : w) wl1 += std::abs(c);
    if (wl1 == 0.0) throw validation_error("weight vector must be nonzero");

    TransferBoundResult res;
    SubsetSumInstance inst;
    inst.p = pair.mass_T;
    inst.p_prime = pair.mass_Tprime;
    inst.ell.resize(N);
    for (std::size_t i = 0; i < N; ++i) {
        double score = dot(w, pair.support[i]);
        int pred = score >= 0.0 ? 1 : -1;  // sign(0) -> +1
        inst.ell[i] = pred != pair.labels[i] ? 1 : 0;
        res.lhs += pair.mass_Tprime[i] * static_cast<double>(inst.ell[i]);
        bool robust_correct = static_cast<double>(pair.labels[i]) * score > eps.epsilon * wl1;
        res.robust_risk += pair.mass_T[i] * (robust_correct ? 0.0 : 1.0);
    }
    res.lambda_set = lambda_eps_set(pair.support, w, eps);
    inst.free_set = res.lambda_set;
    res.vstar = vstar_meet_in_middle(inst).optimum;
    res.rhs = res.robust_risk + res.vstar;
    res.holds = res.lhs <= res.rhs + 1e-12;
    return res;
}

ErmComparison erm_vs_robust_comparison(const DiscreteDomainPair& pair, const Vec& w,
                                       const AdversaryBudget& eps) {
    ErmComparison cmp;
    cmp.robust = risk_transfer_bound(pair, w, eps);
    cmp.erm = risk_transfer_bound(pair, w, AdversaryBudget(0.0));
    cmp.vstar_ordered = cmp.robust.vstar <= cmp.erm.vstar;
    return cmp;
}

}  // namespace hdh
