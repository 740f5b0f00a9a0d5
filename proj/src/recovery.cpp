#include "recovery.hpp"

#include <algorithm>

#include "errors.hpp"

namespace strelay {

std::int64_t kappa(const CodeParams& p, FlagsView flags, int t0, int t) {
    const int got = flags.count_nonerased(t0 + 1, t);
    return p.layers_source * std::min<std::int64_t>(got, p.k_prime);
}

std::int64_t alpha_step(const CodeParams& p, FlagsView flags, int t0, int i,
                        std::int64_t sum_prev) {
    const int j = flags.count_erased(t0 + 1, t0 + i - 1);
    if (j >= p.n1_erasures)
        throw ChannelContractViolation("more than N1 erasures affect slot " +
                                       std::to_string(t0));
    const std::int64_t ell = p.ell_j[j];
    const std::int64_t kap = kappa(p, flags, t0, t0 + i);
    if (!flags.erased(t0 + i) || kap == p.k) return ell;
    return std::min(ell, kap - sum_prev);
}

std::vector<std::int64_t> alpha_schedule(const CodeParams& p, FlagsView flags, int t0,
                                         int imax) {
    std::vector<std::int64_t> alphas;
    alphas.reserve(imax);
    std::int64_t sum = 0;
    for (int i = 1; i <= imax; ++i) {
        alphas.push_back(alpha_step(p, flags, t0, i, sum));
        sum += alphas.back();
    }
    return alphas;
}

int nth_nonerased_after(FlagsView flags, int t0, int j, int limit) {
    int seen = 0;
    for (int t = t0 + 1; t <= limit; ++t) {
        if (!flags.erased(t) && ++seen == j) return t;
    }
    return -1;
}

DiagonalStep compute_diagonal_step(const Field& f, const CodeParams& p, const Matrix& gsrc,
                                   FlagsView flags, int t0, int j) {
    const int kp = p.k_prime;
    const int rp = p.n1_erasures;
    const int tau = t0 - kp + j;
    const int tp = nth_nonerased_after(flags, t0, j, t0 + p.delay);
    if (tp < 0) throw InternalFault("diagonal step requested before its observation slot");

    // Classify the diagonal's systematic coordinates. Negative slots carry
    // implicit zeros and drop out entirely.
    std::vector<int> unknowns, params_, knowns;
    for (int a = 0; a < kp; ++a) {
        const int u = tau + a;
        if (u < 0) continue;
        if (!flags.erased(u)) {
            if (u <= tp) knowns.push_back(a);
            continue;
        }
        if (u < t0)
            params_.push_back(a);
        else if (u <= tp)
            unknowns.push_back(a);
    }
    const int target = kp - j;
    if (std::find(unknowns.begin(), unknowns.end(), target) == unknowns.end())
        throw InternalFault("diagonal step target misclassified");

    // Observed parity coordinates of this diagonal up to tp; the window budget
    // guarantees exactly one per unknown.
    std::vector<int> obs;
    for (int b = 0; b < rp && static_cast<int>(obs.size()) < static_cast<int>(unknowns.size());
         ++b) {
        const int v = tau + kp + b;
        if (v > tp) break;
        if (!flags.erased(v)) obs.push_back(b);
    }
    if (obs.size() != unknowns.size())
        throw ChannelContractViolation("erasure pattern exceeds the first-link budget");

    const std::size_t m = unknowns.size();
    // Tokens: one per observed parity, one per known systematic symbol, one per
    // earlier-slot (interference) symbol.
    const std::size_t ntok = m + knowns.size() + params_.size();
    Matrix sys(m, m), rhs(m, ntok);
    for (std::size_t r = 0; r < m; ++r) {
        const int b = obs[r];
        for (std::size_t c = 0; c < m; ++c) sys.at(r, c) = gsrc.at(unknowns[c], kp + b);
        rhs.at(r, r) = 1;  // the observed parity value itself
        for (std::size_t c = 0; c < knowns.size(); ++c)
            rhs.at(r, m + c) = f.neg(gsrc.at(knowns[c], kp + b));
        for (std::size_t c = 0; c < params_.size(); ++c)
            rhs.at(r, m + knowns.size() + c) = f.neg(gsrc.at(params_[c], kp + b));
    }
    Matrix sol = solve_linear_system_multi(f, sys, rhs);

    const std::size_t trow =
        std::find(unknowns.begin(), unknowns.end(), target) - unknowns.begin();
    DiagonalStep step;
    step.target_local = target;
    for (std::size_t c = 0; c < m; ++c) {
        const Symbol coeff = sol.at(trow, c);
        if (coeff != 0)
            step.recipe.push_back({tau + kp + obs[c], CoordRole::Parity, obs[c], coeff});
    }
    for (std::size_t c = 0; c < knowns.size(); ++c) {
        const Symbol coeff = sol.at(trow, m + c);
        if (coeff != 0)
            step.recipe.push_back({tau + knowns[c], CoordRole::Systematic, knowns[c], coeff});
    }
    for (std::size_t c = 0; c < params_.size(); ++c) {
        // sol expresses s_target = recipe + coeff*w; the observable estimate is
        // the recipe alone, i.e. s_target - coeff*w, so the interference
        // coefficient in "value = target + sum coeff*earlier" is -coeff.
        const Symbol coeff = f.neg(sol.at(trow, m + knowns.size() + c));
        if (coeff != 0) step.interference.push_back({tau + params_[c], params_[c], coeff});
    }
    return step;
}

}  // namespace strelay
