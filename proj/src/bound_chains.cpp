#include "skewinfo/bound_chains.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <string>

#include "skewinfo/error.hpp"

namespace skewinfo {

// ---------------------------------------------------------------------------
// Inputs

PairColumns pair_columns(const CommutatorFrame& e, const CommutatorFrame& f) {
    if (e.columns.size() != f.columns.size())
        throw Error(ErrorKind::DimensionMismatch, "frames have different column counts");
    PairColumns out;
    const std::size_t d = e.columns.size();
    out.e_norm_sq.resize(d);
    out.f_norm_sq.resize(d);
    out.overlap.resize(d);
    for (std::size_t k = 0; k < d; ++k) {
        out.e_norm_sq[k] = e.columns[k].squaredNorm();
        out.f_norm_sq[k] = f.columns[k].squaredNorm();
        out.overlap[k] = e.columns[k].dot(f.columns[k]);  // conjugates the left operand
    }
    return out;
}

ChainInput prepare_chain_input(const DensityMatrix& rho, const KrausChannel& n1,
                               const KrausChannel& n2, const FrameBasis& basis) {
    if (n1.dim() != rho.dim() || n2.dim() != rho.dim())
        throw Error(ErrorKind::DimensionMismatch, "channels and state must share a dimension");
    ChainInput in;
    in.dim = rho.dim();
    in.e_frames = channel_frames(rho, n1, basis);
    in.f_frames = channel_frames(rho, n2, basis);
    in.pairs.reserve(in.e_frames.size() * in.f_frames.size());
    for (const auto& e : in.e_frames)
        for (const auto& f : in.f_frames) in.pairs.push_back(pair_columns(e, f));
    return in;
}

PartialSplit partial_split(const CommutatorFrame& e, const CommutatorFrame& f, int m) {
    const int d = static_cast<int>(e.columns.size());
    if (m < 1 || m > d || f.columns.size() != e.columns.size())
        throw Error(ErrorKind::InvalidIndices, "split point " + std::to_string(m) +
                                                   " outside [1, " + std::to_string(d) + "]");
    PartialSplit s;
    s.m = m;
    for (int k = 0; k < d; ++k) {
        const auto& col = e.columns[static_cast<std::size_t>(k)];
        if (k < m) {
            s.head_norm_sq += col.squaredNorm();
            s.head_overlap += col.dot(f.columns[static_cast<std::size_t>(k)]);
        } else {
            s.tail_norm_sq += col.squaredNorm();
        }
    }
    return s;
}

// ---------------------------------------------------------------------------
// Readings and lattice

std::string_view to_string(SReading r) {
    switch (r) {
        case SReading::AsPrinted: return "as-printed";
        case SReading::ProductReading: return "product";
        case SReading::Lagrange: return "lagrange";
    }
    return "unknown";
}

SReading s_reading_from_string(std::string_view name) {
    for (SReading r : kAllReadings)
        if (to_string(r) == name) return r;
    throw Error(ErrorKind::ParseError,
                "unknown S reading \"" + std::string(name) +
                    "\" (expected as-printed, product or lagrange)");
}

std::vector<LatticeIndex> lattice_order(Eigen::Index d) {
    std::vector<LatticeIndex> order;
    for (int p = 2; p <= d; ++p)
        for (int q = 1; q < p; ++q) order.push_back({p, q});
    return order;
}

namespace {

std::size_t lattice_position(int p, int q) {
    return static_cast<std::size_t>((p - 1) * (p - 2) / 2 + (q - 1));
}

void require_lattice_index(Eigen::Index d, int p, int q) {
    if (!(1 <= q && q < p && p <= d)) {
        throw Error(ErrorKind::InvalidIndices, "(p, q) = (" + std::to_string(p) + ", " +
                                                   std::to_string(q) + ") violates 1 <= q < p <= " +
                                                   std::to_string(d));
    }
}

// I(ρ,E_i)·I(ρ,F_j) = ¼ |e|²|f|².
double pair_product(const PairColumns& c) {
    return 0.25 * compensated_sum(c.e_norm_sq) * compensated_sum(c.f_norm_sq);
}

// Increment of one resolution step with already-permuted indices P (p-side)
// and Q (q-side), zero-based.
double step_delta(const PairColumns& c, std::size_t big_p, std::size_t big_q, int p, int q,
                  SReading reading) {
    const Complex gp = c.overlap[big_p];
    const Complex gq = c.overlap[big_q];
    switch (reading) {
        case SReading::AsPrinted:
            return -(c.e_norm_sq[big_p] + c.f_norm_sq[big_q]) + std::norm(gp + gq);
        case SReading::ProductReading:
            return 0.25 * (std::norm(gp + gq) - c.e_norm_sq[big_p] * c.f_norm_sq[big_q]);
        case SReading::Lagrange: {
            const double cross = c.e_norm_sq[big_p] * c.f_norm_sq[big_q] +
                                 c.e_norm_sq[big_q] * c.f_norm_sq[big_p] -
                                 2.0 * (gp * std::conj(gq)).real();
            double delta = -0.25 * cross;
            if (q == p - 1)
                delta -= 0.25 * (c.e_norm_sq[big_p] * c.f_norm_sq[big_p] - std::norm(gp));
            if (p == 2 && q == 1)
                delta -= 0.25 * (c.e_norm_sq[big_q] * c.f_norm_sq[big_q] - std::norm(gq));
            return delta;
        }
    }
    return 0.0;
}

// Runs the recursion for one pair through `steps` lattice entries, reporting
// each running value to `visit(position, value)`.
template <class Visit>
void walk_pair(const PairColumns& c, const std::vector<LatticeIndex>& order,
               const Permutation& sigma, const Permutation& tau, std::size_t steps,
               SReading reading, Visit&& visit) {
    double s = pair_product(c);
    for (std::size_t pos = 0; pos < steps; ++pos) {
        const auto [p, q] = order[pos];
        s += step_delta(c, sigma[static_cast<std::size_t>(p - 1)],
                        tau[static_cast<std::size_t>(q - 1)], p, q, reading);
        visit(pos, s);
    }
}

double permuted_value(const ChainInput& in, const std::vector<LatticeIndex>& order,
                      const Permutation& sigma, const Permutation& tau, int p, int q,
                      SReading reading) {
    CompensatedSum total;
    if (p == 1 && q == 0) {
        for (const auto& c : in.pairs) total.add(pair_product(c));
        return total.value();
    }
    const std::size_t steps = lattice_position(p, q) + 1;
    for (const auto& c : in.pairs) {
        double last = 0.0;
        walk_pair(c, order, sigma, tau, steps, reading,
                  [&](std::size_t, double v) { last = v; });
        total.add(last);
    }
    return total.value();
}

double safe_two_sqrt(double x) { return 2.0 * std::sqrt(std::max(0.0, x)); }

}  // namespace

// ---------------------------------------------------------------------------
// Chains

double BoundChain::s_value(int p, int q) const {
    if (p == 1 && q == 0) return product;
    for (const auto& v : s_values)
        if (v.index.p == p && v.index.q == q) return v.value;
    throw Error(ErrorKind::InvalidIndices,
                "no lattice entry (" + std::to_string(p) + ", " + std::to_string(q) + ")");
}

double lemma1_bound(const ChainInput& in) {
    CompensatedSum total;
    for (const auto& e : in.e_frames)
        for (const auto& f : in.f_frames) total.add(0.25 * std::norm(hs_inner(e.matrix, f.matrix)));
    return total.value();
}

double lemma1_bound(const DensityMatrix& rho, const KrausChannel& n1, const KrausChannel& n2) {
    return lemma1_bound(prepare_chain_input(rho, n1, n2));
}

std::vector<double> i_chain(const ChainInput& in) {
    const auto d = static_cast<std::size_t>(in.dim);
    std::vector<CompensatedSum> totals(d);
    std::vector<double> e_tail(d + 1), f_tail(d + 1);
    for (const auto& c : in.pairs) {
        // Suffix sums so tails are accumulated, not obtained by cancellation.
        e_tail[d] = f_tail[d] = 0.0;
        for (std::size_t k = d; k-- > 0;) {
            e_tail[k] = e_tail[k + 1] + c.e_norm_sq[k];
            f_tail[k] = f_tail[k + 1] + c.f_norm_sq[k];
        }
        const double f_full = f_tail[0];
        double e_head = 0.0;
        Complex head_overlap{};
        for (std::size_t m = 1; m <= d; ++m) {
            e_head += c.e_norm_sq[m - 1];
            head_overlap += c.overlap[m - 1];
            const double value = 0.25 * (std::norm(head_overlap) + e_head * f_tail[m] +
                                         e_tail[m] * f_full);
            totals[m - 1].add(value);
        }
    }
    std::vector<double> out(d);
    for (std::size_t m = 0; m < d; ++m) out[m] = totals[m].value();
    return out;
}

std::vector<double> i_chain(const DensityMatrix& rho, const KrausChannel& n1,
                            const KrausChannel& n2) {
    return i_chain(prepare_chain_input(rho, n1, n2));
}

std::vector<LatticeValue> s_chain(const ChainInput& in, SReading reading) {
    const auto order = lattice_order(in.dim);
    const auto id = identity_permutation(static_cast<std::size_t>(in.dim));
    std::vector<CompensatedSum> totals(order.size());
    for (const auto& c : in.pairs) {
        walk_pair(c, order, id, id, order.size(), reading,
                  [&](std::size_t pos, double v) { totals[pos].add(v); });
    }
    std::vector<LatticeValue> out;
    out.reserve(order.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos)
        out.push_back({order[pos], totals[pos].value()});
    return out;
}

std::vector<LatticeValue> s_chain(const DensityMatrix& rho, const KrausChannel& n1,
                                  const KrausChannel& n2, SReading reading) {
    return s_chain(prepare_chain_input(rho, n1, n2), reading);
}

namespace {

double channel_skew_from_frames(const std::vector<CommutatorFrame>& frames) {
    CompensatedSum s;
    for (const auto& f : frames) s.add(std::max(0.0, 0.5 * hs_inner(f.matrix, f.matrix).real()));
    return s.value();
}

}  // namespace

BoundChain bound_chain(const ChainInput& in, SReading reading) {
    BoundChain chain;
    chain.skew1 = channel_skew_from_frames(in.e_frames);
    chain.skew2 = channel_skew_from_frames(in.f_frames);
    chain.product = chain.skew1 * chain.skew2;
    chain.sum = chain.skew1 + chain.skew2;
    chain.i_values = i_chain(in);
    chain.s_values = s_chain(in, reading);
    chain.lemma1 = lemma1_bound(in);
    chain.s_reading = reading;
    return chain;
}

BoundChain bound_chain(const DensityMatrix& rho, const KrausChannel& n1, const KrausChannel& n2,
                       SReading reading, const FrameBasis& basis) {
    return bound_chain(prepare_chain_input(rho, n1, n2, basis), reading);
}

std::vector<double> sum_chain(const BoundChain& chain) {
    std::vector<double> out;
    out.reserve(chain.i_values.size() + chain.s_values.size());
    for (double v : chain.i_values) out.push_back(safe_two_sqrt(v));
    for (const auto& v : chain.s_values) out.push_back(safe_two_sqrt(v.value));
    return out;
}

// ---------------------------------------------------------------------------
// Permutations

Permutation identity_permutation(std::size_t d) {
    Permutation id(d);
    std::iota(id.begin(), id.end(), std::size_t{0});
    return id;
}

bool is_permutation(const Permutation& perm, std::size_t d) {
    if (perm.size() != d) return false;
    std::vector<bool> seen(d, false);
    for (std::size_t x : perm) {
        if (x >= d || seen[x]) return false;
        seen[x] = true;
    }
    return true;
}

double permute_s(const ChainInput& in, const Permutation& sigma, const Permutation& tau, int p,
                 int q, SReading reading) {
    const auto d = static_cast<std::size_t>(in.dim);
    if (!is_permutation(sigma, d) || !is_permutation(tau, d))
        throw Error(ErrorKind::InvalidPermutation, "sigma and tau must permute {1..d}");
    if (!(p == 1 && q == 0)) require_lattice_index(in.dim, p, q);
    return permuted_value(in, lattice_order(in.dim), sigma, tau, p, q, reading);
}

double permute_s(const DensityMatrix& rho, const KrausChannel& n1, const KrausChannel& n2,
                 const Permutation& sigma, const Permutation& tau, int p, int q,
                 SReading reading) {
    return permute_s(prepare_chain_input(rho, n1, n2), sigma, tau, p, q, reading);
}

namespace {

// (d!)², saturating.
std::size_t squared_factorial(std::size_t d) {
    std::size_t f = 1;
    for (std::size_t k = 2; k <= d; ++k) {
        if (f > std::numeric_limits<std::size_t>::max() / k) return std::numeric_limits<std::size_t>::max();
        f *= k;
    }
    if (f > std::numeric_limits<std::size_t>::max() / f) return std::numeric_limits<std::size_t>::max();
    return f * f;
}

Permutation shuffled(std::size_t d, Rng& rng) {
    Permutation perm = identity_permutation(d);
    for (std::size_t i = d; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
    return perm;
}

}  // namespace

PermutationStrategy default_strategy(Eigen::Index d) {
    return squared_factorial(static_cast<std::size_t>(d)) <= kDefaultPermutationBudget
               ? PermutationStrategy::Exhaustive
               : PermutationStrategy::Sampled;
}

PermutedBound optimize_permutations(const ChainInput& in, int p, int q,
                                    PermutationStrategy strategy, std::size_t budget,
                                    RandomSeed seed, SReading reading) {
    require_lattice_index(in.dim, p, q);
    const auto d = static_cast<std::size_t>(in.dim);
    const auto order = lattice_order(in.dim);

    PermutedBound best;
    best.p = p;
    best.q = q;
    auto consider = [&](const Permutation& sigma, const Permutation& tau) {
        const double v = permuted_value(in, order, sigma, tau, p, q, reading);
        ++best.evaluated;
        if (best.evaluated == 1 || v > best.value) {
            best.value = v;
            best.sigma = sigma;
            best.tau = tau;
            return true;
        }
        return false;
    };

    if (strategy == PermutationStrategy::Exhaustive) {
        const std::size_t pairs = squared_factorial(d);
        if (pairs > budget) {
            throw Error(ErrorKind::BudgetExceeded,
                        "(d!)^2 = " + std::to_string(pairs) + " exceeds budget " +
                            std::to_string(budget),
                        static_cast<double>(pairs));
        }
        Permutation sigma = identity_permutation(d);
        do {
            Permutation tau = identity_permutation(d);
            do {
                consider(sigma, tau);
            } while (std::next_permutation(tau.begin(), tau.end()));
        } while (std::next_permutation(sigma.begin(), sigma.end()));
    } else {
        Rng rng(seed);
        consider(identity_permutation(d), identity_permutation(d));
        for (std::size_t draw = 0; draw < budget; ++draw) {
            Permutation sigma = shuffled(d, rng);
            Permutation tau = shuffled(d, rng);
            consider(sigma, tau);
        }
        // Steepest ascent over adjacent transpositions of σ then τ.
        for (bool improved = true; improved;) {
            improved = false;
            const Permutation base_sigma = best.sigma;
            const Permutation base_tau = best.tau;
            double base_value = best.value;
            Permutation cand_sigma, cand_tau;
            for (int side = 0; side < 2; ++side) {
                for (std::size_t k = 0; k + 1 < d; ++k) {
                    Permutation s = base_sigma, t = base_tau;
                    std::swap(side == 0 ? s[k] : t[k], side == 0 ? s[k + 1] : t[k + 1]);
                    const double v = permuted_value(in, order, s, t, p, q, reading);
                    ++best.evaluated;
                    if (v > base_value) {
                        base_value = v;
                        cand_sigma = std::move(s);
                        cand_tau = std::move(t);
                        improved = true;
                    }
                }
            }
            if (improved) {
                best.value = base_value;
                best.sigma = std::move(cand_sigma);
                best.tau = std::move(cand_tau);
            }
        }
    }
    best.t = 1.0;
    best.mixed_value = best.value;
    return best;
}

MixedBound mixed_bound(const BoundChain& chain, const PermutedBound& best, double t) {
    if (!(t >= 0.0 && t <= 1.0))
        throw Error(ErrorKind::InvalidT, "t = " + std::to_string(t) + " outside [0, 1]", t);
    MixedBound out;
    out.product_bound = (1.0 - t) * chain.product + t * best.value;
    out.sum_bound = (1.0 - t) * chain.sum + t * safe_two_sqrt(best.value);
    return out;
}

PermutedBound with_mixing(const BoundChain& chain, PermutedBound best, double t) {
    best.mixed_value = mixed_bound(chain, best, t).product_bound;
    best.t = t;
    return best;
}

// ---------------------------------------------------------------------------
// Verification

void ChainVerdict::add(std::string name, double lhs, double rhs, CheckKind kind, bool hard) {
    ChainCheck c;
    c.name = std::move(name);
    c.lhs = lhs;
    c.rhs = rhs;
    c.kind = kind;
    c.hard = hard;
    if (kind == CheckKind::Inequality) {
        c.deviation = rhs - lhs;
        c.passed = lhs >= rhs - tol;
    } else {
        c.deviation = std::abs(lhs - rhs);
        c.passed = c.deviation <= tol;
    }
    checks.push_back(std::move(c));
}

bool ChainVerdict::hard_passed() const { return hard_failures() == 0; }

std::size_t ChainVerdict::hard_failures() const {
    return static_cast<std::size_t>(std::count_if(
        checks.begin(), checks.end(), [](const ChainCheck& c) { return c.hard && !c.passed; }));
}

const ChainCheck* ChainVerdict::find(std::string_view name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

namespace {

std::string pq_label(int p, int q) { return "S" + std::to_string(p) + "_" + std::to_string(q); }

std::string t_label(double t) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", t);
    return buf;
}

}  // namespace

ChainVerdict verify_chain(const DensityMatrix& rho, const KrausChannel& n1,
                          const KrausChannel& n2, const VerifyOptions& options) {
    using enum CheckKind;
    ChainVerdict verdict;
    verdict.tol = options.tol;

    const ChainInput in = prepare_chain_input(rho, n1, n2, options.basis);
    const BoundChain chain = bound_chain(in, SReading::Lagrange);
    const auto d = static_cast<int>(in.dim);
    const auto& iv = chain.i_values;

    verdict.add("lemma1.product_ge_lemma1", chain.product, chain.lemma1, Inequality, true);

    verdict.add("ichain.product_ge_I1", chain.product, iv.front(), Inequality, true);
    verdict.add("ichain.I1_eq_product", iv.front(), chain.product, Equality, false);
    for (int m = 1; m < d; ++m) {
        verdict.add("ichain.I" + std::to_string(m) + "_ge_I" + std::to_string(m + 1),
                    iv[static_cast<std::size_t>(m - 1)], iv[static_cast<std::size_t>(m)],
                    Inequality, true);
    }
    verdict.add("ichain.Id_eq_lemma1", iv.back(), chain.lemma1, Equality, true);

    for (SReading reading : kAllReadings) {
        const bool hard = reading == SReading::Lagrange;
        const std::string prefix = "schain." + std::string(to_string(reading)) + ".";
        const auto s = reading == SReading::Lagrange ? chain.s_values : s_chain(in, reading);
        double previous = chain.product;
        std::string previous_label = "S1_0";
        for (const auto& v : s) {
            verdict.add(prefix + previous_label + "_ge_" + pq_label(v.index.p, v.index.q),
                        previous, v.value, Inequality, hard);
            previous = v.value;
            previous_label = pq_label(v.index.p, v.index.q);
            if (v.index.q == v.index.p - 1) {
                verdict.add(prefix + "anchor_" + previous_label + "_eq_I" +
                                std::to_string(v.index.p),
                            v.value, iv[static_cast<std::size_t>(v.index.p - 1)], Equality, hard);
            }
        }
        if (!s.empty())
            verdict.add(prefix + "anchor_Sd_eq_lemma1", s.back().value, chain.lemma1, Equality,
                        hard);
        for (const auto& v : s) {
            verdict.add(prefix + "sum_ge_2sqrt_" + pq_label(v.index.p, v.index.q), chain.sum,
                        safe_two_sqrt(v.value), Inequality, hard);
        }
    }

    verdict.add("sum.sum_ge_2sqrt_product", chain.sum, safe_two_sqrt(chain.product), Inequality,
                true);
    for (int m = 1; m <= d; ++m) {
        verdict.add("sum.sum_ge_2sqrt_I" + std::to_string(m), chain.sum,
                    safe_two_sqrt(iv[static_cast<std::size_t>(m - 1)]), Inequality, true);
    }

    if (d >= 2) {
        const auto dd = static_cast<std::size_t>(d);
        const auto id = identity_permutation(dd);
        const Permutation reversed(id.rbegin(), id.rend());
        verdict.add("perm.closure_S1_0",
                    permute_s(in, reversed, id, 1, 0) == permute_s(in, id, id, 1, 0) ? 1.0 : 0.0,
                    1.0, Equality, true);

        std::vector<LatticeIndex> targets{{2, 1}};
        if (d > 2) targets.push_back({d, d - 1});
        const auto strategy = default_strategy(in.dim);
        const std::size_t budget = strategy == PermutationStrategy::Exhaustive
                                       ? kDefaultPermutationBudget
                                       : kDefaultSampleBudget;
        for (const auto& [p, q] : targets) {
            const std::string label = "perm." + pq_label(p, q) + ".";
            const PermutedBound best =
                optimize_permutations(in, p, q, strategy, budget, options.seed, SReading::Lagrange);
            verdict.add(label + "identity_reproduces_s_chain",
                        permute_s(in, id, id, p, q) == chain.s_value(p, q) ? 1.0 : 0.0, 1.0,
                        Equality, true);
            verdict.add(label + "opt_ge_identity", best.value, chain.s_value(p, q), Inequality,
                        true);
            verdict.add(label + "product_ge_opt", chain.product, best.value, Inequality, true);
            for (double t : options.t_values) {
                const MixedBound mb = mixed_bound(chain, best, t);
                const std::string tl = "mixed." + pq_label(p, q) + ".t" + t_label(t) + ".";
                verdict.add(tl + "product_ge_mixed", chain.product, mb.product_bound, Inequality,
                            true);
                verdict.add(tl + "mixed_ge_lemma1", mb.product_bound, chain.lemma1, Inequality,
                            true);
                verdict.add(tl + "sum_ge_mixed_sum", chain.sum, mb.sum_bound, Inequality, true);
                verdict.add(tl + "mixed_sum_ge_2sqrt_lemma1", mb.sum_bound,
                            safe_two_sqrt(chain.lemma1), Inequality, true);
            }
        }
    }
    return verdict;
}

double InvarianceReport::max_deviation() const {
    return std::max({max_dev_product, max_dev_sum, max_dev_i, max_dev_s, max_dev_lemma1});
}

namespace {

struct AllBounds {
    BoundChain chain;
    std::vector<std::vector<LatticeValue>> s_by_reading;
};

AllBounds all_bounds(const DensityMatrix& rho, const KrausChannel& n1, const KrausChannel& n2) {
    const ChainInput in = prepare_chain_input(rho, n1, n2);
    AllBounds out{bound_chain(in, SReading::Lagrange), {}};
    for (SReading r : kAllReadings) out.s_by_reading.push_back(s_chain(in, r));
    return out;
}

void accumulate(InvarianceReport& report, const AllBounds& ref, const AllBounds& mixed) {
    auto upd = [](double& slot, double a, double b) { slot = std::max(slot, std::abs(a - b)); };
    upd(report.max_dev_product, ref.chain.product, mixed.chain.product);
    upd(report.max_dev_sum, ref.chain.sum, mixed.chain.sum);
    upd(report.max_dev_lemma1, ref.chain.lemma1, mixed.chain.lemma1);
    for (std::size_t m = 0; m < ref.chain.i_values.size(); ++m)
        upd(report.max_dev_i, ref.chain.i_values[m], mixed.chain.i_values[m]);
    for (std::size_t r = 0; r < ref.s_by_reading.size(); ++r)
        for (std::size_t k = 0; k < ref.s_by_reading[r].size(); ++k)
            upd(report.max_dev_s, ref.s_by_reading[r][k].value, mixed.s_by_reading[r][k].value);
}

}  // namespace

InvarianceReport kraus_invariance_check(const DensityMatrix& rho, const KrausChannel& n1,
                                        const KrausChannel& n2, std::size_t trials,
                                        RandomSeed seed, double tol) {
    InvarianceReport report;
    report.tol = tol;
    const AllBounds ref = all_bounds(rho, n1, n2);
    Rng rng(seed);
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const ComplexMatrix u = random_unitary(static_cast<Eigen::Index>(n1.size()), rng);
        const ComplexMatrix v = random_unitary(static_cast<Eigen::Index>(n2.size()), rng);
        accumulate(report, ref, all_bounds(rho, mix_kraus(n1, u), mix_kraus(n2, v)));
        ++report.trials;
    }
    return report;
}

InvarianceReport kraus_invariance_check(const DensityMatrix& rho, const KrausChannel& n1,
                                        const KrausChannel& n2, const ComplexMatrix& u,
                                        const ComplexMatrix& v, double tol) {
    InvarianceReport report;
    report.tol = tol;
    report.trials = 1;
    accumulate(report, all_bounds(rho, n1, n2), all_bounds(rho, mix_kraus(n1, u), mix_kraus(n2, v)));
    return report;
}

}  // namespace skewinfo
