#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "skewinfo/bound_chains.hpp"
#include "skewinfo/worked_example.hpp"
#include "test_util.hpp"

using namespace skewinfo;

namespace {

struct Instance {
    DensityMatrix rho;
    KrausChannel n1;
    KrausChannel n2;
};

Instance random_instance(Rng& rng, int d) {
    const auto rank = static_cast<Eigen::Index>(1 + rng.below(static_cast<std::uint64_t>(d)));
    const auto max_k = std::min<std::uint64_t>(4, static_cast<std::uint64_t>(d * d));
    const auto k1 = static_cast<Eigen::Index>(1 + rng.below(max_k));
    const auto k2 = static_cast<Eigen::Index>(1 + rng.below(max_k));
    auto rho = random_density(d, rank, rng);
    auto n1 = random_channel(d, k1, Convention::ColumnSum, rng);
    auto n2 = random_channel(d, k2, Convention::ColumnSum, rng);
    return {std::move(rho), std::move(n1), std::move(n2)};
}

Instance example_instance(double theta = 1.0, double p = 0.5, double q = 0.5) {
    auto [n1, n2] = example::example_channels(p, q);
    return {example::rho_theta(theta), std::move(n1), std::move(n2)};
}

// Conjugation Π†XΠ by the permutation matrix of `perm`.
ComplexMatrix relabel(const ComplexMatrix& x, const Permutation& perm) {
    const ComplexMatrix pm = oracle::permutation_matrix(perm);
    return pm.adjoint() * x * pm;
}

KrausChannel relabel(const KrausChannel& ch, const Permutation& perm) {
    std::vector<ComplexMatrix> ops;
    for (const auto& k : ch.operators()) ops.push_back(relabel(k, perm));
    return validate_channel(ops, ch.convention(), 1e-10);
}

std::vector<Permutation> all_permutations(std::size_t d) {
    std::vector<Permutation> out;
    Permutation p = identity_permutation(d);
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

}  // namespace

TEST_CASE("lattice order") {
    const auto o = lattice_order(4);
    const std::vector<LatticeIndex> expected{{2, 1}, {3, 1}, {3, 2}, {4, 1}, {4, 2}, {4, 3}};
    CHECK(o == expected);
    CHECK(lattice_order(1).empty());
    CHECK(lattice_order(5).size() == 10);
}

TEST_CASE("reading names round-trip") {
    for (SReading r : kAllReadings) CHECK(s_reading_from_string(to_string(r)) == r);
    CHECK(error_kind_of([] { s_reading_from_string("nonsense"); }) == ErrorKind::ParseError);
}

TEST_CASE("pair columns and partial splits match raw columns") {
    Rng rng(RandomSeed{3});
    const auto inst = random_instance(rng, 4);
    const ChainInput in = prepare_chain_input(inst.rho, inst.n1, inst.n2);
    CHECK(in.pairs.size() == inst.n1.size() * inst.n2.size());
    const auto& e = in.e_frames[0];
    const auto& f = in.f_frames[0];
    const auto pc = pair_columns(e, f);
    for (int k = 0; k < 4; ++k) {
        CHECK(pc.e_norm_sq[k] == doctest::Approx(e.matrix.col(k).squaredNorm()).epsilon(1e-14));
        CHECK(std::abs(pc.overlap[k] - e.matrix.col(k).dot(f.matrix.col(k))) < 1e-14);
    }
    for (int m = 1; m <= 4; ++m) {
        const auto s = partial_split(e, f, m);
        CHECK(s.head_norm_sq + s.tail_norm_sq == doctest::Approx(e.norm_sq()).epsilon(1e-13));
        CHECK(std::abs(s.head_overlap - oracle::block_inner(e.matrix, f.matrix, 0, m)) < 1e-14);
    }
}

TEST_CASE("worked example chain values") {
    const auto ex = example_instance();
    const auto chain = bound_chain(ex.rho, ex.n1, ex.n2);
    CHECK(std::abs(chain.product - 0.02144661) < 1e-8);
    CHECK(std::abs(chain.lemma1 - 0.00314078) < 1e-8);
    CHECK(std::abs(chain.lemma1 - std::pow(1.0 - std::sqrt(0.5), 3) / 8.0) < 1e-15);
    CHECK(std::abs(chain.sum - 2.0 * 0.14644661) < 2e-8);
    CHECK(chain.i_values.size() == 4);
    CHECK(std::abs(chain.i_values[3] - chain.lemma1) < 1e-15);
    // S21 matches the closed form printed for it and the anchor I2.
    CHECK(std::abs(chain.s_value(2, 1) - example::closed_forms({1.0, 0.5, 0.5, 1.0}).eq23) < 1e-12);
    CHECK(std::abs(chain.s_value(2, 1) - chain.i_values[1]) < 1e-15);
    CHECK(chain.s_value(1, 0) == chain.product);
    CHECK(error_kind_of([&] { chain.s_value(5, 1); }) == ErrorKind::InvalidIndices);

    const auto flat = example_instance(0.5);
    const auto zero = bound_chain(flat.rho, flat.n1, flat.n2);
    CHECK(zero.product == 0.0);
    CHECK(zero.lemma1 == 0.0);
    for (double v : zero.i_values) CHECK(v == 0.0);
    for (SReading r : kAllReadings)
        for (const auto& v : s_chain(flat.rho, flat.n1, flat.n2, r)) CHECK(v.value == 0.0);

    const auto id = validate_channel({ComplexMatrix::Identity(4, 4)}, Convention::RowSum);
    CHECK(lemma1_bound(ex.rho, id, id) < 1e-30);
}

TEST_CASE("I chain matches the brute-force split on random instances") {
    Rng rng(RandomSeed{2024});
    for (int trial = 0; trial < 60; ++trial) {
        const int d = 2 + trial % 4;
        const auto inst = random_instance(rng, d);
        const auto is = i_chain(inst.rho, inst.n1, inst.n2);
        REQUIRE(is.size() == static_cast<std::size_t>(d));
        for (int m = 1; m <= d; ++m) {
            const double ref = oracle::i_m(inst.rho.rho(), inst.n1.operators(), inst.n2.operators(), m);
            CHECK(std::abs(is[m - 1] - ref) < 1e-12);
        }
        const double l1 = oracle::lemma1(inst.rho.rho(), inst.n1.operators(), inst.n2.operators());
        CHECK(std::abs(lemma1_bound(inst.rho, inst.n1, inst.n2) - l1) < 1e-12);
        const double prod = oracle::product(inst.rho.rho(), inst.n1.operators(), inst.n2.operators());
        const auto chain = bound_chain(inst.rho, inst.n1, inst.n2);
        CHECK(std::abs(chain.product - prod) < 1e-12);
        CHECK(chain.product >= is.front() - 1e-12);
        for (int m = 1; m < d; ++m) CHECK(is[m - 1] >= is[m] - 1e-12);
        CHECK(std::abs(is.back() - chain.lemma1) < 1e-12);
    }
}

TEST_CASE("S lattice under each reading matches independent formulas") {
    Rng rng(RandomSeed{77});
    for (int trial = 0; trial < 40; ++trial) {
        const int d = 2 + trial % 3;
        const auto inst = random_instance(rng, d);
        const auto& r = inst.rho.rho();
        const auto& e = inst.n1.operators();
        const auto& f = inst.n2.operators();
        const auto lag = s_chain(inst.rho, inst.n1, inst.n2, SReading::Lagrange);
        const auto printed = s_chain(inst.rho, inst.n1, inst.n2, SReading::AsPrinted);
        const auto prod = s_chain(inst.rho, inst.n1, inst.n2, SReading::ProductReading);
        const auto is = i_chain(inst.rho, inst.n1, inst.n2);
        REQUIRE(lag.size() == static_cast<std::size_t>(d * (d - 1) / 2));
        for (std::size_t i = 0; i < lag.size(); ++i) {
            const auto [p, q] = lag[i].index;
            CHECK(std::abs(lag[i].value - oracle::s_lagrange(r, e, f, p, q)) < 1e-12);
            CHECK(std::abs(printed[i].value -
                           oracle::s_literal(r, e, f, p, q, oracle::Literal::AsPrinted)) < 1e-11);
            CHECK(std::abs(prod[i].value -
                           oracle::s_literal(r, e, f, p, q, oracle::Literal::Product)) < 1e-12);
            if (q == p - 1) CHECK(std::abs(lag[i].value - is[p - 1]) < 1e-12);
            if (i > 0) CHECK(lag[i - 1].value >= lag[i].value - 1e-12);
        }
    }
}

TEST_CASE("sum chain") {
    BoundChain zero;
    zero.i_values.assign(3, 0.0);
    zero.s_values = {{{2, 1}, 0.0}, {{3, 1}, 0.0}, {{3, 2}, 0.0}};
    for (double v : sum_chain(zero)) CHECK(v == 0.0);

    BoundChain one;
    one.i_values = {0.00314078};
    CHECK(std::abs(sum_chain(one)[0] - 0.11208) < 1e-5);

    BoundChain neg;
    neg.i_values = {-1.0};
    CHECK(sum_chain(neg)[0] == 0.0);
}

TEST_CASE("permutation helpers") {
    CHECK(identity_permutation(3) == Permutation{0, 1, 2});
    CHECK(is_permutation({2, 0, 1}, 3));
    CHECK_FALSE(is_permutation({0, 0, 1}, 3));
    CHECK_FALSE(is_permutation({0, 1}, 3));
    CHECK_FALSE(is_permutation({0, 1, 3}, 3));
}

TEST_CASE("identity permutation reproduces the lattice") {
    Rng rng(RandomSeed{5});
    for (int d : {2, 3, 4}) {
        const auto inst = random_instance(rng, d);
        const ChainInput in = prepare_chain_input(inst.rho, inst.n1, inst.n2);
        const auto id = identity_permutation(static_cast<std::size_t>(d));
        for (SReading reading : kAllReadings) {
            for (const auto& v : s_chain(in, reading))
                CHECK(permute_s(in, id, id, v.index.p, v.index.q, reading) == v.value);
        }
        // Per-pair products summed, against the product of the two totals.
        CHECK(permute_s(in, id, id, 1, 0) == doctest::Approx(bound_chain(in).product).epsilon(1e-13));
    }
}

TEST_CASE("permutation action equals basis relabeling") {
    Rng rng(RandomSeed{31});
    // d = 2 transposition, then every permutation at d = 3 and random ones at d = 4.
    for (int d : {2, 3, 4}) {
        const auto inst = random_instance(rng, d);
        const ChainInput in = prepare_chain_input(inst.rho, inst.n1, inst.n2);
        auto perms = all_permutations(static_cast<std::size_t>(d));
        if (d == 4) perms.resize(8);
        for (const auto& pi : perms) {
            const auto rho2 = validate_density(relabel(inst.rho.rho(), pi), 1e-10);
            const auto relabeled = s_chain(rho2, relabel(inst.n1, pi), relabel(inst.n2, pi),
                                           SReading::Lagrange);
            for (const auto& v : relabeled)
                CHECK(std::abs(permute_s(in, pi, pi, v.index.p, v.index.q) - v.value) < 1e-12);
            // Same result when the relabeling is expressed as a frame basis.
            const auto via_basis =
                s_chain(prepare_chain_input(inst.rho, inst.n1, inst.n2,
                                            FrameBasis{oracle::permutation_matrix(pi)}),
                        SReading::Lagrange);
            for (std::size_t i = 0; i < via_basis.size(); ++i)
                CHECK(std::abs(via_basis[i].value - relabeled[i].value) < 1e-12);
        }
    }
}

TEST_CASE("permute_s rejects bad arguments") {
    const auto ex = example_instance();
    const ChainInput in = prepare_chain_input(ex.rho, ex.n1, ex.n2);
    const auto id = identity_permutation(4);
    CHECK(error_kind_of([&] { permute_s(in, {0, 1, 2}, id, 2, 1); }) == ErrorKind::InvalidPermutation);
    CHECK(error_kind_of([&] { permute_s(in, id, {0, 0, 1, 2}, 2, 1); }) == ErrorKind::InvalidPermutation);
    CHECK(error_kind_of([&] { permute_s(in, id, id, 2, 2); }) == ErrorKind::InvalidIndices);
    CHECK(error_kind_of([&] { permute_s(in, id, id, 5, 1); }) == ErrorKind::InvalidIndices);
}

TEST_CASE("exhaustive optimizer agrees with brute force") {
    Rng rng(RandomSeed{8});
    for (int d : {2, 3}) {
        const auto inst = random_instance(rng, d);
        const ChainInput in = prepare_chain_input(inst.rho, inst.n1, inst.n2);
        const auto perms = all_permutations(static_cast<std::size_t>(d));
        for (const auto& [p, q] : lattice_order(d)) {
            double best = -INFINITY;
            Permutation bs, bt;
            for (const auto& s : perms)
                for (const auto& t : perms) {
                    const double v = permute_s(in, s, t, p, q);
                    if (v > best) {
                        best = v;
                        bs = s;
                        bt = t;
                    }
                }
            const auto opt = optimize_permutations(in, p, q, PermutationStrategy::Exhaustive,
                                                   kDefaultPermutationBudget, RandomSeed{0});
            CHECK(opt.value == best);
            CHECK(opt.sigma == bs);
            CHECK(opt.tau == bt);
            CHECK(opt.evaluated == perms.size() * perms.size());
        }
    }
}

TEST_CASE("optimizer on the example and at zero") {
    const auto ex = example_instance();
    const ChainInput in = prepare_chain_input(ex.rho, ex.n1, ex.n2);
    const auto chain = bound_chain(in);
    const auto opt = optimize_permutations(in, 2, 1, PermutationStrategy::Exhaustive,
                                           kDefaultPermutationBudget, RandomSeed{0});
    CHECK(opt.evaluated == 576);
    CHECK(opt.value >= chain.s_value(2, 1));
    CHECK(opt.value <= chain.product + 1e-12);
    CHECK(error_kind_of([&] {
              optimize_permutations(in, 2, 1, PermutationStrategy::Exhaustive, 100, RandomSeed{0});
          }) == ErrorKind::BudgetExceeded);

    const auto flat = example_instance(0.5);
    const ChainInput zin = prepare_chain_input(flat.rho, flat.n1, flat.n2);
    CHECK(optimize_permutations(zin, 4, 3, PermutationStrategy::Exhaustive,
                                kDefaultPermutationBudget, RandomSeed{0})
              .value == 0.0);
    const auto id = identity_permutation(4);
    CHECK(permute_s(zin, {3, 2, 1, 0}, id, 3, 2) == 0.0);
}

TEST_CASE("sampled optimizer is deterministic and never below identity") {
    Rng rng(RandomSeed{13});
    const auto inst = random_instance(rng, 4);
    const ChainInput in = prepare_chain_input(inst.rho, inst.n1, inst.n2);
    const auto a = optimize_permutations(in, 3, 2, PermutationStrategy::Sampled, 200, RandomSeed{4});
    const auto b = optimize_permutations(in, 3, 2, PermutationStrategy::Sampled, 200, RandomSeed{4});
    CHECK(a.value == b.value);
    CHECK(a.sigma == b.sigma);
    CHECK(a.tau == b.tau);
    CHECK(a.value >= bound_chain(in).s_value(3, 2));
    const auto ex = optimize_permutations(in, 3, 2, PermutationStrategy::Exhaustive,
                                          kDefaultPermutationBudget, RandomSeed{0});
    CHECK(a.value <= ex.value);
    CHECK(default_strategy(5) == PermutationStrategy::Exhaustive);
    CHECK(default_strategy(6) == PermutationStrategy::Sampled);
}

TEST_CASE("mixed bounds") {
    const auto ex = example_instance();
    const ChainInput in = prepare_chain_input(ex.rho, ex.n1, ex.n2);
    const auto chain = bound_chain(in);
    const auto opt = optimize_permutations(in, 2, 1, PermutationStrategy::Exhaustive,
                                           kDefaultPermutationBudget, RandomSeed{0});
    const auto m0 = mixed_bound(chain, opt, 0.0);
    CHECK(m0.product_bound == chain.product);
    CHECK(m0.sum_bound == chain.sum);
    const auto m1 = mixed_bound(chain, opt, 1.0);
    CHECK(m1.product_bound == opt.value);
    CHECK(m1.sum_bound == doctest::Approx(2.0 * std::sqrt(opt.value)).epsilon(1e-15));
    const auto mh = mixed_bound(chain, opt, 0.5);
    CHECK(mh.product_bound == doctest::Approx(0.5 * (chain.product + opt.value)).epsilon(1e-15));
    CHECK(mh.product_bound <= chain.product + 1e-10);
    CHECK(mh.product_bound >= chain.lemma1 - 1e-10);
    CHECK(error_kind_of([&] { mixed_bound(chain, opt, 1.5); }) == ErrorKind::InvalidT);
    CHECK(error_kind_of([&] { mixed_bound(chain, opt, -0.1); }) == ErrorKind::InvalidT);
    const auto w = with_mixing(chain, opt, 0.5);
    CHECK(w.t == 0.5);
    CHECK(w.mixed_value == mh.product_bound);
}

TEST_CASE("verify_chain on the example, at zero and on random instances") {
    const auto ex = example_instance();
    const auto v = verify_chain(ex.rho, ex.n1, ex.n2);
    CHECK(v.hard_passed());
    const auto* i1 = v.find("ichain.I1_eq_product");
    REQUIRE(i1 != nullptr);
    CHECK_FALSE(i1->hard);
    const auto* anchor = v.find("schain.lagrange.anchor_Sd_eq_lemma1");
    REQUIRE(anchor != nullptr);
    CHECK(anchor->hard);
    CHECK(anchor->passed);
    CHECK(v.find("perm.S2_1.opt_ge_identity") != nullptr);
    CHECK(v.find("mixed.S4_3.t0.5.product_ge_mixed") != nullptr);
    CHECK(v.find("does.not.exist") == nullptr);

    const auto flat = example_instance(0.5);
    const auto z = verify_chain(flat.rho, flat.n1, flat.n2);
    for (const auto& c : z.checks) CHECK(c.passed);

    Rng rng(RandomSeed{42});
    for (int trial = 0; trial < 30; ++trial) {
        const auto inst = random_instance(rng, 2 + trial % 3);
        const auto verdict = verify_chain(inst.rho, inst.n1, inst.n2);
        CHECK(verdict.hard_failures() == 0);
    }
}

TEST_CASE("ChainVerdict bookkeeping") {
    ChainVerdict v;
    v.tol = 1e-10;
    v.add("a", 1.0, 1.0 + 5e-11, CheckKind::Inequality, true);
    v.add("b", 1.0, 1.0 + 5e-10, CheckKind::Inequality, true);
    v.add("c", 1.0, 2.0, CheckKind::Equality, false);
    CHECK(v.find("a")->passed);
    CHECK_FALSE(v.find("b")->passed);
    CHECK_FALSE(v.find("c")->passed);
    CHECK(v.hard_failures() == 1);
    CHECK_FALSE(v.hard_passed());
}

TEST_CASE("Kraus representation invariance") {
    const auto ex = example_instance();
    const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
    const auto same = kraus_invariance_check(ex.rho, ex.n1, ex.n2, i2, i2, 0.0);
    CHECK(same.max_deviation() == 0.0);
    CHECK(same.passed());

    const auto rep = kraus_invariance_check(ex.rho, ex.n1, ex.n2, 20, RandomSeed{1}, 1e-10);
    CHECK(rep.trials == 20);
    CHECK(rep.passed());

    Rng rng(RandomSeed{55});
    const auto rho = random_density(3, 3, rng);
    const auto c1 = random_channel(3, 1, Convention::ColumnSum, rng);
    const auto c2 = random_channel(3, 1, Convention::ColumnSum, rng);
    ComplexMatrix phase(1, 1), phase2(1, 1);
    phase(0, 0) = std::polar(1.0, 0.7);
    phase2(0, 0) = std::polar(1.0, -2.1);
    CHECK(kraus_invariance_check(rho, c1, c2, phase, phase2, 1e-13).passed());

    const auto big = random_instance(rng, 4);
    CHECK(kraus_invariance_check(big.rho, big.n1, big.n2, 5, RandomSeed{2}, 1e-10).passed());
}
