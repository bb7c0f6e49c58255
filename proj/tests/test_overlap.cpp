#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include <doctest.h>

#include "rpsconf/overlap.hpp"

using namespace rpsconf;

namespace {

OrderedFocalSet seq(std::initializer_list<ElementIndex> elems) {
    return OrderedFocalSet(std::vector<ElementIndex>(elems));
}

// ---------------------------------------------------------------------------
// Independent oracles. These re-derive the depth profile from plain sets and
// never touch the bitmask fast path.
// ---------------------------------------------------------------------------

std::set<ElementIndex> oracle_prefix(const OrderedFocalSet& a, std::size_t d) {
    std::set<ElementIndex> out;
    for (std::size_t t = 0; t < std::min(d, a.size()); ++t) out.insert(a.elements()[t]);
    return out;
}

double oracle_inconsistency(const OrderedFocalSet& a, const OrderedFocalSet& b, std::size_t d) {
    const auto pa = oracle_prefix(a, d);
    const auto pb = oracle_prefix(b, d);
    std::vector<ElementIndex> common;
    std::set_intersection(pa.begin(), pa.end(), pb.begin(), pb.end(),
                          std::back_inserter(common));
    return (static_cast<double>(std::max(pa.size(), pb.size())) -
            static_cast<double>(common.size())) /
           static_cast<double>(d);
}

// Direct partial summation of the geometric series to depth D.
double oracle_geometric_kperm(const OrderedFocalSet& a, const OrderedFocalSet& b, double p,
                              std::size_t depth_limit) {
    double sum = 0.0;
    for (std::size_t d = 1; d <= depth_limit; ++d) {
        const double w = d == 1 ? (1.0 - p) : (1.0 - p) * std::pow(p, static_cast<double>(d - 1));
        sum += w * oracle_inconsistency(a, b, d);
    }
    return sum;
}

// Depth at which the remaining geometric tail drops below 1e-12.
std::size_t converged_depth(const OrderedFocalSet& a, const OrderedFocalSet& b, double p) {
    const double m = static_cast<double>(std::max(a.size(), b.size()));
    std::size_t depth = 1;
    while (m * std::pow(p, static_cast<double>(depth)) / (1.0 - p) >= 1e-12 && depth < 20000) {
        ++depth;
    }
    return depth;
}

OrderedFocalSet random_focal(std::mt19937& rng, std::size_t n) {
    std::vector<ElementIndex> pool(n);
    std::iota(pool.begin(), pool.end(), ElementIndex{0});
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(1 + rng() % n);
    return OrderedFocalSet(std::move(pool));
}

/// All ordered focal sets over the first n frame elements.
std::vector<OrderedFocalSet> all_focal_sets(std::size_t n) {
    std::vector<OrderedFocalSet> out;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        std::vector<ElementIndex> base;
        for (ElementIndex t = 0; t < n; ++t) {
            if ((mask >> t) & 1u) base.push_back(t);
        }
        std::sort(base.begin(), base.end());
        do {
            out.push_back(OrderedFocalSet(base));
        } while (std::next_permutation(base.begin(), base.end()));
    }
    return out;
}

}  // namespace

TEST_SUITE("overlap") {

TEST_CASE("prefix sets saturate past the sequence end") {
    CHECK(prefix_set(seq({1, 0, 2, 4}), 2) == 0b00011);
    CHECK(prefix_set(seq({2}), 5) == 0b00100);
    CHECK(prefix_set(seq({0, 4, 2}), 3) == 0b10101);
    CHECK_THROWS_AS(prefix_set(seq({0}), 0), Error);
}

TEST_CASE("overlap and agreement") {
    const OrderedFocalSet a = seq({1, 0, 2, 4});
    const OrderedFocalSet b = seq({0, 1, 2, 3, 4});
    CHECK(overlap_at(a, b, 5) == 4);
    CHECK(overlap_at(a, a, 4) == 4);
    CHECK(overlap_at(seq({0, 1, 2}), seq({3, 4, 5}), 3) == 0);
    CHECK(agreement_at(a, b, 2) == doctest::Approx(1.0));
    CHECK(agreement_at(a, a, 3) == doctest::Approx(1.0));
    CHECK(agreement_at(seq({0}), seq({1}), 1) == doctest::Approx(0.0));
}

TEST_CASE("inconsistency ratios reproduce the worked depth profile") {
    const OrderedFocalSet a = seq({1, 0, 2, 4});
    const OrderedFocalSet b = seq({0, 1, 2, 3, 4});
    const double expected[] = {1.0, 0.0, 0.0, 0.25, 0.2};
    for (std::size_t d = 1; d <= 5; ++d) {
        CHECK(inconsistency_at(a, b, d) == doctest::Approx(expected[d - 1]));
        CHECK(inconsistency_at(a, b, d) == doctest::Approx(oracle_inconsistency(a, b, d)));
    }
    // Saturated prefix case, cross-checked against the set-based oracle.
    CHECK(inconsistency_at(seq({0}), seq({0, 1, 2}), 3) == doctest::Approx(2.0 / 3.0));
    CHECK(oracle_inconsistency(seq({0}), seq({0, 1, 2}), 3) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("average overlap") {
    CHECK(average_overlap(seq({0, 1, 2}), seq({0, 1, 2}), 3) == doctest::Approx(1.0));
    CHECK(average_overlap(seq({0, 1, 2}), seq({3, 4, 5}), 3) == doctest::Approx(0.0));
    CHECK(average_overlap(seq({0, 1}), seq({1, 0}), 2) == doctest::Approx(0.5));
}

TEST_CASE("rank-biased overlap partial sums") {
    CHECK(rbo_similarity(seq({0, 1}), seq({2, 3}), 0.7, 50) == doctest::Approx(0.0));
    CHECK(rbo_similarity(seq({0, 1}), seq({1, 0}), 0.5, 2) == doctest::Approx(0.25));
    // Identical lists approach 1 as the evaluated depth grows: the saturated
    // prefixes keep C_d = |A|/d < 1, so use matching depth and long lists.
    std::vector<ElementIndex> identity(40);
    std::iota(identity.begin(), identity.end(), ElementIndex{0});
    OrderedFocalSet big(identity);
    CHECK(rbo_similarity(big, big, 0.5, 40) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_THROWS_AS(rbo_similarity(big, big, 0.0, 5), Error);
    CHECK_THROWS_AS(rbo_similarity(big, big, 1.0, 5), Error);
}

TEST_CASE("weights per depth") {
    CHECK(weight_at(WeightScheme::uniform(), 3, 5) == doctest::Approx(0.2));
    CHECK(weight_at(WeightScheme::uniform(), 6, 5) == doctest::Approx(0.0));
    CHECK(weight_at(WeightScheme::geometric(0.5), 1, 5) == doctest::Approx(0.5));
    CHECK(weight_at(WeightScheme::geometric(0.0), 1, 5) == doctest::Approx(1.0));
    CHECK(weight_at(WeightScheme::geometric(0.0), 2, 5) == doctest::Approx(0.0));
    CHECK(weight_at(WeightScheme::custom({0.5, 0.25}), 2, 9) == doctest::Approx(0.25));
    CHECK(weight_at(WeightScheme::custom({0.5, 0.25}), 3, 9) == doctest::Approx(0.0));
    CHECK_THROWS_AS(weight_at(WeightScheme::uniform(), 1, 0), Error);
    CHECK_THROWS_AS(WeightScheme::geometric(1.0), Error);
    CHECK_THROWS_AS(WeightScheme::geometric(-0.1), Error);
    CHECK_THROWS_AS(WeightScheme::custom({0.8, 0.4}), Error);
    CHECK_THROWS_AS(WeightScheme::custom({-0.1}), Error);

    // The geometric series reaches total weight 1 in the limit.
    double total = 0.0;
    for (std::size_t d = 1; d <= 200; ++d) total += weight_at(WeightScheme::geometric(0.5), d, 0);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("k_perm matches the worked pairwise values") {
    const WeightScheme uniform = WeightScheme::uniform();
    const DepthSpec def = DepthSpec::defaults();
    CHECK(k_perm(seq({1, 0, 2, 4}), seq({0, 1, 2, 3, 4}), uniform, def) ==
          doctest::Approx(0.29));
    CHECK(k_perm(seq({1, 0, 2, 4}), seq({0, 2}), uniform, def) ==
          doctest::Approx(0.5833).epsilon(5e-4));
    CHECK(k_perm(seq({0, 4, 2}), seq({0, 1, 2, 3, 4}), uniform, def) ==
          doctest::Approx(0.3467).epsilon(5e-4));
    CHECK(k_perm(seq({0, 4, 2}), seq({0, 2}), uniform, def) ==
          doctest::Approx(0.2778).epsilon(5e-4));
    CHECK(k_perm(seq({0}), seq({1}), uniform, def) == doctest::Approx(1.0));
    CHECK(k_perm(seq({0, 1}), seq({1, 0}), uniform, def) == doctest::Approx(0.5));
}

TEST_CASE("unbounded evaluation closes the geometric series") {
    // (w1 w2 w3) against itself extended to infinity has a known closed form.
    const OrderedFocalSet b = seq({0, 1, 2});
    const double k = k_perm_vs_unbounded_identity(b, 0.5);
    CHECK(k == doctest::Approx(0.0455584).epsilon(1e-5));

    // Partial sums of the conceptual infinite list converge to the same
    // value: elements beyond the frame never intersect b.
    double partial = 0.0;
    for (std::size_t d = 1; d <= 200; ++d) {
        const std::size_t shared = std::min<std::size_t>(d, 3);
        const double inc = static_cast<double>(d - shared) / static_cast<double>(d);
        partial += 0.5 * std::pow(0.5, static_cast<double>(d - 1)) * inc;
    }
    CHECK(k == doctest::Approx(partial).epsilon(1e-9));

    CHECK(k_perm_vs_unbounded_identity(b, 0.0) == doctest::Approx(0.0));
    CHECK(k_perm_vs_unbounded_identity(seq({1}), 0.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(k_perm_vs_unbounded_identity(b, 1.0), Error);
}

TEST_CASE("unbounded analytic value equals the partial-sum oracle") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 2 + rng() % 7;
        const OrderedFocalSet a = random_focal(rng, n);
        const OrderedFocalSet b = random_focal(rng, n);
        for (double p : {0.1, 0.3, 0.5, 0.7, 0.9}) {
            const double analytic = k_perm(a, b, WeightScheme::geometric(p),
                                           DepthSpec::unbounded());
            const double summed = oracle_geometric_kperm(a, b, p, converged_depth(a, b, p));
            CHECK(analytic == doctest::Approx(summed).epsilon(1e-9));
        }
    }
}

TEST_CASE("unbounded depth rejects non-geometric weights") {
    CHECK_THROWS_AS(k_perm(seq({0}), seq({1}), WeightScheme::uniform(),
                           DepthSpec::unbounded()),
                    Error);
    CHECK_THROWS_AS(k_perm(seq({0}), seq({1}), WeightScheme::custom({1.0}),
                           DepthSpec::unbounded()),
                    Error);
}

TEST_CASE("k_perm is symmetric, bounded and zero on identical pairs") {
    std::mt19937 rng(4242);
    const std::vector<WeightScheme> schemes{WeightScheme::uniform(),
                                            WeightScheme::geometric(0.0),
                                            WeightScheme::geometric(0.4),
                                            WeightScheme::custom({0.6, 0.2, 0.1})};
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 2 + rng() % 7;
        const OrderedFocalSet a = random_focal(rng, n);
        const OrderedFocalSet b = random_focal(rng, n);
        for (const auto& scheme : schemes) {
            for (const auto& depth :
                 {DepthSpec::defaults(), DepthSpec::truncate(1 + rng() % 8)}) {
                const double kab = k_perm(a, b, scheme, depth);
                const double kba = k_perm(b, a, scheme, depth);
                CHECK(kab == doctest::Approx(kba).epsilon(1e-12));
                CHECK(kab >= 0.0);
                CHECK(kab <= 1.0 + 1e-12);
                CHECK(k_perm(a, a, scheme, depth) == doctest::Approx(0.0));
            }
        }
        const double kab = k_perm(a, b, WeightScheme::geometric(0.6), DepthSpec::unbounded());
        CHECK(kab == doctest::Approx(k_perm(b, a, WeightScheme::geometric(0.6),
                                            DepthSpec::unbounded()))
                         .epsilon(1e-12));
        CHECK(k_perm(a, a, WeightScheme::geometric(0.6), DepthSpec::unbounded()) ==
              doctest::Approx(0.0));
    }
}

TEST_CASE("uniform default reaches 1 exactly on disjoint supports") {
    const auto focal_sets = all_focal_sets(4);
    for (const auto& a : focal_sets) {
        for (const auto& b : focal_sets) {
            const double k = k_perm(a, b, WeightScheme::uniform(), DepthSpec::defaults());
            if ((a.support() & b.support()) == 0) {
                CHECK(k == doctest::Approx(1.0));
            } else {
                CHECK(k < 1.0);
            }
        }
    }
}

TEST_CASE("truncated geometric weights carry mass 1 - p^n") {
    for (double p : {0.0, 0.1, 0.5, 0.9}) {
        for (std::size_t n = 1; n <= 12; ++n) {
            double sum = 0.0;
            for (std::size_t d = 1; d <= n; ++d) {
                sum += weight_at(WeightScheme::geometric(p), d, n);
            }
            CHECK(sum == doctest::Approx(1.0 - std::pow(p, static_cast<double>(n)))
                             .epsilon(1e-12));
        }
    }
}

TEST_CASE("adjacent transposition of the identity costs 1/(t*c)") {
    for (std::size_t c = 2; c <= 8; ++c) {
        std::vector<ElementIndex> identity(c);
        std::iota(identity.begin(), identity.end(), ElementIndex{0});
        for (std::size_t t = 1; t < c; ++t) {
            std::vector<ElementIndex> swapped = identity;
            std::swap(swapped[t - 1], swapped[t]);
            const double k = k_perm(OrderedFocalSet(identity), OrderedFocalSet(swapped),
                                    WeightScheme::uniform(), DepthSpec::defaults());
            CHECK(k == doctest::Approx(1.0 / (static_cast<double>(t) * static_cast<double>(c)))
                           .epsilon(1e-12));
        }
    }
}

TEST_CASE("weighted agreements reconcile with AO and RBO") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + rng() % 7;
        const OrderedFocalSet a = random_focal(rng, n);
        const OrderedFocalSet b = random_focal(rng, n);
        const std::size_t depth = std::max(a.size(), b.size());

        double uniform_sum = 0.0;
        double geometric_sum = 0.0;
        for (std::size_t d = 1; d <= depth; ++d) {
            uniform_sum += weight_at(WeightScheme::uniform(), d, depth) * agreement_at(a, b, d);
            geometric_sum +=
                weight_at(WeightScheme::geometric(0.6), d, depth) * agreement_at(a, b, d);
        }
        CHECK(uniform_sum == doctest::Approx(average_overlap(a, b, depth)).epsilon(1e-12));
        CHECK(geometric_sum == doctest::Approx(rbo_similarity(a, b, 0.6, depth)).epsilon(1e-12));
    }
}

}  // TEST_SUITE
