#pragma once

#include <utility>
#include <vector>

#include "rpsconf/classify.hpp"
#include "rpsconf/evidence.hpp"
#include "rpsconf/overlap.hpp"

namespace rpsconf {

struct PairTerm {
    OrderedFocalSet a;
    OrderedFocalSet b;
    double mass_product = 0.0;
    double k_perm = 0.0;
    PairClass taxonomy = PairClass::Identical;
};

/// Full decomposition of a body-level conflict: the total plus one term per
/// cross pair of focal sets, in (i, j)-sorted order.
struct ConflictReport {
    double total = 0.0;
    std::vector<PairTerm> pairs;
    WeightScheme scheme;
    DepthSpec depth;
};

namespace detail {

inline void require_same_frame(const Frame& a, const Frame& b) {
    if (a != b) {
        throw Error(ErrorKind::FrameMismatch, "bodies live on different frames");
    }
}

}  // namespace detail

/// Conflict between two bodies: the mass-product-weighted sum of k_perm over
/// all cross pairs. Identical pairs contribute zero (and are reported with
/// k_perm = 0). Pairs are accumulated in (i, j) order of both keys, so the
/// total is bit-reproducible.
inline ConflictReport conf(const PermutationMassFunction& pmf1,
                           const PermutationMassFunction& pmf2, const WeightScheme& scheme,
                           const DepthSpec& depth) {
    detail::require_same_frame(pmf1.frame(), pmf2.frame());
    ConflictReport report{0.0, {}, scheme, depth};
    report.pairs.reserve(pmf1.entries().size() * pmf2.entries().size());
    for (const auto& [a, mass_a] : pmf1.entries()) {
        for (const auto& [b, mass_b] : pmf2.entries()) {
            PairTerm term;
            term.a = a;
            term.b = b;
            term.mass_product = mass_a * mass_b;
            term.taxonomy = classify_pair(a, b);
            term.k_perm = a == b ? 0.0 : k_perm(a, b, scheme, depth);
            report.total += term.k_perm * term.mass_product;
            report.pairs.push_back(std::move(term));
        }
    }
    return report;
}

/// Classical conflict k: total mass product over pairs of focal sets with
/// empty intersection.
inline double shafer_conflict(const MassFunction& m1, const MassFunction& m2) {
    detail::require_same_frame(m1.frame(), m2.frame());
    double k = 0.0;
    for (const auto& [code_a, mass_a] : m1.entries()) {
        for (const auto& [code_b, mass_b] : m2.entries()) {
            if ((code_a.value & code_b.value) == 0) k += mass_a * mass_b;
        }
    }
    return k;
}

/// Left conflict of the original permutation-set calculus: mass product over
/// pairs whose left intersection is the empty sequence.
inline double left_conflict(const PermutationMassFunction& pmf1,
                            const PermutationMassFunction& pmf2) {
    detail::require_same_frame(pmf1.frame(), pmf2.frame());
    double k = 0.0;
    for (const auto& [a, mass_a] : pmf1.entries()) {
        for (const auto& [b, mass_b] : pmf2.entries()) {
            if (left_intersection(a, b).empty()) k += mass_a * mass_b;
        }
    }
    return k;
}

/// Right conflict: as left_conflict but gated on the right intersection.
inline double right_conflict(const PermutationMassFunction& pmf1,
                             const PermutationMassFunction& pmf2) {
    detail::require_same_frame(pmf1.frame(), pmf2.frame());
    double k = 0.0;
    for (const auto& [a, mass_a] : pmf1.entries()) {
        for (const auto& [b, mass_b] : pmf2.entries()) {
            if (right_intersection(a, b).empty()) k += mass_a * mass_b;
        }
    }
    return k;
}

}  // namespace rpsconf
