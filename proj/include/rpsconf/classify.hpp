#pragma once

#include <string>

#include "rpsconf/evidence.hpp"

namespace rpsconf {

enum class PairClass : std::uint8_t {
    Identical,
    Disjoint,
    OrderOnly,
    ElementOnly,
    OrderAndElement,
};

enum class BodyClass : std::uint8_t {
    TotalConflict,
    StrongConflict,
    WeakConflict,
    NonConflict,
    Unclassified,
};

inline const char* to_string(PairClass c) {
    switch (c) {
        case PairClass::Identical: return "Identical";
        case PairClass::Disjoint: return "Disjoint";
        case PairClass::OrderOnly: return "OrderOnly";
        case PairClass::ElementOnly: return "ElementOnly";
        case PairClass::OrderAndElement: return "OrderAndElement";
    }
    return "?";
}

inline const char* to_string(BodyClass c) {
    switch (c) {
        case BodyClass::TotalConflict: return "TotalConflict";
        case BodyClass::StrongConflict: return "StrongConflict";
        case BodyClass::WeakConflict: return "WeakConflict";
        case BodyClass::NonConflict: return "NonConflict";
        case BodyClass::Unclassified: return "Unclassified";
    }
    return "?";
}

/// True iff some element common to both permutations sits at different
/// 1-based positions.
inline bool has_order_conflict(const OrderedFocalSet& a, const OrderedFocalSet& b) {
    for (ElementIndex e : a.elements()) {
        if (b.contains(e) && a.position_of(e) != b.position_of(e)) return true;
    }
    return false;
}

/// True iff the permutations disagree on element membership: either the left
/// and right intersections coincide as sequences while the permutations
/// differ, or the intersections differ and so do the supports (element loss
/// accompanying the reordering). Identical and disjoint pairs never conflict
/// elementally.
inline bool has_elemental_conflict(const OrderedFocalSet& a, const OrderedFocalSet& b) {
    if (a == b) return false;
    if ((a.support() & b.support()) == 0) return false;
    if (left_intersection(a, b) == right_intersection(a, b)) return true;
    return a.support() != b.support();
}

inline PairClass classify_pair(const OrderedFocalSet& a, const OrderedFocalSet& b) {
    if (a == b) return PairClass::Identical;
    if ((a.support() & b.support()) == 0) return PairClass::Disjoint;
    const bool order = has_order_conflict(a, b);
    const bool elemental = has_elemental_conflict(a, b);
    if (order && elemental) return PairClass::OrderAndElement;
    if (order) return PairClass::OrderOnly;
    // A non-identical, non-disjoint pair without order conflict always loses
    // elements (equal supports plus equal positions would make them identical).
    return PairClass::ElementOnly;
}

/// Conflict level of two bodies from the cross-pair classes. Disjoint pairs
/// count toward strong conflict (empty intersection is the stronger
/// disagreement); mixtures the four levels do not cover are Unclassified.
inline BodyClass classify_bodies(const PermutationMassFunction& pmf1,
                                 const PermutationMassFunction& pmf2) {
    if (pmf1.frame() != pmf2.frame()) {
        throw Error(ErrorKind::FrameMismatch, "bodies live on different frames");
    }
    bool all_disjoint = true;
    bool all_identical = true;
    bool all_strong = true;
    bool all_single_kind = true;
    for (const auto& [a, mass_a] : pmf1.entries()) {
        for (const auto& [b, mass_b] : pmf2.entries()) {
            switch (classify_pair(a, b)) {
                case PairClass::Disjoint:
                    all_identical = false;
                    all_single_kind = false;
                    break;
                case PairClass::Identical:
                    all_disjoint = false;
                    all_strong = false;
                    all_single_kind = false;
                    break;
                case PairClass::OrderAndElement:
                    all_disjoint = false;
                    all_identical = false;
                    all_single_kind = false;
                    break;
                case PairClass::OrderOnly:
                case PairClass::ElementOnly:
                    all_disjoint = false;
                    all_identical = false;
                    all_strong = false;
                    break;
            }
        }
    }
    if (all_disjoint) return BodyClass::TotalConflict;
    if (all_identical) return BodyClass::NonConflict;  // both categorical, same focal set
    if (all_strong) return BodyClass::StrongConflict;
    if (all_single_kind) return BodyClass::WeakConflict;
    return BodyClass::Unclassified;
}

}  // namespace rpsconf
