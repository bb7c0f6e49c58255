#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rpsconf/frame.hpp"

namespace rpsconf {

inline constexpr double kMassSumTolerance = 1e-9;

/// Raw focal record before validation: an element sequence plus a mass.
/// Drafts may violate every invariant; validate_body reports what is wrong.
struct FocalDraft {
    std::vector<ElementIndex> elements;
    double mass = 0.0;
};

struct Violation {
    ErrorKind kind;
    std::string detail;
};

struct Verdict {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

namespace detail {

inline std::string sequence_text(const std::vector<ElementIndex>& elements) {
    std::string s = "(";
    for (std::size_t t = 0; t < elements.size(); ++t) {
        if (t) s += ' ';
        s += std::to_string(elements[t]);
    }
    return s + ")";
}

}  // namespace detail

/// Checks every body-of-evidence invariant against a draft and reports all
/// violations found; never throws. Records with mass exactly zero are
/// ignored, matching their removal at construction.
inline Verdict validate_body(const Frame& frame, const std::vector<FocalDraft>& records) {
    Verdict verdict;
    double sum = 0.0;
    bool any = false;
    for (const auto& rec : records) {
        if (!(rec.mass >= 0.0) || !std::isfinite(rec.mass) || rec.mass > 1.0 + kMassSumTolerance) {
            verdict.violations.push_back(
                {ErrorKind::MassOutOfRange, "mass " + std::to_string(rec.mass) + " for " +
                                                detail::sequence_text(rec.elements)});
            continue;
        }
        if (rec.mass == 0.0) continue;
        any = true;
        sum += rec.mass;
        if (rec.elements.empty()) {
            verdict.violations.push_back({ErrorKind::EmptyFocalSet, "focal set with mass " +
                                                                        std::to_string(rec.mass)});
            continue;
        }
        SupportMask seen = 0;
        for (ElementIndex e : rec.elements) {
            if (e >= frame.size()) {
                verdict.violations.push_back(
                    {ErrorKind::UnknownElement, "element index " + std::to_string(e) + " in " +
                                                    detail::sequence_text(rec.elements)});
                break;
            }
            SupportMask bit = SupportMask{1} << e;
            if (seen & bit) {
                verdict.violations.push_back(
                    {ErrorKind::DuplicateElement, "element " + frame.label(e) + " repeats in " +
                                                      detail::sequence_text(rec.elements)});
                break;
            }
            seen |= bit;
        }
    }
    if (!any || std::fabs(sum - 1.0) > kMassSumTolerance) {
        verdict.violations.push_back(
            {ErrorKind::MassSumViolation, "masses sum to " + std::to_string(sum)});
    }
    return verdict;
}

enum class Normalize : std::uint8_t { No, Yes };

/// Body of evidence over the permutation event space: a map from ordered
/// focal sets to strictly positive masses summing to one. Immutable after
/// construction. Entries with identical sequences merge additively; zero-mass
/// records are dropped. Entries iterate sorted by (i, j) codes so downstream
/// summations are reproducible bit-for-bit.
class PermutationMassFunction {
  public:
    using Entry = std::pair<OrderedFocalSet, double>;

    PermutationMassFunction(Frame frame, std::vector<FocalDraft> records,
                            Normalize normalize = Normalize::No)
        : frame_(std::move(frame)) {
        if (normalize == Normalize::Yes) {
            double sum = 0.0;
            for (const auto& rec : records) sum += rec.mass;
            if (!(sum > 0.0) || !std::isfinite(sum)) {
                throw Error(ErrorKind::MassSumViolation,
                            "cannot renormalize masses summing to " + std::to_string(sum));
            }
            for (auto& rec : records) rec.mass /= sum;
        }
        Verdict verdict = validate_body(frame_, records);
        if (!verdict.ok()) {
            const auto& v = verdict.violations.front();
            throw Error(v.kind, v.detail + " (" + std::to_string(verdict.violations.size()) +
                                    " violation(s) total)");
        }
        std::map<OrderedFocalSet, double> merged;
        for (auto& rec : records) {
            if (rec.mass == 0.0) continue;
            merged[OrderedFocalSet(std::move(rec.elements))] += rec.mass;
        }
        entries_.assign(merged.begin(), merged.end());
    }

    static PermutationMassFunction from_labels(
        const Frame& frame,
        const std::vector<std::pair<std::vector<std::string>, double>>& records,
        Normalize normalize = Normalize::No) {
        std::vector<FocalDraft> drafts;
        drafts.reserve(records.size());
        for (const auto& [labels, mass] : records) {
            FocalDraft d;
            d.mass = mass;
            d.elements.reserve(labels.size());
            for (const auto& l : labels) d.elements.push_back(frame.index_of(l));
            drafts.push_back(std::move(d));
        }
        return PermutationMassFunction(frame, std::move(drafts), normalize);
    }

    const Frame& frame() const { return frame_; }
    const std::vector<Entry>& entries() const { return entries_; }
    std::size_t focal_count() const { return entries_.size(); }
    bool categorical() const { return entries_.size() == 1; }

  private:
    Frame frame_;
    std::vector<Entry> entries_;
};

/// Classical mass function (BBA): subset codes to positive masses summing to
/// one, closed world (no mass on the empty set).
class MassFunction {
  public:
    using Entry = std::pair<SubsetCode, double>;

    MassFunction(Frame frame, std::vector<Entry> records) : frame_(std::move(frame)) {
        std::map<std::uint64_t, double> merged;
        double sum = 0.0;
        for (const auto& [code, mass] : records) {
            if (!(mass >= 0.0) || !std::isfinite(mass)) {
                throw Error(ErrorKind::MassOutOfRange, "mass " + std::to_string(mass));
            }
            if (mass == 0.0) continue;
            if (code.value == 0) {
                throw Error(ErrorKind::EmptyFocalSet, "mass assigned to the empty set");
            }
            if (frame_.size() < kMaxFrameSize &&
                code.value >= (std::uint64_t{1} << frame_.size())) {
                throw Error(ErrorKind::UnknownElement,
                            "subset code " + std::to_string(code.value) + " outside frame");
            }
            merged[code.value] += mass;
            sum += mass;
        }
        if (std::fabs(sum - 1.0) > kMassSumTolerance) {
            throw Error(ErrorKind::MassSumViolation, "masses sum to " + std::to_string(sum));
        }
        entries_.reserve(merged.size());
        for (const auto& [value, mass] : merged) entries_.push_back({SubsetCode{value}, mass});
    }

    const Frame& frame() const { return frame_; }
    const std::vector<Entry>& entries() const { return entries_; }

  private:
    Frame frame_;
    std::vector<Entry> entries_;
};

/// Forgets order: each subset collects the mass of every arrangement of it.
inline MassFunction degrade_to_bba(const PermutationMassFunction& pmf) {
    std::vector<MassFunction::Entry> records;
    records.reserve(pmf.entries().size());
    for (const auto& [focal, mass] : pmf.entries()) {
        records.push_back({SubsetCode{focal.support()}, mass});
    }
    return MassFunction(pmf.frame(), std::move(records));
}

// ---------------------------------------------------------------------------
// Left / right intersections of permutation events
// ---------------------------------------------------------------------------

/// Elements of `a` that also occur in `b`, kept in a's order.
inline OrderedFocalSet left_intersection(const OrderedFocalSet& a, const OrderedFocalSet& b) {
    std::vector<ElementIndex> out;
    for (ElementIndex e : a.elements()) {
        if (b.contains(e)) out.push_back(e);
    }
    return OrderedFocalSet(std::move(out));
}

/// Elements of `b` that also occur in `a`, kept in b's order.
inline OrderedFocalSet right_intersection(const OrderedFocalSet& a, const OrderedFocalSet& b) {
    return left_intersection(b, a);
}

}  // namespace rpsconf
