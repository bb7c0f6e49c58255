#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rpsconf/errors.hpp"

namespace rpsconf {

using ElementIndex = std::uint32_t;

/// Bit-vector over frame indices: bit t set <=> element with index t present.
using SupportMask = std::uint64_t;

/// Decimal code of a subset under the binary focal-set encoding.
/// Numerically identical to the subset's support mask.
struct SubsetCode {
    std::uint64_t value = 0;
    friend bool operator==(SubsetCode a, SubsetCode b) { return a.value == b.value; }
    friend bool operator<(SubsetCode a, SubsetCode b) { return a.value < b.value; }
};

/// 1-based lexicographic rank of an arrangement among the permutations of its
/// support, relative to the index-sorted base sequence.
struct OrderCode {
    std::uint64_t value = 1;
    friend bool operator==(OrderCode a, OrderCode b) { return a.value == b.value; }
    friend bool operator<(OrderCode a, OrderCode b) { return a.value < b.value; }
};

struct FocalCode {
    SubsetCode i;
    OrderCode j;
};

inline constexpr std::size_t kMaxFrameSize = 64;

// 21! overflows 64 bits; rank arithmetic is limited to cardinality <= 20.
inline constexpr std::size_t kMaxRankedCardinality = 20;

inline std::uint64_t factorial(std::size_t c) {
    if (c > kMaxRankedCardinality) {
        throw Error(ErrorKind::CodeOutOfRange,
                    "cardinality " + std::to_string(c) + " exceeds 64-bit factorial range");
    }
    std::uint64_t f = 1;
    for (std::size_t k = 2; k <= c; ++k) f *= k;
    return f;
}

/// Frame of discernment: an ordered universe of distinct element labels.
/// The label order fixes element indices and hence all subset/order codes.
class Frame {
  public:
    explicit Frame(std::vector<std::string> labels) : labels_(std::move(labels)) {
        if (labels_.empty() || labels_.size() > kMaxFrameSize) {
            throw Error(ErrorKind::ParameterOutOfRange,
                        "frame size must be in [1, 64], got " + std::to_string(labels_.size()));
        }
        for (ElementIndex t = 0; t < labels_.size(); ++t) {
            auto [it, inserted] = index_of_.emplace(labels_[t], t);
            if (!inserted) {
                throw Error(ErrorKind::DuplicateElement,
                            "frame label repeats: " + labels_[t]);
            }
        }
    }

    /// Convenience frame with labels w1..wn.
    static Frame of_size(std::size_t n) {
        std::vector<std::string> labels;
        labels.reserve(n);
        for (std::size_t t = 1; t <= n; ++t) labels.push_back("w" + std::to_string(t));
        return Frame(std::move(labels));
    }

    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(ElementIndex t) const { return labels_.at(t); }

    bool has_label(const std::string& label) const { return index_of_.count(label) != 0; }

    ElementIndex index_of(const std::string& label) const {
        auto it = index_of_.find(label);
        if (it == index_of_.end()) {
            throw Error(ErrorKind::UnknownElement, "element not in frame: " + label);
        }
        return it->second;
    }

    friend bool operator==(const Frame& a, const Frame& b) { return a.labels_ == b.labels_; }
    friend bool operator!=(const Frame& a, const Frame& b) { return !(a == b); }

  private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, ElementIndex> index_of_;
};

/// A duplicate-free sequence of frame element indices. The sequence order is
/// the qualitative ranking of the focal set; the empty sequence is a valid
/// value here (it shows up as an intersection result and as the code (0, 1)),
/// mass functions reject it separately.
class OrderedFocalSet {
  public:
    OrderedFocalSet() = default;

    explicit OrderedFocalSet(std::vector<ElementIndex> elements)
        : elements_(std::move(elements)) {
        for (ElementIndex e : elements_) {
            if (e >= kMaxFrameSize) {
                throw Error(ErrorKind::UnknownElement,
                            "element index " + std::to_string(e) + " out of range");
            }
            SupportMask bit = SupportMask{1} << e;
            if (mask_ & bit) {
                throw Error(ErrorKind::DuplicateElement,
                            "element repeats in ordered focal set at index " + std::to_string(e));
            }
            mask_ |= bit;
        }
    }

    static OrderedFocalSet from_labels(const Frame& frame,
                                       const std::vector<std::string>& labels) {
        std::vector<ElementIndex> elems;
        elems.reserve(labels.size());
        for (const auto& l : labels) elems.push_back(frame.index_of(l));
        return OrderedFocalSet(std::move(elems));
    }

    const std::vector<ElementIndex>& elements() const { return elements_; }
    std::size_t size() const { return elements_.size(); }
    bool empty() const { return elements_.empty(); }
    SupportMask support() const { return mask_; }

    bool contains(ElementIndex e) const { return (mask_ >> e) & 1u; }

    /// 1-based position of an element (the index function rho); 0 if absent.
    std::size_t position_of(ElementIndex e) const {
        if (!contains(e)) return 0;
        auto it = std::find(elements_.begin(), elements_.end(), e);
        return static_cast<std::size_t>(it - elements_.begin()) + 1;
    }

    std::vector<std::string> to_labels(const Frame& frame) const {
        std::vector<std::string> out;
        out.reserve(elements_.size());
        for (ElementIndex e : elements_) {
            if (e >= frame.size()) {
                throw Error(ErrorKind::UnknownElement,
                            "element index " + std::to_string(e) + " not in frame");
            }
            out.push_back(frame.label(e));
        }
        return out;
    }

    friend bool operator==(const OrderedFocalSet& a, const OrderedFocalSet& b) {
        return a.elements_ == b.elements_;
    }
    friend bool operator!=(const OrderedFocalSet& a, const OrderedFocalSet& b) {
        return !(a == b);
    }
    /// Orders by (subset code, lexicographic sequence); for equal supports the
    /// sequence order coincides with the order-rank j, so this sorts by (i, j).
    friend bool operator<(const OrderedFocalSet& a, const OrderedFocalSet& b) {
        if (a.mask_ != b.mask_) return a.mask_ < b.mask_;
        return a.elements_ < b.elements_;
    }

  private:
    std::vector<ElementIndex> elements_;
    SupportMask mask_ = 0;
};

// ---------------------------------------------------------------------------
// Subset (bitmask) codes
// ---------------------------------------------------------------------------

inline SubsetCode subset_code(const Frame& frame, const std::vector<std::string>& elements) {
    SupportMask mask = 0;
    for (const auto& label : elements) mask |= SupportMask{1} << frame.index_of(label);
    return SubsetCode{mask};
}

inline std::vector<std::string> subset_from_code(const Frame& frame, SubsetCode code) {
    if (frame.size() < kMaxFrameSize && code.value >= (SupportMask{1} << frame.size())) {
        throw Error(ErrorKind::CodeOutOfRange,
                    "subset code " + std::to_string(code.value) + " needs more than " +
                        std::to_string(frame.size()) + " elements");
    }
    std::vector<std::string> out;
    for (ElementIndex t = 0; t < frame.size(); ++t) {
        if ((code.value >> t) & 1u) out.push_back(frame.label(t));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Order (Lehmer) codes
// ---------------------------------------------------------------------------

/// Lexicographic rank of the arrangement against its index-sorted base
/// sequence, 1-based so that the sorted arrangement has rank 1.
inline OrderCode order_rank(const OrderedFocalSet& perm) {
    const auto& elems = perm.elements();
    const std::size_t c = elems.size();
    if (c > kMaxRankedCardinality) {
        throw Error(ErrorKind::CodeOutOfRange,
                    "order rank undefined beyond cardinality 20 (64-bit factorial limit)");
    }
    std::uint64_t rank = 0;
    for (std::size_t t = 0; t < c; ++t) {
        std::size_t smaller_remaining = 0;
        for (std::size_t u = t + 1; u < c; ++u) {
            if (elems[u] < elems[t]) ++smaller_remaining;
        }
        rank += smaller_remaining * factorial(c - 1 - t);
    }
    return OrderCode{rank + 1};
}

/// Inverse of order_rank over the subset identified by `code`.
inline OrderedFocalSet perm_from_rank(const Frame& frame, SubsetCode code, OrderCode order) {
    if (frame.size() < kMaxFrameSize && code.value >= (SupportMask{1} << frame.size())) {
        throw Error(ErrorKind::CodeOutOfRange,
                    "subset code " + std::to_string(code.value) + " out of range for frame");
    }
    std::vector<ElementIndex> pool;
    for (ElementIndex t = 0; t < frame.size(); ++t) {
        if ((code.value >> t) & 1u) pool.push_back(t);
    }
    const std::size_t c = pool.size();
    const std::uint64_t c_fact = factorial(c);
    if (order.value < 1 || order.value > c_fact) {
        throw Error(ErrorKind::CodeOutOfRange,
                    "order code " + std::to_string(order.value) + " outside [1, " +
                        std::to_string(c_fact) + "] for cardinality " + std::to_string(c));
    }
    std::uint64_t rem = order.value - 1;
    std::vector<ElementIndex> out;
    out.reserve(c);
    for (std::size_t t = 0; t < c; ++t) {
        const std::uint64_t block = factorial(c - 1 - t);
        const std::size_t pick = static_cast<std::size_t>(rem / block);
        rem %= block;
        out.push_back(pool[pick]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    return OrderedFocalSet(std::move(out));
}

inline FocalCode focal_code(const OrderedFocalSet& perm) {
    return FocalCode{SubsetCode{perm.support()}, order_rank(perm)};
}

/// Row label in the paper's encoding tables, e.g. "F_23^7".
inline std::string focal_label(const OrderedFocalSet& perm) {
    if (perm.size() > kMaxRankedCardinality) {
        return "F_" + std::to_string(perm.support()) + "^?";
    }
    const FocalCode code = focal_code(perm);
    return "F_" + std::to_string(code.i.value) + "^" + std::to_string(code.j.value);
}

}  // namespace rpsconf
