#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "rpsconf/frame.hpp"

namespace rpsconf {

// ---------------------------------------------------------------------------
// Depth weights
// ---------------------------------------------------------------------------

/// Per-depth weight profile alpha_d for the conflict sum.
class WeightScheme {
  public:
    enum class Kind : std::uint8_t { Uniform, Geometric, Custom };

    static WeightScheme uniform() { return WeightScheme(Kind::Uniform, 0.0, {}); }

    /// Geometric decay alpha_d = (1-p) p^(d-1). p = 0 concentrates all weight
    /// at depth 1; p = 1 is rejected as arbitrarily flat.
    static WeightScheme geometric(double p) {
        if (!(p >= 0.0 && p < 1.0)) {
            throw Error(ErrorKind::ParameterOutOfRange,
                        "geometric decay requires 0 <= p < 1, got " + std::to_string(p));
        }
        return WeightScheme(Kind::Geometric, p, {});
    }

    static WeightScheme custom(std::vector<double> weights) {
        double sum = 0.0;
        for (double w : weights) {
            if (!(w >= 0.0) || !std::isfinite(w)) {
                throw Error(ErrorKind::ParameterOutOfRange,
                            "custom weights must be non-negative, got " + std::to_string(w));
            }
            sum += w;
        }
        if (sum > 1.0 + 1e-9) {
            throw Error(ErrorKind::ParameterOutOfRange,
                        "custom weights sum to " + std::to_string(sum) + " > 1");
        }
        return WeightScheme(Kind::Custom, 0.0, std::move(weights));
    }

    Kind kind() const { return kind_; }
    double p() const { return p_; }
    const std::vector<double>& weights() const { return weights_; }

    std::string describe() const {
        switch (kind_) {
            case Kind::Uniform: return "uniform";
            case Kind::Geometric: return "geometric(p=" + std::to_string(p_) + ")";
            case Kind::Custom: return "custom(" + std::to_string(weights_.size()) + " weights)";
        }
        return "?";
    }

  private:
    WeightScheme(Kind kind, double p, std::vector<double> weights)
        : kind_(kind), p_(p), weights_(std::move(weights)) {}

    Kind kind_;
    double p_;
    std::vector<double> weights_;
};

/// How deep the depth sum runs: the per-pair default max(|A|, |B|), an
/// explicit truncation, or the full geometric series.
class DepthSpec {
  public:
    enum class Kind : std::uint8_t { Default, Truncate, Unbounded };

    static DepthSpec defaults() { return DepthSpec(Kind::Default, 0); }

    static DepthSpec truncate(std::size_t n) {
        if (n < 1) {
            throw Error(ErrorKind::ParameterOutOfRange, "truncation depth must be >= 1");
        }
        return DepthSpec(Kind::Truncate, n);
    }

    static DepthSpec unbounded() { return DepthSpec(Kind::Unbounded, 0); }

    Kind kind() const { return kind_; }
    std::size_t truncation() const { return n_; }

    std::string describe() const {
        switch (kind_) {
            case Kind::Default: return "default";
            case Kind::Truncate: return std::to_string(n_);
            case Kind::Unbounded: return "unbounded";
        }
        return "?";
    }

  private:
    DepthSpec(Kind kind, std::size_t n) : kind_(kind), n_(n) {}

    Kind kind_;
    std::size_t n_;
};

/// alpha_d under `scheme` with resolved evaluation depth n.
inline double weight_at(const WeightScheme& scheme, std::size_t d, std::size_t n) {
    if (d < 1) {
        throw Error(ErrorKind::ParameterOutOfRange, "depth must be >= 1");
    }
    switch (scheme.kind()) {
        case WeightScheme::Kind::Uniform:
            if (n < 1) {
                throw Error(ErrorKind::UnboundedUniform,
                            "uniform weights need a finite depth");
            }
            return d <= n ? 1.0 / static_cast<double>(n) : 0.0;
        case WeightScheme::Kind::Geometric: {
            const double p = scheme.p();
            if (d == 1) return 1.0 - p;
            return (1.0 - p) * std::pow(p, static_cast<double>(d - 1));
        }
        case WeightScheme::Kind::Custom: {
            const auto& w = scheme.weights();
            return d <= w.size() ? w[d - 1] : 0.0;
        }
    }
    return 0.0;
}

// ---------------------------------------------------------------------------
// Prefix-set overlap
// ---------------------------------------------------------------------------

/// Support of the first min(d, |a|) elements of `a` — prefixes saturate past
/// the end of the sequence.
inline SupportMask prefix_set(const OrderedFocalSet& a, std::size_t d) {
    if (d < 1) {
        throw Error(ErrorKind::ParameterOutOfRange, "depth must be >= 1");
    }
    SupportMask mask = 0;
    const std::size_t take = std::min(d, a.size());
    for (std::size_t t = 0; t < take; ++t) mask |= SupportMask{1} << a.elements()[t];
    return mask;
}

/// |I_d|: size of the intersection of the depth-d prefixes.
inline std::size_t overlap_at(const OrderedFocalSet& a, const OrderedFocalSet& b, std::size_t d) {
    return static_cast<std::size_t>(std::popcount(prefix_set(a, d) & prefix_set(b, d)));
}

/// C_d = |I_d| / d.
inline double agreement_at(const OrderedFocalSet& a, const OrderedFocalSet& b, std::size_t d) {
    return static_cast<double>(overlap_at(a, b, d)) / static_cast<double>(d);
}

/// InC_d = (max(|A_{1:d}|, |B_{1:d}|) - |I_d|) / d, with saturated prefixes.
inline double inconsistency_at(const OrderedFocalSet& a, const OrderedFocalSet& b,
                               std::size_t d) {
    if (d < 1) {
        throw Error(ErrorKind::ParameterOutOfRange, "depth must be >= 1");
    }
    const std::size_t len_a = std::min(d, a.size());
    const std::size_t len_b = std::min(d, b.size());
    const std::size_t longest = std::max(len_a, len_b);
    return static_cast<double>(longest - overlap_at(a, b, d)) / static_cast<double>(d);
}

/// AO(a, b, n): plain average of the agreements through depth n.
inline double average_overlap(const OrderedFocalSet& a, const OrderedFocalSet& b,
                              std::size_t n) {
    if (n < 1) {
        throw Error(ErrorKind::ParameterOutOfRange, "depth must be >= 1");
    }
    double sum = 0.0;
    for (std::size_t d = 1; d <= n; ++d) sum += agreement_at(a, b, d);
    return sum / static_cast<double>(n);
}

/// RBO partial sum (1-p) * sum_{d<=eval_depth} p^(d-1) C_d. Requires strictly
/// interior p.
inline double rbo_similarity(const OrderedFocalSet& a, const OrderedFocalSet& b, double p,
                             std::size_t eval_depth) {
    if (!(p > 0.0 && p < 1.0)) {
        throw Error(ErrorKind::ParameterOutOfRange,
                    "rank-biased overlap requires 0 < p < 1, got " + std::to_string(p));
    }
    if (eval_depth < 1) {
        throw Error(ErrorKind::ParameterOutOfRange, "depth must be >= 1");
    }
    double sum = 0.0;
    double pw = 1.0;  // p^(d-1)
    for (std::size_t d = 1; d <= eval_depth; ++d, pw *= p) {
        sum += pw * agreement_at(a, b, d);
    }
    return (1.0 - p) * sum;
}

// ---------------------------------------------------------------------------
// Permutation-level conflict k_perm
// ---------------------------------------------------------------------------

namespace detail {

/// -ln(1-p) - sum_{d=1..d0} p^d / d, the tail of the logarithm series.
/// Equals sum_{d>d0} p^d / d for 0 <= p < 1.
inline double log_series_tail(double p, std::size_t d0) {
    if (p == 0.0) return 0.0;
    double head = 0.0;
    double pw = 1.0;  // p^d after multiply
    for (std::size_t d = 1; d <= d0; ++d) {
        pw *= p;
        head += pw / static_cast<double>(d);
    }
    return -std::log1p(-p) - head;
}

/// Incremental InC_d walk for d = 1..n; calls sink(d, inc_d).
template <typename Sink>
inline void walk_inconsistencies(const OrderedFocalSet& a, const OrderedFocalSet& b,
                                 std::size_t n, Sink&& sink) {
    SupportMask mask_a = 0;
    SupportMask mask_b = 0;
    for (std::size_t d = 1; d <= n; ++d) {
        if (d <= a.size()) mask_a |= SupportMask{1} << a.elements()[d - 1];
        if (d <= b.size()) mask_b |= SupportMask{1} << b.elements()[d - 1];
        const std::size_t longest = std::max(std::min(d, a.size()), std::min(d, b.size()));
        const std::size_t overlap = static_cast<std::size_t>(std::popcount(mask_a & mask_b));
        sink(d, static_cast<double>(longest - overlap) / static_cast<double>(d));
    }
}

/// Exact value of the full geometric series for a finite pair. Beyond
/// d0 = max(|a|, |b|) both prefixes are saturated, so InC_d = c / d with
/// constant c = max(|a|, |b|) - |support intersection|, and the remaining sum
/// reduces to the logarithm series.
inline double unbounded_geometric(const OrderedFocalSet& a, const OrderedFocalSet& b, double p) {
    const std::size_t d0 = std::max<std::size_t>(1, std::max(a.size(), b.size()));
    if (p == 0.0) return inconsistency_at(a, b, 1);
    double head = 0.0;
    walk_inconsistencies(a, b, d0, [&](std::size_t d, double inc) {
        head += (1.0 - p) * std::pow(p, static_cast<double>(d - 1)) * inc;
    });
    const auto shared = static_cast<double>(std::popcount(a.support() & b.support()));
    const double c = static_cast<double>(std::max(a.size(), b.size())) - shared;
    return head + c * ((1.0 - p) / p) * log_series_tail(p, d0);
}

}  // namespace detail

/// Conflict between two permutations: the weighted sum of the per-depth
/// inconsistency ratios. Default depth is max(|a|, |b|); Unbounded evaluates
/// the complete geometric series in closed form and requires geometric
/// weights.
inline double k_perm(const OrderedFocalSet& a, const OrderedFocalSet& b,
                     const WeightScheme& scheme, const DepthSpec& depth) {
    if (depth.kind() == DepthSpec::Kind::Unbounded) {
        if (scheme.kind() != WeightScheme::Kind::Geometric) {
            throw Error(ErrorKind::UnboundedUniform,
                        "unbounded depth requires geometric weights, got " + scheme.describe());
        }
        return detail::unbounded_geometric(a, b, scheme.p());
    }
    const std::size_t n = depth.kind() == DepthSpec::Kind::Truncate
                              ? depth.truncation()
                              : std::max<std::size_t>(1, std::max(a.size(), b.size()));
    double sum = 0.0;
    detail::walk_inconsistencies(a, b, n,
                                 [&](std::size_t d, double inc) {
                                     if (inc != 0.0) sum += weight_at(scheme, d, n) * inc;
                                 });
    return sum;
}

/// Limit of k_perm(X, b) where X is the unbounded index-ordered sequence
/// (w1 w2 w3 ...): the prefix of X at depth d is always the first d frame
/// elements, so past d0 = max(|b|, highest index in b + 1) the inconsistency
/// is (d - |b|) / d and the series again closes over the logarithm tail.
inline double k_perm_vs_unbounded_identity(const OrderedFocalSet& b, double p) {
    if (!(p >= 0.0 && p < 1.0)) {
        throw Error(ErrorKind::ParameterOutOfRange,
                    "geometric decay requires 0 <= p < 1, got " + std::to_string(p));
    }
    ElementIndex highest = 0;
    for (ElementIndex e : b.elements()) highest = std::max(highest, e);
    const std::size_t d0 =
        std::max<std::size_t>(std::max<std::size_t>(1, b.size()), highest + 1);
    double head = 0.0;
    SupportMask identity_mask = 0;
    for (std::size_t d = 1; d <= d0; ++d) {
        identity_mask |= SupportMask{1} << (d - 1);
        const std::size_t overlap =
            static_cast<std::size_t>(std::popcount(identity_mask & prefix_set(b, d)));
        const double inc = static_cast<double>(d - overlap) / static_cast<double>(d);
        if (p == 0.0) return inc;  // only depth 1 carries weight
        head += (1.0 - p) * std::pow(p, static_cast<double>(d - 1)) * inc;
    }
    const double tail = std::pow(p, static_cast<double>(d0)) -
                        static_cast<double>(b.size()) * ((1.0 - p) / p) *
                            detail::log_series_tail(p, d0);
    return head + tail;
}

}  // namespace rpsconf
