#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rpsconf/conflict.hpp"
#include "rpsconf/io.hpp"

// Built-in bodies of evidence behind the `repro` command: the worked examples
// whose conflict values the numbered tables tabulate. Everything here is
// expressed through the public library surface, so the renderers double as
// end-to-end fixtures for the golden tests.

namespace rpsconf::tables {

namespace fixtures {

inline OrderedFocalSet seq(std::vector<ElementIndex> elems) {
    return OrderedFocalSet(std::move(elems));
}

/// (w1 .. wc) — the index-ordered prefix of length c.
inline OrderedFocalSet prefix(std::size_t c) {
    std::vector<ElementIndex> elems(c);
    std::iota(elems.begin(), elems.end(), ElementIndex{0});
    return OrderedFocalSet(std::move(elems));
}

inline PermutationMassFunction body(const Frame& frame,
                                    std::vector<std::pair<OrderedFocalSet, double>> entries) {
    std::vector<FocalDraft> drafts;
    drafts.reserve(entries.size());
    for (auto& [focal, mass] : entries) drafts.push_back({focal.elements(), mass});
    return PermutationMassFunction(frame, std::move(drafts));
}

// Two five-element-frame bodies: {(w2 w1 w3 w5): 0.6, (w1 w5 w3): 0.4} and
// {(w1 w2 w3 w4 w5): 0.8, (w1 w3): 0.2}.
inline PermutationMassFunction worked_pair_pmf1() {
    const Frame frame = Frame::of_size(5);
    return body(frame, {{seq({1, 0, 2, 4}), 0.6}, {seq({0, 4, 2}), 0.4}});
}

inline PermutationMassFunction worked_pair_pmf2() {
    const Frame frame = Frame::of_size(5);
    return body(frame, {{prefix(5), 0.8}, {seq({0, 2}), 0.2}});
}

/// The nine two-body cases on a seven-element frame.
inline std::pair<PermutationMassFunction, PermutationMassFunction> nine_cases(int case_id) {
    const Frame frame = Frame::of_size(7);
    auto one = [&](OrderedFocalSet f) { return body(frame, {{std::move(f), 1.0}}); };
    switch (case_id) {
        case 1: return {one(seq({0, 1, 2})), one(seq({3, 4, 5}))};
        case 2:
            return {body(frame, {{seq({0, 1}), 0.8}, {seq({3, 6}), 0.2}}),
                    body(frame, {{seq({2, 4}), 0.5}, {seq({5}), 0.5}})};
        case 3:
            return {one(seq({2, 4, 6})),
                    body(frame, {{seq({4, 6}), 0.4}, {seq({6, 2}), 0.6}})};
        case 4:
            return {body(frame, {{seq({0, 1}), 0.3}, {seq({2, 3}), 0.7}}),
                    body(frame, {{seq({1, 2, 3}), 0.5}, {seq({4}), 0.5}})};
        case 5: return {one(seq({1, 2, 3})), one(seq({1, 3, 2}))};
        case 6:
            return {one(seq({1, 2, 3})),
                    body(frame, {{seq({2, 1, 3}), 0.5}, {seq({3, 1, 2}), 0.5}})};
        case 7: return {one(seq({1, 2, 3})), one(seq({1, 2}))};
        case 8:
            return {one(seq({1, 2, 3})),
                    body(frame, {{seq({1}), 0.8}, {seq({1, 2}), 0.2}})};
        case 9: return {one(seq({0, 6, 1, 4})), one(seq({0, 6, 1, 4}))};
        default:
            throw Error(ErrorKind::UnknownTable, "case must be 1..9, got " +
                                                     std::to_string(case_id));
    }
}

// Eight-element-frame body {(w6): 0.2, (w7 w8): 0.3, (w1..w5): 0.5} paired
// against a categorical X that permutes (w1..w5).
inline PermutationMassFunction top_weighted_pmf1() {
    const Frame frame = Frame::of_size(8);
    return body(frame, {{seq({5}), 0.2}, {seq({6, 7}), 0.3}, {prefix(5), 0.5}});
}

inline std::vector<OrderedFocalSet> top_weighted_x_rows() {
    return {seq({1, 0, 2, 3, 4}),   // F_31^25
            seq({0, 2, 1, 3, 4}),   // F_31^7
            seq({0, 1, 3, 2, 4}),   // F_31^3
            seq({0, 1, 2, 4, 3}),   // F_31^2
            prefix(5)};             // F_31^1
}

// Ten-element-frame sweep family: {(w4): 0.05, (w2 w3): 0.05, X: 0.8,
// (w1..w5): 0.1} against categorical {(w1 w2 w3): 1}.
inline Frame sweep_frame() { return Frame::of_size(10); }

inline PermutationMassFunction cardinality_pmf1(const OrderedFocalSet& x) {
    return body(sweep_frame(),
                {{seq({3}), 0.05}, {seq({1, 2}), 0.05}, {x, 0.8}, {prefix(5), 0.1}});
}

inline PermutationMassFunction cardinality_pmf2() {
    return body(sweep_frame(), {{seq({0, 1, 2}), 1.0}});
}

// Seven-element-frame truncation family: {(w2 w3 w1 w4 w5): 0.4,
// (w2 w3): 0.6} against categorical {(w2 w3 w1 w4 w5 w6 w7): 1}.
inline PermutationMassFunction truncation_pmf1() {
    const Frame frame = Frame::of_size(7);
    return body(frame, {{seq({1, 2, 0, 3, 4}), 0.4}, {seq({1, 2}), 0.6}});
}

inline PermutationMassFunction truncation_pmf2() {
    const Frame frame = Frame::of_size(7);
    return body(frame, {{seq({1, 2, 0, 3, 4, 5, 6}), 1.0}});
}

/// Conf for the cardinality family when X is the unbounded index-ordered
/// sequence: finite pairs keep the default depth, the X pair takes the full
/// series.
inline double unbounded_row_conf(double p) {
    const OrderedFocalSet target = seq({0, 1, 2});
    const WeightScheme scheme = WeightScheme::geometric(p);
    const DepthSpec depth = DepthSpec::defaults();
    return 0.05 * k_perm(seq({3}), target, scheme, depth) +
           0.05 * k_perm(seq({1, 2}), target, scheme, depth) +
           0.8 * k_perm_vs_unbounded_identity(target, p) +
           0.1 * k_perm(prefix(5), target, scheme, depth);
}

}  // namespace fixtures

namespace detail {

inline std::string render_depth_profile() {
    const OrderedFocalSet a = fixtures::seq({1, 0, 2, 4});
    const OrderedFocalSet b = fixtures::prefix(5);
    std::string out = "depth,overlap,InC\n";
    for (std::size_t d = 1; d <= 5; ++d) {
        out += csv_line({std::to_string(d), std::to_string(overlap_at(a, b, d)),
                         format_fixed(inconsistency_at(a, b, d), 4)});
    }
    return out;
}

inline std::string render_nine_cases() {
    std::string out = "case,Conf,taxonomy\n";
    for (int case_id = 1; case_id <= 9; ++case_id) {
        const auto [pmf1, pmf2] = fixtures::nine_cases(case_id);
        const double total =
            conf(pmf1, pmf2, WeightScheme::uniform(), DepthSpec::defaults()).total;
        out += csv_line({std::to_string(case_id), format_fixed(total, 4),
                         to_string(classify_bodies(pmf1, pmf2))});
    }
    return out;
}

inline std::string render_top_weightedness() {
    const PermutationMassFunction pmf1 = fixtures::top_weighted_pmf1();
    const MassFunction m1 = degrade_to_bba(pmf1);
    std::string out = "X,k,K_left,K_right,Conf\n";
    for (const auto& x : fixtures::top_weighted_x_rows()) {
        const PermutationMassFunction pmf2 = fixtures::body(pmf1.frame(), {{x, 1.0}});
        out += csv_line({focal_label(x), format_fixed(shafer_conflict(m1, degrade_to_bba(pmf2)), 4),
                         format_fixed(left_conflict(pmf1, pmf2), 4),
                         format_fixed(right_conflict(pmf1, pmf2), 4),
                         format_fixed(conf(pmf1, pmf2, WeightScheme::uniform(),
                                           DepthSpec::defaults())
                                          .total,
                                      4)});
    }
    return out;
}

inline std::string render_cardinality_sweep() {
    const PermutationMassFunction pmf2 = fixtures::cardinality_pmf2();
    const MassFunction m2 = degrade_to_bba(pmf2);
    std::string out = "X,k,K_left,K_right,Conf\n";
    for (std::size_t c = 1; c <= 10; ++c) {
        const OrderedFocalSet x = fixtures::prefix(c);
        const PermutationMassFunction pmf1 = fixtures::cardinality_pmf1(x);
        out += csv_line({focal_label(x), format_fixed(shafer_conflict(degrade_to_bba(pmf1), m2), 4),
                         format_fixed(left_conflict(pmf1, pmf2), 4),
                         format_fixed(right_conflict(pmf1, pmf2), 4),
                         format_fixed(conf(pmf1, pmf2, WeightScheme::uniform(),
                                           DepthSpec::defaults())
                                          .total,
                                      4)});
    }
    return out;
}

inline std::string render_truncation_sweep() {
    const PermutationMassFunction pmf1 = fixtures::truncation_pmf1();
    const PermutationMassFunction pmf2 = fixtures::truncation_pmf2();
    std::string out = "depth,K_left,K_right,Conf\n";
    for (std::size_t d = 1; d <= 7; ++d) {
        out += csv_line({std::to_string(d), format_fixed(left_conflict(pmf1, pmf2), 4),
                         format_fixed(right_conflict(pmf1, pmf2), 4),
                         format_fixed(conf(pmf1, pmf2, WeightScheme::uniform(),
                                           DepthSpec::truncate(d))
                                          .total,
                                      4)});
    }
    return out;
}

inline std::string render_decay_sweep() {
    const PermutationMassFunction pmf2 = fixtures::cardinality_pmf2();
    std::vector<double> ps;
    for (int t = 0; t <= 9; ++t) ps.push_back(0.1 * t);

    std::vector<std::string> header{"X"};
    for (double p : ps) header.push_back("p=" + format_fixed(p, 1));
    std::string out = csv_line(header);

    for (std::size_t c = 1; c <= 10; ++c) {
        const OrderedFocalSet x = fixtures::prefix(c);
        const PermutationMassFunction pmf1 = fixtures::cardinality_pmf1(x);
        std::vector<std::string> cells{focal_label(x)};
        for (double p : ps) {
            cells.push_back(format_fixed(
                conf(pmf1, pmf2, WeightScheme::geometric(p), DepthSpec::defaults()).total, 4));
        }
        out += csv_line(cells);
    }
    std::vector<std::string> cells{"F_inf^1"};
    for (double p : ps) cells.push_back(format_fixed(fixtures::unbounded_row_conf(p), 4));
    out += csv_line(cells);
    return out;
}

}  // namespace detail

/// CSV reproduction of a numbered table (2..7), 4-decimal cells.
inline std::string render_table(int table_id) {
    switch (table_id) {
        case 2: return detail::render_depth_profile();
        case 3: return detail::render_nine_cases();
        case 4: return detail::render_top_weightedness();
        case 5: return detail::render_cardinality_sweep();
        case 6: return detail::render_truncation_sweep();
        case 7: return detail::render_decay_sweep();
        default:
            throw Error(ErrorKind::UnknownTable,
                        "no table " + std::to_string(table_id) + "; available: 2..7");
    }
}

}  // namespace rpsconf::tables
