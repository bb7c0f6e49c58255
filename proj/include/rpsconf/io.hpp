#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rpsconf/conflict.hpp"
#include "rpsconf/evidence.hpp"

namespace rpsconf {

/// A focal record as written in an evidence file, normalized to label form.
struct FocalRecordText {
    std::vector<std::string> perm;
    double mass = 0.0;
};

struct NamedBody {
    std::string name;
    std::vector<FocalRecordText> records;
    PermutationMassFunction pmf;
};

struct EvidenceDocument {
    Frame frame;
    std::vector<NamedBody> bodies;

    const NamedBody& body(const std::string& name) const {
        for (const auto& b : bodies) {
            if (b.name == name) return b;
        }
        throw Error(ErrorKind::UnknownBody, "no body named '" + name + "'");
    }
};

namespace detail {

inline PermutationMassFunction build_body(const Frame& frame, const std::string& name,
                                          const std::vector<FocalRecordText>& records) {
    try {
        std::vector<std::pair<std::vector<std::string>, double>> entries;
        entries.reserve(records.size());
        for (const auto& rec : records) entries.push_back({rec.perm, rec.mass});
        return PermutationMassFunction::from_labels(frame, entries);
    } catch (const Error& e) {
        throw Error(e.kind(), "body '" + name + "': " + e.what());
    }
}

inline FocalRecordText parse_focal_record(const Frame& frame, const nlohmann::json& node,
                                          const std::string& where) {
    if (!node.is_object()) {
        throw Error(ErrorKind::SchemaError, where + ": focal record must be an object");
    }
    if (!node.contains("mass") || !node["mass"].is_number()) {
        throw Error(ErrorKind::SchemaError, where + ": missing numeric 'mass'");
    }
    FocalRecordText rec;
    rec.mass = node["mass"].get<double>();
    const bool has_perm = node.contains("perm");
    const bool has_code = node.contains("i") || node.contains("j");
    if (has_perm == has_code) {
        throw Error(ErrorKind::SchemaError,
                    where + ": record needs either 'perm' or 'i'/'j', not both");
    }
    if (has_perm) {
        if (!node["perm"].is_array()) {
            throw Error(ErrorKind::SchemaError, where + ": 'perm' must be an array of labels");
        }
        for (const auto& label : node["perm"]) {
            if (!label.is_string()) {
                throw Error(ErrorKind::SchemaError, where + ": 'perm' entries must be strings");
            }
            rec.perm.push_back(label.get<std::string>());
        }
    } else {
        if (!node.contains("i") || !node.contains("j") ||
            !node["i"].is_number_unsigned() || !node["j"].is_number_unsigned()) {
            throw Error(ErrorKind::SchemaError, where + ": 'i' and 'j' must be non-negative integers");
        }
        try {
            const OrderedFocalSet focal = perm_from_rank(
                frame, SubsetCode{node["i"].get<std::uint64_t>()},
                OrderCode{node["j"].get<std::uint64_t>()});
            rec.perm = focal.to_labels(frame);
        } catch (const Error& e) {
            throw Error(ErrorKind::SchemaError, where + ": " + e.what());
        }
    }
    return rec;
}

}  // namespace detail

/// Parses an evidence file. Every body must validate as a permutation mass
/// function; failures carry the body name and the offending record.
inline EvidenceDocument parse_evidence(const std::string& text) {
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorKind::SchemaError, e.what());
    }
    if (!root.is_object() || !root.contains("frame") || !root.contains("bodies")) {
        throw Error(ErrorKind::SchemaError, "document must be {\"frame\": [...], \"bodies\": [...]}");
    }
    if (!root["frame"].is_array() || root["frame"].empty()) {
        throw Error(ErrorKind::SchemaError, "'frame' must be a non-empty array of labels");
    }
    std::vector<std::string> labels;
    for (const auto& label : root["frame"]) {
        if (!label.is_string()) {
            throw Error(ErrorKind::SchemaError, "'frame' entries must be strings");
        }
        labels.push_back(label.get<std::string>());
    }
    Frame frame(std::move(labels));

    if (!root["bodies"].is_array()) {
        throw Error(ErrorKind::SchemaError, "'bodies' must be an array");
    }
    std::vector<NamedBody> bodies;
    std::size_t body_idx = 0;
    for (const auto& body_node : root["bodies"]) {
        const std::string where = "bodies[" + std::to_string(body_idx) + "]";
        if (!body_node.is_object() || !body_node.contains("name") ||
            !body_node["name"].is_string() || !body_node.contains("focal") ||
            !body_node["focal"].is_array()) {
            throw Error(ErrorKind::SchemaError,
                        where + ": body must be {\"name\": ..., \"focal\": [...]}");
        }
        const std::string name = body_node["name"].get<std::string>();
        for (const auto& existing : bodies) {
            if (existing.name == name) {
                throw Error(ErrorKind::SchemaError, "duplicate body name '" + name + "'");
            }
        }
        std::vector<FocalRecordText> records;
        std::size_t rec_idx = 0;
        for (const auto& rec_node : body_node["focal"]) {
            records.push_back(detail::parse_focal_record(
                frame, rec_node, where + ".focal[" + std::to_string(rec_idx) + "]"));
            ++rec_idx;
        }
        PermutationMassFunction pmf = detail::build_body(frame, name, records);
        bodies.push_back({name, std::move(records), std::move(pmf)});
        ++body_idx;
    }
    return EvidenceDocument{std::move(frame), std::move(bodies)};
}

/// Canonical serialization: focal records always in label ('perm') form.
inline std::string serialize_evidence(const EvidenceDocument& doc) {
    nlohmann::json root;
    root["frame"] = doc.frame.labels();
    root["bodies"] = nlohmann::json::array();
    for (const auto& body : doc.bodies) {
        nlohmann::json body_node;
        body_node["name"] = body.name;
        body_node["focal"] = nlohmann::json::array();
        for (const auto& rec : body.records) {
            body_node["focal"].push_back({{"perm", rec.perm}, {"mass", rec.mass}});
        }
        root["bodies"].push_back(std::move(body_node));
    }
    return root.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Number and CSV formatting
// ---------------------------------------------------------------------------

/// Fixed-point rendering with '.' decimal separator, e.g. 0.2900 at
/// precision 4. Negative zero is normalized away.
inline std::string format_fixed(double x, int precision) {
    if (x == 0.0) x = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", precision, x);
    return buf;
}

inline std::string csv_line(const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t t = 0; t < cells.size(); ++t) {
        if (t) line += ',';
        line += cells[t];
    }
    return line + "\n";
}

/// Pair column label, e.g. "k(F_23^7|F_31^1)".
inline std::string pair_column(const std::string& a, const std::string& b) {
    return "k(" + a + "|" + b + ")";
}

/// Total plus per-pair breakdown of a conflict report.
inline std::string render_conflict_report(const ConflictReport& report, int precision = 4) {
    std::string out = "total," + format_fixed(report.total, precision) + "\n";
    out += "pair_a,pair_b,mass_product,k_perm,taxonomy\n";
    for (const auto& term : report.pairs) {
        out += csv_line({focal_label(term.a), focal_label(term.b),
                         format_fixed(term.mass_product, precision),
                         format_fixed(term.k_perm, precision), to_string(term.taxonomy)});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Parameter sweeps
// ---------------------------------------------------------------------------

enum class SweepAxis : std::uint8_t { P, Depth, Cardinality };

inline const char* to_string(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::P: return "p";
        case SweepAxis::Depth: return "depth";
        case SweepAxis::Cardinality: return "cardinality";
    }
    return "?";
}

struct SweepSpec {
    SweepAxis axis = SweepAxis::P;
    std::vector<double> values;
};

inline SweepAxis parse_sweep_axis(const std::string& text) {
    if (text == "p") return SweepAxis::P;
    if (text == "depth") return SweepAxis::Depth;
    if (text == "cardinality") return SweepAxis::Cardinality;
    throw Error(ErrorKind::ParameterOutOfRange,
                "axis must be p, depth or cardinality, got '" + text + "'");
}

namespace detail {

inline double parse_number(const std::string& text) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw Error(ErrorKind::ParameterOutOfRange, "not a number: '" + text + "'");
    }
    if (used != text.size()) {
        throw Error(ErrorKind::ParameterOutOfRange, "not a number: '" + text + "'");
    }
    return v;
}

}  // namespace detail

/// Sweep values from either "start:stop:step" or a comma-separated list.
inline std::vector<double> parse_sweep_values(const std::string& text) {
    std::vector<double> values;
    const auto colons = std::count(text.begin(), text.end(), ':');
    if (colons == 2) {
        const auto c1 = text.find(':');
        const auto c2 = text.find(':', c1 + 1);
        const double start = detail::parse_number(text.substr(0, c1));
        const double stop = detail::parse_number(text.substr(c1 + 1, c2 - c1 - 1));
        const double step = detail::parse_number(text.substr(c2 + 1));
        if (!(step > 0.0) || stop < start) {
            throw Error(ErrorKind::ParameterOutOfRange,
                        "range must satisfy start <= stop with step > 0: '" + text + "'");
        }
        // Half-step slack so the stop value survives accumulated rounding.
        for (double v = start; v <= stop + step * 0.5; v += step) values.push_back(v);
        return values;
    }
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) values.push_back(detail::parse_number(cell));
    if (values.empty()) {
        throw Error(ErrorKind::ParameterOutOfRange, "empty sweep value list");
    }
    return values;
}

inline void validate_sweep_spec(const SweepSpec& spec) {
    for (double v : spec.values) {
        switch (spec.axis) {
            case SweepAxis::P:
                if (!(v >= 0.0 && v < 1.0)) {
                    throw Error(ErrorKind::ParameterOutOfRange,
                                "p values must lie in [0, 1), got " + std::to_string(v));
                }
                break;
            case SweepAxis::Depth:
            case SweepAxis::Cardinality:
                if (!(v >= 1.0) || v != std::floor(v)) {
                    throw Error(ErrorKind::ParameterOutOfRange,
                                std::string(to_string(spec.axis)) +
                                    " values must be integers >= 1, got " + std::to_string(v));
                }
                break;
        }
    }
}

/// Record of one body to replace during a cardinality sweep: at sweep value
/// c, body `body`'s record `record` becomes the index-ordered prefix of the
/// first c frame elements.
struct VaryTarget {
    std::string body;
    std::size_t record = 0;
};

/// The first `c` frame elements in index order.
inline OrderedFocalSet identity_prefix(const Frame& frame, std::size_t c) {
    if (c < 1 || c > frame.size()) {
        throw Error(ErrorKind::ParameterOutOfRange,
                    "cardinality " + std::to_string(c) + " outside [1, " +
                        std::to_string(frame.size()) + "]");
    }
    std::vector<ElementIndex> elems(c);
    std::iota(elems.begin(), elems.end(), ElementIndex{0});
    return OrderedFocalSet(std::move(elems));
}

/// One CSV row per sweep value: the axis value, Conf, then k_perm for every
/// cross pair of focal records in document order. Cardinality sweeps label
/// the varied record's columns "X".
inline std::string run_sweep(const EvidenceDocument& doc, const std::string& body1,
                             const std::string& body2, const SweepSpec& spec,
                             const WeightScheme& scheme, const DepthSpec& depth,
                             const std::optional<VaryTarget>& vary, int precision = 4) {
    validate_sweep_spec(spec);
    if (spec.axis == SweepAxis::P && scheme.kind() != WeightScheme::Kind::Geometric) {
        throw Error(ErrorKind::ParameterOutOfRange,
                    "the p axis requires geometric weights, got " + scheme.describe());
    }
    if (spec.axis == SweepAxis::Cardinality && !vary) {
        throw Error(ErrorKind::ParameterOutOfRange,
                    "cardinality sweeps need a record to vary (--vary body:record)");
    }
    const NamedBody& first = doc.body(body1);
    const NamedBody& second = doc.body(body2);

    std::optional<std::size_t> varied_record;  // index into the varied body's records
    if (vary) {
        if (vary->body != body1 && vary->body != body2) {
            throw Error(ErrorKind::UnknownBody,
                        "--vary names body '" + vary->body + "' outside the selected pair");
        }
        const NamedBody& target = doc.body(vary->body);
        if (vary->record >= target.records.size()) {
            throw Error(ErrorKind::ParameterOutOfRange,
                        "body '" + vary->body + "' has no record " +
                            std::to_string(vary->record));
        }
        varied_record = vary->record;
    }

    // Header: pair columns keyed by the records as written in the document.
    std::vector<std::string> header{to_string(spec.axis), "conf"};
    auto record_label = [&](const NamedBody& body, std::size_t idx) -> std::string {
        if (vary && varied_record && body.name == vary->body && idx == *varied_record &&
            spec.axis == SweepAxis::Cardinality) {
            return "X";
        }
        return focal_label(OrderedFocalSet::from_labels(doc.frame, body.records[idx].perm));
    };
    for (std::size_t s = 0; s < first.records.size(); ++s) {
        for (std::size_t t = 0; t < second.records.size(); ++t) {
            header.push_back(pair_column(record_label(first, s), record_label(second, t)));
        }
    }

    std::string out = csv_line(header);
    for (double value : spec.values) {
        const WeightScheme row_scheme =
            spec.axis == SweepAxis::P ? WeightScheme::geometric(value) : scheme;
        const DepthSpec row_depth = spec.axis == SweepAxis::Depth
                                        ? DepthSpec::truncate(static_cast<std::size_t>(value))
                                        : depth;

        // Focal sets of this row, with the varied record substituted.
        auto row_focal = [&](const NamedBody& body, std::size_t idx) {
            if (spec.axis == SweepAxis::Cardinality && vary && body.name == vary->body &&
                idx == *varied_record) {
                return identity_prefix(doc.frame, static_cast<std::size_t>(value));
            }
            return OrderedFocalSet::from_labels(doc.frame, body.records[idx].perm);
        };
        auto materialize = [&](const NamedBody& body) {
            std::vector<FocalDraft> drafts;
            for (std::size_t idx = 0; idx < body.records.size(); ++idx) {
                drafts.push_back({row_focal(body, idx).elements(), body.records[idx].mass});
            }
            return PermutationMassFunction(doc.frame, std::move(drafts));
        };

        const PermutationMassFunction pmf1 = materialize(first);
        const PermutationMassFunction pmf2 = materialize(second);
        std::vector<std::string> cells;
        cells.push_back(spec.axis == SweepAxis::P
                            ? format_fixed(value, precision)
                            : std::to_string(static_cast<long long>(value)));
        cells.push_back(format_fixed(conf(pmf1, pmf2, row_scheme, row_depth).total, precision));
        // Pair cells follow record order, independent of any merging inside
        // the mass functions.
        for (std::size_t s = 0; s < first.records.size(); ++s) {
            const OrderedFocalSet fa = row_focal(first, s);
            for (std::size_t t = 0; t < second.records.size(); ++t) {
                const OrderedFocalSet fb = row_focal(second, t);
                const double k = fa == fb ? 0.0 : k_perm(fa, fb, row_scheme, row_depth);
                cells.push_back(format_fixed(k, precision));
            }
        }
        out += csv_line(cells);
    }
    return out;
}

}  // namespace rpsconf
