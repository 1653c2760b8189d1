#pragma once

#include <algorithm>
#include <cstdio>
#include <string>

#include "syra/census.hpp"
#include "syra/classify.hpp"
#include "syra/pattern.hpp"

namespace syra {

enum class ReportFormat { Csv, Json, Table };

inline std::string format_ratio(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

namespace detail {

inline std::string json_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

inline std::string pad_left(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

inline std::string pad_right(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

}  // namespace detail

// ---- pattern census ----
// CSV carries one row per pattern of Sigma_n in lexicographic order,
// zeros included, plus a trailing "repeated" row; JSON keeps only the
// nonzero counts. Ratios divide by the odd count in [1, M].

inline std::string census_csv(const PatternCensus& c) {
    std::string out = "pattern,count,ratio\n";
    const double den = static_cast<double>(c.denominator);
    for (int idx = 0; idx < factorial[c.n]; ++idx) {
        const PermPattern sigma = PermPattern::from_index(c.n, idx);
        const auto cnt = c.count(sigma);
        out += '"' + sigma.to_string() + "\"," + std::to_string(cnt) + ',' +
               format_ratio(static_cast<double>(cnt) / den) + '\n';
    }
    out += "repeated," + std::to_string(c.repeated) + ',' +
           format_ratio(static_cast<double>(c.repeated) / den) + '\n';
    return out;
}

inline std::string census_json(const PatternCensus& c) {
    std::string out = "{\"n\":" + std::to_string(c.n) +
                      ",\"M\":" + std::to_string(c.limit) +
                      ",\"denominator\":" + std::to_string(c.denominator) +
                      ",\"repeated\":" + std::to_string(c.repeated) + ",\"counts\":{";
    bool first = true;
    for (const auto& [sigma, cnt] : c.counts) {
        if (!first) out += ',';
        first = false;
        out += detail::json_quote(sigma.to_string()) + ':' + std::to_string(cnt);
    }
    out += "}}\n";
    return out;
}

inline std::string census_table(const PatternCensus& c) {
    const std::size_t pat_w = std::max<std::size_t>(9, static_cast<std::size_t>(2 * c.n - 1));
    std::string out = detail::pad_right("pattern", pat_w) + detail::pad_left("count", 14) +
                      "  ratio\n";
    const double den = static_cast<double>(c.denominator);
    for (int idx = 0; idx < factorial[c.n]; ++idx) {
        const PermPattern sigma = PermPattern::from_index(c.n, idx);
        const auto cnt = c.count(sigma);
        out += detail::pad_right(sigma.to_string(), pat_w) +
               detail::pad_left(std::to_string(cnt), 14) + "  " +
               format_ratio(static_cast<double>(cnt) / den) + '\n';
    }
    out += detail::pad_right("repeated", pat_w) +
           detail::pad_left(std::to_string(c.repeated), 14) + "  " +
           format_ratio(static_cast<double>(c.repeated) / den) + '\n';
    return out;
}

inline std::string render_census(const PatternCensus& c, ReportFormat fmt) {
    switch (fmt) {
        case ReportFormat::Csv: return census_csv(c);
        case ReportFormat::Json: return census_json(c);
        default: return census_table(c);
    }
}

// ---- dropping-time stats ----
// Rows carry the cumulative counts N_k; ratios divide by x/2. The
// trailing row reports the integers that did not drop within k_max.

inline std::string dropping_csv(const DroppingStats& s) {
    std::string out = "k,N_k,ratio\n";
    for (int k = 1; k <= s.k_max; ++k)
        out += std::to_string(k) + ',' + std::to_string(s.cumulative(k)) + ',' +
               format_ratio(s.ratio(k)) + '\n';
    out += "undecided," + std::to_string(s.undecided) + ',' +
           format_ratio(static_cast<double>(s.undecided) /
                        (static_cast<double>(s.limit) / 2.0)) +
           '\n';
    return out;
}

inline std::string dropping_json(const DroppingStats& s) {
    std::string out = "{\"x\":" + std::to_string(s.limit) +
                      ",\"k_max\":" + std::to_string(s.k_max) + ",\"dropped\":{";
    for (int k = 1; k <= s.k_max; ++k) {
        if (k > 1) out += ',';
        out += '"' + std::to_string(k) + "\":" +
               std::to_string(s.by_dropping_time[static_cast<std::size_t>(k)]);
    }
    out += "},\"N\":{";
    for (int k = 1; k <= s.k_max; ++k) {
        if (k > 1) out += ',';
        out += '"' + std::to_string(k) + "\":" + std::to_string(s.cumulative(k));
    }
    out += "},\"ratio\":{";
    for (int k = 1; k <= s.k_max; ++k) {
        if (k > 1) out += ',';
        out += '"' + std::to_string(k) + "\":" + format_ratio(s.ratio(k));
    }
    out += "},\"undecided\":" + std::to_string(s.undecided) + "}\n";
    return out;
}

inline std::string dropping_table(const DroppingStats& s) {
    std::string out = "k         " + detail::pad_left("N_k", 14) + "  ratio\n";
    for (int k = 1; k <= s.k_max; ++k)
        out += detail::pad_right(std::to_string(k), 10) +
               detail::pad_left(std::to_string(s.cumulative(k)), 14) + "  " +
               format_ratio(s.ratio(k)) + '\n';
    out += detail::pad_right("undecided", 10) +
           detail::pad_left(std::to_string(s.undecided), 14) + "  " +
           format_ratio(static_cast<double>(s.undecided) /
                        (static_cast<double>(s.limit) / 2.0)) +
           '\n';
    return out;
}

inline std::string render_dropping(const DroppingStats& s, ReportFormat fmt) {
    switch (fmt) {
        case ReportFormat::Csv: return dropping_csv(s);
        case ReportFormat::Json: return dropping_json(s);
        default: return dropping_table(s);
    }
}

// ---- feasibility ----

namespace detail {

inline std::string pattern_set_json(const std::set<PermPattern>& set) {
    std::string out = "[";
    bool first = true;
    for (const auto& p : set) {
        if (!first) out += ',';
        first = false;
        out += json_quote(p.to_string());
    }
    out += ']';
    return out;
}

inline std::string pattern_set_line(const std::set<PermPattern>& set) {
    if (set.empty()) return "(none)";
    std::string out;
    bool first = true;
    for (const auto& p : set) {
        if (!first) out += "  ";
        first = false;
        out += '(' + p.to_string() + ')';
    }
    return out;
}

}  // namespace detail

inline std::string feasibility_json(const FeasibilityReport& r) {
    return "{\"n\":" + std::to_string(r.n) + ",\"M\":" + std::to_string(r.limit) +
           ",\"observed\":" + detail::pattern_set_json(r.observed) +
           ",\"unobserved\":" + detail::pattern_set_json(r.unobserved) +
           ",\"proved_impossible\":" + detail::pattern_set_json(r.proved_impossible) + "}\n";
}

inline std::string render_feasibility(const FeasibilityReport& r, ReportFormat fmt) {
    if (fmt == ReportFormat::Json) return feasibility_json(r);
    std::string out;
    out += "n = " + std::to_string(r.n) + ", M = " + std::to_string(r.limit) + '\n';
    out += "observed (" + std::to_string(r.observed.size()) + "): " +
           detail::pattern_set_line(r.observed) + '\n';
    out += "unobserved (" + std::to_string(r.unobserved.size()) + "): " +
           detail::pattern_set_line(r.unobserved) + '\n';
    out += "proved impossible (" + std::to_string(r.proved_impossible.size()) + "): " +
           detail::pattern_set_line(r.proved_impossible) + '\n';
    return out;
}

// ---- single-m classification ----

inline std::string classify_json(u128 m, const TripleClassification& c) {
    std::string out = "{\"m\":" + to_string(m);
    switch (c.outcome) {
        case TripleOutcome::Pattern:
            out += ",\"pattern\":" + detail::json_quote(c.pattern->to_string());
            break;
        case TripleOutcome::ReachesOne: out += ",\"outcome\":\"reaches-one\""; break;
        case TripleOutcome::Unit: out += ",\"outcome\":\"unit\""; break;
    }
    out += ",\"rule\":" + detail::json_quote(c.rule);
    if (c.k > 0) out += ",\"k\":" + std::to_string(c.k);
    out += "}\n";
    return out;
}

inline std::string classify_json(u128 m, const QuadClassification& c) {
    std::string out = "{\"m\":" + to_string(m);
    switch (c.outcome) {
        case QuadOutcome::Pattern:
            out += ",\"pattern\":" + detail::json_quote(c.pattern->to_string());
            break;
        case QuadOutcome::ReachesOne: out += ",\"outcome\":\"reaches-one\""; break;
        case QuadOutcome::Unit: out += ",\"outcome\":\"unit\""; break;
        case QuadOutcome::OutOfRuleDomain: out += ",\"outcome\":\"out-of-rule-domain\""; break;
    }
    out += ",\"rule\":" + detail::json_quote(c.rule);
    if (c.k > 0) out += ",\"k\":" + std::to_string(c.k);
    out += "}\n";
    return out;
}

// ---- density of one pattern ----

inline std::string density_json(const PatternCensus& c, const PermPattern& sigma,
                                const DensityEstimate& d) {
    return "{\"n\":" + std::to_string(c.n) + ",\"M\":" + std::to_string(c.limit) +
           ",\"pattern\":" + detail::json_quote(sigma.to_string()) +
           ",\"count\":" + std::to_string(d.count) +
           ",\"ratio\":" + format_ratio(d.ratio) + "}\n";
}

inline std::string density_csv(const PermPattern& sigma, const DensityEstimate& d) {
    return "pattern,count,ratio\n\"" + sigma.to_string() + "\"," + std::to_string(d.count) +
           ',' + format_ratio(d.ratio) + '\n';
}

/// JSON export of the static rule tables.
inline std::string rules_json(int level, int k_families = 4) {
    std::string out = "[";
    bool first = true;
    for (const auto& rule : classification_rules(level, k_families)) {
        if (!first) out += ',';
        first = false;
        out += "{\"residue\":" + to_string(rule.cls.residue) +
               ",\"modulus\":" + to_string(rule.cls.modulus) +
               ",\"pattern\":" + detail::json_quote(rule.pattern.to_string()) +
               ",\"rule_id\":" + detail::json_quote(rule.id);
        if (rule.k) out += ",\"k\":" + std::to_string(*rule.k);
        out += '}';
    }
    out += "]\n";
    return out;
}

}  // namespace syra
