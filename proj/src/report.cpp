#include "entroscope/report.hpp"

#include <sstream>

namespace entroscope {

std::string mode_name(LengthMode mode) { return mode == LengthMode::UpTo ? "upto" : "exact"; }

LengthMode mode_from_name(const std::string& name) {
    if (name == "upto") return LengthMode::UpTo;
    if (name == "exact") return LengthMode::Exact;
    throw InputError("unknown mode \"" + name + "\" (expected upto or exact)");
}

Json record_json(const GammaRecord& rec) {
    Json j;
    j["n"] = rec.n;
    j["mode"] = mode_name(rec.mode);
    j["gamma"] = rec.gamma;
    j["exact"] = rec.exact;
    j["saturated"] = rec.saturated;
    j["prefix_bound"] = rec.prefix_bound;
    j["lower_bound"] = rec.lower_bound ? Json(*rec.lower_bound) : Json(nullptr);
    j["upper_bound"] = rec.upper_bound ? Json(*rec.upper_bound) : Json(nullptr);
    if (rec.budget_exhausted) j["budget_exhausted"] = true;
    return j;
}

Json table_json(const GammaTable& table) {
    Json j;
    j["lang"] = table.lang;
    j["mode"] = mode_name(table.mode);
    Json records = Json::array();
    for (const auto& rec : table.records) records.push_back(record_json(rec));
    j["records"] = std::move(records);
    return j;
}

Json entropy_json(const EntropyEstimate& est) {
    Json j;
    j["a_n"] = est.a_n;
    j["tail_max"] = est.tail_max;
    j["slope"] = est.slope;
    j["verdict"] = to_string(est.verdict);
    return j;
}

Json dimension_json(const DimensionEstimate& est) {
    Json j;
    j["covering"] = est.covering;
    j["values"] = est.values;
    j["dimension"] = est.dimension;
    j["verdict"] = to_string(est.verdict);
    j["matches_entropy"] = est.matches_entropy;
    return j;
}

Json cover_json(const CoverEntropySequence& seq) {
    Json j;
    j["counts"] = seq.counts;
    j["ratios"] = seq.ratios;
    return j;
}

Json growth_json(const BallTable& table, const GrowthEstimate& est) {
    Json j;
    j["group"] = table.group.describe();
    j["balls"] = table.sizes;
    j["log2_ratios"] = table.log2_ratios;
    j["estimate"] = est.estimate;
    j["limit"] = est.limit ? Json(*est.limit) : Json(nullptr);
    return j;
}

namespace {

std::string format_double(double v) {
    std::ostringstream ss;
    ss.precision(12);
    ss << v;
    return ss.str();
}

} // namespace

std::string table_csv(const GammaTable& table) {
    std::ostringstream out;
    out << "n,mode,gamma,exact,saturated,prefix_bound,lower_bound,upper_bound\n";
    for (const auto& rec : table.records) {
        out << rec.n << ',' << mode_name(rec.mode) << ',' << rec.gamma << ','
            << (rec.exact ? "true" : "false") << ',' << (rec.saturated ? "true" : "false") << ','
            << rec.prefix_bound << ',';
        if (rec.lower_bound) out << *rec.lower_bound;
        out << ',';
        if (rec.upper_bound) out << *rec.upper_bound;
        out << '\n';
    }
    return out.str();
}

std::string growth_csv(const BallTable& table, const GrowthEstimate& est) {
    std::ostringstream out;
    out << "n,ball,log2_ratio\n";
    for (std::size_t n = 0; n < table.sizes.size(); ++n) {
        out << n << ',' << table.sizes[n] << ',';
        if (n >= 1) out << format_double(table.log2_ratios[n - 1]);
        out << '\n';
    }
    out << "limit,," << (est.limit ? format_double(*est.limit) : "") << '\n';
    return out.str();
}

} // namespace entroscope
