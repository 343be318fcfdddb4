#ifndef ENTROSCOPE_REPORT_HPP
#define ENTROSCOPE_REPORT_HPP

#include <string>

#include <json.hpp>

#include "entroscope/group.hpp"
#include "entroscope/metric_dim.hpp"
#include "entroscope/nerode.hpp"
#include "entroscope/topo_automaton.hpp"

namespace entroscope {

inline constexpr const char* kToolVersion = "0.1.0";

using Json = nlohmann::ordered_json;

std::string mode_name(LengthMode mode);
LengthMode mode_from_name(const std::string& name);

Json record_json(const GammaRecord& rec);
Json table_json(const GammaTable& table);
Json entropy_json(const EntropyEstimate& est);
Json dimension_json(const DimensionEstimate& est);
Json cover_json(const CoverEntropySequence& seq);
Json growth_json(const BallTable& table, const GrowthEstimate& est);

/// CSV with the fixed header
/// n,mode,gamma,exact,saturated,prefix_bound,lower_bound,upper_bound
std::string table_csv(const GammaTable& table);
/// CSV with header n,ball,log2_ratio plus a closing `limit` line.
std::string growth_csv(const BallTable& table, const GrowthEstimate& est);

} // namespace entroscope

#endif
