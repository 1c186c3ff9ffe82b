#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "qet/experiments.hpp"

namespace qet {

using nlohmann::json;

std::string to_string(Basis b);
std::string to_string(CrossPair p);
Basis basis_from_string(const std::string& s);
CrossPair cross_pair_from_string(const std::string& s);

void to_json(json& j, const UnitaryParams& u);
void from_json(const json& j, UnitaryParams& u);
void to_json(json& j, const ProbabilityTriple& t);
void from_json(const json& j, ProbabilityTriple& t);
void to_json(json& j, const ProbeSpec& p);
void from_json(const json& j, ProbeSpec& p);
void to_json(json& j, const OutcomeDistribution& d);
void to_json(json& j, const CountsRecord& r);
void from_json(const json& j, CountsRecord& r);
void to_json(json& j, const CoarseRecord& r);
void from_json(const json& j, CoarseRecord& r);
void to_json(json& j, const ExperimentRecord& r);
void from_json(const json& j, ExperimentRecord& r);
void to_json(json& j, const EstimationResult& r);
void to_json(json& j, const AggregateStats& s);
void to_json(json& j, const TrialSummary& t);

/// Format a double with 17 significant digits (round-trip exact).
std::string format_double(double x);

}  // namespace qet
