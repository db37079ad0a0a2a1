#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pgfmix/mixing_distribution.hpp"
#include "pgfmix/sdfr.hpp"
#include "pgfmix/sequence.hpp"
#include "pgfmix/simulation.hpp"

namespace pgfmix::io {

// Numbers: JSON integers and "num/den" (or decimal) strings are exact,
// JSON floating-point numbers are approximate.
Value value_from_json(const nlohmann::json& j, const std::string& field);

// Exact values render as {"value": "num/den", "decimal": x}; approximate
// ones as {"value": x, "decimal": x}.
nlohmann::json value_to_json(const Value& v);

// {"atoms":[{"y":..,"p":..}], "segments":[{"lo":..,"hi":..,"density":..}]}
MixingDistribution distribution_from_json(const nlohmann::json& j);
nlohmann::json distribution_to_json(const MixingDistribution& q);

// Inline JSON when `text` starts with '{', otherwise a path to a JSON file.
MixingDistribution load_distribution(const std::string& text);

// Columns k, value, decimal.
void write_sequence_csv(std::ostream& os, const Sequence& s);
// {"exact": bool, "values": [{"k": k, "value": .., "decimal": ..}, ...]}
nlohmann::json sequence_to_json(const Sequence& s);
Sequence sequence_from_json(const nlohmann::json& j);

// Rows j, columns k: header "j,k0,k1,...". Missing cells (k > K - j) are empty.
void write_difference_table_csv(std::ostream& os, const DifferenceTable& table);
nlohmann::json difference_table_to_json(const DifferenceTable& table);

nlohmann::json cm_verdict_to_json(const CmVerdict& v);
// "true", or "false (first violation order j)".
std::string describe(const CmVerdict& v);

// {"verdict": .., "masses": {"m01": .., "m12": .., "m2": ..}}
nlohmann::json classification_to_json(const SupportClassification& c);

// Columns t, empirical_survival, std_err, analytic_survival.
void write_failure_simulation_csv(std::ostream& os, const std::vector<PointEstimate>& empirical,
                                  const std::vector<double>& analytic);

// Columns t, value.
void write_curve_csv(std::ostream& os, const std::string& x_name, const std::string& y_name,
                     const std::vector<double>& x, const std::vector<double>& y);

} // namespace pgfmix::io
