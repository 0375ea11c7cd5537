#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "qcube/lattice.hpp"
#include "qcube/maxconv.hpp"
#include "qcube/quasicube.hpp"
#include "qcube/scan.hpp"
#include "qcube/verifier.hpp"

namespace qcube {

// Point-set literal: one point per line, decimal coordinates separated by
// spaces; blank lines and lines starting with '#' are ignored. expect_dim=0
// infers the dimension from the first point (an empty literal then fails).
PointSet parse_point_set_text(const std::string& text, int expect_dim = 0);

// JSON form: array of arrays of integers, e.g. [[0,0],[1,2]].
PointSet parse_point_set_json(const nlohmann::json& j, int expect_dim = 0);

// Accepts either form: leading '[' selects JSON, anything else the literal.
PointSet parse_point_set(const std::string& text, int expect_dim = 0);

std::string format_point_set_text(const PointSet& s);

// Weight functions: inline spec "0:1,1:1.5" or a JSON map {"0": 1, "1": 1.5}.
WeightFn parse_weight_fn_inline(const std::string& spec);
WeightFn parse_weight_fn_json(const nlohmann::json& j);
WeightFn parse_weight_fn(const std::string& text);

// Witnesses serialize as nested {x0, x1} leaves / {x0, x1, child0, child1}
// nodes.
QuasicubeWitness witness_from_json(const nlohmann::json& j);

std::string read_text_file(const std::string& path);

// JSON serializers (picked up by nlohmann::json via ADL).
void to_json(nlohmann::json& j, const PointSet& s);
void to_json(nlohmann::json& j, const WeightFn& f);
void to_json(nlohmann::json& j, const QuasicubeWitness& w);
void to_json(nlohmann::json& j, const PLReport& r);
void to_json(nlohmann::json& j, const GridCheckReport& r);
void to_json(nlohmann::json& j, const CheckReport& r);
void to_json(nlohmann::json& j, const TraceStep& s);
void to_json(nlohmann::json& j, const ProofTrace& t);
void to_json(nlohmann::json& j, const ScanInstance& i);
void to_json(nlohmann::json& j, const ScanSummary& s);
void to_json(nlohmann::json& j, const TrajectoryEntry& e);
void to_json(nlohmann::json& j, const SearchResult& r);

}  // namespace qcube
