#pragma once

#include <json.hpp>

#include "topomap/graph.hpp"
#include "topomap/interpret.hpp"
#include "topomap/partition.hpp"
#include "topomap/woa.hpp"

namespace topomap {

using Json = nlohmann::ordered_json;

Json to_json(const Violation& v);
Json to_json(const CostReport& r);
Json to_json(const FidelityReport& r);
/// Placement rows {task, unit, level}, sorted by task id.
Json placement_json(const Assignment& a);
/// `timings` adds the wall-clock fields; leave it off for byte-stable output.
Json to_json(const SubTrace& t, bool timings);
Json to_json(const PipelineResult& r, bool timings);
Json to_json(const WoaResult& r);

}  // namespace topomap
