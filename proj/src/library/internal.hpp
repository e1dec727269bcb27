#pragma once

#include "cpgscan/library/detectors.hpp"

namespace cpgscan::library {

Finding make_finding(RuleId rule, query::FlowWitness witness, const CodeGraph& graph);
// One finding per row, from the row's flow witness; sorted.
std::vector<Finding> findings_from_rows(RuleId rule, const std::vector<query::ResultRow>& rows, const CodeGraph& graph);

}  // namespace cpgscan::library
