#pragma once

#include <string>
#include <vector>

#include "blindpsi/mbqc/graph.hpp"

namespace blindpsi::mbqc {

// A computation on an open graph state: plain measurement angles plus the
// X/Z dependency sets derived from the flow. xdeps(j) is {f^-1(j)}, zdeps(j)
// the vertices i with j in N(f(i)), i != j.
struct MeasurementPattern {
    OpenGraph graph;
    Flow flow;
    std::vector<Angle8> phi;  // meaningful on measured vertices
    std::vector<std::vector<Vertex>> xdeps;
    std::vector<std::vector<Vertex>> zdeps;

    uint32_t layer_count() const { return graph.n_layers; }
};

// Derives dependencies; throws if the flow fails validation.
MeasurementPattern make_pattern(OpenGraph graph, Flow flow, std::vector<Angle8> phi);

// One line per vertex: "vertex wire layer phi xdeps zdeps", deps
// comma-joined or "-" when empty. Vertex order.
std::string dump_pattern(const MeasurementPattern& p);

}  // namespace blindpsi::mbqc
