#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "blindpsi/angle.hpp"

namespace blindpsi::mbqc {

using Vertex = uint32_t;

// Open graph state laid out as a wire x layer grid. Vertex ids are
// layer-major: id = layer * n_wires + wire, so id order is the measurement
// order. Inputs are the first layer, outputs the last.
struct OpenGraph {
    uint32_t n_wires = 0;
    uint32_t n_layers = 0;
    std::vector<std::pair<Vertex, Vertex>> edges;
    std::vector<Vertex> inputs;
    std::vector<Vertex> outputs;

    uint32_t vertex_count() const { return n_wires * n_layers; }
    Vertex at(uint32_t wire, uint32_t layer) const { return layer * n_wires + wire; }
    uint32_t wire_of(Vertex v) const { return v % n_wires; }
    uint32_t layer_of(Vertex v) const { return v / n_wires; }

    void add_edge(Vertex a, Vertex b);
    bool has_edge(Vertex a, Vertex b) const;
    std::vector<Vertex> neighbors(Vertex v) const;
    bool is_output(Vertex v) const { return layer_of(v) == n_layers - 1; }

    static OpenGraph grid(uint32_t n_wires, uint32_t n_layers);
};

// Brickwork graph on n wires with q measured layers (q+1 total). Horizontal
// edges along every wire; the vertical CZ rungs follow the staggered brick
// tiling: with wires numbered from 1, the pair (w, w+1) carries bricks
// starting at layers l0 == 1 (mod 8) for odd w and l0 == 5 (mod 8) for even
// w. A brick spans eight layers (it must fit, l0+7 <= q) and contributes
// rungs at its third and fifth columns, layers l0+2 and l0+4.
OpenGraph brickwork(uint32_t n, uint32_t q);

// f: O^c -> I^c plus a layer index per vertex giving the partial order.
struct Flow {
    static constexpr int32_t kNone = -1;
    std::vector<int32_t> f;       // successor per vertex, kNone if undefined
    std::vector<uint32_t> order;  // layer index per vertex

    bool defined() const { return !f.empty(); }
};

// Canonical grid flow f(w, l) = (w, l+1), ordered by layer.
Flow grid_flow(const OpenGraph& g);

struct FlowReport {
    bool ok = true;
    std::string condition;  // name of the first violated condition
    Vertex vertex = 0;      // witness
    std::string text;
};

// Checks that f maps O^c into I^c along edges, moves strictly forward, and
// that every other neighbor of f(i) comes after i.
FlowReport validate_flow(const OpenGraph& g, const Flow& flow);

}  // namespace blindpsi::mbqc
