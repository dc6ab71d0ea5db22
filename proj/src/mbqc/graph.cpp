#include "blindpsi/mbqc/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace blindpsi::mbqc {

void OpenGraph::add_edge(Vertex a, Vertex b)
{
    if (a == b) throw std::invalid_argument("self-loop");
    if (a >= vertex_count() || b >= vertex_count())
        throw std::invalid_argument("edge endpoint out of range");
    if (a > b) std::swap(a, b);
    edges.emplace_back(a, b);
}

bool OpenGraph::has_edge(Vertex a, Vertex b) const
{
    if (a > b) std::swap(a, b);
    return std::find(edges.begin(), edges.end(), std::make_pair(a, b)) != edges.end();
}

std::vector<Vertex> OpenGraph::neighbors(Vertex v) const
{
    std::vector<Vertex> out;
    for (auto [a, b] : edges) {
        if (a == v) out.push_back(b);
        if (b == v) out.push_back(a);
    }
    std::sort(out.begin(), out.end());
    return out;
}

OpenGraph OpenGraph::grid(uint32_t n_wires, uint32_t n_layers)
{
    if (n_wires < 1 || n_layers < 2)
        throw std::invalid_argument("grid needs at least 1 wire and 2 layers");
    OpenGraph g;
    g.n_wires = n_wires;
    g.n_layers = n_layers;
    for (uint32_t w = 0; w < n_wires; ++w) {
        g.inputs.push_back(g.at(w, 0));
        g.outputs.push_back(g.at(w, n_layers - 1));
    }
    return g;
}

OpenGraph brickwork(uint32_t n, uint32_t q)
{
    if (n < 1 || q < 1) throw std::invalid_argument("brickwork needs n >= 1, q >= 1");
    OpenGraph g = OpenGraph::grid(n, q + 1);

    for (uint32_t w = 0; w < n; ++w)
        for (uint32_t l = 0; l < q; ++l) g.add_edge(g.at(w, l), g.at(w, l + 1));

    // wire pairs use 1-indexed numbering in the tiling rule
    for (uint32_t w1 = 1; w1 + 1 <= n; ++w1) {
        const uint32_t start = (w1 % 2 == 1) ? 1 : 5;
        for (uint32_t l0 = start; l0 + 7 <= q; l0 += 8) {
            g.add_edge(g.at(w1 - 1, l0 + 2), g.at(w1, l0 + 2));
            g.add_edge(g.at(w1 - 1, l0 + 4), g.at(w1, l0 + 4));
        }
    }
    return g;
}

Flow grid_flow(const OpenGraph& g)
{
    Flow flow;
    flow.f.assign(g.vertex_count(), Flow::kNone);
    flow.order.resize(g.vertex_count());
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        flow.order[v] = g.layer_of(v);
        if (!g.is_output(v)) flow.f[v] = int32_t(g.at(g.wire_of(v), g.layer_of(v) + 1));
    }
    return flow;
}

FlowReport validate_flow(const OpenGraph& g, const Flow& flow)
{
    FlowReport rep;
    if (flow.f.size() != g.vertex_count() || flow.order.size() != g.vertex_count()) {
        rep.ok = false;
        rep.condition = "shape";
        rep.text = "flow arrays do not match the vertex count";
        return rep;
    }
    auto fail = [&](const char* cond, Vertex v, std::string text) {
        rep.ok = false;
        rep.condition = cond;
        rep.vertex = v;
        rep.text = std::move(text);
        return rep;
    };

    for (Vertex i = 0; i < g.vertex_count(); ++i) {
        const bool output = g.is_output(i);
        if (output) {
            if (flow.f[i] != Flow::kNone)
                return fail("domain", i, "f defined on an output vertex");
            continue;
        }
        if (flow.f[i] == Flow::kNone)
            return fail("domain", i, "f undefined on a measured vertex");
        const Vertex fi = Vertex(flow.f[i]);
        if (std::find(g.inputs.begin(), g.inputs.end(), fi) != g.inputs.end())
            return fail("range", i, "f(i) is an input vertex");
        if (!g.has_edge(i, fi))
            return fail("edge", i, "(i, f(i)) is not an edge");
        if (flow.order[fi] <= flow.order[i])
            return fail("forward", i, "f(i) does not come after i");
        for (Vertex k : g.neighbors(fi)) {
            if (k == i) continue;
            if (flow.order[k] <= flow.order[i])
                return fail("neighborhood", i,
                            "neighbor " + std::to_string(k) + " of f(i) does not come after i");
        }
    }
    return rep;
}

}  // namespace blindpsi::mbqc
