#include "blindpsi/mbqc/pattern.hpp"

#include <sstream>
#include <stdexcept>

namespace blindpsi::mbqc {

MeasurementPattern make_pattern(OpenGraph graph, Flow flow, std::vector<Angle8> phi)
{
    const FlowReport rep = validate_flow(graph, flow);
    if (!rep.ok)
        throw std::invalid_argument("invalid flow (" + rep.condition + " at vertex " +
                                    std::to_string(rep.vertex) + "): " + rep.text);
    if (phi.size() != graph.vertex_count())
        throw std::invalid_argument("phi size does not match vertex count");

    MeasurementPattern p;
    p.graph = std::move(graph);
    p.flow = std::move(flow);
    p.phi = std::move(phi);
    p.xdeps.assign(p.graph.vertex_count(), {});
    p.zdeps.assign(p.graph.vertex_count(), {});

    for (Vertex i = 0; i < p.graph.vertex_count(); ++i) {
        if (p.flow.f[i] == Flow::kNone) continue;
        const Vertex fi = Vertex(p.flow.f[i]);
        p.xdeps[fi].push_back(i);
        for (Vertex k : p.graph.neighbors(fi))
            if (k != i) p.zdeps[k].push_back(i);
    }
    return p;
}

static std::string join(const std::vector<Vertex>& v)
{
    if (v.empty()) return "-";
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(v[i]);
    }
    return s;
}

std::string dump_pattern(const MeasurementPattern& p)
{
    std::ostringstream os;
    for (Vertex v = 0; v < p.graph.vertex_count(); ++v) {
        os << v << ' ' << p.graph.wire_of(v) << ' ' << p.graph.layer_of(v) << ' '
           << int(p.phi[v].v) << ' ' << join(p.xdeps[v]) << ' ' << join(p.zdeps[v]) << '\n';
    }
    return os.str();
}

}  // namespace blindpsi::mbqc
