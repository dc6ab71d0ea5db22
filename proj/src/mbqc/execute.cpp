#include "blindpsi/mbqc/execute.hpp"

#include <stdexcept>

namespace blindpsi::mbqc {

int dep_parity(const std::vector<Vertex>& deps, const std::vector<int>& s)
{
    int acc = 0;
    for (Vertex i : deps) acc ^= s[i];
    return acc;
}

qsim::StateVector run_pattern_plain(const MeasurementPattern& p,
                                    const qsim::StateVector& input_state, Rng& rng)
{
    if (!p.flow.defined()) throw std::invalid_argument("pattern has no flow");
    const OpenGraph& g = p.graph;
    if (input_state.num_qubits() != g.inputs.size())
        throw std::invalid_argument("input state size does not match |I|");

    // Label input qubits by their vertices (two passes to dodge collisions).
    qsim::StateVector sim = input_state;
    const auto original = sim.labels();
    for (size_t i = 0; i < original.size(); ++i)
        sim.rename(original[i], qsim::QubitId(1u << 30) + qsim::QubitId(i));
    for (size_t i = 0; i < original.size(); ++i)
        sim.rename(qsim::QubitId(1u << 30) + qsim::QubitId(i), g.inputs[i]);

    // Edges grouped by the later layer of their endpoints.
    std::vector<std::vector<std::pair<Vertex, Vertex>>> edges_at(g.n_layers);
    for (auto [a, b] : g.edges)
        edges_at[std::max(g.layer_of(a), g.layer_of(b))].emplace_back(a, b);
    for (auto [a, b] : edges_at[0]) sim.cz(a, b);

    std::vector<int> s(g.vertex_count(), 0);

    for (uint32_t l = 0; l + 1 < g.n_layers; ++l) {
        for (uint32_t w = 0; w < g.n_wires; ++w) sim.allocate_plus(g.at(w, l + 1));
        for (auto [a, b] : edges_at[l + 1]) sim.cz(a, b);
        for (uint32_t w = 0; w < g.n_wires; ++w) {
            const Vertex j = g.at(w, l);
            const int sx = dep_parity(p.xdeps[j], s);
            const int sz = dep_parity(p.zdeps[j], s);
            const Angle8 alpha =
                p.phi[j].times_sign(sx ? -1 : +1) + angle_times_bit(sz, kPiAngle);
            s[j] = sim.measure_rotated(j, alpha, rng);
        }
    }

    for (Vertex o : g.outputs) {
        if (dep_parity(p.xdeps[o], s)) sim.x(o);
        if (dep_parity(p.zdeps[o], s)) sim.z(o, kPiAngle);
    }

    // Hand back wire-indexed labels.
    for (uint32_t w = 0; w < g.n_wires; ++w)
        sim.rename(g.outputs[w], qsim::QubitId(w));
    return sim;
}

}  // namespace blindpsi::mbqc
