#include "blindpsi/mbqc/compile.hpp"

#include <array>
#include <stdexcept>
#include <vector>

namespace blindpsi::mbqc {

// The scheduler thinks in J(a) = H Z(a) units: measuring a slot at angle phi
// teleports the logical state through J(-phi), so each wire's layer list is
// synthesized as a J-argument string and negated at the very end.
//
// Rung pairs of the 3-wire tiling arrive in slot order k = 1, 2, 3, ...:
// slot k sits on wire pair (0,1) for odd k and (1,2) for even k, with its
// two rungs at layers 4k-1 and 4k+1. A slot with between-rung ops
// I (x) X(pi/2) realizes (Z(pi/2) (x) X(pi/2)) * CNOT, so scheduling a CNOT
// there costs Z(-pi/2) on the control and X(-pi/2) on the target afterwards,
// pushed into the wires' next segments. Diagonals ride along for free: a
// pending Z(d) flushes into the first between-rung layer.

namespace {

struct PrimOp {
    bool is_h = false;
    Angle8 z{};
};

struct Gate {
    enum Kind { H, T, Tdag, Cnot } kind;
    int a = 0;
    int b = 0;  // CNOT target
};

std::vector<Gate> toffoli_circuit()
{
    // CCZ as pi/4 phases on every parity of (a, b, c), conjugated by H on the
    // target. The CNOT ladder walks wire 2 through c, abc, ac, bc and back.
    return {
        {Gate::H, 2},    {Gate::T, 0},       {Gate::T, 1},    {Gate::T, 2},
        {Gate::Cnot, 0, 1}, {Gate::Tdag, 1},
        {Gate::Cnot, 1, 2}, {Gate::T, 2},
        {Gate::Cnot, 0, 1},
        {Gate::Cnot, 1, 2}, {Gate::Tdag, 2},
        {Gate::Cnot, 0, 1},
        {Gate::Cnot, 1, 2}, {Gate::Tdag, 2},
        {Gate::Cnot, 0, 1},
        {Gate::Cnot, 1, 2},
        {Gate::H, 2},
    };
}

constexpr int kCnots = 8;
constexpr uint32_t kQ = 4 * kCnots + 4;  // last rung at 4*kCnots+1, no dangling bricks

// Time-ordered J-argument string for the op list, plus the trailing diagonal.
std::pair<std::vector<Angle8>, Angle8> canonicalize(const std::vector<PrimOp>& ops)
{
    std::vector<Angle8> js;
    Angle8 acc{0};
    for (const PrimOp& op : ops) {
        if (op.is_h) {
            js.push_back(acc);
            acc = Angle8{0};
        } else {
            acc = acc + op.z;
        }
    }
    return {js, acc};
}

// Identity paddings: J(0)J(0) = I and J(pi/2)^3 = I, so any surplus of
// slots >= 2 can be filled. Z(d) itself costs two slots, or three when the
// surplus parity is odd (J(pi/2)J(pi/2)J(d + pi/2) = Z(d)).
void pad_even(std::vector<Angle8>& js, int count)
{
    if (count % 2) {
        js.insert(js.end(), {Angle8{2}, Angle8{2}, Angle8{2}});
        count -= 3;
    }
    for (; count > 0; count -= 2) js.insert(js.end(), {Angle8{0}, Angle8{0}});
}

std::vector<Angle8> fit_segment(std::vector<Angle8> js, Angle8 diag, bool flush_diag, int n_slots)
{
    int spare = n_slots - int(js.size());
    if (flush_diag && !(diag == Angle8{0})) {
        if (spare >= 2 && spare % 2 == 0) {
            js.push_back(diag);
            js.push_back(Angle8{0});
            spare -= 2;
        } else if (spare >= 3) {
            js.push_back(diag + Angle8{2});
            js.push_back(Angle8{2});
            js.push_back(Angle8{2});
            spare -= 3;
        } else {
            throw std::logic_error("segment too short for trailing diagonal");
        }
    }
    if (spare < 0 || (spare % 2 == 1 && spare < 3))
        throw std::logic_error("segment does not fit its slot budget");
    pad_even(js, spare);
    return js;
}

}  // namespace

uint32_t toffoli_layer_count() { return kQ + 1; }

MeasurementPattern compile_toffoli()
{
    OpenGraph g = brickwork(3, kQ);
    std::vector<Angle8> jarg(g.vertex_count(), Angle8{0});

    std::array<std::vector<PrimOp>, 3> ops;
    std::array<uint32_t, 3> seg_start = {0, 0, 0};

    auto place = [&](int w, uint32_t first, const std::vector<Angle8>& js) {
        for (uint32_t i = 0; i < js.size(); ++i) jarg[g.at(w, first + i)] = js[i];
    };

    int slot = 0;
    for (const Gate& gate : toffoli_circuit()) {
        switch (gate.kind) {
            case Gate::H: ops[gate.a].push_back({true, {}}); break;
            case Gate::T: ops[gate.a].push_back({false, Angle8{1}}); break;
            case Gate::Tdag: ops[gate.a].push_back({false, Angle8{-1}}); break;
            case Gate::Cnot: {
                ++slot;
                const uint32_t rung1 = 4 * slot - 1;
                const int pair = (slot % 2 == 1) ? 0 : 1;
                if (std::min(gate.a, gate.b) != pair || std::max(gate.a, gate.b) != pair + 1)
                    throw std::logic_error("CNOT does not line up with its rung pair");
                if (!g.has_edge(g.at(pair, rung1), g.at(pair + 1, rung1)) ||
                    !g.has_edge(g.at(pair, rung1 + 2), g.at(pair + 1, rung1 + 2)))
                    throw std::logic_error("expected rungs missing from the tiling");

                for (int w : {gate.a, gate.b}) {
                    auto [base, diag] = canonicalize(ops[w]);
                    // free layers [seg_start, rung1-1], then the two between-rung layers
                    place(w, seg_start[w],
                          fit_segment(std::move(base), {}, false, int(rung1 - seg_start[w])));
                    // between-rung layers rung1, rung1+1
                    const bool target = (w == gate.b);
                    place(w, rung1, {diag, target ? Angle8{2} : Angle8{0}});
                    seg_start[w] = rung1 + 2;
                    ops[w].clear();
                    if (target)
                        ops[w] = {{true, {}}, {false, Angle8{-2}}, {true, {}}};  // X(-pi/2)
                    else
                        ops[w] = {{false, Angle8{-2}}};  // Z(-pi/2)
                }
                break;
            }
        }
    }
    if (slot != kCnots) throw std::logic_error("unexpected CNOT count");

    for (int w = 0; w < 3; ++w) {
        auto [base, diag] = canonicalize(ops[w]);
        place(w, seg_start[w],
              fit_segment(std::move(base), diag, true, int(kQ - seg_start[w])));
    }

    std::vector<Angle8> phi(g.vertex_count(), Angle8{0});
    for (uint32_t w = 0; w < 3; ++w)
        for (uint32_t l = 0; l < kQ; ++l) phi[g.at(w, l)] = -jarg[g.at(w, l)];

    Flow flow = grid_flow(g);
    return make_pattern(std::move(g), std::move(flow), std::move(phi));
}

}  // namespace blindpsi::mbqc
