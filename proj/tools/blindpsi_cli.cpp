// Command-line front end: a full private-set-intersection run plus the
// standalone checkers (preparation identities, blindness statistics, blind
// Toffoli sweep). Reports are key:value lines with a trailing JSON object.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "blindpsi/bloom/bloom.hpp"
#include "blindpsi/mbqc/compile.hpp"
#include "blindpsi/protocol/checks.hpp"
#include "blindpsi/protocol/driver.hpp"

using json = nlohmann::json;
using namespace blindpsi;

namespace {

// default seed for the blindness statistics; see README on multiple testing
constexpr uint64_t kBlindnessDefaultSeed = 1;

// One item per line, exact bytes, only the trailing newline stripped.
bool read_set_file(const std::string& path, std::vector<std::string>& out)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::string line;
    while (std::getline(in, line)) out.push_back(line);
    return true;
}

void emit_report(const std::vector<std::pair<std::string, std::string>>& lines, const json& j,
                 const std::string& out_path)
{
    std::ostringstream os;
    for (const auto& [k, v] : lines) os << k << ": " << v << '\n';
    os << "JSON " << j.dump() << '\n';
    if (out_path.empty()) {
        std::cout << os.str();
    } else {
        std::ofstream f(out_path, std::ios::binary);
        f << os.str();
    }
}

std::string join_items(const std::vector<std::string>& items)
{
    std::string s;
    for (size_t i = 0; i < items.size(); ++i) {
        if (i) s += ',';
        s += items[i];
    }
    return s.empty() ? "-" : s;
}

std::string sci(double v)
{
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

int cmd_run(const std::string& alice_path, const std::string& bob_path, int lambda, int m,
            uint64_t seed, const std::string& out_path)
{
    std::vector<std::string> items_a, items_b;
    if (!read_set_file(alice_path, items_a)) {
        std::cerr << "cannot read " << alice_path << "\n";
        return 1;
    }
    if (!read_set_file(bob_path, items_b)) {
        std::cerr << "cannot read " << bob_path << "\n";
        return 1;
    }

    protocol::RunConfig cfg;
    cfg.lambda = lambda;
    cfg.m = m;
    cfg.seed = seed;
    if (const char* cap = std::getenv("BLINDPSI_QUBIT_CAP")) cfg.qubit_cap = std::atoi(cap);

    protocol::RunResult res;
    try {
        res = protocol::psi_run(items_a, items_b, cfg);
    } catch (const std::exception& e) {
        std::cerr << "run failed: " << e.what() << "\n";
        return 1;
    }

    // internal consistency: the classical AND reference and the exact
    // qubit-count formula must both agree with the transcript
    bool consistent = !res.aborted;
    if (!res.aborted) {
        bloom::BloomFilter fa(res.params), fb(res.params);
        bloom::ItemDictionary da, db;
        for (const auto& a : items_a) {
            fa.insert(a);
            da.insert(res.params, a);
        }
        for (const auto& b : items_b) {
            fb.insert(b);
            db.insert(res.params, b);
        }
        const auto ref_a = bloom::intersect_classical(fa, fb, da, items_a);
        const auto ref_b = bloom::intersect_classical(fb, fa, db, items_b);
        const uint64_t expect = protocol::expected_qubit_count(
            cfg.lambda, int(res.instances) / cfg.lambda, cfg.l_batch);
        consistent = res.intersection_c1 == ref_a && res.intersection_c2 == ref_b &&
                     res.transcript.count_qubits() == expect;
    }

    std::vector<std::pair<std::string, std::string>> lines;
    lines.emplace_back("alice_items", std::to_string(items_a.size()));
    lines.emplace_back("bob_items", std::to_string(items_b.size()));
    lines.emplace_back("lambda", std::to_string(cfg.lambda));
    lines.emplace_back("m", std::to_string(res.instances / uint32_t(cfg.lambda)));
    lines.emplace_back("seed", std::to_string(seed));
    lines.emplace_back("instances", std::to_string(res.instances));
    lines.emplace_back("layers_per_wire", std::to_string(mbqc::toffoli_layer_count()));
    lines.emplace_back("aborted", res.aborted ? "yes" : "no");
    if (res.aborted) lines.emplace_back("abort_reason", res.abort_reason);
    lines.emplace_back("qubit_count", std::to_string(res.transcript.count_qubits()));
    lines.emplace_back("messages_total", std::to_string(res.transcript.size()));
    json msg_counts;
    for (int k = 0; k < 10; ++k) {
        const auto kind = transport::Kind(k);
        msg_counts[transport::kind_name(kind)] = res.transcript.count(kind);
        lines.emplace_back(std::string("msg_") + transport::kind_name(kind),
                           std::to_string(res.transcript.count(kind)));
    }
    lines.emplace_back("intersection_c1", join_items(res.intersection_c1));
    lines.emplace_back("intersection_c2", join_items(res.intersection_c2));
    lines.emplace_back("consistency", consistent ? "pass" : "fail");

    json j;
    j["aborted"] = res.aborted;
    j["abort_reason"] = res.abort_reason;
    j["lambda"] = cfg.lambda;
    j["m"] = res.instances / uint32_t(cfg.lambda);
    j["seed"] = seed;
    j["instances"] = res.instances;
    j["layers_per_wire"] = mbqc::toffoli_layer_count();
    j["qubit_count"] = res.transcript.count_qubits();
    j["messages"] = msg_counts;
    j["intersection_c1"] = res.intersection_c1;
    j["intersection_c2"] = res.intersection_c2;
    j["consistency"] = consistent ? "pass" : "fail";
    emit_report(lines, j, out_path);

    if (!out_path.empty()) {
        std::ofstream t(out_path + ".transcript", std::ios::binary);
        t << res.transcript.serialize();
    }
    return res.aborted ? 2 : 0;
}

int cmd_verify_prep(bool mutate, const std::string& out_path)
{
    const auto res = protocol::verify_prep_check(mutate);
    const bool pass = res.max_infidelity <= 1e-9;

    std::vector<std::pair<std::string, std::string>> lines;
    lines.emplace_back("cases_checked",
                       std::to_string(res.merge_input_cases + res.merge_plus_cases));
    lines.emplace_back("merge_input_cases", std::to_string(res.merge_input_cases));
    lines.emplace_back("merge_plus_cases", std::to_string(res.merge_plus_cases));
    lines.emplace_back("max_infidelity", sci(res.max_infidelity));
    lines.emplace_back("mutation_mode", mutate ? "yes" : "no");
    lines.emplace_back("result", pass ? "pass" : "fail");
    json j{{"cases_checked", res.merge_input_cases + res.merge_plus_cases},
           {"merge_input_cases", res.merge_input_cases},
           {"merge_plus_cases", res.merge_plus_cases},
           {"max_infidelity", res.max_infidelity},
           {"mutation_mode", mutate},
           {"result", pass ? "pass" : "fail"}};
    emit_report(lines, j, out_path);
    return pass ? 0 : 1;
}

int cmd_blindness(int samples, uint64_t seed, bool sabotage, const std::string& out_path)
{
    if (samples < 1000) {
        std::cerr << "insufficient power: need --samples >= 1000\n";
        return 3;
    }
    const auto res = protocol::blindness_check(samples, seed, sabotage);
    const bool pass = res.pass();

    std::vector<std::pair<std::string, std::string>> lines;
    lines.emplace_back("samples", std::to_string(samples));
    lines.emplace_back("positions", std::to_string(res.positions));
    lines.emplace_back("sabotage", sabotage ? "yes" : "no");
    lines.emplace_back("min_uniformity_p", sci(res.min_uniformity_p));
    lines.emplace_back("min_two_sample_p", sci(res.min_two_sample_p));
    lines.emplace_back("result", pass ? "pass" : "fail");

    json j{{"samples", samples},
           {"positions", res.positions},
           {"sabotage", sabotage},
           {"min_uniformity_p", res.min_uniformity_p},
           {"min_two_sample_p", res.min_two_sample_p},
           {"result", pass ? "pass" : "fail"}};
    json histograms = json::array();
    for (uint32_t p = 0; p < res.positions; ++p)
        histograms.push_back({{"pair_a", res.histograms[0][p]}, {"pair_b", res.histograms[1][p]}});
    j["histograms"] = std::move(histograms);
    emit_report(lines, j, out_path);
    return pass ? 0 : 1;
}

int cmd_toffoli_check(int seeds, uint64_t seed_base, const std::string& out_path)
{
    const int mismatches = protocol::toffoli_check(seeds, seed_base);
    const bool pass = mismatches == 0;

    std::vector<std::pair<std::string, std::string>> lines;
    lines.emplace_back("seeds", std::to_string(seeds));
    lines.emplace_back("runs", std::to_string(seeds * 8));
    lines.emplace_back("mismatches", std::to_string(mismatches));
    lines.emplace_back("result", pass ? "pass" : "fail");
    json j{{"seeds", seeds},
           {"runs", seeds * 8},
           {"mismatches", mismatches},
           {"result", pass ? "pass" : "fail"}};
    emit_report(lines, j, out_path);
    return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{
        "server-aided private set intersection over blind delegated measurement-based "
        "computation"};
    app.require_subcommand(1);

    std::string alice, bob, out_path;
    int lambda = 8, m = 0, samples = 8000, seeds = 100;
    uint64_t seed = 1;
    uint64_t blind_seed = kBlindnessDefaultSeed;
    bool mutate = false, sabotage = false;

    auto* run = app.add_subcommand("run", "run the full intersection protocol");
    run->add_option("--alice", alice, "first client's set, one item per line")->required();
    run->add_option("--bob", bob, "second client's set")->required();
    run->add_option("--lambda", lambda, "filter expansion factor");
    run->add_option("--m", m, "maximum set size (default: larger input set)");
    run->add_option("--seed", seed, "run seed");
    run->add_option("--out", out_path, "report file (transcript lands next to it)");

    auto* verify = app.add_subcommand("verify-prep", "exhaustive preparation-identity check");
    verify->add_flag("--mutate", mutate, "flip the outcome sign in the prediction (self-test)");
    verify->add_option("--out", out_path, "report file");

    auto* blind = app.add_subcommand("blindness", "delta-view uniformity statistics");
    blind->add_option("--samples", samples, "instance runs per input pair");
    blind->add_option("--seed", blind_seed, "sampling seed");
    blind->add_flag("--sabotage", sabotage, "zero out pads and r bits");
    blind->add_option("--out", out_path, "report file");

    auto* toff = app.add_subcommand("toffoli-check", "blind pipeline against the truth table");
    toff->add_option("--seeds", seeds, "seeds per input");
    toff->add_option("--seed", seed, "base seed");
    toff->add_option("--out", out_path, "report file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(alice, bob, lambda, m, seed, out_path);
        if (verify->parsed()) return cmd_verify_prep(mutate, out_path);
        if (blind->parsed()) return cmd_blindness(samples, blind_seed, sabotage, out_path);
        if (toff->parsed()) return cmd_toffoli_check(seeds, seed, out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
