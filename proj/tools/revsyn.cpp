// Copyright 2026 The revsyn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// revsyn: synthesize, verify and inspect reversible circuits.
//
//   revsyn synth in.perm -o out.real [--report r.json]
//   revsyn verify out.real in.perm
//   revsyn cost out.real
//   revsyn count --ndcm 18
//   revsyn decompose "(0,1,2,3,4,5,6,7,8)" --limit 3
//   revsyn gen hwb 7

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "revsyn/revsyn.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_mismatch = 1;
constexpr int exit_usage = 2;

std::string read_file(std::string const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw revsyn::error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(std::string const& path, std::string const& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw revsyn::error("cannot write '" + path + "'");
    out << text;
}

struct synth_args {
    std::string input;
    std::string output;
    std::string report;
    std::string config;
    std::string kappa_dir;
    uint64_t budget_ms = 0;
    std::size_t max_decomps = 4;
    bool trivial = false;
    bool no_postopt = false;
    bool no_presynth = false;
    std::string allow_odd = "extend";
    uint64_t seed = 0;
};

int run_synth(synth_args const& a, CLI::App const& cmd) {
    revsyn::synth_config cfg;
    if (!a.config.empty()) cfg = nlohmann::json::parse(read_file(a.config)).get<revsyn::synth_config>();
    if (cmd.count("--budget-ms")) cfg.budget_ms = a.budget_ms;
    if (cmd.count("--max-decomps")) cfg.max_decomps_per_cycle = a.max_decomps;
    if (a.trivial) cfg.pairing = revsyn::pairing_mode::trivial;
    if (a.no_postopt) cfg.enable_postopt = false;
    if (a.no_presynth) cfg.enable_presynth = false;
    if (cmd.count("--allow-odd")) {
        cfg.allow_odd = a.allow_odd == "error" ? revsyn::odd_policy::error : revsyn::odd_policy::extend;
    }
    if (cmd.count("--seed")) cfg.seed = a.seed;
    if (!a.kappa_dir.empty()) cfg.kappa_dir = a.kappa_dir;

    auto const p = revsyn::parse_perm(read_file(a.input), std::max(cfg.verify_cap_bits, revsyn::default_bit_cap));
    auto const result = revsyn::synthesize(p, cfg);
    write_file(a.output, revsyn::write_netlist(result.netlist));

    auto const& r = result.report;
    nlohmann::json report = r;
    if (!a.report.empty()) write_file(a.report, report.dump(2) + "\n");
    std::fprintf(stderr, "n=%u gates=%zu quantum_cost=%llu extra_lines=%u candidates=%zu runtime_ms=%.1f\n", r.n,
                 r.gate_count, static_cast<unsigned long long>(r.quantum_cost), r.extra_lines,
                 r.decompositions_explored, r.runtime_ms);
    if (auto const ref = revsyn::reference_hwb_cost(p.bits()); ref && p == revsyn::gen_hwb(p.bits())) {
        std::fprintf(stderr, "hwb%u published quantum cost %llu, this run %llu (informational)\n", p.bits(),
                     static_cast<unsigned long long>(*ref), static_cast<unsigned long long>(r.quantum_cost));
    }
    return exit_ok;
}

int run_verify(std::string const& netlist, std::string const& perm) {
    auto const c = revsyn::parse_netlist(read_file(netlist));
    auto const p = revsyn::parse_perm(read_file(perm));
    if (revsyn::verify(c, p)) {
        std::cout << "ok\n";
        return exit_ok;
    }
    std::cout << "mismatch\n";
    return exit_mismatch;
}

int run_cost(std::string const& netlist) {
    auto const c = revsyn::parse_netlist(read_file(netlist));
    std::cout << "lines " << c.lines() << "\ngates " << c.size() << "\nquantum_cost " << revsyn::circuit_cost(c)
              << "\n";
    return exit_ok;
}

revsyn::cycle_index parse_index(std::string const& text) {
    revsyn::cycle_index idx;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto const colon = item.find(':');
        if (colon == std::string::npos) throw CLI::ValidationError("--index", "expected k:i_k pairs");
        try {
            auto const k = std::stoul(item.substr(0, colon));
            auto const i = std::stoul(item.substr(colon + 1));
            idx[static_cast<uint32_t>(k)] += static_cast<uint32_t>(i);
        } catch (std::logic_error const&) {
            throw CLI::ValidationError("--index", "expected k:i_k pairs");
        }
    }
    return idx;
}

int run_decompose(std::string const& text, std::size_t limit) {
    auto const cycles = revsyn::parse_cycles(text);
    if (cycles.size() != 1) throw revsyn::domain_error("decompose takes exactly one cycle");
    auto const& c = cycles.front();
    if (c.length() <= 5) throw revsyn::domain_error("decompose needs a cycle longer than 5");
    for (auto const& d : revsyn::enumerate_decompositions(c, limit)) {
        if (!revsyn::validate(d, c)) throw revsyn::error("internal error: invalid decomposition");
        std::cout << revsyn::to_string(std::span<revsyn::cycle const>(d.factors)) << "\n";
    }
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reversible circuit synthesis by cycle decomposition"};
    app.require_subcommand(1);

    synth_args sa;
    auto* synth = app.add_subcommand("synth", "Synthesize a permutation file into a netlist");
    synth->add_option("input", sa.input, "Permutation file")->required()->check(CLI::ExistingFile);
    synth->add_option("-o,--output", sa.output, "Netlist to write ('-' for stdout)")->required();
    synth->add_option("--budget-ms", sa.budget_ms, "Wall-clock budget for the search, 0 for none");
    synth->add_option("--max-decomps", sa.max_decomps, "Decomposition candidates to evaluate")
        ->check(CLI::PositiveNumber);
    synth->add_flag("--trivial-assign", sa.trivial, "Pair factors in order instead of by matching");
    synth->add_flag("--no-postopt", sa.no_postopt, "Skip the peephole pass");
    synth->add_flag("--no-presynth", sa.no_presynth, "Skip the NCT pre-pass");
    synth->add_option("--allow-odd", sa.allow_odd, "extend or error")
        ->check(CLI::IsMember({"extend", "error"}));
    synth->add_option("--seed", sa.seed, "Seed recorded with the run");
    synth->add_option("--report", sa.report, "Write the cost report as JSON");
    synth->add_option("--config", sa.config, "JSON config; flags override it")->check(CLI::ExistingFile);
    synth->add_option("--kappa-dir", sa.kappa_dir, "Directory caching kappa circuits");

    std::string v_netlist, v_perm;
    auto* verify = app.add_subcommand("verify", "Check a netlist against a permutation file");
    verify->add_option("netlist", v_netlist)->required()->check(CLI::ExistingFile);
    verify->add_option("perm", v_perm)->required()->check(CLI::ExistingFile);

    std::string c_netlist;
    auto* cost = app.add_subcommand("cost", "Print gate count and quantum cost");
    cost->add_option("netlist", c_netlist)->required()->check(CLI::ExistingFile);

    uint64_t ndcm_n = 0, n5_n = 0;
    uint32_t catalan_n = 0, length_n = 0;
    std::string index_text;
    auto* count = app.add_subcommand("count", "Decomposition counts");
    auto* o_ndcm = count->add_option("--ndcm", ndcm_n, "Maximally disjoint decompositions of an N-cycle");
    auto* o_n5 = count->add_option("--n5", n5_n, "Minimum 5-cycle factors and disjoint blocks of an N-cycle");
    auto* o_cat = count->add_option("--catalan", catalan_n, "Inequivalent transposition factorizations");
    auto* o_idx = count->add_option("--index", index_text, "Cycle index k:i_k,... (needs --length)");
    count->add_option("--length", length_n, "Cycle length for --index");
    o_ndcm->excludes(o_n5)->excludes(o_cat)->excludes(o_idx);
    o_n5->excludes(o_cat)->excludes(o_idx);
    o_cat->excludes(o_idx);
    count->require_option(1, 2);

    std::string d_text;
    std::size_t d_limit = 1;
    auto* decompose = app.add_subcommand("decompose", "Decompose a long cycle into 5-cycles");
    decompose->add_option("cycle", d_text, "Cycle notation, e.g. \"(0,1,2,3,4,5,6)\"")->required();
    decompose->add_option("--limit", d_limit, "Decompositions to print")->check(CLI::PositiveNumber);

    uint32_t g_n = 0;
    uint64_t g_seed = 0;
    std::string g_out;
    auto* gen = app.add_subcommand("gen", "Write a benchmark permutation file");
    gen->require_subcommand(1);
    auto* g_hwb = gen->add_subcommand("hwb", "Hidden weighted bit");
    g_hwb->add_option("n", g_n)->required();
    g_hwb->add_option("-o,--output", g_out, "File to write (default stdout)");
    auto* g_rand = gen->add_subcommand("random-even", "Uniform even permutation");
    g_rand->add_option("n", g_n)->required();
    g_rand->add_option("--seed", g_seed);
    g_rand->add_option("-o,--output", g_out, "File to write (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (CLI::ParseError const& e) {
        int const code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*synth) return run_synth(sa, *synth);
        if (*verify) return run_verify(v_netlist, v_perm);
        if (*cost) return run_cost(c_netlist);
        if (*count) {
            if (*o_ndcm) std::cout << revsyn::ndcm(ndcm_n) << "\n";
            if (*o_n5) std::cout << "n5 " << revsyn::n5(n5_n) << "\nmax_disjoint " << revsyn::max_disjoint(n5_n) << "\n";
            if (*o_cat) std::cout << revsyn::catalan_inequivalent_2cycle_count(catalan_n) << "\n";
            if (*o_idx) {
                if (length_n == 0) throw CLI::ValidationError("--index", "requires --length");
                auto const idx = parse_index(index_text);
                std::cout << "ordered " << revsyn::factorization_count(length_n, idx) << "\ninequivalent "
                          << revsyn::inequivalent_factorization_count(length_n, idx) << "\n";
            }
            return exit_ok;
        }
        if (*decompose) return run_decompose(d_text, d_limit);
        if (*gen) {
            auto const p = *g_hwb ? revsyn::gen_hwb(g_n) : revsyn::gen_random_even(g_n, g_seed);
            write_file(g_out, revsyn::write_perm(p));
            return exit_ok;
        }
    } catch (CLI::Error const& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (revsyn::error const& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (nlohmann::json::exception const& e) {
        std::cerr << "error: config: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}
