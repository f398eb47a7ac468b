// main.cpp — ssakit command line: generate states/channels, check saturation
// gaps, run the structure decomposers, and analyze channel bounds.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ssakit/errors.hpp"
#include "ssakit/generate.hpp"
#include "ssakit/io.hpp"
#include "ssakit/linalg.hpp"
#include "ssakit/structure.hpp"

namespace {

using ssakit::io::Json;

// Exit codes: 0 ok, 1 input error, 2 not saturated, 3 verification failure,
// 4 internal error.
constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNotSaturated = 2;
constexpr int kExitVerification = 3;
constexpr int kExitInternal = 4;

struct OutputOptions {
    std::string out_path;
    bool quiet = false;
};

void emit_report(const Json& report, const OutputOptions& opts, const std::string& summary) {
    const std::string text = ssakit::io::dump_json(report);
    if (!opts.out_path.empty()) {
        ssakit::io::write_text_file(opts.out_path, text);
        if (!opts.quiet) std::cout << summary << "\n";
    } else {
        std::cout << text;
    }
}

Json tolerances_json(const ssakit::StructureTolerances& tol) {
    return Json{{"entropy_tol_bits", tol.entropy_tol}, {"matrix_tol_trace", tol.matrix_tol}};
}

// ---- small spec parsers ("2x2:0.6,1x2:0.4", "0.3,0.2;0.1,0.4", ...) -------

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

std::vector<ssakit::BlockShape> parse_blocks(const std::string& s) {
    std::vector<ssakit::BlockShape> blocks;
    for (const std::string& part : split(s, ',')) {
        const auto colon = part.find(':');
        const auto x = part.find('x');
        if (colon == std::string::npos || x == std::string::npos || x > colon)
            throw ssakit::InvalidInput("block spec must look like LxR:weight, got '" + part + "'");
        blocks.push_back({std::stoul(part.substr(0, x)),
                          std::stoul(part.substr(x + 1, colon - x - 1)),
                          std::stod(part.substr(colon + 1))});
    }
    return blocks;
}

std::vector<std::pair<std::size_t, std::size_t>> parse_dim_pairs(const std::string& s) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (const std::string& part : split(s, ',')) {
        const auto x = part.find('x');
        if (x == std::string::npos)
            throw ssakit::InvalidInput("dim pair must look like LxR, got '" + part + "'");
        pairs.emplace_back(std::stoul(part.substr(0, x)), std::stoul(part.substr(x + 1)));
    }
    return pairs;
}

std::vector<std::vector<double>> parse_weight_matrix(const std::string& s) {
    std::vector<std::vector<double>> rows;
    for (const std::string& row : split(s, ';')) {
        std::vector<double> r;
        for (const std::string& cell : split(row, ',')) r.push_back(std::stod(cell));
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<int> parse_ints(const std::string& s) {
    std::vector<int> out;
    for (const std::string& part : split(s, ',')) out.push_back(std::stoi(part));
    return out;
}

std::vector<std::size_t> parse_dims(const std::string& s) {
    std::vector<std::size_t> out;
    for (const std::string& part : split(s, ',')) out.push_back(std::stoul(part));
    return out;
}

// ---- subcommands -----------------------------------------------------------

struct GenOptions {
    std::string family = "random";
    std::uint64_t seed = 1;
    std::string out_path;
    std::string scramble;
    std::string dims = "2,2,2";
    std::size_t rank = 0;
    std::string blocks = "2x2:0.6,1x2:0.4";
    std::size_t dim_a = 2, dim_c = 2, dim_b = 2;
    std::string a_blocks = "2x1,2x2";
    std::string c_blocks = "2x1,2x1";
    std::string mu = "0.3,0.2;0.1,0.4";
    std::size_t dim_l = 2, dim_r = 2;
    std::string b_blocks = "1x1,1x1";
    std::string p = "0.5,0;0,0.5";
    std::string k1 = "0,1", k2 = "0,1";
    int sectors = 2;
    std::size_t din = 2, dout = 2, nkraus = 2;
    bool quiet = false;
};

int run_gen(const GenOptions& g) {
    Json provenance{{"family", g.family}, {"seed", g.seed}};

    if (g.family == "channel") {
        const ssakit::KrausChannel channel = ssakit::random_channel(g.din, g.dout, g.nkraus, g.seed);
        if (g.out_path.empty()) throw ssakit::InvalidInput("gen: --out is required");
        ssakit::io::save_channel(g.out_path, channel, provenance);
        if (!g.quiet)
            std::cout << "wrote channel (" << g.din << " -> " << g.dout << ", " << g.nkraus
                      << " Kraus) to " << g.out_path << "\n";
        return kExitOk;
    }

    ssakit::MultipartiteState state;
    if (g.family == "random") {
        const std::vector<std::size_t> dims = parse_dims(g.dims);
        if (dims.empty() || dims.size() > 6)
            throw ssakit::InvalidInput("gen random: --dims must list one to six subsystems");
        std::size_t total = 1;
        for (std::size_t d : dims) total *= d;
        const std::size_t rank = g.rank == 0 ? total : g.rank;
        std::vector<std::string> labels;
        for (std::size_t k = 0; k < dims.size(); ++k) labels.emplace_back(1, "ABCDEF"[k]);
        state = ssakit::MultipartiteState::trusted(ssakit::random_density(total, rank, g.seed),
                                                   dims, labels);
    } else if (g.family == "markov") {
        state = ssakit::planted_markov(parse_blocks(g.blocks), g.dim_a, g.dim_c, g.seed).state;
    } else if (g.family == "thm1") {
        ssakit::Theorem1Spec spec;
        spec.a_blocks = parse_dim_pairs(g.a_blocks);
        spec.c_blocks = parse_dim_pairs(g.c_blocks);
        spec.mu = parse_weight_matrix(g.mu);
        spec.dim_b = g.dim_b;
        state = ssakit::planted_theorem1(spec, g.seed).state;
    } else if (g.family == "araki-lieb") {
        state = ssakit::planted_araki_lieb(g.dim_l, g.dim_r, g.dim_c, g.seed).state;
    } else if (g.family == "bi-ssa") {
        ssakit::BiSsaSpec spec;
        spec.a_blocks = parse_dim_pairs(g.a_blocks);
        spec.b_blocks = parse_dim_pairs(g.b_blocks);
        spec.p = parse_weight_matrix(g.p);
        spec.k1 = parse_ints(g.k1);
        spec.k2 = parse_ints(g.k2);
        spec.dim_c = g.dim_c;
        spec.n_sectors = g.sectors;
        state = ssakit::planted_bi_ssa(spec, g.seed).state;
    } else {
        throw ssakit::InvalidInput("gen: unknown family '" + g.family + "'");
    }

    if (!g.scramble.empty()) {
        const std::vector<std::string> labels = split(g.scramble, ',');
        state = ssakit::scramble_local(state, labels, g.seed ^ 0x5C7A3BULL);
        provenance["scrambled"] = labels;
    }
    if (g.out_path.empty()) throw ssakit::InvalidInput("gen: --out is required");
    ssakit::io::save_state(g.out_path, state, provenance);
    if (!g.quiet) {
        std::cout << "wrote " << g.family << " state (dims";
        for (std::size_t d : state.dims()) std::cout << " " << d;
        std::cout << ") to " << g.out_path << "\n";
    }
    return kExitOk;
}

int run_check(const std::string& state_path, const std::string& which, double tol,
              const OutputOptions& opts) {
    const ssakit::io::LoadedState loaded = ssakit::io::load_state(state_path);
    const ssakit::MultipartiteState& state = loaded.state;

    std::vector<ssakit::GapReport> reports;
    if (which == "ssa1" || which == "all") {
        if (which == "ssa1" || state.arity() == 3) reports.push_back(ssakit::ssa_gap_v1(state, tol));
    }
    if (which == "ssa2" || which == "all") {
        if (which == "ssa2" || state.arity() == 3) reports.push_back(ssakit::ssa_gap_v2(state, tol));
    }
    if (which == "araki-lieb" || which == "all") {
        if (which == "araki-lieb" || state.arity() == 2)
            reports.push_back(ssakit::araki_lieb_gap(state, tol));
    }
    if (reports.empty())
        throw ssakit::InvalidInput("check: no identity applies (unknown --which or wrong arity)");

    Json payload = Json::array();
    std::string summary;
    for (const ssakit::GapReport& r : reports) {
        payload.push_back(ssakit::io::gap_to_json(r));
        summary += std::string(ssakit::to_string(r.kind)) + ": gap " +
                   std::to_string(r.gap_bits) + " bits, saturated " +
                   (r.saturated ? "yes" : "no") + "; ";
    }
    const Json report = ssakit::io::make_report(
        "gap", Json{{"checks", std::move(payload)}}, Json{{"entropy_tol_bits", tol}},
        loaded.provenance);
    emit_report(report, opts, summary);
    return kExitOk;
}

int run_decompose(const std::string& state_path, const std::string& mode,
                  const ssakit::StructureTolerances& tol, const OutputOptions& opts) {
    const ssakit::io::LoadedState loaded = ssakit::io::load_state(state_path);
    const ssakit::MultipartiteState& state = loaded.state;

    std::string kind;
    Json payload;
    std::string summary;
    int exit_code = kExitOk;
    try {
        if (mode == "markov") {
            kind = "markov";
            const ssakit::MarkovStructure m = ssakit::markov_decompose(state, tol);
            payload = ssakit::io::markov_to_json(m);
            summary = "markov: " + std::to_string(m.weights.size()) + " block(s), reassembly " +
                      std::to_string(m.reassembly_error);
        } else if (mode == "thm1") {
            kind = "theorem1";
            const ssakit::TheoremOneStructure t = ssakit::theorem1_decompose(state, tol);
            payload = ssakit::io::theorem1_to_json(t);
            summary = "theorem1: " + std::to_string(t.cells.size()) + " cell(s), reassembly " +
                      std::to_string(t.reassembly_error);
        } else if (mode == "araki-lieb") {
            kind = "araki_lieb";
            const ssakit::ArakiLiebStructure a = ssakit::araki_lieb_decompose(state, tol);
            payload = ssakit::io::araki_lieb_to_json(a);
            summary = "araki_lieb: dims (" + std::to_string(a.dim_left) + "," +
                      std::to_string(a.dim_right) + "), reassembly " +
                      std::to_string(a.reassembly_error);
        } else if (mode == "bi-ssa") {
            kind = "bi_ssa";
            const ssakit::BiSsaReport b = ssakit::bi_ssa_report(state, tol);
            payload = ssakit::io::bi_ssa_to_json(b);
            summary = "bi_ssa: " + std::to_string(b.sector_c_states.size()) + " sector(s)";
        } else {
            throw ssakit::InvalidInput("decompose: unknown mode '" + mode + "'");
        }
    } catch (const ssakit::NotSaturated& e) {
        payload = Json{{"error", "not_saturated"}, {"what", e.what()}, {"gap_bits", e.gap_bits}};
        summary = std::string("not saturated: ") + e.what();
        exit_code = kExitNotSaturated;
    } catch (const ssakit::StructureVerificationFailed& e) {
        payload = Json{{"error", "verification_failed"}, {"what", e.what()},
                       {"residual", e.residual}};
        summary = std::string("verification failed: ") + e.what();
        exit_code = kExitVerification;
    } catch (const ssakit::RefinementExhausted& e) {
        payload = Json{{"error", "refinement_exhausted"}, {"what", e.what()},
                       {"worst_purity", e.worst_purity}};
        summary = std::string("refinement exhausted: ") + e.what();
        exit_code = kExitVerification;
    }

    if (kind.empty()) kind = mode;
    const Json report =
        ssakit::io::make_report(kind, std::move(payload), tolerances_json(tol), loaded.provenance);
    emit_report(report, opts, summary);
    return exit_code;
}

int run_channel(const std::string& channel_path, const std::string& state_path,
                const std::string& analyze, const ssakit::StructureTolerances& tol,
                const OutputOptions& opts) {
    const ssakit::io::LoadedChannel loaded_channel = ssakit::io::load_channel(channel_path);
    const ssakit::io::LoadedState loaded_state = ssakit::io::load_state(state_path);
    const ssakit::KrausChannel& phi = loaded_channel.channel;
    if (loaded_state.state.arity() != 1)
        throw ssakit::InvalidInput("channel: the input state file must carry one subsystem");
    const ssakit::CMatrix& rho = loaded_state.state.matrix();

    Json provenance;
    if (!loaded_channel.provenance.is_null()) provenance["channel"] = loaded_channel.provenance;
    if (!loaded_state.provenance.is_null()) provenance["state"] = loaded_state.provenance;
    if (provenance.empty()) provenance = Json();

    std::string kind;
    Json payload;
    std::string summary;
    int exit_code = kExitOk;
    try {
        if (analyze == "holevo") {
            kind = "gap";
            const ssakit::GapReport r = ssakit::exchange_bound_report(phi, rho, tol.entropy_tol);
            payload = Json{{"checks", Json::array({ssakit::io::gap_to_json(r)})}};
            summary = "exchange bound gap " + std::to_string(r.gap_bits) + " bits";
        } else if (analyze == "average-entropy") {
            kind = "gap";
            const ssakit::GapReport r = ssakit::average_entropy_report(phi, rho, tol.entropy_tol);
            payload = Json{{"checks", Json::array({ssakit::io::gap_to_json(r)})}};
            summary = "average entropy gap " + std::to_string(r.gap_bits) + " bits";
        } else if (analyze == "coherent") {
            kind = "coherent";
            const ssakit::CoherentSaturationReport r =
                ssakit::coherent_saturation_check(phi, rho, std::nullopt, tol);
            payload = ssakit::io::coherent_to_json(r);
            summary = "coherent information " + std::to_string(r.coherent_info_bits) + " bits";
        } else if (analyze == "saturation") {
            kind = "channel_saturation";
            const ssakit::ChannelSaturationReport r =
                ssakit::channel_saturation_analyze(phi, rho, tol.entropy_tol);
            payload = ssakit::io::channel_saturation_to_json(r);
            summary = std::string("gram rank_one ") + (r.rank_one ? "yes" : "no") +
                      ", reconstruction " + std::to_string(r.reconstruction_error);
        } else if (analyze == "holevo-saturation") {
            kind = "holevo_saturation";
            const ssakit::HolevoSaturationReport r =
                ssakit::holevo_saturation_analyze(phi, rho, tol);
            payload = ssakit::io::holevo_saturation_to_json(r);
            summary = "holevo saturation: " + std::to_string(r.output_blocks.size()) +
                      " output block(s)";
        } else {
            throw ssakit::InvalidInput("channel: unknown analysis '" + analyze + "'");
        }
    } catch (const ssakit::NotSaturated& e) {
        payload = Json{{"error", "not_saturated"}, {"what", e.what()}, {"gap_bits", e.gap_bits}};
        summary = std::string("not saturated: ") + e.what();
        exit_code = kExitNotSaturated;
        if (kind.empty()) kind = "holevo_saturation";
    }

    const Json report =
        ssakit::io::make_report(kind, std::move(payload), tolerances_json(tol), provenance);
    emit_report(report, opts, summary);
    return exit_code;
}

int run_selftest(bool quiet) {
    int failures = 0;
    auto check = [&](const char* name, bool ok) {
        if (!quiet || !ok)
            std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << "\n";
        if (!ok) ++failures;
    };

    using namespace ssakit;
    {
        CMatrix half = 0.5 * CMatrix::identity(2);
        check("S(I/2) = 1 bit", std::abs(von_neumann_entropy(half) - 1.0) < 1e-10);
    }
    {
        const CMatrix rho = CMatrix::diagonal({0.5, 0.25, 0.25});
        check("S(diag(1/2,1/4,1/4)) = 1.5 bits",
              std::abs(von_neumann_entropy(rho) - 1.5) < 1e-10);
    }
    {
        CMatrix ghz(8, 8);
        ghz(0, 0) = ghz(0, 7) = ghz(7, 0) = ghz(7, 7) = 0.5;
        const MultipartiteState s =
            MultipartiteState::trusted(ghz, {2, 2, 2}, {"A", "B", "C"});
        check("GHZ v1 gap = 1 bit", std::abs(ssa_gap_v1(s).gap_bits - 1.0) < 1e-9);
        check("GHZ v2 gap = 0", std::abs(ssa_gap_v2(s).gap_bits) < 1e-9);
    }
    {
        const PlantedMarkov pm =
            planted_markov({{2, 2, 0.6}, {1, 2, 0.4}}, 2, 2, 20240001);
        const MultipartiteState scrambled = scramble_local(pm.state, {"B"}, 7);
        bool ok = false;
        try {
            const MarkovStructure m = markov_decompose(scrambled);
            ok = m.weights.size() == 2 && m.reassembly_error <= 1e-7;
        } catch (const Error&) {
        }
        check("planted Markov round trip", ok);
    }
    {
        const KrausChannel deph = dephasing_channel(2);
        const CMatrix rho = CMatrix::diagonal({0.3, 0.7});
        bool ok = false;
        try {
            const HolevoSaturationReport r = holevo_saturation_analyze(deph, rho);
            ok = r.output_blocks.size() == 2 && r.output_reassembly_error <= 1e-7;
        } catch (const Error&) {
        }
        check("dephasing Holevo saturation structure", ok);
    }
    return failures == 0 ? kExitOk : kExitInternal;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"entropy saturation gaps and structure recovery for quantum states"};
    app.require_subcommand(1);

    GenOptions gen;
    CLI::App* cmd_gen = app.add_subcommand("gen", "generate states and channels");
    cmd_gen->add_option("--family", gen.family,
                        "random|markov|thm1|araki-lieb|bi-ssa|channel");
    cmd_gen->add_option("--seed", gen.seed, "generator seed");
    cmd_gen->add_option("--out", gen.out_path, "output path")->required();
    cmd_gen->add_option("--scramble", gen.scramble, "labels to scramble, e.g. A,C");
    cmd_gen->add_option("--dims", gen.dims, "subsystem dims for family=random");
    cmd_gen->add_option("--rank", gen.rank, "rank for family=random (default full)");
    cmd_gen->add_option("--blocks", gen.blocks, "markov blocks, e.g. 2x2:0.6,1x2:0.4");
    cmd_gen->add_option("--dim-a", gen.dim_a, "dimension of A");
    cmd_gen->add_option("--dim-b", gen.dim_b, "dimension of B");
    cmd_gen->add_option("--dim-c", gen.dim_c, "dimension of C");
    cmd_gen->add_option("--a-blocks", gen.a_blocks, "A-side blocks, e.g. 1x1,2x1");
    cmd_gen->add_option("--c-blocks", gen.c_blocks, "C-side blocks");
    cmd_gen->add_option("--b-blocks", gen.b_blocks, "B-side blocks (bi-ssa)");
    cmd_gen->add_option("--mu", gen.mu, "joint weights, rows ; separated");
    cmd_gen->add_option("--p", gen.p, "bi-ssa cell weights");
    cmd_gen->add_option("--k1", gen.k1, "bi-ssa sector of each A block");
    cmd_gen->add_option("--k2", gen.k2, "bi-ssa sector of each B block");
    cmd_gen->add_option("--sectors", gen.sectors, "bi-ssa sector count");
    cmd_gen->add_option("--dim-l", gen.dim_l, "araki-lieb L dimension");
    cmd_gen->add_option("--dim-r", gen.dim_r, "araki-lieb R dimension");
    cmd_gen->add_option("--din", gen.din, "channel input dimension");
    cmd_gen->add_option("--dout", gen.dout, "channel output dimension");
    cmd_gen->add_option("--nkraus", gen.nkraus, "number of Kraus operators");
    cmd_gen->add_flag("--quiet", gen.quiet, "suppress the summary line");

    std::string check_state, check_which = "all", check_out;
    double check_tol = ssakit::kDefaultGapTol;
    bool check_quiet = false;
    CLI::App* cmd_check = app.add_subcommand("check", "compute saturation gaps");
    cmd_check->add_option("state", check_state, "state file")->required();
    cmd_check->add_option("--which", check_which, "ssa1|ssa2|araki-lieb|all");
    cmd_check->add_option("--tol", check_tol, "saturation tolerance in bits");
    cmd_check->add_option("--out", check_out, "report path (stdout when absent)");
    cmd_check->add_flag("--quiet", check_quiet, "suppress the summary line");

    std::string dec_state, dec_mode = "markov", dec_out;
    ssakit::StructureTolerances dec_tol;
    bool dec_quiet = false;
    CLI::App* cmd_dec = app.add_subcommand("decompose", "recover saturation structure");
    cmd_dec->add_option("state", dec_state, "state file")->required();
    cmd_dec->add_option("--mode", dec_mode, "markov|thm1|araki-lieb|bi-ssa");
    cmd_dec->add_option("--tol", dec_tol.entropy_tol, "entropy gate in bits");
    cmd_dec->add_option("--matrix-tol", dec_tol.matrix_tol, "matrix gate in trace distance");
    cmd_dec->add_option("--out", dec_out, "report path (stdout when absent)");
    cmd_dec->add_flag("--quiet", dec_quiet, "suppress the summary line");

    std::string ch_channel, ch_state, ch_analyze = "saturation", ch_out;
    ssakit::StructureTolerances ch_tol;
    bool ch_quiet = false;
    CLI::App* cmd_ch = app.add_subcommand("channel", "channel bound analyses");
    cmd_ch->add_option("channel", ch_channel, "channel file")->required();
    cmd_ch->add_option("state", ch_state, "input state file (one subsystem)")->required();
    cmd_ch->add_option("--analyze", ch_analyze,
                       "holevo|average-entropy|coherent|saturation|holevo-saturation");
    cmd_ch->add_option("--tol", ch_tol.entropy_tol, "entropy tolerance in bits");
    cmd_ch->add_option("--matrix-tol", ch_tol.matrix_tol, "matrix gate in trace distance");
    cmd_ch->add_option("--out", ch_out, "report path (stdout when absent)");
    cmd_ch->add_flag("--quiet", ch_quiet, "suppress the summary line");

    bool selftest_quiet = false;
    CLI::App* cmd_self = app.add_subcommand("selftest", "run the built-in battery");
    cmd_self->add_flag("--quiet", selftest_quiet, "print failures only");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_gen->parsed()) return run_gen(gen);
        if (cmd_check->parsed())
            return run_check(check_state, check_which, check_tol, {check_out, check_quiet});
        if (cmd_dec->parsed())
            return run_decompose(dec_state, dec_mode, dec_tol, {dec_out, dec_quiet});
        if (cmd_ch->parsed())
            return run_channel(ch_channel, ch_state, ch_analyze, ch_tol, {ch_out, ch_quiet});
        if (cmd_self->parsed()) return run_selftest(selftest_quiet);
    } catch (const ssakit::io::SchemaError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const ssakit::InvalidInput& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const ssakit::NotSaturated& e) {
        std::cerr << "not saturated: " << e.what() << "\n";
        return kExitNotSaturated;
    } catch (const ssakit::StructureVerificationFailed& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return kExitVerification;
    } catch (const ssakit::RefinementExhausted& e) {
        std::cerr << "refinement exhausted: " << e.what() << "\n";
        return kExitVerification;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitOk;
}
