// io.cpp — JSON (de)serialization for states, channels, and reports

#include "ssakit/io.hpp"

#include <fstream>
#include <sstream>

namespace ssakit::io {

namespace {

const Json& require_field(const Json& j, const char* name, const std::string& context) {
    if (!j.is_object() || !j.contains(name))
        throw SchemaError(context + ": missing field '" + name + "'");
    return j.at(name);
}

double require_finite(double x, const std::string& context) {
    if (!std::isfinite(x)) throw SchemaError(context + ": non-finite number");
    return x;
}

}  // namespace

Json matrix_to_json(const CMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

CMatrix matrix_from_json(const Json& j, const std::string& context) {
    if (!j.is_array() || j.empty()) throw SchemaError(context + ": expected a non-empty array");
    const std::size_t rows = j.size();
    if (!j[0].is_array()) throw SchemaError(context + "[0]: expected a row array");
    const std::size_t cols = j[0].size();
    CMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const Json& row = j[r];
        if (!row.is_array() || row.size() != cols)
            throw SchemaError(context + "[" + std::to_string(r) + "]: ragged row");
        for (std::size_t c = 0; c < cols; ++c) {
            const Json& z = row[c];
            const std::string where =
                context + "[" + std::to_string(r) + "][" + std::to_string(c) + "]";
            if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
                throw SchemaError(where + ": complex entries must be [re, im]");
            m(r, c) = Complex{require_finite(z[0].get<double>(), where),
                              require_finite(z[1].get<double>(), where)};
        }
    }
    return m;
}

namespace {

Json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const Json::parse_error& e) {
        throw SchemaError(path + ": invalid JSON: " + e.what());
    }
    return j;
}

void check_header(const Json& j, const char* kind, const std::string& path) {
    const Json& ver = require_field(j, "format_version", path);
    if (!ver.is_string() || ver.get<std::string>() != kFormatVersion)
        throw SchemaError(path + ": unsupported format_version");
    const Json& k = require_field(j, "kind", path);
    if (!k.is_string() || k.get<std::string>() != kind)
        throw SchemaError(path + ": expected kind '" + std::string(kind) + "'");
}

}  // namespace

LoadedState load_state(const std::string& path) {
    const Json j = parse_file(path);
    check_header(j, "state", path);

    const Json& jl = require_field(j, "labels", path);
    const Json& jd = require_field(j, "dims", path);
    if (!jl.is_array() || !jd.is_array() || jl.size() != jd.size())
        throw SchemaError(path + ": labels and dims must be arrays of equal length");
    std::vector<std::string> labels;
    std::vector<std::size_t> dims;
    for (std::size_t k = 0; k < jl.size(); ++k) {
        if (!jl[k].is_string()) throw SchemaError(path + ": labels[" + std::to_string(k) + "]");
        if (!jd[k].is_number_unsigned() || jd[k].get<std::size_t>() == 0)
            throw SchemaError(path + ": dims[" + std::to_string(k) + "] must be a positive count");
        labels.push_back(jl[k].get<std::string>());
        dims.push_back(jd[k].get<std::size_t>());
    }
    CMatrix m = matrix_from_json(require_field(j, "matrix", path), path + ": matrix");

    LoadedState out{MultipartiteState::validated(std::move(m), std::move(dims), std::move(labels)),
                    j.value("provenance", Json())};
    return out;
}

LoadedChannel load_channel(const std::string& path) {
    const Json j = parse_file(path);
    check_header(j, "channel", path);

    const Json& jk = require_field(j, "kraus", path);
    if (!jk.is_array() || jk.empty())
        throw SchemaError(path + ": kraus must be a non-empty array");
    std::vector<CMatrix> kraus;
    for (std::size_t k = 0; k < jk.size(); ++k)
        kraus.push_back(matrix_from_json(jk[k], path + ": kraus[" + std::to_string(k) + "]"));

    const Json& din = require_field(j, "dim_in", path);
    const Json& dout = require_field(j, "dim_out", path);
    if (!din.is_number_unsigned() || !dout.is_number_unsigned())
        throw SchemaError(path + ": dim_in/dim_out must be counts");
    if (kraus.front().rows() != dout.get<std::size_t>() ||
        kraus.front().cols() != din.get<std::size_t>())
        throw SchemaError(path + ": kraus shapes disagree with dim_in/dim_out");

    LoadedChannel out{KrausChannel(std::move(kraus)), j.value("provenance", Json())};
    return out;
}

Json state_to_json(const MultipartiteState& state, const Json& provenance) {
    Json j;
    j["format_version"] = kFormatVersion;
    j["kind"] = "state";
    j["labels"] = state.labels();
    j["dims"] = state.dims();
    j["matrix"] = matrix_to_json(state.matrix());
    if (!provenance.is_null()) j["provenance"] = provenance;
    return j;
}

Json channel_to_json(const KrausChannel& channel, const Json& provenance) {
    Json j;
    j["format_version"] = kFormatVersion;
    j["kind"] = "channel";
    j["dim_in"] = channel.dim_in();
    j["dim_out"] = channel.dim_out();
    Json kraus = Json::array();
    for (const CMatrix& k : channel.kraus()) kraus.push_back(matrix_to_json(k));
    j["kraus"] = std::move(kraus);
    if (!provenance.is_null()) j["provenance"] = provenance;
    return j;
}

void save_state(const std::string& path, const MultipartiteState& state, const Json& provenance) {
    write_text_file(path, dump_json(state_to_json(state, provenance)));
}

void save_channel(const std::string& path, const KrausChannel& channel, const Json& provenance) {
    write_text_file(path, dump_json(channel_to_json(channel, provenance)));
}

Json gap_to_json(const GapReport& r) {
    return Json{{"identity", to_string(r.kind)},
                {"lhs_bits", r.lhs_bits},
                {"rhs_bits", r.rhs_bits},
                {"gap_bits", r.gap_bits},
                {"saturated", r.saturated}};
}

Json factor_decomposition_to_json(const FactorDecomposition& d) {
    Json blocks = Json::array();
    for (const FactorBlock& b : d.blocks)
        blocks.push_back(Json{{"dim_left", b.dim_left},
                              {"dim_right", b.dim_right},
                              {"isometry", matrix_to_json(b.isometry)}});
    return Json{{"system", d.system_label}, {"blocks", std::move(blocks)}};
}

Json markov_to_json(const MarkovStructure& m) {
    Json j;
    j["decomposition"] = factor_decomposition_to_json(m.b_decomposition);
    j["weights"] = m.weights;
    Json lefts = Json::array(), rights = Json::array();
    for (const CMatrix& s : m.left_states) lefts.push_back(matrix_to_json(s));
    for (const CMatrix& s : m.right_states) rights.push_back(matrix_to_json(s));
    j["left_states"] = std::move(lefts);
    j["right_states"] = std::move(rights);
    j["reassembly_error"] = m.reassembly_error;
    return j;
}

Json theorem1_to_json(const TheoremOneStructure& t) {
    Json j;
    j["a_decomposition"] = factor_decomposition_to_json(t.a_decomposition);
    j["c_decomposition"] = factor_decomposition_to_json(t.c_decomposition);
    j["joint_weights"] = t.joint_weights;
    Json cells = Json::array();
    for (const TheoremOneCell& c : t.cells)
        cells.push_back(Json{{"a_index", c.a_index},
                             {"c_index", c.c_index},
                             {"weight", c.weight},
                             {"purity", c.purity},
                             {"pure_block", matrix_to_json(c.pure_block)},
                             {"residual_state", matrix_to_json(c.residual_state)}});
    j["cells"] = std::move(cells);
    j["reassembly_error"] = t.reassembly_error;
    j["refinement_rounds"] = t.refinement_rounds;
    return j;
}

Json araki_lieb_to_json(const ArakiLiebStructure& a) {
    return Json{{"dim_left", a.dim_left},
                {"dim_right", a.dim_right},
                {"isometry", matrix_to_json(a.isometry)},
                {"omega_left", matrix_to_json(a.omega_left)},
                {"psi_rc", matrix_to_json(a.psi_rc)},
                {"reassembly_error", a.reassembly_error}};
}

Json bi_ssa_to_json(const BiSsaReport& b) {
    Json j;
    j["gap_abc"] = gap_to_json(b.gap_abc);
    j["gap_bac"] = gap_to_json(b.gap_bac);
    j["b_structure"] = markov_to_json(b.b_structure);
    j["a_structure"] = markov_to_json(b.a_structure);
    j["sector_of_b_block"] = b.sector_of_b_block;
    j["sector_of_a_block"] = b.sector_of_a_block;
    Json sectors = Json::array();
    for (const CMatrix& s : b.sector_c_states) sectors.push_back(matrix_to_json(s));
    j["sector_c_states"] = std::move(sectors);
    j["sector_weights"] = b.sector_weights;
    Json cells = Json::array();
    for (const auto& c : b.cells)
        cells.push_back(Json{{"a_index", c.a_index},
                             {"b_index", c.b_index},
                             {"sector", c.sector},
                             {"weight", c.weight}});
    j["cells"] = std::move(cells);
    return j;
}

Json channel_saturation_to_json(const ChannelSaturationReport& c) {
    Json lambda = Json::array();
    for (const Complex& z : c.lambda) lambda.push_back(Json::array({z.real(), z.imag()}));
    return Json{{"gram", matrix_to_json(c.gram)},
                {"gram_first_singular", c.gram_first_singular},
                {"gram_second_singular", c.gram_second_singular},
                {"rank_one", c.rank_one},
                {"lambda", std::move(lambda)},
                {"m_operator", matrix_to_json(c.m_operator)},
                {"reconstruction_error", c.reconstruction_error},
                {"product_identity_error", c.product_identity_error}};
}

Json holevo_saturation_to_json(const HolevoSaturationReport& h) {
    Json j;
    j["exchange"] = gap_to_json(h.exchange);
    j["omega_structure"] = theorem1_to_json(h.omega_structure);
    Json blocks = Json::array();
    for (const auto& b : h.output_blocks)
        blocks.push_back(Json{{"a_index", b.a_index},
                              {"c_index", b.c_index},
                              {"weight", b.weight},
                              {"left_factor", matrix_to_json(b.left_factor)},
                              {"right_factor", matrix_to_json(b.right_factor)}});
    j["output_blocks"] = std::move(blocks);
    j["output_reassembly_error"] = h.output_reassembly_error;
    return j;
}

Json coherent_to_json(const CoherentSaturationReport& c) {
    Json j{{"coherent_info_bits", c.coherent_info_bits},
           {"input_entropy_bits", c.input_entropy_bits},
           {"saturation_residual", c.saturation_residual},
           {"saturated", c.saturated}};
    if (c.factorization_checked) {
        j["product_error"] = c.product_error;
        j["product_form"] = c.product_form;
    }
    return j;
}

Json make_report(const std::string& kind, Json payload, Json tolerances, Json provenance) {
    Json j;
    j["format_version"] = kFormatVersion;
    j["kind"] = kind;
    j["tolerances"] = std::move(tolerances);
    if (!provenance.is_null()) j["provenance"] = std::move(provenance);
    j["payload"] = std::move(payload);
    return j;
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SchemaError("cannot write file: " + path);
    out << text;
    if (!out) throw SchemaError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SchemaError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace ssakit::io
