// io.hpp — File formats (states, channels, reports) and their serializers.
// UTF-8 JSON text; complex numbers are strictly two-element [re, im] arrays.

#pragma once

#include <string>

#include <json.hpp>

#include "ssakit/channels.hpp"
#include "ssakit/cmatrix.hpp"
#include "ssakit/errors.hpp"
#include "ssakit/states.hpp"
#include "ssakit/structure.hpp"

namespace ssakit::io {

using Json = nlohmann::json;

inline constexpr const char* kFormatVersion = "1";

// Malformed file shape (missing/ill-typed fields); distinct from invariant
// violations, which surface as InvalidInput from validation.
class SchemaError : public Error {
public:
    using Error::Error;
};

Json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j, const std::string& context);

struct LoadedState {
    MultipartiteState state;
    Json provenance;  // null when absent
};

struct LoadedChannel {
    KrausChannel channel;
    Json provenance;
};

LoadedState load_state(const std::string& path);
LoadedChannel load_channel(const std::string& path);

Json state_to_json(const MultipartiteState& state, const Json& provenance = nullptr);
Json channel_to_json(const KrausChannel& channel, const Json& provenance = nullptr);

void save_state(const std::string& path, const MultipartiteState& state,
                const Json& provenance = nullptr);
void save_channel(const std::string& path, const KrausChannel& channel,
                  const Json& provenance = nullptr);

// Report payload builders.
Json gap_to_json(const GapReport& r);
Json factor_decomposition_to_json(const FactorDecomposition& d);
Json markov_to_json(const MarkovStructure& m);
Json theorem1_to_json(const TheoremOneStructure& t);
Json araki_lieb_to_json(const ArakiLiebStructure& a);
Json bi_ssa_to_json(const BiSsaReport& b);
Json channel_saturation_to_json(const ChannelSaturationReport& c);
Json holevo_saturation_to_json(const HolevoSaturationReport& h);
Json coherent_to_json(const CoherentSaturationReport& c);

// Assembles a report file object: format_version, kind, tolerances used,
// seed provenance (null allowed), and the payload.
Json make_report(const std::string& kind, Json payload, Json tolerances,
                 Json provenance = nullptr);

// Canonical text form: sorted keys, two-space indent, trailing newline;
// identical values serialize to identical bytes.
std::string dump_json(const Json& j);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace ssakit::io
