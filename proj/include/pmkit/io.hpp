#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "pmkit/cayley.hpp"
#include "pmkit/classify.hpp"
#include "pmkit/lcp.hpp"
#include "pmkit/operator_sim.hpp"
#include "pmkit/spectral_sets.hpp"

namespace pmkit::io {

using nlohmann::json;

json to_json(const Matrix& m);
json to_json(const Vector& v);
json to_json(Complex c);
json to_json(const IndexSet& s);  // 1-based members
json to_json(const Tolerances& t);
json to_json(const Spectrum& s);
json to_json(const CandidateSpectrum& s);
json to_json(const ClassificationReport& r);
json to_json(const FactorizationResult& f);
json to_json(const ScaledFactorReport& r);
json to_json(const StabilityProbeLog& log);
json to_json(const WedgeReport& w);
json to_json(const WedgeTally& w);
json to_json(const LCPSolution& s);
json to_json(const Enumeration& e);
json to_json(const CensusReport& c);
json to_json(const OperatorSpec& s);
json to_json(const SqrtResult& r);
json to_json(const MinMaxReport& r);
json to_json(const InterpReport& r);
json to_json(const CSuffReport& r);
json to_json(const RevQuery& r);
json to_json(const EigvecRevReport& r);

/// {"n": int, "rows": [[...], ...]}; ParseError or InvalidMatrix on bad input.
Matrix matrix_from_json(const json& j);
/// n lines of n comma-separated numbers.
Matrix matrix_from_csv(const std::string& text);
std::string matrix_to_csv(const Matrix& m);
CandidateSpectrum spectrum_from_json(const json& j);
LCPInstance lcp_from_json(const json& j);
OperatorSpec spec_from_json(const json& j);

/// Parses "1,1" or "-0.5+2i, -0.5-2i" style value lists.
CandidateSpectrum parse_values(const std::string& text);

std::string read_text(const std::filesystem::path& p);
json read_json(const std::filesystem::path& p);
/// JSON or CSV, chosen by extension (.csv) or by the first character.
Matrix read_matrix(const std::filesystem::path& p);
void write_text(const std::filesystem::path& p, const std::string& text);

}  // namespace pmkit::io
