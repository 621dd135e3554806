#include "pmkit/io.hpp"

#include <cmath>
#include <fstream>
#include <regex>
#include <sstream>

#include "pmkit/errors.hpp"

namespace pmkit::io {

namespace {

std::string_view verdict_str(Verdict v) { return to_string(v); }

double number(const json& j, const char* what) {
  if (!j.is_number()) throw Error(ErrorCode::ParseError, std::string(what) + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw Error(ErrorCode::InvalidMatrix, std::string(what) + " is not finite");
  return v;
}

Vector vector_from_json(const json& j, const char* what) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, std::string(what) + " must be an array");
  Vector v;
  for (const json& e : j) v.push_back(number(e, what));
  return v;
}

json witness_json(const Witness& w) {
  return std::visit(
      [](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::monostate>) return nullptr;
        else return to_json(x);
      },
      w);
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

json to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.size(); ++i)
    rows.push_back(Vector(m.row(i).begin(), m.row(i).end()));
  return {{"n", m.size()}, {"rows", rows}};
}

json to_json(const Vector& v) { return json(v); }

json to_json(Complex c) { return {{"re", c.real()}, {"im", c.imag()}}; }

json to_json(const IndexSet& s) { return json(s.one_based()); }

json to_json(const Tolerances& t) {
  return {{"singular", t.singular},
          {"conjugate", t.conjugate},
          {"minor", t.minor},
          {"zero", t.zero},
          {"complementarity", t.complementarity}};
}

json to_json(const Spectrum& s) {
  json v = json::array();
  for (Complex c : s.values) v.push_back(to_json(c));
  return {{"values", v}, {"partner", s.partner}};
}

json to_json(const CandidateSpectrum& s) {
  json v = json::array();
  for (Complex c : s.values) v.push_back(to_json(c));
  return {{"values", v}};
}

json to_json(const ClassificationReport& r) {
  json j;
  for (const auto& [k, v] : r.verdicts) j["verdicts"][k] = verdict_str(v);
  j["witnesses"] = json::object();
  for (const auto& [k, w] : r.witnesses) j["witnesses"][k] = witness_json(w);
  j["method"] = r.method;
  j["tolerances"] = to_json(r.tolerances);
  return j;
}

json to_json(const FactorizationResult& f) {
  return {{"u", to_json(f.u)},
          {"factor_left", to_json(f.factor_left)},
          {"factor_right", to_json(f.factor_right)},
          {"residual", f.residual},
          {"path_residual", f.path_residual},
          {"left_is_P", verdict_str(f.left_is_P)},
          {"right_is_P", verdict_str(f.right_is_P)}};
}

json to_json(const ScaledFactorReport& r) {
  return {{"left", to_json(r.left)},
          {"right", to_json(r.right)},
          {"residual", r.residual},
          {"left_positive_stable", verdict_str(r.left_stable)},
          {"left_is_P", verdict_str(r.left_P)},
          {"right_positive_stable", verdict_str(r.right_stable)},
          {"right_is_P", verdict_str(r.right_P)},
          {"a_t_positive_stable", verdict_str(r.a_t_stable)}};
}

json to_json(const StabilityProbeLog& log) {
  json entries = json::array();
  for (const StabilityProbeEntry& e : log.counterexamples)
    entries.push_back({{"trial", e.trial},
                       {"source", e.source},
                       {"a", to_json(e.a)},
                       {"d", e.d},
                       {"eigenvalue", to_json(e.eigenvalue)},
                       {"eigen_residual", e.residual},
                       {"routh_hurwitz_unstable", e.routh_unstable},
                       {"revalidated", e.revalidated}});
  return {{"trials", log.trials},
          {"borderline", log.borderline},
          {"counterexamples", entries.size()},
          {"all_revalidated", log.all_revalidated()},
          {"log", entries}};
}

json to_json(const WedgeReport& w) {
  json j{{"verdict", verdict_str(w.verdict)},
         {"max_arg", w.max_arg},
         {"bound", w.bound},
         {"equality_attained", w.equality_attained}};
  if (w.equality_sigma_condition) j["equality_sigma_condition"] = *w.equality_sigma_condition;
  return j;
}

json to_json(const WedgeTally& w) {
  return {{"matrices", w.matrices},
          {"eigenvalues", w.eigenvalues},
          {"violations", w.violations},
          {"min_margin", w.matrices ? json(w.min_margin) : json(nullptr)}};
}

json to_json(const LCPSolution& s) {
  return {{"z", s.z}, {"w", s.w}, {"basis", to_json(s.basis)}};
}

json to_json(const Enumeration& e) {
  json sols = json::array();
  for (const LCPSolution& s : e.solutions) sols.push_back(to_json(s));
  return {{"count", e.solutions.size()}, {"skipped_bases", e.skipped}, {"solutions", sols}};
}

json to_json(const CensusReport& c) {
  json j{{"trials", c.trials},
         {"counts", {{"0", c.zero}, {"1", c.one}, {">=2", c.multiple}}},
         {"skipped_bases", c.skipped_bases},
         {"lemke", {{"checked", c.lemke_checked}, {"mismatch", c.lemke_mismatch}, {"ray", c.lemke_ray}}},
         {"verdict", to_string(c.verdict)}};
  j["violating_q"] = c.violating_q ? json(*c.violating_q) : json(nullptr);
  return j;
}

json to_json(const OperatorSpec& s) {
  json params = json::object();
  std::visit(
      [&](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, rules::InverseSquareDiagonal>) {
          params["c"] = r.c;
          if (!r.overrides.empty()) {
            json o = json::object();
            for (const auto& [k, v] : r.overrides) o[std::to_string(k)] = v;
            params["overrides"] = o;
          }
        } else if constexpr (std::is_same_v<T, rules::Tridiag>) {
          params["a"] = r.a;
          params["b"] = r.b;
        } else if constexpr (std::is_same_v<T, rules::Hilbert>) {
          params["c"] = r.c;
        } else if constexpr (std::is_same_v<T, rules::MatrixLiteral>) {
          params["matrix"] = to_json(r.m);
        }
      },
      s.rule);
  return {{"kind", to_string(s.kind)},
          {"rule", {{"name", rule_name(s.rule)}, {"params", params}}},
          {"decay", s.decay}};
}

json to_json(const SqrtResult& r) {
  return {{"order", r.root.order}, {"root", to_json(r.root.matrix)}, {"residual", r.residual}};
}

json to_json(const MinMaxReport& r) {
  return {{"rho", r.rho},         {"inf_sup", r.inf_sup}, {"sup_inf", r.sup_inf},
          {"perron", r.perron},   {"samples", r.samples}, {"iterations", r.iterations}};
}

json to_json(const InterpReport& r) {
  json j{{"case1", r.case1},   {"case2", r.case2},         {"trials", r.trials},
         {"checks", r.checks}, {"violations", r.violations}};
  j["violating_d"] = r.violating_d ? json(*r.violating_d) : json(nullptr);
  return j;
}

json to_json(const CSuffReport& r) {
  json j{{"systems", r.systems},
         {"singular", r.singular},
         {"refuted", r.refutation.has_value()},
         {"classifier", verdict_str(r.classifier.verdict)},
         {"agrees", r.agrees}};
  if (r.refutation)
    j["witness"] = {{"alpha", to_json(r.refutation->alpha)},
                    {"d", r.refutation->d},
                    {"kernel_vector", r.refutation->kernel}};
  if (r.classifier.witness) j["classifier_witness"] = *r.classifier.witness;
  return j;
}

json to_json(const RevQuery& r) {
  return {{"x", r.x}, {"products", r.products}, {"in_rev", r.in_rev}};
}

json to_json(const EigvecRevReport& r) {
  return {{"skipped", r.skipped},
          {"column_sufficient", verdict_str(r.column_sufficient)},
          {"eigenpairs", r.eigenpairs},
          {"vectors_checked", r.vectors_checked},
          {"violations", r.violations}};
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rows"))
    throw Error(ErrorCode::ParseError, "matrix object needs a \"rows\" array");
  const json& rows = j["rows"];
  if (!rows.is_array()) throw Error(ErrorCode::ParseError, "\"rows\" must be an array");
  const std::size_t n = rows.size();
  if (j.contains("n")) {
    if (!j["n"].is_number_integer() || j["n"].get<long long>() != static_cast<long long>(n))
      throw Error(ErrorCode::InvalidMatrix, "\"n\" does not match the number of rows");
  }
  if (n == 0) throw Error(ErrorCode::InvalidMatrix, "matrix must have n >= 1");
  if (n > kMaxDimension) throw Error(ErrorCode::DimensionTooLarge, "n must be <= 64");
  std::vector<double> data;
  data.reserve(n * n);
  for (const json& r : rows) {
    const Vector v = vector_from_json(r, "matrix entry");
    if (v.size() != n) throw Error(ErrorCode::InvalidMatrix, "matrix is not square");
    data.insert(data.end(), v.begin(), v.end());
  }
  return Matrix(n, std::move(data));
}

Matrix matrix_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<Vector> rows;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    Vector row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      cell = trim(cell);
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(cell, &used);
      } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "bad CSV number '" + cell + "'");
      }
      if (used != cell.size()) throw Error(ErrorCode::ParseError, "bad CSV number '" + cell + "'");
      if (!std::isfinite(v)) throw Error(ErrorCode::InvalidMatrix, "non-finite CSV entry");
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  const std::size_t n = rows.size();
  if (n == 0) throw Error(ErrorCode::InvalidMatrix, "empty CSV matrix");
  if (n > kMaxDimension) throw Error(ErrorCode::DimensionTooLarge, "n must be <= 64");
  std::vector<double> data;
  for (const Vector& r : rows) {
    if (r.size() != n) throw Error(ErrorCode::InvalidMatrix, "CSV matrix is not square");
    data.insert(data.end(), r.begin(), r.end());
  }
  return Matrix(n, std::move(data));
}

std::string matrix_to_csv(const Matrix& m) {
  std::ostringstream out;
  out.precision(17);
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) out << (j ? "," : "") << m(i, j);
    out << '\n';
  }
  return out.str();
}

CandidateSpectrum spectrum_from_json(const json& j) {
  if (!j.is_object() || !j.contains("values") || !j["values"].is_array())
    throw Error(ErrorCode::ParseError, "spectrum object needs a \"values\" array");
  CandidateSpectrum s;
  for (const json& v : j["values"]) {
    if (v.is_number()) {
      s.values.emplace_back(number(v, "value"), 0.0);
      continue;
    }
    if (!v.is_object() || !v.contains("re"))
      throw Error(ErrorCode::ParseError, "spectrum values are {\"re\": .., \"im\": ..}");
    s.values.emplace_back(number(v["re"], "re"), v.contains("im") ? number(v["im"], "im") : 0.0);
  }
  return s;
}

LCPInstance lcp_from_json(const json& j) {
  if (!j.is_object() || !j.contains("m") || !j.contains("q"))
    throw Error(ErrorCode::ParseError, "LCP instance needs \"m\" and \"q\"");
  LCPInstance inst{matrix_from_json(j["m"]), vector_from_json(j["q"], "q")};
  validate_instance(inst);
  return inst;
}

OperatorSpec spec_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.contains("rule"))
    throw Error(ErrorCode::ParseError, "operator spec needs \"kind\" and \"rule\"");
  if (!j["kind"].is_string()) throw Error(ErrorCode::ParseError, "\"kind\" must be a string");
  const auto kind = parse_operator_kind(j["kind"].get<std::string>());
  if (!kind) throw Error(ErrorCode::ParseError, "unknown operator kind");
  const json& rule = j["rule"];
  if (!rule.is_object() || !rule.contains("name") || !rule["name"].is_string())
    throw Error(ErrorCode::ParseError, "\"rule\" needs a string \"name\"");
  const std::string name = rule["name"].get<std::string>();
  const json params = rule.value("params", json::object());
  auto param = [&](const char* key, double fallback) {
    return params.contains(key) ? number(params[key], key) : fallback;
  };
  OperatorSpec s;
  s.kind = *kind;
  s.decay = j.value("decay", false);
  if (name == "identity") {
    s.rule = rules::Identity{};
  } else if (name == "inverse-square-diagonal") {
    rules::InverseSquareDiagonal r{param("c", 1.0), {}};
    if (params.contains("overrides")) {
      for (const auto& [k, v] : params["overrides"].items()) {
        std::size_t idx = 0;
        try {
          idx = std::stoul(k);
        } catch (const std::exception&) {
          throw Error(ErrorCode::ParseError, "override keys are 1-based indices");
        }
        if (idx == 0) throw Error(ErrorCode::InvalidIndex, "override keys are 1-based indices");
        r.overrides[idx] = number(v, "override");
      }
    }
    s.rule = r;
  } else if (name == "tridiag") {
    s.rule = rules::Tridiag{param("a", 2.0), param("b", -1.0)};
  } else if (name == "hilbert") {
    s.rule = rules::Hilbert{param("c", 1.0)};
  } else if (name == "matrix-literal") {
    if (!params.contains("matrix"))
      throw Error(ErrorCode::ParseError, "matrix-literal needs params.matrix");
    s.rule = rules::MatrixLiteral{matrix_from_json(params["matrix"])};
  } else {
    throw Error(ErrorCode::RuleUndefined, "unknown rule '" + name + "'");
  }
  return s;
}

CandidateSpectrum parse_values(const std::string& text) {
  static const std::regex complex_re(
      R"(^([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?(?:([+-])((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?i)?$)");
  static const std::regex imag_re(R"(^([+-]?)((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?i$)");
  CandidateSpectrum s;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    std::string t;
    for (char c : tok)
      if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    std::smatch m;
    if (std::regex_match(t, m, imag_re)) {
      const double im = m[2].matched ? std::stod(m[2].str()) : 1.0;
      s.values.emplace_back(0.0, m[1].str() == "-" ? -im : im);
      continue;
    }
    if (t.empty() || !std::regex_match(t, m, complex_re) || (!m[1].matched && !m[2].matched))
      throw Error(ErrorCode::ParseError, "cannot parse value '" + tok + "'");
    const double re = m[1].matched ? std::stod(m[1].str()) : 0.0;
    double im = 0.0;
    if (m[2].matched) {
      im = m[3].matched ? std::stod(m[3].str()) : 1.0;
      if (m[2].str() == "-") im = -im;
    }
    s.values.emplace_back(re, im);
  }
  if (s.values.empty()) throw Error(ErrorCode::ParseError, "empty value list");
  return s;
}

std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const std::filesystem::path& p) {
  try {
    return json::parse(read_text(p));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, p.string() + ": " + e.what());
  }
}

Matrix read_matrix(const std::filesystem::path& p) {
  const std::string text = read_text(p);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (p.extension() == ".csv" || (first != std::string::npos && text[first] != '{'))
    return matrix_from_csv(text);
  try {
    return matrix_from_json(json::parse(text));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, p.string() + ": " + e.what());
  }
}

void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + p.string());
  out << text;
}

}  // namespace pmkit::io
