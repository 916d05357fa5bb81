#include "selberg/series_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "selberg/errors.hpp"
#include "selberg/special_functions.hpp"

namespace selberg {

namespace {

using nlohmann::json;

Complex complex_of(const json& j, const char* field) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ParseError(std::string("field '") + field +
                   "' must be a number or a [re, im] pair");
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

double number_of(const json& obj, const char* field) {
  if (!obj.contains(field)) throw ParseError(std::string("missing field '") + field + "'");
  const json& j = obj.at(field);
  if (!j.is_number()) throw ParseError(std::string("field '") + field + "' must be a number");
  return j.get<double>();
}

std::vector<GammaFactor> factors_of(const json& obj, const char* field) {
  std::vector<GammaFactor> out;
  if (!obj.contains(field)) return out;
  const json& arr = obj.at(field);
  if (!arr.is_array()) throw ParseError(std::string("field '") + field + "' must be a list");
  for (const json& f : arr) {
    if (!f.is_object()) throw ParseError("gamma factor must be an object");
    GammaFactor g;
    g.lambda = number_of(f, "lambda");
    g.mu = f.contains("mu") ? complex_of(f.at("mu"), "mu") : Complex{};
    out.push_back(g);
  }
  return out;
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known,
                    const char* where) {
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw ParseError("unknown key '" + key + "' in " + where);
  }
}

}  // namespace

std::vector<Complex> read_coefficient_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open coefficient file '" + path.string() + "'");
  std::vector<Complex> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    double re = 0.0, im = 0.0;
    if (!(ls >> re)) throw ParseError(path.string() + ":" + std::to_string(lineno) + ": expected a number");
    if (!(ls >> im)) im = 0.0;
    std::string rest;
    if (ls >> rest) throw ParseError(path.string() + ":" + std::to_string(lineno) + ": trailing input");
    const Complex z(re, im);
    require_finite(z, "coefficient");
    out.push_back(z);
  }
  return out;
}

namespace {

SeriesSpec parse_document(const json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw ParseError("spec must be a JSON object");
  reject_unknown(j, {"name", "sigma_a", "Q", "omega", "gamma_num", "gamma_den",
                     "poles", "coefficients"},
                 "spec");
  SeriesSpec s;
  s.name = j.value("name", std::string("unnamed"));
  s.sigma_a = number_of(j, "sigma_a");
  s.Q = number_of(j, "Q");
  s.omega = j.contains("omega") ? complex_of(j.at("omega"), "omega") : Complex(1.0, 0.0);
  s.gamma.numerator = factors_of(j, "gamma_num");
  s.gamma.denominator = factors_of(j, "gamma_den");
  if (j.contains("poles")) {
    if (!j.at("poles").is_array()) throw ParseError("field 'poles' must be a list");
    for (const json& p : j.at("poles")) {
      if (!p.is_object()) throw ParseError("pole must be an object");
      reject_unknown(p, {"location", "order", "principal"}, "pole");
      PoleSpec pole;
      if (!p.contains("location")) throw ParseError("pole needs 'location'");
      pole.location = complex_of(p.at("location"), "location");
      pole.order = p.value("order", 1);
      if (!p.contains("principal") || !p.at("principal").is_array())
        throw ParseError("pole needs a 'principal' list");
      for (const json& c : p.at("principal")) pole.principal.push_back(complex_of(c, "principal"));
      s.poles.push_back(pole);
    }
  }
  if (!j.contains("coefficients") || !j.at("coefficients").is_object())
    throw ParseError("spec needs a 'coefficients' object");
  const json& c = j.at("coefficients");
  auto& src = s.coefficients;
  if (c.contains("builtin")) {
    reject_unknown(c, {"builtin"}, "coefficients");
    src.kind = CoefficientSource::Kind::Builtin;
    src.builtin = c.at("builtin").get<std::string>();
  } else if (c.contains("file")) {
    reject_unknown(c, {"file", "finite"}, "coefficients");
    src.kind = CoefficientSource::Kind::File;
    src.file = c.at("file").get<std::string>();
    src.finite = c.value("finite", false);
    const auto path = src.file.is_absolute() ? src.file : base_dir / src.file;
    src.file_values = read_coefficient_file(path);
  } else if (c.contains("character")) {
    reject_unknown(c, {"character"}, "coefficients");
    const json& ch = c.at("character");
    const int q = ch.at("modulus").get<int>();
    src.kind = CoefficientSource::Kind::Character;
    for (const json& v : ch.at("values")) src.character.push_back(complex_of(v, "values"));
    if (static_cast<int>(src.character.size()) != q)
      throw ParseError("character table length must equal its modulus");
  } else {
    throw ParseError("coefficients must name a builtin, file or character");
  }
  validate(s);
  return s;
}

}  // namespace

SeriesSpec parse_spec(const std::string& json_text,
                      const std::filesystem::path& base_dir) {
  try {
    return parse_document(json::parse(json_text), base_dir);
  } catch (const json::exception& e) {
    throw ParseError(std::string("spec JSON: ") + e.what());
  }
}

SeriesSpec load_spec(const std::string& path_or_builtin) {
  constexpr std::string_view prefix = "builtin:";
  if (path_or_builtin.starts_with(prefix))
    return builtin_spec(path_or_builtin.substr(prefix.size()));
  std::ifstream in(path_or_builtin);
  if (!in) throw ParseError("cannot open spec file '" + path_or_builtin + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str(), std::filesystem::path(path_or_builtin).parent_path());
}

std::string spec_to_json(const SeriesSpec& spec) {
  json j;
  j["name"] = spec.name;
  j["sigma_a"] = spec.sigma_a;
  j["Q"] = spec.Q;
  j["omega"] = complex_to_json(spec.omega);
  auto factors = [](const std::vector<GammaFactor>& fs) {
    json arr = json::array();
    for (const auto& f : fs) arr.push_back({{"lambda", f.lambda}, {"mu", complex_to_json(f.mu)}});
    return arr;
  };
  j["gamma_num"] = factors(spec.gamma.numerator);
  j["gamma_den"] = factors(spec.gamma.denominator);
  j["poles"] = json::array();
  for (const auto& p : spec.poles) {
    json principal = json::array();
    for (const auto& c : p.principal) principal.push_back(complex_to_json(c));
    j["poles"].push_back({{"location", complex_to_json(p.location)},
                          {"order", p.order},
                          {"principal", principal}});
  }
  const auto& src = spec.coefficients;
  switch (src.kind) {
    case CoefficientSource::Kind::Builtin:
      j["coefficients"] = {{"builtin", src.builtin}};
      break;
    case CoefficientSource::Kind::File:
      j["coefficients"] = {{"file", src.file.string()}, {"finite", src.finite}};
      break;
    case CoefficientSource::Kind::Character: {
      json values = json::array();
      for (const auto& v : src.character) values.push_back(complex_to_json(v));
      j["coefficients"] = {{"character", {{"modulus", src.character.size()}, {"values", values}}}};
      break;
    }
  }
  return j.dump(2) + "\n";
}

}  // namespace selberg
