#include "lcm/chart_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lcm/errors.hpp"

namespace lcm {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
  throw ParseError(origin + ": " + what);
}

const json& require(const json& obj, const char* key, const std::string& origin) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(origin, std::string("missing key '") + key + "'");
  return *it;
}

Rat rat_field(const json& value, const std::string& where, const std::string& origin) {
  if (value.is_number_integer()) return Rat{value.get<std::int64_t>()};
  if (!value.is_string())
    fail(origin, "key '" + where + "': expected a rational \"p/q\" string");
  try {
    return Rat::parse(value.get<std::string>());
  } catch (const std::exception& e) {
    fail(origin, "key '" + where + "': " + e.what());
  }
}

DiagonalWeight weight_field(const json& value, const std::string& where,
                            const std::string& origin) {
  if (!value.is_object()) fail(origin, "key '" + where + "': expected an object");
  DiagonalWeight w;
  const json& coeffs = require(value, "coeffs", origin);
  if (!coeffs.is_array())
    fail(origin, "key '" + where + ".coeffs': expected an array");
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    w.coeffs.push_back(
        rat_field(coeffs[i], where + ".coeffs[" + std::to_string(i) + "]", origin));
  const json& shift = require(value, "shift", origin);
  if (!shift.is_number())
    fail(origin, "key '" + where + ".shift': expected a number");
  w.shift = shift.get<double>();
  return w;
}

std::vector<double> real_array(const json& value, const std::string& where,
                               const std::string& origin) {
  if (!value.is_array()) fail(origin, "key '" + where + "': expected an array");
  std::vector<double> out;
  for (std::size_t i = 0; i < value.size(); ++i) {
    if (!value[i].is_number())
      fail(origin, "key '" + where + "[" + std::to_string(i) + "]': expected a number");
    out.push_back(value[i].get<double>());
  }
  return out;
}

json weight_to_json(const DiagonalWeight& w) {
  json out;
  json coeffs = json::array();
  for (const Rat& c : w.coeffs) coeffs.push_back(c.str());
  out["coeffs"] = std::move(coeffs);
  out["shift"] = w.shift;
  return out;
}

}  // namespace

SncChart chart_from_json(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(origin, std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) fail(origin, "top level must be an object");

  const json& version = require(doc, "version", origin);
  if (!version.is_number_integer() || version.get<int>() != 1)
    fail(origin, "unsupported chart file version (expected 1)");

  SncChart chart;
  const json& n = require(doc, "n", origin);
  if (!n.is_number_integer()) fail(origin, "key 'n': expected an integer");
  chart.n = n.get<int>();
  chart.radii = real_array(require(doc, "radii", origin), "radii", origin);
  chart.phi_L = weight_field(require(doc, "phiL", origin), "phiL", origin);
  chart.psi = weight_field(require(doc, "psi", origin), "psi", origin);
  chart.m0 = rat_field(require(doc, "m0", origin), "m0", origin);
  chart.m1 = rat_field(require(doc, "m1", origin), "m1", origin);

  if (auto it = doc.find("sections"); it != doc.end()) {
    if (!it->is_array()) fail(origin, "key 'sections': expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const json& sec = (*it)[i];
      const std::string where = "sections[" + std::to_string(i) + "]";
      if (!sec.is_object()) fail(origin, "key '" + where + "': expected an object");
      MonomialSection f;
      const json& exps = require(sec, "exponents", origin);
      if (!exps.is_array())
        fail(origin, "key '" + where + ".exponents': expected an array");
      for (const json& e : exps) {
        if (!e.is_number_integer())
          fail(origin, "key '" + where + ".exponents': expected integers");
        f.exponents.push_back(e.get<std::int64_t>());
      }
      const json& amp = require(sec, "amplitude", origin);
      if (!amp.is_number())
        fail(origin, "key '" + where + ".amplitude': expected a number");
      f.amplitude = amp.get<double>();
      f.support_radius = real_array(require(sec, "support_radius", origin),
                                    where + ".support_radius", origin);
      chart.sections.push_back(std::move(f));
    }
  }
  return chart;
}

std::string chart_to_json(const SncChart& chart) {
  json doc;
  doc["version"] = 1;
  doc["n"] = chart.n;
  doc["radii"] = chart.radii;
  doc["phiL"] = weight_to_json(chart.phi_L);
  doc["psi"] = weight_to_json(chart.psi);
  doc["m0"] = chart.m0.str();
  doc["m1"] = chart.m1.str();
  json sections = json::array();
  for (const MonomialSection& f : chart.sections) {
    json sec;
    sec["exponents"] = f.exponents;
    sec["amplitude"] = f.amplitude;
    sec["support_radius"] = f.support_radius;
    sections.push_back(std::move(sec));
  }
  doc["sections"] = std::move(sections);
  return doc.dump(2) + "\n";
}

SncChart read_chart(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open chart file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return chart_from_json(buf.str(), path);
}

void write_chart(const std::string& path, const SncChart& chart) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError(path + ": cannot open for writing");
  out << chart_to_json(chart);
}

}  // namespace lcm
