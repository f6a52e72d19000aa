#include <cmath>
#include <complex>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "spdc/pumps.hpp"

namespace spdc {

namespace {

// Strip comments and surrounding blanks; commas count as separators.
std::string clean_line(std::string s) {
  if (auto h = s.find('#'); h != std::string::npos) s.erase(h);
  for (auto& c : s)
    if (c == ',') c = ' ';
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<double> parse_numbers(const std::string& line, size_t expect,
                                  const std::string& what) {
  std::istringstream iss(line);
  std::vector<double> out;
  double v;
  while (iss >> v) out.push_back(v);
  if (!iss.eof() || out.size() != expect)
    throw std::invalid_argument("pump file: expected " + std::to_string(expect) +
                                " numbers in " + what + " row, got '" + line + "'");
  return out;
}

}  // namespace

PumpSpec parse_pump_text(std::istream& in, double w_p) {
  std::string line;
  std::string type;
  std::vector<std::string> rows;
  while (std::getline(in, line)) {
    line = clean_line(line);
    if (line.empty()) continue;
    if (line.rfind("type:", 0) == 0) {
      if (!type.empty())
        throw std::invalid_argument("pump file: duplicate type: header");
      type = line.substr(5);
      size_t b = type.find_first_not_of(" \t");
      type = (b == std::string::npos) ? "" : type.substr(b);
      continue;
    }
    if (type.empty())
      throw std::invalid_argument("pump file: rows before type: header");
    rows.push_back(line);
  }
  if (type == "single") {
    if (rows.size() != 1)
      throw std::invalid_argument("pump file: type single needs exactly one mode row");
    auto v = parse_numbers(rows[0], 2, "mode");
    return PumpSpec::single({static_cast<int>(std::lround(v[0])),
                             static_cast<int>(std::lround(v[1]))});
  }
  if (type == "superposition") {
    std::vector<PumpComponent> raw;
    for (const auto& r : rows) {
      auto v = parse_numbers(r, 4, "mode");
      raw.push_back({{v[2], v[3]},
                     {static_cast<int>(std::lround(v[0])),
                      static_cast<int>(std::lround(v[1]))}});
    }
    if (raw.empty())
      throw std::invalid_argument("pump file: superposition without mode rows");
    return normalize_pump(std::move(raw));
  }
  if (type == "singularities") {
    std::vector<Singularity> sings;
    for (const auto& r : rows) {
      auto v = parse_numbers(r, 2, "singularity");
      sings.push_back({v[0], v[1] * std::numbers::pi / 180.0});
    }
    return singularities_to_lg(sings, w_p);
  }
  throw std::invalid_argument("pump file: unknown type '" + type + "'");
}

PumpSpec load_pump_file(const std::string& path, double w_p) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("pump file: cannot open '" + path + "'");
  return parse_pump_text(in, w_p);
}

std::string format_pump_text(const PumpSpec& pump) {
  std::ostringstream out;
  out.precision(17);
  switch (pump.kind) {
    case PumpSpec::Kind::single:
      out << "type: single\n"
          << pump.components[0].mode.ell << " " << pump.components[0].mode.p
          << "\n";
      break;
    case PumpSpec::Kind::singularities:
      out << "type: singularities\n";
      for (const auto& s : pump.singularities)
        out << s.rho << " " << s.phi * 180.0 / std::numbers::pi << "\n";
      break;
    case PumpSpec::Kind::superposition:
      out << "type: superposition\n";
      for (const auto& c : pump.components)
        out << c.mode.ell << " " << c.mode.p << " " << c.amplitude.real() << " "
            << c.amplitude.imag() << "\n";
      break;
  }
  return out.str();
}

}  // namespace spdc
