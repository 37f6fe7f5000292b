#include "tbsim/units.hpp"

#include <cctype>
#include <cmath>
#include <map>
#include <sstream>

#include "tbsim/error.hpp"

namespace tbsim {

namespace {

const std::map<std::string, Unit>& symbols() {
  static const std::map<std::string, Unit> table = {
      {"m", {1.0, dims::kLength}},
      {"km", {1e3, dims::kLength}},
      {"cm", {1e-2, dims::kLength}},
      {"mm", {1e-3, dims::kLength}},
      {"um", {1e-6, dims::kLength}},
      {"nm", {1e-9, dims::kLength}},
      {"s", {1.0, dims::kTime}},
      {"ms", {1e-3, dims::kTime}},
      {"us", {1e-6, dims::kTime}},
      {"ns", {1e-9, dims::kTime}},
      {"ps", {1e-12, dims::kTime}},
      {"fs", {1e-15, dims::kTime}},
      {"J", {1.0, dims::kEnergy}},
      {"mJ", {1e-3, dims::kEnergy}},
      {"uJ", {1e-6, dims::kEnergy}},
      {"nJ", {1e-9, dims::kEnergy}},
      {"pJ", {1e-12, dims::kEnergy}},
      {"eV", {1.602176634e-19, dims::kEnergy}},
      {"W", {1.0, {0, -1, 1}}},
      {"c", {299792458.0, dims::kVelocity}},
      {"rad", {1.0, dims::kNone}},
      {"1", {1.0, dims::kNone}},
  };
  return table;
}

double parse_exponent(const std::string& text, const std::string& field) {
  const auto slash = text.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const double v = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return v;
    }
    std::size_t used_den = 0;
    const double num = std::stod(text.substr(0, slash), &used);
    const std::string den_text = text.substr(slash + 1);
    const double den = std::stod(den_text, &used_den);
    if (used != slash || used_den != den_text.size() || den == 0.0) throw std::invalid_argument(text);
    return num / den;
  } catch (const std::exception&) {
    throw ConfigError(field, "bad exponent '" + text + "' in unit");
  }
}

// One factor such as "ps", "m^-1" or "J^1/2".
Unit parse_factor(const std::string& token, const std::string& field) {
  const auto caret = token.find('^');
  const std::string sym = token.substr(0, caret);
  const double p = (caret == std::string::npos) ? 1.0 : parse_exponent(token.substr(caret + 1), field);
  const auto it = symbols().find(sym);
  if (it == symbols().end()) throw ConfigError(field, "unknown unit symbol '" + sym + "'");
  const Unit& u = it->second;
  return {std::pow(u.factor, p), {u.dim.length * p, u.dim.time * p, u.dim.energy * p}};
}

void multiply(Unit& acc, const Unit& f, double sign) {
  acc.factor *= std::pow(f.factor, sign);
  acc.dim.length += sign * f.dim.length;
  acc.dim.time += sign * f.dim.time;
  acc.dim.energy += sign * f.dim.energy;
}

}  // namespace

std::string Dimension::str() const {
  std::ostringstream s;
  s << "L^" << length << " T^" << time << " E^" << energy;
  return s.str();
}

Unit parse_unit(const std::string& expr, const std::string& field) {
  // Tokens are separated by spaces or '*'; a '/' between tokens divides by
  // everything that follows. A '/' followed by a digit inside an exponent is a fraction.
  Unit acc;
  double sign = 1.0;
  std::string token;
  bool any = false;
  auto flush = [&]() {
    if (token.empty()) return;
    multiply(acc, parse_factor(token, field), sign);
    token.clear();
    any = true;
  };
  for (std::size_t k = 0; k < expr.size(); ++k) {
    const char c = expr[k];
    if (c == ' ' || c == '*') {
      flush();
    } else if (c == '/' && !(token.find('^') != std::string::npos && k + 1 < expr.size() &&
                             std::isdigit(static_cast<unsigned char>(expr[k + 1])))) {
      flush();
      sign = -1.0;
    } else {
      token.push_back(c);
    }
  }
  flush();
  if (!any) throw ConfigError(field, "empty unit");
  return acc;
}

UnitSystem UnitSystem::from_pump(double sigma_si, double v_p_si, double hbar_omega_p_si) {
  if (!(sigma_si > 0.0) || !(v_p_si > 0.0) || !(hbar_omega_p_si > 0.0))
    throw ConfigError("pump", "reference scales sigma, v_p, hbar_omega_p must be positive");
  return {v_p_si / sigma_si, 1.0 / sigma_si, hbar_omega_p_si, true};
}

double UnitSystem::scale(const Dimension& d) const {
  return std::pow(length, d.length) * std::pow(time, d.time) * std::pow(energy, d.energy);
}

}  // namespace tbsim
