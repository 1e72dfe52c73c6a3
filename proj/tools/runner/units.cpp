#include "units.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace qdc::runner {

namespace {

constexpr std::array<std::pair<std::string_view, FrequencyUnit>, 5> kUnits{{
    {"THz", FrequencyUnit::THz},
    {"GHz", FrequencyUnit::GHz},
    {"MHz", FrequencyUnit::MHz},
    {"kHz", FrequencyUnit::kHz},
    {"Hz", FrequencyUnit::Hz},
}};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

double unit_scale(FrequencyUnit unit) {
  switch (unit) {
    case FrequencyUnit::Hz: return 1.0;
    case FrequencyUnit::kHz: return 1e3;
    case FrequencyUnit::MHz: return 1e6;
    case FrequencyUnit::GHz: return 1e9;
    case FrequencyUnit::THz: return 1e12;
  }
  return 1.0;
}

std::string_view unit_suffix(FrequencyUnit unit) {
  for (const auto& [suffix, u] : kUnits)
    if (u == unit) return suffix;
  return "Hz";
}

double Frequency::hertz() const { return value * unit_scale(unit); }

double Frequency::angular() const { return 2.0 * std::numbers::pi * hertz(); }

Frequency parse_frequency(std::string_view text) {
  const std::string_view s = trim(text);
  for (const auto& [suffix, unit] : kUnits) {
    if (s.size() <= suffix.size() || s.substr(s.size() - suffix.size()) != suffix)
      continue;
    const std::string_view number = trim(s.substr(0, s.size() - suffix.size()));
    double value = 0.0;
    const auto [end, ec] =
        std::from_chars(number.data(), number.data() + number.size(), value);
    if (ec != std::errc() || end != number.data() + number.size() || number.empty() ||
        !std::isfinite(value))
      break;
    return {value, unit};
  }
  throw std::invalid_argument("cannot parse frequency '" + std::string(text) +
                              "' (expected e.g. 7GHz; units Hz, kHz, MHz, GHz, THz)");
}

std::string format_number(double v) {
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf.data(), end);
}

std::string format_frequency(const Frequency& f) {
  return format_number(f.value) + std::string(unit_suffix(f.unit));
}

}  // namespace qdc::runner
