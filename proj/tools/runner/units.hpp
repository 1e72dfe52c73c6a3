// Frequencies as quoted in lab units, e.g. "6.92THz" meaning omega / 2pi.
#pragma once

#include <string>
#include <string_view>

namespace qdc::runner {

enum class FrequencyUnit { Hz, kHz, MHz, GHz, THz };

struct Frequency {
  double value = 0.0;
  FrequencyUnit unit = FrequencyUnit::Hz;

  double hertz() const;
  /// 2 pi * hertz()
  double angular() const;

  friend bool operator==(const Frequency&, const Frequency&) = default;
};

double unit_scale(FrequencyUnit unit);
std::string_view unit_suffix(FrequencyUnit unit);

/// Accepts "<number>[ ]<unit>" with unit one of Hz, kHz, MHz, GHz, THz
/// (case-sensitive). Throws std::invalid_argument otherwise.
Frequency parse_frequency(std::string_view text);

/// Canonical form: shortest round-trip number immediately followed by the
/// unit, e.g. "7GHz", "6.923THz", "0.5MHz".
std::string format_frequency(const Frequency& f);

/// Shortest decimal string that parses back to exactly `v`.
std::string format_number(double v);

}  // namespace qdc::runner
