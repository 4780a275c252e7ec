#ifndef OADLC_FORMAT_HPP
#define OADLC_FORMAT_HPP

#include <string>

// Locale-independent number formatting for every emitted file.
namespace oadlc::fmt {

/// Shortest general form with at most `digits` significant digits.
std::string sig(double value, int digits = 6);

/// Value rounded to `digits` significant digits (NaN and inf pass through).
double round_sig(double value, int digits = 6);

/// Fixed-point with `decimals` places; negative zero prints as zero.
std::string fixed(double value, int decimals);

/// Parses a full-string decimal number, throwing std::invalid_argument otherwise.
double parse_double(const std::string& text);

}  // namespace oadlc::fmt

#endif  // OADLC_FORMAT_HPP
