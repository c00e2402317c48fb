#ifndef FOURBAND_IO_HPP
#define FOURBAND_IO_HPP

#include <string>

#include "fourband/coeffs.hpp"
#include "fourband/spectrum.hpp"

namespace fourband {

/// Parses { "p": {"const": c, "cos": [...], "sin": [...]}, "q": {...} }.
/// Missing fields default to zero. Malformed input raises InputError.
CoefficientSet load_coefficients_json(const std::string& text);
CoefficientSet load_coefficients_file(const std::string& path);

/// Named presets: "zero" (p = q = 0), "cos1" (p = cos 2 pi t, q = 0).
CoefficientSet preset_coefficients(const std::string& name);

/// FNV-1a hash of the canonical 17-digit serialization of the
/// coefficient data, for report provenance.
std::string coefficient_hash(const CoefficientSet& c);

/// Lossless round-trip formatting (17 significant digits).
std::string format_double(double v);

std::string spectrum_report_to_json(const SpectrumReport& r);
std::string zero_tables_to_json(const ZeroTables& t);

} // namespace fourband

#endif
