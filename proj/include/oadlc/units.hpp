#ifndef OADLC_UNITS_HPP
#define OADLC_UNITS_HPP

#include <numbers>

// Boundary conversions between SI and the reporting units used in configs,
// records and CSV output (mm, GPa, g/cm^3, degrees, grams, N/mm, mN*m).
namespace oadlc::units {

inline constexpr double kPi = std::numbers::pi;

// Downscaling divides: division is correctly rounded, so file values round-trip.
constexpr double mm_to_m(double mm) { return mm / 1e3; }
constexpr double m_to_mm(double m) { return m * 1e3; }

constexpr double gpa_to_pa(double gpa) { return gpa * 1e9; }
constexpr double pa_to_gpa(double pa) { return pa / 1e9; }

constexpr double g_cm3_to_kg_m3(double g_cm3) { return g_cm3 * 1e3; }
constexpr double kg_m3_to_g_cm3(double kg_m3) { return kg_m3 / 1e3; }

constexpr double kg_to_g(double kg) { return kg * 1e3; }

constexpr double deg_to_rad(double deg) { return deg * (kPi / 180.0); }
constexpr double rad_to_deg(double rad) { return rad * (180.0 / kPi); }

// N/m <-> N/mm
constexpr double n_per_m_to_n_per_mm(double k) { return k / 1e3; }
constexpr double n_per_mm_to_n_per_m(double k) { return k * 1e3; }

// N*m <-> mN*m
constexpr double nm_to_mnm(double d) { return d * 1e3; }
constexpr double mnm_to_nm(double d) { return d / 1e3; }

}  // namespace oadlc::units

#endif  // OADLC_UNITS_HPP
