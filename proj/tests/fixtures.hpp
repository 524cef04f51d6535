#pragma once

#include <array>
#include <cmath>
#include <filesystem>
#include <string>

#include "strucred/cds_quotes.hpp"
#include "strucred/discount_curve.hpp"

// doctest's Approx has no absolute-margin mode; golden-table checks want one.
#define CHECK_ABS(actual, expected, margin)                                       \
  do {                                                                            \
    const double check_abs_a = (actual);                                          \
    const double check_abs_e = (expected);                                        \
    CHECK_MESSAGE(std::abs(check_abs_a - check_abs_e) <= (margin),                \
                  "actual " << check_abs_a << " vs expected " << check_abs_e      \
                            << " (margin " << (margin) << ")");                   \
  } while (0)

namespace fixtures {

inline std::filesystem::path data_dir() { return STRUCRED_DATA_DIR; }

inline strucred::DiscountCurve load_curve(const std::string& date_iso) {
  return strucred::DiscountCurve::load_csv(data_dir() / ("curve_" + date_iso + ".csv"));
}

inline strucred::CdsQuoteSet load_quotes(const std::string& name,
                                         const strucred::DiscountCurve& curve) {
  return strucred::CdsQuoteSet::load_csv(data_dir() / ("quotes_" + name + ".csv"),
                                         curve.anchor());
}

// Golden calibration outputs (percent units) for one valuation date.
struct CalibrationTable {
  const char* curve_date;
  const char* quotes_name;
  double beta;
  double h;
  std::array<double, 5> vol_pct;
  std::array<double, 5> survival_pct;
};

// Vodafone, March 10th 2004, h = 0.5, beta = 0.5
inline constexpr CalibrationTable kVodafoneAt1p{
    "2004-03-10",
    "vodafone_2004-03-10",
    0.5,
    0.5,
    {24.343, 12.664, 12.766, 12.659, 15.271},
    {99.625, 98.315, 96.352, 94.204, 89.645}};

// Vodafone intensity strip (lambda nodes in percent)
inline constexpr std::array<double, 5> kVodafoneIntensityPct{0.357, 0.952, 1.033, 1.189,
                                                             2.104};
inline constexpr std::array<double, 5> kVodafoneIntensitySurvivalPct{99.627, 98.316, 96.355,
                                                                     94.206, 89.604};

// Parmalat, credit-spread barrier, beta = 0.5
inline constexpr CalibrationTable kParmalatSep10{
    "2003-09-10",
    "parmalat_2003-09-10",
    0.5,
    0.8977,
    {5.012, 3.103, 3.178, 3.551, 3.658},
    {96.673, 89.524, 82.471, 75.375, 66.998}};
inline constexpr CalibrationTable kParmalatNov28{
    "2003-11-28",
    "parmalat_2003-11-28",
    0.5,
    0.8052,
    {14.081, 10.800, 11.489, 16.235, 22.793},
    {87.620, 72.529, 62.561, 51.810, 39.217}};
inline constexpr CalibrationTable kParmalatDec08{
    "2003-12-08",
    "parmalat_2003-12-08",
    0.5,
    0.7730,
    {20.197, 17.972, 13.685, 18.771, 36.661},
    {81.289, 62.065, 56.263, 49.386, 35.626}};
// Barrier from the iterative search (the intensity strip fails on this date).
inline constexpr CalibrationTable kParmalatDec10{
    "2003-12-10",
    "parmalat_2003-12-10",
    0.5,
    0.7253,
    {50.000, 4.325, 19.950, 24.063, 37.422},
    {55.452, 55.208, 50.910, 46.705, 39.121}};

// Parmalat, excursion barrier h = REC, beta = 0.08
inline constexpr CalibrationTable kParmalatSep10Exc{
    "2003-09-10",
    "parmalat_2003-09-10",
    0.08,
    0.40,
    {42.713, 26.588, 27.343, 30.686, 31.778},
    {96.674, 89.524, 82.473, 75.377, 67.002}};
inline constexpr CalibrationTable kParmalatNov28Exc{
    "2003-11-28",
    "parmalat_2003-11-28",
    0.08,
    0.40,
    {58.808, 44.225, 46.237, 63.898, 85.758},
    {87.613, 72.512, 62.541, 51.780, 39.146}};
inline constexpr CalibrationTable kParmalatDec08Exc{
    "2003-12-08",
    "parmalat_2003-12-08",
    0.08,
    0.25,
    {107.846, 94.506, 71.046, 96.431, 181.575},
    {81.277, 62.041, 56.246, 49.369, 35.559}};
inline constexpr CalibrationTable kParmalatDec10Exc{
    "2003-12-10",
    "parmalat_2003-12-10",
    0.08,
    0.15,
    {292.060, 21.603, 114.713, 137.488, 210.474},
    {55.381, 55.198, 50.904, 46.700, 39.104}};

// September 10th with beta = 0.08 and the credit-spread barrier.
inline constexpr CalibrationTable kParmalatSep10LowBeta{
    "2003-09-10",
    "parmalat_2003-09-10",
    0.08,
    0.8969,
    {5.012, 3.064, 3.110, 3.445, 3.508},
    {96.673, 89.522, 82.468, 75.369, 66.988}};

// One-year historical equity volatility per valuation date.
inline constexpr double kEquityVolSep10 = 0.05;
inline constexpr double kEquityVolNov28 = 0.14;
inline constexpr double kEquityVolDec08 = 0.20;
inline constexpr double kEquityVolDec10 = 0.50;

}  // namespace fixtures
