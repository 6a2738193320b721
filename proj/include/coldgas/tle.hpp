#pragma once

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coldgas/constants.hpp"
#include "coldgas/orbit.hpp"
#include "coldgas/state.hpp"

namespace coldgas {

/// Parsed two-line element set. Fields mirror the fixed-column format:
/// mean_motion_dot is the printed first-derivative-over-2 field [rev/day^2],
/// mean_motion_ddot the second-derivative-over-6 field [rev/day^3].
struct TleRecord {
    std::string name;             // optional line-0 metadata
    int norad_id = 0;
    char classification = 'U';
    std::string int_designator;   // launch year/number/piece, right-trimmed
    int epoch_year = 0;           // two-digit year as printed (57-99 -> 19xx)
    double epoch_day = 0.0;       // fractional day of year
    double mean_motion_dot = 0.0;
    double mean_motion_ddot = 0.0;
    double bstar = 0.0;           // 1/earth-radii
    int ephemeris_type = 0;
    int element_set_no = 0;
    double inclination = 0.0;     // deg
    double raan = 0.0;            // deg
    double eccentricity = 0.0;
    double arg_perigee = 0.0;     // deg
    double mean_anomaly = 0.0;    // deg
    double mean_motion = 0.0;     // rev/day
    int rev_number = 0;
    int checksum1 = 0;
    int checksum2 = 0;

    /// Four-digit launch/epoch year under the usual 1957 pivot.
    int full_epoch_year() const { return epoch_year >= 57 ? 1900 + epoch_year : 2000 + epoch_year; }
};

struct TleParseError {
    std::size_t line_number = 0;  // 1-based in the input text
    int col_start = 0;            // 1-based, inclusive
    int col_end = 0;              // 1-based, inclusive
    std::string message;

    std::string to_string() const {
        return "line " + std::to_string(line_number) + " cols " + std::to_string(col_start) + "-" +
               std::to_string(col_end) + ": " + message;
    }
};

struct TleParseReport {
    std::vector<TleRecord> records;
    std::vector<TleParseError> errors;
};

/// Mod-10 line checksum: digits count their value, minus signs count 1.
inline int tle_checksum(std::string_view data) {
    int sum = 0;
    for (char c : data) {
        if (c >= '0' && c <= '9') sum += c - '0';
        else if (c == '-') sum += 1;
    }
    return sum % 10;
}

namespace tle_detail {

constexpr int LINE_LENGTH = 69;

struct FieldError {
    int col_start;
    int col_end;
    std::string message;
};

[[noreturn]] inline void fail(int col_start, int col_end, const std::string& msg) {
    throw FieldError{col_start, col_end, msg};
}

inline std::string_view field(std::string_view line, int col_start, int col_end) {
    return line.substr(col_start - 1, col_end - col_start + 1);
}

inline long parse_int(std::string_view line, int col_start, int col_end, const char* what) {
    const std::string_view f = field(line, col_start, col_end);
    long value = 0;
    bool any = false;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const char c = f[i];
        if (c == ' ') {
            if (any) fail(col_start, col_end, std::string(what) + ": embedded space");
            continue;
        }
        if (c < '0' || c > '9') fail(col_start, col_end, std::string(what) + ": expected digits");
        value = value * 10 + (c - '0');
        any = true;
    }
    if (!any) fail(col_start, col_end, std::string(what) + ": blank field");
    return value;
}

inline double parse_fixed(std::string_view line, int col_start, int col_end, const char* what) {
    const std::string_view f = field(line, col_start, col_end);
    std::string buf(f);
    char* end = nullptr;
    const double v = std::strtod(buf.c_str(), &end);
    if (end == buf.c_str()) fail(col_start, col_end, std::string(what) + ": not a number");
    while (*end == ' ') ++end;
    if (*end != '\0') fail(col_start, col_end, std::string(what) + ": trailing garbage");
    return v;
}

/// Implied-decimal field of n digits, value = digits / 10^n.
inline double parse_implied_decimal(std::string_view line, int col_start, int col_end,
                                    const char* what) {
    const std::string_view f = field(line, col_start, col_end);
    double scale = 1.0;
    long digits = 0;
    for (char c : f) {
        if (c < '0' || c > '9') fail(col_start, col_end, std::string(what) + ": expected digits");
        digits = digits * 10 + (c - '0');
        scale *= 10.0;
    }
    return static_cast<double>(digits) / scale;
}

/// Decode the exponent notation "sNNNNNsE" as (+/-)0.NNNNN * 10^(+/-E).
inline double assemble_exp(int sign, long digits, int exponent) {
    return sign * (static_cast<double>(digits) * 1e-5) * std::pow(10.0, exponent);
}

inline double parse_exp_field(std::string_view line, int col_start, int col_end, const char* what) {
    const std::string_view f = field(line, col_start, col_end);
    if (f.size() != 8) fail(col_start, col_end, std::string(what) + ": bad width");
    int sign = 1;
    if (f[0] == '-') sign = -1;
    else if (f[0] != '+' && f[0] != ' ')
        fail(col_start, col_end, std::string(what) + ": bad mantissa sign");
    long digits = 0;
    for (int i = 1; i <= 5; ++i) {
        const char c = f[i];
        if (c < '0' || c > '9') fail(col_start, col_end, std::string(what) + ": expected digits");
        digits = digits * 10 + (c - '0');
    }
    int esign;
    if (f[6] == '-') esign = -1;
    else if (f[6] == '+') esign = 1;
    else fail(col_start, col_end, std::string(what) + ": bad exponent sign");
    if (f[7] < '0' || f[7] > '9') fail(col_start, col_end, std::string(what) + ": bad exponent");
    return assemble_exp(sign, digits, esign * (f[7] - '0'));
}

/// The ndot field "s.NNNNNNNN" (sign, decimal point, eight digits).
inline double parse_dotted_field(std::string_view line, int col_start, int col_end,
                                 const char* what) {
    const std::string_view f = field(line, col_start, col_end);
    if (f.size() != 10) fail(col_start, col_end, std::string(what) + ": bad width");
    int sign = 1;
    if (f[0] == '-') sign = -1;
    else if (f[0] != '+' && f[0] != ' ')
        fail(col_start, col_end, std::string(what) + ": bad sign");
    if (f[1] != '.') fail(col_start, col_end, std::string(what) + ": expected decimal point");
    long digits = 0;
    for (int i = 2; i < 10; ++i) {
        const char c = f[i];
        if (c < '0' || c > '9') fail(col_start, col_end, std::string(what) + ": expected digits");
        digits = digits * 10 + (c - '0');
    }
    return sign * static_cast<double>(digits) / 1e8;
}

inline std::string rtrim(std::string_view s) {
    std::size_t end = s.size();
    while (end > 0 && (s[end - 1] == ' ' || s[end - 1] == '\t')) --end;
    return std::string(s.substr(0, end));
}

inline std::string encode_exp(double v) {
    char out[16];
    if (v == 0.0) return " 00000+0";
    const char sign = v < 0.0 ? '-' : ' ';
    const double m = std::abs(v);
    long best_digits = -1;
    int best_exp = 0;
    // Prefer the normalized exact representation, then any exact one.
    const int first = static_cast<int>(std::floor(std::log10(m))) + 1;
    for (int pass = 0; pass < 2 && best_digits < 0; ++pass) {
        for (int ex = (pass == 0 ? first : -9); ex <= (pass == 0 ? first : 9); ++ex) {
            if (ex < -9 || ex > 9) continue;
            const long digits = std::lround(m * std::pow(10.0, 5 - ex));
            if (digits < 1 || digits > 99999) continue;
            if (assemble_exp(1, digits, ex) == m) {
                best_digits = digits;
                best_exp = ex;
                break;
            }
        }
    }
    if (best_digits < 0) {  // fall back to normalized rounding
        int ex = first;
        long digits = std::lround(m * std::pow(10.0, 5 - ex));
        if (digits > 99999) {
            digits = std::lround(m * std::pow(10.0, 4 - ex));
            ++ex;
        }
        best_digits = digits;
        best_exp = ex;
    }
    std::snprintf(out, sizeof(out), "%c%05ld%c%d", sign, best_digits,
                  best_exp < 0 ? '-' : '+', std::abs(best_exp));
    return out;
}

inline std::string encode_dotted(double v) {
    const long digits = std::lround(std::abs(v) * 1e8);
    if (digits > 99999999)
        throw std::invalid_argument("tle serialize: |mean_motion_dot| must be below 1");
    char out[16];
    std::snprintf(out, sizeof(out), "%c.%08ld", v < 0.0 ? '-' : ' ', digits);
    return out;
}

}  // namespace tle_detail

/**
 * @brief Serialize a record to its two 69-character lines, checksums included.
 */
inline std::pair<std::string, std::string> serialize_tle(const TleRecord& rec) {
    if (rec.norad_id < 0 || rec.norad_id > 99999)
        throw std::invalid_argument("tle serialize: norad id out of range");
    if (rec.eccentricity < 0.0 || rec.eccentricity >= 1.0)
        throw std::invalid_argument("tle serialize: eccentricity out of range");

    char l1[80], l2[80];
    std::snprintf(l1, sizeof(l1), "1 %05d%c %-8s %02d%012.8f %s %s %s %d %4d",
                  rec.norad_id, rec.classification, rec.int_designator.c_str(),
                  rec.epoch_year, rec.epoch_day,
                  tle_detail::encode_dotted(rec.mean_motion_dot).c_str(),
                  tle_detail::encode_exp(rec.mean_motion_ddot).c_str(),
                  tle_detail::encode_exp(rec.bstar).c_str(),
                  rec.ephemeris_type, rec.element_set_no);
    std::snprintf(l2, sizeof(l2), "2 %05d %8.4f %8.4f %07ld %8.4f %8.4f %11.8f%5d",
                  rec.norad_id, rec.inclination, rec.raan,
                  std::lround(rec.eccentricity * 1e7), rec.arg_perigee, rec.mean_anomaly,
                  rec.mean_motion, rec.rev_number);

    std::string line1(l1), line2(l2);
    if (line1.size() != 68 || line2.size() != 68)
        throw std::invalid_argument("tle serialize: field overflow");
    line1 += static_cast<char>('0' + tle_checksum(line1));
    line2 += static_cast<char>('0' + tle_checksum(line2));
    return {line1, line2};
}

namespace tle_detail {

inline TleRecord parse_pair(std::string_view line1, std::string_view line2,
                            std::size_t lineno1, std::size_t lineno2,
                            std::vector<TleParseError>& errors, bool& ok) {
    TleRecord rec;
    ok = true;
    const auto run = [&](std::size_t lineno, auto&& fn) {
        try {
            fn();
        } catch (const FieldError& e) {
            errors.push_back({lineno, e.col_start, e.col_end, e.message});
            ok = false;
        }
    };

    run(lineno1, [&] {
        rec.norad_id = static_cast<int>(parse_int(line1, 3, 7, "norad id"));
        rec.classification = line1[7];
        rec.int_designator = rtrim(field(line1, 10, 17));
        rec.epoch_year = static_cast<int>(parse_int(line1, 19, 20, "epoch year"));
        rec.epoch_day = parse_fixed(line1, 21, 32, "epoch day");
        rec.mean_motion_dot = parse_dotted_field(line1, 34, 43, "mean motion dot");
        rec.mean_motion_ddot = parse_exp_field(line1, 45, 52, "mean motion ddot");
        rec.bstar = parse_exp_field(line1, 54, 61, "bstar");
        rec.ephemeris_type = static_cast<int>(parse_int(line1, 63, 63, "ephemeris type"));
        rec.element_set_no = static_cast<int>(parse_int(line1, 65, 68, "element set number"));
        rec.checksum1 = static_cast<int>(parse_int(line1, 69, 69, "checksum"));
    });
    run(lineno2, [&] {
        const int norad2 = static_cast<int>(parse_int(line2, 3, 7, "norad id"));
        if (norad2 != rec.norad_id) fail(3, 7, "norad id mismatch between lines");
        rec.inclination = parse_fixed(line2, 9, 16, "inclination");
        rec.raan = parse_fixed(line2, 18, 25, "raan");
        rec.eccentricity = parse_implied_decimal(line2, 27, 33, "eccentricity");
        rec.arg_perigee = parse_fixed(line2, 35, 42, "arg perigee");
        rec.mean_anomaly = parse_fixed(line2, 44, 51, "mean anomaly");
        rec.mean_motion = parse_fixed(line2, 53, 63, "mean motion");
        rec.rev_number = static_cast<int>(parse_int(line2, 64, 68, "rev number"));
        rec.checksum2 = static_cast<int>(parse_int(line2, 69, 69, "checksum"));
        if (rec.eccentricity >= 1.0) fail(27, 33, "eccentricity out of range");
    });
    return rec;
}

}  // namespace tle_detail

/**
 * @brief Parse two-line (or named three-line) element sets from text.
 *
 * Records failing the 69-character length check, either mod-10 checksum, or
 * any numeric field are rejected; each rejection carries the 1-based line
 * number and column span. Parsing continues with the next record.
 */
inline TleParseReport parse_tle(std::string_view text) {
    TleParseReport report;

    std::vector<std::pair<std::size_t, std::string>> lines;  // (1-based number, content)
    {
        std::size_t lineno = 0, pos = 0;
        while (pos <= text.size()) {
            const std::size_t nl = text.find('\n', pos);
            std::string_view raw = (nl == std::string_view::npos)
                                       ? text.substr(pos)
                                       : text.substr(pos, nl - pos);
            ++lineno;
            if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
            if (!raw.empty()) lines.emplace_back(lineno, std::string(raw));
            if (nl == std::string_view::npos) break;
            pos = nl + 1;
        }
    }

    std::string pending_name;
    const auto is_data_line = [](const std::string& s, char which) {
        return s.size() >= 2 && s[0] == which && s[1] == ' ';
    };

    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto& [no1, l1] = lines[i];
        if (!is_data_line(l1, '1')) {
            if (is_data_line(l1, '2')) {
                report.errors.push_back({no1, 1, 1, "dangling second line"});
                pending_name.clear();
            } else {
                pending_name = tle_detail::rtrim(l1);  // 3LE name line
            }
            continue;
        }
        if (i + 1 >= lines.size() || !is_data_line(lines[i + 1].second, '2')) {
            report.errors.push_back({no1, 1, 1, "first line without matching second line"});
            pending_name.clear();
            continue;
        }
        const auto& [no2, l2] = lines[i + 1];
        ++i;

        bool ok = true;
        if (l1.size() != tle_detail::LINE_LENGTH) {
            report.errors.push_back({no1, 1, static_cast<int>(l1.size()),
                                     "line must be exactly 69 characters, got " +
                                         std::to_string(l1.size())});
            ok = false;
        }
        if (l2.size() != tle_detail::LINE_LENGTH) {
            report.errors.push_back({no2, 1, static_cast<int>(l2.size()),
                                     "line must be exactly 69 characters, got " +
                                         std::to_string(l2.size())});
            ok = false;
        }
        if (!ok) {
            pending_name.clear();
            continue;
        }
        const int ck1 = tle_checksum(std::string_view(l1).substr(0, 68));
        if (l1[68] - '0' != ck1) {
            report.errors.push_back({no1, 69, 69,
                                     "checksum mismatch, expected " + std::to_string(ck1)});
            ok = false;
        }
        const int ck2 = tle_checksum(std::string_view(l2).substr(0, 68));
        if (l2[68] - '0' != ck2) {
            report.errors.push_back({no2, 69, 69,
                                     "checksum mismatch, expected " + std::to_string(ck2)});
            ok = false;
        }
        if (!ok) {
            pending_name.clear();
            continue;
        }

        bool fields_ok = true;
        TleRecord rec = tle_detail::parse_pair(l1, l2, no1, no2, report.errors, fields_ok);
        if (fields_ok) {
            rec.name = pending_name;
            report.records.push_back(std::move(rec));
        }
        pending_name.clear();
    }
    return report;
}

/**
 * @brief Mean elements of a TLE as osculating Keplerian elements.
 *
 * a = (mu/n^2)^(1/3) with n converted from rev/day; the mean anomaly is
 * converted to true anomaly through Kepler's equation (tolerance 1e-12 rad).
 */
inline KeplerianElements tle_to_elements(const TleRecord& rec, const BodyConstants& body = {}) {
    if (rec.mean_motion <= 0.0)
        throw std::domain_error("tle_to_elements: mean motion must be positive");
    if (rec.eccentricity < 0.0 || rec.eccentricity >= 1.0)
        throw std::domain_error("tle_to_elements: eccentricity outside [0,1)");

    const double n = rec.mean_motion * 2.0 * PI / 86400.0;  // rad/s
    KeplerianElements el;
    el.semi_major_axis = std::cbrt(body.mu / (n * n));
    el.eccentricity = rec.eccentricity;
    el.inclination = rec.inclination;
    el.raan = rec.raan;
    el.arg_perigee = rec.arg_perigee;
    const double m = deg2rad(rec.mean_anomaly);
    const double nu = true_from_eccentric(solve_kepler(m, rec.eccentricity, 1e-12), rec.eccentricity);
    el.true_anomaly = wrap_deg(rad2deg(nu));
    return el;
}

}  // namespace coldgas
