#pragma once

// Text serialization: packing files (bit-exact round trip for rational
// backing), spherical packing files, Schottky group configs and the CSV
// emitters used by the command-line tools.

#include <string>
#include <variant>
#include <vector>

#include "circlepack/apollonian.hpp"
#include "circlepack/schottky.hpp"
#include "circlepack/spherical.hpp"
#include "circlepack/statistics.hpp"

namespace circlepack {

class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& where, long line, const std::string& what)
        : std::runtime_error(where + ":" + std::to_string(line) + ": " + what), line_number(line) {}
    long line_number;
};

using AnyPacking = std::variant<Packing<Rat>, Packing<double>>;

std::string packing_to_string(const AnyPacking& p);
void write_packing(const AnyPacking& p, const std::string& path);
AnyPacking read_packing(const std::string& path);

inline AnyPacking as_any(Packing<Rat> p) { return AnyPacking{std::move(p)}; }
inline AnyPacking as_any(Packing<double> p) { return AnyPacking{std::move(p)}; }

std::string spherical_to_string(const std::vector<SphericalCircle>& circles, const std::string& source);
void write_spherical(const std::vector<SphericalCircle>& circles, const std::string& source,
                     const std::string& path);
std::vector<SphericalCircle> read_spherical(const std::string& path);

// Schottky config: 'genus k' then one 'pair cx cy cx' cy' r r' twist' line
// per pair, optionally followed by 'map a_re a_im b_re b_im c_re c_im d_re
// d_im' to override the standard pairing. '#' starts a comment.
SchottkyGroup read_schottky_config(const std::string& path);
SchottkyGroup parse_schottky_config(const std::string& text, const std::string& name);

// CSV emitters (also the byte-determinism surface of the CLI).
std::string csv_count_series(const CountSeries& s);
std::string csv_fit(const FitResult& f);
std::string csv_prime_table(const std::vector<double>& ts, const std::vector<long long>& prime,
                            const std::vector<long long>& twin, const std::vector<long long>& distinct);
std::string csv_ratio_series(const RatioSeries& r);

void write_text_file(const std::string& path, const std::string& contents);
std::string read_text_file(const std::string& path);

}  // namespace circlepack
