#include "riclink/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "riclink/numeric.hpp"

namespace riclink {

const char* const kCsvVersionLine = "# riclink-csv v1";

namespace {

std::string format(const char* spec, double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

}  // namespace

std::string format_compact(double x) { return format("%g", x); }

std::string format_precise(double x) { return format("%.12g", x); }

void write_csv_header(std::ostream& out) {
  out << kCsvVersionLine << '\n'
      << "scheme,m,ebn0_db,diversity,k_factor,model,bits,bit_errors,ber,"
         "ci_low,ci_high,seed,source\n";
}

namespace {

void write_cell_prefix(std::ostream& out, const SimPoint& point) {
  out << to_string(point.scheme) << ',' << point.m << ','
      << format_compact(point.ebn0_db) << ',' << point.diversity << ','
      << format_compact(point.channel.k_factor) << ','
      << to_string(point.channel.model) << ',';
}

}  // namespace

void write_sim_row(std::ostream& out, const SimPoint& point, const BerEstimate& est) {
  write_cell_prefix(out, point);
  out << est.bits_sent << ',' << est.bit_errors << ',' << format_precise(est.ber)
      << ',' << format_precise(est.ci_low) << ',' << format_precise(est.ci_high)
      << ',' << point.seed << ",sim\n";
}

void write_theory_row(std::ostream& out, const SimPoint& point,
                      const OracleEstimate& est) {
  const double z = normal_quantile(0.975);
  const double low = std::max(0.0, est.ber - z * est.ber_std_error);
  const double high = std::min(1.0, est.ber + z * est.ber_std_error);
  write_cell_prefix(out, point);
  out << ",," << format_precise(est.ber) << ',' << format_precise(low) << ','
      << format_precise(high) << ',' << point.seed << ",theory\n";
}

void write_constellation_csv(std::ostream& out, const Constellation& c) {
  out << kCsvVersionLine << '\n' << "index,bits,i,q,amp,phase\n";
  for (int k = 0; k < c.size; ++k) {
    const ConstellationPoint p = c.point(k);
    std::string bits(c.bits_per_symbol, '0');
    for (int j = 0; j < c.bits_per_symbol; ++j)
      if (c.label_of_index[k] >> (c.bits_per_symbol - 1 - j) & 1u) bits[j] = '1';
    out << k << ',' << bits << ',' << format_precise(p.i) << ','
        << format_precise(p.q) << ',' << format_precise(p.amp) << ','
        << format_precise(p.phase) << '\n';
  }
}

}  // namespace riclink
