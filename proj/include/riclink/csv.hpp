#pragma once

#include <iosfwd>
#include <string>

#include "riclink/montecarlo.hpp"
#include "riclink/theory.hpp"

namespace riclink {

// Result schema, one row per cell:
//   scheme,m,ebn0_db,diversity,k_factor,model,bits,bit_errors,ber,ci_low,ci_high,seed,source
// LF line endings, '.' decimal separator. Theory rows leave bits and
// bit_errors empty and carry source=theory.

extern const char* const kCsvVersionLine;  // "# riclink-csv v1"

std::string format_compact(double x);  // %g, infinities as "inf"
std::string format_precise(double x);  // %.12g

void write_csv_header(std::ostream& out);
void write_sim_row(std::ostream& out, const SimPoint& point, const BerEstimate& est);
void write_theory_row(std::ostream& out, const SimPoint& point,
                      const OracleEstimate& est);

// index,bits,i,q,amp,phase with the label as a log2(m)-digit binary string.
void write_constellation_csv(std::ostream& out, const Constellation& c);

}  // namespace riclink
