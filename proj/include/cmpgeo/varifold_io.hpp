// Plain-text varifold files.
//
// Line-oriented format:
//   varifold m=<int> ell=<int> n=<int>
//   p_1 ... p_m | w | e_11 ... e_1m ; e_21 ... e_2m ; ... | b
// One record per atom; floats are written with round-trip precision so a
// read/write cycle re-serializes bitwise identically.  The parser rejects
// malformed headers/records and frames whose orthonormality defect exceeds
// 1e-6, reporting the offending line number.

#ifndef CMPGEO_VARIFOLD_IO_HPP
#define CMPGEO_VARIFOLD_IO_HPP

#include <iosfwd>
#include <string>

#include "cmpgeo/varifold.hpp"

namespace cmpgeo {

std::string format_double(double v);  // shortest round-trip decimal

void write_varifold(std::ostream& os, const DiscreteVarifold& V);
void write_varifold_file(const std::string& path, const DiscreteVarifold& V);

/// Throws std::runtime_error with a line number on malformed input.
DiscreteVarifold read_varifold(std::istream& is);
DiscreteVarifold read_varifold_file(const std::string& path);

}  // namespace cmpgeo

#endif  // CMPGEO_VARIFOLD_IO_HPP
