#pragma once

// File formats. All output is ASCII with LF line ends.
//
// b-file: "index value" per line; '#' comment lines and blank lines are
// skipped on input, indices must be nonnegative and consecutive.
//
// Recurrence file:
//   RECURRENCE v1
//   order: r
//   var: n
//   valid-from: n0
//   coeff i: c0 c1 ... (ascending powers; "0" for a zero coefficient)
//
// Bivariate recurrence file, one or more blocks:
//   RECURRENCE v1
//   order: max (i + j) over the support
//   vars: n m
//   support: i,j i,j ...
//   valid-from: n0 m0
//   degree: g
//   coeff k: coefficients of support point k on the monomials
//            1, n, m, n^2, n m, m^2, ... up to total degree g

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "rookwalk/guess.hpp"
#include "rookwalk/rook_engine.hpp"

namespace rookwalk::io {

void write_bfile(std::ostream& os, const guess::Sequence& seq);
guess::Sequence read_bfile(std::istream& is);

void write_recurrence(std::ostream& os, const guess::Recurrence& rec);
guess::Recurrence read_recurrence(std::istream& is);

void write_bivariate(std::ostream& os, const std::vector<guess::BivariateRecurrence>& recs);
std::vector<guess::BivariateRecurrence> read_bivariate(std::istream& is);

/// "n m value" rows covering a full rectangle from (0, 0), as written by
/// engine::write_tsv.
engine::SliceTable read_slice_tsv(std::istream& is);

std::string read_text_file(const std::string& path);
/// Writes through a temporary file and renames it into place.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace rookwalk::io
