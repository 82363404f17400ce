#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "deltamod/int_matrix.hpp"

namespace deltamod {

using Json = nlohmann::ordered_json;

/// Text format: "rows cols", then one line per row, then an optional
/// "labels: l1 l2 ..." line. Blank lines and '#' comments are ignored.
/// Throws ParseError.
IntMatrix read_matrix_text(std::istream& in);
IntMatrix parse_matrix_text(const std::string& text);
void write_matrix_text(std::ostream& out, const IntMatrix& m);
std::string format_matrix_text(const IntMatrix& m);

/// Reads a file, or standard input for "-".
IntMatrix load_matrix(const std::string& path);

/// Integers outside the int64 range are written as decimal strings.
Json integer_to_json(const Integer& v);
Integer integer_from_json(const Json& j);

/// {"rows":r,"cols":n,"entries":[[...]],"labels":[...]}; labels only when present.
Json matrix_to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const Json& j);

Json witness_to_json(const SubmatrixWitness& w);

}  // namespace deltamod
