#pragma once

#include "rbm/butterfly.hpp"
#include "rbm/dense.hpp"

#include <iosfwd>
#include <string>
#include <string_view>

namespace rbm {

/// `{"n": levels, "angles": [radians, ...]}`. Simple butterflies list n angles by
/// level; non-simple ones list the 2^n - 1 tree angles in heap order.
std::string to_json(const SimpleButterfly& b);
std::string to_json(const NonSimpleButterfly& b);

/// Inverse of to_json. Angles are reduced mod 2*pi. Malformed documents or a
/// length that does not match n throw std::invalid_argument.
SimpleButterfly simple_from_json(std::string_view text);
NonSimpleButterfly nonsimple_from_json(std::string_view text);

/// Dense dump: one CSV line per row, or `{"rows": r, "cols": c, "data": [[...], ...]}`.
void write_matrix_csv(std::ostream& os, const Matrix& m);
std::string matrix_to_json(const Matrix& m);

/// Shortest decimal text that parses back to exactly x.
std::string format_double(double x);

}  // namespace rbm
