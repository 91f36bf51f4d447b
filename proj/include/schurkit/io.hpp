#pragma once
//
// JSON serialization. A BlockMatrix is
//   {"row_dims":[...], "col_dims":[...], "blocks":[...]}
// with blocks a flat list in row-major grid order, each block a row-major
// 2-D array of [re, im] pairs. A ScalarMatrix uses the same schema with all
// dimensions 1. A BlockDiagonal serializes as the square BlockMatrix with
// zero off-diagonal blocks.
//

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "schurkit/blockmat.hpp"
#include "schurkit/polar.hpp"

namespace schurkit {

using Json = nlohmann::ordered_json;

Json to_json(const BlockMatrix& a);
Json to_json(const ScalarMatrix& s);
Json to_json(const BlockDiagonal& d);

BlockMatrix block_matrix_from_json(const Json& j);
ScalarMatrix scalar_matrix_from_json(const Json& j);

// the four-field diagnostics object of a decomposition
Json diagnostics_json(const DecompositionReport& report);

// file helpers; throw parse_error on unreadable input or schema violations
BlockMatrix load_block_matrix(const std::string& path);
Json load_json(const std::string& path);

} // namespace schurkit
