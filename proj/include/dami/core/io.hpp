#pragma once

#include <string>
#include <vector>

#include "dami/core/invariant.hpp"
#include "dami/core/object.hpp"

namespace dami {

/// Reads a point-cloud CSV: '#' comment lines, then a header row, then
/// space_dim + channel_dim numeric columns per data row (plus an optional
/// trailing weight column named "w").  Parse failures name the row and
/// column.
ObjectMN read_object_csv(const std::string& path, int space_dim, int channel_dim);
ObjectMN parse_object_csv(const std::string& text, int space_dim, int channel_dim,
                          const std::string& origin = "<string>");

/// Writes the canonical layout (x,y,z,...,r,g,b,...[,w]); the comment, when
/// non-empty, is emitted first as '#' lines.
void write_object_csv(const ObjectMN& obj, const std::string& path,
                      const std::string& header_comment = {});
std::string object_csv_string(const ObjectMN& obj, const std::string& header_comment = {});

/// JSON layout for expressions:
/// {"M":..,"N":..,"kernel":[{"kind":"S","points":[..],"exp":..},..],
///  "numerator":[{"coeff":[n,d],"moments":[[..],..]},..],
///  "normalization":{"mode":"counting"|"paper",
///                   "factors":[{"kind":"mass","base":[..],"exp":[n,d]},..]}}
/// Moment multi-indexes are spatial-then-channel concatenations; rationals
/// are [numerator, denominator] integer pairs.
std::string expr_to_json(const InvariantExpr& expr, int indent = 2);
InvariantExpr expr_from_json(const std::string& json_text);
InvariantExpr read_expr_json(const std::string& path);
void write_expr_json(const InvariantExpr& expr, const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace dami
