#pragma once

#include <string>

#include "json.hpp"

#include "kcollapse/bounds.hpp"
#include "kcollapse/family.hpp"
#include "kcollapse/graphtools.hpp"
#include "kcollapse/matrix.hpp"
#include "kcollapse/matrixform.hpp"
#include "kcollapse/simplexopt.hpp"

namespace kcollapse {

using Json = nlohmann::ordered_json;

/// Rationals are written as "p/q" strings (or "p" for integers).
Json to_json(const Rational& x);
inline Json to_json(double x) { return Json(x); }
/// Accepts "p/q" and decimal strings as well as JSON integers.
Rational rational_from_json(const Json& j);

Json space_to_json(const NormSpace& space);
NormSpace space_from_json(const Json& j);

/// True when any coordinate is a non-integer JSON number, or "arithmetic" is "float".
bool family_is_float(const Json& j);

template <Scalar T>
VectorFamily<T> family_from_json(const Json& j);
template <Scalar T>
Json family_to_json(const VectorFamily<T>& family);

template <Scalar T>
Matrix<T> matrix_from_json(const Json& j);
bool matrix_is_float(const Json& j);
template <Scalar T>
Json matrix_to_json(const Matrix<T>& a);

/// Witness indices are written 1-based.
template <Scalar T>
Json report_to_json(const ConditionReport<T>& report);
template <Scalar T>
Json certificate_to_json(const RankCertificate<T>& cert);

Json bound_to_json(const BoundResult& b);
Json best_bounds_to_json(const BestBounds& b);
Json table1_row_to_json(const Table1Row& row);
Json opt_result_to_json(const OptResult& r);
Json graph_to_json(const SimpleGraph& g);
Json pipeline_to_json(const PipelineReport& r);

/// Reads and parses a JSON file; errors become UsageError.
Json load_json_file(const std::string& path);

} // namespace kcollapse
