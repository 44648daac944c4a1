#pragma once

// JSON encodings shared by the verify reports and the CLI. Complex numbers
// are [re, im] pairs; 2-forms are sparse upper-triangular lists.

#include <string>

#include <json.hpp>

#include "wproj/forms.hpp"
#include "wproj/hvec.hpp"

namespace wproj {

using Json = nlohmann::json;

Json to_json(cplx z);
Json to_json(const ComplexVec& x);
Json to_json(const ComplexMat& m);
Json to_json(const HomPoint& p);
Json to_json(const ChartId& c);
Json to_json(const ChartCoords& c);

/// {"basis": [labels...], "coeff": [[mu, nu, [re, im]], ...]} with mu < nu and
/// entries whose modulus is <= `drop_below` omitted.
Json to_json(const TwoForm& omega, double drop_below = 0.0);

cplx complex_from_json(const Json& j);
ComplexVec vector_from_json(const Json& j);
ComplexMat matrix_from_json(const Json& j);
HomPoint point_from_json(const Json& j);

/// "V:0" / "W:2".
ChartId parse_chart_id(const std::string& text);
std::string format_chart_id(const ChartId& c);
ChartId chart_id_from_json(const Json& j);

/// Serializes with every floating-point number printed as %.17g, keys in
/// sorted order, so equal values always produce identical bytes.
std::string dump_fixed(const Json& j, int indent = -1);

}  // namespace wproj
