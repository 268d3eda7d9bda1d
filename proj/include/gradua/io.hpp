#ifndef GRADUA_IO_HPP
#define GRADUA_IO_HPP

#include <json.hpp>

#include "gradua/bundle.hpp"
#include "gradua/characterization.hpp"
#include "gradua/duality.hpp"
#include "gradua/super.hpp"

namespace gradua {

using Json = nlohmann::ordered_json;

// Input errors carry a location trail for exit-code-2 diagnostics.
struct ParseError : Error {
  explicit ParseError(const std::string& what) : Error(what) {}
};

// A validated spec payload: the kind tag plus the raw document. Kinds:
// space, map, algebra, atlas, symalg, dvb, ndeg2, zakrzewski, standard.
struct SpecFile {
  int version = 1;
  std::string kind;
  Json raw;
};

// Accepts a file path or inline JSON text (anything starting with '{' or
// '['). The kind is read from the document or inferred from its fields.
SpecFile parse_spec(const std::string& path_or_inline);

Json table_to_json(const TablePtr& table);
TablePtr table_from_json(const Json& j, bool allow_weight_zero = false);

Json rank_to_json(const RankVector& dd);

// {"rank": [..]} | {"rank": {"even": [..], "odd": [..]}} | {"table": [..]}
TablePtr space_table_from_json(const Json& j);

Json poly_to_json(const GradedPolynomial& p);
GradedPolynomial poly_from_json(const TablePtr& table, const Json& j);

GradedPolyMap map_from_json(const Json& j);
Json map_to_json(const GradedPolyMap& f);

PresentedGradedAlgebra algebra_from_json(const Json& j);
Json algebra_to_json(const PresentedGradedAlgebra& A);

SymAlgData symalg_from_json(const Json& j);
DVBData dvb_from_json(const Json& j);
NDeg2Data ndeg2_from_json(const Json& j);

GradedBundleAtlas atlas_from_json(const Json& j);

ZakrzewskiMorphism zm_from_json(const Json& j);
Json zm_to_json(const ZakrzewskiMorphism& zm);
StandardMorphism std_from_json(const Json& j);
Json std_to_json(const StandardMorphism& sm);

Tensor3 tensor_from_json(const Json& j);
Json tensor_to_json(const Tensor3& t);
QMatrix matrix_from_json(const Json& j);
Json matrix_to_json(const QMatrix& m);

// "Y[a,b]" -> the multidegree of the listed generators (repeats allowed)
Multidegree dual_basis_element(const TablePtr& table, const std::string& text);

}  // namespace gradua

#endif
