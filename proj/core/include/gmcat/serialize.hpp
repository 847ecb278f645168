#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include <nlohmann/json.hpp>

#include "gmcat/dalgebra.hpp"
#include "gmcat/dmulticat.hpp"

namespace gmcat {

using Json = nlohmann::json;

// Reads and parses a JSON file; ParseError names the file, line and column.
Json load_json_file(const std::filesystem::path& path);

// Builtin operads by name: barratt-eccles, associativity, commutative.
CatOperad builtin_operad(std::string_view name, std::size_t truncation);

// Explicit tables: levels (category, action by Sigma_n in lexicographic order)
// and the composition of every tuple within the truncation.
Json operad_to_json(const CatOperad& op);
// Accepts the explicit form or {"builtin": name, "truncate": n}.
CatOperad operad_from_json(const Json& j);

Json category_to_json(const FinCategory& c);
FinCategory category_from_json(const Json& j, std::string_view where = "category");

Json classical_to_json(const ClassicalMulticat& c);
// Accepts the table form or {"builtin": terminal|associative|two-object}.
ClassicalMulticat classical_from_json(const Json& j, std::size_t max_arity);

// Encodes over the given monad with the symmetric or non-symmetric encoder.
FinMulticat multicat_from_json(const Json& j, const Monad& monad);
Json multicat_to_json(const FinMulticat& m);

// Algebras with finite carriers, or the free algebra on a finite category.
using AnyAlgebra = std::variant<FinAlgebra, FreeAlgebra>;
AnyAlgebra algebra_from_json(const Json& j, const Monad& monad);

// "a,b,a" or "<cell>:a,b,a" as a canonical list over the multicategory objects;
// "()" and "" are the empty list.
DElem<ObjId> parse_object_list(const FinMulticat& m, std::string_view text);

}  // namespace gmcat
