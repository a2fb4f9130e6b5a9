#ifndef CIRCDIAM_IO_HPP
#define CIRCDIAM_IO_HPP

#include <filesystem>
#include <string>
#include <variant>

#include <json.hpp>

#include "circdiam/dual_transportation.hpp"
#include "circdiam/polyhedron.hpp"
#include "circdiam/walks.hpp"

namespace circdiam::io {

using json = nlohmann::json;

/// Polyhedron file: { "A": [["p/q", ...], ...], "b": ["p/q", ...] }
Polyhedron polyhedron_from_json(const json& j);
json to_json(const Polyhedron& P);

/// Instance file: { "M": int, "N": int, "edges": [[a, b], ...], "costs": ["p/q", ...] }
dtp::DualTransportationInstance instance_from_json(const json& j);
json to_json(const dtp::DualTransportationInstance& inst);

using InputModel = std::variant<Polyhedron, dtp::DualTransportationInstance>;

/** Parses text as JSON and picks the model by its keys. Throws ParseError. */
InputModel parse_model(const std::string& text);
std::string read_file(const std::filesystem::path& path);

json to_json(const Rational& x);
json to_json(const Point& p);
json to_json(const Vector& v);
json to_json(const IntVector& v);
Rational rational_from_json(const json& j, const std::string& where);
Vector vector_from_json(const json& j, const std::string& where);

/**
 * Walk as { "points": [[...]], "steps": [{ "direction": [...], "alpha": "p/q" }] }
 * with each direction written with its sign applied. With `leading_zero`,
 * every point and direction gets an extra first coordinate 0 (the implicit
 * u_0 of a dual transportation polyhedron).
 */
json walk_to_json(const CircuitWalk& walk, bool leading_zero = false);
/** Inverse of walk_to_json; directions are canonicalized, not looked up. */
CircuitWalk walk_from_json(const json& j, bool leading_zero = false);

}  // namespace circdiam::io

#endif
