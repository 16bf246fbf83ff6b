#pragma once

#include <string>

#include "dualcurve/body.hpp"
#include "dualcurve/measures.hpp"

namespace dualcurve {

/*!
 * JSON encodings.
 *
 *   {"type":"hpolytope","dim":n,"normals":[[..]..],"offsets":[..]}
 *   {"type":"vpolytope","dim":n,"vertices":[[..]..]}
 *   {"type":"ball","dim":n,"radius":r}
 *   {"type":"ellipsoid","axes":[..]}
 *   {"dim":n,"even":bool,"atoms":[{"dir":[..],"weight":w}..]}
 *
 * Readers normalize on the way in: non-unit normals are rescaled together
 * with their offsets and atom directions are renormalized. Writers emit the
 * shortest decimal that reads back to the same double, so a second
 * write/read cycle is bitwise stable. Malformed input throws GeometryError
 * with ErrorCode::InvalidArgument.
 */
Body body_from_json(const std::string& text);
std::string body_to_json(const Body& body);

DiscreteSphericalMeasure measure_from_json(const std::string& text);
std::string measure_to_json(const DiscreteSphericalMeasure& mu);

Body load_body(const std::string& path);
void save_body(const std::string& path, const Body& body);
DiscreteSphericalMeasure load_measure(const std::string& path);
void save_measure(const std::string& path, const DiscreteSphericalMeasure& mu);

/// Decimal with 12 significant digits, used for reports and traces.
std::string format_number(double x);

}  // namespace dualcurve
