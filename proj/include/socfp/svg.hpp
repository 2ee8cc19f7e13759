#pragma once

#include <string>

#include "socfp/types.hpp"

namespace socfp {

// SVG 1.1 rendering of a solved grid: one light-gray tile rectangle per grid
// position, one centered orange core rectangle of exact content area per
// position with content, aspect kept inside [eta, 1/eta].
std::string render_floorplan_svg(const FloorplanSolution& sol, const AreaMatrix& areas,
                                 double eta);

}  // namespace socfp
