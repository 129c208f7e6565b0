#ifndef COVERING_IO_HPP_
#define COVERING_IO_HPP_

#include <string>
#include <vector>

#include "covering/benenti.hpp"
#include "covering/flow.hpp"
#include "covering/systems.hpp"
#include "covering/webs.hpp"

namespace covering {

// All serializers are deterministic: fixed column order, fixed float
// formatting, no locale dependence.

// columns: curve_id,eigen_index,level,point_index,x,y,closed
std::string curves_csv(const std::vector<WebCurve>& curves);

// One <path> per curve, stroke color keyed by eigen_index, viewport fitted to
// the window. The first line is a version comment.
std::string curves_svg(const std::vector<WebCurve>& curves, const PlotWindow& window);

// columns: eigen_index,level,x,y,z
std::string cloud_csv(const std::vector<CloudPoint>& cloud);

// columns: t,r,phi_unwrapped,p_r,p_phi, plus one column per integral
std::string trajectory_csv(const Trajectory& t, const std::vector<FirstIntegral>& integrals);

void write_file(const std::string& path, const std::string& content);

}  // namespace covering

#endif  // COVERING_IO_HPP_
