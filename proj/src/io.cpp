#include "covering/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace covering {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

const char* stroke_for(int eigen_index) {
    switch (eigen_index) {
        case 1: return "#1f77b4";
        case 2: return "#d62728";
        default: return "#2ca02c";
    }
}

}  // namespace

std::string curves_csv(const std::vector<WebCurve>& curves) {
    std::string out = "curve_id,eigen_index,level,point_index,x,y,closed\n";
    for (std::size_t c = 0; c < curves.size(); ++c) {
        const auto& curve = curves[c];
        for (std::size_t i = 0; i < curve.points.size(); ++i) {
            out += std::to_string(c) + ',' + std::to_string(curve.eigen_index) + ',' +
                   fmt(curve.level) + ',' + std::to_string(i) + ',' +
                   fmt(curve.points[i].first) + ',' + fmt(curve.points[i].second) + ',' +
                   (curve.closed ? '1' : '0') + '\n';
        }
    }
    return out;
}

std::string curves_svg(const std::vector<WebCurve>& curves, const PlotWindow& window) {
    const double w = window.x_max - window.x_min;
    const double h = window.y_max - window.y_min;
    if (!(w > 0.0) || !(h > 0.0)) throw std::invalid_argument("curves_svg: empty window");
    std::string out = "<!-- covering-webs svg v1 -->\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " + fmt(w) + ' ' +
           fmt(h) + "\" fill=\"none\" stroke-width=\"" + fmt(0.004 * std::max(w, h)) +
           "\">\n";
    for (const auto& curve : curves) {
        if (curve.points.empty()) continue;
        std::string d;
        for (std::size_t i = 0; i < curve.points.size(); ++i) {
            // flip y: SVG's axis points down
            d += (i == 0 ? "M" : " L");
            d += fmt(curve.points[i].first - window.x_min) + ' ' +
                 fmt(window.y_max - curve.points[i].second);
        }
        if (curve.closed) d += " Z";
        out += "<path stroke=\"" + std::string(stroke_for(curve.eigen_index)) + "\" d=\"" +
               d + "\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

std::string cloud_csv(const std::vector<CloudPoint>& cloud) {
    std::string out = "eigen_index,level,x,y,z\n";
    for (const auto& p : cloud)
        out += std::to_string(p.eigen_index) + ',' + fmt(p.level) + ',' + fmt(p.x) + ',' +
               fmt(p.y) + ',' + fmt(p.z) + '\n';
    return out;
}

std::string trajectory_csv(const Trajectory& t, const std::vector<FirstIntegral>& integrals) {
    std::string out = "t,r,phi_unwrapped,p_r,p_phi";
    for (const auto& g : integrals) out += ',' + g.name;
    out += '\n';
    for (std::size_t i = 0; i < t.states.size(); ++i) {
        const auto& s = t.states[i];
        out += fmt(t.times[i]) + ',' + fmt(s.r) + ',' + fmt(s.phi) + ',' + fmt(s.p_r) + ',' +
               fmt(s.p_phi);
        for (const auto& g : integrals) out += ',' + fmt(g(s));
        out += '\n';
    }
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << content;
    if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace covering
