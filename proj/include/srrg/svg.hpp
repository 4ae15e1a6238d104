#pragma once

// SVG drawing of a 2-D run: regions, the transition system and the plan.

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "srrg/product.hpp"
#include "srrg/tsys.hpp"
#include "srrg/workspace.hpp"

namespace srrg {

inline std::string render_svg(const Environment& env, const TransitionSystem& t, const std::optional<Plan>& plan,
                              double size_px = 600)
{
  if (env.dimension() != 2) throw std::invalid_argument("render_svg: only 2-D environments can be drawn");
  const auto& d = env.domain();
  const double w = d.hi[0] - d.lo[0], h = d.hi[1] - d.lo[1];
  const double scale = size_px / std::max(w, h);
  auto xy = [&](const Point& p, const char* xa, const char* ya) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s=\"%.2f\" %s=\"%.2f\"", xa, (p[0] - d.lo[0]) * scale, ya, (d.hi[1] - p[1]) * scale);
    return std::string(buf);
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w * scale << "\" height=\"" << h * scale << "\">\n";
  out << "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"6\" markerHeight=\"6\" "
         "orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\" fill=\"red\"/></marker></defs>\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\" stroke=\"black\"/>\n";
  for (const auto& r : env.regions()) {
    const bool obstacle = !r.name.empty() && std::tolower(static_cast<unsigned char>(r.name[0])) == 'o';
    const Point tl{r.box.lo[0], r.box.hi[1]};
    out << "<rect " << xy(tl, "x", "y") << " width=\"" << (r.box.hi[0] - r.box.lo[0]) * scale << "\" height=\""
        << (r.box.hi[1] - r.box.lo[1]) * scale << "\" fill=\"" << (obstacle ? "#999999" : "#cfe3f7")
        << "\" stroke=\"black\"/>\n";
    const Point c{(r.box.lo[0] + r.box.hi[0]) / 2, (r.box.lo[1] + r.box.hi[1]) / 2};
    out << "<text " << xy(c, "x", "y") << " text-anchor=\"middle\" font-size=\"14\">" << r.name << "</text>\n";
  }
  for (StateId i = 0; i < t.size(); ++i)
    for (StateId k : t.successors(i))
      out << "<line " << xy(t.point(i), "x1", "y1") << " " << xy(t.point(k), "x2", "y2")
          << " stroke=\"black\" stroke-width=\"0.5\"/>\n";
  if (plan) {
    std::vector<StateId> walk = plan->prefix;
    walk.insert(walk.end(), plan->suffix.begin(), plan->suffix.end());
    out << "<g stroke=\"red\" stroke-width=\"2\" marker-end=\"url(#arrow)\">\n";
    for (std::size_t i = 0; i + 1 < walk.size(); ++i)
      out << "<line " << xy(t.point(walk[i]), "x1", "y1") << " " << xy(t.point(walk[i + 1]), "x2", "y2") << "/>\n";
    out << "<line " << xy(t.point(plan->suffix.back()), "x1", "y1") << " " << xy(t.point(plan->suffix.front()), "x2", "y2")
        << "/>\n</g>\n";
  }
  for (StateId i = 0; i < t.size(); ++i)
    out << "<circle " << xy(t.point(i), "cx", "cy") << " r=\"2.5\" fill=\"black\"/>\n";
  out << "<circle " << xy(t.point(t.initial()), "cx", "cy") << " r=\"6\" fill=\"blue\"/>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace srrg
