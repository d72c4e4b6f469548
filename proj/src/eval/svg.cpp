#include "simscore/eval/svg.hpp"

#include <cstdio>
#include <sstream>

namespace simscore {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
constexpr double kLeft = 64, kTop = 40, kSize = 320, kWidth = 620, kHeight = 430;

std::string fixed(double v, int digits = 2) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string px(double x) { return fixed(kLeft + x * kSize); }
std::string py(double y) { return fixed(kTop + (1 - y) * kSize); }

}  // namespace

double step_area(const Curve& pr) {
  double area = 0;
  for (std::size_t i = 1; i < pr.points.size(); ++i) area += (pr.points[i].x - pr.points[i - 1].x) * pr.points[i].y;
  return area;
}

std::string render_svg(const CurveSet& set, CurveKind kind) {
  const auto& curves = kind == CurveKind::kRoc ? set.roc : set.pr;
  const bool roc = kind == CurveKind::kRoc;
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<text x=\"" << fixed(kLeft + kSize / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
    << (roc ? "ROC" : "Precision-Recall") << ", " << escape(set.mode) << ", " << escape(set.scope) << "</text>\n";

  for (int i = 0; i <= 10; ++i) {
    const double t = i / 10.0;
    s << "<line x1=\"" << px(t) << "\" y1=\"" << py(0) << "\" x2=\"" << px(t) << "\" y2=\"" << py(1)
      << "\" stroke=\"#e6e6e6\"/>\n";
    s << "<line x1=\"" << px(0) << "\" y1=\"" << py(t) << "\" x2=\"" << px(1) << "\" y2=\"" << py(t)
      << "\" stroke=\"#e6e6e6\"/>\n";
    if (i % 2 == 0) {
      s << "<text x=\"" << px(t) << "\" y=\"" << fixed(kTop + kSize + 16) << "\" text-anchor=\"middle\">"
        << fixed(t, 1) << "</text>\n";
      s << "<text x=\"" << fixed(kLeft - 6) << "\" y=\"" << fixed(kTop + (1 - t) * kSize + 4)
        << "\" text-anchor=\"end\">" << fixed(t, 1) << "</text>\n";
    }
  }
  s << "<rect x=\"" << px(0) << "\" y=\"" << py(1) << "\" width=\"" << fixed(kSize) << "\" height=\"" << fixed(kSize)
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  s << "<text x=\"" << fixed(kLeft + kSize / 2) << "\" y=\"" << fixed(kTop + kSize + 36)
    << "\" text-anchor=\"middle\">" << (roc ? "False positive rate" : "Recall") << "</text>\n";
  s << "<text transform=\"translate(18 " << fixed(kTop + kSize / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
    << (roc ? "True positive rate" : "Precision") << "</text>\n";
  if (roc)
    s << "<line x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(1) << "\" y2=\"" << py(1)
      << "\" stroke=\"#999999\" stroke-dasharray=\"4 4\"/>\n";

  for (std::size_t m = 0; m < curves.size(); ++m) {
    const auto& [metric, c] = curves[m];
    const char* color = kPalette[m % std::size(kPalette)];
    s << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.6\" points=\"";
    for (std::size_t i = 0; i < c.points.size(); ++i) {
      const auto& p = c.points[i];
      if (i > 0) s << ' ';
      if (!roc && i > 0) s << px(c.points[i - 1].x) << ',' << py(p.y) << ' ';
      s << px(p.x) << ',' << py(p.y);
    }
    s << "\"/>\n";
    const double area = roc ? trapezoid_area(c) : step_area(c);
    const double ly = kTop + 10 + 18 * static_cast<double>(m);
    s << "<line x1=\"" << fixed(kLeft + kSize + 16) << "\" y1=\"" << fixed(ly) << "\" x2=\""
      << fixed(kLeft + kSize + 36) << "\" y2=\"" << fixed(ly) << "\" stroke=\"" << color
      << "\" stroke-width=\"2\"/>\n";
    s << "<text x=\"" << fixed(kLeft + kSize + 42) << "\" y=\"" << fixed(ly + 4) << "\">" << escape(metric) << " ("
      << (roc ? "AUC " : "AP ") << fixed(area, 3) << ")</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace simscore
