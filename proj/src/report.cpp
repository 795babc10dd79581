#include "zicount/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "zicount/errors.hpp"
#include "zicount/harness.hpp"

namespace zicount {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
  }
  return out;
}

std::string fmt(double v, const char* spec = "%g") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

const char* series_color(const std::string& test) {
  if (test == "poisson_b1") return "#d62728";
  if (test == "nb_b1") return "#9467bd";
  if (test == "zip_b1") return "#2ca02c";
  if (test == "zip_g1") return "#17becf";
  if (test == "mzip_b1") return "#1f77b4";
  if (test == "linear_raw_b1") return "#ff7f0e";
  if (test == "linear_log_b1") return "#8c564b";
  return "#7f7f7f";
}

}  // namespace

std::vector<ResultRow> parse_results_csv(const std::string& text) {
  std::stringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw InputError("results table is empty");
  const std::vector<std::string> header = split_line(line);
  auto need = [&](const char* name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end())
      throw InputError(std::string("results table is missing column '") + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t ci = need("condition");
  const std::size_t bi = need("beta1");
  const std::size_t gi = need("gamma1");
  const std::size_t ni = need("n");
  const std::size_t zi = need("zero_rate");
  const std::size_t ti = need("test_name");
  const std::size_t ri = need("rejection_rate");
  const std::size_t fi = need("failures");
  const std::size_t pi = need("replications");
  need("seed");

  std::vector<ResultRow> rows;
  std::size_t row_no = 1;
  while (std::getline(in, line)) {
    ++row_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto f = split_line(line);
    if (f.size() != header.size())
      throw InputError("results row " + std::to_string(row_no) +
                       ": wrong field count");
    try {
      ResultRow r;
      r.condition = f[ci];
      r.beta1 = std::stod(f[bi]);
      r.gamma1 = std::stod(f[gi]);
      r.n = static_cast<std::size_t>(std::stoul(f[ni]));
      r.zero_rate = std::stod(f[zi]);
      r.test_name = f[ti];
      r.rejection_rate = std::stod(f[ri]);
      r.failures = static_cast<std::size_t>(std::stoul(f[fi]));
      r.replications = static_cast<std::size_t>(std::stoul(f[pi]));
      rows.push_back(std::move(r));
    } catch (const std::exception&) {
      throw InputError("results row " + std::to_string(row_no) +
                       ": malformed numeric field");
    }
  }
  if (rows.empty()) throw InputError("results table has no data rows");
  return rows;
}

namespace {

constexpr double kPanelW = 720.0;
constexpr double kPanelH = 480.0;
constexpr double kMarginL = 72.0;
constexpr double kMarginR = 24.0;
constexpr double kMarginT = 48.0;
constexpr double kMarginB = 60.0;
constexpr double kLegendH = 44.0;

struct SeriesPoint {
  double zero_rate;
  double rate;
};

std::string render_condition_svg(const std::string& condition,
                                 const std::vector<ResultRow>& rows) {
  std::vector<double> beta1s;
  std::vector<std::size_t> ns;
  std::set<std::string> tests;
  double max_rate = 0.0;
  std::set<double> zr_set;
  for (const auto& r : rows) {
    if (std::find(beta1s.begin(), beta1s.end(), r.beta1) == beta1s.end())
      beta1s.push_back(r.beta1);
    if (std::find(ns.begin(), ns.end(), r.n) == ns.end()) ns.push_back(r.n);
    tests.insert(r.test_name);
    max_rate = std::max(max_rate, r.rejection_rate);
    zr_set.insert(r.zero_rate);
  }
  std::sort(beta1s.begin(), beta1s.end());
  std::sort(ns.begin(), ns.end());
  const std::vector<double> zrs(zr_set.begin(), zr_set.end());

  double xmin = zrs.front(), xmax = zrs.back();
  if (xmax - xmin < 1e-12) {
    xmin -= 0.05;
    xmax += 0.05;
  }
  double ymax = std::min(1.0, std::ceil(std::max(0.1, max_rate * 1.05) / 0.1) * 0.1);

  const std::size_t ncols = ns.size();
  const std::size_t nrows = beta1s.size();
  const double width = ncols * kPanelW;
  const double height = nrows * kPanelH + kLegendH;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
      << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // legend strip
  double lx = 16.0;
  for (const auto& t : tests) {
    svg << "<rect x=\"" << lx << "\" y=\"14\" width=\"18\" height=\"4\" fill=\""
        << series_color(t) << "\"/>\n";
    svg << "<text x=\"" << lx + 24 << "\" y=\"20\" font-family=\"sans-serif\" "
        << "font-size=\"13\">" << t << "</text>\n";
    lx += 30.0 + 8.5 * t.size() + 18.0;
  }

  for (std::size_t br = 0; br < nrows; ++br) {
    for (std::size_t nc = 0; nc < ncols; ++nc) {
      const double ox = nc * kPanelW;
      const double oy = kLegendH + br * kPanelH;
      const double plot_x = ox + kMarginL;
      const double plot_y = oy + kMarginT;
      const double plot_w = kPanelW - kMarginL - kMarginR;
      const double plot_h = kPanelH - kMarginT - kMarginB;
      auto sx = [&](double zr) {
        return plot_x + (zr - xmin) / (xmax - xmin) * plot_w;
      };
      auto sy = [&](double rate) {
        return plot_y + plot_h - rate / ymax * plot_h;
      };

      std::string title = "n=" + std::to_string(ns[nc]);
      if (nrows > 1) title = "beta1=" + fmt(beta1s[br]) + ", " + title;
      svg << "<text x=\"" << ox + kPanelW / 2 << "\" y=\"" << oy + 28
          << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
          << "font-size=\"16\">" << title << "</text>\n";

      // frame
      svg << "<rect x=\"" << plot_x << "\" y=\"" << plot_y << "\" width=\""
          << plot_w << "\" height=\"" << plot_h
          << "\" fill=\"none\" stroke=\"#333\" stroke-width=\"1\"/>\n";

      // x ticks at the observed zero rates
      for (double zr : zrs) {
        const double x = sx(zr);
        svg << "<line x1=\"" << x << "\" y1=\"" << plot_y + plot_h << "\" x2=\""
            << x << "\" y2=\"" << plot_y + plot_h + 5
            << "\" stroke=\"#333\"/>\n";
        svg << "<text x=\"" << x << "\" y=\"" << plot_y + plot_h + 20
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
            << "font-size=\"12\">" << fmt(zr) << "</text>\n";
      }
      svg << "<text x=\"" << plot_x + plot_w / 2 << "\" y=\""
          << plot_y + plot_h + 42
          << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
          << "font-size=\"14\">zero rate</text>\n";

      // y ticks
      for (int k = 0; k <= 5; ++k) {
        const double rate = ymax * k / 5.0;
        const double yy = sy(rate);
        svg << "<line x1=\"" << plot_x - 5 << "\" y1=\"" << yy << "\" x2=\""
            << plot_x << "\" y2=\"" << yy << "\" stroke=\"#333\"/>\n";
        svg << "<text x=\"" << plot_x - 9 << "\" y=\"" << yy + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
            << "font-size=\"12\">" << fmt(rate, "%.2f") << "</text>\n";
      }
      svg << "<text x=\"" << ox + 18 << "\" y=\"" << plot_y + plot_h / 2
          << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
          << "font-size=\"14\" transform=\"rotate(-90 " << ox + 18 << " "
          << plot_y + plot_h / 2 << ")\">rejection rate</text>\n";

      if (condition == "C4" && 0.05 <= ymax) {
        const double yy = sy(0.05);
        svg << "<line class=\"reference\" x1=\"" << plot_x << "\" y1=\"" << yy
            << "\" x2=\"" << plot_x + plot_w << "\" y2=\"" << yy
            << "\" stroke=\"#444\" stroke-dasharray=\"6,4\"/>\n";
        svg << "<text x=\"" << plot_x + plot_w - 4 << "\" y=\"" << yy - 5
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
            << "font-size=\"11\" fill=\"#444\">0.05</text>\n";
      }

      for (const auto& t : tests) {
        std::vector<SeriesPoint> pts;
        for (const auto& r : rows)
          if (r.test_name == t && r.n == ns[nc] && r.beta1 == beta1s[br])
            pts.push_back({r.zero_rate, r.rejection_rate});
        std::sort(pts.begin(), pts.end(),
                  [](const SeriesPoint& a, const SeriesPoint& b) {
                    return a.zero_rate < b.zero_rate;
                  });
        if (pts.empty()) continue;
        if (pts.size() > 1) {
          svg << "<polyline fill=\"none\" stroke=\"" << series_color(t)
              << "\" stroke-width=\"2\" points=\"";
          for (const auto& pt : pts)
            svg << fmt(sx(pt.zero_rate), "%.2f") << "," << fmt(sy(pt.rate), "%.2f")
                << " ";
          svg << "\"/>\n";
        }
        for (const auto& pt : pts)
          svg << "<circle cx=\"" << fmt(sx(pt.zero_rate), "%.2f") << "\" cy=\""
              << fmt(sy(pt.rate), "%.2f") << "\" r=\"3\" fill=\""
              << series_color(t) << "\"/>\n";
      }
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace

std::map<std::string, std::string> render_condition_figures(
    const std::vector<ResultRow>& rows) {
  if (rows.empty()) throw InputError("results table has no data rows");
  std::map<std::string, std::vector<ResultRow>> by_condition;
  for (const auto& r : rows) by_condition[r.condition].push_back(r);
  std::map<std::string, std::string> out;
  for (const auto& [cond, crows] : by_condition)
    out[cond] = render_condition_svg(cond, crows);
  return out;
}

std::vector<std::string> write_figures(const std::vector<ResultRow>& rows,
                                       const std::string& out_dir) {
  namespace fs = std::filesystem;
  const auto figures = render_condition_figures(rows);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw InputError("cannot create output directory '" + out_dir + "'");
  std::vector<std::string> written;
  for (const auto& [cond, svg] : figures) {
    const fs::path path = fs::path(out_dir) / ("condition_" + cond + ".svg");
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot write '" + path.string() + "'");
    f << svg;
    written.push_back(path.string());
  }
  return written;
}

}  // namespace zicount
