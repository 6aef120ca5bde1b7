#include "cped/report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace cped {

namespace {

std::string fmt10(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::string fmt_coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::vector<SweepRow> sorted_rows(const SweepResult& result) {
    std::vector<SweepRow> rows = result.rows;
    std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
        if (a.method != b.method) return a.method < b.method;
        if (a.param != b.param) return a.param < b.param;
        return a.gamma_prime < b.gamma_prime;
    });
    return rows;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("io", "cannot open '" + path.string() + "' for writing");
    }
    out << content;
    if (!out) {
        throw DataError("io", "failed writing '" + path.string() + "'");
    }
}

}  // namespace

std::string csv_string(const SweepResult& result) {
    if (result.rows.empty()) {
        throw DataError("empty-input", "refusing to write an empty sweep result");
    }
    std::ostringstream out;
    out << "gamma_prime,param,method,mean_hpi,stderr_hpi,n_seeds\n";
    for (const SweepRow& r : sorted_rows(result)) {
        out << fmt10(r.gamma_prime) << ',' << r.param << ',' << r.method << ','
            << fmt10(r.mean_hpi) << ',' << fmt10(r.stderr_hpi) << ',' << r.n_seeds << '\n';
    }
    return out.str();
}

void write_csv(const SweepResult& result, const std::filesystem::path& path) {
    write_file(path, csv_string(result));
}

SweepResult parse_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) {
        throw DataError("parse", "empty CSV");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "gamma_prime,param,method,mean_hpi,stderr_hpi,n_seeds") {
        throw DataError("parse", "unexpected CSV header: " + line);
    }
    SweepResult result;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::array<std::string, 6> fields;
        std::size_t field = 0;
        std::string current;
        for (char ch : line) {
            if (ch == ',') {
                if (field >= 5) {
                    throw DataError("parse", "line " + std::to_string(line_no) +
                                                 ": too many fields");
                }
                fields[field++] = current;
                current.clear();
            } else {
                current.push_back(ch);
            }
        }
        if (field != 5) {
            throw DataError("parse", "line " + std::to_string(line_no) + ": expected 6 fields");
        }
        fields[5] = current;
        SweepRow row;
        try {
            row.gamma_prime = std::stod(fields[0]);
            row.param = fields[1];
            row.method = fields[2];
            row.mean_hpi = std::stod(fields[3]);
            row.stderr_hpi = std::stod(fields[4]);
            row.n_seeds = std::stoi(fields[5]);
        } catch (const std::exception&) {
            throw DataError("parse", "line " + std::to_string(line_no) + ": malformed row");
        }
        result.rows.push_back(std::move(row));
    }
    if (result.rows.empty()) {
        throw DataError("empty-input", "CSV contains no data rows");
    }
    return result;
}

SweepResult read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("io", "cannot open '" + path.string() + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_csv(text.str());
}

SweepResult round_to_emitted_precision(const SweepResult& result) {
    SweepResult out = result;
    for (SweepRow& r : out.rows) {
        r.gamma_prime = std::strtod(fmt10(r.gamma_prime).c_str(), nullptr);
        r.mean_hpi = std::strtod(fmt10(r.mean_hpi).c_str(), nullptr);
        r.stderr_hpi = std::strtod(fmt10(r.stderr_hpi).c_str(), nullptr);
    }
    return out;
}

// ---------------------------------------------------------------------------
// SVG chart
// ---------------------------------------------------------------------------

namespace {

constexpr double kWidth = 900.0;
constexpr double kHeight = 500.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 180.0;
constexpr double kMarginTop = 46.0;
constexpr double kMarginBottom = 56.0;

constexpr std::array<const char*, 8> kPalette = {
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd",
    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f",
};

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c; break;
        }
    }
    return out;
}

struct Series {
    std::string param;
    std::string method;
    std::vector<const SweepRow*> rows;  // sorted by gamma_prime
};

}  // namespace

std::string render_line_chart_string(const SweepResult& result, const ChartSpec& spec) {
    if (result.rows.empty()) {
        throw DataError("empty-input", "refusing to render an empty sweep result");
    }

    std::vector<SweepRow> rows = sorted_rows(result);
    std::map<std::pair<std::string, std::string>, Series> by_key;
    for (const SweepRow& r : rows) {
        Series& s = by_key[{r.param, r.method}];
        s.param = r.param;
        s.method = r.method;
        if (!s.rows.empty() && !(s.rows.back()->gamma_prime < r.gamma_prime)) {
            throw DataError("chart", "series (" + r.param + ", " + r.method +
                                         ") has non-increasing gamma_prime values");
        }
        s.rows.push_back(&r);
    }

    double x_max_data = 0.0;
    double y_min = spec.normalized ? 0.0 : rows.front().mean_hpi;
    double y_max = spec.normalized ? 1.0 : rows.front().mean_hpi;
    for (const SweepRow& r : rows) {
        x_max_data = std::max(x_max_data, r.gamma_prime);
        if (!spec.normalized) {
            y_min = std::min(y_min, r.mean_hpi - r.stderr_hpi);
            y_max = std::max(y_max, r.mean_hpi + r.stderr_hpi);
        }
    }
    if (!spec.normalized) {
        if (y_max == y_min) y_max = y_min + 1.0;
        const double pad = (y_max - y_min) * 0.05;
        y_min -= pad;
        y_max += pad;
    }
    const double x_min = 0.0;
    const double x_max = std::max(0.1, std::ceil(x_max_data * 10.0 - 1e-9) / 10.0);

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    auto map_x = [&](double v) {
        return kMarginLeft + (v - x_min) / (x_max - x_min) * plot_w;
    };
    auto map_y = [&](double v) {
        const double clamped = std::min(std::max(v, y_min), y_max);
        return kMarginTop + (1.0 - (clamped - y_min) / (y_max - y_min)) * plot_h;
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
           "viewBox=\"0 0 900 500\" width=\"900\" height=\"500\">\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"900\" height=\"500\" fill=\"white\"/>\n";
    if (!spec.title.empty()) {
        svg << "<text x=\"" << fmt_coord(kMarginLeft + plot_w / 2.0)
            << "\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" "
               "font-size=\"16\">"
            << xml_escape(spec.title) << "</text>\n";
    }

    // Axes.
    svg << "<rect x=\"" << fmt_coord(kMarginLeft) << "\" y=\"" << fmt_coord(kMarginTop)
        << "\" width=\"" << fmt_coord(plot_w) << "\" height=\"" << fmt_coord(plot_h)
        << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

    // X ticks every 0.1.
    const int x_ticks = static_cast<int>(std::llround(x_max * 10.0));
    for (int t = 0; t <= x_ticks; ++t) {
        const double v = static_cast<double>(t) / 10.0;
        const double px = map_x(v);
        svg << "<line x1=\"" << fmt_coord(px) << "\" y1=\"" << fmt_coord(kMarginTop + plot_h)
            << "\" x2=\"" << fmt_coord(px) << "\" y2=\"" << fmt_coord(kMarginTop + plot_h + 5.0)
            << "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
        char label[16];
        std::snprintf(label, sizeof(label), "%.1f", v);
        svg << "<text x=\"" << fmt_coord(px) << "\" y=\""
            << fmt_coord(kMarginTop + plot_h + 20.0)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << label
            << "</text>\n";
    }
    svg << "<text x=\"" << fmt_coord(kMarginLeft + plot_w / 2.0) << "\" y=\""
        << fmt_coord(kHeight - 14.0)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
           "gamma_prime</text>\n";

    // Y ticks: fixed 0.0..1.0 for normalized output, 6 even steps otherwise.
    const int y_tick_count = 5;
    for (int t = 0; t <= y_tick_count; ++t) {
        const double v = y_min + (y_max - y_min) * static_cast<double>(t) /
                                     static_cast<double>(y_tick_count);
        const double py = map_y(v);
        svg << "<line x1=\"" << fmt_coord(kMarginLeft - 5.0) << "\" y1=\"" << fmt_coord(py)
            << "\" x2=\"" << fmt_coord(kMarginLeft) << "\" y2=\"" << fmt_coord(py)
            << "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
        char label[24];
        std::snprintf(label, sizeof(label), "%.3g", v);
        svg << "<text x=\"" << fmt_coord(kMarginLeft - 9.0) << "\" y=\"" << fmt_coord(py + 4.0)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << label
            << "</text>\n";
        svg << "<line x1=\"" << fmt_coord(kMarginLeft) << "\" y1=\"" << fmt_coord(py) << "\" x2=\""
            << fmt_coord(kMarginLeft + plot_w) << "\" y2=\"" << fmt_coord(py)
            << "\" stroke=\"#dddddd\" stroke-width=\"0.5\"/>\n";
    }
    svg << "<text x=\"18\" y=\"" << fmt_coord(kMarginTop + plot_h / 2.0)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "transform=\"rotate(-90 18 "
        << fmt_coord(kMarginTop + plot_h / 2.0) << ")\">"
        << (spec.normalized ? "normalized HPI" : "raw variance") << "</text>\n";

    // Bands, then lines on top.
    std::size_t color_index = 0;
    for (const auto& [key, series] : by_key) {
        const char* color = kPalette[color_index % kPalette.size()];
        ++color_index;
        if (series.rows.size() < 2) continue;
        std::ostringstream pts;
        for (const SweepRow* r : series.rows) {
            pts << fmt_coord(map_x(r->gamma_prime)) << ','
                << fmt_coord(map_y(r->mean_hpi + r->stderr_hpi)) << ' ';
        }
        for (auto it = series.rows.rbegin(); it != series.rows.rend(); ++it) {
            pts << fmt_coord(map_x((*it)->gamma_prime)) << ','
                << fmt_coord(map_y((*it)->mean_hpi - (*it)->stderr_hpi)) << ' ';
        }
        std::string s = pts.str();
        if (!s.empty()) s.pop_back();
        svg << "<polygon points=\"" << s << "\" fill=\"" << color
            << "\" fill-opacity=\"0.25\" stroke=\"none\"/>\n";
    }
    color_index = 0;
    for (const auto& [key, series] : by_key) {
        const char* color = kPalette[color_index % kPalette.size()];
        ++color_index;
        if (series.rows.size() >= 2) {
            std::ostringstream pts;
            for (const SweepRow* r : series.rows) {
                pts << fmt_coord(map_x(r->gamma_prime)) << ',' << fmt_coord(map_y(r->mean_hpi))
                    << ' ';
            }
            std::string s = pts.str();
            s.pop_back();
            svg << "<polyline points=\"" << s << "\" fill=\"none\" stroke=\"" << color
                << "\" stroke-width=\"1.5\"/>\n";
        } else {
            // Single-point series: markers with an error bar.
            const SweepRow* r = series.rows.front();
            svg << "<line x1=\"" << fmt_coord(map_x(r->gamma_prime)) << "\" y1=\""
                << fmt_coord(map_y(r->mean_hpi - r->stderr_hpi)) << "\" x2=\""
                << fmt_coord(map_x(r->gamma_prime)) << "\" y2=\""
                << fmt_coord(map_y(r->mean_hpi + r->stderr_hpi)) << "\" stroke=\"" << color
                << "\" stroke-width=\"1\"/>\n";
            svg << "<circle cx=\"" << fmt_coord(map_x(r->gamma_prime)) << "\" cy=\""
                << fmt_coord(map_y(r->mean_hpi)) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        }
    }

    // Legend.
    double legend_y = kMarginTop + 10.0;
    const double legend_x = kMarginLeft + plot_w + 16.0;
    color_index = 0;
    for (const auto& [key, series] : by_key) {
        const char* color = kPalette[color_index % kPalette.size()];
        ++color_index;
        svg << "<line x1=\"" << fmt_coord(legend_x) << "\" y1=\"" << fmt_coord(legend_y - 4.0)
            << "\" x2=\"" << fmt_coord(legend_x + 20.0) << "\" y2=\""
            << fmt_coord(legend_y - 4.0) << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << fmt_coord(legend_x + 26.0) << "\" y=\"" << fmt_coord(legend_y)
            << "\" font-family=\"sans-serif\" font-size=\"12\">"
            << xml_escape(series.param + " (" + series.method + ")") << "</text>\n";
        legend_y += 18.0;
    }

    svg << "</svg>\n";
    return svg.str();
}

void render_line_chart(const SweepResult& result, const ChartSpec& spec,
                       const std::filesystem::path& path) {
    write_file(path, render_line_chart_string(result, spec));
}

}  // namespace cped
