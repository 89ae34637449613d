#include "cavmem/emit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "cavmem/errors.hpp"

namespace cavmem {

std::string fmt_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.11e", x);
    return buf;
}

namespace {

std::string fmt_flag(bool b) { return b ? "1" : "0"; }

void append_complex_columns(std::vector<std::string>& header, const std::string& stem) {
    header.push_back(stem + "_re");
    header.push_back(stem + "_im");
}

}  // namespace

void write_csv(const Table& table, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    auto write_row = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out << ',';
            out << cells[i];
        }
        out << '\n';
    };
    write_row(table.header);
    for (const auto& row : table.rows) write_row(row);
    out.flush();
    if (!out) {
        throw IoError("write failed for '" + path.string() + "'");
    }
}

Table to_table(const SweepResult& result) {
    Table t;
    t.header = {"scheme", "cooperativity", "f_ave",        "f_ave_plus", "f_ave_minus",
                "p_herald_ave", "r1",      "r2",           "delta_phase0", "at_c_pi"};
    for (const SweepRow& r : result.rows) {
        t.rows.push_back({scheme_name(r.scheme), fmt_real(r.c), fmt_real(r.f_ave),
                          fmt_real(r.f_plus), fmt_real(r.f_minus), fmt_real(r.p_herald_ave),
                          fmt_real(r.r1), fmt_real(r.r2), fmt_real(r.delta_phase0),
                          fmt_flag(r.at_c_pi)});
    }
    return t;
}

Table to_table(const BandwidthResult& result) {
    Table t;
    t.header = {"sigma",        "f_ave", "f_ave_plus", "f_ave_minus",
                "p_herald_ave", "r1",    "r2",         "f_decreased_from_prev",
                "p_increased_from_prev"};
    for (std::size_t i = 0; i < result.rows.size(); ++i) {
        const BandwidthRow& r = result.rows[i];
        const bool fdec = i == 0 || r.f_ave < result.rows[i - 1].f_ave;
        const bool pinc = i == 0 || r.p_herald_ave > result.rows[i - 1].p_herald_ave;
        t.rows.push_back({fmt_real(r.sigma), fmt_real(r.f_ave), fmt_real(r.f_plus),
                          fmt_real(r.f_minus), fmt_real(r.p_herald_ave), fmt_real(r.r1),
                          fmt_real(r.r2), fmt_flag(fdec), fmt_flag(pinc)});
    }
    return t;
}

Table to_table(const PopulationResult& result) {
    Table t;
    t.header = {"convention", "sigma", "peak_population", "peak_time"};
    for (const PopulationRow& r : result.rows) {
        t.rows.push_back({duration_convention_name(r.convention), fmt_real(r.sigma),
                          fmt_real(r.peak_population), fmt_real(r.peak_time)});
    }
    return t;
}

Table to_table(const AmplitudeTrajectory& traj) {
    Table t;
    t.header = {"t"};
    append_complex_columns(t.header, "psi_c");
    append_complex_columns(t.header, "psi_e");
    const bool full = !traj.psi_q.empty();
    if (full) append_complex_columns(t.header, "psi_q");
    append_complex_columns(t.header, "a_in");
    append_complex_columns(t.header, "b_out");
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        std::vector<std::string> row{fmt_real(traj.times[i])};
        auto push = [&](std::complex<double> z) {
            row.push_back(fmt_real(z.real()));
            row.push_back(fmt_real(z.imag()));
        };
        push(traj.psi_c[i]);
        push(traj.psi_e[i]);
        if (full) push(traj.psi_q[i]);
        push(traj.a_in[i]);
        push(traj.b_out[i]);
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table to_table(const ReflectionSpectrum& rs, const PhaseReport& pr) {
    Table t;
    t.header = {"omega", "r1_re", "r1_im", "r2_re", "r2_im", "theta1", "theta2", "delta_phase"};
    for (std::size_t i = 0; i < rs.grid.size(); ++i) {
        t.rows.push_back({fmt_real(rs.grid[i]), fmt_real(rs.r1[i].real()),
                          fmt_real(rs.r1[i].imag()), fmt_real(rs.r2[i].real()),
                          fmt_real(rs.r2[i].imag()), fmt_real(pr.theta1[i]),
                          fmt_real(pr.theta2[i]), fmt_real(pr.delta_phase[i])});
    }
    return t;
}

Table to_table(const LoadingReport& report) {
    Table t;
    t.header = {"r1",      "r2",      "k_plus", "k_minus", "f_plus",
                "f_minus", "f_weighted", "p_herald"};
    for (const char* stem : {"rho_plus_00", "rho_plus_01", "rho_plus_10", "rho_plus_11",
                             "rho_minus_00", "rho_minus_01", "rho_minus_10", "rho_minus_11"}) {
        append_complex_columns(t.header, stem);
    }
    std::vector<std::string> row{fmt_real(report.r1),      fmt_real(report.r2),
                                 fmt_real(report.k_plus),  fmt_real(report.k_minus),
                                 fmt_real(report.f_plus),  fmt_real(report.f_minus),
                                 fmt_real(report.f_weighted()), fmt_real(report.p_herald)};
    for (const Mat2* rho : {&report.rho_plus, &report.rho_minus}) {
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                row.push_back(fmt_real((*rho)[i][j].real()));
                row.push_back(fmt_real((*rho)[i][j].imag()));
            }
        }
    }
    t.rows.push_back(std::move(row));
    return t;
}

void emit_csv(const SweepResult& r, const std::filesystem::path& p) { write_csv(to_table(r), p); }
void emit_csv(const BandwidthResult& r, const std::filesystem::path& p) {
    write_csv(to_table(r), p);
}
void emit_csv(const PopulationResult& r, const std::filesystem::path& p) {
    write_csv(to_table(r), p);
}
void emit_csv(const AmplitudeTrajectory& r, const std::filesystem::path& p) {
    write_csv(to_table(r), p);
}
void emit_csv(const ReflectionSpectrum& rs, const PhaseReport& pr,
              const std::filesystem::path& p) {
    write_csv(to_table(rs, pr), p);
}
void emit_csv(const LoadingReport& r, const std::filesystem::path& p) {
    write_csv(to_table(r), p);
}

namespace {

// Minimal self-contained SVG scatter/line plot.
class SvgPlot {
public:
    SvgPlot(std::string x_label, std::string y_label)
        : x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

    struct Series {
        std::string color;
        std::vector<std::pair<double, double>> points;
        std::vector<double> radii;
        std::vector<std::string> labels;
        std::string name;
    };

    void add_series(Series s) { series_.push_back(std::move(s)); }

    std::string render() const {
        double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
        for (const Series& s : series_) {
            for (const auto& [x, y] : s.points) {
                xmin = std::min(xmin, x);
                xmax = std::max(xmax, x);
                ymin = std::min(ymin, y);
                ymax = std::max(ymax, y);
            }
        }
        if (xmin > xmax) {
            xmin = 0.0;
            xmax = 1.0;
            ymin = 0.0;
            ymax = 1.0;
        }
        if (xmax == xmin) {
            xmin -= 0.5;
            xmax += 0.5;
        }
        if (ymax == ymin) {
            ymin -= 0.5;
            ymax += 0.5;
        }
        const double mx = 0.05 * (xmax - xmin);
        const double my = 0.05 * (ymax - ymin);
        xmin -= mx;
        xmax += mx;
        ymin -= my;
        ymax += my;

        const double width = 640.0, height = 480.0, left = 70.0, right = 20.0, top = 30.0,
                     bottom = 50.0;
        auto sx = [&](double x) {
            return left + (x - xmin) / (xmax - xmin) * (width - left - right);
        };
        auto sy = [&](double y) {
            return height - bottom - (y - ymin) / (ymax - ymin) * (height - top - bottom);
        };
        auto num = [](double v) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.6g", v);
            return std::string(buf);
        };

        std::ostringstream out;
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
            << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
        out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
        out << "<g stroke=\"black\" stroke-width=\"1\">\n";
        out << "<line x1=\"" << left << "\" y1=\"" << height - bottom << "\" x2=\""
            << width - right << "\" y2=\"" << height - bottom << "\"/>\n";
        out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
            << height - bottom << "\"/>\n";
        out << "</g>\n";

        const int nticks = 5;
        out << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"black\">\n";
        for (int i = 0; i <= nticks; ++i) {
            const double fx = xmin + (xmax - xmin) * i / nticks;
            const double fy = ymin + (ymax - ymin) * i / nticks;
            out << "<line x1=\"" << sx(fx) << "\" y1=\"" << height - bottom << "\" x2=\""
                << sx(fx) << "\" y2=\"" << height - bottom + 4 << "\" stroke=\"black\"/>\n";
            out << "<text x=\"" << sx(fx) << "\" y=\"" << height - bottom + 16
                << "\" text-anchor=\"middle\">" << num(fx) << "</text>\n";
            out << "<line x1=\"" << left - 4 << "\" y1=\"" << sy(fy) << "\" x2=\"" << left
                << "\" y2=\"" << sy(fy) << "\" stroke=\"black\"/>\n";
            out << "<text x=\"" << left - 6 << "\" y=\"" << sy(fy) + 4
                << "\" text-anchor=\"end\">" << num(fy) << "</text>\n";
        }
        out << "<text x=\"" << (left + width - right) / 2 << "\" y=\"" << height - 12
            << "\" text-anchor=\"middle\">" << x_label_ << "</text>\n";
        out << "<text x=\"16\" y=\"" << (top + height - bottom) / 2
            << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
            << (top + height - bottom) / 2 << ")\">" << y_label_ << "</text>\n";
        out << "</g>\n";

        double legend_y = top + 8.0;
        for (const Series& s : series_) {
            if (s.points.empty()) continue;
            out << "<polyline fill=\"none\" stroke=\"" << s.color
                << "\" stroke-width=\"1.5\" points=\"";
            for (const auto& [x, y] : s.points) out << sx(x) << "," << sy(y) << " ";
            out << "\"/>\n";
            for (std::size_t i = 0; i < s.points.size(); ++i) {
                out << "<circle cx=\"" << sx(s.points[i].first) << "\" cy=\""
                    << sy(s.points[i].second) << "\" r=\"" << s.radii[i] << "\" fill=\""
                    << s.color << "\"/>\n";
                if (!s.labels[i].empty()) {
                    out << "<text font-family=\"sans-serif\" font-size=\"10\" x=\""
                        << sx(s.points[i].first) + 8 << "\" y=\"" << sy(s.points[i].second) - 6
                        << "\" fill=\"" << s.color << "\">" << s.labels[i] << "</text>\n";
                }
            }
            out << "<text font-family=\"sans-serif\" font-size=\"12\" x=\"" << width - right - 8
                << "\" y=\"" << legend_y << "\" text-anchor=\"end\" fill=\"" << s.color << "\">"
                << s.name << "</text>\n";
            legend_y += 16.0;
        }
        out << "</svg>\n";
        return out.str();
    }

private:
    std::string x_label_, y_label_;
    std::vector<Series> series_;
};

void write_text(const std::string& text, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << text;
    out.flush();
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

std::string short_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

}  // namespace

void emit_svg(const SweepResult& result, const std::filesystem::path& path) {
    SvgPlot plot("P_herald (Bloch average)", "F (Bloch average, herald weighted)");
    const std::map<Scheme, std::string> colors{{Scheme::PushPull, "#1f77b4"},
                                               {Scheme::OnOff, "#d62728"}};
    for (const auto& [scheme, color] : colors) {
        SvgPlot::Series series;
        series.color = color;
        series.name = scheme_name(scheme);
        for (const SweepRow& r : result.rows) {
            if (r.scheme != scheme) continue;
            series.points.emplace_back(r.p_herald_ave, r.f_ave);
            // C_pi marker at twice the trajectory point radius.
            series.radii.push_back(r.at_c_pi ? 6.0 : 3.0);
            std::string label;
            if (r.at_c_pi) label = "C_pi=" + short_num(r.c);
            series.labels.push_back(label);
        }
        // Extremal C labels at the endpoints.
        std::size_t idx = 0;
        double cmin = 0.0, cmax = 0.0;
        bool first = true;
        for (const SweepRow& r : result.rows) {
            if (r.scheme != scheme) continue;
            if (first) {
                cmin = r.c;
                first = false;
            }
            cmax = r.c;
            ++idx;
        }
        if (idx > 0) {
            series.labels.front() = "C=" + short_num(cmin);
            if (idx > 1 && series.labels.back().empty()) {
                series.labels.back() = "C=" + short_num(cmax);
            }
            series.radii.front() = std::max(series.radii.front(), 4.5);
            series.radii.back() = std::max(series.radii.back(), 4.5);
            plot.add_series(std::move(series));
        }
    }
    write_text(plot.render(), path);
}

void emit_svg(const BandwidthResult& result, const std::filesystem::path& path) {
    SvgPlot plot("P_herald (Bloch average)", "F (Bloch average, herald weighted)");
    SvgPlot::Series series;
    series.color = "#1f77b4";
    series.name = "bandwidth scan";
    for (const BandwidthRow& r : result.rows) {
        series.points.emplace_back(r.p_herald_ave, r.f_ave);
        series.radii.push_back(3.0);
        series.labels.push_back("sigma=" + short_num(r.sigma));
    }
    if (!series.points.empty()) plot.add_series(std::move(series));
    write_text(plot.render(), path);
}

}  // namespace cavmem
