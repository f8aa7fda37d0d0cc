#include "hfbs/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hfbs {

std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17e", v);
    return buf;
}

namespace {

[[noreturn]] void fail(const std::string& path, int lineno, const std::string& msg) {
    throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + msg);
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    return out;
}

struct CsvReader {
    std::ifstream in;
    std::string path;
    int lineno = 0;

    explicit CsvReader(const std::string& p) : in(p), path(p) {
        if (!in) throw std::runtime_error("cannot open '" + p + "'");
    }

    void expect_header(const std::string& header) {
        std::string line;
        if (!std::getline(in, line)) fail(path, 1, "empty file");
        ++lineno;
        if (line != header)
            fail(path, lineno, "expected header '" + header + "', got '" + line + "'");
    }

    bool next_row(std::vector<double>& fields, size_t expected) {
        std::string line;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            fields.clear();
            std::stringstream ss(line);
            std::string cell;
            while (std::getline(ss, cell, ',')) {
                char* end = nullptr;
                const double v = std::strtod(cell.c_str(), &end);
                if (end == cell.c_str() || *end != '\0')
                    fail(path, lineno, "bad number '" + cell + "'");
                fields.push_back(v);
            }
            if (fields.size() != expected)
                fail(path, lineno, "expected " + std::to_string(expected) +
                                       " fields, got " + std::to_string(fields.size()));
            return true;
        }
        return false;
    }
};

struct Columns {
    std::vector<std::vector<double>> cols;
    double sample_period = 0.0;
};

Columns read_timed_csv(const std::string& path, const std::string& header,
                       size_t ncols) {
    CsvReader r(path);
    r.expect_header(header);
    Columns c;
    c.cols.resize(ncols - 1);
    std::vector<double> row;
    double t_prev = 0.0;
    bool have_dt = false;
    while (r.next_row(row, ncols)) {
        if (!c.cols[0].empty() && !have_dt) {
            c.sample_period = row[0] - t_prev;
            have_dt = true;
        }
        t_prev = row[0];
        for (size_t i = 1; i < ncols; ++i) c.cols[i - 1].push_back(row[i]);
    }
    if (c.cols[0].empty()) fail(path, r.lineno, "no data rows");
    if (!have_dt) c.sample_period = 1.0; // single row; period is unknowable
    return c;
}

Eigen::VectorXd to_vec(const std::vector<double>& v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(), v.size());
}

void write_timed(std::ofstream& out, const std::string& header, double Ts,
                 std::initializer_list<const Eigen::VectorXd*> cols) {
    out << header << "\n";
    const Eigen::Index n = (*cols.begin())->size();
    for (Eigen::Index k = 0; k < n; ++k) {
        out << format_full(k * Ts);
        for (const auto* c : cols) out << ',' << format_full((*c)[k]);
        out << "\n";
    }
}

} // namespace

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
    auto out = open_out(path);
    write_timed(out, "t,x,y", traj.sample_period, {&traj.x, &traj.y});
}

Trajectory read_trajectory_csv(const std::string& path) {
    const Columns c = read_timed_csv(path, "t,x,y", 3);
    return {to_vec(c.cols[0]), to_vec(c.cols[1]), c.sample_period};
}

void write_command_csv(const std::string& path, const Trajectory& commands) {
    auto out = open_out(path);
    write_timed(out, "t,xdm,ydm", commands.sample_period, {&commands.x, &commands.y});
}

Trajectory read_command_csv(const std::string& path) {
    const Columns c = read_timed_csv(path, "t,xdm,ydm", 3);
    return {to_vec(c.cols[0]), to_vec(c.cols[1]), c.sample_period};
}

void write_output_csv(const std::string& path, const SimulationResult& res,
                      double sample_period) {
    auto out = open_out(path);
    write_timed(out, "t,x,y,theta", sample_period, {&res.x, &res.y, &res.theta});
}

OutputSeries read_output_csv(const std::string& path) {
    const Columns c = read_timed_csv(path, "t,x,y,theta", 4);
    OutputSeries s;
    s.traj = {to_vec(c.cols[0]), to_vec(c.cols[1]), c.sample_period};
    s.theta = to_vec(c.cols[2]);
    return s;
}

void write_error_csv(const std::string& path, const ErrorReport& report,
                     double sample_period) {
    auto out = open_out(path);
    write_timed(out, "t,arclen,ex,ey,contour", sample_period,
                {&report.arc_length, &report.tracking_x, &report.tracking_y,
                 &report.contour});
}

void write_benchmark_csv(const std::string& path,
                         const std::vector<BenchmarkRow>& rows) {
    auto out = open_out(path);
    out << "n,rms_coupled_mm,rms_decoupled_mm,time_coupled_s,time_decoupled_s\n";
    for (const auto& r : rows) {
        if (r.skipped) continue;
        out << r.n << ',' << format_full(r.rms_contour_coupled) << ','
            << format_full(r.rms_contour_decoupled) << ','
            << format_full(r.time_coupled) << ',' << format_full(r.time_decoupled)
            << "\n";
    }
}

PathSpec read_path_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    PathSpec spec;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::stringstream ss(line);
        std::string first;
        if (!(ss >> first)) continue;
        if (first == "closed" && spec.waypoints.empty()) {
            spec.closed = true;
            continue;
        }
        std::stringstream row(line);
        std::string xs, ys, extra;
        if (!std::getline(row, xs, ',') || !std::getline(row, ys, ',') ||
            std::getline(row, extra, ','))
            fail(path, lineno, "expected 'x,y'");
        char* end = nullptr;
        const double x = std::strtod(xs.c_str(), &end);
        if (end == xs.c_str()) fail(path, lineno, "bad x value");
        const double y = std::strtod(ys.c_str(), &end);
        if (end == ys.c_str()) fail(path, lineno, "bad y value");
        spec.waypoints.emplace_back(x, y);
    }
    spec.validate();
    return spec;
}

void write_path_file(const std::string& path, const PathSpec& spec) {
    auto out = open_out(path);
    if (spec.closed) out << "closed\n";
    for (const auto& w : spec.waypoints)
        out << format_full(w.x()) << ',' << format_full(w.y()) << "\n";
}

} // namespace hfbs
