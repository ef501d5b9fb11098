#pragma once

// Flat-file output: CSV rows with %.12g numbers, '.' decimal separator and
// '\n' line endings, written through a temporary file and renamed on success.

#include "correlations.hpp"
#include "dynamics.hpp"
#include "errors.hpp"
#include "witness.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace cbath {

/// %.12g, independent of the global locale.
inline std::string format_number(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    std::string s(buf);
    for (char& c : s)
        if (c == ',')
            c = '.';
    return s;
}

inline std::string csv_row(const std::vector<double>& values)
{
    std::string row;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i)
            row += ',';
        row += format_number(values[i]);
    }
    row += '\n';
    return row;
}

/// Writes `content` to `path` atomically (temp file in the same directory,
/// then rename). "-" writes to stdout.
inline void write_file_atomic(const std::string& path, std::string_view content)
{
    if (path == "-") {
        std::fwrite(content.data(), 1, content.size(), stdout);
        std::fflush(stdout);
        return;
    }
    const std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out)
            throw std::runtime_error("write to " + tmp.string() + " failed");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw std::runtime_error("cannot rename " + tmp.string() + " to " + target.string()
                                 + ": " + ec.message());
    }
}

inline std::string trajectory_csv_header()
{
    std::string h = "t";
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const std::string idx = std::to_string(i) + std::to_string(j);
            h += ",re_rho_" + idx + ",im_rho_" + idx;
        }
    h += ",trace,min_eig\n";
    return h;
}

/// One row per sample: t, 16 complex entries (row-major, re/im interleaved),
/// trace, minimum eigenvalue.
inline std::string trajectory_csv(const Trajectory& traj)
{
    std::string out = trajectory_csv_header();
    std::vector<double> row;
    for (std::size_t s = 0; s < traj.states.size(); ++s) {
        const ComplexMatrix& m = traj.states[s].matrix();
        row.clear();
        row.push_back(traj.times[s]);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                row.push_back(m(i, j).real());
                row.push_back(m(i, j).imag());
            }
        row.push_back(m.trace().real());
        row.push_back(hermitian_eigenvalues(m).minCoeff());
        out += csv_row(row);
    }
    return out;
}

inline constexpr std::string_view correlation_csv_header =
    "t,negativity,mutual_info,discord,classical_corr,theta_opt,phi_opt\n";

inline std::string correlation_csv_row(double t, const CorrelationSample& c)
{
    return csv_row({t, c.negativity, c.mutual_info, c.discord, c.classical_corr,
                    c.optimal_angles.theta, c.optimal_angles.phi});
}

/// p,q,entangling,excess[,negativity]
inline std::string region_csv(const RegionScan& scan, bool with_negativity)
{
    std::string out = with_negativity ? "p,q,entangling,excess,negativity\n"
                                      : "p,q,entangling,excess\n";
    for (const auto& pt : scan.grid) {
        out += format_number(pt.p) + ',' + format_number(pt.q) + ','
               + (pt.entangling ? "1" : "0") + ',' + format_number(pt.excess);
        if (with_negativity)
            out += ',' + format_number(pt.negativity.value_or(0.0));
        out += '\n';
    }
    return out;
}

} // namespace cbath
