#pragma once

#include <cstdio>
#include <fstream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <sstream>
#include <string>

#include "fracspec/errors.hpp"
#include "fracspec/model_problems.hpp"

namespace fracspec::io {

/// 17 significant digits, enough for an exact round trip.
inline std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Header `t,<x_0>,...,<x_{n-1}>`, then one row per time.
inline void write_field_csv(std::ostream& os, const FieldGrid& f)
{
    os << 't';
    for (double x : f.x)
        os << ',' << format_double(x);
    os << '\n';
    const std::size_t nx = f.x.size();
    for (std::size_t i = 0; i < f.t.size(); ++i) {
        os << format_double(f.t[i]);
        for (std::size_t j = 0; j < nx; ++j)
            os << ',' << format_double(f.values[i * nx + j]);
        os << '\n';
    }
}

inline std::string field_csv(const FieldGrid& f)
{
    std::ostringstream os;
    write_field_csv(os, f);
    return os.str();
}

/// Header `t,<name>`, one row per time.
inline std::string series_csv(std::span<const double> t, std::span<const double> values, const std::string& name)
{
    std::ostringstream os;
    os << "t," << name << '\n';
    for (std::size_t i = 0; i < t.size(); ++i)
        os << format_double(t[i]) << ',' << format_double(values[i]) << '\n';
    return os.str();
}

inline void write_text_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open " + path + " for writing");
    out << content;
    if (!out)
        throw std::runtime_error("write to " + path + " failed");
}

}  // namespace fracspec::io
