#include "symstri/csvio.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace symstri {

std::string fmt_g12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string fmt_ll(long long v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%lld", v);
    return buf;
}

std::string RunConfig::metadata_line() const {
    std::string line = "# schema=1";
    for (const auto& [k, v] : kv) {
        line += ' ';
        line += k;
        line += '=';
        // Values containing spaces (e.g. file paths) are quoted.
        if (v.find(' ') != std::string::npos) {
            line += '\'';
            line += v;
            line += '\'';
        } else {
            line += v;
        }
    }
    return line;
}

std::string render_csv(const RunConfig& config, const std::vector<std::string>& header,
                       const std::vector<std::vector<std::string>>& rows) {
    std::string out = config.metadata_line();
    out += '\n';
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out += ',';
        out += header[i];
    }
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += row[i];
        }
        out += '\n';
    }
    return out;
}

void write_csv(const std::string& path, const RunConfig& config,
               const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open " + tmp + " for writing");
        f << render_csv(config, header, rows);
        f.flush();
        if (!f) throw std::runtime_error("write failed on " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("rename " + tmp + " -> " + path + " failed");
}

} // namespace symstri
