#pragma once
// ============================================================================
// Deterministic CSV output.
//
// Every table starts with exactly one metadata line
//     # schema=1 key=value key=value ...
// carrying the full run configuration (space, parameters, seed, resolved
// resolution parameters) and nothing else -- no timestamps, no hostnames, no
// library versions -- so identical configurations produce byte-identical
// files.  Floating point cells are printed with "%.12g" in the C locale;
// files are written to "<path>.tmp" and renamed into place so readers never
// observe a partial table.
// ============================================================================

#include "symstri/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace symstri {

std::string fmt_g12(double v);
std::string fmt_ll(long long v);

struct RunConfig {
    std::vector<std::pair<std::string, std::string>> kv;

    void add(const std::string& key, const std::string& value) { kv.emplace_back(key, value); }
    void add(const std::string& key, const char* value) { kv.emplace_back(key, value); }
    void add(const std::string& key, long long value) { kv.emplace_back(key, fmt_ll(value)); }
    void add(const std::string& key, int value) { kv.emplace_back(key, fmt_ll(value)); }
    void add(const std::string& key, double value) { kv.emplace_back(key, fmt_g12(value)); }
    void add(const std::string& key, const Rat& value) { kv.emplace_back(key, rat_str(value)); }
    void add(const std::string& key, bool value) { kv.emplace_back(key, value ? "true" : "false"); }

    /** The single "# schema=1 ..." metadata line (no trailing newline). */
    std::string metadata_line() const;
};

/** Atomically write metadata line + header + rows.  Throws std::runtime_error
 *  on I/O failure.  Cells must already be rendered (fmt_g12 / fmt_ll / ...). */
void write_csv(const std::string& path, const RunConfig& config,
               const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

/** The full table as a string (exact bytes write_csv would produce). */
std::string render_csv(const RunConfig& config, const std::vector<std::string>& header,
                       const std::vector<std::vector<std::string>>& rows);

} // namespace symstri
