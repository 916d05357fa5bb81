#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "selberg/series_core.hpp"

namespace selberg {

// Parses the JSON spec format. Relative coefficient-file paths resolve
// against base_dir. Throws ParseError or ValidationError.
SeriesSpec parse_spec(const std::string& json_text,
                      const std::filesystem::path& base_dir = {});

// Reads a spec file; "builtin:NAME" selects the catalogue entry instead.
SeriesSpec load_spec(const std::string& path_or_builtin);

// Inverse of parse_spec. File sources keep their original path.
std::string spec_to_json(const SeriesSpec& spec);

// One "re im" pair per line (or a single real); blank lines and lines
// starting with '#' are skipped.
std::vector<Complex> read_coefficient_file(const std::filesystem::path& path);

}  // namespace selberg
