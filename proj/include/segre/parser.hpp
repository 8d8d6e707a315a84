#ifndef SEGRE_PARSER_HPP
#define SEGRE_PARSER_HPP

#include <map>
#include <string>
#include <vector>

#include <segre/series.hpp>

namespace segre {

/// Parses a polynomial expression over the named variables into a series.
/// Accepts integers, `i`, `+ - * / ^ ( )`; division only by nonzero
/// constants; exponents are nonnegative integers. `line` seeds error
/// positions.
TruncatedSeries parse_polynomial(const std::string& text,
                                 const std::vector<std::string>& vars, unsigned cap,
                                 int line = 0);

/// Contents of a manifold input file: `n`, `codim`, optional `vars`
/// (display names), and `codim` polynomial strings in z1..zn, zb1..zbn.
struct ManifoldFile {
    unsigned n = 0;
    unsigned codim = 0;
    std::vector<std::string> display_names;          // empty if not declared
    std::vector<std::pair<std::string, int>> defining; // text + line number
};

/// Contents of a formal-map input file: `source`/`target` manifold
/// references and the component polynomials in z1..zn of the source.
struct MapFile {
    std::string source_ref;
    std::string target_ref;
    std::vector<std::pair<std::string, int>> components;
};

ManifoldFile read_manifold_file(const std::string& text);
MapFile read_map_file(const std::string& text);

std::string slurp_file(const std::string& path);

} // namespace segre

#endif
