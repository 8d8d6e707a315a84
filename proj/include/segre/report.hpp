#ifndef SEGRE_REPORT_HPP
#define SEGRE_REPORT_HPP

#include <cstdint>
#include <string>

#include <json.hpp>

#include <segre/chain.hpp>
#include <segre/nondegeneracy.hpp>
#include <segre/reflection.hpp>

namespace segre {

struct AnalyzeOptions {
    unsigned degree = 10;
    unsigned alpha_max = 2;
    int jet_order = -1; // -1: degree - 2
    std::uint64_t seed = 0;

    unsigned effective_jet_order() const {
        return jet_order < 0 ? (degree >= 2 ? degree - 2 : 0)
                             : static_cast<unsigned>(jet_order);
    }
};

/// Lossless series rendering: {"vars": [...], "cap": k, "terms":
/// [[[exponents], "re", "im"], ...]} with terms in graded-lex order and
/// exact rationals as strings.
nlohmann::ordered_json series_to_json(const TruncatedSeries& s);

/// Full manifold analysis: validation summary, minimality, nondegeneracy.
nlohmann::ordered_json manifold_report(const GenericManifold& m, const AnalyzeOptions& opt,
                                       const std::string& input_name);

/// Map analysis: source/target summaries plus the reflection suite.
nlohmann::ordered_json map_report(const GenericManifold& src, const GenericManifold& tgt,
                                  const FormalMapRecord& f, const AnalyzeOptions& opt,
                                  const std::string& src_name, const std::string& tgt_name,
                                  const std::string& map_name);

/// Flat human-readable rendering of a report document.
std::string render_text(const nlohmann::ordered_json& doc);

/// File-to-string pipelines used by the CLI and the determinism tests.
/// `format` is "json" or "text"; the result ends with a newline.
std::string run_manifold_analysis(const std::string& path, const AnalyzeOptions& opt,
                                  const std::string& format);
std::string run_map_analysis(const std::string& src_path, const std::string& tgt_path,
                             const std::string& map_path, const AnalyzeOptions& opt,
                             const std::string& format);

} // namespace segre

#endif
