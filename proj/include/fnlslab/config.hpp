#ifndef FNLSLAB_CONFIG_HPP
#define FNLSLAB_CONFIG_HPP

#include <cstdint>
#include <map>
#include <string>

#include "fnlslab/grid.hpp"
#include "fnlslab/nonlinearity.hpp"

namespace fnls {

/// Flat sectioned key = value experiment description.  Experiments are
/// archived by config file: the CLI takes no positional numerics.
struct ExperimentConfig {
    std::string scenario;
    std::uint64_t seed = 0;
    std::map<std::string, std::map<std::string, std::string>> sections;
    std::string source_text;
    std::string hash;  // FNV-1a 64 of the source bytes, hex

    bool has(const std::string& section, const std::string& key) const;
    std::string get_str(const std::string& section, const std::string& key,
                        const std::string& fallback) const;
    double get_num(const std::string& section, const std::string& key,
                   double fallback) const;
    int get_int(const std::string& section, const std::string& key,
                int fallback) const;
    bool get_bool(const std::string& section, const std::string& key,
                  bool fallback) const;
    /// Comma-separated list of reals.
    std::vector<double> get_list(const std::string& section,
                                 const std::string& key,
                                 const std::vector<double>& fallback) const;

    GridPtr grid() const;
    EquationSpec equation() const;
    Field datum(const GridPtr& g) const;
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

/// Cross-field validation; throws std::invalid_argument whose message names
/// the violated mathematical condition.  theorem_scope=true additionally
/// enforces the globalization hypotheses for scenarios that need them.
void validate_config(const ExperimentConfig& config);

std::string fnv1a_hex(const std::string& bytes);

}  // namespace fnls

#endif
