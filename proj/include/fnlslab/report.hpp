#ifndef FNLSLAB_REPORT_HPP
#define FNLSLAB_REPORT_HPP

#include <json.hpp>

#include <string>
#include <vector>

#include "fnlslab/config.hpp"

namespace fnls {

/// Results document: a reproducibility block plus named values, each tagged
/// with the operation that produced it.  Serialization is deterministic
/// (object keys are sorted, doubles round-trip shortest); no timestamps.
class ResultsDoc {
public:
    ResultsDoc(const ExperimentConfig& config, const std::string& version);

    void add(const std::string& name, double value, const std::string& source);
    void add(const std::string& name, const nlohmann::json& value,
             const std::string& source);
    void add_file(const std::string& kind, const std::string& path);
    nlohmann::json& meta() { return doc_["meta"]; }

    std::string dump() const;
    void write(const std::string& path) const;

private:
    nlohmann::json doc_;
};

/// RFC-4180 CSV (CRLF line endings).  Cells are written verbatim; numeric
/// cells should be preformatted with full precision.
void write_csv(const std::string& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

std::string format_full(double v);

}  // namespace fnls

#endif
