#include "fnlslab/report.hpp"

#include <fstream>
#include <sstream>

namespace fnls {

ResultsDoc::ResultsDoc(const ExperimentConfig& config,
                       const std::string& version) {
    doc_["meta"] = {
        {"version", version},
        {"scenario", config.scenario},
        {"seed", config.seed},
        {"config_hash", config.hash},
    };
    if (config.has("grid", "n")) {
        doc_["meta"]["grid"] = {
            {"n", config.get_int("grid", "n", 2)},
            {"L", config.get_num("grid", "l", 8.0)},
            {"M", config.get_int("grid", "m", 128)},
        };
    }
    doc_["results"] = nlohmann::json::array();
    doc_["files"] = nlohmann::json::array();
}

void ResultsDoc::add(const std::string& name, double value,
                     const std::string& source) {
    doc_["results"].push_back(
        {{"name", name}, {"value", value}, {"source", source}});
}

void ResultsDoc::add(const std::string& name, const nlohmann::json& value,
                     const std::string& source) {
    doc_["results"].push_back(
        {{"name", name}, {"value", value}, {"source", source}});
}

void ResultsDoc::add_file(const std::string& kind, const std::string& path) {
    doc_["files"].push_back({{"kind", kind}, {"path", path}});
}

std::string ResultsDoc::dump() const { return doc_.dump(2) + "\n"; }

void ResultsDoc::write(const std::string& path) const {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    os << dump();
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    auto emit = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) os << ',';
            const std::string& c = cells[i];
            if (c.find_first_of(",\"\r\n") != std::string::npos) {
                os << '"';
                for (char ch : c) {
                    if (ch == '"') os << '"';
                    os << ch;
                }
                os << '"';
            } else {
                os << c;
            }
        }
        os << "\r\n";
    };
    emit(header);
    for (const auto& row : rows) emit(row);
}

std::string format_full(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace fnls
