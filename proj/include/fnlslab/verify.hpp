#ifndef FNLSLAB_VERIFY_HPP
#define FNLSLAB_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace fnls {

struct CheckResult {
    std::string module;
    std::string name;
    bool pass = false;
    double observed = 0.0;
    double bound = 0.0;
    std::string detail;
};

/// Runs the built-in property suite (desk-scale versions of every module
/// invariant).  filter, when nonempty, restricts to one module.
std::vector<CheckResult> run_verify(const std::string& filter = "",
                                    int threads = 1, std::uint64_t seed = 1);

}  // namespace fnls

#endif
