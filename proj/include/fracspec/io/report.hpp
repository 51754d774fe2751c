#pragma once

// JSON verification report. Contains nothing that varies between runs of the
// same build (no timings, timestamps or thread counts), so reports can be
// compared byte for byte.

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "fracspec/detail/extended_float.hpp"
#include "fracspec/verification.hpp"
#include "fracspec/version.hpp"

namespace fracspec::io {

inline constexpr int report_schema_version = 1;

inline std::string compiler_id()
{
#if defined(__clang__)
    return "clang " __clang_version__;
#elif defined(__GNUC__)
    return "gcc " __VERSION__;
#else
    return "unknown";
#endif
}

inline nlohmann::ordered_json verification_report(verify::Suite suite, const std::vector<verify::CheckResult>& checks)
{
    nlohmann::ordered_json j;
    j["schema_version"] = report_schema_version;
    j["suite"] = verify::to_string(suite);
    j["environment"] = {{"library_version", version},
                        {"compiler", compiler_id()},
                        {"float128", fracspec::detail::have_float128}};
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    std::size_t passed = 0;
    for (const verify::CheckResult& c : checks) {
        list.push_back({{"id", c.id},
                        {"criterion", c.criterion},
                        {"measured", c.measured},
                        {"tolerance", c.tolerance},
                        {"comparison", verify::to_string(c.comparison)},
                        {"pass", c.pass}});
        passed += c.pass ? 1 : 0;
    }
    j["checks"] = list;
    j["summary"] = {{"total", checks.size()}, {"passed", passed}, {"failed", checks.size() - passed}};
    return j;
}

}  // namespace fracspec::io
