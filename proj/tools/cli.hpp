#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lcf::cli {

/// Exit codes: 0 success, 1 usage or parse error, 2 insufficient precision,
/// 3 failed hypothesis or certificate.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace lcf::cli
