#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sctkit {

// Exit status: 0 property holds, 1 refuted, 2 error.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sctkit
