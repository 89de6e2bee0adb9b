#ifndef TAMECHROMA_CLI_CORE_HPP
#define TAMECHROMA_CLI_CORE_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace tamechroma {

// Dispatches a full command line (without argv[0]). Exit codes: 0 success,
// 1 domain error, 2 certification failure, 3 budget timeout, 64 usage.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace tamechroma

#endif
