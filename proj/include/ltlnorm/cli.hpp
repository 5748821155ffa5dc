#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ltlnorm/corpus.hpp"

namespace ltlnorm {

enum ExitCode : int {
    kExitOk = 0,
    kExitDisagreement = 1,
    kExitParseError = 2,
    kExitPrecondition = 3,
};

// Entry point of the ltlnorm tool. args excludes the program name. The hooks
// are forwarded to the check subcommand.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const CheckHooks& hooks = {});

}  // namespace ltlnorm
