// dimcalc/exec.hpp - query execution and report rendering
#pragma once

#include <iosfwd>

#include "dimcalc/parser.hpp"

namespace dimcalc {

struct ExecOptions {
    bool json = false;
    bool trace = false;
};

/// Runs every query of the program; report goes to `out`, diagnostics to
/// `err`. Returns the process exit status: 0 on success, 1 on any
/// validation error, 2 on an internal consistency failure.
int execute(const SourceProgram& program, const ExecOptions& options, std::ostream& out,
            std::ostream& err);

}  // namespace dimcalc
