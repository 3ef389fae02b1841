#pragma once

#include <string>
#include <vector>

#include "boa/types.hpp"

namespace boa {

// Drives an external scorer adapter: the command is run through /bin/sh -c,
// gets one frame reference per line on stdin, and must answer with one line
// of `dim` space-separated decimal scores per input line, in order. A writer
// thread feeds stdin while the caller's thread drains stdout, so arbitrarily
// long frame lists cannot deadlock the pipe.
Mat run_scorer(const std::string& command, const std::vector<std::string>& frame_refs,
               int dim);

}  // namespace boa
