/*
   Copyright 2026 The polarq authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef POLARQ_ACCEPTANCE_HPP
#define POLARQ_ACCEPTANCE_HPP

#include <ostream>
#include <string>

namespace polarq::acceptance {

// End-to-end verification suite: ten independent checks, each printing a
// single PASS/FAIL line. Ships in the library so users can re-run it
// against their build (also wired into ctest and the CLI's `verify`).

struct Options {
    std::string data_dir = "data";  // repo data directory (constellation packings)
    std::string work_dir = ".";     // scratch directory for generated files
};

/// Runs all checks; returns the number of failures.
int run_all(const Options& opt, std::ostream& out);

} // namespace polarq::acceptance

#endif
