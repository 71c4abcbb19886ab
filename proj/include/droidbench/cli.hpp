// Copyright 2026 The Droidbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DROIDBENCH_CLI_HPP
#define DROIDBENCH_CLI_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "droidbench/session.hpp"

namespace droidbench {

// Runs the command line `args` (without the program name). Returns the exit
// code: 0 on success, 1 on a runtime error, 2 on a usage error. The config
// file named by --config, or else by DROIDBENCH_CONFIG, supplies defaults
// for flags that are not given.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

// Replays a generated corpus through the orchestrator on a scripted device
// and writes outcomes.tsv, success_stats.txt, session.log and the logs of
// completed runs (logs/<app>.log) into out_dir. Any previous logs/ directory
// there is replaced.
BatchResult run_corpus_session(const std::filesystem::path& corpus_dir,
                               const std::string& env,
                               const SessionConfig& config,
                               const std::filesystem::path& out_dir);

}  // namespace droidbench

#endif  // DROIDBENCH_CLI_HPP
