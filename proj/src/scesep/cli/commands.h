// scesep/cli/commands.h

// Copyright 2026  The scesep authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef SCESEP_CLI_COMMANDS_H_
#define SCESEP_CLI_COMMANDS_H_

namespace scesep {
namespace cli {

// Entry point for the scesep binary: subcommands mix / train / separate /
// evaluate / bench / config.  Returns the process exit code.
int run_cli(int argc, char **argv);

}  // namespace cli
}  // namespace scesep

#endif  // SCESEP_CLI_COMMANDS_H_
