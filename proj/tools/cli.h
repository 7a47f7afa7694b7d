// Copyright 2026 The maskdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. RunCli is the whole program minus process setup,
// so tests can drive it with in-memory streams.
//
// Exit codes: 0 success, 1 I/O or input-format failure, 2 precondition or
// regime error, 3 audit violation or table mismatch.

#ifndef MASKDP_TOOLS_CLI_H_
#define MASKDP_TOOLS_CLI_H_

#include <ostream>

namespace maskdp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitPrecondition = 2;
inline constexpr int kExitViolation = 3;

// Environment variable holding the default seed; --seed overrides it.
inline constexpr char kSeedEnvVar[] = "MASKDP_SEED";

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

}  // namespace maskdp::cli

#endif  // MASKDP_TOOLS_CLI_H_
