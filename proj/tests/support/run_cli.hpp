#pragma once

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace nodal_stab::testing {

struct CliRun {
  std::string out;
  int code = -1;
};

/// Runs the CLI binary with `args` appended; stderr is discarded.
inline CliRun run_cli(const std::string& args) {
  std::string cmd = std::string(NODAL_STAB_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed: " + cmd);
  CliRun run;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) run.out.append(buf.data(), n);
  int status = pclose(pipe);
  run.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return run;
}

inline std::string fixture(const std::string& name) { return std::string(NODAL_STAB_FIXTURES) + "/" + name; }

}  // namespace nodal_stab::testing
