#pragma once

#include <sys/wait.h>

#include <cstdio>
#include <random>
#include <string>

#include "gifs/spec.hpp"

namespace gifs::testing {

inline spec::Built preset_built(const std::string& name, const std::string& param = "") {
  return spec::build(spec::parse_spec(spec::preset(name, param)));
}

inline LevelCertificate preset_certificate(const spec::Built& b) {
  return require_certificate(certify_levels(b.ifs, b.envelope));
}

struct CommandResult {
  int exit_code = -1;
  std::string out;
};

enum class Capture { Stdout, Both, Stderr };

/// Runs a shell command and captures the chosen streams.
inline CommandResult run_command(const std::string& cmd, Capture what = Capture::Stdout) {
  CommandResult r;
  const std::string full = what == Capture::Both     ? cmd + " 2>&1"
                           : what == Capture::Stderr ? cmd + " 2>&1 >/dev/null"
                                                     : cmd + " 2>/dev/null";
  FILE* pipe = ::popen(full.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = ::pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace gifs::testing
