#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

#include "sobrep/acceptance.hpp"

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::strcmp(argv[i], "--criterion") == 0) only = std::atoi(argv[i + 1]);
  bool ok = true;
  for (int id = 1; id <= sobrep::kCriterionCount; ++id) {
    if (only && id != only) continue;
    const auto r = sobrep::run_criterion(id);
    std::printf("%s\n", sobrep::summary_line(r).c_str());
    std::fflush(stdout);
    ok = ok && r.pass;
  }
  return ok ? 0 : 1;
}
