// One PASS/FAIL line per acceptance check; exits non-zero if any fails.

#include <cstdio>

#include "seqalg/acceptance.hpp"

int main() {
  int failed = 0;
  for (const auto& c : seqalg::acceptance_checks()) {
    const auto r = seqalg::run_check(c);
    std::printf("%s %s (%.3fs)%s%s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.seconds,
                r.detail.empty() ? "" : ": ", r.detail.c_str());
    failed += !r.pass;
  }
  std::printf("%d of %zu checks failed\n", failed, seqalg::acceptance_checks().size());
  return failed ? 1 : 0;
}
