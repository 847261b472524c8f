#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "support.hpp"

namespace dcx::testing {

std::uint64_t g_seed = 20261016;

}  // namespace dcx::testing

// Accepts --seed=N (or DIAGCX_SEED) for the randomized property tests; all
// other arguments go to doctest.
int main(int argc, char** argv) {
  if (const char* env = std::getenv("DIAGCX_SEED")) dcx::testing::g_seed = std::stoull(env);
  std::vector<char*> rest;
  for (int i = 0; i < argc; ++i) {
    if (std::strncmp(argv[i], "--seed=", 7) == 0) {
      dcx::testing::g_seed = std::stoull(argv[i] + 7);
      continue;
    }
    rest.push_back(argv[i]);
  }
  doctest::Context ctx(static_cast<int>(rest.size()), rest.data());
  return ctx.run();
}
