#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include "fuglede/certificates.hpp"

int main(int argc, char** argv) {
  // Run the whole suite with the Fourier-side tiling criterion shadowing
  // the direct-sum check; any disagreement aborts loudly.
  fuglede::set_tiling_cross_check(true);
  doctest::Context context(argc, argv);
  return context.run();
}
