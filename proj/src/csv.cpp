#include <cstdio>
#include <string>

#include "gammatime/ext_real.hpp"

namespace gammatime {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace gammatime
