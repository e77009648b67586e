#include "cubext/interval.hpp"

#include <cstdio>
#include <memory>

namespace cubext {

std::string Mpfr::to_string(int digits) const {
  char* buf = nullptr;
  if (mpfr_asprintf(&buf, "%.*Rg", digits, v_) < 0) return "?";
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

std::string to_string(const Interval<Mpfr>& iv, int digits) {
  return "[" + iv.lo().to_string(digits) + ", " + iv.hi().to_string(digits) + "]";
}

std::string to_string(const Interval<double>& iv) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "[%.17g, %.17g]", iv.lo(), iv.hi());
  return buf;
}

}  // namespace cubext
