#include <cmath>
#include <numeric>
#include <sstream>

#include "fspectra/error.hpp"
#include "fspectra/theorem.hpp"

namespace fspectra {

IndexBound index_lower_bound(int d, int b1) {
  if (d < 2) throw Error(ErrorCode::kInvalidDimension, "d must be at least 2");
  if (b1 < 0) throw Error(ErrorCode::kInvalidArgument, "b1 must be non-negative");
  IndexBound out;
  const long num = 2L * b1;
  const long den = static_cast<long>(d) * (d - 1);
  const long g = num == 0 ? den : std::gcd(num, den);
  out.numerator = num / g;
  out.denominator = den / g;
  out.ceiling = static_cast<int>((out.numerator + out.denominator - 1) / out.denominator);
  return out;
}

PinchingResult pinching_check(const std::vector<double>& k, int m) {
  if (m < 1) throw Error(ErrorCode::kInvalidDimension, "m must be at least 1");
  if (static_cast<int>(k.size()) != m + 1) {
    throw Error(ErrorCode::kInvalidArgument, "expected m + 1 principal curvatures");
  }
  PinchingResult out;
  out.threshold = std::sqrt((m + 1) / 2.0);
  for (std::size_t i = 1; i < k.size(); ++i) {
    if (k[i] < k[i - 1]) throw Error(ErrorCode::kInvalidArgument, "principal curvatures must be ascending");
  }
  if (!(k.front() > 0.0)) {
    out.reason = "not convex";
    out.ratio = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  out.ratio = k.back() / k.front();
  out.pass = out.ratio < out.threshold;
  if (!out.pass) {
    std::ostringstream os;
    os << "ratio " << out.ratio << " is not below " << out.threshold;
    out.reason = os.str();
  }
  return out;
}

}  // namespace fspectra
