#include "polyadic/kernels.hpp"

#include <cstdlib>
#include <cstring>

#include "polyadic/error.hpp"

namespace polyadic::kernels {

const char* to_string(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "scalar";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(POLYADIC_HAVE_AVX2_KERNELS) && (defined(__x86_64__) || defined(__i386__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Isa preferred_isa() {
  const char* forced = std::getenv("POLYADIC_ISA");
  if (forced && std::strcmp(forced, "scalar") == 0) return Isa::Scalar;
  return isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}

void encode_slope(Isa isa, const SlopeCoding& coding, std::span<const double> x, std::span<double> value,
                  std::span<double> slope) {
  if (x.size() != value.size() || x.size() != slope.size()) {
    throw Error(ErrorKind::InvalidArgument, "kernel spans differ in size");
  }
  if (isa == Isa::Avx2) {
    if (!isa_available(Isa::Avx2)) throw Error(ErrorKind::InvalidArgument, "AVX2 kernels unavailable");
    encode_slope_avx2(coding, x, value, slope);
    return;
  }
  encode_slope_scalar(coding, x, value, slope);
}

void encode_slope_scalar(const SlopeCoding& coding, std::span<const double> x, std::span<double> value,
                         std::span<double> slope) {
  const int r = coding.alphabet_size;
  const double* cum = coding.cumulative.data();
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    double lo = 0.0, width = 1.0;
    double v = 0.0, s = 0.0, wv = 1.0, ws = 0.0;
    for (int depth = 0; depth < coding.depth; ++depth) {
      int c = 0;
      for (int b = 1; b < r; ++b) {
        if (lo + width * cum[b] <= xi || xi >= 1.0) c = b;
      }
      lo = lo + width * cum[c];
      width = width * coding.weight[static_cast<std::size_t>(c)];
      const std::size_t k = static_cast<std::size_t>(c);
      const double nv = wv * coding.cum_value[k];
      const double ns = wv * coding.cum_slope[k] + ws * coding.cum_value[k];
      v = v + nv;
      s = s + ns;
      const double tv = wv * coding.weight_value[k];
      const double ts = wv * coding.weight_slope[k] + ws * coding.weight_value[k];
      wv = tv;
      ws = ts;
    }
    value[i] = v;
    slope[i] = s;
  }
}

#if !defined(POLYADIC_HAVE_AVX2_KERNELS)
void encode_slope_avx2(const SlopeCoding&, std::span<const double>, std::span<double>, std::span<double>) {
  throw Error(ErrorKind::InvalidArgument, "built without AVX2 kernels");
}
#endif

}  // namespace polyadic::kernels
