#include "ohphase/threading.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ohphase {

int hardware_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

int resolve_threads(int requested) {
  return requested > 0 ? requested : hardware_threads();
}

}  // namespace ohphase
