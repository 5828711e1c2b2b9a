#pragma once

// Thin OpenMP wrapper; everything degrades to single-threaded when OpenMP is
// not available.

namespace ohphase {

int hardware_threads();
// requested <= 0 selects all hardware threads
int resolve_threads(int requested);

}  // namespace ohphase
