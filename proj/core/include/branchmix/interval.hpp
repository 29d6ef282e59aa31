#pragma once

// Tracks the set of mixture parameters mu in [0,1] for which every variable
// selection observed so far would come out the same.  Each selection
// contributes one affine-comparison constraint per losing candidate; the
// ledger is their intersection.  Endpoint inclusivity follows the tie rule
// (exact score ties go to the lower variable index), so a breakpoint can
// belong to either side.

namespace branchmix {

struct IntervalLedger {
  double lo = 0.0;
  double hi = 1.0;
  bool lo_inclusive = true;
  bool hi_inclusive = true;

  void restrict_lo(double r, bool inclusive) {
    if (r < 0.0) return;
    if (r > lo + kMergeTol) {
      lo = r;
      lo_inclusive = inclusive;
    } else if (r >= lo - kMergeTol) {
      lo_inclusive = lo_inclusive && inclusive;
    }
  }

  void restrict_hi(double r, bool inclusive) {
    if (r > 1.0) return;
    if (r < hi - kMergeTol) {
      hi = r;
      hi_inclusive = inclusive;
    } else if (r <= hi + kMergeTol) {
      hi_inclusive = hi_inclusive && inclusive;
    }
  }

  bool empty() const { return lo > hi || (lo == hi && !(lo_inclusive && hi_inclusive)); }

  static constexpr double kMergeTol = 1e-12;
};

}  // namespace branchmix
