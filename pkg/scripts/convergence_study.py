"""Forced manufactured-solution convergence study (requires sympy).

Usage: python scripts/convergence_study.py [t_end] [levels...]
"""
import sys
import time

from swirllab import mms


def main() -> int:
    t_end = float(sys.argv[1]) if len(sys.argv) > 1 else 4e-4
    levels = tuple(int(a) for a in sys.argv[2:]) or (65, 129, 257)
    case = mms.build_case()
    mark = time.time()

    def progress(n, err, div):
        nonlocal mark
        print(f"  n={n:4d}: max error {err:.4e}, worst divergence {div:.2e}, "
              f"{time.time() - mark:.1f}s")
        mark = time.time()

    print(f"forced case to t = {t_end:g} at levels {levels}")
    errors, _ = mms.run_convergence(case, levels=levels, t_end=t_end,
                                    progress=progress)
    print(f"fitted spatial order: {mms.fitted_order(levels, errors):.3f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
