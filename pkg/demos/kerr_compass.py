"""Fractional Kerr revivals of a warm displaced state.

At ``t = 2 pi mu / nu`` the Kerr evolution is a finite sum of rotations, so a
displaced thermal state becomes a mixed cat. ``(1, 4)`` gives two copies,
``(1, 8)`` the four-copy compass. Heating widens the hills, yet the fringes
between opposite copies get narrower: their envelope is the characteristic
function at ``2x``.

Run: ``python3 demos/kerr_compass.py``
"""

import numpy as np

from phasecat import ThermalState, fringe_fwhm, fringe_widths, kerr_cat, kerr_coefficients, sample_grid
from phasecat.oracle import fock_kerr, fock_thermal, fock_wigner_grid

if __name__ == "__main__":
    for mu, nu in [(1, 4), (1, 8), (3, 8), (1, 3)]:
        kc = kerr_coefficients(mu, nu)
        angles = np.round(np.degrees(kc.angles()), 1)
        print(f"(mu, nu) = ({mu}, {nu}): {kc.component_count} copies at {angles} deg, "
              f"|c| = {np.round(np.abs(kc.coeffs[kc.nonzero]), 6)}")

    ts = ThermalState(0.5, [2.0, 0.0], 1.0)
    compass = kerr_cat(ts, 1, 8)
    grid = sample_grid(compass, [(-5, 5, 41), (-5, 5, 41)])
    xs = grid.coords()[0]
    oracle = fock_wigner_grid(fock_kerr(fock_thermal(0.5, ts.center, 1.0), 1, 8), xs, xs)
    print(f"\ncompass: {len(compass.terms)} terms, min W = {grid.values.min():+.4f}, "
          f"max |closed - Fock| = {np.max(np.abs(grid.values - oracle)):.1e}")

    print("\nnbar   FWHM (opposite copies)   formula   FWHM (neighbours)")
    for nb in (0.0, 0.5, 1.0, 2.0):
        w = fringe_widths(kerr_cat(ThermalState(nb, [2.0, 0.0], 1.0), 1, 8))
        print(f"{nb:<6} {w[0]:12.6f}             {fringe_fwhm(nb):8.6f}  {w[-1]:10.6f}")
