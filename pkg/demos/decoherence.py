"""A cat left in a cold bath.

Amplitude damping shrinks every Gaussian term of the Wigner function on its
own. The fringes fade much faster than the hills, but the inertia of each
term's inverse covariance never changes: hyperbolic fringes stay
hyperbolic while they vanish.

Run: ``python3 demos/decoherence.py``
"""

import numpy as np

from phasecat import GaussianPure, PureCat, cat_wigner, check_signature_preservation, damped_oscillator, squeeze
from phasecat.lindblad import evolve_state, fringe_to_hill_ratio, term_covariance

if __name__ == "__main__":
    cat = PureCat(1, 1, GaussianPure(squeeze(2.0), [2, 0]), GaussianPure(np.eye(2), [-2, 0]))
    W0 = cat_wigner(cat)
    bath = damped_oscillator(kappa=0.5)
    times = [0.0, 0.1, 0.25, 0.5, 1.0, 2.0]

    print("t      fringe/hill   integral")
    for t in times:
        Wt = evolve_state(W0, bath, t)
        print(f"{t:<6} {fringe_to_hill_ratio(Wt):10.6f}   {Wt.integral().real:.12f}")

    print("\nsignatures of Re C^-1 and Im C^-1 per term:")
    for k, term in enumerate(W0.terms):
        rep = check_signature_preservation(term_covariance(term), bath, times[1:])
        re = {tuple(s) for s in rep.re_signatures}
        im = {tuple(s) for s in rep.im_signatures}
        print(f"  term {k}: Re {re}, Im {im}, constant = {rep.ok}")
