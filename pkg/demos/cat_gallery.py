"""Three cats, three kinds of fringes.

Two coherent states interfere with straight fringes. Put a squeezed state
opposite a coherent one and the fringes bend into hyperbolas, with a
strength ``theta = (s^2 - 1)/(s^2 + 1)`` set by the squeeze factor. Two
orthogonally squeezed states centered at the origin give hyperbolic
fringes with no displacement at all.

Run: ``python3 demos/cat_gallery.py``
"""

import numpy as np

from phasecat import GaussianPure, PureCat, cat_wigner, classify_fringes, interference_term, normal_form, squeeze
from phasecat.oracle import fock_cat, fock_wigner_grid


def show(title, cat):
    nf = normal_form(cat.g1.S, cat.g2.S)
    term = interference_term(cat)
    W = cat_wigner(cat)
    print(f"{title}")
    print(f"  fringes: {classify_fringes(nf).value}, theta = {np.round(nf.thetas, 6)}")
    print(f"  |K| = {term.K_magnitude:.6f}, envelope center = {np.round(term.eta, 6)}")
    xs = np.linspace(-4, 4, 33)
    mesh = np.stack(np.meshgrid(xs, xs, indexing="ij"), axis=-1)
    closed = W(mesh)
    oracle = fock_wigner_grid(fock_cat(cat), xs, xs)
    print(f"  min W = {closed.min():+.4f}; max |closed - Fock| = {np.max(np.abs(closed - oracle)):.1e}\n")


if __name__ == "__main__":
    s = 2.0
    show("coherent pair at q = +-2", PureCat(1, 1, GaussianPure(np.eye(2), [2, 0]), GaussianPure(np.eye(2), [-2, 0])))
    show(f"coherent vs squeezed (s = {s}); expect theta = {(s * s - 1) / (s * s + 1):.6f}",
         PureCat(1, 1, GaussianPure(np.eye(2), [2, 0]), GaussianPure(squeeze(s), [-2, 0])))
    show("orthogonally squeezed at the origin",
         PureCat(1, 1, GaussianPure(squeeze(s), [0, 0]), GaussianPure(squeeze(1 / s), [0, 0])))
