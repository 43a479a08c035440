"""Global quantum discord of textbook states.

The GQD is a minimum over local projective measurements.  For a few states
the answer is known in closed form, which makes them good sanity checks:

* Bell and GHZ states carry exactly one bit;
* states diagonal in a product basis are classical (zero discord);
* the Werner family p |Bell><Bell| + (1 - p) I/4 interpolates between the two.

The two equivalent formulas (relative-entropy form and entropy-difference
form) are compared at the optimal frame.

Run:  python demos/02_discord_benchmarks.py
"""

import numpy as np

from tcdiscord import gqd_objective, gqd_relative_entropy_form, minimize_gqd


def ghz(n):
    rho = np.zeros((2**n, 2**n))
    rho[0, 0] = rho[0, -1] = rho[-1, 0] = rho[-1, -1] = 0.5
    return rho


print("Bell  :", round(minimize_gqd(ghz(2)).value, 8))
print("GHZ_3 :", round(minimize_gqd(ghz(3)).value, 8))
print("GHZ_4 :", round(minimize_gqd(ghz(4)).value, 8))

rng = np.random.default_rng(1)
classical = np.diag(rng.dirichlet(np.ones(8)))
print("random classical 3-qubit state:", minimize_gqd(classical).value)

print("\nWerner family")
for p in np.linspace(0, 1, 6):
    rho = p * ghz(2) + (1 - p) * np.eye(4) / 4
    res = minimize_gqd(rho)
    alt = gqd_relative_entropy_form(rho, res.argmin)
    print(f"  p={p:.1f}  GQD={res.value:.6f}  (relative-entropy form {alt:.6f}, "
          f"converged={res.converged}, evaluations={res.evaluations})")
    assert abs(alt - gqd_objective(rho, res.argmin)) < 1e-9
