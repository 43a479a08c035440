"""How the photon number of the initial Fock state shapes the discord.

For two atoms the sector spectrum is {-r, 0, 0, r} with r = sqrt(2(2n+3)),
so adding photons speeds the oscillations up (more revivals per unit time)
while the discord maximum barely moves.  This script measures both, together
with the slope of GQD against VNE, for a handful of photon numbers.

Run:  python demos/03_photon_number.py
"""

import numpy as np

from tcdiscord import InitialStateParams, SystemConfig, find_peaks, max_quantifier, revival_rate, simulate
from tcdiscord.analysis import slope_gqd_vs_vne
from tcdiscord.experiment import simulation_times

print(f"{'n':>4} {'r':>7} {'d_max':>8} {'m_R':>6} {'slope':>7}")
for n in (0, 2, 5, 10, 20):
    system = SystemConfig(n_atoms=2, n_photons=n)
    traj = simulate(system, InitialStateParams(), simulation_times(system))
    gqd, vne = traj.series("gqd"), traj.series("vne")
    d_max, _ = max_quantifier(gqd)
    m_r = revival_rate(find_peaks(gqd), traj.times[-1] - traj.times[0])
    slope = slope_gqd_vs_vne(gqd, vne).slope
    print(f"{n:4d} {np.sqrt(2 * (2 * n + 3)):7.3f} {d_max:8.4f} {m_r:6.2f} {slope:7.4f}")
