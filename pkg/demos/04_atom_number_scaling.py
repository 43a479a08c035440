"""Discord and entropy maxima as the number of atoms grows.

Runs the n = 10 sweep over N = 2..5 through the same pipeline the CLI uses,
then fits d_max(N) and e_max(N) with quadratics.  The full 0..10 window
takes a few minutes (the N = 5 minimizations dominate); pass a shorter end
time as the first argument for a quick look, e.g.

    python demos/04_atom_number_scaling.py 3
"""

import sys
import tempfile

from tcdiscord.experiment import apply_overrides, get_preset, run_experiment

end = sys.argv[1] if len(sys.argv) > 1 else "10.0"
(config,) = get_preset("fig9")
config = apply_overrides(config, [f"time.end={float(end)}"])

with tempfile.TemporaryDirectory() as out:
    summary = run_experiment(config, output_dir=out)

values = {}
for value, quantity, x in summary.records:
    values.setdefault(quantity, {})[value] = x

print(f"{'N':>3} {'d_max':>8} {'e_max':>8} {'delta_t2':>9}")
for N in (2, 3, 4, 5):
    shift = values.get("delta_t2", {}).get(N, float("nan"))
    print(f"{N:3d} {values['d_max'][N]:8.4f} {values['e_max'][N]:8.4f} {shift:9.4f}")

for label in ("d_max", "e_max"):
    c0, c1, c2 = (values[f"{label}_fit_c{k}"][None] for k in range(3))
    print(f"{label} ~ {c2:+.4f} N^2 {c1:+.4f} N {c0:+.4f}")
