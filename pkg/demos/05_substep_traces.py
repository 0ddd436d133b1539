"""Phase-space substep traces: where a composition actually walks.

High-order stage-optimized sets take large forward and backward substeps;
with a big time step those excursions leave the stable region and the energy
blows up.  The near-forward sets keep every substep small, which is exactly
why they tolerate large steps.  Traces pair with an energy grid for contour
rendering.

Writes trace_*.csv plus *.grid.csv companions (figure renderer inputs).
"""

import math

from sympint import PhaseState, build_system, trace_export

CASES = [
    ("Yosh s7o6 A", "sho", (0.0, 1.0), math.pi / 4),
    ("BABs7o7H", "sho", (0.0, 1.0), math.pi / 4),
    ("Yosh s7o6 A", "henon-heiles-y", (0.4, 0.4), 2.0),
    ("BABs7o7H", "henon-heiles-y", (0.4, 0.4), 2.0),
]

for method, sys_name, (q0, p0), tau in CASES:
    system, _ = build_system(sys_name)
    state = PhaseState.from_arrays([q0], [p0])
    slug = method.replace(" ", "").replace("'", "p")
    out = f"trace_{slug}_{sys_name}.csv"
    trace_export(system, state, method, tau, 2, out)
    print(f"{method:12s} on {sys_name:14s} tau={tau:.3f} -> {out}")
