"""Regenerate the frozen census fixtures from the reference oracles.

    python3 tests/golden/make_golden.py

Counts and boundary tables come from signed face tracing in tests/oracles.py;
p comes from explicit listing of path tuples.  The package's own census code
is not used here, so the golden files stay an independent reference.
"""
from __future__ import annotations

import itertools
import json
import sys
from pathlib import Path

HERE = Path(__file__).resolve().parent
ROOT = HERE.parent.parent
sys.path.insert(0, str(HERE.parent))

from oracles import bridges_by_removal, census_counts, face_count, strips_up_to_iso_brute  # noqa: E402

from cutlocus.cycle_space import fundamental_basis  # noqa: E402
from cutlocus.intersection import build_H, count_disjoint_tuples, simple_paths  # noqa: E402
from cutlocus.multigraph import cubic_resolution, cyclic_part, parse_graph  # noqa: E402
from cutlocus.ribbon import planar_rotation  # noqa: E402

FIXTURES = ["theta", "dumbbell", "tree", "loop", "fig8_nested", "fig8_interleaved"]


def golden_for(g, rot):
    br = bridges_by_removal(g)
    counts = census_counts(g, rot, br)
    free = sorted(e.id for e in g.edges if e.id not in br)
    strips = [set(t) for r in range(len(free) + 1) for t in itertools.combinations(free, r)
              if face_count(g, rot, set(t)) == 1]
    p = count_disjoint_tuples(simple_paths(build_H(g, fundamental_basis(g)))) if g.m else 0
    return {
        "n": g.n, "m": g.m, "bridges": sorted(br), "m_bc": len(free),
        **{k: counts[k] for k in ("patch_count", "S", "O", "N")},
        "S_up_to_iso": strips_up_to_iso_brute(g, rot, strips),
        "p": p, "strip_bound": 2 ** len(free) - p, "slack": 2 ** len(free) - p - counts["S"],
        "b_table": counts["b"],
    }


def main() -> None:
    out = {}
    for name in FIXTURES:
        g = parse_graph((ROOT / "data" / "graphs" / f"{name}.json").read_text())
        cp, _ = cyclic_part(g)
        rot = cp.rotation or planar_rotation(cp)
        out[name] = golden_for(cp, rot)
        if cp.m and cp.max_degree() > 3:
            h, hrot = cubic_resolution(cp, rot)
            out[name + "+resolved"] = golden_for(h, hrot)
    (HERE / "census.json").write_text(json.dumps(out, indent=2, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
