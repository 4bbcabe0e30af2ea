"""Exhaustive patch census on a fixed (graph, rotation) and the checks run on it.

A census classifies all ``2**m_bc`` normalized twist vectors.  Twist vectors
are enumerated as binary counters over the non-bridge edges sorted by id
(counter bit ``j`` = ``free[j]``); every "first hit" in this module refers to
that order.
"""
from __future__ import annotations

import csv
import io
import itertools
import logging
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import _accel
from .cycle_space import CycleBasis, EdgeSet, fundamental_basis, simple_cycles
from .intersection import (HGraph, HPath, PathTuple, build_H, check_p_lower_bound,
                           count_tuples_dp, iter_disjoint_tuples, simple_paths)
from .multigraph import (Dart, MultiGraph, _connected, bridges, contract_edge, cyclic_part,
                         isomorphisms)
from .ribbon import (Patch, bridge_mask, classify, flip_mask, planar_rotation, sigma_of,
                     surface_name, trace_boundaries)

log = logging.getLogger(__name__)

DEFAULT_MAX_MBC = 24


class CensusTooLarge(RuntimeError):
    pass


class TupleError(ValueError):
    pass


def _floor_half(c: int) -> int:
    return c // 2


@dataclass
class CheckRecord:
    name: str
    status: str  # pass | fail | finding | skip
    claim: str
    witness: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "status": self.status, "claim": self.claim, "witness": self.witness}


@dataclass(frozen=True)
class SwitchRecord:
    """An orientable strip, the flat edge switched, and the resulting strip."""

    source: int
    edge: str
    target: int


class Census:
    """All normalized patches of one graph under one rotation system."""

    def __init__(self, g: MultiGraph, rotation: Mapping[str, Sequence[Dart]],
                 basis: CycleBasis | None = None, max_mbc: int = DEFAULT_MAX_MBC):
        self.graph = g
        self.rotation = {v: tuple(rotation[v]) for v in g.vertices}
        self.basis = basis or fundamental_basis(g)
        self.bridges = bridges(g)
        self.free = sorted(e.id for e in g.edges if e.id not in self.bridges)
        self.m_bc = len(self.free)
        if self.m_bc > max_mbc:
            raise CensusTooLarge(f"instance too large: m_bc={self.m_bc} > cap {max_mbc}")
        self.warnings = []
        if g.m and g.max_degree() > 3:
            self.warnings.append("graph is not cubic; bound checks need cubic resolution")
        if any(g.degree(v) < 3 for v in g.vertices) and g.m:
            self.warnings.append("graph has vertices of degree < 3; not its own cyclic part")
        self._pos = [g.edge_index[e] for e in self.free]
        counters = np.arange(1 << self.m_bc, dtype=np.int64)
        self.masks = _accel.scatter_bits(counters, self._pos)
        sigma = sigma_of(g, self.rotation)
        self.b = _accel.count_boundaries(sigma, self.masks) if g.m else np.ones(1, dtype=np.int64)
        cyc = [c.bits for c in self.basis.cycles]
        self.orientable = ~_accel.odd_parity_any(cyc, self.masks)
        self.euler = g.n - g.m

    # -- indexing -----------------------------------------------------------

    @property
    def patch_count(self) -> int:
        return len(self.masks)

    def counter(self, mask: int) -> int:
        return sum(1 << j for j, p in enumerate(self._pos) if mask >> p & 1)

    def patch(self, k: int) -> Patch:
        return Patch(self.graph, self.rotation, int(self.masks[k]))

    def b_of(self, mask: int) -> int:
        return int(self.b[self.counter(mask)])

    def is_orientable(self, k: int) -> bool:
        return bool(self.orientable[k])

    def twists_of(self, k: int) -> dict[str, int]:
        mask = int(self.masks[k])
        return {e: mask >> self.graph.edge_index[e] & 1 for e in sorted(ee.id for ee in self.graph.edges)}

    def switched(self, k: int) -> list[str]:
        return [e for e in self.free if int(self.masks[k]) >> self.graph.edge_index[e] & 1]

    def flat(self, k: int) -> list[str]:
        return [e for e in self.free if not int(self.masks[k]) >> self.graph.edge_index[e] & 1]

    def bit(self, e: str) -> int:
        return 1 << self.free.index(e)

    # -- counts -------------------------------------------------------------

    @cached_property
    def strips(self) -> np.ndarray:
        return np.flatnonzero(self.b == 1)

    @property
    def S(self) -> int:
        return len(self.strips)

    @property
    def O(self) -> int:
        return int(self.orientable[self.strips].sum())

    @property
    def N(self) -> int:
        return self.S - self.O

    @cached_property
    def p(self) -> int:
        return count_tuples_dp(self.H)

    @cached_property
    def H(self) -> HGraph:
        return build_H(self.graph, self.basis)

    @property
    def q(self) -> int:
        return self.basis.q

    @property
    def c(self) -> int:
        return self.basis.c

    @property
    def strip_bound(self) -> int:
        return (1 << self.m_bc) - self.p

    @cached_property
    def px(self) -> int:
        """Counter index of the patch with every non-bridge edge switched."""
        return (1 << self.m_bc) - 1

    def bridgeless_cubic(self) -> bool:
        return self.graph.m > 0 and self.graph.is_cubic() and not self.bridges

    def surface(self, k: int) -> dict:
        o = self.is_orientable(k)
        genus, cross = classify(int(self.b[k]), self.euler, o)
        return {"genus": genus} if o else {"crosscaps": cross}

    def capped(self, k: int) -> dict | None:
        if self.b[k] != 1:
            return None
        o = self.is_orientable(k)
        kk = (1 - self.euler) // 2 if o else 1 - self.euler
        return {("genus" if o else "crosscaps"): kk, "name": surface_name(o, kk)}

    def record(self, k: int) -> dict:
        return {
            "twists": self.twists_of(k),
            "b": int(self.b[k]),
            "orientable": self.is_orientable(k),
            "strip": bool(self.b[k] == 1),
            "surface": self.surface(k),
        }


# -- enumeration front end -----------------------------------------------------

def enumerate_patches(g: MultiGraph, rot: Mapping[str, Sequence[Dart]],
                      basis: CycleBasis | None = None, max_mbc: int = DEFAULT_MAX_MBC) -> Census:
    return Census(g, rot, basis, max_mbc)


def count_strips(census: Census) -> int:
    return census.S


def find_strip(g: MultiGraph, rot: Mapping[str, Sequence[Dart]]) -> Patch | None:
    """First patch (in counter order) with one boundary circle."""
    census = Census(g, rot)
    if not census.S:
        return None
    return census.patch(int(census.strips[0]))


def _symmetries(census: Census) -> list[tuple[dict[str, str], int]]:
    """Rotation-compatible automorphisms as (edge map, twist toggle mask) pairs.

    A graph automorphism qualifies when, at every vertex, it carries the
    rotation onto the rotation at the image vertex or onto its reverse; a
    reversed vertex is compensated by a disk reflection, which toggles the
    incident non-loop twists.
    """
    g, rot = census.graph, census.rotation
    partner = {(e.id, i): (e.id, 1 - i) for e in g.edges for i in (0, 1)}
    found: dict[tuple, tuple[dict[str, str], int]] = {}
    for vmap in isomorphisms(g, g):
        dmap: dict[Dart, Dart] = {}

        def place(idx: int, toggle: int):
            if idx == len(g.vertices):
                emap = {h[0]: t[0] for h, t in dmap.items()}
                key = (tuple(sorted(dmap.items())), toggle)
                found.setdefault(key, (emap, toggle))
                return
            v = g.vertices[idx]
            w = vmap[v]
            src, dst = rot[v], rot[w]
            d = len(src)
            if d == 0:
                place(idx + 1, toggle)
                return
            for direction in (1, -1):
                for off in range(d):
                    image = {src[i]: dst[(off + direction * i) % d] for i in range(d)}
                    if not all(partner[h] not in dmap or dmap[partner[h]] == partner[t]
                               for h, t in image.items()):
                        continue
                    if not all(partner[h] not in image or image[partner[h]] == partner[t]
                               for h, t in image.items()):
                        continue
                    dmap.update(image)
                    place(idx + 1, toggle ^ (flip_mask(g, w) if direction < 0 else 0))
                    for h in image:
                        del dmap[h]

        place(0, 0)
    return list(found.values())


def strips_up_to_iso(census: Census) -> int:
    g = census.graph
    strips = [int(census.masks[k]) for k in census.strips]
    if not strips:
        return 0
    parent = {s: s for s in strips}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    keep = ~bridge_mask(g)
    for emap, toggle in _symmetries(census):
        for s in strips:
            t = 0
            for e in g.edges:
                if s >> g.edge_index[e.id] & 1:
                    t |= 1 << g.edge_index[emap[e.id]]
            t = (t ^ toggle) & keep
            if t not in parent:
                raise AssertionError("symmetry mapped a strip to a non-strip")
            ra, rb = find(s), find(t)
            if ra != rb:
                parent[ra] = rb
    return len({find(s) for s in strips})


# -- checks ----------------------------------------------------------------------

def _violation_status(census: Census) -> str:
    return "fail" if census.graph.max_degree() <= 3 else "finding"


def verify_p_bound(census: Census) -> CheckRecord:
    chk = check_p_lower_bound(census.graph, census.basis)
    return CheckRecord("p_lower_bound", "pass" if chk.consistent else "fail",
                       "p >= 2^q - 1, with equality iff H is edgeless", chk.to_json())


def verify_theorem_bound(census: Census) -> CheckRecord:
    bound = census.strip_bound
    slack = bound - census.S
    w = {"S": census.S, "m_bc": census.m_bc, "p": census.p, "bound": bound, "slack": slack}
    if any(e.kind == "vertex" for e in census.H.edges):
        w["vertex_type_H_edges"] = True
    status = "pass" if slack >= 0 else _violation_status(census)
    return CheckRecord("strip_bound", status, "S <= 2^m_bc - p", w)


def verify_switch_lemma(census: Census) -> CheckRecord:
    """Switching a flat non-bridge edge of a strip keeps a strip; orientable becomes non-orientable."""
    lost, kept_orientable = [], []
    checked = 0
    for k in census.strips:
        k = int(k)
        for e in census.flat(k):
            checked += 1
            j = k | census.bit(e)
            if census.b[j] != 1:
                lost.append({"strip": census.twists_of(k), "edge": e, "b": int(census.b[j]),
                             "orientable": bool(census.orientable[k])})
            elif census.orientable[k] and census.orientable[j]:
                kept_orientable.append({"strip": census.twists_of(k), "edge": e})
    ok = not lost and not kept_orientable
    w = {"pairs_checked": checked, "strip_lost": lost[:20], "strip_lost_count": len(lost),
         "strip_lost_from_orientable": sum(1 for x in lost if x["orientable"]),
         "orientability_kept": kept_orientable[:20], "orientability_kept_count": len(kept_orientable)}
    return CheckRecord("switch_lemma", "pass" if ok else _violation_status(census),
                       "switching a flat edge of a strip gives a strip, non-orientable if the strip was orientable",
                       w)


def switch_relation(census: Census) -> list[SwitchRecord]:
    """Orientable strips other than the all-switched patch, mapped to non-orientable strips."""
    out = []
    for k in census.strips:
        k = int(k)
        if not census.orientable[k] or k == census.px:
            continue
        for e in census.flat(k):
            j = k | census.bit(e)
            if census.b[j] == 1 and not census.orientable[j]:
                out.append(SwitchRecord(k, e, j))
    return out


def switch_fibers(records: Iterable[SwitchRecord]) -> dict[int, list[SwitchRecord]]:
    fib: dict[int, list[SwitchRecord]] = defaultdict(list)
    for r in records:
        fib[r.target].append(r)
    return dict(sorted(fib.items()))


def _on_common_cycle(cycles: list[EdgeSet], g: MultiGraph, e1: str, e2: str) -> bool:
    i, j = g.edge_index[e1], g.edge_index[e2]
    return any(i in c and j in c for c in cycles)


def _disconnects(g: MultiGraph, e1: str, e2: str) -> bool:
    rest = [e for e in g.edges if e.id not in (e1, e2)]
    return not _connected(g.vertices, rest)


def verify_switch_properties(census: Census, records: list[SwitchRecord] | None = None) -> CheckRecord:
    """Fiber structure of the switch map and the orientable-count bounds."""
    g = census.graph
    records = switch_relation(census) if records is None else records
    fibers = switch_fibers(records)
    cycles = simple_cycles(g, census.basis)
    c = census.c
    half = _floor_half(c)
    cubic_nb = census.bridgeless_cubic()
    problems = []
    max_fiber = 0
    for target, recs in fibers.items():
        sources = sorted({r.source for r in recs})
        max_fiber = max(max_fiber, len(sources))
        if len(sources) > c:
            problems.append({"kind": "fiber>c", "target": census.twists_of(target), "size": len(sources)})
        if cubic_nb and len(sources) > half:
            problems.append({"kind": "fiber>floor(c/2)", "target": census.twists_of(target),
                             "size": len(sources)})
        by_source = {}
        for r in recs:
            by_source.setdefault(r.source, r.edge)
        for (s1, e1), (s2, e2) in itertools.combinations(sorted(by_source.items()), 2):
            m1, m2 = int(census.masks[s1]), int(census.masks[s2])
            outside = (m1 ^ m2) & ~((1 << g.edge_index[e1]) | (1 << g.edge_index[e2]))
            pair = {"target": census.twists_of(target), "e1": e1, "e2": e2}
            if outside:
                problems.append({"kind": "differ_outside", **pair})
            if not _on_common_cycle(cycles, g, e1, e2):
                problems.append({"kind": "no_common_cycle", **pair})
            if not _disconnects(g, e1, e2):
                problems.append({"kind": "pair_not_separating", **pair})
    O, N = census.O, census.N
    bounds = {"O<=cN+1": O <= c * N + 1}
    if cubic_nb:
        bounds["O<=floor(c/2)N+1"] = O <= half * N + 1
    if census.q % 2 == 0:
        slack_total = census.strip_bound
        bounds["O<=c(2^m_bc-p)/(c+1)+1"] = O * (c + 1) <= c * slack_total + (c + 1)
        if cubic_nb:
            bounds["O<=h(2^m_bc-p)/(h+1)+1"] = O * (half + 1) <= half * slack_total + (half + 1)
    for name, ok in bounds.items():
        if not ok:
            problems.append({"kind": "bound", "bound": name})
    w = {"O": O, "N": N, "c": c, "bridgeless_cubic": cubic_nb, "relation_size": len(records),
         "targets": len(fibers), "max_fiber": max_fiber, "bounds": bounds, "problems": problems[:50],
         "problem_count": len(problems),
         "problem_kinds": dict(sorted(Counter(p["kind"] for p in problems).items()))}
    return CheckRecord("switch_fibers", "pass" if not problems else _violation_status(census),
                       "fibers of the switch map: sources agree off the two edges, the edges share a "
                       "simple cycle and separate the graph, fiber <= c (floor(c/2) for bridgeless "
                       "cubic); O <= cN + 1 and the even-q orientable bound", w)


def edge_character(census: Census, k: int, e: str) -> str:
    """``"longitudinal"`` if un-switching ``e`` keeps a strip, else ``"transversal"``."""
    if census.b[k] != 1:
        raise ValueError("patch is not a strip")
    if e in census.bridges:
        raise ValueError(f"edge {e!r} is a bridge")
    if not int(census.masks[k]) >> census.graph.edge_index[e] & 1:
        raise ValueError(f"edge {e!r} is not switched")
    b = int(census.b[k & ~census.bit(e)])
    if b > 2:
        raise AssertionError(f"un-switching {e!r} gave {b} boundary circles")
    return "longitudinal" if b == 1 else "transversal"


def verify_unswitch(census: Census) -> CheckRecord:
    bad = []
    checked = 0
    for k in census.strips:
        k = int(k)
        for e in census.switched(k):
            checked += 1
            b = int(census.b[k & ~census.bit(e)])
            if b not in (1, 2):
                bad.append({"strip": census.twists_of(k), "edge": e, "b": b})
    return CheckRecord("unswitch_at_most_two", "pass" if not bad else "fail",
                       "un-switching a switched edge of a strip leaves 1 or 2 boundary circles",
                       {"pairs_checked": checked, "violations": bad[:20], "violation_count": len(bad)})


def verify_odd_q(census: Census) -> CheckRecord:
    w = {"q": census.q, "O": census.O}
    if census.q % 2 == 0:
        return CheckRecord("odd_q_non_orientable", "skip", "q odd implies O = 0", w)
    return CheckRecord("odd_q_non_orientable", "pass" if census.O == 0 else "fail",
                       "q odd implies O = 0", w)


def verify_strip_exists(census: Census) -> CheckRecord:
    w = {"S": census.S}
    if census.S:
        w["first"] = census.twists_of(int(census.strips[0]))
    return CheckRecord("strip_exists", "pass" if census.S else "finding",
                       "every graph carries at least one strip", w)


def conjecture_sweep_checks(census: Census) -> CheckRecord:
    """Counterexample hunt: orientable strips without longitudinal edges, and O >= N."""
    flags = []
    if not census.m_bc:
        return CheckRecord("open_questions", "skip",
                           "every orientable strip has a longitudinal edge; O < N", {"flags": flags})
    for k in census.strips:
        k = int(k)
        if not census.orientable[k]:
            continue
        chars = {e: edge_character(census, k, e) for e in census.switched(k)}
        if "longitudinal" not in chars.values():
            flags.append({"question": "orientable strip without longitudinal edges",
                          "strip": census.twists_of(k), "edges": chars})
    if census.S and census.O >= census.N:
        flags.append({"question": "O >= N", "O": census.O, "N": census.N})
    return CheckRecord("open_questions", "pass" if not flags else "finding",
                       "every orientable strip has a longitudinal edge; O < N", {"flags": flags})


# -- patches from path tuples -------------------------------------------------------

@dataclass
class TuplePatch:
    patch: Patch
    k: int
    b: int
    contracted: list[str]
    literal: bool
    encloses: list[bool]

    @property
    def ok(self) -> bool:
        return self.b == self.k + 1

    def to_json(self) -> dict:
        return {"patch": self.patch.to_json(), "k": self.k, "b": self.b, "target_b": self.k + 1,
                "contracted": self.contracted, "contracted_untwisted": self.literal,
                "encloses": self.encloses, "ok": self.ok}


def _path_cycle(basis: CycleBasis, path: HPath) -> int:
    bits = 0
    for v in path.vertices:
        bits ^= basis.cycles[v - 1].bits
    return bits


def build_patch_from_tuple(census: Census, tup: PathTuple) -> TuplePatch:
    """A patch with ``k + 1`` boundary circles attached to a tuple of disjoint paths.

    Edges carried by the tuple's paths are contracted; the remaining edges
    take twists from a patch on the contraction and the contracted edges stay
    flat.  Among those lifts the first (counter order) with ``k + 1`` circles
    and a circle enclosing each path's cycle sum is returned.  When no flat
    lift encloses every path, the search widens to all twist vectors and the
    result is marked ``contracted_untwisted = False``.
    """
    g, h, basis = census.graph, census.H, census.basis
    contracted = []
    for path in tup:
        for kk in path.edges:
            he = h.edges[kk]
            if he.kind != "edge":
                raise TupleError("tuple uses a vertex-type H-edge; apply cubic resolution first")
            contracted.append(he.carrier)
    contracted = sorted(set(contracted))
    cmask = sum(1 << g.edge_index[e] for e in contracted)
    k = len(tup)
    targets = [_path_cycle(basis, p) & ~cmask for p in tup]
    keep = ~cmask

    def enclosure(mask: int) -> list[bool]:
        _, supports = trace_boundaries(Patch(g, census.rotation, mask))
        sup = [s & keep for s in supports]
        return [t in sup for t in targets]

    hits = np.flatnonzero(census.b == k + 1)
    fallback = None
    for literal in (True, False):
        for j in hits:
            mask = int(census.masks[j])
            if literal and mask & cmask:
                continue
            enc = enclosure(mask)
            if all(enc):
                return TuplePatch(census.patch(int(j)), k, k + 1, contracted, not mask & cmask, enc)
            if fallback is None and not mask & cmask:
                fallback = (int(j), enc)
    if fallback is not None:
        j, enc = fallback
        return TuplePatch(census.patch(j), k, k + 1, contracted, True, enc)
    if contracted:
        strip = find_strip(*_contract_all(g, census.rotation, contracted))
    else:
        strip = census.patch(int(census.strips[0])) if census.S else None
    mask = 0
    if strip is not None:
        mask = sum(1 << g.edge_index[e] for e, t in strip.twist_dict().items() if t)
    p = Patch(g, census.rotation, mask)
    return TuplePatch(p, k, census.b_of(p.twists), contracted, True, enclosure(p.twists))


def _contract_all(g: MultiGraph, rot, edges: list[str]):
    h = g.with_(rotation=dict(rot))
    for e in edges:
        h, _ = contract_edge(h, e)
    return h, h.rotation


def verify_cycle_path(census: Census, max_tuples: int = 5000) -> CheckRecord:
    paths = simple_paths(census.H)
    tuples = []
    for t in iter_disjoint_tuples(paths):
        tuples.append(t)
        if len(tuples) > max_tuples:
            return CheckRecord("tuple_patches", "skip", "each path tuple yields a patch with k + 1 circles",
                               {"reason": f"more than {max_tuples} tuples"})
    results, skipped = [], 0
    for t in tuples:
        try:
            results.append((t, build_patch_from_tuple(census, t)))
        except TupleError:
            skipped += 1
    missing = [{"tuple": [p.label() for p in t], "b": r.b} for t, r in results if not r.ok]
    widened = [[p.label() for p in t] for t, r in results if not r.literal]
    no_enclosure = [[p.label() for p in t] for t, r in results if not all(r.encloses)]
    distinct = len({r.patch.twists for _, r in results}) == len(results)
    w = {"tuples": len(tuples), "built": len(results), "vertex_type_skipped": skipped,
         "planar": planar_rotation(census.graph) is not None,
         "missing_k_plus_1": missing, "widened": widened, "no_enclosure": no_enclosure,
         "distinct_patches": distinct}
    status = "pass"
    if missing or skipped:
        status = _violation_status(census)
    return CheckRecord("tuple_patches", status, "each path tuple yields a patch with k + 1 circles", w)


CHECKS = {
    "p_lower_bound": verify_p_bound,
    "strip_bound": verify_theorem_bound,
    "switch_lemma": verify_switch_lemma,
    "switch_fibers": verify_switch_properties,
    "unswitch_at_most_two": verify_unswitch,
    "odd_q_non_orientable": verify_odd_q,
    "strip_exists": verify_strip_exists,
    "tuple_patches": verify_cycle_path,
    "open_questions": conjecture_sweep_checks,
}


def run_checks(census: Census, names: Sequence[str] | None = None) -> list[CheckRecord]:
    names = list(CHECKS) if names is None else list(names)
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise KeyError(f"unknown checks: {unknown}")
    return [CHECKS[n](census) for n in names]


# -- reports ---------------------------------------------------------------------

def census_report(census: Census, with_checks: bool = True, up_to_iso: bool = True) -> dict:
    g = census.graph
    rep: dict = {
        "graph": g.name,
        "rotation": {v: [list(h) for h in census.rotation[v]] for v in g.vertices},
        "basis": census.basis.to_json(g),
        "m_bc": census.m_bc,
        "q": census.q,
        "bridges": sorted(census.bridges),
        "b_cp": len(census.bridges),
        "p": census.p,
        "c": census.c,
        "patch_count": census.patch_count,
        "S": census.S,
        "O": census.O,
        "N": census.N,
    }
    if up_to_iso:
        rep["S_up_to_iso"] = strips_up_to_iso(census)
    rep["strip_bound"] = census.strip_bound
    rep["warnings"] = census.warnings
    rep["records"] = [census.record(k) for k in range(census.patch_count)]
    if with_checks:
        checks = run_checks(census)
        rep["checks"] = [c.to_json() for c in checks]
        rep["switch_records"] = [
            {"source": census.twists_of(r.source), "edge": r.edge, "target": census.twists_of(r.target)}
            for r in switch_relation(census)
        ]
        flags = next(c for c in checks if c.name == "open_questions").witness["flags"]
        rep["conjecture_flags"] = flags
    return rep


def census_csv(census: Census) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    ids = sorted(e.id for e in census.graph.edges)
    w.writerow(["twists", "b", "orientable", "strip", "genus", "crosscaps"])
    for k in range(census.patch_count):
        r = census.record(k)
        tw = "".join(str(r["twists"][e]) for e in ids)
        s = r["surface"]
        w.writerow([tw, r["b"], int(r["orientable"]), int(r["strip"]), s.get("genus", ""), s.get("crosscaps", "")])
    return buf.getvalue()


def prepare(g: MultiGraph, resolve_cubic: bool = False, normalize: bool = True) -> tuple[MultiGraph, dict]:
    """Cyclic part of ``g`` with a rotation: the supplied one, else planar, else default.

    With ``normalize`` a graph of maximum degree <= 3 that is planar always
    gets the planar rotation.  At such vertices the only other cyclic order
    is the reverse, which a disk reflection absorbs, so the family of patches
    is unchanged; only the reading of "switched" and "flat" edges follows the
    planar drawing.
    """
    from .multigraph import cubic_resolution
    from .ribbon import default_rotation

    cp, _ = cyclic_part(g)
    rot = cp.rotation
    if rot is None:
        rot = planar_rotation(cp) or default_rotation(cp)
    if resolve_cubic and cp.m and cp.max_degree() > 3:
        cp, rot = cubic_resolution(cp, rot)
    if normalize and cp.max_degree() <= 3:
        rot = planar_rotation(cp) or rot
    return cp.with_(rotation=rot), rot
