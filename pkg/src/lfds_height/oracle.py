"""Brute-force state-space enumeration and lemma checkers for small systems.

Nothing here uses matrix powers, ranks or Smith forms: every quantity is read
off the explicit functional graph ``x -> A x``, so the results serve as an
independent check on :mod:`lfds_height.height` and :mod:`lfds_height.bounds`.

States are indexed mixed-radix little-endian: the vector ``(x_0, ..., x_{m-1})``
over Z_n has index ``sum(x_i * n**i)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import CapacityError, UsageError
from .factorize import Factorization
from .system import PrimaryComponent, SystemSpec, primary_components, reduce_mod

DEFAULT_CAP = 10**6


@dataclass(frozen=True, eq=False)
class StateGraph:
    """The functional graph of a system with per-state annotations.

    ``period_of[x]`` is 0 off the cycles; ``height_of[x]`` is 0 exactly on them.
    """

    n: int
    m: int
    successor: np.ndarray
    height_of: np.ndarray
    period_of: np.ndarray
    is_leaf: np.ndarray

    @property
    def size(self) -> int:
        return self.successor.size

    @property
    def is_cycle(self) -> np.ndarray:
        return self.period_of > 0

    def coords(self, index: int) -> tuple[int, ...]:
        return decode(int(index), self.n, self.m)

    def iterate(self, k: int, states: Optional[np.ndarray] = None) -> np.ndarray:
        """``f^k`` applied to ``states`` (all states by default)."""
        cur = np.arange(self.size) if states is None else np.asarray(states)
        for _ in range(k):
            cur = self.successor[cur]
        return cur


@dataclass(frozen=True)
class LemmaReport:
    lemma: str
    passed: bool
    counterexample: Optional[tuple] = None
    detail: str = ""
    checked: int = field(default=0, compare=False)

    def __str__(self):
        status = "PASS" if self.passed else "FAIL"
        text = f"[{status}] {self.lemma}"
        if not self.passed:
            text += f": counterexample {self.counterexample} ({self.detail})"
        return text


def decode(index: int, n: int, m: int) -> tuple[int, ...]:
    out = []
    for _ in range(m):
        index, d = divmod(index, n)
        out.append(d)
    return tuple(out)


def all_states(n: int, m: int) -> np.ndarray:
    """``(n**m, m)`` array of coordinate vectors in index order."""
    idx = np.arange(n**m, dtype=np.int64)
    cols = []
    for _ in range(m):
        idx, d = np.divmod(idx, n)
        cols.append(d)
    return np.stack(cols, axis=1)


def encode(coords: np.ndarray, n: int) -> np.ndarray:
    weights = n ** np.arange(coords.shape[1], dtype=np.int64)
    return coords @ weights


def successor_array(sys: SystemSpec, cap: int = DEFAULT_CAP) -> np.ndarray:
    n, m = sys.n, sys.m
    if n**m > cap:
        raise CapacityError(f"state space {n}^{m} = {n**m} exceeds cap {cap}")
    x = all_states(n, m)
    images = (x @ sys.a.entries.T) % n
    return encode(images, n)


def graph_from_successor(succ: np.ndarray, n: int, m: int) -> StateGraph:
    """Annotate an arbitrary functional graph on ``n**m`` states."""
    size = succ.size
    # every state lies on a cycle after `size` steps; double the map until then
    jump = succ.copy()
    steps = 1
    while steps < size:
        jump = jump[jump]
        steps *= 2
    on_cycle = np.zeros(size, dtype=bool)
    on_cycle[jump] = True

    # reverse BFS, one layer per height value
    height = np.full(size, -1, dtype=np.int64)
    height[on_cycle] = 0
    level = 0
    while (height < 0).any():
        frontier = (height < 0) & (height[succ] == level)
        level += 1
        height[frontier] = level

    period = np.zeros(size, dtype=np.int64)
    cyc = np.flatnonzero(on_cycle)
    if cyc.size:
        relabel = np.full(size, -1, dtype=np.int64)
        relabel[cyc] = np.arange(cyc.size)
        edges = coo_matrix(
            (np.ones(cyc.size), (relabel[cyc], relabel[succ[cyc]])),
            shape=(cyc.size, cyc.size),
        )
        _, labels = connected_components(edges, directed=True, connection="weak")
        period[cyc] = np.bincount(labels)[labels]

    is_leaf = np.bincount(succ, minlength=size) == 0
    return StateGraph(n, m, succ, height, period, is_leaf)


def enumerate_system(sys: SystemSpec, cap: int = DEFAULT_CAP) -> StateGraph:
    """Explicit state graph of (Z_n^m, A); refuses more than ``cap`` states."""
    return graph_from_successor(successor_array(sys, cap), sys.n, sys.m)


def brute_height(g: StateGraph) -> int:
    return int(g.height_of.max())


def all_reach_fixed_points(g: StateGraph) -> bool:
    """True iff every cycle vertex is a fixed point."""
    return bool((g.period_of[g.is_cycle] == 1).all())


def _fail(lemma, g, state, detail, checked=0):
    return LemmaReport(lemma, False, g.coords(state), detail, checked)


def verify_fitting(sys: SystemSpec, g: StateGraph) -> LemmaReport:
    """Check N = f^s(M) and T = f^{-s}(0) form a Fitting decomposition."""
    lemma = "fitting"
    s = brute_height(g)
    size = g.size
    fs = g.iterate(s)
    in_n = np.zeros(size, dtype=bool)
    in_n[fs] = True
    n_states = np.flatnonzero(in_n)

    images = g.successor[n_states]
    if not in_n[images].all():
        bad = n_states[~in_n[images]][0]
        return _fail(lemma, g, bad, "f(N) not contained in N")
    if np.unique(images).size != n_states.size:
        counts = np.bincount(images, minlength=size)
        bad = images[counts[images] > 1][0]
        return _fail(lemma, g, bad, "f restricted to N is not injective")
    if not np.array_equal(in_n, g.is_cycle):
        bad = np.flatnonzero(in_n != g.is_cycle)[0]
        return _fail(lemma, g, bad, "N differs from the cycle vertices")

    in_t = fs == 0
    t_states = np.flatnonzero(in_t)
    if (g.iterate(s, t_states) != 0).any():
        bad = t_states[g.iterate(s, t_states) != 0][0]
        return _fail(lemma, g, bad, "f^s does not vanish on T")
    if not in_t[g.successor[t_states]].all():
        bad = t_states[~in_t[g.successor[t_states]]][0]
        return _fail(lemma, g, bad, "f(T) not contained in T")
    both = np.flatnonzero(in_n & in_t)
    if both.size != 1 or both[0] != 0:
        bad = both[both != 0][0] if (both != 0).any() else 0
        return _fail(lemma, g, bad, "N and T do not meet exactly in {0}")
    if n_states.size * t_states.size != size:
        return _fail(lemma, g, 0, f"|N|*|T| = {n_states.size}*{t_states.size} != {size}")
    return LemmaReport(lemma, True, checked=size)


def _fiber_map(big: StateGraph, p: int) -> np.ndarray:
    """Quotient index of each big state under entry-wise reduction mod p."""
    return encode(all_states(big.n, big.m) % p, p)


def verify_reduction_lemmas(comp: PrimaryComponent, cap: int = DEFAULT_CAP,
                            big: Optional[StateGraph] = None,
                            small: Optional[StateGraph] = None) -> list[LemmaReport]:
    """Check the relations between (Z_{p^r}^m, f) and its reduction mod p.

    Cosets x + <p>^m are realized as fibers of the reduction map. Returns
    reports for the cycle-vertex correspondence, the coset height lower
    bound and its quotient form, leaf lifting, nilpotent leaf existence and
    the submodule model.
    """
    if comp.alpha < 2:
        raise UsageError("reduction lemmas need alpha >= 2")
    p, m = comp.p, comp.sys.m
    big = big or enumerate_system(comp.sys, cap)
    small = small or enumerate_system(reduce_mod(comp.sys, p), cap)
    to_q = _fiber_map(big, p)
    reports = []

    # coset is a cycle vertex iff its fiber holds one
    fiber_has_cycle = np.bincount(to_q, weights=big.is_cycle, minlength=small.size) > 0
    mismatch = np.flatnonzero(fiber_has_cycle != small.is_cycle)
    if mismatch.size:
        q = mismatch[0]
        reports.append(LemmaReport("cycle-correspondence", False, small.coords(q),
                                   "quotient cycle status differs from fiber"))
    else:
        reports.append(LemmaReport("cycle-correspondence", True, checked=small.size))

    # every fiber member is at least as high as its coset
    low = np.flatnonzero(big.height_of < small.height_of[to_q])
    if low.size:
        reports.append(_fail("coset-height-bound", big, low[0], "state lower than its coset"))
    else:
        reports.append(LemmaReport("coset-height-bound", True, checked=big.size))

    hb, hs = brute_height(big), brute_height(small)
    reports.append(LemmaReport("quotient-height-bound", hb >= hs, None if hb >= hs else (hb, hs),
                               f"height {hb} vs quotient height {hs}", checked=1))

    # fibers over quotient leaves hold only leaves
    bad = np.flatnonzero(small.is_leaf[to_q] & ~big.is_leaf)
    if bad.size:
        reports.append(_fail("leaf-lifting", big, bad[0], "non-leaf above a quotient leaf"))
    else:
        reports.append(LemmaReport("leaf-lifting", True, checked=int(small.is_leaf.sum())))

    # a leaf of the quotient's nilpotent part lifts to a nilpotent leaf
    small_nil = small.iterate(hs) == 0
    big_nil = big.iterate(hb) == 0
    targets = small.is_leaf & small_nil
    has_lift = np.bincount(to_q, weights=big.is_leaf & big_nil, minlength=small.size) > 0
    missing = np.flatnonzero(targets & ~has_lift)
    if missing.size:
        reports.append(LemmaReport("nilpotent-leaf", False, small.coords(missing[0]),
                                   "no nilpotent leaf in fiber"))
    else:
        reports.append(LemmaReport("nilpotent-leaf", True, checked=int(targets.sum())))

    # w = p*v in <p>^m behaves like v in Z_{p^(r-1)}^m
    sub_sys = reduce_mod(comp.sys, p ** (comp.alpha - 1))
    sub = enumerate_system(sub_sys, cap)
    v = all_states(sub.n, m)
    w_index = encode(v * p, big.n)
    ok_succ = encode(all_states(big.n, m)[big.successor[w_index]] // p, sub.n) == sub.successor
    ok_height = big.height_of[w_index] == sub.height_of
    bad = np.flatnonzero(~(ok_succ & ok_height))
    if bad.size:
        reports.append(LemmaReport("submodule-model", False, sub.coords(bad[0]),
                                   "submodule model disagrees"))
    else:
        reports.append(LemmaReport("submodule-model", True, checked=sub.size))
    return reports


def verify_crt(sys: SystemSpec, f: Factorization, cap: int = DEFAULT_CAP,
               g: Optional[StateGraph] = None) -> LemmaReport:
    """Check the primary decomposition against explicit enumeration.

    The coordinate-wise reduction map must be a bijection that commutes with
    one step of iteration, and heights must satisfy h(x) = max_i h_i(x mod p_i^a_i).
    """
    lemma = "crt"
    g = g or enumerate_system(sys, cap)
    x = all_states(sys.n, sys.m)
    comps = primary_components(sys, f)
    combined = np.zeros(g.size, dtype=np.int64)
    radix = 1
    elem_height = np.zeros(g.size, dtype=np.int64)
    comp_max = 0
    for comp in comps:
        q = comp.modulus
        cg = enumerate_system(comp.sys, cap)
        idx = encode(x % q, q)
        step = encode(x[g.successor] % q, q)
        bad = np.flatnonzero(step != cg.successor[idx])
        if bad.size:
            return _fail(lemma, g, bad[0], f"reduction mod {q} does not commute with f")
        combined += idx * radix
        radix *= cg.size
        elem_height = np.maximum(elem_height, cg.height_of[idx])
        comp_max = max(comp_max, brute_height(cg))
    if np.unique(combined).size != g.size:
        return _fail(lemma, g, 0, "reduction map is not injective")
    bad = np.flatnonzero(elem_height != g.height_of)
    if bad.size:
        return _fail(lemma, g, bad[0], "h(x) != max of component heights")
    if comp_max != brute_height(g):
        return _fail(lemma, g, 0, f"system height {brute_height(g)} != component max {comp_max}")
    return LemmaReport(lemma, True, checked=g.size)


def verify_sandwich(comp: PrimaryComponent, cap: int = DEFAULT_CAP) -> LemmaReport:
    """Check s1 <= s <= r*s1 by enumerating both the component and its reduction."""
    s = brute_height(enumerate_system(comp.sys, cap))
    s1 = brute_height(enumerate_system(reduce_mod(comp.sys, comp.p), cap))
    ok = s1 <= s <= comp.alpha * s1
    return LemmaReport("height-sandwich", ok, None if ok else (s1, s, comp.alpha),
                       f"s1={s1}, s={s}, r={comp.alpha}", checked=1)
