"""Level-by-level K-theory of permutative structures.

A level at n+ has objects the subset systems {x_s, c_{s,t}} indexed by
subsets of {1..n}, 1-cells the systems of maps between them (with filling
2-cells over the cubical carrier, or strictly commuting squares over a
product carrier), and componentwise 2-cells.

Orientation conventions (matching monoidal.py):

* ``c[s,t]: x_{s+t} -> x_s (+) x_t``;
* the filling cell ``gamma[s,t]`` runs
  ``(1 (+) f_t).(f_s (+) 1).c[s,t]  =>  c'[s,t].f_{s+t}``;
* the swapped cell ``gamma[t,s]`` is determined from ``gamma[s,t]`` by the
  braiding/interchanger pasting and is never enumerated independently.

Enumeration is exhaustive with early pruning and a configurable cell-count
ceiling; exceeding the ceiling aborts loudly, never truncates silently.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache

from .subsets import (
    PointedMap,
    Subset,
    all_pointed_maps,
    disjoint_pairs,
    disjoint_triples,
    nonempty_subsets_of,
    subset_key,
    union,
)
from .twocat import (
    Cell,
    FiniteTwoCategory,
    InternedCell,
    TwoFunctor,
    ValidationReport,
    vertical_inverse,
    vseq,
    whisker_l,
    whisker_r,
)
from .monoidal import (
    MonoidalFunctor,
    PermutativeGrayMonoid,
    PermutativeTwoCategory,
    promote,
    sum_one_cells,
)
from .gamma import GammaTruncation


DEFAULT_CELL_CEILING = int(os.environ.get("GAMMA2CAT_CELL_CEILING", "1000000"))


class CellCeilingExceeded(Exception):
    def __init__(self, stage: str, count: int, ceiling: int):
        self.stage = stage
        self.count = count
        self.ceiling = ceiling
        super().__init__(
            f"cell ceiling exceeded during {stage}: {count} > {ceiling}"
        )


@lru_cache(maxsize=None)
def _sub_index(n: int) -> dict[Subset, int]:
    return {s: i for i, s in enumerate(nonempty_subsets_of(n))}


@lru_cache(maxsize=None)
def _pair_index(n: int) -> dict[tuple[Subset, Subset], int]:
    return {p: i for i, p in enumerate(disjoint_pairs(n))}


@dataclass(frozen=True, eq=False)
class SubsetSystem(InternedCell):
    """The object data {x_s, c_{s,t}} of a level, stored positionally in the
    canonical subset order (the empty-subset entries are derived)."""

    n: int
    x: tuple
    c: tuple

    def _key(self):
        return (self.n, self.x, self.c)

    def x_at(self, C, s: Subset):
        if not s:
            return C.unit_obj()
        return self.x[_sub_index(self.n)[s]]

    def c_at(self, C, s: Subset, t: Subset):
        if not s or not t:
            return C.id1(self.x_at(C, union(s, t)))
        return self.c[_pair_index(self.n)[(s, t)]]


SubsetSystem._pool = {}


@dataclass(frozen=True, eq=False)
class SystemMap(InternedCell):
    """A 1-cell of a level: components f_s with filling cells gamma (cubical
    carrier) or gamma=None (strict squares over a product carrier)."""

    n: int
    src: SubsetSystem
    tgt: SubsetSystem
    f: tuple
    gamma: tuple | None

    def _key(self):
        return (self.n, self.src, self.tgt, self.f, self.gamma)

    def f_at(self, C, s: Subset):
        if not s:
            return C.id1(C.unit_obj())
        return self.f[_sub_index(self.n)[s]]

    def gamma_at(self, C, s: Subset, t: Subset):
        if self.gamma is not None and s and t:
            return self.gamma[_pair_index(self.n)[(s, t)]]
        # strict or empty-part case: identity on the (equal) boundary
        return C.id2(_gamma_source(C, self, s, t))


SystemMap._pool = {}


@dataclass(frozen=True, eq=False)
class SystemTwoCell(InternedCell):
    """A 2-cell of a level: componentwise 2-cells alpha_s."""

    n: int
    src: SystemMap
    tgt: SystemMap
    alpha: tuple

    def _key(self):
        return (self.n, self.src, self.tgt, self.alpha)

    def alpha_at(self, C, s: Subset):
        if not s:
            return C.id2(C.id1(C.unit_obj()))
        return self.alpha[_sub_index(self.n)[s]]


SystemTwoCell._pool = {}


def mk_system(n: int, x: tuple, c: tuple) -> SubsetSystem:
    return SubsetSystem._intern(SubsetSystem(n, x, c))


def mk_system_map(n: int, src, tgt, f: tuple, gamma) -> SystemMap:
    return SystemMap._intern(SystemMap(n, src, tgt, f, gamma))


def mk_system_two_cell(n: int, src, tgt, alpha: tuple) -> SystemTwoCell:
    return SystemTwoCell._intern(SystemTwoCell(n, src, tgt, alpha))


def make_system(C, n: int, xmap: dict, cmap: dict) -> SubsetSystem:
    subs = nonempty_subsets_of(n)
    return mk_system(
        n,
        tuple(xmap[s] for s in subs),
        tuple(cmap[p] for p in disjoint_pairs(n)),
    )


def make_system_map(C, src: SubsetSystem, tgt: SubsetSystem, fmap: dict,
                    gammamap: dict | None) -> SystemMap:
    n = src.n
    subs = nonempty_subsets_of(n)
    gamma = None
    if gammamap is not None:
        gamma = tuple(gammamap[p] for p in disjoint_pairs(n))
    return mk_system_map(n, src, tgt, tuple(fmap[s] for s in subs), gamma)


def _invertible_in_carrier(C, g) -> bool:
    base = getattr(C, "base", None)
    if isinstance(base, FiniteTwoCategory):
        return vertical_inverse(base, g) is not None
    # lazily evaluated carriers cannot enumerate candidate inverses; the
    # bounded validators cover invertibility where it is decidable
    return True


def _gamma_source(C, mp: SystemMap, s: Subset, t: Subset):
    """(1 (+) f_t).(f_s (+) 1).c[s,t] as a 1-cell of the carrier."""
    fs, ft = mp.f_at(C, s), mp.f_at(C, t)
    step1 = mp.src.c_at(C, s, t)
    step2 = C.rsum_one(fs, mp.src.x_at(C, t))
    step3 = C.lsum_one(C.tgt1(fs), ft)
    return C.comp1(step3, C.comp1(step2, step1))


def _gamma_target(C, mp: SystemMap, s: Subset, t: Subset):
    """c'[s,t].f_{s+t} as a 1-cell of the carrier."""
    return C.comp1(mp.tgt.c_at(C, s, t), mp.f_at(C, union(s, t)))


def swapped_gamma(C, mp_src: SubsetSystem, mp_tgt: SubsetSystem, f_at, gamma_st,
                  s: Subset, t: Subset):
    """Derive gamma[t,s] from gamma[s,t] via the braiding and interchanger."""
    fs, ft = f_at(s), f_at(t)
    xs_t, xps_t = mp_src.x_at(C, t), mp_tgt.x_at(C, t)
    beta_tgt = C.beta_obj(mp_tgt.x_at(C, s), xps_t)
    c_ts = mp_src.c_at(C, t, s)
    step1 = whisker_r(C, C.sigma_inv(ft, fs), c_ts)
    step2 = whisker_l(C, beta_tgt, gamma_st)
    return C.vcomp(step2, step1)


# -- axiom checks on explicit systems ------------------------------------------


def validate_system(C, sys: SubsetSystem) -> ValidationReport:
    rep = ValidationReport(f"subset system (n={sys.n})")
    n = sys.n
    for s in nonempty_subsets_of(n):
        if not C.has_obj(sys.x_at(C, s)):
            rep.add("structure", f"value at {s} outside the carrier")
    for (s, t) in disjoint_pairs(n):
        c = sys.c_at(C, s, t)
        rep.checked += 1
        if C.src1(c) != sys.x_at(C, union(s, t)) or \
           C.tgt1(c) != C.sum_obj(sys.x_at(C, s), sys.x_at(C, t)):
            rep.add("structure", f"c at {(s, t)} has wrong endpoints")
    if rep.issues:
        return rep
    for (s, t) in disjoint_pairs(n):
        rep.checked += 1
        lhs = sys.c_at(C, t, s)
        rhs = C.comp1(C.beta_obj(sys.x_at(C, s), sys.x_at(C, t)), sys.c_at(C, s, t))
        if lhs != rhs:
            rep.add("symmetry", f"braiding compatibility fails at {(s, t)}")
    for (s, t, u) in disjoint_triples(n):
        rep.checked += 1
        lhs = C.comp1(C.rsum_one(sys.c_at(C, s, t), sys.x_at(C, u)), sys.c_at(C, union(s, t), u))
        rhs = C.comp1(C.lsum_one(sys.x_at(C, s), sys.c_at(C, t, u)), sys.c_at(C, s, union(t, u)))
        if lhs != rhs:
            rep.add("cocycle", f"associativity fails at {(s, t, u)}")
    return rep


def validate_system_map(C, mp: SystemMap, gray: bool) -> ValidationReport:
    rep = ValidationReport(f"system map (n={mp.n})")
    n = mp.n
    for s in nonempty_subsets_of(n):
        fs = mp.f_at(C, s)
        rep.checked += 1
        if C.src1(fs) != mp.src.x_at(C, s) or C.tgt1(fs) != mp.tgt.x_at(C, s):
            rep.add("structure", f"component at {s} has wrong endpoints")
    if rep.issues:
        return rep
    if not gray:
        for (s, t) in disjoint_pairs(n):
            rep.checked += 1
            lhs = C.comp1(mp.tgt.c_at(C, s, t), mp.f_at(C, union(s, t)))
            rhs = C.comp1(C.sum_one(mp.f_at(C, s), mp.f_at(C, t)), mp.src.c_at(C, s, t))
            if lhs != rhs:
                rep.add("square", f"strict square fails at {(s, t)}")
        return rep
    for (s, t) in disjoint_pairs(n):
        g = mp.gamma_at(C, s, t)
        rep.checked += 1
        if C.src2(g) != _gamma_source(C, mp, s, t) or C.tgt2(g) != _gamma_target(C, mp, s, t):
            rep.add("structure", f"filling cell at {(s, t)} has wrong endpoints")
        elif not _invertible_in_carrier(C, g):
            rep.add("structure", f"filling cell at {(s, t)} not invertible")
    if rep.issues:
        return rep
    # braiding compatibility: gamma[t,s] is the derived pasting
    for (s, t) in disjoint_pairs(n):
        rep.checked += 1
        derived = swapped_gamma(C, mp.src, mp.tgt, lambda u: mp.f_at(C, u),
                                mp.gamma_at(C, s, t), s, t)
        if mp.gamma_at(C, t, s) != derived:
            rep.add("swap", f"swapped filling cell disagrees at {(s, t)}")
    for (s, t, u) in disjoint_triples(n):
        rep.checked += 1
        if _phistu_lhs(C, mp, s, t, u) != _phistu_rhs(C, mp, s, t, u):
            rep.add("cocycle", f"filling-cell associativity fails at {(s, t, u)}")
    return rep


def _phistu_lhs(C, mp: SystemMap, s: Subset, t: Subset, u: Subset):
    src, tgt = mp.src, mp.tgt
    tu = union(t, u)
    f_s = mp.f_at(C, s)
    x_s1_tgt = C.tgt1(f_s)
    c_s_tu = src.c_at(C, s, tu)
    c_tu = src.c_at(C, t, u)
    cp_tu = tgt.c_at(C, t, u)
    f_t, f_u = mp.f_at(C, t), mp.f_at(C, u)
    upper = C.comp1(
        C.lsum_one(C.sum_obj(x_s1_tgt, C.tgt1(f_t)), f_u),
        C.lsum_one(x_s1_tgt, C.rsum_one(f_t, src.x_at(C, u))),
    )
    th1 = whisker_l(C, upper, whisker_r(C, C.sigma(f_s, c_tu), c_s_tu))
    lower = C.comp1(C.rsum_one(f_s, src.x_at(C, tu)), c_s_tu)
    gamma_tu = mp.gamma_at(C, t, u)
    th2 = whisker_r(C, C.lsum_two(x_s1_tgt, gamma_tu), lower)
    th3 = whisker_l(C, C.lsum_one(x_s1_tgt, cp_tu), mp.gamma_at(C, s, tu))
    return vseq(C, th1, th2, th3)


def _phistu_rhs(C, mp: SystemMap, s: Subset, t: Subset, u: Subset):
    src, tgt = mp.src, mp.tgt
    st = union(s, t)
    x_u = src.x_at(C, u)
    f_u = mp.f_at(C, u)
    c_st_u = src.c_at(C, st, u)
    c_st = src.c_at(C, s, t)
    cp_st = tgt.c_at(C, s, t)
    f_st = mp.f_at(C, st)
    upper = C.lsum_one(C.sum_obj(C.tgt1(mp.f_at(C, s)), C.tgt1(mp.f_at(C, t))), f_u)
    th1 = whisker_l(C, upper, whisker_r(C, C.rsum_two(mp.gamma_at(C, s, t), x_u), c_st_u))
    lower = C.comp1(C.rsum_one(f_st, x_u), c_st_u)
    th2 = whisker_r(C, C.sigma_inv(cp_st, f_u), lower)
    th3 = whisker_l(C, C.rsum_one(cp_st, C.tgt1(f_u)), mp.gamma_at(C, st, u))
    return vseq(C, th1, th2, th3)


def validate_system_two_cell(C, cell: SystemTwoCell, gray: bool) -> ValidationReport:
    rep = ValidationReport(f"system 2-cell (n={cell.n})")
    n = cell.n
    for s in nonempty_subsets_of(n):
        a = cell.alpha_at(C, s)
        rep.checked += 1
        if C.src2(a) != cell.src.f_at(C, s) or C.tgt2(a) != cell.tgt.f_at(C, s):
            rep.add("structure", f"component at {s} has wrong endpoints")
    if rep.issues:
        return rep
    for (s, t) in disjoint_pairs(n):
        rep.checked += 1
        st = union(s, t)
        summed = C.sum_two(cell.alpha_at(C, s), cell.alpha_at(C, t))
        c_src = cell.src.src.c_at(C, s, t)
        c_tgt = cell.src.tgt.c_at(C, s, t)
        if gray:
            lhs = C.vcomp(
                whisker_l(C, c_tgt, cell.alpha_at(C, st)),
                cell.src.gamma_at(C, s, t),
            )
            rhs = C.vcomp(
                cell.tgt.gamma_at(C, s, t),
                whisker_r(C, summed, c_src),
            )
        else:
            lhs = whisker_l(C, c_tgt, cell.alpha_at(C, st))
            rhs = whisker_r(C, summed, c_src)
        if lhs != rhs:
            rep.add("compat", f"component compatibility fails at {(s, t)}")
    return rep


# -- composition of level cells -------------------------------------------------


_COMPOSE_CACHE: dict = {}


def compose_system_maps(C, g: SystemMap, f: SystemMap) -> SystemMap:
    """Composite 1-cell; over a cubical carrier the filling cells paste
    through one interchanger per pair."""
    key = (C, g, f)
    cached = _COMPOSE_CACHE.get(key)
    if cached is not None:
        return cached
    n = f.n
    comps = {s: C.comp1(g.f_at(C, s), f.f_at(C, s)) for s in nonempty_subsets_of(n)}
    if f.gamma is None and g.gamma is None:
        out = make_system_map(C, f.src, g.tgt, comps, None)
        _COMPOSE_CACHE[key] = out
        return out
    gammas = {}
    for (s, t) in disjoint_pairs(n):
        f_s, f_t = f.f_at(C, s), f.f_at(C, t)
        g_s, g_t = g.f_at(C, s), g.f_at(C, t)
        x_t = f.src.x_at(C, t)
        xp_t = f.tgt.x_at(C, t)
        xpp_s = C.tgt1(g_s)
        c_st = f.src.c_at(C, s, t)
        th1 = whisker_l(
            C, C.lsum_one(xpp_s, g_t),
            whisker_r(C, C.sigma_inv(g_s, f_t), C.comp1(C.rsum_one(f_s, x_t), c_st)),
        )
        th2 = whisker_l(
            C,
            C.comp1(C.lsum_one(xpp_s, g_t), C.rsum_one(g_s, xp_t)),
            f.gamma_at(C, s, t),
        )
        th3 = whisker_r(C, g.gamma_at(C, s, t), f.f_at(C, union(s, t)))
        gammas[(s, t)] = vseq(C, th1, th2, th3)
    out = make_system_map(C, f.src, g.tgt, comps, gammas)
    _COMPOSE_CACHE[key] = out
    return out


def identity_system_map(C, sys: SubsetSystem, gray: bool) -> SystemMap:
    n = sys.n
    comps = {s: C.id1(sys.x_at(C, s)) for s in nonempty_subsets_of(n)}
    if not gray:
        return make_system_map(C, sys, sys, comps, None)
    gammas = {(s, t): C.id2(sys.c_at(C, s, t)) for (s, t) in disjoint_pairs(n)}
    return make_system_map(C, sys, sys, comps, gammas)


def is_identity_system_map(C, mp: SystemMap) -> bool:
    if mp.src != mp.tgt:
        return False
    if not all(C.is_id1(v) for v in mp.f):
        return False
    if mp.gamma is not None and not all(C.is_id2(v) for v in mp.gamma):
        return False
    return True


def vcomp_system_cells(C, b: SystemTwoCell, a: SystemTwoCell) -> SystemTwoCell:
    return mk_system_two_cell(
        a.n, a.src, b.tgt,
        tuple(C.vcomp(x, y) for x, y in zip(b.alpha, a.alpha)),
    )


def hcomp_system_cells(C, b: SystemTwoCell, a: SystemTwoCell) -> SystemTwoCell:
    return mk_system_two_cell(
        a.n,
        compose_system_maps(C, b.src, a.src),
        compose_system_maps(C, b.tgt, a.tgt),
        tuple(C.hcomp2(x, y) for x, y in zip(b.alpha, a.alpha)),
    )


def identity_system_two_cell(C, mp: SystemMap) -> SystemTwoCell:
    return mk_system_two_cell(mp.n, mp, mp, tuple(C.id2(v) for v in mp.f))


def is_identity_system_two_cell(C, cell: SystemTwoCell) -> bool:
    return cell.src == cell.tgt and all(C.is_id2(v) for v in cell.alpha)


# -- enumeration -----------------------------------------------------------------


def _canonical_pairs(n: int) -> list[tuple[Subset, Subset]]:
    return [(s, t) for (s, t) in disjoint_pairs(n) if subset_key(s) < subset_key(t)]


def enumerate_systems(C, n: int, ceiling: int) -> list[SubsetSystem]:
    subs = nonempty_subsets_of(n)
    canon = _canonical_pairs(n)
    out: list[SubsetSystem] = []

    def place_x(i: int, xmap: dict):
        if i == len(subs):
            place_c(0, xmap, {})
            return
        s = subs[i]
        for val in C.objects_iter():
            xmap[s] = val
            # prune: some connecting 1-cell must exist for each completed pair
            ok = True
            for (a, b) in canon:
                if a in xmap and b in xmap and union(a, b) in xmap:
                    target = C.sum_obj(xmap[a], xmap[b])
                    if not C.has_obj(target) or not C.one_cells_between(xmap[union(a, b)], target):
                        ok = False
                        break
            if ok:
                place_x(i + 1, xmap)
        xmap.pop(s, None)

    def place_c(j: int, xmap: dict, cmap: dict):
        if j == len(canon):
            full = dict(cmap)
            for (s, t) in canon:
                full[(t, s)] = C.comp1(C.beta_obj(xmap[s], xmap[t]), cmap[(s, t)])
            sys = make_system(C, n, xmap, full)
            if validate_system(C, sys).ok:
                out.append(sys)
                if len(out) > ceiling:
                    raise CellCeilingExceeded("object enumeration", len(out), ceiling)
            return
        s, t = canon[j]
        for c in C.one_cells_between(xmap[union(s, t)], C.sum_obj(xmap[s], xmap[t])):
            cmap[(s, t)] = c
            if _partial_cocycle_ok(C, n, xmap, cmap):
                place_c(j + 1, xmap, cmap)
        cmap.pop((s, t), None)

    def _partial_cocycle_ok(C, n, xmap, cmap) -> bool:
        full = dict(cmap)
        for (s, t) in list(cmap):
            full[(t, s)] = C.comp1(C.beta_obj(xmap[s], xmap[t]), cmap[(s, t)])
        for (s, t, u) in disjoint_triples(n):
            if (s, t) in full and union(s, t) and (union(s, t), u) in full \
               and (t, u) in full and (s, union(t, u)) in full:
                lhs = C.comp1(C.rsum_one(full[(s, t)], xmap[u]), full[(union(s, t), u)])
                rhs = C.comp1(C.lsum_one(xmap[s], full[(t, u)]), full[(s, union(t, u))])
                if lhs != rhs:
                    return False
        return True

    if n == 0:
        return [mk_system(0, (), ())]
    place_x(0, {})
    out.sort(key=lambda s: _system_sort_key(s))
    return out


def _system_sort_key(sys: SubsetSystem):
    return (tuple(repr(v) for v in sys.x), tuple(repr(v) for v in sys.c))


def enumerate_system_maps(C, src: SubsetSystem, tgt: SubsetSystem, gray: bool,
                          ceiling: int) -> list[SystemMap]:
    n = src.n
    subs = nonempty_subsets_of(n)
    canon = _canonical_pairs(n)
    out: list[SystemMap] = []

    def place_f(i: int, fmap: dict):
        if i == len(subs):
            if gray:
                place_gamma(0, fmap, {})
            else:
                mp = make_system_map(C, src, tgt, fmap, None)
                if validate_system_map(C, mp, gray=False).ok:
                    out.append(mp)
            return
        s = subs[i]
        for val in C.one_cells_between(src.x_at(C, s), tgt.x_at(C, s)):
            fmap[s] = val
            if gray or _partial_squares_ok(fmap):
                place_f(i + 1, fmap)
        fmap.pop(s, None)

    def _partial_squares_ok(fmap: dict) -> bool:
        for (s, t) in disjoint_pairs(n):
            st = union(s, t)
            if s in fmap and t in fmap and st in fmap:
                lhs = C.comp1(tgt.c_at(C, s, t), fmap[st])
                rhs = C.comp1(C.sum_one(fmap[s], fmap[t]), src.c_at(C, s, t))
                if lhs != rhs:
                    return False
        return True

    def place_gamma(j: int, fmap: dict, gmap: dict):
        if j == len(canon):
            full = dict(gmap)
            for (s, t) in canon:
                full[(t, s)] = swapped_gamma(
                    C, src, tgt,
                    lambda u: fmap[u] if u else C.id1(C.unit_obj()),
                    gmap[(s, t)], s, t,
                )
            mp = make_system_map(C, src, tgt, fmap, full)
            if validate_system_map(C, mp, gray=True).ok:
                out.append(mp)
                if len(out) > ceiling:
                    raise CellCeilingExceeded("1-cell enumeration", len(out), ceiling)
            return
        s, t = canon[j]
        stub = make_system_map(C, src, tgt, fmap, None)
        src1 = _gamma_source(C, stub, s, t)
        tgt1 = _gamma_target(C, stub, s, t)
        base = C.base if hasattr(C, "base") else C
        for g in C.two_cells_between(src1, tgt1):
            if vertical_inverse(base, g) is None:
                continue
            gmap[(s, t)] = g
            place_gamma(j + 1, fmap, gmap)
        gmap.pop((s, t), None)

    place_f(0, {})
    out.sort(key=lambda m: (tuple(repr(v) for v in m.f),
                            tuple(repr(v) for v in (m.gamma or ()))))
    return out


def enumerate_system_two_cells(C, u: SystemMap, v: SystemMap, gray: bool,
                               ceiling: int) -> list[SystemTwoCell]:
    n = u.n
    subs = nonempty_subsets_of(n)
    out: list[SystemTwoCell] = []

    def place(i: int, amap: dict):
        if i == len(subs):
            cell = mk_system_two_cell(n, u, v, tuple(amap[s] for s in subs))
            if validate_system_two_cell(C, cell, gray).ok:
                out.append(cell)
                if len(out) > ceiling:
                    raise CellCeilingExceeded("2-cell enumeration", len(out), ceiling)
            return
        s = subs[i]
        for a in C.two_cells_between(u.f_at(C, s), v.f_at(C, s)):
            amap[s] = a
            place(i + 1, amap)
        amap.pop(s, None)

    if u.src != v.src or u.tgt != v.tgt:
        return []
    place(0, {})
    out.sort(key=lambda c: tuple(repr(a) for a in c.alpha))
    return out


# -- level builders ----------------------------------------------------------------


def _build_level(C, n: int, gray: bool, name: str, ceiling: int,
                 systems: list | None = None) -> FiniteTwoCategory:
    if systems is None:
        systems = enumerate_systems(C, n, ceiling)
    one: dict = {}
    total = len(systems)
    for a in systems:
        for b in systems:
            for mp in enumerate_system_maps(C, a, b, gray, ceiling):
                one[mp] = (a, b, is_identity_system_map(C, mp))
                total += 1
                if total > ceiling:
                    raise CellCeilingExceeded("level build", total, ceiling)
    two: dict = {}
    maps = list(one)
    by_pair: dict = {}
    for mp in maps:
        by_pair.setdefault((mp.src, mp.tgt), []).append(mp)
    for (a, b), cells in by_pair.items():
        for u in cells:
            for v in cells:
                for cell in enumerate_system_two_cells(C, u, v, gray, ceiling):
                    two[cell] = (u, v, is_identity_system_two_cell(C, cell))
                    total += 1
                    if total > ceiling:
                        raise CellCeilingExceeded("level build", total, ceiling)
    vcomp = {}
    for b2 in two:
        for a2 in two:
            if a2.tgt is b2.src or a2.tgt == b2.src:
                vcomp[(b2, a2)] = vcomp_system_cells(C, b2, a2)
    hcomp1 = {}
    for g in maps:
        for f in maps:
            if f.tgt == g.src:
                hcomp1[(g, f)] = compose_system_maps(C, g, f)
    hcomp2 = {}
    for b2 in two:
        for a2 in two:
            if a2.src.tgt == b2.src.src:
                hcomp2[(b2, a2)] = mk_system_two_cell(
                    n,
                    hcomp1[(b2.src, a2.src)],
                    hcomp1[(b2.tgt, a2.tgt)],
                    tuple(C.hcomp2(x, y) for x, y in zip(b2.alpha, a2.alpha)),
                )
    level = FiniteTwoCategory(name, systems, one, two, vcomp, hcomp1, hcomp2)
    return level


def ko_level(C: PermutativeGrayMonoid, n: int,
             ceiling: int = DEFAULT_CELL_CEILING) -> FiniteTwoCategory:
    """The level at n+ over a cubical carrier, with filling cells."""
    return _build_level(C, n, True, f"Ko({C.name})({n})", ceiling)


def kt_level(C: PermutativeTwoCategory, n: int,
             ceiling: int = DEFAULT_CELL_CEILING) -> FiniteTwoCategory:
    """The level at n+ over a product carrier, with strictly commuting squares.

    Also accepts any carrier exposing a genuine product sum (for example the
    bounded inverse-construction fragment)."""
    return _build_level(C, n, False, f"K({getattr(C, 'name', '?')})({n})", ceiling)


# -- reindexing, functoriality, truncations ------------------------------------------


_REINDEX_CACHE: dict = {}


def reindex_system(C, sys: SubsetSystem, phi: PointedMap) -> SubsetSystem:
    key = (C, sys, phi)
    cached = _REINDEX_CACHE.get(key)
    if cached is not None:
        return cached
    n = phi.n
    xmap = {u: sys.x_at(C, phi.preimage(u)) for u in nonempty_subsets_of(n)}
    cmap = {
        (u, v): sys.c_at(C, phi.preimage(u), phi.preimage(v))
        for (u, v) in disjoint_pairs(n)
    }
    out = make_system(C, n, xmap, cmap)
    _REINDEX_CACHE[key] = out
    return out


_REINDEX_MAP_CACHE: dict = {}


def reindex_system_map(C, mp: SystemMap, phi: PointedMap) -> SystemMap:
    key = (C, mp, phi)
    cached = _REINDEX_MAP_CACHE.get(key)
    if cached is not None:
        return cached
    n = phi.n
    fmap = {u: mp.f_at(C, phi.preimage(u)) for u in nonempty_subsets_of(n)}
    gmap = None
    if mp.gamma is not None:
        gmap = {
            (u, v): mp.gamma_at(C, phi.preimage(u), phi.preimage(v))
            for (u, v) in disjoint_pairs(n)
        }
    out = make_system_map(
        C, reindex_system(C, mp.src, phi), reindex_system(C, mp.tgt, phi), fmap, gmap
    )
    _REINDEX_MAP_CACHE[key] = out
    return out


def reindex_system_two_cell(C, cell: SystemTwoCell, phi: PointedMap) -> SystemTwoCell:
    n = phi.n
    return mk_system_two_cell(
        n,
        reindex_system_map(C, cell.src, phi),
        reindex_system_map(C, cell.tgt, phi),
        tuple(cell.alpha_at(C, phi.preimage(u)) for u in nonempty_subsets_of(n)),
    )


def ko_phi(C, phi: PointedMap, level_m: FiniteTwoCategory,
           level_n: FiniteTwoCategory) -> TwoFunctor:
    """The transition 2-functor between built levels along a pointed map."""
    omap = {s: reindex_system(C, s, phi) for s in level_m.objects}
    fmap = {f: reindex_system_map(C, f, phi) for f in level_m.one_src}
    amap = {a: reindex_system_two_cell(C, a, phi) for a in level_m.two_src}
    for v in omap.values():
        if v not in set(level_n.objects):
            raise ValueError(f"reindexed system missing from target level: {v!r}")
    return TwoFunctor(level_m, level_n, omap, fmap, amap, name=f"phi*{phi.imgs}")


def _gamma_truncation(C, N: int, gray: bool, name: str, ceiling: int) -> GammaTruncation:
    build = ko_level if gray else kt_level
    levels = [build(C, m, ceiling) for m in range(N + 1)]
    maps = {}
    for m in range(N + 1):
        for n in range(N + 1):
            for phi in all_pointed_maps(m, n):
                maps[phi] = ko_phi(C, phi, levels[m], levels[n])
    return GammaTruncation(name, N, levels, maps)


def ko_gamma(C: PermutativeGrayMonoid, N: int,
             ceiling: int = DEFAULT_CELL_CEILING) -> GammaTruncation:
    return _gamma_truncation(C, N, True, f"Ko({C.name})", ceiling)


def kt_gamma(C: PermutativeTwoCategory, N: int,
             ceiling: int = DEFAULT_CELL_CEILING) -> GammaTruncation:
    return _gamma_truncation(C, N, False, f"K({getattr(C, 'name', '?')})", ceiling)


def ko_map(M: MonoidalFunctor, level_src: FiniteTwoCategory,
           level_tgt: FiniteTwoCategory) -> TwoFunctor:
    """Apply a normal-oplax functor levelwise: images are re-validated, and a
    failing image is a hard error (it indicates an invalid input functor)."""
    if M.variant not in ("strict", "normal-oplax"):
        raise ValueError("levelwise image needs a strict or normal-oplax functor")
    C, D = M.source, M.target
    F = M.functor

    def on_system(sys: SubsetSystem) -> SubsetSystem:
        n = sys.n
        xmap = {s: F.omap[sys.x_at(C, s)] for s in nonempty_subsets_of(n)}
        cmap = {}
        for (s, t) in disjoint_pairs(n):
            xs, xt = sys.x_at(C, s), sys.x_at(C, t)
            cmap[(s, t)] = D.comp1(M.theta[(xs, xt)], F.fmap[sys.c_at(C, s, t)])
        out = make_system(D, n, xmap, cmap)
        r = validate_system(D, out)
        if not r.ok:
            raise ValueError(f"image system fails target axioms: {r.first()}")
        return out

    def on_map(mp: SystemMap) -> SystemMap:
        n = mp.n
        fmap = {s: F.fmap[mp.f_at(C, s)] for s in nonempty_subsets_of(n)}
        gmap = None
        if mp.gamma is not None:
            gmap = {}
            for (s, t) in disjoint_pairs(n):
                ys, yt = mp.tgt.x_at(C, s), mp.tgt.x_at(C, t)
                gmap[(s, t)] = whisker_l(D, M.theta[(ys, yt)], F.amap[mp.gamma_at(C, s, t)])
        out = make_system_map(D, on_system(mp.src), on_system(mp.tgt), fmap, gmap)
        r = validate_system_map(D, out, gray=mp.gamma is not None)
        if not r.ok:
            raise ValueError(f"image map fails target axioms: {r.first()}")
        return out

    omap = {s: on_system(s) for s in level_src.objects}
    fmap = {f: on_map(f) for f in level_src.one_src}
    amap = {
        a: mk_system_two_cell(a.n, fmap[level_src.src2(a)], fmap[level_src.tgt2(a)],
                              tuple(F.amap[x] for x in a.alpha))
        for a in level_src.two_src
    }
    return TwoFunctor(level_src, level_tgt, omap, fmap, amap, name=f"K({M.name})")


def kt_to_ko(C: PermutativeTwoCategory, n: int,
             ceiling: int = DEFAULT_CELL_CEILING) -> TwoFunctor:
    """The inclusion of the strict level into the cubical one over promote(C)."""
    P = promote(C)
    strict = kt_level(C, n, ceiling)
    loose = ko_level(P, n, ceiling)

    def widen(mp: SystemMap) -> SystemMap:
        gmap = {}
        stub = make_system_map(P, mp.src, mp.tgt,
                               {s: mp.f_at(C, s) for s in nonempty_subsets_of(n)}, None)
        for (s, t) in disjoint_pairs(n):
            gmap[(s, t)] = P.id2(_gamma_source(P, stub, s, t))
        return make_system_map(
            P, mp.src, mp.tgt,
            {s: mp.f_at(C, s) for s in nonempty_subsets_of(n)}, gmap,
        )

    omap = {s: s for s in strict.objects}
    fmap = {f: widen(f) for f in strict.one_src}
    amap = {
        a: mk_system_two_cell(a.n, fmap[strict.src2(a)], fmap[strict.tgt2(a)], a.alpha)
        for a in strict.two_src
    }
    return TwoFunctor(strict, loose, omap, fmap, amap, name=f"inc({C.name},{n})")


def level_one_comparison(C, level: FiniteTwoCategory) -> TwoFunctor:
    """Evaluation at the full singleton: the level at 1+ against the carrier."""
    s1 = (1,)
    base = C.base
    omap = {sys: sys.x_at(C, s1) for sys in level.objects}
    fmap = {mp: mp.f_at(C, s1) for mp in level.one_src}
    amap = {cell: cell.alpha_at(C, s1) for cell in level.two_src}
    return TwoFunctor(level, base, omap, fmap, amap, name="ev1")


# -- partition cells ------------------------------------------------------------------


def partition_cell(C, sys: SubsetSystem, s: Subset, parts: list[Subset]):
    """The canonical 1-cell x_s -> x_{s_1} (+) ... (+) x_{s_a}, peeling blocks
    left to right.  Alternative bracketings or braiding reorderings evaluate
    to the same cell; that is a tested property, not an assumption."""
    joined: list[int] = []
    for p in parts:
        if not p:
            raise ValueError("empty partition block")
        joined.extend(p)
    if sorted(joined) != list(s) or len(set(joined)) != len(joined):
        raise ValueError(f"{parts!r} is not a partition of {s!r}")
    if len(parts) == 0:
        return C.id1(C.unit_obj())
    if len(parts) == 1:
        return C.id1(sys.x_at(C, s))
    rest = tuple(sorted(set(s) - set(parts[0])))
    head = sys.c_at(C, parts[0], rest)
    tail = partition_cell(C, sys, rest, parts[1:])
    return C.comp1(C.lsum_one(sys.x_at(C, parts[0]), tail), head)


def partition_filling(C, mp: SystemMap, s: Subset, parts: list[Subset]):
    """The canonical 2-cell filling the square of a partition cell against a
    system map: ((+)_k f_{s_k}) . part_src  =>  part_tgt . f_s."""
    if len(parts) <= 1:
        return C.id2(mp.f_at(C, s)) if parts else C.id2(C.id1(C.unit_obj()))
    s1 = parts[0]
    rest = tuple(sorted(set(s) - set(s1)))
    f_s1 = mp.f_at(C, s1)
    x_s1_tgt = C.tgt1(f_s1)
    crest_src = partition_cell(C, mp.src, rest, parts[1:])
    crest_tgt = partition_cell(C, mp.tgt, rest, parts[1:])
    c_head = mp.src.c_at(C, s1, rest)
    f_rest_sum = sum_one_cells(C, [mp.f_at(C, p) for p in parts[1:]])
    th1 = whisker_l(
        C, C.lsum_one(x_s1_tgt, f_rest_sum),
        whisker_r(C, C.sigma(f_s1, crest_src), c_head),
    )
    g_rest = partition_filling(C, mp, rest, parts[1:])
    th2 = whisker_r(
        C, C.lsum_two(x_s1_tgt, g_rest),
        C.comp1(C.rsum_one(f_s1, mp.src.x_at(C, rest)), c_head),
    )
    th3 = whisker_l(C, C.lsum_one(x_s1_tgt, crest_tgt), mp.gamma_at(C, s1, rest))
    return vseq(C, th1, th2, th3)


# -- lazy levels ------------------------------------------------------------------


class LazyKtLevel:
    """Cell operations of a level over an arbitrary permutative carrier,
    without enumeration.  Cells are strict system maps (gamma=None) and
    componentwise 2-cells; everything is computed on demand, so this works
    over carriers that are too large to tabulate."""

    def __init__(self, C, m: int):
        self.C = C
        self.m = m

    def id1(self, sys: SubsetSystem) -> SystemMap:
        return identity_system_map(self.C, sys, gray=False)

    def id2(self, mp: SystemMap) -> SystemTwoCell:
        return identity_system_two_cell(self.C, mp)

    def comp1(self, g: SystemMap, f: SystemMap) -> SystemMap:
        return compose_system_maps(self.C, g, f)

    def vcomp(self, b: SystemTwoCell, a: SystemTwoCell) -> SystemTwoCell:
        return vcomp_system_cells(self.C, b, a)

    def hcomp2(self, b: SystemTwoCell, a: SystemTwoCell) -> SystemTwoCell:
        return hcomp_system_cells(self.C, b, a)

    def src1(self, mp: SystemMap) -> SubsetSystem:
        return mp.src

    def tgt1(self, mp: SystemMap) -> SubsetSystem:
        return mp.tgt

    def src2(self, cell: SystemTwoCell) -> SystemMap:
        return cell.src

    def tgt2(self, cell: SystemTwoCell) -> SystemMap:
        return cell.tgt

    def is_id1(self, mp: SystemMap) -> bool:
        return is_identity_system_map(self.C, mp)

    def is_id2(self, cell: SystemTwoCell) -> bool:
        return is_identity_system_two_cell(self.C, cell)


class LazyKtGamma:
    """The K-theory diagram of a permutative carrier, with formula levels.

    Levels are unbounded in size; only the operations and the transition
    reindexings are provided.  ``cap`` limits nothing here but records the
    range callers intend to exercise."""

    def __init__(self, C, cap: int, name: str = ""):
        self.C = C
        self.cap = cap
        self.name = name or f"K({getattr(C, 'name', '?')})"
        self._levels: dict[int, LazyKtLevel] = {}

    def level(self, m: int) -> LazyKtLevel:
        if m not in self._levels:
            self._levels[m] = LazyKtLevel(self.C, m)
        return self._levels[m]

    def phi_star(self, phi: PointedMap, dim: int, cell):
        if dim == 0:
            return reindex_system(self.C, cell, phi)
        if dim == 1:
            return reindex_system_map(self.C, cell, phi)
        return reindex_system_two_cell(self.C, cell, phi)

    def all_maps(self):
        out = []
        for m in range(self.cap + 1):
            for n in range(self.cap + 1):
                out.extend(all_pointed_maps(m, n))
        return out

    def point(self, dim: int):
        sys = mk_system(0, (), ())
        if dim == 0:
            return sys
        mp = identity_system_map(self.C, sys, gray=False)
        if dim == 1:
            return mp
        return identity_system_two_cell(self.C, mp)


def generated_kt_truncation(C, N: int, seeds: dict[int, list[SubsetSystem]],
                            name: str = "", ceiling: int = DEFAULT_CELL_CEILING):
    """The full reindexing-closed subdiagram of the K-theory of a carrier
    generated by the given level objects.

    Levels are full on the closure of the seeds under every transition map
    within the cap; this is the canonical finite fragment containing a given
    family of systems when the whole level is too large to tabulate.
    """
    from .gamma import GammaTruncation

    per_level: list[list[SubsetSystem]] = [[] for _ in range(N + 1)]
    seen: list[set] = [set() for _ in range(N + 1)]
    for m, syss in seeds.items():
        for sys in syss:
            if sys not in seen[m]:
                seen[m].add(sys)
                per_level[m].append(sys)
    changed = True
    while changed:
        changed = False
        for m in range(N + 1):
            for n in range(N + 1):
                for phi in all_pointed_maps(m, n):
                    for sys in list(per_level[m]):
                        img = reindex_system(C, sys, phi)
                        if img not in seen[n]:
                            seen[n].add(img)
                            per_level[n].append(img)
                            changed = True
    levels = [
        _build_level(C, m, False, f"{name}({m})", ceiling, systems=per_level[m])
        for m in range(N + 1)
    ]
    maps = {}
    for m in range(N + 1):
        for n in range(N + 1):
            for phi in all_pointed_maps(m, n):
                maps[phi] = ko_phi(C, phi, levels[m], levels[n])
    return GammaTruncation(name or f"K({getattr(C, 'name', '?')})|gen", N, levels, maps)
