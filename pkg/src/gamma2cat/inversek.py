"""The block-tuple indexing category and the inverse construction.

Objects of the indexing category are tuples of positive integers; a
morphism is a total function between the disjoint unions of the blocks such
that the preimage of each target block is empty or contained in a single
source block.  The monoidal product is concatenation, with the block-swap
braiding.

Applying a reduced diagram blockwise produces a product-valued diagram on
this category, and its Grothendieck construction is a permutative
2-category whose cells are pairs [phim, component tuple].  The construction
is infinite, so cells are evaluated lazily; all global axioms are verified
on (max-length, max-entry)-bounded fragments.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .subsets import PointedMap
from .twocat import InternedCell, ValidationReport
from .ktheory import LazyKtGamma  # noqa: F401  (re-exported for callers)


@dataclass(frozen=True, eq=False)
class AMorphism(InternedCell):
    """A block-respecting map between tuples.

    ``table[i][a-1] = (j, b)`` sends element a of source block i (0-based
    blocks, 1-based elements) to element b of target block j.
    """

    src: tuple
    tgt: tuple
    table: tuple

    def _key(self):
        return (self.src, self.tgt, self.table)

    @property
    def is_identity(self) -> bool:
        return self.src == self.tgt and self.table == a_identity(self.src).table

    def block_condition_holds(self) -> bool:
        owner: dict[int, int] = {}
        for i, row in enumerate(self.table):
            for (j, _b) in row:
                if owner.setdefault(j, i) != i:
                    return False
        return True

    def covering_block(self, j: int) -> int | None:
        """The unique source block hitting target block j, or None."""
        for i, row in enumerate(self.table):
            for (jj, _b) in row:
                if jj == j:
                    return i
        return None


AMorphism._pool = {}


def mk_amorphism(src: tuple, tgt: tuple, table: tuple) -> AMorphism:
    return AMorphism._intern(AMorphism(src, tgt, table))


@lru_cache(maxsize=None)
def a_identity(mvec: tuple) -> AMorphism:
    table = tuple(
        tuple((i, a) for a in range(1, m + 1)) for i, m in enumerate(mvec)
    )
    return mk_amorphism(mvec, mvec, table)


@lru_cache(maxsize=None)
def a_hom(mvec: tuple, nvec: tuple) -> tuple[AMorphism, ...]:
    """All block-respecting maps, in lexicographic order on image tuples."""
    positions = [(j, b) for j, n in enumerate(nvec) for b in range(1, n + 1)]
    slots = sum(mvec)
    if slots == 0:
        return (mk_amorphism(mvec, nvec, ()),) if len(mvec) == 0 else (
            mk_amorphism(mvec, nvec, tuple(() for _ in mvec)),
        )
    if not positions:
        return ()
    out = []
    for imgs in itertools.product(positions, repeat=slots):
        table = []
        k = 0
        for m in mvec:
            table.append(tuple(imgs[k:k + m]))
            k += m
        phim = AMorphism(mvec, nvec, tuple(table))
        if phim.block_condition_holds():
            out.append(AMorphism._intern(phim))
    return tuple(out)


def a_compose(psi: AMorphism, phi: AMorphism) -> AMorphism:
    """The composite 'phi then psi'; the block condition is re-verified."""
    if phi.tgt != psi.src:
        raise ValueError("block maps not composable")
    table = tuple(
        tuple(psi.table[j][b - 1] for (j, b) in row) for row in phi.table
    )
    out = AMorphism(phi.src, psi.tgt, table)
    if not out.block_condition_holds():
        raise ValueError("composite violates the block condition")
    return AMorphism._intern(out)


def a_concat(phi: AMorphism, psi: AMorphism) -> AMorphism:
    """Concatenation of block maps (the monoidal product)."""
    off = len(phi.tgt)
    table = phi.table + tuple(
        tuple((j + off, b) for (j, b) in row) for row in psi.table
    )
    return mk_amorphism(phi.src + psi.src, phi.tgt + psi.tgt, table)


def a_block_swap(mvec: tuple, nvec: tuple) -> AMorphism:
    """The braiding component: swap the two groups of blocks."""
    ln = len(nvec)
    table = tuple(
        tuple((ln + i, a) for a in range(1, m + 1)) for i, m in enumerate(mvec)
    ) + tuple(
        tuple((k, b) for b in range(1, n + 1)) for k, n in enumerate(nvec)
    )
    return mk_amorphism(mvec + nvec, nvec + mvec, table)


# -- decomposition ---------------------------------------------------------------


@dataclass(frozen=True)
class AMorphismDecomposition:
    """Per source block: the ordered hit set, the blockwise pointed maps, and
    the pair reordering that reassembles the morphism."""

    phim: AMorphism
    hit_sets: tuple          # hit_sets[i] = ordered tuple of target blocks j
    pointed: tuple           # pointed[i] = tuple of PointedMap, one per j
    reorder: tuple           # pairs (i, j) in source-major order
    owner: tuple             # owner[j] = covering source block, or None

    def pointed_at(self, i: int, j: int) -> PointedMap:
        return self.pointed[i][self.hit_sets[i].index(j)]


@lru_cache(maxsize=None)
def decompose(phim: AMorphism) -> AMorphismDecomposition:
    hit_sets = []
    pointed = []
    owner: list[int | None] = [None] * len(phim.tgt)
    for i, m in enumerate(phim.src):
        hits = sorted({j for (j, _b) in phim.table[i]})
        maps = []
        for j in hits:
            owner[j] = i
            imgs = tuple(
                b if jj == j else 0 for (jj, b) in phim.table[i]
            )
            maps.append(PointedMap(m, phim.tgt[j], imgs))
        hit_sets.append(tuple(hits))
        pointed.append(tuple(maps))
    reorder = tuple((i, j) for i in range(len(phim.src)) for j in hit_sets[i])
    return AMorphismDecomposition(phim, tuple(hit_sets), tuple(pointed), reorder,
                                  tuple(owner))


def reassemble(dec: AMorphismDecomposition) -> AMorphism:
    table = []
    for i, m in enumerate(dec.phim.src):
        row = []
        for a in range(1, m + 1):
            target = None
            for j, pm in zip(dec.hit_sets[i], dec.pointed[i]):
                b = pm(a)
                if b != 0:
                    target = (j, b)
                    break
            if target is None:
                raise ValueError("decomposition does not cover the source")
            row.append(target)
        table.append(tuple(row))
    return mk_amorphism(dec.phim.src, dec.phim.tgt, tuple(table))


# -- blockwise application of a reduced diagram -------------------------------------


def ax_apply(X, phim: AMorphism, dim: int, cells: tuple) -> tuple:
    """Apply a block map to a tuple of level cells: blockwise transition maps
    followed by factor permutation and unit insertion."""
    dec = decompose(phim)
    out = []
    for j, n_j in enumerate(phim.tgt):
        i = dec.owner[j]
        if i is None:
            bang = PointedMap(0, n_j, ())
            out.append(X.phi_star(bang, dim, X.point(dim)))
        else:
            out.append(X.phi_star(dec.pointed_at(i, j), dim, cells[i]))
    return tuple(out)


# -- Grothendieck cells -------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class GrothObj(InternedCell):
    mvec: tuple
    xs: tuple

    def _key(self):
        return (self.mvec, self.xs)


GrothObj._pool = {}


@dataclass(frozen=True, eq=False)
class GrothOne(InternedCell):
    phim: AMorphism
    src: GrothObj
    tgt: GrothObj
    fs: tuple

    def _key(self):
        return (self.phim, self.src, self.tgt, self.fs)


GrothOne._pool = {}


@dataclass(frozen=True, eq=False)
class GrothTwo(InternedCell):
    src: GrothOne
    tgt: GrothOne
    alphas: tuple

    def _key(self):
        return (self.src, self.tgt, self.alphas)


GrothTwo._pool = {}


def mk_groth_obj(mvec, xs) -> GrothObj:
    return GrothObj._intern(GrothObj(tuple(mvec), tuple(xs)))


def mk_groth_one(phim, src, tgt, fs) -> GrothOne:
    return GrothOne._intern(GrothOne(phim, src, tgt, tuple(fs)))


def mk_groth_two(src, tgt, alphas) -> GrothTwo:
    return GrothTwo._intern(GrothTwo(src, tgt, tuple(alphas)))


class GrothPerm:
    """The permutative 2-category assembled from a reduced diagram: cells are
    pairs of a block map and a component tuple, evaluated lazily.

    The sum is tuple concatenation (a genuine product 2-functor, so all
    interchangers are identities) and the braiding is [block swap, id].
    """

    flavor = "p2cat"

    def __init__(self, X, name: str = ""):
        self.X = X
        self.name = name or f"P({getattr(X, 'name', '?')})"
        # composites recur heavily in the bounded axiom scans; cache them
        # keyed by the interned argument cells
        self._memo_comp1: dict = {}
        self._memo_sum1: dict = {}
        self._memo_id1: dict = {}
        self._memo_id2: dict = {}

    # -- plain 2-category operations

    def _lvl(self, m: int):
        return self.X.level(m)

    def id1(self, o: GrothObj) -> GrothOne:
        out = self._memo_id1.get(o)
        if out is None:
            fs = tuple(self._lvl(m).id1(x) for m, x in zip(o.mvec, o.xs))
            out = mk_groth_one(a_identity(o.mvec), o, o, fs)
            self._memo_id1[o] = out
        return out

    def id2(self, u: GrothOne) -> GrothTwo:
        out = self._memo_id2.get(u)
        if out is None:
            alphas = tuple(
                self._lvl(m).id2(f) for m, f in zip(u.tgt.mvec, u.fs)
            )
            out = mk_groth_two(u, u, alphas)
            self._memo_id2[u] = out
        return out

    def comp1(self, v: GrothOne, u: GrothOne) -> GrothOne:
        out = self._memo_comp1.get((v, u))
        if out is not None:
            return out
        if u.tgt != v.src:
            raise ValueError("cells not composable")
        phim = a_compose(v.phim, u.phim)
        pushed = ax_apply(self.X, v.phim, 1, u.fs)
        fs = tuple(
            self._lvl(m).comp1(g, f)
            for m, g, f in zip(v.tgt.mvec, v.fs, pushed)
        )
        out = mk_groth_one(phim, u.src, v.tgt, fs)
        self._memo_comp1[(v, u)] = out
        return out

    def vcomp(self, b: GrothTwo, a: GrothTwo) -> GrothTwo:
        if a.tgt != b.src:
            raise ValueError("cells not composable")
        alphas = tuple(
            self._lvl(m).vcomp(x, y)
            for m, x, y in zip(a.src.tgt.mvec, b.alphas, a.alphas)
        )
        return mk_groth_two(a.src, b.tgt, alphas)

    def hcomp2(self, b: GrothTwo, a: GrothTwo) -> GrothTwo:
        pushed = ax_apply(self.X, b.src.phim, 2, a.alphas)
        alphas = tuple(
            self._lvl(m).hcomp2(x, y)
            for m, x, y in zip(b.src.tgt.mvec, b.alphas, pushed)
        )
        return mk_groth_two(
            self.comp1(b.src, a.src), self.comp1(b.tgt, a.tgt), alphas
        )

    def src1(self, u: GrothOne) -> GrothObj:
        return u.src

    def tgt1(self, u: GrothOne) -> GrothObj:
        return u.tgt

    def src2(self, a: GrothTwo) -> GrothOne:
        return a.src

    def tgt2(self, a: GrothTwo) -> GrothOne:
        return a.tgt

    def is_id1(self, u: GrothOne) -> bool:
        return u.phim.is_identity and u.src == u.tgt and all(
            self._lvl(m).is_id1(f) for m, f in zip(u.tgt.mvec, u.fs)
        )

    def is_id2(self, a: GrothTwo) -> bool:
        return a.src == a.tgt and all(
            self._lvl(m).is_id2(x) for m, x in zip(a.src.tgt.mvec, a.alphas)
        )

    # -- permutative structure

    def unit_obj(self) -> GrothObj:
        return mk_groth_obj((), ())

    def sum_obj(self, a: GrothObj, b: GrothObj) -> GrothObj:
        return mk_groth_obj(a.mvec + b.mvec, a.xs + b.xs)

    def sum_one(self, u: GrothOne, v: GrothOne) -> GrothOne:
        out = self._memo_sum1.get((u, v))
        if out is None:
            out = mk_groth_one(
                a_concat(u.phim, v.phim),
                self.sum_obj(u.src, v.src),
                self.sum_obj(u.tgt, v.tgt),
                u.fs + v.fs,
            )
            self._memo_sum1[(u, v)] = out
        return out

    def sum_two(self, a: GrothTwo, b: GrothTwo) -> GrothTwo:
        return mk_groth_two(
            self.sum_one(a.src, b.src),
            self.sum_one(a.tgt, b.tgt),
            a.alphas + b.alphas,
        )

    def lsum_one(self, a: GrothObj, u: GrothOne) -> GrothOne:
        return self.sum_one(self.id1(a), u)

    def rsum_one(self, u: GrothOne, a: GrothObj) -> GrothOne:
        return self.sum_one(u, self.id1(a))

    def lsum_two(self, a: GrothObj, x: GrothTwo) -> GrothTwo:
        return self.sum_two(self.id2(self.id1(a)), x)

    def rsum_two(self, x: GrothTwo, a: GrothObj) -> GrothTwo:
        return self.sum_two(x, self.id2(self.id1(a)))

    def sigma(self, u: GrothOne, v: GrothOne) -> GrothTwo:
        return self.id2(self.sum_one(u, v))

    def sigma_inv(self, u: GrothOne, v: GrothOne) -> GrothTwo:
        return self.sigma(u, v)

    def beta_obj(self, a: GrothObj, b: GrothObj) -> GrothOne:
        swapped = mk_groth_obj(b.mvec + a.mvec, b.xs + a.xs)
        fs = tuple(
            self._lvl(m).id1(x) for m, x in zip(swapped.mvec, swapped.xs)
        )
        return mk_groth_one(
            a_block_swap(a.mvec, b.mvec), self.sum_obj(a, b), swapped, fs
        )

    def has_obj(self, o) -> bool:
        if not isinstance(o, GrothObj) or len(o.mvec) != len(o.xs):
            return False
        cap = getattr(self.X, "cap", None)
        return all(m >= 1 and (cap is None or m <= cap) for m in o.mvec)

    def __repr__(self):
        return f"<GrothPerm {self.name}>"


def groth_compose(P: GrothPerm, v, u):
    """Composition of lazily evaluated cells, in either dimension."""
    if isinstance(v, GrothTwo):
        return P.vcomp(v, u)
    return P.comp1(v, u)


def groth_product(P: GrothPerm, u, v):
    """The monoidal product of lazily evaluated cells."""
    if isinstance(u, GrothObj):
        return P.sum_obj(u, v)
    if isinstance(u, GrothOne):
        return P.sum_one(u, v)
    return P.sum_two(u, v)


# -- bounded fragments ----------------------------------------------------------------


@lru_cache(maxsize=None)
def bounded_shapes(L: int, E: int) -> tuple[tuple, ...]:
    """All tuples of length <= L with entries 1..E, the empty tuple first."""
    out: list[tuple] = [()]
    for ln in range(1, L + 1):
        out.extend(itertools.product(range(1, E + 1), repeat=ln))
    return tuple(out)


class BoundedGroth(GrothPerm):
    """The (max-length, max-entry)-bounded fragment with cell enumeration.

    Not closed under the sum: callers must guard with ``has_obj``.  Requires
    a tabulated diagram so that component cells can be enumerated.
    """

    def __init__(self, X, L: int, E: int, name: str = ""):
        super().__init__(X, name)
        if E > X.cap:
            raise ValueError("entry bound exceeds the diagram cap")
        self.L = L
        self.E = E

    def has_obj(self, o) -> bool:
        return (
            super().has_obj(o)
            and len(o.mvec) <= self.L
            and all(m <= self.E for m in o.mvec)
        )

    def objects_iter(self):
        for shape in bounded_shapes(self.L, self.E):
            pools = [self.X.level(m).objects for m in shape]
            for xs in itertools.product(*pools):
                yield mk_groth_obj(shape, xs)

    def one_cells_between(self, o1: GrothObj, o2: GrothObj) -> list[GrothOne]:
        out = []
        for phim in a_hom(o1.mvec, o2.mvec):
            pushed = ax_apply(self.X, phim, 0, o1.xs)
            pools = [
                self.X.level(m).one_cells_between(p, y)
                for m, p, y in zip(o2.mvec, pushed, o2.xs)
            ]
            for fs in itertools.product(*pools):
                out.append(mk_groth_one(phim, o1, o2, fs))
        return out

    def two_cells_between(self, u: GrothOne, v: GrothOne) -> list[GrothTwo]:
        if u.phim != v.phim or u.src != v.src or u.tgt != v.tgt:
            return []
        pools = [
            self.X.level(m).two_cells_between(f, g)
            for m, f, g in zip(u.tgt.mvec, u.fs, v.fs)
        ]
        return [mk_groth_two(u, v, alphas) for alphas in itertools.product(*pools)]


# -- extension to lax maps ---------------------------------------------------------


def _guarded(rep, kind, label, fn) -> None:
    """Run one axiom instance; an ill-typed composite counts as a violation."""
    try:
        ok, message = fn()
    except (ValueError, KeyError) as exc:
        rep.add(kind, f"{label}: ill-typed instance ({exc})")
        return
    if not ok:
        rep.add(kind, message)


class BlockwiseLax:
    """A lax map applied blockwise: component 2-functors are products of the
    level maps; the structure cell at a block map is assembled from the
    blockwise pointed maps, with the unit-insertion components taken at the
    unique point."""

    def __init__(self, h):
        self.h = h  # a lax map of reduced diagrams

    def apply(self, mvec: tuple, dim: int, cells: tuple) -> tuple:
        return tuple(
            self.h.apply(m, dim, c) for m, c in zip(mvec, cells)
        )

    def lax(self, phim: AMorphism, xs: tuple) -> tuple:
        X = self.h.source
        dec = decompose(phim)
        out = []
        for j, n_j in enumerate(phim.tgt):
            i = phim.covering_block(j)
            if i is None:
                bang = PointedMap(0, n_j, ())
                out.append(self.h.lax(bang, X.point(0)))
            else:
                out.append(self.h.lax(dec.pointed_at(i, j), xs[i]))
        return tuple(out)


def a_on_lax(h) -> BlockwiseLax:
    return BlockwiseLax(h)


class POfLax:
    """The strict symmetric monoidal 2-functor between the Grothendieck
    constructions induced by a lax map of diagrams."""

    def __init__(self, h, PX: GrothPerm, PY: GrothPerm):
        self.ah = BlockwiseLax(h)
        self.PX = PX
        self.PY = PY

    def on(self, dim: int, cell):
        Y = self.PY.X
        if dim == 0:
            return mk_groth_obj(cell.mvec, self.ah.apply(cell.mvec, 0, cell.xs))
        h = self.ah.h
        if dim == 1:
            nvec = cell.tgt.mvec
            lax = self.ah.lax(cell.phim, cell.src.xs)
            fs = tuple(
                Y.level(m).comp1(h.apply(m, 1, f), l)
                for m, f, l in zip(nvec, cell.fs, lax)
            )
            return mk_groth_one(cell.phim, self.on(0, cell.src), self.on(0, cell.tgt), fs)
        nvec = cell.src.tgt.mvec
        lax = self.ah.lax(cell.src.phim, cell.src.src.xs)
        alphas = tuple(
            Y.level(m).hcomp2(h.apply(m, 2, al), Y.level(m).id2(l))
            for m, al, l in zip(nvec, cell.alphas, lax)
        )
        return mk_groth_two(self.on(1, cell.src), self.on(1, cell.tgt), alphas)


def p_of_lax(h, PX: GrothPerm, PY: GrothPerm) -> POfLax:
    return POfLax(h, PX, PY)


# -- bounded validation --------------------------------------------------------------


def validate_p_truncation(X, L: int, E: int, braiding=None) -> ValidationReport:
    """Verify every permutative-2-category axiom instance of the Grothendieck
    construction expressible within the bounds.

    ``braiding``, when given, replaces the built-in braiding components (used
    by mutation tests).  An empty scan is reported explicitly.
    """
    rep = ValidationReport(f"bounded inverse construction (L={L}, E={E})")
    B = BoundedGroth(X, L, E)
    beta = braiding or B.beta_obj
    objs = list(B.objects_iter())
    by_len: dict[int, list[GrothObj]] = {}
    for o in objs:
        by_len.setdefault(len(o.mvec), []).append(o)

    e = B.unit_obj()
    for o in objs:
        rep.checked += 1
        if B.sum_obj(e, o) != o or B.sum_obj(o, e) != o:
            rep.add("monoid", f"unit law fails at {o!r}")
    for la, lb, lc in itertools.product(by_len, by_len, by_len):
        if la + lb + lc > L:
            continue
        for a in by_len[la]:
            for b in by_len[lb]:
                for c in by_len[lc]:
                    rep.checked += 1
                    if B.sum_obj(B.sum_obj(a, b), c) != B.sum_obj(a, B.sum_obj(b, c)):
                        rep.add("monoid", f"associativity fails at ({a!r},{b!r},{c!r})")

    ones: list[GrothOne] = []
    for o1 in objs:
        for o2 in objs:
            ones.extend(B.one_cells_between(o1, o2))
    # braiding axioms
    for o1 in objs:
        for o2 in objs:
            if len(o1.mvec) + len(o2.mvec) > L:
                continue
            rep.checked += 1
            _guarded(rep, "braiding", f"involution at ({o1!r},{o2!r})", lambda o1=o1, o2=o2: (
                B.comp1(beta(o2, o1), beta(o1, o2)) == B.id1(B.sum_obj(o1, o2)),
                f"involution fails at ({o1!r},{o2!r})"))
            if o1 == e and not B.is_id1(beta(o1, o2)):
                rep.add("braiding", f"unit braiding not the identity at {o2!r}")
    for la, lb, lc in itertools.product(by_len, by_len, by_len):
        if la + lb + lc > L:
            continue
        for a in by_len[la]:
            for b in by_len[lb]:
                for c in by_len[lc]:
                    rep.checked += 1
                    _guarded(rep, "braiding", f"hexagon at ({a!r},{b!r},{c!r})",
                             lambda a=a, b=b, c=c: (
                                 beta(a, B.sum_obj(b, c)) == B.comp1(
                                     B.lsum_one(b, beta(a, c)),
                                     B.rsum_one(beta(a, b), c)),
                                 f"hexagon fails at ({a!r},{b!r},{c!r})"))

    # naturality of the braiding on bounded 1-cell pairs: bucket cells by the
    # lengths of their endpoint shapes so only fitting pairs are visited
    ones_by_shape_len: dict[tuple[int, int], list[GrothOne]] = {}
    for u in ones:
        ones_by_shape_len.setdefault(
            (len(u.src.mvec), len(u.tgt.mvec)), []
        ).append(u)
    for (ls1, lt1), bucket1 in ones_by_shape_len.items():
        for (ls2, lt2), bucket2 in ones_by_shape_len.items():
            if ls1 + ls2 > L or lt1 + lt2 > L:
                continue
            for u in bucket1:
                for v in bucket2:
                    rep.checked += 1
                    _guarded(rep, "braiding", f"naturality at ({u!r},{v!r})",
                             lambda u=u, v=v: (
                                 B.comp1(beta(u.tgt, v.tgt), B.sum_one(u, v))
                                 == B.comp1(B.sum_one(v, u), beta(u.src, v.src)),
                                 f"naturality fails at ({u!r},{v!r})"))

    comp_pairs: dict[tuple[int, int], list[tuple[GrothOne, GrothOne]]] = {}
    by_src: dict[GrothObj, list[GrothOne]] = {}
    for u in ones:
        by_src.setdefault(u.src, []).append(u)
    for u in ones:
        for v in by_src.get(u.tgt, []):
            comp_pairs.setdefault(
                (len(u.src.mvec), len(v.tgt.mvec)), []
            ).append((v, u))
    for (ls1, lt1), bucket1 in comp_pairs.items():
        for (ls2, lt2), bucket2 in comp_pairs.items():
            if ls1 + ls2 > L or lt1 + lt2 > L:
                continue
            for (v1, u1) in bucket1:
                for (v2, u2) in bucket2:
                    rep.checked += 1
                    lhs = B.sum_one(B.comp1(v1, u1), B.comp1(v2, u2))
                    rhs = B.comp1(B.sum_one(v1, v2), B.sum_one(u1, u2))
                    if lhs != rhs:
                        rep.add("sum-functor", "sum does not preserve composition "
                                f"at ({v1!r},{u1!r};{v2!r},{u2!r})")

    # 2-cells: whiskered naturality of the braiding on a bounded slice
    twos: list[GrothTwo] = []
    parallel: dict[tuple, list[GrothOne]] = {}
    for u in ones:
        parallel.setdefault((u.src, u.tgt, u.phim), []).append(u)
    for group in parallel.values():
        for u in group:
            for v in group:
                twos.extend(B.two_cells_between(u, v))
    twos_by_shape_len: dict[tuple[int, int], list[GrothTwo]] = {}
    for a in twos:
        twos_by_shape_len.setdefault(
            (len(a.src.src.mvec), len(a.src.tgt.mvec)), []
        ).append(a)
    for (ls1, lt1), bucket1 in twos_by_shape_len.items():
        for (ls2, lt2), bucket2 in twos_by_shape_len.items():
            if ls1 + ls2 > L or lt1 + lt2 > L:
                continue
            for a in bucket1:
                for b in bucket2:
                    rep.checked += 1
                    _guarded(rep, "braiding", f"2-cell naturality at ({a!r},{b!r})",
                             lambda a=a, b=b: (
                                 B.hcomp2(B.sum_two(b, a),
                                          B.id2(beta(a.src.src, b.src.src)))
                                 == B.hcomp2(B.id2(beta(a.src.tgt, b.src.tgt)),
                                             B.sum_two(a, b)),
                                 f"2-cell naturality fails at ({a!r},{b!r})"))

    if rep.checked == 0:
        rep.add("empty-scan", "bounds admit no axiom instances")
    return rep
