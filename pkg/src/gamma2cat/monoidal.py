"""Permutative 2-categories and permutative Gray-monoids, in cubical form.

Conventions used throughout the package:

* the canonical sum of 1-cells is ``f (+) g = (1 (+) g) . (f (+) 1)``,
  i.e. the first slot moves first;
* the interchanger ``sigma(f, g)`` is the invertible 2-cell
  ``(f (+) 1).(1 (+) g)  =>  (1 (+) g).(f (+) 1)``;
* braiding components ``beta(a, b): a (+) b -> b (+) a`` are stored per
  object pair.  For Gray-monoids their naturality on generator 1-cells is
  required to hold as an exact equality of 1-cells (the naturality 2-cells
  are identities), which is the quasi-strictness condition.

The Gray tensor product itself is never materialized; a Gray-monoid is
stored as the pair of one-sided sum 2-functors ``a (+) -`` and ``- (+) a``
together with the interchanger table.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable

from .twocat import (
    Cell,
    FiniteTwoCategory,
    TwoFunctor,
    ValidationReport,
    validate_two_category,
    validate_two_functor,
    vertical_inverse,
    whisker_l,
    whisker_r,
)


class _CatDelegate:
    """Mixin delegating plain 2-category operations to the underlying base."""

    base: FiniteTwoCategory

    def id1(self, a: Cell) -> Cell:
        return self.base.id1(a)

    def id2(self, f: Cell) -> Cell:
        return self.base.id2(f)

    def comp1(self, g: Cell, f: Cell) -> Cell:
        return self.base.comp1(g, f)

    def vcomp(self, b: Cell, a: Cell) -> Cell:
        return self.base.vcomp(b, a)

    def hcomp2(self, b: Cell, a: Cell) -> Cell:
        return self.base.hcomp2(b, a)

    def src1(self, f: Cell) -> Cell:
        return self.base.src1(f)

    def tgt1(self, f: Cell) -> Cell:
        return self.base.tgt1(f)

    def src2(self, a: Cell) -> Cell:
        return self.base.src2(a)

    def tgt2(self, a: Cell) -> Cell:
        return self.base.tgt2(a)

    def is_id1(self, f: Cell) -> bool:
        return self.base.is_id1(f)

    def is_id2(self, a: Cell) -> bool:
        return self.base.is_id2(a)

    def objects_iter(self) -> Iterable[Cell]:
        return iter(self.base.objects)

    def one_cells_between(self, a: Cell, b: Cell) -> list[Cell]:
        return self.base.one_cells_between(a, b)

    def two_cells_between(self, f: Cell, g: Cell) -> list[Cell]:
        return self.base.two_cells_between(f, g)

    def has_obj(self, a: Cell) -> bool:
        return a in self._objset()

    def _objset(self):
        try:
            return self.__objset
        except AttributeError:
            self.__objset = set(self.base.objects)
            return self.__objset


class PermutativeTwoCategory(_CatDelegate):
    """A strict monoid in 2-categories under cartesian product, with symmetry.

    The sum is a genuine product 2-functor, tabulated on pairs of cells.
    """

    flavor = "p2cat"

    def __init__(self, name, base, unit, sum_obj, sum_one, sum_two, beta):
        self.name = name
        self.base = base
        self.unit = unit
        self.sum_obj_table = dict(sum_obj)
        self.sum_one_table = dict(sum_one)
        self.sum_two_table = dict(sum_two)
        self.beta_table = dict(beta)

    def unit_obj(self) -> Cell:
        return self.unit

    def sum_obj(self, a: Cell, b: Cell) -> Cell:
        return self.sum_obj_table[(a, b)]

    def sum_one(self, f: Cell, g: Cell) -> Cell:
        return self.sum_one_table[(f, g)]

    def sum_two(self, a: Cell, b: Cell) -> Cell:
        return self.sum_two_table[(a, b)]

    def lsum_one(self, a: Cell, f: Cell) -> Cell:
        return self.sum_one(self.id1(a), f)

    def rsum_one(self, f: Cell, a: Cell) -> Cell:
        return self.sum_one(f, self.id1(a))

    def lsum_two(self, a: Cell, al: Cell) -> Cell:
        return self.sum_two(self.id2(self.id1(a)), al)

    def rsum_two(self, al: Cell, a: Cell) -> Cell:
        return self.sum_two(al, self.id2(self.id1(a)))

    def sigma(self, f: Cell, g: Cell) -> Cell:
        # product sum: the two composition orders are equal on the nose
        return self.id2(self.sum_one(f, g))

    def sigma_inv(self, f: Cell, g: Cell) -> Cell:
        return self.sigma(f, g)

    def beta_obj(self, a: Cell, b: Cell) -> Cell:
        return self.beta_table[(a, b)]

    def __eq__(self, other):
        if not isinstance(other, PermutativeTwoCategory):
            return NotImplemented
        return (
            self.base == other.base
            and self.unit == other.unit
            and self.sum_obj_table == other.sum_obj_table
            and self.sum_one_table == other.sum_one_table
            and self.sum_two_table == other.sum_two_table
            and self.beta_table == other.beta_table
        )

    # equality is by tables; hashing stays by identity (cache-key use only)
    __hash__ = object.__hash__

    def __repr__(self):
        return f"<PermutativeTwoCategory {self.name}>"


class PermutativeGrayMonoid(_CatDelegate):
    """Cubical sum data: one-sided sum 2-functors, interchangers, braiding."""

    flavor = "pgm"

    def __init__(self, name, base, unit, sum_obj, lsum1, rsum1, lsum2, rsum2,
                 sigma, beta):
        self.name = name
        self.base = base
        self.unit = unit
        self.sum_obj_table = dict(sum_obj)
        self.lsum1_table = dict(lsum1)
        self.rsum1_table = dict(rsum1)
        self.lsum2_table = dict(lsum2)
        self.rsum2_table = dict(rsum2)
        self.sigma_table = dict(sigma)
        self.beta_table = dict(beta)
        self._sigma_inv: dict[tuple[Cell, Cell], Cell] = {}

    def unit_obj(self) -> Cell:
        return self.unit

    def sum_obj(self, a: Cell, b: Cell) -> Cell:
        return self.sum_obj_table[(a, b)]

    def lsum_one(self, a: Cell, f: Cell) -> Cell:
        return self.lsum1_table[(a, f)]

    def rsum_one(self, f: Cell, a: Cell) -> Cell:
        return self.rsum1_table[(f, a)]

    def lsum_two(self, a: Cell, al: Cell) -> Cell:
        return self.lsum2_table[(a, al)]

    def rsum_two(self, al: Cell, a: Cell) -> Cell:
        return self.rsum2_table[(al, a)]

    def sum_one(self, f: Cell, g: Cell) -> Cell:
        # canonical order: first slot moves first
        return self.comp1(
            self.lsum_one(self.tgt1(f), g), self.rsum_one(f, self.src1(g))
        )

    def sum_two(self, a: Cell, b: Cell) -> Cell:
        fa = self.src2(a)
        gb = self.src2(b)
        return self.hcomp2(
            self.lsum_two(self.tgt1(fa), b), self.rsum_two(a, self.src1(gb))
        )

    def sigma(self, f: Cell, g: Cell) -> Cell:
        return self.sigma_table[(f, g)]

    def sigma_inv(self, f: Cell, g: Cell) -> Cell:
        key = (f, g)
        if key not in self._sigma_inv:
            inv = vertical_inverse(self.base, self.sigma_table[key])
            if inv is None:
                raise ValueError(f"interchanger at {key!r} is not invertible")
            self._sigma_inv[key] = inv
        return self._sigma_inv[key]

    def beta_obj(self, a: Cell, b: Cell) -> Cell:
        return self.beta_table[(a, b)]

    def __eq__(self, other):
        if not isinstance(other, PermutativeGrayMonoid):
            return NotImplemented
        return (
            self.base == other.base
            and self.unit == other.unit
            and self.sum_obj_table == other.sum_obj_table
            and self.lsum1_table == other.lsum1_table
            and self.rsum1_table == other.rsum1_table
            and self.lsum2_table == other.lsum2_table
            and self.rsum2_table == other.rsum2_table
            and self.sigma_table == other.sigma_table
            and self.beta_table == other.beta_table
        )

    __hash__ = object.__hash__

    def __repr__(self):
        return f"<PermutativeGrayMonoid {self.name}>"


def sum_many_obj(C, objs: list[Cell]) -> Cell:
    """Left fold of the object sum; the empty sum is the unit."""
    acc = C.unit_obj()
    for a in objs:
        acc = C.sum_obj(acc, a)
    return acc


def sum_one_cells(C, fs: list[Cell]) -> Cell:
    """Iterated canonical sum of 1-cells: slot 1 moves first, then slot 2, ...

    Different move orders agree only up to interchangers; this fixed order is
    the canonical value.
    """
    if not fs:
        return C.id1(C.unit_obj())
    if len(fs) == 1:
        return fs[0]
    total = None
    for i, f in enumerate(fs):
        left = sum_many_obj(C, [C.tgt1(x) for x in fs[:i]])
        right = sum_many_obj(C, [C.src1(x) for x in fs[i + 1:]])
        emb = C.rsum_one(C.lsum_one(left, f), right)
        total = emb if total is None else C.comp1(emb, total)
    return total


def sum_many_two(C, als: list[Cell]) -> Cell:
    """Iterated canonical sum of 2-cells, matching ``sum_one_cells``."""
    if not als:
        return C.id2(C.id1(C.unit_obj()))
    if len(als) == 1:
        return als[0]
    total = None
    for i, al in enumerate(als):
        left = sum_many_obj(C, [C.tgt1(C.src2(x)) for x in als[:i]])
        right = sum_many_obj(C, [C.src1(C.src2(x)) for x in als[i + 1:]])
        emb = C.rsum_two(C.lsum_two(left, al), right)
        total = emb if total is None else C.hcomp2(emb, total)
    return total


# -- validation ----------------------------------------------------------------


def validate_permutative(C: PermutativeTwoCategory) -> ValidationReport:
    """Exhaustive axiom scan for a permutative 2-category."""
    rep = ValidationReport(f"permutative 2-category {C.name}")
    base_rep = validate_two_category(C.base)
    if not base_rep.ok:
        rep.add("structure", "underlying 2-category invalid")
        rep.merge(base_rep)
        return rep
    B = C.base
    objs = B.objects
    ones = list(B.one_src)
    twos = list(B.two_src)

    # structural totality
    for pair in itertools.product(objs, objs):
        if pair not in C.sum_obj_table:
            rep.add("structure", f"sum missing on objects {pair!r}")
        elif C.sum_obj_table[pair] not in set(objs):
            rep.add("structure", f"object sum at {pair!r} outside object set")
    for pair in itertools.product(ones, ones):
        if pair not in C.sum_one_table:
            rep.add("structure", f"sum missing on 1-cells {pair!r}")
    for pair in itertools.product(twos, twos):
        if pair not in C.sum_two_table:
            rep.add("structure", f"sum missing on 2-cells {pair!r}")
    for pair in itertools.product(objs, objs):
        if pair not in C.beta_table:
            rep.add("structure", f"braiding missing at {pair!r}")
    if rep.issues:
        return rep
    for (f, g), h in C.sum_one_table.items():
        if B.one_src[h] != C.sum_obj(B.one_src[f], B.one_src[g]) or \
           B.one_tgt[h] != C.sum_obj(B.one_tgt[f], B.one_tgt[g]):
            rep.add("structure", f"1-cell sum at ({f!r},{g!r}) has wrong endpoints")
    for (a, b), cres in C.sum_two_table.items():
        if B.two_src[cres] != C.sum_one(B.two_src[a], B.two_src[b]) or \
           B.two_tgt[cres] != C.sum_one(B.two_tgt[a], B.two_tgt[b]):
            rep.add("structure", f"2-cell sum at ({a!r},{b!r}) has wrong endpoints")
    for (a, b), bc in C.beta_table.items():
        if B.one_src[bc] != C.sum_obj(a, b) or B.one_tgt[bc] != C.sum_obj(b, a):
            rep.add("structure", f"braiding at ({a!r},{b!r}) has wrong endpoints")
    if rep.issues:
        return rep

    # the sum is a 2-functor from the cartesian square
    for a, b in itertools.product(objs, objs):
        rep.checked += 1
        if C.sum_one(B.id1(a), B.id1(b)) != B.id1(C.sum_obj(a, b)):
            rep.add("sum-functor", f"identity 1-cells not preserved at ({a!r},{b!r})")
    for f, g in itertools.product(ones, ones):
        rep.checked += 1
        if C.sum_two(B.id2(f), B.id2(g)) != B.id2(C.sum_one(f, g)):
            rep.add("sum-functor", f"identity 2-cells not preserved at ({f!r},{g!r})")
    for (f2, f1) in B.hcomp1_table:
        for (g2, g1) in B.hcomp1_table:
            rep.checked += 1
            lhs = C.sum_one(B.comp1(f2, f1), B.comp1(g2, g1))
            rhs = B.comp1(C.sum_one(f2, g2), C.sum_one(f1, g1))
            if lhs != rhs:
                rep.add("sum-functor",
                        f"1-cell composition not preserved at ({f2!r},{f1!r};{g2!r},{g1!r})")
    for (a2, a1) in B.vcomp_table:
        for (b2, b1) in B.vcomp_table:
            rep.checked += 1
            lhs = C.sum_two(B.vcomp(a2, a1), B.vcomp(b2, b1))
            rhs = B.vcomp(C.sum_two(a2, b2), C.sum_two(a1, b1))
            if lhs != rhs:
                rep.add("sum-functor", "vertical composition not preserved "
                        f"at ({a2!r},{a1!r};{b2!r},{b1!r})")
    for (a2, a1) in B.hcomp2_table:
        for (b2, b1) in B.hcomp2_table:
            rep.checked += 1
            lhs = C.sum_two(B.hcomp2(a2, a1), B.hcomp2(b2, b1))
            rhs = B.hcomp2(C.sum_two(a2, b2), C.sum_two(a1, b1))
            if lhs != rhs:
                rep.add("sum-functor", "horizontal composition not preserved "
                        f"at ({a2!r},{a1!r};{b2!r},{b1!r})")

    _check_strict_monoid(rep, C, objs, ones, twos)

    e = C.unit
    for a, b in itertools.product(objs, objs):
        rep.checked += 2
        if B.comp1(C.beta_obj(b, a), C.beta_obj(a, b)) != B.id1(C.sum_obj(a, b)):
            rep.add("braiding", f"beta^2 != id at ({a!r},{b!r})")
    for a in objs:
        rep.checked += 2
        if C.beta_obj(e, a) != B.id1(a):
            rep.add("braiding", f"beta(e,{a!r}) != id")
        if C.beta_obj(a, e) != B.id1(a):
            rep.add("braiding", f"beta({a!r},e) != id")
    for a, b, c in itertools.product(objs, objs, objs):
        rep.checked += 1
        lhs = C.beta_obj(a, C.sum_obj(b, c))
        rhs = B.comp1(C.lsum_one(b, C.beta_obj(a, c)), C.rsum_one(C.beta_obj(a, b), c))
        if lhs != rhs:
            rep.add("braiding", f"hexagon fails at ({a!r},{b!r},{c!r})")

    # 2-naturality of beta for the cartesian product
    for f, g in itertools.product(ones, ones):
        rep.checked += 1
        x, x2 = B.one_src[f], B.one_tgt[f]
        y, y2 = B.one_src[g], B.one_tgt[g]
        if B.comp1(C.beta_obj(x2, y2), C.sum_one(f, g)) != \
           B.comp1(C.sum_one(g, f), C.beta_obj(x, y)):
            rep.add("braiding", f"naturality square fails at ({f!r},{g!r})")
    for a, b in itertools.product(twos, twos):
        rep.checked += 1
        f, g = B.two_src[a], B.two_src[b]
        x, x2 = B.one_src[f], B.one_tgt[f]
        y, y2 = B.one_src[g], B.one_tgt[g]
        lhs = B.hcomp2(C.sum_two(b, a), B.id2(C.beta_obj(x, y)))
        rhs = B.hcomp2(B.id2(C.beta_obj(x2, y2)), C.sum_two(a, b))
        if lhs != rhs:
            rep.add("braiding", f"naturality on 2-cells fails at ({a!r},{b!r})")
    return rep


def _check_strict_monoid(rep, C, objs, ones, twos) -> None:
    B = C.base
    e = C.unit_obj()
    for a, b, c in itertools.product(objs, objs, objs):
        rep.checked += 1
        if C.sum_obj(C.sum_obj(a, b), c) != C.sum_obj(a, C.sum_obj(b, c)):
            rep.add("monoid", f"object sum not associative at ({a!r},{b!r},{c!r})")
    for a in objs:
        rep.checked += 1
        if C.sum_obj(e, a) != a or C.sum_obj(a, e) != a:
            rep.add("monoid", f"object sum not unital at {a!r}")
    ide = B.id1(e)
    for f in ones:
        rep.checked += 1
        if C.sum_one(ide, f) != f or C.sum_one(f, ide) != f:
            rep.add("monoid", f"1-cell sum not unital at {f!r}")
    for f, g, h in itertools.product(ones, ones, ones):
        rep.checked += 1
        if C.sum_one(C.sum_one(f, g), h) != C.sum_one(f, C.sum_one(g, h)):
            rep.add("monoid", f"1-cell sum not associative at ({f!r},{g!r},{h!r})")
    iide = B.id2(ide)
    for a in twos:
        rep.checked += 1
        if C.sum_two(iide, a) != a or C.sum_two(a, iide) != a:
            rep.add("monoid", f"2-cell sum not unital at {a!r}")
    for a, b, c in itertools.product(twos, twos, twos):
        rep.checked += 1
        if C.sum_two(C.sum_two(a, b), c) != C.sum_two(a, C.sum_two(b, c)):
            rep.add("monoid", f"2-cell sum not associative at ({a!r},{b!r},{c!r})")


def validate_pgm(C: PermutativeGrayMonoid) -> ValidationReport:
    """Exhaustive axiom scan for a permutative Gray-monoid in cubical form."""
    rep = ValidationReport(f"permutative Gray-monoid {C.name}")
    base_rep = validate_two_category(C.base)
    if not base_rep.ok:
        rep.add("structure", "underlying 2-category invalid")
        rep.merge(base_rep)
        return rep
    B = C.base
    objs = B.objects
    ones = list(B.one_src)
    twos = list(B.two_src)

    for pair in itertools.product(objs, objs):
        if pair not in C.sum_obj_table:
            rep.add("structure", f"object sum missing at {pair!r}")
        if pair not in C.beta_table:
            rep.add("structure", f"braiding missing at {pair!r}")
    for a in objs:
        for f in ones:
            if (a, f) not in C.lsum1_table:
                rep.add("structure", f"left sum missing at ({a!r},{f!r})")
            if (f, a) not in C.rsum1_table:
                rep.add("structure", f"right sum missing at ({f!r},{a!r})")
        for al in twos:
            if (a, al) not in C.lsum2_table:
                rep.add("structure", f"left sum missing at ({a!r},{al!r})")
            if (al, a) not in C.rsum2_table:
                rep.add("structure", f"right sum missing at ({al!r},{a!r})")
    for pair in itertools.product(ones, ones):
        if pair not in C.sigma_table:
            rep.add("structure", f"interchanger missing at {pair!r}")
    if rep.issues:
        return rep

    # endpoint typing
    for (a, f), h in C.lsum1_table.items():
        if B.one_src[h] != C.sum_obj(a, B.one_src[f]) or \
           B.one_tgt[h] != C.sum_obj(a, B.one_tgt[f]):
            rep.add("structure", f"left sum at ({a!r},{f!r}) has wrong endpoints")
    for (f, a), h in C.rsum1_table.items():
        if B.one_src[h] != C.sum_obj(B.one_src[f], a) or \
           B.one_tgt[h] != C.sum_obj(B.one_tgt[f], a):
            rep.add("structure", f"right sum at ({f!r},{a!r}) has wrong endpoints")
    for (a, al), h in C.lsum2_table.items():
        if B.two_src[h] != C.lsum_one(a, B.two_src[al]) or \
           B.two_tgt[h] != C.lsum_one(a, B.two_tgt[al]):
            rep.add("structure", f"left 2-sum at ({a!r},{al!r}) has wrong endpoints")
    for (al, a), h in C.rsum2_table.items():
        if B.two_src[h] != C.rsum_one(B.two_src[al], a) or \
           B.two_tgt[h] != C.rsum_one(B.two_tgt[al], a):
            rep.add("structure", f"right 2-sum at ({al!r},{a!r}) has wrong endpoints")
    for (a, b), bc in C.beta_table.items():
        if B.one_src[bc] != C.sum_obj(a, b) or B.one_tgt[bc] != C.sum_obj(b, a):
            rep.add("structure", f"braiding at ({a!r},{b!r}) has wrong endpoints")
    for (f, g), sg in C.sigma_table.items():
        x, x2 = B.one_src[f], B.one_tgt[f]
        y, y2 = B.one_src[g], B.one_tgt[g]
        want_src = B.comp1(C.rsum_one(f, y2), C.lsum_one(x, g))
        want_tgt = B.comp1(C.lsum_one(x2, g), C.rsum_one(f, y))
        if B.two_src[sg] != want_src or B.two_tgt[sg] != want_tgt:
            rep.add("structure", f"interchanger at ({f!r},{g!r}) has wrong endpoints")
    if rep.issues:
        return rep

    e = C.unit
    for a, b, c in itertools.product(objs, objs, objs):
        rep.checked += 1
        if C.sum_obj(C.sum_obj(a, b), c) != C.sum_obj(a, C.sum_obj(b, c)):
            rep.add("monoid", f"object sum not associative at ({a!r},{b!r},{c!r})")
    for a in objs:
        rep.checked += 1
        if C.sum_obj(e, a) != a or C.sum_obj(a, e) != a:
            rep.add("monoid", f"object sum not unital at {a!r}")

    # one-sided sums are strict 2-functors
    for a in objs:
        for x in objs:
            rep.checked += 2
            if C.lsum_one(a, B.id1(x)) != B.id1(C.sum_obj(a, x)):
                rep.add("cubical", f"a(+)- does not preserve id1 at ({a!r},{x!r})")
            if C.rsum_one(B.id1(x), a) != B.id1(C.sum_obj(x, a)):
                rep.add("cubical", f"-(+)a does not preserve id1 at ({x!r},{a!r})")
        for f in ones:
            rep.checked += 2
            if C.lsum_two(a, B.id2(f)) != B.id2(C.lsum_one(a, f)):
                rep.add("cubical", f"a(+)- does not preserve id2 at ({a!r},{f!r})")
            if C.rsum_two(B.id2(f), a) != B.id2(C.rsum_one(f, a)):
                rep.add("cubical", f"-(+)a does not preserve id2 at ({f!r},{a!r})")
        for (g, f) in B.hcomp1_table:
            rep.checked += 2
            if C.lsum_one(a, B.comp1(g, f)) != B.comp1(C.lsum_one(a, g), C.lsum_one(a, f)):
                rep.add("cubical", f"a(+)- not functorial on 1-cells at ({a!r},{g!r},{f!r})")
            if C.rsum_one(B.comp1(g, f), a) != B.comp1(C.rsum_one(g, a), C.rsum_one(f, a)):
                rep.add("cubical", f"-(+)a not functorial on 1-cells at ({g!r},{f!r},{a!r})")
        for (b2, b1) in B.vcomp_table:
            rep.checked += 2
            if C.lsum_two(a, B.vcomp(b2, b1)) != B.vcomp(C.lsum_two(a, b2), C.lsum_two(a, b1)):
                rep.add("cubical", f"a(+)- not functorial (vert) at ({a!r},{b2!r},{b1!r})")
            if C.rsum_two(B.vcomp(b2, b1), a) != B.vcomp(C.rsum_two(b2, a), C.rsum_two(b1, a)):
                rep.add("cubical", f"-(+)a not functorial (vert) at ({b2!r},{b1!r},{a!r})")
        for (b2, b1) in B.hcomp2_table:
            rep.checked += 2
            if C.lsum_two(a, B.hcomp2(b2, b1)) != B.hcomp2(C.lsum_two(a, b2), C.lsum_two(a, b1)):
                rep.add("cubical", f"a(+)- not functorial (horiz) at ({a!r},{b2!r},{b1!r})")
            if C.rsum_two(B.hcomp2(b2, b1), a) != B.hcomp2(C.rsum_two(b2, a), C.rsum_two(b1, a)):
                rep.add("cubical", f"-(+)a not functorial (horiz) at ({b2!r},{b1!r},{a!r})")

    # unit and associativity of the cubical data
    for f in ones:
        rep.checked += 2
        if C.lsum_one(e, f) != f:
            rep.add("cubical", f"e(+)f != f at {f!r}")
        if C.rsum_one(f, e) != f:
            rep.add("cubical", f"f(+)e != f at {f!r}")
    for al in twos:
        rep.checked += 2
        if C.lsum_two(e, al) != al or C.rsum_two(al, e) != al:
            rep.add("cubical", f"unit 2-sum fails at {al!r}")
    for a, b in itertools.product(objs, objs):
        for f in ones:
            rep.checked += 3
            if C.lsum_one(a, C.lsum_one(b, f)) != C.lsum_one(C.sum_obj(a, b), f):
                rep.add("cubical", f"left sums not associative at ({a!r},{b!r},{f!r})")
            if C.rsum_one(C.rsum_one(f, a), b) != C.rsum_one(f, C.sum_obj(a, b)):
                rep.add("cubical", f"right sums not associative at ({f!r},{a!r},{b!r})")
            if C.lsum_one(a, C.rsum_one(f, b)) != C.rsum_one(C.lsum_one(a, f), b):
                rep.add("cubical", f"left/right sums do not commute at ({a!r},{f!r},{b!r})")
        for al in twos:
            rep.checked += 3
            if C.lsum_two(a, C.lsum_two(b, al)) != C.lsum_two(C.sum_obj(a, b), al):
                rep.add("cubical", f"left 2-sums not associative at ({a!r},{b!r},{al!r})")
            if C.rsum_two(C.rsum_two(al, a), b) != C.rsum_two(al, C.sum_obj(a, b)):
                rep.add("cubical", f"right 2-sums not associative at ({al!r},{a!r},{b!r})")
            if C.lsum_two(a, C.rsum_two(al, b)) != C.rsum_two(C.lsum_two(a, al), b):
                rep.add("cubical", f"left/right 2-sums do not commute at ({a!r},{al!r},{b!r})")

    # interchanger axioms
    for (f, g), sg in C.sigma_table.items():
        rep.checked += 1
        if B.one_identity[f] or B.one_identity[g]:
            if not B.two_identity[sg]:
                rep.add("interchanger", f"sigma({f!r},{g!r}) must be the identity")
        if vertical_inverse(B, sg) is None:
            rep.add("interchanger", f"sigma({f!r},{g!r}) not invertible")
    if rep.issues:
        return rep
    # naturality in both slots
    for a1 in twos:
        for a2 in twos:
            f1, g1 = B.two_src[a1], B.two_tgt[a1]
            f2, g2 = B.two_src[a2], B.two_tgt[a2]
            x, x2 = B.one_src[f1], B.one_tgt[f1]
            y, y2 = B.one_src[f2], B.one_tgt[f2]
            rep.checked += 1
            first = B.hcomp2(C.rsum_two(a1, y2), C.lsum_two(x, a2))
            second = B.hcomp2(C.lsum_two(x2, a2), C.rsum_two(a1, y))
            if B.vcomp(C.sigma(g1, g2), first) != B.vcomp(second, C.sigma(f1, f2)):
                rep.add("interchanger", f"naturality fails at ({a1!r},{a2!r})")
    # composites in the first slot
    for (h1, f1) in B.hcomp1_table:
        for g in ones:
            rep.checked += 1
            x2 = B.one_tgt[f1]
            y, y2 = B.one_src[g], B.one_tgt[g]
            lhs = C.sigma(B.comp1(h1, f1), g)
            stepA = whisker_l(B, C.rsum_one(h1, y2), C.sigma(f1, g))
            stepB = whisker_r(B, C.sigma(h1, g), C.rsum_one(f1, y))
            if lhs != B.vcomp(stepB, stepA):
                rep.add("interchanger", f"first-slot composite fails at ({h1!r},{f1!r},{g!r})")
    # composites in the second slot
    for (h2, g2) in B.hcomp1_table:
        for f in ones:
            rep.checked += 1
            x, x2 = B.one_src[f], B.one_tgt[f]
            y2 = B.one_tgt[g2]
            lhs = C.sigma(f, B.comp1(h2, g2))
            stepA = whisker_r(B, C.sigma(f, h2), C.lsum_one(x, g2))
            stepB = whisker_l(B, C.lsum_one(x2, h2), C.sigma(f, g2))
            if lhs != B.vcomp(stepB, stepA):
                rep.add("interchanger", f"second-slot composite fails at ({f!r},{h2!r},{g2!r})")

    # braiding axioms
    for a, b in itertools.product(objs, objs):
        rep.checked += 1
        if B.comp1(C.beta_obj(b, a), C.beta_obj(a, b)) != B.id1(C.sum_obj(a, b)):
            rep.add("braiding", f"beta^2 != id at ({a!r},{b!r})")
    for a in objs:
        rep.checked += 2
        if C.beta_obj(e, a) != B.id1(a) or C.beta_obj(a, e) != B.id1(a):
            rep.add("braiding", f"unit braiding not the identity at {a!r}")
    for a, b, c in itertools.product(objs, objs, objs):
        rep.checked += 1
        lhs = C.beta_obj(a, C.sum_obj(b, c))
        rhs = B.comp1(C.lsum_one(b, C.beta_obj(a, c)), C.rsum_one(C.beta_obj(a, b), c))
        if lhs != rhs:
            rep.add("braiding", f"hexagon fails at ({a!r},{b!r},{c!r})")

    # quasi-strict naturality: the braiding naturality cells on generator
    # 1-cells are identities, and the whiskered 2-cell conditions hold
    for f in ones:
        x, x2 = B.one_src[f], B.one_tgt[f]
        for b in objs:
            rep.checked += 2
            if B.comp1(C.beta_obj(x2, b), C.rsum_one(f, b)) != \
               B.comp1(C.lsum_one(b, f), C.beta_obj(x, b)):
                rep.add("quasi-strict", f"beta naturality (f,1) fails at ({f!r},{b!r})")
            if B.comp1(C.beta_obj(b, x2), C.lsum_one(b, f)) != \
               B.comp1(C.rsum_one(f, b), C.beta_obj(b, x)):
                rep.add("quasi-strict", f"beta naturality (1,f) fails at ({b!r},{f!r})")
    for al in twos:
        f = B.two_src[al]
        x, x2 = B.one_src[f], B.one_tgt[f]
        for b in objs:
            rep.checked += 2
            lhs = B.hcomp2(C.lsum_two(b, al), B.id2(C.beta_obj(x, b)))
            rhs = B.hcomp2(B.id2(C.beta_obj(x2, b)), C.rsum_two(al, b))
            if lhs != rhs:
                rep.add("quasi-strict", f"beta 2-cell condition (al,1) fails at ({al!r},{b!r})")
            lhs = B.hcomp2(C.rsum_two(al, b), B.id2(C.beta_obj(b, x)))
            rhs = B.hcomp2(B.id2(C.beta_obj(b, x2)), C.lsum_two(b, al))
            if lhs != rhs:
                rep.add("quasi-strict", f"beta 2-cell condition (1,al) fails at ({b!r},{al!r})")
    # interchangers against braiding components are identities
    for (a, b), bc in C.beta_table.items():
        for g in ones:
            rep.checked += 2
            if not B.two_identity[C.sigma(bc, g)]:
                rep.add("quasi-strict", f"sigma(beta({a!r},{b!r}), {g!r}) not the identity")
            if not B.two_identity[C.sigma(g, bc)]:
                rep.add("quasi-strict", f"sigma({g!r}, beta({a!r},{b!r})) not the identity")
    return rep


# -- promotion, demotion, nudging ----------------------------------------------


def promote(C: PermutativeTwoCategory) -> PermutativeGrayMonoid:
    """View a permutative 2-category as cubical data with identity interchangers."""
    B = C.base
    lsum1 = {(a, f): C.sum_one(B.id1(a), f) for a in B.objects for f in B.one_src}
    rsum1 = {(f, a): C.sum_one(f, B.id1(a)) for a in B.objects for f in B.one_src}
    lsum2 = {(a, al): C.sum_two(B.id2(B.id1(a)), al) for a in B.objects for al in B.two_src}
    rsum2 = {(al, a): C.sum_two(al, B.id2(B.id1(a))) for a in B.objects for al in B.two_src}
    sigma = {
        (f, g): B.id2(C.sum_one(f, g))
        for f in B.one_src for g in B.one_src
    }
    return PermutativeGrayMonoid(
        C.name, B, C.unit, dict(C.sum_obj_table), lsum1, rsum1, lsum2, rsum2,
        sigma, dict(C.beta_table),
    )


class DemotionRefused(Exception):
    """Raised when cubical data has a genuinely non-identity interchanger."""

    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"non-identity interchanger at {witness!r}")


def demote(C: PermutativeGrayMonoid) -> PermutativeTwoCategory:
    """Rebuild a product sum 2-functor from cubical data with identity sigma.

    Refuses, naming a witness, when any interchanger is not an identity.
    """
    B = C.base
    for key, sg in C.sigma_table.items():
        if not B.two_identity[sg]:
            raise DemotionRefused(key)
    sum_one = {
        (f, g): C.sum_one(f, g) for f in B.one_src for g in B.one_src
    }
    sum_two = {
        (a, b): C.sum_two(a, b) for a in B.two_src for b in B.two_src
    }
    return PermutativeTwoCategory(
        C.name, B, C.unit, dict(C.sum_obj_table), sum_one, sum_two,
        dict(C.beta_table),
    )


@dataclass
class NudgedCubicalData:
    """Cubical data with the composition order flipped and sigma inverted.

    The canonical value of a sum of 1-cells under this orientation is
    ``(f (+) 1).(1 (+) g)``; nudging twice restores the original data.
    """

    original: PermutativeGrayMonoid
    sigma_table: dict = field(default_factory=dict)
    opcubical: bool = True

    def sum_one(self, f: Cell, g: Cell) -> Cell:
        C = self.original
        return C.comp1(C.rsum_one(f, C.tgt1(g)), C.lsum_one(C.src1(f), g))

    def sigma(self, f: Cell, g: Cell) -> Cell:
        return self.sigma_table[(f, g)]


def nudge(C: PermutativeGrayMonoid | NudgedCubicalData):
    """Flip between cubical and opcubical presentations, inverting sigma."""
    if isinstance(C, NudgedCubicalData):
        return C.original
    inv = {key: C.sigma_inv(*key) for key in C.sigma_table}
    return NudgedCubicalData(original=C, sigma_table=inv)


# -- monoidal functor variants ---------------------------------------------------


VARIANTS = ("strict", "normal-oplax", "oplax", "lax", "pseudo")


@dataclass
class MonoidalFunctor:
    """A functor of permutative structures with unit and sum comparison data.

    ``theta0`` runs e -> F(e) for the lax/pseudo variants and F(e) -> e for
    the (normal-)oplax ones; ``theta[(x, y)]`` runs Fx (+) Fy -> F(x (+) y)
    or back, with the same orientation rule.
    """

    variant: str
    functor: TwoFunctor
    source: PermutativeTwoCategory | PermutativeGrayMonoid
    target: PermutativeTwoCategory | PermutativeGrayMonoid
    theta0: Cell = None
    theta: dict = field(default_factory=dict)
    name: str = ""

    def is_lax_direction(self) -> bool:
        return self.variant in ("lax", "pseudo")


def identity_monoidal_functor(C) -> MonoidalFunctor:
    from .twocat import identity_functor
    F = identity_functor(C.base)
    theta = {
        (x, y): C.id1(C.sum_obj(x, y))
        for x in C.base.objects for y in C.base.objects
    }
    return MonoidalFunctor("strict", F, C, C, C.id1(C.unit_obj()), theta, name=f"id_{C.name}")


def compose_monoidal(G: MonoidalFunctor, F: MonoidalFunctor) -> MonoidalFunctor:
    """Composite of two functors of the same variant (oplax-family pasting)."""
    if G.variant != F.variant:
        raise ValueError("variant mismatch")
    D = G.target
    GF = F.functor.then(G.functor)
    theta: dict = {}
    if F.variant in ("oplax", "normal-oplax"):
        theta0 = D.comp1(G.theta0, G.functor.fmap[F.theta0])
        for (x, y), t in F.theta.items():
            fx, fy = F.functor.omap[x], F.functor.omap[y]
            theta[(x, y)] = D.comp1(G.theta[(fx, fy)], G.functor.fmap[t])
    elif F.variant in ("lax", "pseudo"):
        theta0 = D.comp1(G.functor.fmap[F.theta0], G.theta0)
        for (x, y), t in F.theta.items():
            fx, fy = F.functor.omap[x], F.functor.omap[y]
            theta[(x, y)] = D.comp1(G.functor.fmap[t], G.theta[(fx, fy)])
    else:  # strict
        theta0 = D.id1(D.unit_obj())
        for (x, y) in F.theta:
            gfx = GF.omap[x]
            gfy = GF.omap[y]
            theta[(x, y)] = D.id1(D.sum_obj(gfx, gfy))
    return MonoidalFunctor(F.variant, GF, F.source, G.target, theta0, theta,
                           name=f"{G.name}.{F.name}")


def validate_monoidal_functor(M: MonoidalFunctor) -> ValidationReport:
    """Check the variant-specific unit, associativity and braiding diagrams."""
    rep = ValidationReport(f"monoidal functor {M.name or '?'} ({M.variant})")
    if M.variant not in VARIANTS:
        rep.add("structure", f"unknown variant {M.variant!r}")
        return rep
    frep = validate_two_functor(M.functor)
    if not frep.ok:
        rep.add("structure", "underlying 2-functor invalid")
        rep.merge(frep)
        return rep
    C, D = M.source, M.target
    F = M.functor
    B, E = C.base, D.base
    e_c, e_d = C.unit_obj(), D.unit_obj()
    lax = M.is_lax_direction()

    if F.omap[e_c] != e_d:
        rep.add("structure", "unit object not preserved on the nose")
        return rep

    # theta structure
    if M.theta0 is None or M.theta0 not in E.one_src:
        rep.add("structure", "missing unit comparison 1-cell")
        return rep
    want_theta0 = (e_d, F.omap[e_c]) if lax else (F.omap[e_c], e_d)
    if (E.one_src[M.theta0], E.one_tgt[M.theta0]) != want_theta0:
        rep.add("structure", "unit comparison 1-cell has wrong endpoints")
    for x, y in itertools.product(B.objects, B.objects):
        t = M.theta.get((x, y))
        if t is None:
            rep.add("structure", f"missing sum comparison at ({x!r},{y!r})")
            continue
        fxy = F.omap[C.sum_obj(x, y)]
        sxy = D.sum_obj(F.omap[x], F.omap[y])
        want = (sxy, fxy) if lax else (fxy, sxy)
        if (E.one_src[t], E.one_tgt[t]) != want:
            rep.add("structure", f"sum comparison at ({x!r},{y!r}) has wrong endpoints")
    if rep.issues:
        return rep

    if M.variant == "strict":
        rep.checked += 1
        if not E.one_identity[M.theta0]:
            rep.add("strict", "unit comparison not the identity")
        for (x, y), t in M.theta.items():
            rep.checked += 1
            if not E.one_identity[t]:
                rep.add("strict", f"sum comparison at ({x!r},{y!r}) not the identity")
        for x, y in itertools.product(B.objects, B.objects):
            rep.checked += 1
            if F.omap[C.sum_obj(x, y)] != D.sum_obj(F.omap[x], F.omap[y]):
                rep.add("strict", f"object sum not preserved at ({x!r},{y!r})")
            rep.checked += 1
            if F.fmap[C.beta_obj(x, y)] != D.beta_obj(F.omap[x], F.omap[y]):
                rep.add("strict", f"braiding not preserved at ({x!r},{y!r})")
        for a in B.objects:
            for f in B.one_src:
                rep.checked += 2
                if F.fmap[C.lsum_one(a, f)] != D.lsum_one(F.omap[a], F.fmap[f]):
                    rep.add("strict", f"left sum not preserved at ({a!r},{f!r})")
                if F.fmap[C.rsum_one(f, a)] != D.rsum_one(F.fmap[f], F.omap[a]):
                    rep.add("strict", f"right sum not preserved at ({f!r},{a!r})")
            for al in B.two_src:
                rep.checked += 2
                if F.amap[C.lsum_two(a, al)] != D.lsum_two(F.omap[a], F.amap[al]):
                    rep.add("strict", f"left 2-sum not preserved at ({a!r},{al!r})")
                if F.amap[C.rsum_two(al, a)] != D.rsum_two(F.amap[al], F.omap[a]):
                    rep.add("strict", f"right 2-sum not preserved at ({al!r},{a!r})")
        for f, g in itertools.product(B.one_src, B.one_src):
            rep.checked += 1
            if F.amap[C.sigma(f, g)] != D.sigma(F.fmap[f], F.fmap[g]):
                rep.add("strict", f"interchanger not preserved at ({f!r},{g!r})")
        return rep

    if M.variant == "normal-oplax":
        rep.checked += 1
        if not E.one_identity[M.theta0]:
            rep.add("normal", "unit comparison must be the identity")

    # 2-naturality of theta on generator 1-cells and 2-cells
    for f in B.one_src:
        x, x2 = B.one_src[f], B.one_tgt[f]
        for b in B.objects:
            rep.checked += 2
            if lax:
                l1 = E.comp1(F.fmap[C.rsum_one(f, b)], M.theta[(x, b)])
                r1 = E.comp1(M.theta[(x2, b)], D.rsum_one(F.fmap[f], F.omap[b]))
                l2 = E.comp1(F.fmap[C.lsum_one(b, f)], M.theta[(b, x)])
                r2 = E.comp1(M.theta[(b, x2)], D.lsum_one(F.omap[b], F.fmap[f]))
            else:
                l1 = E.comp1(D.rsum_one(F.fmap[f], F.omap[b]), M.theta[(x, b)])
                r1 = E.comp1(M.theta[(x2, b)], F.fmap[C.rsum_one(f, b)])
                l2 = E.comp1(D.lsum_one(F.omap[b], F.fmap[f]), M.theta[(b, x)])
                r2 = E.comp1(M.theta[(b, x2)], F.fmap[C.lsum_one(b, f)])
            if l1 != r1:
                rep.add("naturality", f"theta naturality (f,1) fails at ({f!r},{b!r})")
            if l2 != r2:
                rep.add("naturality", f"theta naturality (1,f) fails at ({b!r},{f!r})")
    for al in B.two_src:
        f = B.two_src[al]
        x, x2 = B.one_src[f], B.one_tgt[f]
        for b in B.objects:
            rep.checked += 2
            if lax:
                l1 = E.hcomp2(F.amap[C.rsum_two(al, b)], E.id2(M.theta[(x, b)]))
                r1 = E.hcomp2(E.id2(M.theta[(x2, b)]), D.rsum_two(F.amap[al], F.omap[b]))
                l2 = E.hcomp2(F.amap[C.lsum_two(b, al)], E.id2(M.theta[(b, x)]))
                r2 = E.hcomp2(E.id2(M.theta[(b, x2)]), D.lsum_two(F.omap[b], F.amap[al]))
            else:
                l1 = E.hcomp2(D.rsum_two(F.amap[al], F.omap[b]), E.id2(M.theta[(x, b)]))
                r1 = E.hcomp2(E.id2(M.theta[(x2, b)]), F.amap[C.rsum_two(al, b)])
                l2 = E.hcomp2(D.lsum_two(F.omap[b], F.amap[al]), E.id2(M.theta[(b, x)]))
                r2 = E.hcomp2(E.id2(M.theta[(b, x2)]), F.amap[C.lsum_two(b, al)])
            if l1 != r1 or l2 != r2:
                rep.add("naturality", f"theta naturality on 2-cells fails at ({al!r},{b!r})")
    # interchanger compatibility
    for f, g in itertools.product(B.one_src, B.one_src):
        x, y = B.one_src[f], B.one_src[g]
        x2, y2 = B.one_tgt[f], B.one_tgt[g]
        rep.checked += 1
        if lax:
            lhs = E.hcomp2(F.amap[C.sigma(f, g)], E.id2(M.theta[(x, y)]))
            rhs = E.hcomp2(E.id2(M.theta[(x2, y2)]), D.sigma(F.fmap[f], F.fmap[g]))
        else:
            lhs = E.hcomp2(D.sigma(F.fmap[f], F.fmap[g]), E.id2(M.theta[(x, y)]))
            rhs = E.hcomp2(E.id2(M.theta[(x2, y2)]), F.amap[C.sigma(f, g)])
        if lhs != rhs:
            rep.add("naturality", f"theta vs interchanger fails at ({f!r},{g!r})")

    # unit triangles, associativity square, braiding square
    for x in B.objects:
        fx = F.omap[x]
        rep.checked += 2
        if lax:
            left = E.comp1(M.theta[(e_c, x)], D.rsum_one(M.theta0, fx))
            right = E.comp1(M.theta[(x, e_c)], D.lsum_one(fx, M.theta0))
        else:
            left = E.comp1(D.rsum_one(M.theta0, fx), M.theta[(e_c, x)])
            right = E.comp1(D.lsum_one(fx, M.theta0), M.theta[(x, e_c)])
        if left != E.id1(fx):
            rep.add("diagram", f"left unit triangle fails at {x!r}")
        if right != E.id1(fx):
            rep.add("diagram", f"right unit triangle fails at {x!r}")
    for x, y, z in itertools.product(B.objects, B.objects, B.objects):
        rep.checked += 1
        fx, fy, fz = F.omap[x], F.omap[y], F.omap[z]
        if lax:
            lhs = E.comp1(M.theta[(C.sum_obj(x, y), z)], D.rsum_one(M.theta[(x, y)], fz))
            rhs = E.comp1(M.theta[(x, C.sum_obj(y, z))], D.lsum_one(fx, M.theta[(y, z)]))
        else:
            lhs = E.comp1(D.rsum_one(M.theta[(x, y)], fz), M.theta[(C.sum_obj(x, y), z)])
            rhs = E.comp1(D.lsum_one(fx, M.theta[(y, z)]), M.theta[(x, C.sum_obj(y, z))])
        if lhs != rhs:
            rep.add("diagram", f"associativity square fails at ({x!r},{y!r},{z!r})")
    for x, y in itertools.product(B.objects, B.objects):
        rep.checked += 1
        fx, fy = F.omap[x], F.omap[y]
        if lax:
            lhs = E.comp1(F.fmap[C.beta_obj(x, y)], M.theta[(x, y)])
            rhs = E.comp1(M.theta[(y, x)], D.beta_obj(fx, fy))
        else:
            lhs = E.comp1(D.beta_obj(fx, fy), M.theta[(x, y)])
            rhs = E.comp1(M.theta[(y, x)], F.fmap[C.beta_obj(x, y)])
        if lhs != rhs:
            rep.add("diagram", f"braiding square fails at ({x!r},{y!r})")

    if M.variant == "pseudo":
        for key, t in [((None, None), M.theta0)] + list(M.theta.items()):
            rep.checked += 1
            src, tgt = E.one_src[t], E.one_tgt[t]
            has_inverse = any(
                E.comp1(u, t) == E.id1(src) and E.comp1(t, u) == E.id1(tgt)
                for u in E.one_cells_between(tgt, src)
            )
            if not has_inverse:
                rep.add("pseudo", f"comparison 1-cell at {key!r} not invertible")
    return rep


# -- fixture catalogue -----------------------------------------------------------


def _discrete_two_category(name: str, objs: list[str]) -> FiniteTwoCategory:
    one = {f"i{o}": (o, o, True) for o in objs}
    two = {f"ii{o}": (f"i{o}", f"i{o}", True) for o in objs}
    vcomp = {(f"ii{o}", f"ii{o}"): f"ii{o}" for o in objs}
    hcomp1 = {(f"i{o}", f"i{o}"): f"i{o}" for o in objs}
    hcomp2 = dict(vcomp)
    return FiniteTwoCategory(name, objs, one, two, vcomp, hcomp1, hcomp2)


def _discrete_monoid_p2cat(name, elems: list[str], op) -> PermutativeTwoCategory:
    base = _discrete_two_category(name, elems)
    unit = elems[0]
    sum_obj = {(a, b): op(a, b) for a in elems for b in elems}
    sum_one = {(f"i{a}", f"i{b}"): f"i{op(a, b)}" for a in elems for b in elems}
    sum_two = {(f"ii{a}", f"ii{b}"): f"ii{op(a, b)}" for a in elems for b in elems}
    beta = {(a, b): f"i{op(a, b)}" for a in elems for b in elems}
    return PermutativeTwoCategory(name, base, unit, sum_obj, sum_one, sum_two, beta)


def fixture_f1() -> PermutativeTwoCategory:
    """Terminal permutative 2-category: one cell in each dimension."""
    return _discrete_monoid_p2cat("F1", ["e"], lambda a, b: "e")


def fixture_f2() -> PermutativeTwoCategory:
    """The discrete group of order two, as a permutative 2-category."""
    def op(a, b):
        return str(int(a) ^ int(b))
    return _discrete_monoid_p2cat("F2", ["0", "1"], op)


def fixture_m3() -> PermutativeTwoCategory:
    """Discrete saturating-addition monoid on {0,1,2}; not a group."""
    def op(a, b):
        return str(min(int(a) + int(b), 2))
    return _discrete_monoid_p2cat("M3", ["0", "1", "2"], op)


def fixture_f3() -> PermutativeTwoCategory:
    """One object, one 1-cell, 2-cells the group of order two."""
    objs = ["*"]
    one = {"i": ("*", "*", True)}
    two = {"s0": ("i", "i", True), "s1": ("i", "i", False)}
    par = {"s0": 0, "s1": 1}
    name_of = {0: "s0", 1: "s1"}
    vcomp = {(b, a): name_of[(par[b] + par[a]) % 2] for b in two for a in two}
    hcomp1 = {("i", "i"): "i"}
    hcomp2 = dict(vcomp)
    base = FiniteTwoCategory("F3", objs, one, two, vcomp, hcomp1, hcomp2)
    sum_obj = {("*", "*"): "*"}
    sum_one = {("i", "i"): "i"}
    sum_two = {(a, b): name_of[(par[a] + par[b]) % 2] for a in two for b in two}
    beta = {("*", "*"): "i"}
    return PermutativeTwoCategory("F3", base, "*", sum_obj, sum_one, sum_two, beta)


def fixture_f4() -> PermutativeTwoCategory:
    """One object with 1-cell group of order two and identity 2-cells only;
    the sum multiplies 1-cells."""
    objs = ["*"]
    one = {"e": ("*", "*", True), "x": ("*", "*", False)}
    two = {"ie": ("e", "e", True), "ix": ("x", "x", True)}
    grp = {("e", "e"): "e", ("e", "x"): "x", ("x", "e"): "x", ("x", "x"): "e"}
    hcomp1 = dict(grp)
    vcomp = {("ie", "ie"): "ie", ("ix", "ix"): "ix"}
    hcomp2 = {
        (f"i{g}", f"i{f}"): f"i{grp[(g, f)]}"
        for g in ("e", "x") for f in ("e", "x")
    }
    base = FiniteTwoCategory("F4", objs, one, two, vcomp, hcomp1, hcomp2)
    sum_obj = {("*", "*"): "*"}
    sum_one = dict(grp)
    sum_two = {
        (f"i{f}", f"i{g}"): f"i{grp[(f, g)]}"
        for f in ("e", "x") for g in ("e", "x")
    }
    beta = {("*", "*"): "e"}
    return PermutativeTwoCategory("F4", base, "*", sum_obj, sum_one, sum_two, beta)


def fixture_f5() -> PermutativeGrayMonoid:
    """One object; 1-cells the group of order two; each endo-hom the group of
    order two; a nontrivial interchanger at (x, x).

    This is the minimal cubical structure whose interchanger cannot be
    removed: ``demote`` refuses it.
    """
    objs = ["*"]
    cells1 = ["e", "x"]
    grp = {("e", "e"): "e", ("e", "x"): "x", ("x", "e"): "x", ("x", "x"): "e"}
    one = {"e": ("*", "*", True), "x": ("*", "*", False)}
    two = {}
    for f in cells1:
        for p in (0, 1):
            two[(f, p)] = (f, f, p == 0)
    vcomp = {
        ((f, p), (f, q)): (f, (p + q) % 2)
        for f in cells1 for p in (0, 1) for q in (0, 1)
    }
    hcomp1 = dict(grp)
    hcomp2 = {
        ((g, p), (f, q)): (grp[(g, f)], (p + q) % 2)
        for g in cells1 for f in cells1 for p in (0, 1) for q in (0, 1)
    }
    base = FiniteTwoCategory("F5", objs, one, two, vcomp, hcomp1, hcomp2)
    sum_obj = {("*", "*"): "*"}
    lsum1 = {("*", f): f for f in cells1}
    rsum1 = {(f, "*"): f for f in cells1}
    lsum2 = {("*", t): t for t in two}
    rsum2 = {(t, "*"): t for t in two}
    sigma = {}
    for f in cells1:
        for g in cells1:
            comp = grp[(f, g)]
            nontrivial = f == "x" and g == "x"
            sigma[(f, g)] = (comp, 1 if nontrivial else 0)
    beta = {("*", "*"): "e"}
    return PermutativeGrayMonoid("F5", base, "*", sum_obj, lsum1, rsum1,
                                 lsum2, rsum2, sigma, beta)


FIXTURE_BUILDERS = {
    "F1": fixture_f1,
    "F2": fixture_f2,
    "F3": fixture_f3,
    "F4": fixture_f4,
    "F5": fixture_f5,
    "M3": fixture_m3,
}


def fixture(name: str):
    try:
        return FIXTURE_BUILDERS[name]()
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}") from None
