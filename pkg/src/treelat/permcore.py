"""Finite permutations and the deterministic Schreier-Sims engine.

Conventions, fixed once and asserted in the test suite:

* points are the integers 0..degree-1;
* permutations act on the left, ``compose(p, q)`` applies ``q`` first,
  so ``compose(p, q)(x) == p(q(x))``;
* stabilizer chains pick each new base point as the smallest point moved
  by the generator being installed, which makes every chain (and hence
  every order, transversal and report) reproducible.

Internally the hot paths work on raw image tuples; the ``Permutation``
wrapper only appears at API boundaries.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import (
    DegreeMismatch,
    NotAPermutation,
    PointOutOfRange,
    TooLarge,
)

DEFAULT_ENUM_CAP = 1_000_000


# ---------------------------------------------------------------------------
# raw tuple helpers (no validation, used in inner loops)
# ---------------------------------------------------------------------------

def _id_tuple(n: int) -> tuple[int, ...]:
    return tuple(range(n))


def _compose_t(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """p after q: result[x] = p[q[x]]."""
    return tuple(p[i] for i in q)


def _inverse_t(p: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def _is_id_t(p: Sequence[int]) -> bool:
    return all(i == j for i, j in enumerate(p))


# ---------------------------------------------------------------------------
# Permutation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Permutation:
    """A permutation of {0, ..., degree-1}, stored as its image tuple."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        n = len(images)
        seen = [False] * n
        for x in images:
            if not isinstance(x, int) or not 0 <= x < n or seen[x]:
                raise NotAPermutation(f"images {images!r} are not a bijection of 0..{n - 1}")
            seen[x] = True

    @property
    def degree(self) -> int:
        return len(self.images)

    @staticmethod
    def identity(degree: int) -> "Permutation":
        return Permutation(_id_tuple(degree))

    @staticmethod
    def from_cycles(degree: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        images = list(range(degree))
        for cycle in cycles:
            for a, b in zip(cycle, cycle[1:]):
                images[a] = b
            if cycle:
                images[cycle[-1]] = cycle[0]
        return Permutation(tuple(images))

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def is_identity(self) -> bool:
        return _is_id_t(self.images)

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each rotated to start at its minimum."""
        seen = set()
        out = []
        for i in range(self.degree):
            if i in seen or self.images[i] == i:
                continue
            cyc = [i]
            j = self.images[i]
            while j != i:
                seen.add(j)
                cyc.append(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        from math import lcm
        return lcm(1, *(len(c) for c in self.cycles()))

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Product applying q first: compose(p, q)(x) = p(q(x))."""
    if p.degree != q.degree:
        raise DegreeMismatch(f"degrees {p.degree} != {q.degree}")
    return Permutation(_compose_t(p.images, q.images))


def inverse(p: Permutation) -> Permutation:
    return Permutation(_inverse_t(p.images))


# ---------------------------------------------------------------------------
# Stabilizer chain (BSGS)
# ---------------------------------------------------------------------------

class StabilizerChain:
    """Base and strong generating set built by deterministic Schreier-Sims.

    ``base[i]`` is the i-th base point, ``transversals[i]`` maps each point
    of the i-th basic orbit to a permutation (image tuple) carrying
    ``base[i]`` to it.  ``strong`` holds every strong generator; the ones
    relevant at level i are those fixing ``base[:i]`` pointwise.
    """

    __slots__ = ("degree", "base", "strong", "transversals")

    def __init__(self, degree: int, generators: Iterable[Sequence[int]],
                 base_prefix: Sequence[int] = ()):
        self.degree = degree
        self.base: list[int] = []
        self.strong: list[tuple[int, ...]] = []
        self.transversals: list[dict[int, tuple[int, ...]]] = []
        for b in base_prefix:
            if not 0 <= b < degree:
                raise PointOutOfRange(f"base point {b} out of range for degree {degree}")
            if b not in self.base:
                self.base.append(b)
                self.transversals.append({b: _id_tuple(degree)})
        for g in generators:
            t = tuple(g)
            if len(t) != degree:
                raise DegreeMismatch(f"generator degree {len(t)} != {degree}")
            if not _is_id_t(t) and t not in self.strong:
                self._install(t)
        self._complete()

    # -- construction ------------------------------------------------------

    def _level_gens(self, i: int) -> list[tuple[int, ...]]:
        prefix = self.base[:i]
        return [g for g in self.strong if all(g[b] == b for b in prefix)]

    def _rebuild(self, i: int) -> None:
        gens = self._level_gens(i)
        b = self.base[i]
        trans = {b: _id_tuple(self.degree)}
        queue = [b]
        while queue:
            beta = queue.pop(0)
            u = trans[beta]
            for s in gens:
                gamma = s[beta]
                if gamma not in trans:
                    trans[gamma] = _compose_t(s, u)
                    queue.append(gamma)
        self.transversals[i] = trans

    def _install(self, g: tuple[int, ...]) -> int:
        """Add a strong generator; returns the deepest level whose gens changed."""
        self.strong.append(g)
        j = None
        for idx, b in enumerate(self.base):
            if g[b] != b:
                j = idx
                break
        if j is None:
            # new base point: smallest point moved by the incoming generator
            point = next(x for x in range(self.degree) if g[x] != x)
            self.base.append(point)
            self.transversals.append({})
            j = len(self.base) - 1
        for i in range(j + 1):
            self._rebuild(i)
        return j

    def _sift_from(self, level: int, g: tuple[int, ...]) -> tuple[tuple[int, ...], int]:
        """Sift g through levels >= level; returns (residue, stuck_level)."""
        for i in range(level, len(self.base)):
            x = g[self.base[i]]
            u = self.transversals[i].get(x)
            if u is None:
                return g, i
            g = _compose_t(_inverse_t(u), g)
        return g, len(self.base)

    def _process_level(self, i: int) -> Optional[int]:
        """Sift all Schreier generators of level i; install the first residue."""
        gens = self._level_gens(i)
        trans = self.transversals[i]
        for beta in sorted(trans):
            u_beta = trans[beta]
            for s in gens:
                u_gamma = trans[s[beta]]
                schreier = _compose_t(_inverse_t(u_gamma), _compose_t(s, u_beta))
                if _is_id_t(schreier):
                    continue
                residue, stuck = self._sift_from(i + 1, schreier)
                if not _is_id_t(residue):
                    return self._install(residue)
        return None

    def _complete(self) -> None:
        i = len(self.base) - 1
        while i >= 0:
            changed = self._process_level(i)
            if changed is None:
                i -= 1
            else:
                i = changed

    # -- queries -------------------------------------------------------------

    def order(self) -> int:
        n = 1
        for t in self.transversals:
            n *= len(t)
        return n

    def sift(self, g: Sequence[int]) -> tuple[int, ...]:
        residue, _ = self._sift_from(0, tuple(g))
        return residue

    def contains(self, g: Sequence[int]) -> bool:
        return _is_id_t(self.sift(g))

    def elements(self) -> list[tuple[int, ...]]:
        """All group elements as image tuples (size = order)."""
        elems = [_id_tuple(self.degree)]
        for trans in reversed(self.transversals):
            reps = [trans[x] for x in sorted(trans)]
            elems = [_compose_t(u, e) for u in reps for e in elems]
        return elems

    def stabilizer_suffix(self) -> tuple[list[tuple[int, ...]], "StabilizerChain"]:
        """Strong generators fixing base[0], plus the chain they head.

        The suffix of a verified chain is itself a verified chain for the
        stabilizer of the first base point.
        """
        if not self.base:
            return [], self
        b0 = self.base[0]
        gens = [g for g in self.strong if g[b0] == b0]
        sub = StabilizerChain.__new__(StabilizerChain)
        sub.degree = self.degree
        sub.base = self.base[1:]
        sub.strong = gens
        sub.transversals = self.transversals[1:]
        return gens, sub


# ---------------------------------------------------------------------------
# PermGroup and its operations
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class PermGroup:
    """A permutation group given by generators, with a cached BSGS.

    Treated as immutable after construction; the only mutation is the
    write-once attachment of the stabilizer chain, which is deterministic
    for fixed input and therefore safe to share between threads.
    """

    degree: int
    generators: tuple[Permutation, ...]
    bsgs: Optional[StabilizerChain] = field(default=None, repr=False)
    name: Optional[str] = None

    def __post_init__(self) -> None:
        self.generators = tuple(self.generators)
        for g in self.generators:
            if g.degree != self.degree:
                raise DegreeMismatch(
                    f"generator of degree {g.degree} in group of degree {self.degree}")

    def chain(self) -> StabilizerChain:
        if self.bsgs is None:
            self.bsgs = StabilizerChain(self.degree, (g.images for g in self.generators))
        return self.bsgs

    def order(self) -> int:
        return self.chain().order()

    def __contains__(self, p: Permutation) -> bool:
        return contains(self, p)


def perm_group(generators: Iterable[Permutation], degree: Optional[int] = None,
               name: Optional[str] = None) -> PermGroup:
    gens = tuple(generators)
    if degree is None:
        if not gens:
            raise DegreeMismatch("degree required for a group with no generators")
        degree = gens[0].degree
    return PermGroup(degree=degree, generators=gens, name=name)


def trivial_group(degree: int) -> PermGroup:
    return PermGroup(degree=degree, generators=())


def orbit(g: PermGroup, point: int) -> set[int]:
    """Smallest generator-closed set of points containing `point`."""
    if not 0 <= point < g.degree:
        raise PointOutOfRange(f"point {point} out of range for degree {g.degree}")
    seen = {point}
    queue = [point]
    gens = [p.images for p in g.generators]
    while queue:
        beta = queue.pop()
        for s in gens:
            gamma = s[beta]
            if gamma not in seen:
                seen.add(gamma)
                queue.append(gamma)
    return seen


def build_bsgs(g: PermGroup) -> PermGroup:
    """Return a group value identical to g with the stabilizer chain attached."""
    if g.bsgs is not None:
        return g
    chain = StabilizerChain(g.degree, (p.images for p in g.generators))
    return PermGroup(degree=g.degree, generators=g.generators, bsgs=chain, name=g.name)


def order(g: PermGroup) -> int:
    return g.chain().order()


def contains(g: PermGroup, p: Permutation) -> bool:
    if p.degree != g.degree:
        raise DegreeMismatch(f"degrees {p.degree} != {g.degree}")
    return g.chain().contains(p.images)


def enumerate_elements(g: PermGroup, cap: int = DEFAULT_ENUM_CAP) -> list[Permutation]:
    """All elements of g, or raise TooLarge when the order exceeds cap."""
    if cap < 1:
        raise TooLarge("cap must be at least 1")
    n = order(g)
    if n > cap:
        raise TooLarge(f"group order {n} exceeds cap {cap}")
    return [Permutation(t) for t in g.chain().elements()]


def point_stabilizer(g: PermGroup, point: int) -> PermGroup:
    """Stabilizer of a point, generated by the Schreier generators of a
    chain based at that point (identity and duplicates removed)."""
    if not 0 <= point < g.degree:
        raise PointOutOfRange(f"point {point} out of range for degree {g.degree}")
    chain = StabilizerChain(g.degree, (p.images for p in g.generators),
                            base_prefix=(point,))
    trans = chain.transversals[0]
    gens: list[tuple[int, ...]] = []
    seen: set[tuple[int, ...]] = set()
    group_gens = [p.images for p in g.generators]
    for beta in sorted(trans):
        u_beta = trans[beta]
        for s in group_gens:
            u_gamma = trans[s[beta]]
            schreier = _compose_t(_inverse_t(u_gamma), _compose_t(s, u_beta))
            if not _is_id_t(schreier) and schreier not in seen:
                seen.add(schreier)
                gens.append(schreier)
    _, sub = chain.stabilizer_suffix()
    return PermGroup(degree=g.degree,
                     generators=tuple(Permutation(t) for t in gens),
                     bsgs=sub)


def normal_closure(g: PermGroup, seeds: Iterable[Permutation]) -> PermGroup:
    """Smallest subgroup containing the seeds and closed under conjugation
    by the generators of g."""
    seed_tuples = []
    for s in seeds:
        if s.degree != g.degree:
            raise DegreeMismatch(f"seed degree {s.degree} != {g.degree}")
        if not s.is_identity():
            seed_tuples.append(s.images)
    conjugators = []
    for p in g.generators:
        conjugators.append((p.images, _inverse_t(p.images)))

    gens: list[tuple[int, ...]] = []
    chain = StabilizerChain(g.degree, ())
    queue: list[tuple[int, ...]] = []
    for t in seed_tuples:
        if not chain.contains(t):
            gens.append(t)
            chain = StabilizerChain(g.degree, gens)
            queue.append(t)
    while queue:
        h = queue.pop()
        for x, x_inv in conjugators:
            c = _compose_t(x_inv, _compose_t(h, x))
            if not chain.contains(c):
                gens.append(c)
                chain = StabilizerChain(g.degree, gens)
                queue.append(c)
    return PermGroup(degree=g.degree,
                     generators=tuple(Permutation(t) for t in gens),
                     bsgs=chain)


def derived_subgroup(g: PermGroup) -> PermGroup:
    """Commutator subgroup: normal closure of generator commutators."""
    comms = []
    gens = [p.images for p in g.generators]
    for a in gens:
        a_inv = _inverse_t(a)
        for b in gens:
            b_inv = _inverse_t(b)
            c = _compose_t(_compose_t(a_inv, b_inv), _compose_t(a, b))
            if not _is_id_t(c):
                comms.append(Permutation(c))
    return normal_closure(g, comms)


def derived_series(g: PermGroup) -> list[PermGroup]:
    """G >= G' >= G'' ... ; stops at the trivial group, or repeats the last
    term once to witness a non-trivial stationary point."""
    series = [g]
    current = g
    while True:
        nxt = derived_subgroup(current)
        if order(nxt) == order(current):
            if order(current) > 1:
                series.append(nxt)
            return series
        series.append(nxt)
        if order(nxt) == 1:
            return series
        current = nxt


def is_solvable(g: PermGroup) -> bool:
    return order(derived_series(g)[-1]) == 1


def conjugacy_class_representatives(g: PermGroup,
                                    elements: Optional[list[tuple[int, ...]]] = None
                                    ) -> list[tuple[int, ...]]:
    """One representative image tuple per conjugacy class of g.

    Classes are found by closing the element set under conjugation by the
    generators; deterministic because elements() order is deterministic.
    The result is memoized on the group value (write-once, deterministic).
    """
    cached = getattr(g, "_class_reps", None)
    if cached is not None:
        return cached
    if elements is None:
        elements = g.chain().elements()
    conjugators = []
    for p in g.generators:
        conjugators.append((p.images, _inverse_t(p.images)))
    assigned: set[tuple[int, ...]] = set()
    reps: list[tuple[int, ...]] = []
    for e in elements:
        if e in assigned:
            continue
        reps.append(e)
        queue = [e]
        assigned.add(e)
        while queue:
            h = queue.pop()
            for x, x_inv in conjugators:
                c = _compose_t(x_inv, _compose_t(h, x))
                if c not in assigned:
                    assigned.add(c)
                    queue.append(c)
    g._class_reps = reps
    return reps


def group_from_raw(document: dict) -> PermGroup:
    """Parse the raw group JSON document {"degree": d, "generators": [...]}."""
    from .errors import MalformedDocument
    if not isinstance(document, dict):
        raise MalformedDocument("raw group document must be a JSON object")
    try:
        degree = document["degree"]
        raw_gens = document["generators"]
    except (KeyError, TypeError) as exc:
        raise MalformedDocument(f"missing field in raw group document: {exc}") from exc
    if not isinstance(degree, int) or degree < 1:
        raise MalformedDocument(f"degree must be a positive integer, got {degree!r}")
    if not isinstance(raw_gens, list):
        raise MalformedDocument("generators must be a list of image lists")
    gens = []
    for images in raw_gens:
        if not isinstance(images, list) or len(images) != degree:
            raise MalformedDocument(f"generator {images!r} does not have length {degree}")
        try:
            gens.append(Permutation(tuple(images)))
        except NotAPermutation as exc:
            raise MalformedDocument(str(exc)) from exc
    name = document.get("name")
    return PermGroup(degree=degree, generators=tuple(gens), name=name)


def group_to_raw(g: PermGroup) -> dict:
    doc: dict = {"degree": g.degree,
                 "generators": [list(p.images) for p in g.generators]}
    if g.name is not None:
        doc["name"] = g.name
    return doc


# convenience constructors used by the catalog and tests

def symmetric_group(n: int) -> PermGroup:
    if n < 2:
        return trivial_group(max(n, 1))
    gens = [Permutation.from_cycles(n, [tuple(range(n))]),
            Permutation.from_cycles(n, [(0, 1)])]
    return PermGroup(degree=n, generators=tuple(gens), name=f"S{n}")


def alternating_group(n: int) -> PermGroup:
    if n < 3:
        return trivial_group(max(n, 1))
    three = Permutation.from_cycles(n, [(0, 1, 2)])
    if n == 3:
        gens = (three,)
    elif n % 2 == 1:
        gens = (three, Permutation.from_cycles(n, [tuple(range(n))]))
    else:
        gens = (three, Permutation.from_cycles(n, [tuple(range(1, n))]))
    return PermGroup(degree=n, generators=gens, name=f"A{n}")


def cyclic_group(n: int) -> PermGroup:
    return PermGroup(degree=n,
                     generators=(Permutation.from_cycles(n, [tuple(range(n))]),),
                     name=f"C{n}")


def induced_action_on_pairs(g: PermGroup) -> PermGroup:
    """Action induced on the 2-element subsets of the point set, subsets
    ordered lexicographically."""
    pairs = list(itertools.combinations(range(g.degree), 2))
    index = {p: i for i, p in enumerate(pairs)}
    gens = []
    for p in g.generators:
        images = [index[tuple(sorted((p(a), p(b))))] for a, b in pairs]
        gens.append(Permutation(tuple(images)))
    new_name = f"{g.name}_on_pairs" if g.name else None
    return PermGroup(degree=len(pairs), generators=tuple(gens), name=new_name)
