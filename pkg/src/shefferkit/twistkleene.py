"""Twist-products on squared carriers and Kleene-style subsystems.

The twist-product of a system (A, R) lives on A x A, relates (x, y) to
(z, v) exactly when (x, z) and (v, y) are related, and swaps coordinates
as its involution.  For a distinguished base point a, the pairs whose
lower cone sits below a and whose upper cone sits above a form a
subsystem that inherits a Kleene-style cone condition whenever R is
reflexive, directed, and transitive.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .relcore import (
    BinaryRelation,
    Carrier,
    DrsiReport,
    ElementMap,
    RelationalSystem,
    Verdict,
    _check_index,
    bits_of,
    is_directed,
    validate_drsi,
)
from .sheffer import Groupoid, derived_involution, is_sheffer

__all__ = [
    "PairIndexing",
    "KleeneReport",
    "twist_product",
    "twist_sheffer",
    "embed_base",
    "is_kleene",
    "p_a_subset",
    "kleene_subsystem",
]


@dataclass(frozen=True)
class PairIndexing:
    """Row-major flattening of ordered pairs over a base carrier."""

    base: Carrier

    def flat(self, x: int, y: int) -> int:
        _check_index(self.base, x)
        _check_index(self.base, y)
        return x * self.base.size + y

    def unflat(self, k: int) -> tuple[int, int]:
        return divmod(k, self.base.size)

    def name(self, x: int, y: int) -> str:
        return f"({self.base.names[x]},{self.base.names[y]})"

    def pair_carrier(self) -> Carrier:
        n = self.base.size
        return Carrier(tuple(self.name(x, y) for x in range(n) for y in range(n)))


def twist_product(sys: RelationalSystem) -> RelationalSystem:
    """The coordinate-swap system on A x A built from the base relation only."""
    n = sys.carrier.size
    idx = PairIndexing(sys.carrier)
    carrier = idx.pair_carrier()
    rel = sys.relation
    cols = [rel.column(j) for j in range(n)]
    rows = []
    for x in range(n):
        for y in range(n):
            mask = 0
            for z in bits_of(rel.rows[x]):
                mask |= cols[y] << (z * n)
            rows.append(mask)
    swap = tuple(y * n + x for x in range(n) for y in range(n))
    return RelationalSystem(carrier, BinaryRelation(carrier, tuple(rows)),
                            ElementMap(carrier, carrier, swap))


def twist_sheffer(g: Groupoid, involution: Optional[ElementMap] = None) -> Groupoid:
    """Sheffer operation on pairs: (x,y)|(z,v) = (y'|v', (x|z)')."""
    verdict = is_sheffer(g)
    if not verdict:
        raise ValueError(f"not a Sheffer groupoid: {verdict.name} fails")
    if involution is None:
        involution = derived_involution(g)
    else:
        for x in range(g.size):
            if involution(x) != g.table[x][x]:
                raise ValueError("involution disagrees with x|x on the groupoid")
    n = g.size
    idx = PairIndexing(g.carrier)
    t = g.table
    u = involution
    table = []
    for x in range(n):
        for y in range(n):
            row = []
            for z in range(n):
                for v in range(n):
                    left = t[u(y)][u(v)]
                    right = u(t[x][z])
                    row.append(left * n + right)
            table.append(tuple(row))
    return Groupoid(idx.pair_carrier(), tuple(table))


def _strong_embedding_verdict(src_rel: BinaryRelation, dst_rel: BinaryRelation,
                              image: tuple[int, ...]) -> Verdict:
    if len(set(image)) != len(image):
        return Verdict(False, None, "not injective")
    n = len(image)
    for x in range(n):
        for y in range(n):
            forward = src_rel.has(x, y)
            back = dst_rel.has(image[x], image[y])
            if forward != back:
                tag = "related pair with unrelated images" if forward else \
                    "unrelated pair with related images"
                return Verdict(False, (x, y), tag)
    return Verdict(True)


def embed_base(sys: RelationalSystem, a: int) -> tuple[ElementMap, Verdict]:
    """x -> (x, a) into the twist-product; base point must carry a loop.

    Only the relation is compared, so the verdict is about a strong
    embedding of plain systems.
    """
    _check_index(sys.carrier, a)
    if not sys.relation.has(a, a):
        raise ValueError("base point must be related to itself")
    twist = twist_product(sys)
    n = sys.carrier.size
    image = tuple(x * n + a for x in range(n))
    f = ElementMap(sys.carrier, twist.carrier, image)
    return f, _strong_embedding_verdict(sys.relation, twist.relation, image)


def is_kleene(sys: RelationalSystem) -> Verdict:
    """Every L(x, x') must relate wholesale to every U(y, y').

    Witness layout on failure: (x, y, z, w) with z in L(x,x'), w in
    U(y,y') and (z, w) unrelated.
    """
    if sys.involution is None:
        raise ValueError("system has no involution")
    u = sys.involution
    rel = sys.relation
    n = sys.carrier.size
    lowers = [rel.lower_mask(x, u(x)) for x in range(n)]
    uppers = [rel.upper_mask(y, u(y)) for y in range(n)]
    for x in range(n):
        for y in range(n):
            for z in bits_of(lowers[x]):
                gap = uppers[y] & ~rel.rows[z]
                if gap:
                    w = (gap & -gap).bit_length() - 1
                    return Verdict(False, (x, y, z, w),
                                   "L(x, x') not wholly below U(y, y')")
    return Verdict(True)


def p_a_subset(sys: RelationalSystem, a: int) -> frozenset[int]:
    """Flat indices of pairs whose lower cone lies below a and upper cone above a."""
    _check_index(sys.carrier, a)
    rel = sys.relation
    n = sys.carrier.size
    below_a = rel.column(a)
    above_a = rel.rows[a]
    members = []
    for x in range(n):
        for y in range(n):
            lm = rel.lower_mask(x, y)
            um = rel.upper_mask(x, y)
            if lm & ~below_a == 0 and um & ~above_a == 0:
                members.append(x * n + y)
    return frozenset(members)


@dataclass(frozen=True)
class KleeneReport:
    """Subsystem verdicts; the cone condition is evaluated intrinsically and,
    separately, with cones taken in the ambient twist-product."""

    members: tuple[int, ...]
    drsi: DrsiReport
    kleene: Verdict
    kleene_ambient: Verdict
    embedding: Verdict

    @property
    def passed(self) -> bool:
        return self.drsi.passed and self.kleene.holds and self.embedding.holds


def _ambient_kleene(twist: RelationalSystem, members: tuple[int, ...]) -> Verdict:
    rel = twist.relation
    star = twist.involution
    lowers = {p: rel.lower_mask(p, star(p)) for p in members}
    uppers = {q: rel.upper_mask(q, star(q)) for q in members}
    for p in members:
        for q in members:
            for z in bits_of(lowers[p]):
                gap = uppers[q] & ~rel.rows[z]
                if gap:
                    w = (gap & -gap).bit_length() - 1
                    return Verdict(False, (p, q, z, w),
                                   "ambient cones violate the condition")
    return Verdict(True)


def kleene_subsystem(sys: RelationalSystem, a: int) -> tuple[RelationalSystem, KleeneReport]:
    """Restrict the twist-product to the admissible pairs for base point a.

    The system must be directed; the full guarantees additionally need a
    reflexive transitive relation, and the report records what actually
    holds.
    """
    directed = is_directed(sys)
    if not directed:
        raise ValueError(f"system is not directed: {directed.reason} at {directed.witness}")
    twist = twist_product(sys)
    members = tuple(sorted(p_a_subset(sys, a)))
    position = {p: i for i, p in enumerate(members)}
    star = twist.involution
    for p in members:
        if star(p) not in position:
            raise RuntimeError("coordinate swap does not preserve the subsystem")

    idx = PairIndexing(sys.carrier)
    names = tuple(idx.name(*idx.unflat(p)) for p in members)
    carrier = Carrier(names)
    rows = []
    for p in members:
        mask = 0
        for i, q in enumerate(members):
            if twist.relation.has(p, q):
                mask |= 1 << i
        rows.append(mask)
    involution = ElementMap(carrier, carrier, tuple(position[star(p)] for p in members))
    sub = RelationalSystem(carrier, BinaryRelation(carrier, tuple(rows)), involution)

    n = sys.carrier.size
    embed_image = tuple(position[x * n + a] for x in range(n))
    report = KleeneReport(
        members=members,
        drsi=validate_drsi(sub),
        kleene=is_kleene(sub),
        kleene_ambient=_ambient_kleene(twist, members),
        embedding=_strong_embedding_verdict(sys.relation, sub.relation, embed_image),
    )
    return sub, report
