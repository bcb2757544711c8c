"""Exhaustive model search over small operation tables and relational systems.

Tables are filled one cell at a time, diagonal cells first (the defining
axioms pin x|x down fastest), then the remaining cells row-major.  Every
required law is ground-instantiated over all variable assignments up
front; an instance whose both sides become evaluable under the partial
table is decided immediately, so contradictions prune whole subtrees.
Results are buffered and emitted in lexicographic table order.
"""

from __future__ import annotations

import itertools
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence, Union

from .relcore import (
    BinaryRelation,
    Carrier,
    ElementMap,
    RelationalSystem,
    check_involution,
    is_directed,
)
from .sheffer import Groupoid, get_law
from .terms import Law, NamedConstant, check_law, _compile

MAX_ENUM_SIZE = 5
MAX_DRSI_SIZE = 4

__all__ = [
    "MAX_ENUM_SIZE",
    "MAX_DRSI_SIZE",
    "EnumerationSpec",
    "EnumerationResult",
    "CanonicalForm",
    "run_enumeration",
    "enumerate_groupoids",
    "count_models",
    "find_model",
    "enumerate_drsi",
    "canonical_form",
]


def _law_uses_constants(law: Law) -> bool:
    stack = [t for eq in law.premises + (law.conclusion,) for t in eq]
    while stack:
        node = stack.pop()
        if isinstance(node, NamedConstant):
            return True
        if hasattr(node, "left"):
            stack.append(node.left)
            stack.append(node.right)
    return False


def _as_law(value: Union[str, Law]) -> Law:
    return get_law(value) if isinstance(value, str) else value


@dataclass(frozen=True)
class EnumerationSpec:
    """What to enumerate: carrier size, laws to satisfy, laws to violate.

    ``require``/``forbid`` accept catalog keys or Law values.  Laws that
    mention '0'/'1' need ``with_bounds``, which multiplies each passing
    table by all designations of bottom and top.
    """

    size: int
    require: tuple = ()
    forbid: tuple = ()
    commutative: bool = False
    with_bounds: bool = False
    up_to_isomorphism: bool = False
    limit: Optional[int] = None

    def __post_init__(self) -> None:
        if not 1 <= self.size <= MAX_ENUM_SIZE:
            raise ValueError(f"enumeration size must be in 1..{MAX_ENUM_SIZE}")
        object.__setattr__(self, "require", tuple(_as_law(l) for l in self.require))
        object.__setattr__(self, "forbid", tuple(_as_law(l) for l in self.forbid))
        if not self.with_bounds:
            for law in self.require + self.forbid:
                if _law_uses_constants(law):
                    raise ValueError("laws with constants need with_bounds")


@dataclass
class EnumerationResult:
    groupoids: list[Groupoid]
    nodes: int
    seconds: float


class _Instance:
    """One required law at one ground assignment, over a flat partial table."""

    __slots__ = ("premises", "conclusion")

    def __init__(self, law: Law, combo: tuple[int, ...], slot: dict, n: int):
        def ground(code):
            return tuple(ins if ins[0] == "app" else ("lit", combo[ins[1]])
                         for ins in code)

        self.premises = tuple((ground(_compile(l, slot)), ground(_compile(r, slot)))
                              for l, r in law.premises)
        self.conclusion = (ground(_compile(law.conclusion[0], slot)),
                           ground(_compile(law.conclusion[1], slot)))

    @staticmethod
    def _eval(code, table, n) -> Optional[int]:
        slots = []
        for ins in code:
            if ins[0] == "lit":
                slots.append(ins[1])
            else:
                a = slots[ins[1]]
                b = slots[ins[2]]
                slots.append(None if a is None or b is None else table[a * n + b])
        return slots[-1]

    def status(self, table, n) -> Optional[bool]:
        """True = satisfied, False = violated, None = still open."""
        all_known = True
        for cl, cr in self.premises:
            lv = self._eval(cl, table, n)
            rv = self._eval(cr, table, n)
            if lv is None or rv is None:
                all_known = False
            elif lv != rv:
                return True
        if not all_known:
            return None
        lv = self._eval(self.conclusion[0], table, n)
        rv = self._eval(self.conclusion[1], table, n)
        if lv is None or rv is None:
            return None
        return lv == rv


def _cell_order(n: int) -> list[tuple[int, int]]:
    cells = [(i, i) for i in range(n)]
    cells.extend((i, j) for i in range(n) for j in range(n) if i != j)
    return cells


def _instances(laws: Sequence[Law], n: int) -> list[_Instance]:
    out = []
    for law in laws:
        names = law.variables
        slot = {name: k for k, name in enumerate(names)}
        for combo in itertools.product(range(n), repeat=len(names)):
            out.append(_Instance(law, combo, slot, n))
    return out


def _search_tables(spec: EnumerationSpec, first_value: int) -> tuple[list[tuple[int, ...]], int]:
    n = spec.size
    cells = _cell_order(n)
    prunable = [law for law in spec.require if not _law_uses_constants(law)]
    pending0 = _instances(prunable, n)
    table: list[Optional[int]] = [None] * (n * n)
    results: list[tuple[int, ...]] = []
    nodes = 0

    def rec(depth: int, pending: list[_Instance]) -> None:
        nonlocal nodes
        if depth == len(cells):
            results.append(tuple(table))  # type: ignore[arg-type]
            return
        i, j = cells[depth]
        if spec.commutative and i > j:
            candidates: Sequence[int] = (table[j * n + i],)  # type: ignore[assignment]
        elif depth == 0:
            candidates = (first_value,)
        else:
            candidates = range(n)
        for v in candidates:
            nodes += 1
            table[i * n + j] = v
            keep = []
            ok = True
            for inst in pending:
                st = inst.status(table, n)
                if st is False:
                    ok = False
                    break
                if st is None:
                    keep.append(inst)
            if ok:
                rec(depth + 1, keep)
            table[i * n + j] = None

    rec(0, pending0)
    return results, nodes


def _finish_table(spec: EnumerationSpec, flat: tuple[int, ...]) -> list[Groupoid]:
    n = spec.size
    carrier = Carrier.of_size(n)
    rows = tuple(tuple(flat[i * n + j] for j in range(n)) for i in range(n))
    base = Groupoid(carrier, rows)
    plain_forbid = [law for law in spec.forbid if not _law_uses_constants(law)]
    if any(check_law(base, law).holds for law in plain_forbid):
        return []
    if not spec.with_bounds:
        return [base]
    out = []
    const_require = [law for law in spec.require if _law_uses_constants(law)]
    const_forbid = [law for law in spec.forbid if _law_uses_constants(law)]
    for bottom, top in itertools.product(range(n), repeat=2):
        g = Groupoid(carrier, rows, bottom, top)
        if all(check_law(g, law).holds for law in const_require) and \
                not any(check_law(g, law).holds for law in const_forbid):
            out.append(g)
    return out


def run_enumeration(spec: EnumerationSpec, workers: int = 1) -> EnumerationResult:
    """Collect every model of the spec; the work splits on the first cell value."""
    start = time.perf_counter()
    n = spec.size
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda v: _search_tables(spec, v), range(n)))
    else:
        parts = [_search_tables(spec, v) for v in range(n)]
    nodes = sum(p[1] for p in parts)
    groupoids: list[Groupoid] = []
    for tables, _ in parts:
        for flat in tables:
            groupoids.extend(_finish_table(spec, flat))
    groupoids.sort(key=lambda g: (g.table, g.bottom if g.bottom is not None else -1,
                                  g.top if g.top is not None else -1))
    if spec.up_to_isomorphism:
        seen = set()
        kept = []
        for g in groupoids:
            form = canonical_form(g)
            if form.data not in seen:
                seen.add(form.data)
                kept.append(g)
        groupoids = kept
    if spec.limit is not None:
        groupoids = groupoids[:spec.limit]
    return EnumerationResult(groupoids, nodes, time.perf_counter() - start)


def enumerate_groupoids(spec: EnumerationSpec, workers: int = 1) -> Iterator[Groupoid]:
    yield from run_enumeration(spec, workers).groupoids


def count_models(spec: EnumerationSpec, workers: int = 1) -> int:
    return len(run_enumeration(spec, workers).groupoids)


def find_model(require: Sequence, forbid: Sequence, max_size: int) -> Optional[Groupoid]:
    """Lexicographically least model on the smallest carrier up to ``max_size``."""
    for n in range(1, max_size + 1):
        spec = EnumerationSpec(n, tuple(require), tuple(forbid))
        result = run_enumeration(spec)
        if result.groupoids:
            return result.groupoids[0]
    return None


def _involutions(n: int) -> Iterator[tuple[int, ...]]:
    """Period-two self-maps of range(n), lexicographic by image tuple."""
    image: list[Optional[int]] = [None] * n

    def rec(start: int) -> Iterator[tuple[int, ...]]:
        i = next((k for k in range(start, n) if image[k] is None), None)
        if i is None:
            yield tuple(image)  # type: ignore[arg-type]
            return
        image[i] = i
        yield from rec(i + 1)
        image[i] = None
        for j in range(i + 1, n):
            if image[j] is None:
                image[i] = j
                image[j] = i
                yield from rec(i + 1)
                image[i] = None
                image[j] = None

    yield from rec(0)


def enumerate_drsi(n: int) -> Iterator[RelationalSystem]:
    """All reflexive directed systems with antitone period-two involution.

    Iterates every reflexive relation (off-diagonal bits ascending,
    row-major) crossed with every period-two self-map, keeping the pairs
    that pass the antitone and directedness filters.
    """
    if not 1 <= n <= MAX_DRSI_SIZE:
        raise ValueError(f"system enumeration size must be in 1..{MAX_DRSI_SIZE}")
    carrier = Carrier.of_size(n)
    off_diag = [(i, j) for i in range(n) for j in range(n) if i != j]
    involutions = list(_involutions(n))
    for mask in range(1 << len(off_diag)):
        rows = [1 << i for i in range(n)]
        for k, (i, j) in enumerate(off_diag):
            if mask >> k & 1:
                rows[i] |= 1 << j
        relation = BinaryRelation(carrier, tuple(rows))
        for image in involutions:
            u = ElementMap(carrier, carrier, image)
            sys = RelationalSystem(carrier, relation, u)
            if check_involution(sys, u).holds and is_directed(sys).holds:
                yield sys


@dataclass(frozen=True)
class CanonicalForm:
    """Least relabeling of a structure; equality decides isomorphism."""

    kind: str
    data: tuple


def _relabel_groupoid(g: Groupoid, perm: tuple[int, ...]) -> tuple:
    n = g.size
    table = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            table[perm[i]][perm[j]] = perm[g.table[i][j]]
    flat = tuple(v for row in table for v in row)
    bounds = None
    if g.bottom is not None or g.top is not None:
        bounds = (None if g.bottom is None else perm[g.bottom],
                  None if g.top is None else perm[g.top])
    return (flat, bounds)


def _relabel_system(sys: RelationalSystem, perm: tuple[int, ...]) -> tuple:
    n = sys.carrier.size
    matrix = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            matrix[perm[i]][perm[j]] = 1 if sys.relation.has(i, j) else 0
    flat = tuple(v for row in matrix for v in row)
    image = None
    if sys.involution is not None:
        relabeled = [0] * n
        for i in range(n):
            relabeled[perm[i]] = perm[sys.involution(i)]
        image = tuple(relabeled)
    bounds = None
    if sys.bottom is not None or sys.top is not None:
        bounds = (None if sys.bottom is None else perm[sys.bottom],
                  None if sys.top is None else perm[sys.top])
    return (flat, image, bounds)


def canonical_form(obj: Union[Groupoid, RelationalSystem]) -> CanonicalForm:
    """Minimum over all carrier permutations of the relabeled structure."""
    if isinstance(obj, Groupoid):
        relabel, kind = _relabel_groupoid, "groupoid"
    elif isinstance(obj, RelationalSystem):
        relabel, kind = _relabel_system, "system"
    else:
        raise TypeError(f"cannot canonicalize {type(obj).__name__}")
    n = obj.carrier.size
    best = min(relabel(obj, perm) for perm in itertools.permutations(range(n)))
    return CanonicalForm(kind, best)
