"""Finite-group substrate: tables, validation, named groups, subgroup lattice.

Elements are dense indices 0..n-1 and the identity is always index 0, so
multiplication is a constant-time table lookup and serialization is stable.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import numpy as np

__all__ = [
    "FiniteGroup",
    "GroupTableError",
    "Subgroup",
    "cyclic_group",
    "direct_product",
    "enumerate_subgroups",
    "group_check",
    "load_cayley",
    "make_group",
]

NAMED_GROUPS = ("S3", "D4", "Q8")


class GroupTableError(ValueError):
    """A multiplication table violates one of the group axioms."""


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group given by its full multiplication table.

    ``table[g, h]`` is the index of g*h.  ``cyclic_factors`` records the
    construction Z_{n1} x ... x Z_{nk} when the group was built that way
    (row-major element indexing); it is what makes a canonical character
    basis available on abelian groups.
    """

    name: str
    order: int
    table: np.ndarray
    inverse: np.ndarray
    identity: int = 0
    cyclic_factors: tuple[int, ...] | None = None

    def __post_init__(self):
        self.table.setflags(write=False)
        self.inverse.setflags(write=False)

    @staticmethod
    def from_table(
        name: str,
        table,
        cyclic_factors: tuple[int, ...] | None = None,
    ) -> "FiniteGroup":
        """Build and fully validate a group from a raw table."""
        table = np.asarray(table, dtype=np.intp)
        problems = _table_violations(table)
        if problems:
            raise GroupTableError("; ".join(problems[:4]))
        inverse = _inverse_from_table(table)
        return FiniteGroup(
            name=name,
            order=table.shape[0],
            table=table,
            inverse=inverse,
            cyclic_factors=cyclic_factors,
        )

    def mul(self, g: int, h: int) -> int:
        return int(self.table[g, h])

    def inv(self, g: int) -> int:
        return int(self.inverse[g])

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = self.mul(x, g)
            k += 1
        return k

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    @cached_property
    def quot(self) -> np.ndarray:
        """Index array q with q[t, u] = t * u^{-1} (embedding pattern)."""
        q = self.table[:, self.inverse]
        q.setflags(write=False)
        return q

    @cached_property
    def lquot(self) -> np.ndarray:
        """Index array q with q[s, t] = s^{-1} * t (module-action pattern)."""
        q = self.table[self.inverse, :]
        q.setflags(write=False)
        return q

    def same_as(self, other: "FiniteGroup") -> bool:
        return self is other or (
            self.order == other.order and np.array_equal(self.table, other.table)
        )

    def __repr__(self):
        return f"FiniteGroup({self.name!r}, order={self.order})"


def _inverse_from_table(table: np.ndarray) -> np.ndarray:
    n = table.shape[0]
    return np.array(
        [int(np.nonzero(table[g] == 0)[0][0]) for g in range(n)], dtype=np.intp
    )


def _table_violations(table: np.ndarray) -> list[str]:
    """All group-axiom violations of a raw table, each with a witness."""
    problems: list[str] = []
    if table.ndim != 2 or table.shape[0] != table.shape[1]:
        return [f"table must be square, got shape {table.shape}"]
    n = table.shape[0]
    if n == 0:
        return ["table must have positive order"]
    if table.min() < 0 or table.max() >= n:
        bad = np.argwhere((table < 0) | (table >= n))[0]
        return [f"entry out of range at row {bad[0]}, column {bad[1]}"]

    full = set(range(n))
    for i in range(n):
        if set(table[i, :].tolist()) != full:
            problems.append(f"Latin-square violation at row {i}")
        if set(table[:, i].tolist()) != full:
            problems.append(f"Latin-square violation at column {i}")

    # identity axiom: index 0 must act as identity on both sides
    if not np.array_equal(table[0, :], np.arange(n)):
        g = int(np.nonzero(table[0, :] != np.arange(n))[0][0])
        problems.append(f"identity axiom fails: 0*{g} != {g}")
    if not np.array_equal(table[:, 0], np.arange(n)):
        g = int(np.nonzero(table[:, 0] != np.arange(n))[0][0])
        problems.append(f"identity axiom fails: {g}*0 != {g}")

    for g in range(n):
        if not np.any(table[g, :] == 0):
            problems.append(f"no inverse for element {g}")

    # associativity, exhaustive: (g*h)*k == g*(h*k)
    left = table[table, :]      # left[g, h, k] = (g*h)*k
    right = table[:, table]     # right[g, h, k] = g*(h*k)
    if not np.array_equal(left, right):
        g, h, k = (int(v) for v in np.argwhere(left != right)[0])
        problems.append(f"associativity fails at triple ({g}, {h}, {k})")
    return problems


def group_check(group: FiniteGroup) -> list[str]:
    """Diagnostic report: every violated axiom with witnesses; empty iff valid."""
    problems = _table_violations(group.table)
    n = group.order
    if group.identity != 0:
        problems.append(f"identity must be index 0, got {group.identity}")
    if group.inverse.shape != (n,):
        problems.append("inverse array has wrong length")
    else:
        for g in range(n):
            i = int(group.inverse[g])
            if not (0 <= i < n) or group.table[g, i] != 0:
                problems.append(f"inverse table wrong for element {g}")
    return problems


# ---------------------------------------------------------------------------
# constructions


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError(f"cyclic group order must be >= 1, got {n}")
    table = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    return FiniteGroup.from_table(f"Z{n}", table, cyclic_factors=(n,))


def direct_product(g1: FiniteGroup, g2: FiniteGroup, name: str | None = None) -> FiniteGroup:
    """Componentwise product; element (a, b) has index a*|G2| + b."""
    n1, n2 = g1.order, g2.order
    t = (g1.table[:, None, :, None] * n2 + g2.table[None, :, None, :]).reshape(
        n1 * n2, n1 * n2
    )
    factors = None
    if g1.cyclic_factors is not None and g2.cyclic_factors is not None:
        factors = g1.cyclic_factors + g2.cyclic_factors
    return FiniteGroup.from_table(name or f"{g1.name}x{g2.name}", t, cyclic_factors=factors)


def _group_from_permutations(name: str, generators: list[tuple[int, ...]]) -> FiniteGroup:
    """Close a set of permutations under composition; identity sorts first."""
    degree = len(generators[0])
    ident = tuple(range(degree))
    elems = {ident}
    frontier = [ident]
    while frontier:
        p = frontier.pop()
        for q in generators:
            r = tuple(p[q[i]] for i in range(degree))
            if r not in elems:
                elems.add(r)
                frontier.append(r)
    ordered = sorted(elems)  # lexicographic; the identity is smallest
    index = {p: i for i, p in enumerate(ordered)}
    n = len(ordered)
    table = np.zeros((n, n), dtype=np.intp)
    for i, p in enumerate(ordered):
        for j, q in enumerate(ordered):
            table[i, j] = index[tuple(p[q[k]] for k in range(degree))]
    return FiniteGroup.from_table(name, table)


def symmetric_3() -> FiniteGroup:
    return _group_from_permutations("S3", [(1, 0, 2), (0, 2, 1)])


def dihedral_4() -> FiniteGroup:
    # square symmetries: rotation i -> i+1 and reflection i -> -i (mod 4)
    return _group_from_permutations("D4", [(1, 2, 3, 0), (0, 3, 2, 1)])


def quaternion_8() -> FiniteGroup:
    """Unit quaternions {+-1, +-i, +-j, +-k}; index = 2*axis + sign bit."""
    # axis products: (axis, axis) -> (sign, axis) with 0=1, 1=i, 2=j, 3=k
    prod = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }
    n = 8
    table = np.zeros((n, n), dtype=np.intp)
    for i in range(n):
        for j in range(n):
            si, ai = (1 if i % 2 == 0 else -1), i // 2
            sj, aj = (1 if j % 2 == 0 else -1), j // 2
            s, a = prod[(ai, aj)]
            s *= si * sj
            table[i, j] = 2 * a + (0 if s == 1 else 1)
    return FiniteGroup.from_table("Q8", table)


_NAMED_BUILDERS = {"S3": symmetric_3, "D4": dihedral_4, "Q8": quaternion_8}


def make_group(spec: str | int) -> FiniteGroup:
    """Build a group from a spec: ``n`` or ``"Zn"``, a named group
    (S3, D4, Q8), or an ``x``-joined product such as ``"Z2xZ4"``.
    """
    if isinstance(spec, int):
        return cyclic_group(spec)
    text = spec.strip()
    parts = text.split("x")
    if len(parts) > 1:
        groups = [make_group(p) for p in parts]
        out = groups[0]
        for g in groups[1:]:
            out = direct_product(out, g)
        return out
    token = text.upper()
    if token in _NAMED_BUILDERS:
        return _NAMED_BUILDERS[token]()
    if token.startswith("Z") and token[1:].isdigit():
        return cyclic_group(int(token[1:]))
    raise ValueError(f"unknown group spec {spec!r}")


def load_cayley(path: str | Path) -> FiniteGroup:
    """Load a group from a JSON Cayley file {"name", "order", "table"}.

    The identity must be index 0; every group axiom is verified at load time.
    """
    with open(path) as fh:
        data = json.load(fh)
    try:
        name = str(data["name"])
        order = int(data["order"])
        table = data["table"]
    except (KeyError, TypeError, ValueError) as exc:
        raise GroupTableError(f"malformed Cayley file {path}: {exc}") from exc
    arr = np.asarray(table, dtype=np.intp)
    if arr.shape != (order, order):
        raise GroupTableError(
            f"table shape {arr.shape} does not match declared order {order}"
        )
    return FiniteGroup.from_table(name, arr)


# ---------------------------------------------------------------------------
# subgroups


@dataclass(frozen=True)
class Subgroup:
    """A subgroup given by a sorted tuple of parent element indices."""

    parent: FiniteGroup
    elements: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def as_group(self) -> tuple[FiniteGroup, tuple[int, ...]]:
        """Re-indexed group together with the map new-index -> parent index."""
        elems = self.elements
        pos = {g: i for i, g in enumerate(elems)}
        n = len(elems)
        table = np.zeros((n, n), dtype=np.intp)
        for i, g in enumerate(elems):
            for j, h in enumerate(elems):
                table[i, j] = pos[self.parent.mul(g, h)]
        grp = FiniteGroup.from_table(f"{self.parent.name}|{list(elems)}", table)
        return grp, elems

    def __repr__(self):
        return f"Subgroup({self.parent.name}, {list(self.elements)})"


def closure(group: FiniteGroup, seed) -> tuple[int, ...]:
    """Subgroup generated by ``seed``: close under products and inverses."""
    elems = {group.identity}
    frontier = list(set(seed) | {group.identity})
    elems.update(frontier)
    while frontier:
        g = frontier.pop()
        for h in list(elems):
            for x in (group.mul(g, h), group.mul(h, g)):
                if x not in elems:
                    elems.add(x)
                    frontier.append(x)
        gi = group.inv(g)
        if gi not in elems:
            elems.add(gi)
            frontier.append(gi)
    return tuple(sorted(elems))


def enumerate_subgroups(group: FiniteGroup) -> list[Subgroup]:
    """All subgroups, found by closing known subgroups with one extra generator.

    Complete because every subgroup is reachable by adding generators one at
    a time; fine at catalog scale (order <= 64).
    """
    found = {(group.identity,)}
    frontier = [(group.identity,)]
    for g in range(group.order):
        h = closure(group, [g])
        if h not in found:
            found.add(h)
            frontier.append(h)
    while frontier:
        base = frontier.pop()
        for g in range(group.order):
            if g in base:
                continue
            h = closure(group, list(base) + [g])
            if h not in found:
                found.add(h)
                frontier.append(h)
    out = [Subgroup(group, elems) for elems in found]
    out.sort(key=lambda s: (s.order, s.elements))
    return out
