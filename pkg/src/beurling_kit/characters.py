"""Conjugacy classes, irreducible characters, and central idempotents.

Characters are recovered numerically: the class sums span the center of the
group algebra, and refining eigenspace decompositions of their Hermitian
parts splits l2(G) into the isotypic components.  The central idempotents
are the orthogonal projections onto those components, read back as
coefficient vectors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import AlgElement, embed, lam, project_with_residual
from .groups import FiniteGroup

__all__ = ["CharacterTable", "central_idempotents", "character_table", "conjugacy_classes"]

_SPLIT_TOL = 1e-7


def conjugacy_classes(group: FiniteGroup) -> list[tuple[int, ...]]:
    """Conjugacy classes, ordered by (size, smallest element)."""
    n = group.order
    seen = np.zeros(n, dtype=bool)
    classes = []
    for g in range(n):
        if seen[g]:
            continue
        orbit = {group.mul(group.mul(t, g), group.inv(t)) for t in range(n)}
        for x in orbit:
            seen[x] = True
        classes.append(tuple(sorted(orbit)))
    classes.sort(key=lambda c: (len(c), c))
    return classes


@dataclass(frozen=True)
class CharacterTable:
    group: FiniteGroup
    classes: list[tuple[int, ...]]
    dims: tuple[int, ...]
    chars: np.ndarray  # shape (n_irreducibles, n_classes)
    idempotents: tuple[AlgElement, ...]

    @property
    def n_irreducibles(self) -> int:
        return len(self.dims)

    def char_of_element(self, irr: int, g: int) -> complex:
        return complex(self.chars[irr, self._class_of[g]])

    @property
    def _class_of(self) -> np.ndarray:
        out = np.zeros(self.group.order, dtype=np.intp)
        for i, cls in enumerate(self.classes):
            out[list(cls)] = i
        return out


def _split_blocks(blocks: list[np.ndarray], h: np.ndarray) -> list[np.ndarray]:
    """Refine orthonormal column blocks by the eigenspaces of Hermitian h."""
    out = []
    for b in blocks:
        if b.shape[1] == 1:
            out.append(b)
            continue
        a = b.conj().T @ h @ b
        a = (a + a.conj().T) / 2.0
        vals, vecs = np.linalg.eigh(a)
        scale = max(1.0, float(np.abs(vals).max()))
        start = 0
        for i in range(1, len(vals) + 1):
            if i == len(vals) or vals[i] - vals[i - 1] > _SPLIT_TOL * scale:
                out.append(b @ vecs[:, start:i])
                start = i
    return out


def character_table(group: FiniteGroup) -> CharacterTable:
    """Irreducible characters via joint eigenspaces of the class sums.

    Irreducibles are ordered by dimension, then by character values in
    descending lexicographic order over the canonically ordered classes,
    so the trivial character always comes first.
    """
    n = group.order
    classes = conjugacy_classes(group)
    blocks = [np.eye(n, dtype=np.complex128)]
    for cls in classes:
        s = np.zeros((n, n), dtype=np.complex128)
        for g in cls:
            s += embed(lam(group, g))
        blocks = _split_blocks(blocks, (s + s.conj().T) / 2.0)
        blocks = _split_blocks(blocks, (s - s.conj().T) / 2.0j)

    entries = []
    for b in blocks:
        z_mat = b @ b.conj().T
        z, residual = project_with_residual(z_mat, group)
        if residual > 1e-8:
            raise ArithmeticError(
                f"isotypic projection left VN({group.name}): residual {residual:.2e}"
            )
        d = float(np.sqrt(z.coeffs[group.identity].real * n))
        dim = int(round(d))
        if abs(d - dim) > 1e-6 or dim < 1:
            raise ArithmeticError(f"non-integral irreducible dimension {d}")
        chi = np.array(
            [z.coeffs[group.inv(cls[0])] * n / dim for cls in classes],
            dtype=np.complex128,
        )
        key = tuple(
            (-round(v.real, 8), -round(v.imag, 8)) for v in chi
        )
        entries.append((dim, key, chi, z))

    entries.sort(key=lambda e: (e[0], e[1]))
    dims = tuple(e[0] for e in entries)
    chars = np.array([e[2] for e in entries])
    idem = tuple(e[3] for e in entries)
    if sum(d * d for d in dims) != n:
        raise ArithmeticError(
            f"dimension check failed: sum of squares {sum(d*d for d in dims)} != {n}"
        )
    return CharacterTable(group, classes, dims, chars, idem)


def central_idempotents(group: FiniteGroup) -> tuple[AlgElement, ...]:
    return character_table(group).idempotents
