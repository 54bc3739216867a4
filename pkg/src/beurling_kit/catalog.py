"""Built-in groups and the shipped weight catalog.

Weight families: the trivial weight; cyclic-metric exponentials
2^(beta d(k)) and polynomials (1 + d(k))^alpha on Z_n (d the cyclic
distance to 0, sub-multiplicative by the triangle inequality, tensored
across product factors); central weights on S3/D4/Q8 with the value at the
two-dimensional irreducible halved; and subgroup extensions of the abelian
entries into the nonabelian groups through a cyclic embedding.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import numpy as np

from .groups import FiniteGroup, make_group
from .linalg import DEFAULT_TOL, Tolerance
from .weights import (
    DualWeightFunction,
    WeightInverse,
    central_weight,
    cyclic_embedding,
    extend_via_embedding,
    weight_from_dual_function,
    weight_inverse,
)

__all__ = [
    "CATALOG_GROUP_NAMES",
    "CatalogWeight",
    "catalog_weights",
    "group_by_name",
    "load_weight_file",
    "resolve_weight",
    "weight_by_id",
]

CATALOG_GROUP_NAMES = (
    "Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "Z9", "Z10", "Z11", "Z12",
    "Z2xZ4", "S3", "D4", "Q8",
)


@lru_cache(maxsize=None)
def group_by_name(name: str) -> FiniteGroup:
    return make_group(name)


@dataclass(frozen=True)
class CatalogWeight:
    """One resolvable weight entry: a group name, a construction kind
    ('trivial' | 'dual_function' | 'central' | 'extended') and parameters."""

    id: str
    group_name: str
    kind: str
    params: dict = field(default_factory=dict)
    description: str = ""

    @property
    def is_central(self) -> bool:
        """Central as an element of VN(G)."""
        return self.kind in ("central", "trivial") or (
            self.kind == "dual_function"  # abelian groups: everything is central
        )

    @property
    def is_extended_central(self) -> bool:
        """Extension of a weight that is central on the subgroup."""
        return self.kind == "extended" and self.params.get("base_kind", "dual_function") in (
            "dual_function",
            "central",
            "trivial",
        )


def _cyclic_distance(factors: tuple[int, ...]) -> np.ndarray:
    """d(k) = sum of cyclic distances to 0 across the factors."""
    out = np.zeros(1)
    for n in factors:
        d = np.minimum(np.arange(n), n - np.arange(n))
        out = (out[:, None] + d[None, :]).reshape(-1)
    return out


def _dual_values(group: FiniteGroup, family: str, params: dict) -> np.ndarray:
    if group.cyclic_factors is None:
        raise ValueError(f"{group.name} has no cyclic-factor structure")
    d = _cyclic_distance(group.cyclic_factors)
    if family == "cyclic-exp":
        return 2.0 ** (params["beta"] * d)
    if family == "poly":
        return (1.0 + d) ** params["alpha"]
    raise ValueError(f"unknown dual weight family {family!r}")


def _central_values(group: FiniteGroup) -> list[float]:
    from .characters import character_table

    ct = character_table(group)
    return [1.0 if d == 1 else 0.5 for d in ct.dims]


def catalog_weights() -> list[CatalogWeight]:
    entries = [
        CatalogWeight("Z3:trivial", "Z3", "trivial", {}, "identity weight"),
        CatalogWeight("Z2:cyclic-exp-b1", "Z2", "dual_function",
                      {"family": "cyclic-exp", "beta": 1.0}, "w(k) = 2^d(k)"),
        CatalogWeight("Z3:cyclic-exp-b1", "Z3", "dual_function",
                      {"family": "cyclic-exp", "beta": 1.0}, "w(k) = 2^d(k)"),
        CatalogWeight("Z4:cyclic-exp-b1", "Z4", "dual_function",
                      {"family": "cyclic-exp", "beta": 1.0}, "w(k) = 2^d(k)"),
        CatalogWeight("Z4:poly-a1", "Z4", "dual_function",
                      {"family": "poly", "alpha": 1.0}, "w(k) = 1 + d(k)"),
        CatalogWeight("Z4:ext-Z2", "Z4", "extended",
                      {"base_group": "Z2", "family": "cyclic-exp", "beta": 1.0},
                      "Z2 weight transplanted through the order-2 subgroup"),
        CatalogWeight("Z5:cyclic-exp-b05", "Z5", "dual_function",
                      {"family": "cyclic-exp", "beta": 0.5}, "w(k) = 2^(d(k)/2)"),
        CatalogWeight("Z6:cyclic-exp-b1", "Z6", "dual_function",
                      {"family": "cyclic-exp", "beta": 1.0}, "w(k) = 2^d(k)"),
        CatalogWeight("Z6:poly-a1", "Z6", "dual_function",
                      {"family": "poly", "alpha": 1.0}, "w(k) = 1 + d(k)"),
        CatalogWeight("Z8:cyclic-exp-b05", "Z8", "dual_function",
                      {"family": "cyclic-exp", "beta": 0.5}, "w(k) = 2^(d(k)/2)"),
        CatalogWeight("Z12:poly-a1", "Z12", "dual_function",
                      {"family": "poly", "alpha": 1.0}, "w(k) = 1 + d(k)"),
        CatalogWeight("Z2xZ4:cyclic-exp-b05", "Z2xZ4", "dual_function",
                      {"family": "cyclic-exp", "beta": 0.5},
                      "tensor weight 2^((d(k1)+d(k2))/2)"),
        CatalogWeight("S3:central", "S3", "central", {},
                      "1 on the linear characters, 1/2 on the 2-dim irreducible"),
        CatalogWeight("S3:ext-Z2", "S3", "extended",
                      {"base_group": "Z2", "family": "cyclic-exp", "beta": 1.0},
                      "Z2 weight through an order-2 subgroup"),
        CatalogWeight("S3:ext-Z3", "S3", "extended",
                      {"base_group": "Z3", "family": "cyclic-exp", "beta": 1.0},
                      "Z3 weight through the rotation subgroup"),
        CatalogWeight("D4:central", "D4", "central", {},
                      "1 on the linear characters, 1/2 on the 2-dim irreducible"),
        CatalogWeight("D4:ext-Z4", "D4", "extended",
                      {"base_group": "Z4", "family": "cyclic-exp", "beta": 1.0},
                      "Z4 weight through the rotation subgroup"),
        CatalogWeight("Q8:central", "Q8", "central", {},
                      "1 on the linear characters, 1/2 on the 2-dim irreducible"),
        CatalogWeight("Q8:ext-Z4", "Q8", "extended",
                      {"base_group": "Z4", "family": "cyclic-exp", "beta": 1.0},
                      "Z4 weight through a cyclic subgroup of order 4"),
    ]
    return entries


@lru_cache(maxsize=None)
def _resolve_cached(entry_id: str) -> tuple[FiniteGroup, WeightInverse]:
    entry = weight_by_id(entry_id)
    return _resolve(entry, DEFAULT_TOL)


def weight_by_id(entry_id: str) -> CatalogWeight:
    for e in catalog_weights():
        if e.id == entry_id:
            return e
    raise KeyError(f"unknown catalog weight {entry_id!r}")


def resolve_weight(
    entry: CatalogWeight | str,
    tol: Tolerance | None = None,
    group: FiniteGroup | None = None,
) -> tuple[FiniteGroup, WeightInverse]:
    """Build (group, validated weight record) for a catalog entry.

    ``group`` overrides the name lookup for groups ingested from files.
    """
    if isinstance(entry, str):
        entry = weight_by_id(entry)
    if tol is None and group is None:
        try:
            builtin = weight_by_id(entry.id)
        except KeyError:
            builtin = None
        if builtin == entry:
            return _resolve_cached(entry.id)
        return _resolve(entry, DEFAULT_TOL)
    return _resolve(entry, tol or DEFAULT_TOL, group)


def _resolve(
    entry: CatalogWeight, tol: Tolerance, group: FiniteGroup | None = None
) -> tuple[FiniteGroup, WeightInverse]:
    if group is None:
        group = group_by_name(entry.group_name)
    if entry.kind == "trivial":
        from .algebra import identity_element

        return group, weight_inverse(identity_element(group), tol)
    if entry.kind == "dual_function":
        values = _dual_values(group, entry.params["family"], entry.params)
        rec = weight_from_dual_function(DualWeightFunction(group, values), tol)
        return group, rec
    if entry.kind == "central":
        x = central_weight(group, _central_values(group), tol)
        return group, weight_inverse(x, tol)
    if entry.kind == "extended":
        base = group_by_name(entry.params["base_group"])
        values = _dual_values(base, entry.params["family"], entry.params)
        base_rec = weight_from_dual_function(DualWeightFunction(base, values), tol)
        embedding = cyclic_embedding(group, base.order)
        ext = extend_via_embedding(group, embedding, base_rec.omega)
        return group, weight_inverse(ext, tol)
    raise ValueError(f"unknown weight kind {entry.kind!r}")


def base_weight_of(entry: CatalogWeight, tol: Tolerance | None = None):
    """For an extended entry: the subgroup embedding and the base record."""
    if entry.kind != "extended":
        raise ValueError(f"{entry.id} is not an extended weight")
    group = group_by_name(entry.group_name)
    base = group_by_name(entry.params["base_group"])
    values = _dual_values(base, entry.params["family"], entry.params)
    base_rec = weight_from_dual_function(DualWeightFunction(base, values), tol or DEFAULT_TOL)
    return cyclic_embedding(group, base.order), base, base_rec


def load_weight_file(path: str | Path) -> list[CatalogWeight]:
    """Read catalog entries from a JSON file:
    [{"group": name, "kind": ..., "params": {...}}, ...] or a single object."""
    with open(path) as fh:
        data = json.load(fh)
    if isinstance(data, dict):
        data = [data]
    entries = []
    for i, item in enumerate(data):
        try:
            group_name = str(item["group"])
            kind = str(item["kind"])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed weight entry #{i} in {path}: {exc}") from exc
        params = dict(item.get("params", {}))
        entry_id = item.get("id", f"{group_name}:{kind}#{i}")
        entries.append(CatalogWeight(entry_id, group_name, kind, params,
                                     item.get("description", "")))
    return entries
