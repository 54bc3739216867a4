import json

import numpy as np
import pytest

from beurling_kit import catalog as cat
from beurling_kit import weights as wt


def test_catalog_size_and_bounds():
    entries = cat.catalog_weights()
    assert len(entries) >= 15
    for e in entries:
        g = cat.group_by_name(e.group_name)
        assert g.order <= 16  # tensor-square checks stay affordable


def test_all_entries_resolve(catalog_triples):
    for group, entry, record in catalog_triples:
        assert record.margin_iw >= -1e-10
        assert min(record.kernel_certificates) > 1e-10
        assert record.omega.group.same_as(group)


def test_entry_flags():
    by_id = {e.id: e for e in cat.catalog_weights()}
    assert by_id["S3:central"].is_central
    assert by_id["Z2:cyclic-exp-b1"].is_central  # abelian: center is everything
    assert not by_id["S3:ext-Z2"].is_central
    assert by_id["S3:ext-Z2"].is_extended_central


def test_extension_metadata():
    entry = cat.weight_by_id("S3:ext-Z3")
    embedding, base, base_rec = cat.base_weight_of(entry)
    assert base.order == 3
    assert len(embedding) == 3 and embedding[0] == 0
    g, rec = cat.resolve_weight(entry)
    lifted = np.zeros(g.order, dtype=complex)
    lifted[embedding] = base_rec.omega.coeffs
    assert np.allclose(rec.omega.coeffs, lifted)


def test_weight_by_id_unknown():
    with pytest.raises(KeyError):
        cat.weight_by_id("Z2:nope")


def test_load_weight_file(tmp_path):
    path = tmp_path / "weights.json"
    path.write_text(
        json.dumps(
            [
                {"group": "Z4", "kind": "trivial"},
                {
                    "group": "Z6",
                    "kind": "dual_function",
                    "params": {"family": "poly", "alpha": 2.0},
                    "id": "Z6:poly-a2",
                },
                {
                    "group": "D4",
                    "kind": "extended",
                    "params": {"base_group": "Z2", "family": "cyclic-exp", "beta": 1.0},
                },
            ]
        )
    )
    entries = cat.load_weight_file(path)
    assert len(entries) == 3
    assert entries[1].id == "Z6:poly-a2"
    for e in entries:
        group, record = cat.resolve_weight(e)
        assert wt.verify_weight_inverse(record.omega).is_weight_inverse


def test_load_weight_file_single_object(tmp_path):
    path = tmp_path / "one.json"
    path.write_text(json.dumps({"group": "Z2", "kind": "trivial"}))
    assert len(cat.load_weight_file(path)) == 1


def test_load_weight_file_malformed(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps([{"kind": "trivial"}]))
    with pytest.raises(ValueError, match="malformed"):
        cat.load_weight_file(path)
