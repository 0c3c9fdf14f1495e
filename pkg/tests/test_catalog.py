import pytest

from classpair.catalog import (
    BUILTIN_CATALOG,
    CurveCatalogEntry,
    builtin_entry,
    load_catalog,
    parse_catalog,
    search_generators,
    validate_entry,
)
from classpair.curves import RationalPoint, curve_new, on_curve
from classpair.errors import CatalogError

SAMPLE = """
# demo catalog
[curve]
label = alpha
a4 = -16
a6 = 1
generators = (0, 1, 1) (-2, 5, 1)
regulator = 0.93
notes = trimmed basis

[curve]
label = beta
a4 = -4
a6 = 9
generators = (0, 3) (-2, 3)
"""


def test_builtin_entries_validate():
    assert {e.label for e in BUILTIN_CATALOG} == {"demo-rank2", "demo-rank3"}
    for entry in BUILTIN_CATALOG:
        validate_entry(entry, tol=1e-3)
        for P in entry.generators:
            assert on_curve(entry.curve, P)


def test_builtin_entry_lookup():
    assert builtin_entry("demo-rank3").a4 == -16
    with pytest.raises(CatalogError):
        builtin_entry("nope")


def test_parse_catalog_sample():
    entries = parse_catalog(SAMPLE)
    assert [e.label for e in entries] == ["alpha", "beta"]
    alpha = entries[0]
    assert alpha.a4 == -16 and alpha.a6 == 1
    assert alpha.generators == (RationalPoint(0, 1, 1), RationalPoint(-2, 5, 1))
    assert alpha.regulator_hint == pytest.approx(0.93)
    assert alpha.notes == "trimmed basis"
    beta = entries[1]
    assert beta.generators == (RationalPoint(0, 3, 1), RationalPoint(-2, 3, 1))
    assert beta.regulator_hint is None


def test_load_catalog_roundtrip(tmp_path):
    path = tmp_path / "curves.cat"
    path.write_text(SAMPLE, encoding="utf-8")
    entries = load_catalog(str(path), validate=True)
    assert len(entries) == 2


def test_parse_catalog_errors():
    with pytest.raises(CatalogError):
        parse_catalog("label = x\n")  # outside a block
    with pytest.raises(CatalogError):
        parse_catalog("[curve]\nlabel = x\na4 = 1\n")  # missing a6
    with pytest.raises(CatalogError):
        parse_catalog("[curve]\nlabel = x\na4 = 1\na6 = 1\ngenerators = (1, 2, 3, 4)\n")
    with pytest.raises(CatalogError):
        parse_catalog("[curve]\nlabel = x\na4 = 1\na6 = 1\nbogus line\n")


def test_validate_entry_rejects_bad_generators():
    off = CurveCatalogEntry("bad", -16, 1, (RationalPoint(1, 1, 1),))
    with pytest.raises(CatalogError):
        validate_entry(off)
    dep = CurveCatalogEntry(
        "dep", -16, 1, (RationalPoint(0, 1, 1), RationalPoint(0, -1, 1))
    )
    with pytest.raises(CatalogError):
        validate_entry(dep)


def test_search_generators_rank3():
    basis = search_generators(curve_new(-16, 1), bound=10, tol=1e-3)
    assert len(basis) == 3
    for P in basis:
        assert on_curve(curve_new(-16, 1), P)


def test_search_generators_rank0():
    assert search_generators(curve_new(0, 1), bound=20) == []
