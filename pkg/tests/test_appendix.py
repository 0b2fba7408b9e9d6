import pytest

from orthoderiv.appendix import TABLE, entry
from orthoderiv.kernel import KernelSpec, kernel_legendre_sum, moment_contract_holds


def test_table_complete():
    assert sorted((e.n, e.m) for e in TABLE) == [(n, m) for n in range(1, 6) for m in range(6)]


@pytest.mark.parametrize("e", [e for e in TABLE if not e.has_typo], ids=lambda e: f"n{e.n}m{e.m}")
def test_printed_entry_matches(e):
    assert e.printed() == kernel_legendre_sum(KernelSpec(e.n, e.m)).k


def test_flagged_entry_resolution():
    e = entry(3, 2)
    spec = KernelSpec(3, 2)
    assert e.has_typo
    assert not moment_contract_holds(spec, e.printed())
    assert moment_contract_holds(spec, e.resolved())
    assert e.resolved() == kernel_legendre_sum(spec).k


def test_only_one_flagged_entry():
    assert [(e.n, e.m) for e in TABLE if e.has_typo] == [(3, 2)]


def test_entry_lookup_missing():
    with pytest.raises(KeyError):
        entry(6, 0)
