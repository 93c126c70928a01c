import pytest

from coideal_atlas.suites import SUITES, descriptors, run_suite

FAST = [
    ("identities", 3, None),
    ("derivatives", 4, None),
    ("omega", 4, None),
    ("pbw", 3, 4),
    ("coideal", 3, 4),
    ("theorem26", 3, None),
    ("decode", 4, None),
    ("double", 3, None),
    ("sh", 4, None),
    ("derm", 3, None),
    ("consistency", 1, None),
]


def test_every_suite_listed():
    assert {name for name, _, _ in FAST} == set(SUITES)


@pytest.mark.parametrize("name,n,bound", FAST)
def test_suite_passes(name, n, bound):
    res = run_suite(name, n, bound)
    assert res.ok, "\n".join(res.lines())
    assert all(c.checked > 0 for c in res.checks), res.lines()


@pytest.mark.parametrize("name,n,bound", [(a, min(n, 3), b) for a, n, b in FAST])
def test_suite_passes_multiparameter(name, n, bound):
    res = run_suite(name, n, bound, multiparameter=True)
    assert res.ok, "\n".join(res.lines())


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nosuch", 2)


@pytest.mark.parametrize("n,count", [(1, 1), (2, 4), (3, 11), (4, 26)])
def test_descriptor_count(n, count):
    # sum over intervals [k, m] of 2^(m-k)
    assert len(list(descriptors(n))) == count == sum(2 ** (m - k) for k in range(1, n + 1) for m in range(k, n + 1))


def test_report_lines_name_counterexample():
    res = run_suite("theorem26", 3)
    lines = res.lines()
    assert lines[0].startswith("theorem26/span_equality: pass")
    assert "dual_calculus_mismatches=" in lines[0]
