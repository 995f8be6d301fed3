"""End-to-end acceptance checks, one test per criterion.

Each test prints a PASS/FAIL line with its runtime; the lines are also
collected and repeated in the pytest terminal summary (see conftest.py).
Run directly with ``python tests/test_acceptance.py`` for just the report.
"""
import time
from contextlib import contextmanager

from reference_tables import COUNTS_W4, LISTS_W4
from uwm.blocks import (
    block_b2,
    block_e2m,
    block_f5,
    block_uw33,
    block_uw43,
    block_uw65,
    block_w5,
    block_w6,
    block_w7,
    block_w8,
)
from uwm.compose import PartMultiset, count_decompositions, enumerate_part_multisets
from uwm.cyclotomic import X
from uwm.matrix import gram_check, is_standard_form, random_equivalence_scramble, standardize
from uwm.refute import TEMPLATE, uw75_refute, verify_certificate
from uwm.search import (
    SearchConfig,
    Verdict,
    dfs_classify,
    m_orth_solutions,
    orth_brute,
    zero_pattern_necessary,
)

REPORT: list[str] = []
SCRAMBLES = 1000


@contextmanager
def criterion(number: int, title: str, limit: float):
    t0 = time.perf_counter()
    ok = False
    detail = ""
    try:
        yield
        ok = True
    except AssertionError as exc:
        detail = f" ({exc})" if str(exc) else ""
        raise
    finally:
        dt = time.perf_counter() - t0
        if ok and dt > limit:
            ok = False
            detail = f" (took {dt:.2f}s, limit {limit:g}s)"
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} {title} [{dt:.2f}s]{detail}"
        REPORT.append(line)
        print(line)
    assert dt <= limit, f"criterion {number} took {dt:.2f}s, limit {limit:g}s"


def test_1_count_table():
    with criterion(1, "decomposition counts n=1..100", 1.0):
        got = {n: count_decompositions(n, 4) for n in range(1, 101)}
        assert got == COUNTS_W4
        assert (got[12], got[25], got[50], got[100]) == (8, 52, 2687, 502179)


def test_2_composition_lists():
    with criterion(2, "composition lists n=4..14", 1.0):
        for n in range(4, 15):
            got = enumerate_part_multisets(n, 4)
            reference = [PartMultiset(4, parts).parts for parts in LISTS_W4[n]]
            assert len(got) == len(reference), n
            assert sorted(p.parts for p in got) == sorted(reference), n
        assert len(enumerate_part_multisets(12, 4)) == 8
        assert len(enumerate_part_multisets(14, 4)) == 10


def test_3_constructors():
    with criterion(3, "exact Gram identities for every constructor", 10.0):
        fixed = [block_b2(), block_uw33(), block_uw43(), block_w5(), block_w6(), block_w7(),
                 block_w8(), block_f5(), block_uw65(X)]
        for W in fixed:
            assert gram_check(W), (W.n, W.w)
        for m in range(2, 101):
            assert gram_check(block_e2m(m, X)), m


def test_4_nonexistence():
    with criterion(4, "search and zero patterns rule out (3,2), (5,3), (7,5)", 300.0):
        t0 = time.perf_counter()
        assert dfs_classify(SearchConfig(3, 2, 12)) == []
        assert dfs_classify(SearchConfig(5, 3, 12)) == []
        small = time.perf_counter() - t0
        assert small < 1.0, f"small searches took {small:.2f}s"
        t0 = time.perf_counter()
        assert dfs_classify(SearchConfig(7, 5, 12)) == []
        assert time.perf_counter() - t0 < 300.0
        assert zero_pattern_necessary(3, 2, 12) is Verdict.FAIL
        assert zero_pattern_necessary(5, 3, 12) is Verdict.FAIL
        assert zero_pattern_necessary(7, 5, 2) is Verdict.FAIL


def test_5_uniqueness():
    with criterion(5, "single classes for (5,4), (3,3), (4,3)", 60.0):
        found = dfs_classify(SearchConfig(5, 4, 12))
        assert len(found) == 1
        assert found[0] == standardize(block_w5())
        assert is_standard_form(found[0])
        assert len(dfs_classify(SearchConfig(3, 3, 12))) == 1
        assert len(dfs_classify(SearchConfig(4, 3, 12))) == 1


def test_6_certificate():
    with criterion(6, "UW(7,5) certificate is UNSAT and re-checks", 60.0):
        cert = uw75_refute()
        assert cert.verdict == "UNSAT"
        assert cert.template == TEMPLATE == (
            ("1", "1", "1", "1", "1", "0", "0"),
            ("1", "a", "b", "0", "0", "1", "1"),
            ("1", "0", "0", "c", "d", "f", "g"),
            ("0", "0", "1", "h", "k", "m", "n"),
        )
        assert len(cert.violations) == 32
        assert all(not v.value.is_zero() for v in cert.violations)
        assert verify_certificate(cert)


def test_7_canonicalizer():
    blocks = {
        "B2": block_b2(),
        "UW33": block_uw33(),
        "UW43": block_uw43(),
        "W5": block_w5(),
        "W6": block_w6(),
        "W7": block_w7(),
        "W8": block_w8(),
        "E4(1)": block_e2m(2, 0),
        "E6(i)": block_e2m(3, 3),
        "E8(w)": block_e2m(4, 4),
        "F5": block_f5(),
        "UW65(i)": block_uw65(3),
    }
    with criterion(7, f"{SCRAMBLES} scrambles per block standardize cleanly", 600.0):
        for name, W in blocks.items():
            forms = set()
            for seed in range(SCRAMBLES):
                V = random_equivalence_scramble(W, seed)
                S = standardize(V)
                assert is_standard_form(S), (name, seed)
                assert gram_check(S), (name, seed)
                assert standardize(S) == S, (name, seed)
                forms.add(S.to_ints())
            if name in ("B2", "UW33", "UW43"):
                assert len(forms) == 1, f"{name}: {len(forms)} standard forms"


def test_8_oracles():
    with criterion(8, "closed forms and counts agree with brute force", 60.0):
        for L in (2, 3, 4, 6, 12):
            for m in range(5):
                assert set(m_orth_solutions(m, L)) == set(orth_brute(m, L)), (m, L)
        sizes = [5, 6, 7, 8] + list(range(4, 21, 2))
        for n in range(1, 21):
            brute = 0
            stack = [(0, 0)]
            while stack:
                i, total = stack.pop()
                if i == len(sizes):
                    brute += total == n
                    continue
                k = 0
                while total + k * sizes[i] <= n:
                    stack.append((i + 1, total + k * sizes[i]))
                    k += 1
            assert count_decompositions(n, 4) == brute, n


if __name__ == "__main__":
    import sys

    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
