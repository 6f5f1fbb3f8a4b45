from concurrent.futures import ThreadPoolExecutor

from dihedrants.core.cache import FormCache
from dihedrants.core.families import FamilyLabel, FamilyTag


def test_get_or_compute_computes_once():
    """Test that a form is computed once per key."""
    cache = FormCache()
    key = FamilyLabel(FamilyTag.COMPLETE, (4,))
    calls = []

    def compute():
        calls.append(1)
        return "form-k4"

    assert cache.get(key) is None
    assert cache.get_or_compute(key, compute) == "form-k4"
    assert cache.get_or_compute(key, compute) == "form-k4"
    assert cache.get(key) == "form-k4"
    assert len(calls) == 1
    assert len(cache) == 1


def test_concurrent_access():
    """Test that concurrent lookups agree on one stored form."""
    cache = FormCache()

    def lookup(i):
        return cache.get_or_compute(i % 3, lambda: f"f{i % 3}")

    with ThreadPoolExecutor(max_workers=4) as pool:
        forms = list(pool.map(lookup, range(30)))
    assert set(forms) == {"f0", "f1", "f2"}
    assert len(cache) == 3
