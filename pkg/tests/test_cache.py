import os
from concurrent.futures import ThreadPoolExecutor

import pytest

from classpoly.hilbert import IntPolynomial
from database.cache import PolyCacheManager, parse_cache_line
from database.models import PolyCacheEntry, SweepRecord
from utils.error_handler import ValidationError

H15 = IntPolynomial((-121287375, 191025, 1))
H23 = IntPolynomial((12771880859375, -5151296875, 3491750, 1))


class TestPolyCacheEntry:
    def test_to_line(self):
        entry = PolyCacheEntry(D=-15, h=2, coeffs=H15.coeffs)
        assert entry.to_line() == "v1|-15|2|-121287375,191025,1"

    def test_parse_line(self):
        entry = parse_cache_line("v1|-15|2|-121287375,191025,1\n")
        assert entry == PolyCacheEntry(D=-15, h=2, coeffs=H15.coeffs)

    def test_degree_mismatch(self):
        with pytest.raises(ValidationError):
            PolyCacheEntry(D=-15, h=3, coeffs=H15.coeffs)

    def test_not_monic(self):
        with pytest.raises(ValidationError):
            PolyCacheEntry(D=-15, h=1, coeffs=(5, 2))

    @pytest.mark.parametrize("line", [
        "v2|-15|2|-121287375,191025,1",
        "v1|-15|2",
        "v1|-15|two|1,2,1",
        "v1|-15|2|1,2",
        "",
    ])
    def test_malformed_lines(self, line):
        assert parse_cache_line(line) is None


class TestPolyCacheManager:
    def test_missing_file_is_empty(self, tmp_path):
        cache = PolyCacheManager(str(tmp_path / 'none.cache'))
        assert cache.load() == {}
        assert cache.get(-15) is None

    def test_put_then_get(self, cache):
        cache.put(-15, H15)
        assert cache.get(-15) == H15
        assert PolyCacheManager(cache.cache_path).get(-15) == H15

    def test_file_format(self, cache):
        cache.put_many({-23: H23, -15: H15})
        with open(cache.cache_path, encoding='utf-8') as handle:
            assert handle.read() == (
                "v1|-15|2|-121287375,191025,1\n"
                "v1|-23|3|12771880859375,-5151296875,3491750,1\n"
            )

    def test_writers_merge(self, cache):
        other = PolyCacheManager(cache.cache_path)
        cache.load()
        other.put(-23, H23)
        cache.put(-15, H15)
        fresh = PolyCacheManager(cache.cache_path)
        assert fresh.get(-15) == H15
        assert fresh.get(-23) == H23

    def test_no_temporary_files_left(self, cache, tmp_path):
        cache.put(-15, H15)
        assert sorted(os.listdir(tmp_path)) == ['.hpoly.cache.lock', 'cm_config.yml', 'hpoly.cache']

    def test_concurrent_writers_keep_every_entry(self, cache):
        polynomials = {
            -3: IntPolynomial((0, 1)),
            -4: IntPolynomial((-1728, 1)),
            -7: IntPolynomial((3375, 1)),
            -8: IntPolynomial((-8000, 1)),
            -11: IntPolynomial((32768, 1)),
            -15: H15,
            -23: H23,
        }

        def write(D):
            PolyCacheManager(cache.cache_path).put(D, polynomials[D])

        with ThreadPoolExecutor(max_workers=len(polynomials)) as pool:
            list(pool.map(write, polynomials))

        stored = PolyCacheManager(cache.cache_path).load()
        assert set(stored) == set(polynomials)
        assert all(IntPolynomial(stored[D].coeffs) == polynomials[D] for D in polynomials)

    def test_skips_bad_lines(self, cache, caplog):
        with open(cache.cache_path, 'w', encoding='utf-8') as handle:
            handle.write("v1|-15|2|-121287375,191025,1\n")
            handle.write("garbage\n")
            handle.write("v0|-4|1|-1728,1\n")
        entries = cache.load()
        assert list(entries) == [-15]
        assert "Skipping cache line 2" in caplog.text
        assert "Skipping cache line 3" in caplog.text

    def test_creates_directory(self, tmp_path):
        path = tmp_path / 'nested' / 'dir' / 'hpoly.cache'
        PolyCacheManager(str(path)).put(-15, H15)
        assert path.exists()

    def test_get_or_compute(self, cache):
        polynomial, cached = cache.get_or_compute(-4)
        assert polynomial == IntPolynomial((-1728, 1))
        assert not cached
        again, cached = PolyCacheManager(cache.cache_path).get_or_compute(-4)
        assert again == polynomial
        assert cached


class TestSweepRecord:
    def _record(self, **overrides):
        values = dict(D=-15, p=29, h=2, mu=2, two_torsion_order=2, inert=True,
                      predicted_nonempty=True, predicted_count=2, observed_count=2)
        values.update(overrides)
        return SweepRecord(**values)

    def test_agreement(self):
        assert self._record().agreement is True

    def test_count_mismatch(self):
        assert self._record(observed_count=0).agreement is False

    def test_not_squarefree(self):
        assert self._record(squarefree=False).agreement is False

    def test_count_outside_dichotomy(self):
        assert self._record(predicted_count=1, observed_count=1).agreement is False

    def test_no_prediction(self):
        record = self._record(predicted_nonempty=None, predicted_count=None)
        assert record.agreement is None

    def test_to_dict_field_order(self):
        assert list(self._record().to_dict()) == [
            'D', 'p', 'h', 'mu', 'two_torsion_order', 'inert', 'predicted_nonempty',
            'predicted_count', 'observed_count', 'observed_roots', 'squarefree', 'agreement',
        ]
