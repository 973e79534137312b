"""
Persistent cache of Hilbert class polynomials

One entry per line, `v1|D|h|c0,c1,...,ch`, coefficients in decimal and
ascending degree. Updates rewrite the whole file to a temporary sibling and
rename it into place, so readers never see a partial file. Writers hold an
exclusive lock on a hidden sibling `.<name>.lock` across the read-merge-write,
so entries added by concurrent processes are never dropped.
"""
import fcntl
import logging
import os
import tempfile
from contextlib import contextmanager
from typing import Dict, Iterable, Iterator, Optional, Tuple

from classpoly.hilbert import IntPolynomial, hilbert_class_polynomial
from database.models import CACHE_FORMAT_VERSION, PolyCacheEntry
from utils.error_handler import CacheError, ValidationError, sync_error_handler

logger = logging.getLogger(__name__)


@sync_error_handler(context="cache line", default_return=None)
def parse_cache_line(line: str) -> Optional[PolyCacheEntry]:
    """Parse one cache line; malformed lines are logged and yield None"""
    version, disc, degree, coeffs = line.strip().split('|')
    if version != CACHE_FORMAT_VERSION:
        raise ValidationError(f"Unsupported cache format version {version!r}")
    return PolyCacheEntry(
        D=int(disc),
        h=int(degree),
        coeffs=tuple(int(c) for c in coeffs.split(',')),
        version=version,
    )


class PolyCacheManager:
    """Manages the class polynomial cache file"""

    def __init__(self, cache_path: str = "hpoly.cache"):
        self.cache_path = cache_path
        self.lock_path = os.path.join(
            os.path.dirname(os.path.abspath(cache_path)), f".{os.path.basename(cache_path)}.lock"
        )
        self._entries: Optional[Dict[int, PolyCacheEntry]] = None

        # Create the cache directory if it doesn't exist
        directory = os.path.dirname(os.path.abspath(cache_path))
        os.makedirs(directory, exist_ok=True)

    def load(self) -> Dict[int, PolyCacheEntry]:
        """Read every valid entry from disk"""
        entries: Dict[int, PolyCacheEntry] = {}
        if not os.path.exists(self.cache_path):
            self._entries = entries
            return entries

        try:
            with open(self.cache_path, 'r', encoding='utf-8') as handle:
                for number, line in enumerate(handle, start=1):
                    if not line.strip():
                        continue
                    entry = parse_cache_line(line)
                    if entry is None:
                        logger.warning(f"Skipping cache line {number} in {self.cache_path}")
                        continue
                    entries[entry.D] = entry
        except OSError as e:
            raise CacheError(f"Cannot read cache {self.cache_path}: {e}") from e

        self._entries = entries
        logger.debug(f"Loaded {len(entries)} cached polynomials from {self.cache_path}")
        return entries

    def get(self, D: int) -> Optional[IntPolynomial]:
        """Cached polynomial for D, if present"""
        if self._entries is None:
            self.load()
        assert self._entries is not None
        entry = self._entries.get(int(D))
        if entry is None:
            logger.debug(f"Cache miss for D={int(D)}")
            return None
        logger.debug(f"Cache hit for D={int(D)}")
        return IntPolynomial(entry.coeffs)

    def put(self, D: int, polynomial: IntPolynomial) -> None:
        self.put_many({int(D): polynomial})

    def put_many(self, polynomials: Dict[int, IntPolynomial]) -> None:
        """Merge new entries with the on-disk cache and replace it atomically"""
        if not polynomials:
            return
        with self._locked():
            # re-read so entries written by another process survive
            entries = self.load()
            for D, polynomial in polynomials.items():
                entries[int(D)] = PolyCacheEntry(D=int(D), h=polynomial.degree, coeffs=polynomial.coeffs)
            self._write(entries.values())
        self._entries = entries
        logger.info(f"Cached {len(polynomials)} polynomial(s) in {self.cache_path}")

    @contextmanager
    def _locked(self) -> Iterator[None]:
        try:
            handle = open(self.lock_path, 'a', encoding='utf-8')
        except OSError as e:
            raise CacheError(f"Cannot open cache lock {self.lock_path}: {e}") from e
        with handle:
            fcntl.flock(handle, fcntl.LOCK_EX)
            try:
                yield
            finally:
                fcntl.flock(handle, fcntl.LOCK_UN)

    def _write(self, entries: Iterable[PolyCacheEntry]) -> None:
        directory = os.path.dirname(os.path.abspath(self.cache_path))
        ordered = sorted(entries, key=lambda e: -e.D)
        try:
            fd, tmp_path = tempfile.mkstemp(prefix='.hpoly-', suffix='.tmp', dir=directory)
            try:
                with os.fdopen(fd, 'w', encoding='utf-8') as handle:
                    for entry in ordered:
                        handle.write(entry.to_line() + '\n')
                os.replace(tmp_path, self.cache_path)
            except BaseException:
                if os.path.exists(tmp_path):
                    os.unlink(tmp_path)
                raise
        except OSError as e:
            raise CacheError(f"Cannot write cache {self.cache_path}: {e}") from e

    def get_or_compute(self, D: int, max_retries: int = 3) -> Tuple[IntPolynomial, bool]:
        """Return (polynomial, served_from_cache), computing and storing on a miss"""
        cached = self.get(D)
        if cached is not None:
            return cached, True
        polynomial = hilbert_class_polynomial(int(D), max_retries=max_retries)
        self.put(D, polynomial)
        return polynomial, False
