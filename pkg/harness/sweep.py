"""
Sweep over discriminants and inert primes, comparing observed root counts
with the criterion's predictions
"""
import asyncio
import logging
import time
from concurrent.futures import Executor, ProcessPoolExecutor, ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from classgroup.forms import make_discriminant
from classgroup.table import ClassGroupTable, enumerate_class_group
from classpoly.hilbert import IntPolynomial, hilbert_class_polynomial
from criterion.conditions import predict
from criterion.symbols import is_inert
from database.cache import PolyCacheManager
from database.models import SweepRecord
from gfp.roots import ROOT_LISTING_CAP, count_fp_roots, is_squarefree, list_fp_roots, reduce_mod_p
from utils.config import Config
from utils.error_handler import global_error_handler
from utils.helpers import primes_between


@dataclass
class SweepReport:
    params: Dict[str, Any]
    records: List[SweepRecord] = field(default_factory=list)

    @property
    def summary(self) -> Dict[str, int]:
        nonempty = sum(1 for r in self.records if r.observed_count > 0)
        return {
            'pairs': len(self.records),
            'nonempty': nonempty,
            'empty': len(self.records) - nonempty,
            'disagreements': sum(1 for r in self.records if r.agreement is False),
        }

    @property
    def all_agree(self) -> bool:
        return all(r.agreement for r in self.records)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'params': dict(self.params),
            'records': [r.to_dict() for r in self.records],
            'summary': self.summary,
        }


def sweep_discriminants(max_disc: int) -> List[int]:
    """Every discriminant D with -max_disc <= D <= -3, ordered by |D|"""
    return [-n for n in range(3, max_disc + 1) if (-n) % 4 in (0, 1)]


def inert_primes(D: int, max_prime: int) -> List[int]:
    """Inert primes with |D| < p <= max_prime"""
    return [p for p in primes_between(-D, max_prime) if is_inert(D, p)]


def build_record(
    table: ClassGroupTable,
    H: IntPolynomial,
    p: int,
    list_roots: bool = False,
    listing_cap: int = ROOT_LISTING_CAP,
) -> SweepRecord:
    """Reduce H mod p, count its roots and compare with the prediction"""
    report = predict(table.disc, p)
    f = reduce_mod_p(H, p)
    observed_roots = list_fp_roots(f, listing_cap) if list_roots and p <= listing_cap else None
    return SweepRecord(
        D=table.disc.value,
        p=p,
        h=table.h,
        mu=table.mu,
        two_torsion_order=2 ** (table.mu - 1),
        inert=report.inert,
        predicted_nonempty=report.predicted_nonempty,
        predicted_count=report.predicted_count,
        observed_count=count_fp_roots(f),
        observed_roots=observed_roots,
        squarefree=is_squarefree(f),
    )


def evaluate_discriminant(
    D: int,
    coeffs: Tuple[int, ...],
    primes: Sequence[int],
    list_roots: bool = False,
    listing_cap: int = ROOT_LISTING_CAP,
) -> List[SweepRecord]:
    """All records for one discriminant; module level so worker processes can pickle it"""
    table = enumerate_class_group(make_discriminant(D))
    H = IntPolynomial(tuple(coeffs))
    return [build_record(table, H, p, list_roots, listing_cap) for p in primes]


class SweepManager:
    """Runs a sweep, one executor task per discriminant"""

    def __init__(self, config: Config, cache: PolyCacheManager, max_workers: Optional[int] = None):
        self.config = config
        self.cache = cache
        self.max_workers = max_workers or config.max_workers
        self.logger = logging.getLogger(__name__)

    def _executor(self) -> Executor:
        if self.max_workers > 1:
            return ProcessPoolExecutor(max_workers=self.max_workers)
        return ThreadPoolExecutor(max_workers=1)

    async def run(self, max_disc: int, max_prime: int, list_roots: bool = False) -> SweepReport:
        started = time.monotonic()
        report = SweepReport(params={
            'max_disc': max_disc,
            'max_prime': max_prime,
            'list_roots': list_roots,
        })
        discs = sweep_discriminants(max_disc)
        self.logger.info(
            f"Sweeping {len(discs)} discriminants up to |D|={max_disc}, "
            f"primes up to {max_prime} ({self.max_workers} worker(s))"
        )

        with self._executor() as executor:
            polynomials = await self._class_polynomials(executor, discs)

            semaphore = asyncio.Semaphore(self.max_workers)
            tasks = [
                self._evaluate_single(executor, semaphore, D, polynomials[D], max_prime, list_roots)
                for D in discs
            ]
            results = await asyncio.gather(*tasks, return_exceptions=True)

        failures = []
        for D, result in zip(discs, results):
            if isinstance(result, BaseException):
                global_error_handler.log_error(result, f"sweep D={D}")
                failures.append(result)
            else:
                report.records.extend(result)
        if failures:
            self.logger.error(
                f"{len(failures)} discriminant(s) failed; errors so far: "
                f"{global_error_handler.get_error_summary()}"
            )
            raise failures[0]

        report.records.sort(key=lambda r: (-r.D, r.p))
        for record in report.records:
            if record.agreement is False:
                self.logger.error(f"Disagreement at D={record.D} p={record.p}: {record.to_dict()}")

        self.logger.info(f"Sweep finished in {time.monotonic() - started:.1f}s: {report.summary}")
        return report

    async def _class_polynomials(self, executor: Executor, discs: List[int]) -> Dict[int, IntPolynomial]:
        """Cached polynomials, computing the missing ones in the executor"""
        loop = asyncio.get_running_loop()
        polynomials: Dict[int, IntPolynomial] = {}
        missing = []
        for D in discs:
            cached = self.cache.get(D)
            if cached is None:
                missing.append(D)
            else:
                polynomials[D] = cached

        if missing:
            self.logger.info(f"Computing {len(missing)} class polynomial(s) not in the cache")
            computed = await asyncio.gather(*[
                loop.run_in_executor(executor, hilbert_class_polynomial, D, self.config.precision_retries)
                for D in missing
            ])
            fresh = dict(zip(missing, computed))
            self.cache.put_many(fresh)
            polynomials.update(fresh)
        return polynomials

    async def _evaluate_single(
        self,
        executor: Executor,
        semaphore: asyncio.Semaphore,
        D: int,
        H: IntPolynomial,
        max_prime: int,
        list_roots: bool,
    ) -> List[SweepRecord]:
        async with semaphore:
            primes = inert_primes(D, max_prime)
            if not primes:
                return []
            loop = asyncio.get_running_loop()
            records = await loop.run_in_executor(
                executor,
                evaluate_discriminant,
                D,
                H.coeffs,
                primes,
                list_roots,
                self.config.root_listing_cap,
            )
            self.logger.debug(f"D={D}: {len(records)} record(s)")
            return records
