"""
Centralized error handling: exception hierarchy, error accounting and retries
"""
import functools
import logging
from typing import Any, Callable, Dict, Optional, Tuple, Type, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar('T')

# CLI exit statuses
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_DISAGREEMENT = 3
EXIT_FAILURE = 4


class CMRootsError(Exception):
    """Base class for every error raised by this package"""


class ValidationError(CMRootsError, ValueError):
    """Input violates a documented precondition"""


class ZeroPolynomialError(ValidationError):
    """A zero polynomial was about to be constructed"""


class PrecisionError(CMRootsError):
    """Numerical evaluation could not be made exact"""

    def __init__(
        self,
        message: str,
        disc: Optional[int] = None,
        prec: Optional[int] = None,
        residual: Optional[float] = None,
    ):
        super().__init__(message)
        self.disc = disc
        self.prec = prec
        self.residual = residual

    def diagnostics(self) -> Dict[str, Any]:
        return {'disc': self.disc, 'prec': self.prec, 'residual': self.residual}


class CacheError(CMRootsError, OSError):
    """The polynomial cache could not be read or written"""


class ErrorHandler:
    """Centralized error handler counting failures by type"""

    def __init__(self) -> None:
        self.error_counts: Dict[str, int] = {}

    def log_error(self, error: Exception, context: str = "", extra_data: Optional[dict] = None) -> None:
        """Log error with context and optional extra data"""
        error_type = type(error).__name__
        error_msg = str(error)

        # Count errors by type
        self.error_counts[error_type] = self.error_counts.get(error_type, 0) + 1

        log_context = f" [{context}]" if context else ""
        logger.error(
            f"{error_type}{log_context}: {error_msg}",
            extra={'extra_data': extra_data or {}},
            exc_info=not isinstance(error, ValidationError)
        )

    def get_error_summary(self) -> dict:
        """Get summary of error counts"""
        return dict(self.error_counts)


def sync_error_handler(context: str = "", reraise: bool = False, default_return: Any = None):
    """Decorator for sync functions to handle errors gracefully"""
    def decorator(func: Callable):
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            try:
                return func(*args, **kwargs)
            except Exception as e:
                global_error_handler.log_error(e, context or func.__name__, {
                    'function': func.__name__,
                    'args': str(args)[:200],  # Truncate long args
                    'kwargs': str(kwargs)[:200]
                })
                if reraise:
                    raise
                return default_return

        return wrapper
    return decorator


_EXIT_CODES: Tuple[Tuple[Type[BaseException], int], ...] = (
    (ValidationError, EXIT_VALIDATION),
    (PrecisionError, EXIT_FAILURE),
    (OSError, EXIT_FAILURE),
)


def cli_error_handler(context: str = ""):
    """Map exceptions escaping a CLI command onto exit statuses"""
    def decorator(func: Callable[..., int]):
        @functools.wraps(func)
        def wrapper(*args, **kwargs) -> int:
            try:
                return func(*args, **kwargs)
            except CMRootsError as e:
                return _report(e, context or func.__name__)
            except OSError as e:
                return _report(e, context or func.__name__)

        return wrapper
    return decorator


def _report(error: Exception, context: str) -> int:
    global_error_handler.log_error(error, context)
    if isinstance(error, PrecisionError):
        logger.error(f"Precision diagnostics: {error.diagnostics()}")
    for error_type, code in _EXIT_CODES:
        if isinstance(error, error_type):
            return code
    return EXIT_FAILURE


class RetryHandler:
    """Handles retry logic for computations that may need more precision"""

    @staticmethod
    def retry_with_precision(
        func: Callable[[int], T],
        start_prec: int,
        max_retries: int = 3,
        exceptions: tuple = (PrecisionError,)
    ) -> T:
        """Run func(prec), doubling prec after each failure"""
        last_exception: Optional[BaseException] = None
        prec = start_prec

        for attempt in range(max_retries + 1):
            try:
                return func(prec)
            except exceptions as e:
                last_exception = e
                if attempt == max_retries:
                    break

                logger.warning(f"Attempt {attempt + 1} failed at {prec} bits, retrying at {2 * prec}: {e}")
                prec *= 2

        assert last_exception is not None
        raise last_exception


# Global error handler instance
global_error_handler = ErrorHandler()
