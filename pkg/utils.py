import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import config


class RcopToricError(Exception):
    """Base class for every failure raised by the rcop-toric library."""
    exit_status = 2


class GraphInputError(RcopToricError):
    """Exception raised when a graph document or graph value is malformed."""
    exit_status = 2


class DisconnectedGraphError(RcopToricError):
    """Exception raised when an operation that needs a connected graph gets a disconnected one."""
    exit_status = 1


class NotBlockGraphError(RcopToricError):
    """Exception raised when a block graph is required and the input is not one."""
    exit_status = 1


class NonUniquePathError(NotBlockGraphError):
    """Exception raised when two distinct shortest paths join the same vertices."""
    pass


class NotRcopError(RcopToricError):
    """Exception raised when an RCOP graph is required and the input is not one."""
    exit_status = 1


class PreconditionError(RcopToricError):
    """Exception raised when arguments do not fit together (lengths, columns, shape)."""
    exit_status = 2


class LimitExceededError(RcopToricError):
    """Exception raised when a configured ceiling (group size, fiber cap, audit size) is hit."""
    exit_status = 2


class SingularMatrixError(RcopToricError):
    """Exception raised when an exact inversion meets a singular matrix."""
    exit_status = 3


class VerificationError(RcopToricError):
    """Exception raised when an internal postcondition fails; signals an implementation bug."""
    exit_status = 3


class LogUtils:
    LEVELS = {"debug": 10, "info": 20, "warning": 30, "error": 40}

    @staticmethod
    def _enabled(level):
        threshold = LogUtils.LEVELS.get(config.LOG_LEVEL, 20)
        return LogUtils.LEVELS[level] >= threshold

    @staticmethod
    def _emit(level, prefix, message):
        if LogUtils._enabled(level):
            print(f"{prefix} {message}", file=sys.stderr)

    @staticmethod
    def debug(message):
        LogUtils._emit("debug", "🔍", message)

    @staticmethod
    def info(message):
        LogUtils._emit("info", "🔄", message)

    @staticmethod
    def success(message):
        LogUtils._emit("info", "✅", message)

    @staticmethod
    def warning(message):
        LogUtils._emit("warning", "⚠️", message)

    @staticmethod
    def error(message):
        LogUtils._emit("error", "❌", message)


class FileUtils:
    @staticmethod
    def read_text(path):
        """Read a UTF-8 text file, mapping OS failures onto GraphInputError."""
        if not os.path.exists(path):
            raise GraphInputError(f"Input file not found: {path}")
        try:
            with open(path, "r", encoding="utf-8") as handle:
                return handle.read()
        except OSError as e:
            raise GraphInputError(f"Could not read {path}: {str(e)}")

    @staticmethod
    def get_script_dir():
        """Get the directory where the current script is located."""
        return os.path.dirname(os.path.abspath(__file__))


class JsonUtils:
    @staticmethod
    def render_fraction(value):
        """Render an exact rational as "p/q" (or "p" for integers)."""
        value = Fraction(value)
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"

    @staticmethod
    def dumps(payload):
        """Serialize deterministically: sorted keys, fixed indentation, trailing newline."""
        return json.dumps(payload, sort_keys=True, indent=2, default=JsonUtils._default) + "\n"

    @staticmethod
    def _default(value):
        if isinstance(value, Fraction):
            return JsonUtils.render_fraction(value)
        if hasattr(value, "to_dict"):
            return value.to_dict()
        if isinstance(value, (set, frozenset)):
            return sorted(value)
        # numpy scalars
        if hasattr(value, "item"):
            return value.item()
        raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")


class ParallelUtils:
    @staticmethod
    def map_ordered(func, items):
        """Apply func to items on the shared worker pool, keeping input order."""
        items = list(items)
        if config.THREADS <= 1 or len(items) <= 1:
            return [func(item) for item in items]
        with ThreadPoolExecutor(max_workers=min(config.THREADS, len(items))) as pool:
            return list(pool.map(func, items))
