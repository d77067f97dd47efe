"""Content-addressed result cache for invariant values.

Each record is one JSON file named by the SHA-256 of its canonical key
(word text, invariant kind, d, D) and stamped with the engine version.
Records written by another engine version are ignored. A record that cannot
be read back is logged, dropped and recomputed.
"""

import hashlib
import json
import os
import tempfile
from pathlib import Path
from typing import Callable, Optional, Sequence, Union

import structlog
from pydantic import ValidationError
from tenacity import retry, retry_if_exception_type, stop_after_attempt, wait_exponential

from . import __version__
from .schemas import InvariantReport
from .utils.exceptions import CacheCorruptionError
from .utils.monitoring import record_cache_lookup

logger = structlog.get_logger(__name__)


def canonical_key(word_text: str, kind: str, d: int, subset: Optional[Sequence[int]]) -> str:
    """The text that is hashed to address a record."""
    members = "-" if subset is None else ",".join(str(m) for m in sorted(subset))
    return f"{word_text}|{kind}|{d}|{members}"


class ResultCache:
    """One file per record under ``directory/<2 hex>/<sha256>.json``."""

    def __init__(self, directory: Union[str, Path], version: str = __version__):
        self.directory = Path(directory)
        self.version = version

    def path_for(self, key: str) -> Path:
        digest = hashlib.sha256(key.encode("utf-8")).hexdigest()
        return self.directory / digest[:2] / f"{digest}.json"

    def _read(self, key: str, path: Path) -> Optional[InvariantReport]:
        try:
            record = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, ValueError) as e:
            raise CacheCorruptionError(f"unreadable cache record {path}: {e}") from None
        if not isinstance(record, dict) or record.get("key") != key:
            raise CacheCorruptionError(f"cache record {path} does not hold key {key!r}")
        if record.get("version") != self.version:
            return None
        try:
            return InvariantReport.model_validate(record.get("report"))
        except ValidationError as e:
            raise CacheCorruptionError(f"invalid report in cache record {path}: {e.error_count()} errors") from None

    def get(self, key: str) -> Optional[InvariantReport]:
        """Look a record up; corrupt records are removed and count as misses."""
        path = self.path_for(key)
        report = None
        if path.exists():
            try:
                report = self._read(key, path)
            except CacheCorruptionError as e:
                logger.warning("cache record corrupt, recomputing", path=str(path), error=e.message)
                path.unlink(missing_ok=True)
        record_cache_lookup(report is not None)
        return report

    @retry(
        retry=retry_if_exception_type(OSError),
        stop=stop_after_attempt(3),
        wait=wait_exponential(multiplier=1, min=4, max=10),
        reraise=True,
    )
    def put(self, key: str, report: InvariantReport) -> Path:
        """Write a record atomically (temporary file, then rename)."""
        path = self.path_for(key)
        path.parent.mkdir(parents=True, exist_ok=True)
        payload = json.dumps({"key": key, "version": self.version, "report": report.model_dump()}, indent=2, sort_keys=True)
        fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as f:
                f.write(payload + "\n")
            os.replace(tmp_name, path)
        except OSError:
            Path(tmp_name).unlink(missing_ok=True)
            raise
        return path

    def get_or_compute(self, key: str, compute: Callable[[], InvariantReport], name: Optional[str] = None) -> InvariantReport:
        """Return the cached report, computing and storing it on a miss.

        The stored report is independent of the entry name; ``name`` is
        stamped on the returned copy.
        """
        report = self.get(key)
        if report is None:
            report = compute()
            try:
                self.put(key, report)
            except OSError as e:
                logger.warning("cache write failed", key=key, error=str(e))
        if name is not None and report.name != name:
            report = report.model_copy(update={"name": name})
        return report

    def clear(self) -> int:
        """Delete every record; returns how many were removed."""
        removed = 0
        if not self.directory.exists():
            return removed
        for path in self.directory.glob("*/*.json"):
            path.unlink(missing_ok=True)
            removed += 1
        return removed
