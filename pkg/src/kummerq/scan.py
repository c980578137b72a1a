"""Prime-range scans persisted as CSV, with resume and ordered parallel commit.

The output file is its own checkpoint: rows are appended in increasing
``q`` and flushed to disk every ``BATCH_ROWS`` rows.  On restart the file
is re-read, a torn final line is cut off, and the scan continues after the
last complete row.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import islice
from pathlib import Path
from typing import Iterable, Iterator

from .arith import DEFAULT_MAX_ENTRIES, is_prime, primes_in_range
from .ek import ek_difference
from .errors import PreconditionError
from .kummer import kummer_ratio

HEADER = "q,value,r,method,kind"
KINDS = ("kummer", "ek")
BATCH_ROWS = 64
JOBS_ENV = "KUMMERQ_JOBS"


class CheckpointError(PreconditionError):
    def __init__(self, path, lineno: int, reason: str):
        super().__init__(f"{path}:{lineno}: {reason}")
        self.lineno = lineno


@dataclass(frozen=True)
class ScanRow:
    q: int
    value: float  # log r(q) for kummer, the raw difference for ek
    r_or_norm: float  # r(q) for kummer, difference / log q for ek
    method: str
    kind: str

    def format(self) -> str:
        return f"{self.q},{self.value:.17g},{self.r_or_norm:.17g},{self.method},{self.kind}"


def parse_row(line: str) -> ScanRow:
    parts = line.split(",")
    if len(parts) != 5:
        raise ValueError(f"expected 5 fields, found {len(parts)}")
    q, value, r, method, kind = parts
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    row = ScanRow(int(q), float(value), float(r), method, kind)
    if not (math.isfinite(row.value) and math.isfinite(row.r_or_norm)):
        raise ValueError("non-finite value")
    return row


@dataclass(frozen=True)
class ScanSummary:
    """Counts relative to the threshold (1 for r(q), 0 for the EK difference).

    Values equal to the threshold count as above.  ``min_q``/``max_q`` are the
    smallest ``q`` attaining the extreme values.
    """

    count_total: int
    count_above_one: int
    count_below_one: int
    min_q: int | None
    min_value: float | None
    max_q: int | None
    max_value: float | None

    def format(self) -> str:
        def num(x):
            return "none" if x is None else f"{x:.17g}"

        lines = [
            f"count_total={self.count_total}",
            f"count_above_one={self.count_above_one}",
            f"count_below_one={self.count_below_one}",
            f"min_q={self.min_q if self.min_q is not None else 'none'}",
            f"min_value={num(self.min_value)}",
            f"max_q={self.max_q if self.max_q is not None else 'none'}",
            f"max_value={num(self.max_value)}",
        ]
        return "\n".join(lines)


def summarize(rows: Iterable[ScanRow]) -> ScanSummary:
    total = above = 0
    lo = hi = None
    for row in rows:
        threshold = 1.0 if row.kind == "kummer" else 0.0
        x = row.r_or_norm
        total += 1
        above += x >= threshold
        if lo is None or x < lo.r_or_norm:
            lo = row
        if hi is None or x > hi.r_or_norm:
            hi = row
    return ScanSummary(
        count_total=total,
        count_above_one=above,
        count_below_one=total - above,
        min_q=lo.q if lo else None,
        min_value=lo.r_or_norm if lo else None,
        max_q=hi.q if hi else None,
        max_value=hi.r_or_norm if hi else None,
    )


def read_rows(path, *, allow_torn_tail: bool = False) -> tuple[list[ScanRow], int]:
    """Parse a scan file; return its rows and the byte length of the valid prefix.

    A final line without a newline is an interrupted append: with
    ``allow_torn_tail`` it is dropped, otherwise it is an error.
    """
    data = Path(path).read_bytes()
    text = data.decode("ascii", errors="strict") if data else ""
    lines = text.split("\n")
    torn = lines.pop()  # "" when the file ends with a newline
    if torn and not allow_torn_tail:
        raise CheckpointError(path, len(lines) + 1, "truncated line without newline")
    valid = len(data) - len(torn.encode())
    if not lines:
        return [], 0 if torn else valid
    if lines[0] != HEADER:
        raise CheckpointError(path, 1, f"bad header {lines[0]!r}")
    rows: list[ScanRow] = []
    for lineno, line in enumerate(lines[1:], start=2):
        try:
            row = parse_row(line)
        except ValueError as exc:
            raise CheckpointError(path, lineno, str(exc)) from None
        if rows and row.q <= rows[-1].q:
            raise CheckpointError(path, lineno, f"q={row.q} is not above previous q={rows[-1].q}")
        if rows and row.kind != rows[-1].kind:
            raise CheckpointError(path, lineno, "mixed scan kinds")
        rows.append(row)
    return rows, valid


def odd_primes(start: int, end: int) -> Iterator[int]:
    return primes_in_range(max(start, 3), end)


def evaluate(q: int, kind: str, method: str = "bernoulli", max_entries: int = DEFAULT_MAX_ENTRIES) -> ScanRow:
    if kind == "kummer":
        res = kummer_ratio(q, method, max_entries=max_entries)
        return ScanRow(q, res.log_r, res.r, method, kind)
    if kind == "ek":
        ek = ek_difference(q, max_entries)
        return ScanRow(q, ek.diff, ek.normalized, "ek", kind)
    raise PreconditionError(f"unknown scan kind {kind!r}")


def _evaluate_line(args) -> str:
    return evaluate(*args).format()


def default_jobs() -> int:
    raw = os.environ.get(JOBS_ENV)
    if not raw:
        return 1
    try:
        jobs = int(raw)
    except ValueError:
        raise PreconditionError(f"{JOBS_ENV} must be a positive integer, got {raw!r}") from None
    if jobs < 1:
        raise PreconditionError(f"{JOBS_ENV} must be a positive integer, got {raw!r}")
    return jobs


def _resume_point(path: Path, start: int, end: int, kind: str, method: str) -> int:
    """Validate an existing checkpoint and return the number of completed primes."""
    rows, valid = read_rows(path, allow_torn_tail=True)
    if valid != path.stat().st_size:
        with open(path, "r+b") as fh:
            fh.truncate(valid)
    if not rows:
        return 0
    tag = "ek" if kind == "ek" else method
    expected = odd_primes(start, end)
    for lineno, row in enumerate(rows, start=2):
        if row.kind != kind or row.method != tag:
            raise CheckpointError(path, lineno, f"row is {row.kind}/{row.method}, scan is {kind}/{tag}")
        want = next(expected, None)
        if row.q != want:
            raise CheckpointError(path, lineno, f"q={row.q} does not match the scan range (expected {want})")
    return len(rows)


def run_scan(
    start: int,
    end: int,
    out: str | os.PathLike,
    *,
    kind: str = "kummer",
    method: str = "bernoulli",
    jobs: int = 1,
    max_entries: int = DEFAULT_MAX_ENTRIES,
) -> ScanSummary:
    """Evaluate every odd prime in ``[start, end]`` and append the rows to ``out``."""
    if start > end:
        raise PreconditionError(f"start={start} exceeds end={end}")
    if kind not in KINDS:
        raise PreconditionError(f"unknown scan kind {kind!r}")
    if jobs < 1:
        raise PreconditionError("jobs must be >= 1")
    path = Path(out)
    done = 0
    if path.exists() and path.stat().st_size > 0:
        done = _resume_point(path, start, end, kind, method)
    try:
        fh = open(path, "a", newline="\n")
    except OSError as exc:
        raise PreconditionError(f"cannot write {path}: {exc}") from None
    with fh:
        if path.stat().st_size == 0:
            fh.write(HEADER + "\n")
        todo = ((q, kind, method, max_entries) for q in islice(odd_primes(start, end), done, None))
        if jobs == 1:
            lines = map(_evaluate_line, todo)
            _commit(fh, lines)
        else:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                _commit(fh, _ordered_parallel(pool, todo, jobs))
    rows, _ = read_rows(path)
    return summarize(rows)


def _ordered_parallel(pool, tasks, jobs: int) -> Iterator[str]:
    # bounded windows keep memory flat on long ranges; map preserves order
    window = BATCH_ROWS * jobs
    while chunk := list(islice(tasks, window)):
        yield from pool.map(_evaluate_line, chunk, chunksize=max(1, len(chunk) // (4 * jobs)))


def _commit(fh, lines: Iterable[str]) -> None:
    pending = 0
    for line in lines:
        fh.write(line + "\n")
        pending += 1
        if pending == BATCH_ROWS:
            _sync(fh)
            pending = 0
    _sync(fh)


def _sync(fh) -> None:
    fh.flush()
    os.fsync(fh.fileno())


def stats(path) -> ScanSummary:
    if not Path(path).exists():
        raise PreconditionError(f"no such file: {path}")
    rows, _ = read_rows(path)
    return summarize(rows)


def bq1_score(q: int, limit: int) -> int:
    """Number of ``b <= limit`` with ``b*q + 1`` prime (only even ``b`` can qualify)."""
    return sum(is_prime(b * q + 1) for b in range(2, limit + 1, 2))


def candidates(start: int, end: int, limit: int = 20, count: int = 10) -> list[tuple[int, int]]:
    """Odd primes in the window ranked by :func:`bq1_score`, best first.

    Ties go to the smaller ``q``.  Returns ``(q, score)`` pairs.
    """
    scored = [(q, bq1_score(q, limit)) for q in odd_primes(start, end)]
    scored.sort(key=lambda item: (-item[1], item[0]))
    return scored[:count]
