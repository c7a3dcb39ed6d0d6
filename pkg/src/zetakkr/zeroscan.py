"""Locating critical-line zeros and the exact counting function.

Zeros are detected as sign changes of the Hardy Z function on a uniform
grid and refined by bisection.  Catalogs are immutable once built and
may be merged from disjoint sub-scans; a merged result is identical to
the corresponding serial scan because the grid nodes are fixed by
(t_min, grid_step) alone.
"""

from __future__ import annotations

import math
from bisect import bisect_right, insort
from dataclasses import dataclass, field

from .errors import (
    CatalogCoverageError,
    CatalogFormatError,
    CatalogOrderError,
    ConvergenceError,
    DomainError,
)
from .specfun import hardy_z, theta_exact

__all__ = [
    "ScanConfig",
    "ZeroCatalog",
    "find_zeros",
    "exact_count",
    "s_function",
    "load_catalog",
    "save_catalog",
    "export_zeros_csv",
    "merge_catalogs",
    "SCAN_MAX_HEIGHT",
]

SCAN_MAX_HEIGHT = 1.0e4  # validated hardy_z range for scanning
S_FUNCTION_MIN = 10.0

_COVERAGE_KEY = "max-height-scanned"


@dataclass(frozen=True)
class ScanConfig:
    """Grid-scan parameters: range, step, and bisection refinement."""

    t_min: float
    t_max: float
    grid_step: float = 0.05
    refine_tolerance: float = 1e-9
    max_refinements: int = 100

    def __post_init__(self):
        if not (self.t_min < self.t_max):
            raise DomainError(f"need t_min < t_max, got [{self.t_min}, {self.t_max}]")
        if self.t_min < 0.0:
            raise DomainError("t_min must be >= 0")
        if self.grid_step <= 0.0:
            raise DomainError("grid_step must be positive")
        if not (0.0 < self.refine_tolerance < self.grid_step):
            raise DomainError("need 0 < refine_tolerance < grid_step")
        if self.max_refinements < 1:
            raise DomainError("max_refinements must be >= 1")


@dataclass(frozen=True)
class ZeroCatalog:
    """Ordered zero heights plus the range that was actually scanned.

    `source` is "computed" for scanner output and "loaded" for catalogs
    read from disk.  Counting queries are only valid up to
    `max_height_scanned`; beyond it the count would be a lower bound.
    """

    heights: tuple = field(default_factory=tuple)
    source: str = "computed"
    max_height_scanned: float = 0.0

    def __post_init__(self):
        if self.source not in ("computed", "loaded"):
            raise DomainError(f"unknown catalog source {self.source!r}")
        prev = None
        for h in self.heights:
            if not math.isfinite(h) or h <= 0.0:
                raise CatalogFormatError(f"non-finite or non-positive height {h!r}")
            if prev is not None and h <= prev:
                raise CatalogOrderError(f"heights not strictly increasing at {h!r}")
            prev = h
        if self.heights and self.source == "computed" and self.max_height_scanned < self.heights[-1]:
            raise DomainError("max_height_scanned below last computed height")

    def __len__(self):
        return len(self.heights)


def _bisect_zero(lo, hi, z_lo, tolerance, max_refinements):
    """Shrink a sign-change bracket of hardy_z below `tolerance`."""
    for _ in range(max_refinements):
        if hi - lo <= tolerance:
            return 0.5 * (lo + hi)
        mid = 0.5 * (lo + hi)
        z_mid = hardy_z(mid)
        if z_mid == 0.0:
            return mid
        if (z_lo < 0.0) == (z_mid < 0.0):
            lo, z_lo = mid, z_mid
        else:
            hi = mid
    raise ConvergenceError(
        f"bisection not below {tolerance:g} after {max_refinements} refinements in [{lo}, {hi}]"
    )


def _grid_nodes(t_min, t_max, step):
    """t_min, then the global lattice k*step strictly inside, then t_max.

    Anchoring interior nodes at integer multiples of step (not at
    t_min + i*step) makes every interior bracket bit-identical across
    range partitions, so merged sub-scans reproduce the serial scan.
    """
    yield t_min
    k = max(0, math.floor(t_min / step) - 1)
    while True:
        x = k * step
        if x >= t_max:
            break
        if x > t_min:
            yield x
        k += 1
    yield t_max


def find_zeros(config: ScanConfig) -> ZeroCatalog:
    """Scan [t_min, t_max] for sign changes of Z and refine each to a zero."""
    if config.t_max > SCAN_MAX_HEIGHT:
        raise DomainError(f"scan limited to t <= {SCAN_MAX_HEIGHT:g}, got {config.t_max:g}")
    zeros = []
    nodes = _grid_nodes(config.t_min, config.t_max, config.grid_step)
    t_prev = next(nodes)
    z_prev = hardy_z(t_prev)
    for t in nodes:
        z = hardy_z(t)
        if z == 0.0:
            insort(zeros, t)
        elif z_prev == 0.0:
            pass  # node zero already recorded
        elif (z_prev < 0.0) != (z < 0.0):
            insort(
                zeros,
                _bisect_zero(t_prev, t, z_prev, config.refine_tolerance, config.max_refinements),
            )
        t_prev, z_prev = t, z
    return ZeroCatalog(heights=tuple(zeros), source="computed", max_height_scanned=config.t_max)


def exact_count(catalog: ZeroCatalog, e: float) -> int:
    """Number of catalog heights <= e.  Non-decreasing in e."""
    e = float(e)
    if e > catalog.max_height_scanned:
        raise CatalogCoverageError(
            f"count at {e:g} would be a lower bound: catalog covers up to "
            f"{catalog.max_height_scanned:g}"
        )
    return bisect_right(catalog.heights, e)


def s_function(catalog: ZeroCatalog, e: float) -> float:
    """Fluctuation S(e) = N(e) - (1 + theta(e)/pi) against the smooth count."""
    e = float(e)
    if e < S_FUNCTION_MIN:
        raise DomainError(f"s_function requires e >= {S_FUNCTION_MIN:g}")
    return exact_count(catalog, e) - 1.0 - theta_exact(e) / math.pi


# ---------------------------------------------------------------------------
# Persistence: plain text, one decimal height per line, '#' comments ignored.
# The writer records the scanned range in a comment so a reloaded catalog
# keeps its coverage; foreign tables without it fall back to the last height.


def save_catalog(catalog: ZeroCatalog, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write("# zero-height table, one height per line\n")
        fh.write(f"# source: {catalog.source}\n")
        fh.write(f"# {_COVERAGE_KEY}: {catalog.max_height_scanned!r}\n")
        for h in catalog.heights:
            fh.write(f"{h!r}\n")


def load_catalog(path) -> ZeroCatalog:
    heights = []
    coverage = None
    with open(path, "r", encoding="ascii") as fh:
        for line_number, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if body.startswith(_COVERAGE_KEY):
                    try:
                        coverage = float(body.split(":", 1)[1])
                    except (IndexError, ValueError):
                        raise CatalogFormatError(
                            f"bad {_COVERAGE_KEY} comment", line_number=line_number
                        ) from None
                continue
            try:
                h = float(line)
            except ValueError:
                raise CatalogFormatError(
                    f"line {line_number}: not a decimal height: {line!r}",
                    line_number=line_number,
                ) from None
            if heights and h <= heights[-1]:
                raise CatalogOrderError(
                    f"line {line_number}: height {h!r} not above previous {heights[-1]!r}",
                    line_number=line_number,
                )
            heights.append(h)
    if coverage is None:
        coverage = heights[-1] if heights else 0.0
    return ZeroCatalog(heights=tuple(heights), source="loaded", max_height_scanned=coverage)


def export_zeros_csv(catalog: ZeroCatalog, fh) -> None:
    """CSV export, header `n,t`, heights printed to 9 decimal places."""
    fh.write("n,t\n")
    for n, h in enumerate(catalog.heights, 1):
        fh.write(f"{n},{h:.9f}\n")


def merge_catalogs(parts) -> ZeroCatalog:
    """Sorted concatenation of disjoint sub-scans into one catalog."""
    parts = list(parts)
    if not parts:
        raise DomainError("nothing to merge")
    heights = []
    for part in sorted(parts, key=lambda c: c.heights[0] if c.heights else c.max_height_scanned):
        heights.extend(part.heights)
    source = "computed" if all(p.source == "computed" for p in parts) else "loaded"
    return ZeroCatalog(
        heights=tuple(heights),
        source=source,
        max_height_scanned=max(p.max_height_scanned for p in parts),
    )
