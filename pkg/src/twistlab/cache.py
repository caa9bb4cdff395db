"""Persistent cache of prime classifications, one file per polynomial.

Files are keyed by a SHA-256 digest of the canonical coefficient list, so
polynomials with distinct coefficient sequences never share an entry.  Each
line stores "p verdict [witness-or-reason]"; corrupt lines are logged and
the affected primes recomputed, never trusted.
"""
from __future__ import annotations

import hashlib
import logging
import os
from pathlib import Path

from . import prime_sieve
from .primes import primes_upto
from .prime_sieve import PrimeClass
from .zpoly import IntPoly, format_coeffs

log = logging.getLogger(__name__)

ENV_CACHE_DIR = "TWISTLAB_CACHE_DIR"

_VERDICT_TOKENS = {
    prime_sieve.DIVISOR: "divisor",
    prime_sieve.NON_DIVISOR: "non-divisor",
    prime_sieve.EXCLUDED: "excluded",
}
_TOKEN_VERDICTS = {v: k for k, v in _VERDICT_TOKENS.items()}
_REASONS = {prime_sieve.REASON_LEADING, prime_sieve.REASON_A0, prime_sieve.REASON_CONTENT}


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_CACHE_DIR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "twistlab"


def digest(poly: IntPoly) -> str:
    return hashlib.sha256(format_coeffs(poly).encode()).hexdigest()


def cache_path(poly: IntPoly, cache_dir: Path | None = None) -> Path:
    base = Path(cache_dir) if cache_dir is not None else default_cache_dir()
    return base / f"{digest(poly)}.cls"


def _format_line(cls: PrimeClass) -> str:
    token = _VERDICT_TOKENS[cls.verdict]
    if cls.verdict == prime_sieve.DIVISOR:
        return f"{cls.p} {token} {cls.witness}"
    if cls.verdict == prime_sieve.EXCLUDED:
        return f"{cls.p} {token} {cls.reason}"
    return f"{cls.p} {token}"


def _parse_line(line: str) -> PrimeClass | None:
    fields = line.split()
    if len(fields) < 2 or fields[1] not in _TOKEN_VERDICTS:
        return None
    try:
        p = int(fields[0])
    except ValueError:
        return None
    verdict = _TOKEN_VERDICTS[fields[1]]
    if verdict == prime_sieve.DIVISOR:
        if len(fields) != 3:
            return None
        try:
            witness = int(fields[2])
        except ValueError:
            return None
        if not 0 <= witness < p:
            return None
        return PrimeClass(p, verdict, witness=witness)
    if verdict == prime_sieve.EXCLUDED:
        if len(fields) != 3 or fields[2] not in _REASONS:
            return None
        return PrimeClass(p, verdict, reason=fields[2])
    return PrimeClass(p, verdict) if len(fields) == 2 else None


def read_classifications(poly: IntPoly, cache_dir: Path | None = None) -> dict[int, PrimeClass]:
    path = cache_path(poly, cache_dir)
    if not path.exists():
        return {}
    out: dict[int, PrimeClass] = {}
    header_ok = False
    for lineno, line in enumerate(path.read_text().splitlines()):
        if lineno == 0:
            header_ok = line == f"# twistlab-cache 1 {format_coeffs(poly)}"
            if not header_ok:
                log.warning("cache %s: unexpected header, ignoring file", path.name)
                return {}
            continue
        if not line.strip():
            continue
        cls = _parse_line(line)
        if cls is None:
            log.warning("cache %s: corrupt line %d (%r), will recompute", path.name, lineno + 1, line)
            continue
        out[cls.p] = cls
    return out


def write_classifications(
    poly: IntPoly, classes: dict[int, PrimeClass], cache_dir: Path | None = None
) -> Path:
    path = cache_path(poly, cache_dir)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [f"# twistlab-cache 1 {format_coeffs(poly)}"]
    lines.extend(_format_line(classes[p]) for p in sorted(classes))
    path.write_text("\n".join(lines) + "\n")
    return path


def classify_range(
    poly: IntPoly, bound: int, cache_dir: Path | None = None
) -> dict[int, PrimeClass]:
    """Classifications for every prime up to the bound, reusing and
    extending the on-disk cache; the merged result is written back once.
    """
    known = read_classifications(poly, cache_dir)
    missing = [p for p in primes_upto(bound) if p not in known]
    for p in missing:
        known[p] = prime_sieve.classify(poly, p)
    if missing:
        write_classifications(poly, known, cache_dir)
    return {p: known[p] for p in primes_upto(bound)}
