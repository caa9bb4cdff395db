"""Command-line front end: analyze / twist / parametric / census.

Every JSON report carries the schema version, the tool version, the exact
input coefficient list, the bounds and (for randomized commands) the seed,
so runs are machine-diffable and reproducible.  Exit codes: 0 success,
1 hypothesis failure, 2 parse error, 3 internal invariant violation.
"""
from __future__ import annotations

import csv
import functools
import io
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path

import click

from . import __version__, cache, census, galois_cert, kummer, plots, prime_sieve, twist_forge
from .census import DensityCurve, TupleCountReport
from .errors import FactorizationError, HypothesisError, InvariantError, PolyParseError
from .galois_cert import DEFAULT_CERT_BOUND
from .twist_forge import DEFAULT_SEARCH_BOUND, SHAPES
from .zpoly import (
    IntPoly,
    content_and_primitive,
    discriminant,
    is_separable,
    multiplicity_bound_ok,
    parse_polynomial,
    squarefree_decomposition,
)

DEFAULT_SEED = 1729

EXIT_HYPOTHESIS = 1
EXIT_PARSE = 2
EXIT_INVARIANT = 3

log = logging.getLogger(__name__)


def exit_codes(fn):
    """Translate package exceptions into the documented exit codes."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except PolyParseError as exc:
            click.echo(f"parse error: {exc}", err=True)
            sys.exit(EXIT_PARSE)
        except InvariantError as exc:
            click.echo(f"internal invariant violation: {exc}", err=True)
            sys.exit(EXIT_INVARIANT)
        except (HypothesisError, FactorizationError, ValueError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_HYPOTHESIS)

    return wrapper


# ---------------------------------------------------------------------------
# serialization helpers


def _frac(x: Fraction | int):
    x = Fraction(x)
    return int(x) if x.denominator == 1 else str(x)


def _pattern(pattern) -> list[int]:
    return list(pattern.degrees)


def _certificate(cert: twist_forge.TwistCertificate) -> dict:
    return {
        "d": cert.d,
        "witness_prime": cert.witness_prime,
        "valuation": cert.valuation,
        "n": cert.n,
    }


def _point(point: twist_forge.WPoint) -> dict:
    return {"y": point.y, "t": point.t, "z": point.z}


def _condition_h(poly: IntPoly, bound: int) -> dict:
    cert = galois_cert.certify_condition_H(poly, bound)
    if cert is None:
        return {"status": "inconclusive", "bound": bound}
    return {
        "status": "certified",
        "witness_prime": cert.witness_prime,
        "pattern": _pattern(cert.pattern),
        "radical_degree": cert.radical_degree,
        "bound": bound,
    }


def _envelope(command: str, poly: IntPoly | None = None, **payload) -> dict:
    report = {"schema": 1, "tool": "twistlab", "version": __version__, "command": command}
    if poly is not None:
        report["polynomial"] = list(poly.coeffs)
    report.update(payload)
    return report


def _emit(report: dict, out: Path | None) -> None:
    text = json.dumps(report, indent=2, default=str)
    if out is None:
        click.echo(text)
    else:
        Path(out).write_text(text + "\n")
        click.echo(f"wrote {out}")


def _curve_rows(curve: DensityCurve) -> list[list]:
    rows = [["H", "samples", "success", "failure", "inconclusive", "stderr"]]
    for pt in curve.points:
        rows.append(
            [
                pt.height,
                pt.samples,
                f"{pt.success_fraction:.6f}",
                f"{pt.failure_fraction:.6f}",
                f"{pt.inconclusive_fraction:.6f}",
                f"{pt.stderr:.6f}",
            ]
        )
    return rows


def _curve_json(curve: DensityCurve) -> dict:
    return {
        "kind": curve.kind,
        "degree": curve.degree,
        "n": curve.n,
        "samples_per_height": curve.samples_per_height,
        "seed": curve.seed,
        "points": [
            {
                "H": pt.height,
                "samples": pt.samples,
                "rejected": pt.rejected,
                "success": pt.success,
                "failure": pt.failure,
                "inconclusive": pt.inconclusive,
                "degree_dropped": pt.degree_dropped,
                "success_fraction": pt.success_fraction,
                "failure_fraction": pt.failure_fraction,
                "inconclusive_fraction": pt.inconclusive_fraction,
                "stderr": pt.stderr,
                "family_size_estimate": curve.family_size_estimate(pt),
                "size_normalization": curve.size_normalization(pt.height),
            }
            for pt in curve.points
        ],
    }


def _emit_curve(curve: DensityCurve, fmt: str, out: Path | None, envelope: dict) -> None:
    """Write a density curve as CSV or JSON; a figure is rendered next to
    any file output."""
    if fmt == "csv":
        buf = io.StringIO()
        csv.writer(buf).writerows(_curve_rows(curve))
        text = buf.getvalue()
        if out is None:
            click.echo(text, nl=False)
        else:
            Path(out).write_text(text)
            click.echo(f"wrote {out}")
    else:
        envelope["curve"] = _curve_json(curve)
        _emit(envelope, out)
    if out is not None:
        figure = Path(out).with_suffix(".png")
        plots.save_density_curve(curve, figure)
        click.echo(f"wrote {figure}")


# ---------------------------------------------------------------------------
# commands


@click.group()
@click.version_option(__version__, prog_name="twistlab")
def main() -> None:
    """Twists of superelliptic curves: certificates, searches, censuses."""
    logging.basicConfig(level=logging.WARNING, format="%(name)s: %(message)s")


@main.command()
@click.option("-p", "--polynomial", "poly_text", required=True, help="Polynomial in T, or a coefficient list.")
@click.option("-n", "n", type=int, default=2, show_default=True, help="Radical exponent n.")
@click.option("--prime-bound", type=int, default=DEFAULT_CERT_BOUND, show_default=True)
@click.option("--out", type=click.Path(path_type=Path), default=None)
@exit_codes
def analyze(poly_text: str, n: int, prime_bound: int, out: Path | None) -> None:
    """Structural summary: degree, discriminant, squarefree parts, rational
    roots, and a fixed-point-free certificate when one exists."""
    poly = parse_polynomial(poly_text)
    if poly.degree < 1:
        raise HypothesisError("nonconstant", "the polynomial must be nonconstant")
    content, _ = content_and_primitive(poly)
    decomp = squarefree_decomposition(poly)
    report = _envelope(
        "analyze",
        poly,
        n=n,
        prime_bound=prime_bound,
        degree=poly.degree,
        height=max(abs(c) for c in poly.coeffs),
        content=content,
        discriminant=discriminant(poly),
        separable=is_separable(poly),
        squarefree_parts=[
            {"factor": list(part.coeffs), "multiplicity": m} for part, m in decomp.parts
        ],
        multiplicity_ok=multiplicity_bound_ok(poly, n) if n >= 2 else None,
        rational_roots=[_frac(r) for r in galois_cert.rational_roots(poly)],
        condition_h=_condition_h(poly, prime_bound),
    )
    _emit(report, out)


@main.command()
@click.option("-p", "--polynomial", "poly_text", required=True)
@click.option("-n", "n", type=int, default=2, show_default=True)
@click.option("--count", type=int, default=3, show_default=True, help="Twist parameters to generate.")
@click.option("-d", "explicit_ds", type=int, multiple=True, help="Explicit twist parameter (repeatable).")
@click.option("--shape", type=click.Choice(SHAPES), default=twist_forge.SHAPE_PRIME, show_default=True)
@click.option("--prime-bound", type=int, default=DEFAULT_CERT_BOUND, show_default=True)
@click.option("--height-bound", type=int, default=DEFAULT_SEARCH_BOUND, show_default=True)
@click.option("--cache-dir", type=click.Path(path_type=Path), default=None, help="Override the classification cache directory.")
@click.option("--no-cache", is_flag=True, help="Skip the on-disk classification cache.")
@click.option("--out", type=click.Path(path_type=Path), default=None)
@exit_codes
def twist(
    poly_text: str,
    n: int,
    count: int,
    explicit_ds: tuple[int, ...],
    shape: str,
    prime_bound: int,
    height_bound: int,
    cache_dir: Path | None,
    no_cache: bool,
    out: Path | None,
) -> None:
    """Emit no-rational-point certificates for twists, cross-checked by an
    exhaustive bounded search."""
    poly = parse_polynomial(poly_text)
    if poly.degree < 1:
        raise HypothesisError("nonconstant", "the polynomial must be nonconstant")
    roots = galois_cert.rational_roots(poly)
    if roots:
        raise HypothesisError(
            "no-rational-root",
            f"polynomial has rational root {_frac(roots[0])}; every twist has the "
            "obvious point there, so no emptiness certificate can exist",
        )
    if poly.degree % n != 0:
        raise HypothesisError("hyp-1", f"{n} does not divide the degree {poly.degree}")
    if not multiplicity_bound_ok(poly, n):
        raise HypothesisError("hyp-2", f"a root has multiplicity >= {n}")

    s = _certified_set(poly, prime_bound, cache_dir, no_cache)
    if explicit_ds:
        ds = list(explicit_ds)
    else:
        if not s.primes:
            raise HypothesisError(
                "empty-S", f"no certified primes up to {prime_bound}; cannot generate twists"
            )
        ds = twist_forge.make_twists(s, n, count, shape)

    searches = twist_forge.search_points_many(poly, n, ds, height_bound)
    results = []
    for d in ds:
        cert = twist_forge.certify_no_points(poly, n, d, s)
        report = searches[d]
        if cert is not None and report.points:
            raise InvariantError(
                f"certified twist d={d} has a search point {report.points[0]}"
            )
        status = (
            "certified-empty"
            if cert is not None
            else ("points-found" if report.points else "unknown")
        )
        results.append(
            {
                "d": d,
                "status": status,
                "certificate": _certificate(cert) if cert else None,
                "points": [_point(pt) for pt in report.points],
                "search_height_bound": report.height_bound,
                "search_exhaustive": report.exhaustive,
            }
        )
    report = _envelope(
        "twist",
        poly,
        n=n,
        prime_bound=prime_bound,
        height_bound=height_bound,
        condition_h=_condition_h(poly, prime_bound),
        certified_set={
            "bound": s.bound,
            "size": len(s.primes),
            "first_primes": list(s.primes[:10]),
            "density": float(prime_sieve.density_of_S(s)),
        },
        twists=results,
    )
    _emit(report, out)


def _certified_set(poly, prime_bound, cache_dir, no_cache):
    if no_cache:
        return prime_sieve.build_S(poly, prime_bound)
    classes = cache.classify_range(poly, prime_bound, cache_dir)
    return prime_sieve.build_S_from_classifications(poly, prime_bound, classes)


@main.command()
@click.option("-p", "--polynomial", "poly_text", required=True)
@click.option("-n", "n", type=int, default=2, show_default=True)
@click.option("--count", type=int, default=2, show_default=True, help="Witnesses to emit.")
@click.option("--prime-bound", type=int, default=DEFAULT_CERT_BOUND, show_default=True)
@click.option("--cache-dir", type=click.Path(path_type=Path), default=None)
@click.option("--no-cache", is_flag=True)
@click.option("--out", type=click.Path(path_type=Path), default=None)
@exit_codes
def parametric(
    poly_text: str,
    n: int,
    count: int,
    prime_bound: int,
    cache_dir: Path | None,
    no_cache: bool,
    out: Path | None,
) -> None:
    """Witnesses that radical extensions at certified primes are never
    specializations of the function-field extension."""
    poly = parse_polynomial(poly_text)
    if poly.degree < 1:
        raise HypothesisError("nonconstant", "the polynomial must be nonconstant")
    checklist: dict[str, dict] = {}
    if poly.degree % n != 0:
        raise HypothesisError("hyp-1", f"{n} does not divide the degree {poly.degree}")
    checklist["hyp-1"] = {"ok": True, "detail": f"{n} divides {poly.degree}"}
    if not multiplicity_bound_ok(poly, n):
        raise HypothesisError("hyp-2", f"a root has multiplicity >= {n}")
    checklist["hyp-2"] = {"ok": True, "detail": f"all multiplicities <= {n - 1}"}
    red = kummer.reduce_kummer(poly, n)
    field_theoretic = red.n_prime == 2
    checklist["hyp-3"] = {
        "ok": field_theoretic,
        "detail": (
            f"reduced exponent n' = {red.n_prime}"
            + ("" if field_theoretic else "; the rationals lack higher roots of unity")
        ),
    }
    cond_h = _condition_h(poly, prime_bound)
    if cond_h["status"] != "certified":
        raise HypothesisError("hyp-4", f"no fixed-point-free certificate below {prime_bound}")
    checklist["hyp-4"] = {"ok": True, "detail": f"witness prime {cond_h['witness_prime']}"}

    s = _certified_set(red.p0, prime_bound, cache_dir, no_cache)
    witnesses = kummer.nonparametric_witnesses(poly, n, count, s, cert_bound=prime_bound)
    witness_reports = []
    for w in witnesses:
        chain = []
        for cert in w.chain:
            failures = twist_forge.verify_certificate(cert)
            if failures:
                raise InvariantError(f"witness certificate failed re-verification: {failures}")
            chain.append({**_certificate(cert), "reverified": True})
        witness_reports.append(
            {
                "d": w.d,
                "subgroup_order": w.subgroup_order,
                "field_theoretic": w.field_theoretic,
                "chain": chain,
            }
        )
    report = _envelope(
        "parametric",
        poly,
        n=n,
        prime_bound=prime_bound,
        reduction={
            "e": red.e,
            "n_prime": red.n_prime,
            "p0": list(red.p0.coeffs),
            "reduced_multiplicities": list(red.reduced_multiplicities),
        },
        hypothesis_checklist=checklist,
        condition_h=cond_h,
        parametricity_claim=(
            "not Z/n'Z-parametric"
            if field_theoretic
            else "curve-level certificates only; parametricity claim suppressed"
        ),
        witnesses=witness_reports,
    )
    _emit(report, out)


@main.group()
def census_group() -> None:
    """Counting identities and sampled density experiments."""


main.add_command(census_group, name="census")


@census_group.command(name="tuples")
@click.option("-n", "n", type=int, required=True)
@click.option("-H", "height", type=int, default=None)
@click.option("--heights", default=None, help="Comma-separated sweep of heights.")
@click.option("--out", type=click.Path(path_type=Path), default=None)
@exit_codes
def census_tuples(n: int, height: int | None, heights: str | None, out: Path | None) -> None:
    """Exact coprime / squarefree-gcd lattice counts against their main terms."""
    if (height is None) == (heights is None):
        raise ValueError("give exactly one of -H or --heights")
    hs = [height] if height is not None else [int(h) for h in heights.split(",")]
    entries = []
    for h in hs:
        entry = {"H": h, "coprime": _tuple_json(census.count_coprime_tuples(n, h))}
        if n >= 2:
            entry["squarefree_gcd"] = _tuple_json(census.count_squarefree_gcd_tuples(n, h))
        entries.append(entry)
    report = _envelope("census tuples", None, n=n, heights=hs, counts=entries)
    _emit(report, out)
    if out is not None and len(hs) > 1:
        figure = Path(out).with_suffix(".png")
        plots.save_tuple_ratios([census.count_coprime_tuples(n, h) for h in hs], figure)
        click.echo(f"wrote {figure}")


def _tuple_json(rep: TupleCountReport) -> dict:
    return {
        "n": rep.n,
        "H": rep.height,
        "exact": rep.exact_count,
        "asymptotic": rep.asymptotic_value,
        "ratio": rep.ratio,
    }


@census_group.command(name="density")
@click.option("-N", "degree", type=int, required=True)
@click.option("-n", "n", type=int, default=2, show_default=True)
@click.option("--heights", required=True, help="Comma-separated heights.")
@click.option("--samples", type=int, default=2000, show_default=True)
@click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True)
@click.option("--cert-bound", type=int, default=DEFAULT_CERT_BOUND, show_default=True)
@click.option("--workers", type=int, default=1, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json", show_default=True)
@click.option("--out", type=click.Path(path_type=Path), default=None)
@exit_codes
def census_density(
    degree: int,
    n: int,
    heights: str,
    samples: int,
    seed: int,
    cert_bound: int,
    workers: int,
    fmt: str,
    out: Path | None,
) -> None:
    """Sampled certificate / rational-root fractions across heights."""
    hs = [int(h) for h in heights.split(",")]
    curve = census.condition_star_density(
        degree, n, hs, samples, seed, cert_bound=cert_bound, workers=workers
    )
    envelope = _envelope(
        "census density", None, N=degree, n=n, heights=hs, samples=samples, seed=seed,
        cert_bound=cert_bound,
    )
    _emit_curve(curve, fmt, out, envelope)


@census_group.command(name="quadratic")
@click.option("-N", "degree", type=int, required=True)
@click.option("-H", "height", type=int, default=None)
@click.option("--heights", default=None)
@click.option("--samples", type=int, default=1000, show_default=True)
@click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True)
@click.option("--cert-bound", type=int, default=DEFAULT_CERT_BOUND, show_default=True)
@click.option("--workers", type=int, default=1, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json", show_default=True)
@click.option("--out", type=click.Path(path_type=Path), default=None)
@exit_codes
def census_quadratic(
    degree: int,
    height: int | None,
    heights: str | None,
    samples: int,
    seed: int,
    cert_bound: int,
    workers: int,
    fmt: str,
    out: Path | None,
) -> None:
    """Census of quadratic function-field extensions by branch-point count."""
    if (height is None) == (heights is None):
        raise ValueError("give exactly one of -H or --heights")
    hs = [height] if height is not None else [int(h) for h in heights.split(",")]
    curve = census.quadratic_extension_census(
        degree, hs, samples, seed, cert_bound=cert_bound, workers=workers
    )
    envelope = _envelope(
        "census quadratic", None, N=degree, heights=hs, samples=samples, seed=seed,
        cert_bound=cert_bound,
    )
    _emit_curve(curve, fmt, out, envelope)


if __name__ == "__main__":
    main()
