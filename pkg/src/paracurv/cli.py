"""Command-line verifier.

Exit codes: 0 all selected checks pass, 1 at least one check fails,
2 invalid input (bad manifest, expression, point or parameter).
"""

from __future__ import annotations

import sys
import time

import click
import numpy as np

from . import __version__
from .analysis import pc_bochner, phsc, xi_sectional
from .connection import get_frame
from .errors import ParacurvError
from .manifest import (
    assemble_report,
    build_structure,
    dumps_report,
    load_manifest,
    run_checks,
    transform_manifest,
    write_report,
)
from .geometry import BUILTINS
from .sampling import Sampler


def _fail(message):
    click.echo(f"error: {message}", err=True)
    sys.exit(2)


@click.group()
@click.version_option(version=__version__, prog_name="paracurv")
def main():
    """Verify paracontact metric structures against their defining identities."""


@main.command()
@click.argument("manifest_path", type=click.Path())
@click.option("--out", "out_path", type=click.Path(), default=None,
              help="Write the report here instead of stdout.")
@click.option("--tol", "tol", type=float, default=None,
              help="Override the manifest tolerance.")
@click.option("--seed", "seed", type=int, default=None,
              help="Override the manifest sampling seed.")
def check(manifest_path, out_path, tol, seed):
    """Run the manifest's checks and write a report."""
    start = time.monotonic()
    try:
        if tol is not None and not tol > 0:
            _fail("--tol must be > 0")
        if seed is not None and not 0 <= seed < 2 ** 64:
            _fail("--seed must be an unsigned 64-bit integer")
        manifest, digest = load_manifest(manifest_path)
        structure = build_structure(manifest)
        report, verdicts, meta = run_checks(
            structure, manifest, seed=seed, tolerance=tol
        )
    except ParacurvError as e:
        _fail(e)
    document = assemble_report(
        structure, manifest, digest, report, verdicts, meta,
        wall_time_s=time.monotonic() - start,
    )
    if out_path is not None:
        write_report(document, out_path)
    else:
        click.echo(dumps_report(document), nl=False)
    for result in report.results:
        status = "PASS" if result.passed else "FAIL"
        click.echo(
            f"{status} {result.name}: residual {result.residual:.3e} "
            f"(threshold {result.threshold:.1e})",
            err=True,
        )
    sys.exit(0 if report.passed else 1)


@main.command()
@click.argument("manifest_path", type=click.Path())
@click.option("--point", "point_text", required=True,
              help='Chart point as "c1,...,cd".')
def curvature(manifest_path, point_text):
    """Print a pointwise curvature summary."""
    try:
        manifest, _ = load_manifest(manifest_path)
        structure = build_structure(manifest)
        try:
            point = np.array(
                [float(c) for c in point_text.split(",")], dtype=float
            )
        except ValueError:
            _fail(f"--point must be {structure.dim} comma-separated numbers")
        if point.shape != (structure.dim,):
            _fail(
                f"--point must have {structure.dim} components, "
                f"got {point.shape[0]}"
            )
        if not structure.domain.contains(point):
            _fail(f"point outside the chart domain of {structure.name}")
        frame = get_frame(structure, point, order=2)
        sampler = Sampler(structure, seed=0)
        u, _ = sampler.horizontal_unit(point)
        v = sampler.section_vector(point)
        bochner = pc_bochner(structure, point)
        lines = [
            f"structure: {structure.name}",
            f"point: {', '.join(format(c, 'g') for c in point)}",
            f"|g|_inf: {np.max(np.abs(frame.g.value)):.12g}",
            f"|Gamma|_inf: {np.max(np.abs(frame.gamma.value)):.12g}",
            f"|R|_inf: {np.max(np.abs(frame.riem_down.value)):.12g}",
            f"|r|_inf: {np.max(np.abs(frame.ricci.value)):.12g}",
            f"scalar_s: {float(frame.scalar.value):.12g}",
            f"xi_sectional: {xi_sectional(structure, point, u):.12g}",
            f"phsc: {phsc(structure, point, v):.12g}",
            f"|B|_inf: {np.max(np.abs(bochner.tensor.components)):.12g}",
            f"kappa_B: {bochner.kappa_B:.12g}",
        ]
    except ParacurvError as e:
        _fail(e)
    click.echo("\n".join(lines))


@main.command()
@click.argument("manifest_path", type=click.Path())
@click.option("--alpha", type=float, required=True,
              help="D-homothety parameter (> 0).")
@click.option("--out", "out_path", type=click.Path(), required=True,
              help="Where to write the transformed manifest.")
def transform(manifest_path, out_path, alpha):
    """Emit a manifest for the D-homothety of the input structure."""
    try:
        manifest, _ = load_manifest(manifest_path)
        transformed = transform_manifest(manifest, alpha)
    except ParacurvError as e:
        _fail(e)
    with open(out_path, "w", encoding="utf-8") as fh:
        fh.write(dumps_report(transformed))
    click.echo(f"wrote {out_path}")


@main.command()
def builtins():
    """List the builtin manifolds."""
    for name in sorted(BUILTINS):
        click.echo(name)


if __name__ == "__main__":
    main()
