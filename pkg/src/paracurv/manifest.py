"""Manifest ingestion, check orchestration and report serialization.

A manifest is a JSON object selecting a manifold (builtin, custom
expression tables, or an embedded immersion), an optional D-homothety,
sampling parameters and a list of checks.  Reports are serialized with
sorted keys and 17-significant-digit floats so that a fixed manifest,
seed and version produce byte-identical output.
"""

from __future__ import annotations

import hashlib
import json
import os
from concurrent.futures import ThreadPoolExecutor
from copy import deepcopy

import numpy as np

from . import __version__
from .analysis import (
    bochner_pairing,
    bochner_symmetries,
    check_axioms,
    classify,
    eta_einstein_fit,
    identity_suite,
    pc_bochner,
    phsc,
    space_form_fit,
    wpc,
    xi_sectional,
)
from .connection import get_frame, parallel_check
from .errors import ManifestError, ParacurvError
from .exprlang import ScalarField, parse
from .geometry import (
    BUILTINS,
    AmbientParaKaehler,
    CharteredStructure,
    Domain,
    Embedding,
    ExprTableComponents,
    InducedComponents,
    d_homothetic,
)
from .report import CheckReport, nres
from .sampling import Sampler

MANIFEST_SCHEMA = "paracurv-manifest/1"
REPORT_SCHEMA = "paracurv-report/1"
DEFAULT_TOLERANCE = 1e-8
DEFAULT_COUNT = 200
ALL_CHECKS = (
    "axioms",
    "classification",
    "xi_sectional",
    "phsc",
    "space_form",
    "eta_einstein",
    "bochner",
    "wpc",
    "identities",
    "parallel",
)


def thread_count():
    """Worker cap from PARACURV_THREADS (>= 1; default 1)."""
    raw = os.environ.get("PARACURV_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


# -- loading and validation ---------------------------------------------------


def load_manifest(path):
    """Read, digest and validate a manifest file."""
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as e:
        raise ManifestError(f"cannot read manifest: {e}", field="path") from None
    digest = hashlib.sha256(raw).hexdigest()
    try:
        manifest = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise ManifestError(f"manifest is not valid JSON: {e}") from None
    validate_manifest(manifest)
    return manifest, digest


def _require(cond, message, field):
    if not cond:
        raise ManifestError(message, field=field)


def _expr_table(rows, dim, field):
    _require(isinstance(rows, list) and len(rows) == dim,
             f"{field} must have {dim} rows", field)
    for i, row in enumerate(rows):
        _require(isinstance(row, list) and len(row) == dim,
                 f"{field} row {i} must have {dim} entries", field)
        for j, entry in enumerate(row):
            _require(isinstance(entry, str),
                     f"{field}[{i}][{j}] must be an expression string", field)


def _expr_vector(entries, dim, field):
    _require(isinstance(entries, list) and len(entries) == dim,
             f"{field} must have {dim} entries", field)
    for i, entry in enumerate(entries):
        _require(isinstance(entry, str),
                 f"{field}[{i}] must be an expression string", field)


def _validate_box(box, dim, field):
    if box is None:
        return
    _require(isinstance(box, list) and len(box) == dim,
             f"{field} must list one [lo, hi] interval per coordinate", field)
    for i, interval in enumerate(box):
        ok = (
            isinstance(interval, list)
            and len(interval) == 2
            and all(isinstance(v, (int, float)) for v in interval)
            and interval[0] < interval[1]
        )
        _require(ok, f"{field}[{i}] must be [lo, hi] with lo < hi", field)


def validate_manifest(manifest):
    _require(isinstance(manifest, dict), "manifest must be a JSON object", None)
    _require(manifest.get("schema") == MANIFEST_SCHEMA,
             f"schema must be {MANIFEST_SCHEMA!r}", "schema")
    manifold = manifest.get("manifold")
    _require(isinstance(manifold, dict), "manifold must be an object", "manifold")
    kind = manifold.get("kind")
    _require(kind in ("builtin", "custom", "embedded"),
             "manifold.kind must be builtin, custom or embedded", "manifold.kind")

    if kind == "builtin":
        _require(manifold.get("name") in BUILTINS,
                 f"manifold.name must be one of {sorted(BUILTINS)}", "manifold.name")
        n = manifold.get("n")
        _require(isinstance(n, int) and n >= 1,
                 "manifold.n must be an integer >= 1", "manifold.n")
    elif kind == "custom":
        coords = manifold.get("coords")
        _require(isinstance(coords, list) and len(coords) >= 3
                 and len(coords) % 2 == 1,
                 "manifold.coords must have odd length >= 3", "manifold.coords")
        dim = len(coords)
        _expr_table(manifold.get("g"), dim, "manifold.g")
        _expr_table(manifold.get("phi"), dim, "manifold.phi")
        _expr_vector(manifold.get("xi"), dim, "manifold.xi")
        _expr_vector(manifold.get("eta"), dim, "manifold.eta")
        _validate_box(manifold.get("box"), dim, "manifold.box")
    else:
        n = manifold.get("n")
        _require(isinstance(n, int) and n >= 1,
                 "manifold.n must be an integer >= 1", "manifold.n")
        coords = manifold.get("coords")
        dim = 2 * n + 1
        _require(isinstance(coords, list) and len(coords) == dim,
                 f"manifold.coords must have {dim} names", "manifold.coords")
        _expr_vector(manifold.get("immersion"), 2 * n + 2, "manifold.immersion")
        _validate_box(manifold.get("box"), dim, "manifold.box")

    transform = manifest.get("transform")
    if transform is not None:
        _require(isinstance(transform, dict), "transform must be an object",
                 "transform")
        alpha = transform.get("alpha")
        _require(isinstance(alpha, (int, float)) and alpha > 0,
                 "transform.alpha must be > 0", "transform.alpha")

    sampling = manifest.get("sampling", {})
    _require(isinstance(sampling, dict), "sampling must be an object", "sampling")
    seed = sampling.get("seed", 0)
    _require(isinstance(seed, int) and 0 <= seed < 2 ** 64,
             "sampling.seed must be an unsigned 64-bit integer", "sampling.seed")
    count = sampling.get("count", DEFAULT_COUNT)
    _require(isinstance(count, int) and count >= 1,
             "sampling.count must be >= 1", "sampling.count")

    tolerance = manifest.get("tolerance", DEFAULT_TOLERANCE)
    _require(isinstance(tolerance, (int, float)) and tolerance > 0,
             "tolerance must be > 0", "tolerance")

    checks = manifest.get("checks", "all")
    if checks != "all":
        _require(isinstance(checks, list) and checks, "checks must be 'all' or a "
                 "non-empty list of check names", "checks")
        for name in checks:
            _require(name in ALL_CHECKS,
                     f"unknown check {name!r}; known: {', '.join(ALL_CHECKS)}",
                     "checks")


# -- structure construction -----------------------------------------------------


def build_structure(manifest):
    """Instantiate the manifold (with its optional D-homothety)."""
    manifold = manifest["manifold"]
    kind = manifold["kind"]
    if kind == "builtin":
        structure = BUILTINS[manifold["name"]](manifold["n"])
    elif kind == "custom":
        structure = _build_custom(manifold)
    else:
        structure = _build_embedded(manifold)
    transform = manifest.get("transform")
    if transform is not None:
        structure = d_homothetic(structure, float(transform["alpha"]))
    return structure


def _build_custom(manifold):
    coords = manifold["coords"]
    dim = len(coords)

    def field(text, name):
        try:
            return ScalarField.from_expr(text, coords)
        except ParacurvError as e:
            raise ManifestError(f"{name}: {e}", field=name) from None

    g = [[field(manifold["g"][i][j], f"manifold.g[{i}][{j}]")
          for j in range(dim)] for i in range(dim)]
    phi = [[field(manifold["phi"][i][j], f"manifold.phi[{i}][{j}]")
            for j in range(dim)] for i in range(dim)]
    xi = [field(manifold["xi"][i], f"manifold.xi[{i}]") for i in range(dim)]
    eta = [field(manifold["eta"][i], f"manifold.eta[{i}]") for i in range(dim)]
    box = manifold.get("box")
    domain = Domain(box) if box is not None else Domain.cube(dim)
    return CharteredStructure(
        (dim - 1) // 2,
        coords,
        ExprTableComponents(g, phi, xi, eta),
        domain,
        name=manifold.get("name", "custom"),
        probe=manifold.get("probe"),
    )


def _build_embedded(manifold):
    n = manifold["n"]
    coords = manifold["coords"]

    def ast(text, name):
        try:
            return parse(text, coords)
        except ParacurvError as e:
            raise ManifestError(f"{name}: {e}", field=name) from None

    immersion = [ast(t, f"manifold.immersion[{i}]")
                 for i, t in enumerate(manifold["immersion"])]
    normal_texts = manifold.get("normal", manifold["immersion"])
    normal = [ast(t, f"manifold.normal[{i}]")
              for i, t in enumerate(normal_texts)]
    embedding = Embedding(AmbientParaKaehler(n + 1), coords, immersion, normal)
    dim = 2 * n + 1
    box = manifold.get("box")
    domain = Domain(box) if box is not None else Domain.cube(dim)
    return CharteredStructure(
        n,
        coords,
        InducedComponents(embedding),
        domain,
        name=manifold.get("name", "embedded"),
        probe=manifold.get("probe"),
    )


# -- check execution -----------------------------------------------------------


def _warm_frames(structure, points, order):
    workers = thread_count()
    if workers <= 1 or len(points) <= 1:
        for p in points:
            get_frame(structure, p, order)
        return
    with ThreadPoolExecutor(max_workers=workers) as pool:
        list(pool.map(lambda p: get_frame(structure, p, order), points))


def run_checks(structure, manifest, seed=None, tolerance=None):
    """Run the selected checks; returns (CheckReport, verdicts, meta)."""
    sampling = manifest.get("sampling", {})
    if seed is None:
        seed = sampling.get("seed", 0)
    if tolerance is None:
        tolerance = float(manifest.get("tolerance", DEFAULT_TOLERANCE))
    count = sampling.get("count", DEFAULT_COUNT)
    box = sampling.get("box")
    selected = manifest.get("checks", "all")
    if selected == "all":
        selected = ALL_CHECKS

    sampler = Sampler(structure, seed, box)
    points = sampler.points(count)
    curvature_points = points[: min(10, count)]
    deep_points = points[: min(5, count)]
    _warm_frames(structure, curvature_points, order=2)

    report = CheckReport()
    verdicts = {}
    fit = None

    def space_fit():
        nonlocal fit
        if fit is None:
            fit = space_form_fit(structure, curvature_points)
        return fit

    for name in ALL_CHECKS:
        if name not in selected:
            continue
        if name == "axioms":
            report.extend(check_axioms(structure, points, tolerance))
        elif name == "classification":
            sub = classify(
                structure,
                points[: min(25, count)],
                tolerance,
                include_axioms="axioms" not in selected,
            )
            report.extend(sub.report)
            verdicts.update(sub.verdicts)
        elif name == "xi_sectional":
            worst = 0.0
            for i in range(50):
                p = curvature_points[i % len(curvature_points)]
                u, _ = sampler.horizontal_unit(p)
                worst = max(worst, nres(xi_sectional(structure, p, u), -1.0))
            report.add("xi_sectional", worst, tolerance)
        elif name == "phsc":
            k_hat = space_fit().k_hat
            worst = 0.0
            for i in range(50):
                p = curvature_points[i % len(curvature_points)]
                v = sampler.section_vector(p)
                worst = max(worst, nres(phsc(structure, p, v), k_hat))
            report.add("phsc_constancy", worst, tolerance)
            report.constants["k_hat"] = k_hat
        elif name == "space_form":
            f = space_fit()
            report.add("space_form_f20", f.residual_max, tolerance)
            report.add("space_form_f12", f.f12_residual, tolerance)
            report.add("space_form_f13", f.f13_residual, tolerance)
            report.add("space_form_f36", f.f36_residual, tolerance)
            report.constants["k_hat"] = f.k_hat
        elif name == "eta_einstein":
            f = eta_einstein_fit(structure, curvature_points)
            report.add("eta_einstein_fit", f.residual_max, tolerance)
            report.add("eta_einstein_sum", f.sum_residual, 1e-10)
            report.constants["a"] = f.a
            report.constants["b"] = f.b
        elif name == "bochner":
            worst = 0.0
            for p in curvature_points:
                data = pc_bochner(structure, p)
                worst = max(worst, nres(data.tensor.components))
            report.add("bochner_vanishing", worst, tolerance)
            report.extend(bochner_symmetries(structure, curvature_points))
            report.constants["kappa_B"] = pc_bochner(
                structure, curvature_points[0]
            ).kappa_B
        elif name == "wpc":
            worst = 0.0
            for i in range(100):
                p = deep_points[i % len(deep_points)]
                quad = [sampler.horizontal_unit(p)[0] for _ in range(4)]
                worst = max(
                    worst,
                    nres(
                        bochner_pairing(structure, p, *quad),
                        wpc(structure, p, *quad),
                    ),
                )
            report.add("wpc_equals_bochner", worst, tolerance)
        elif name == "identities":
            report.extend(
                identity_suite(
                    structure,
                    deep_points,
                    sampler=sampler,
                    sections=50,
                    threshold=tolerance,
                )
            )
        elif name == "parallel":
            report.extend(parallel_check(structure, deep_points, tolerance))

    meta = {"seed": seed, "tolerance": tolerance, "point_count": count}
    return report, verdicts, meta


def assemble_report(structure, manifest, digest, report, verdicts, meta,
                    wall_time_s):
    return {
        "schema": REPORT_SCHEMA,
        "version": __version__,
        "manifest_digest": digest,
        "structure": structure.name,
        "seed": meta["seed"],
        "tolerance": meta["tolerance"],
        "point_count": meta["point_count"],
        "checks": [r.as_dict() for r in report.results],
        "constants": report.constants,
        "verdicts": verdicts,
        "pass": report.passed,
        "wall_time_s": wall_time_s,
    }


# -- D-homothety on manifests ------------------------------------------------------


def transform_manifest(manifest, alpha):
    """Manifest whose structure is the D-homothety of the input's.

    Builtin and embedded manifolds record the (composed) alpha; custom
    expression tables are rewritten textually.
    """
    alpha = float(alpha)
    if not alpha > 0:
        raise ManifestError("transform.alpha must be > 0", field="transform.alpha")
    out = deepcopy(manifest)
    manifold = out["manifold"]
    if manifold["kind"] != "custom":
        prior = (out.get("transform") or {}).get("alpha", 1.0)
        out["transform"] = {"alpha": prior * alpha}
        return out
    dim = len(manifold["coords"])
    eta = manifold["eta"]
    c = alpha * alpha - alpha
    g = manifold["g"]
    new_g = []
    for i in range(dim):
        row = []
        for j in range(dim):
            text = f"({alpha!r})*({g[i][j]})"
            if c != 0.0:
                text += f"+({c!r})*({eta[i]})*({eta[j]})"
            row.append(text)
        new_g.append(row)
    manifold["g"] = new_g
    manifold["xi"] = [f"({t})/({alpha!r})" for t in manifold["xi"]]
    manifold["eta"] = [f"({alpha!r})*({t})" for t in eta]
    return out


# -- serialization ----------------------------------------------------------------


def _serialize(obj, indent):
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = (
            f"{inner}{json.dumps(str(k))}: {_serialize(obj[k], indent + 1)}"
            for k in sorted(obj)
        )
        return "{\n" + ",\n".join(items) + f"\n{pad}}}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = (f"{inner}{_serialize(v, indent + 1)}" for v in obj)
        return "[\n" + ",\n".join(items) + f"\n{pad}]"
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format(float(obj), ".17g")
    if isinstance(obj, str):
        return json.dumps(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps_report(report_dict):
    """Stable text form: sorted keys, 17-significant-digit floats."""
    return _serialize(report_dict, 0) + "\n"


def write_report(report_dict, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_report(report_dict))
