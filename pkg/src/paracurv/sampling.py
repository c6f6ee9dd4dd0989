"""Seeded, deterministic sampling of chart points and tangent vectors.

The generator is numpy's PCG64 (O'Neill's permuted congruential generator,
128-bit state, 64-bit output), seeded from the manifest seed, and every
sample is drawn sequentially from the single stream, so reports are
reproducible bit-for-bit regardless of how checks fan out afterwards.
"""

from __future__ import annotations

import numpy as np

from .errors import IsotropicVector, SamplingExhausted

MAX_ATTEMPTS = 100
NULL_EPS = 1e-6
DEFAULT_BOX_HALF_WIDTH = 0.8


class Sampler:
    def __init__(self, structure, seed, box=None):
        self.structure = structure
        self.seed = int(seed)
        self.rng = np.random.default_rng(self.seed)
        d = structure.dim
        dom = structure.domain.box
        if box is None:
            lo = np.maximum(dom[:, 0], -DEFAULT_BOX_HALF_WIDTH)
            hi = np.minimum(dom[:, 1], DEFAULT_BOX_HALF_WIDTH)
            box = np.stack([lo, hi], axis=1)
        self.box = np.asarray(box, dtype=float).reshape(d, 2)

    def point(self):
        """One in-domain point, by rejection against the guard."""
        for _ in range(MAX_ATTEMPTS):
            p = self.rng.uniform(self.box[:, 0], self.box[:, 1])
            if self.structure.domain.contains(p):
                return p
        raise SamplingExhausted(
            f"no in-domain point after {MAX_ATTEMPTS} attempts in box {self.box.tolist()}"
        )

    def points(self, count):
        return [self.point() for _ in range(count)]

    def raw_vector(self):
        return self.rng.uniform(-1.0, 1.0, self.structure.dim)

    def horizontal_unit(self, point):
        """Horizontal vector normalized to g(u,u) = +-1, with its sign.

        Coordinates are drawn uniformly, projected along xi, and rejected
        while nearly null; split signature makes both signs appear.
        """
        sj = self.structure.at(np.asarray(point, float), order=0)
        g, xi, eta = sj.g.value, sj.xi.value, sj.eta.value
        for _ in range(MAX_ATTEMPTS):
            w = self.raw_vector()
            w = w - (eta @ w) * xi
            q = float(w @ g @ w)
            if abs(q) < NULL_EPS:
                continue
            u = w / np.sqrt(abs(q))
            return u, float(np.sign(q))
        raise SamplingExhausted(
            f"no non-null horizontal vector after {MAX_ATTEMPTS} attempts"
        )

    def section_vector(self, point):
        """A vector whose phi-image and phi^2-image are both non-null."""
        sj = self.structure.at(np.asarray(point, float), order=0)
        g, phi = sj.g.value, sj.phi.value
        for _ in range(MAX_ATTEMPTS):
            v = self.raw_vector()
            pv = phi @ v
            ppv = phi @ pv
            if abs(pv @ g @ pv) < NULL_EPS or abs(ppv @ g @ ppv) < NULL_EPS:
                continue
            return v
        raise SamplingExhausted(
            f"no non-degenerate section vector after {MAX_ATTEMPTS} attempts"
        )


def require_non_null(q):
    if abs(q) < NULL_EPS:
        raise IsotropicVector(f"vector is numerically null: g(u,u) = {q:g}")
    return q
