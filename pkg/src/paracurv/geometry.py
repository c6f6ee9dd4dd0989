"""Manifolds with paracontact structure: charts, builtins, induction.

A :class:`CharteredStructure` bundles the chart (coordinate names, domain
box, optional guard) with a component strategy that produces jets of
(g, phi, xi, eta) at a point.  Three strategies exist: explicit expression
tables, induction from an embedding into the flat para-Kaehler ambient,
and the D-homothetic transform of another structure.
"""

from __future__ import annotations

import numpy as np

from .errors import (
    DomainError,
    InvalidAlpha,
    NotParacontact,
    RankDeficientJacobian,
)
from .exprlang import ScalarField, derivative, parse
from .jetfields import JetTensor, jt_einsum, jt_metric_inverse


class StructureJets:
    """Jets of the four structure tensors at one point."""

    __slots__ = ("g", "phi", "xi", "eta")

    def __init__(self, g, phi, xi, eta):
        self.g = g
        self.phi = phi
        self.xi = xi
        self.eta = eta


class Domain:
    """Coordinate box with an optional guard predicate."""

    def __init__(self, box, guard=None, guard_desc=None):
        self.box = np.asarray(box, dtype=float)  # shape (d, 2)
        self.guard = guard
        self.guard_desc = guard_desc

    @classmethod
    def cube(cls, dim, half_width=2.0):
        return cls([[-half_width, half_width]] * dim)

    def contains(self, point):
        point = np.asarray(point, dtype=float)
        if np.any(point < self.box[:, 0]) or np.any(point > self.box[:, 1]):
            return False
        return self.guard is None or bool(self.guard(point))


class CharteredStructure:
    """(2n+1)-dimensional paracontact chart with component fields."""

    def __init__(self, n, coords, components, domain, name="custom", probe=None):
        self.n = int(n)
        self.dim = 2 * self.n + 1
        if len(coords) != self.dim:
            raise NotParacontact(
                f"structure needs odd dimension 2n+1, got {len(coords)} coordinates"
            )
        self.coords = tuple(coords)
        self.components = components
        self.domain = domain
        self.name = name
        self._cache = {}
        self._check_signature(probe)

    def _check_signature(self, probe):
        # fail fast on manifestly bad input: g must have signature (n+1, n)
        if probe is None:
            probe = self.domain.box.mean(axis=1)
        sj = self.at(np.asarray(probe, dtype=float), order=0)
        eigs = np.linalg.eigvalsh(sj.g.value)
        pos = int(np.sum(eigs > 0))
        neg = int(np.sum(eigs < 0))
        if (pos, neg) != (self.n + 1, self.n):
            raise NotParacontact(
                f"metric signature ({pos},{neg}) at probe point, expected "
                f"({self.n + 1},{self.n})"
            )

    def at(self, point, order=3):
        """Structure jets at a point (cached per point and order)."""
        point = np.asarray(point, dtype=float)
        key = (point.tobytes(), order)
        hit = self._cache.get(key)
        if hit is None:
            if not self.domain.contains(point):
                raise DomainError(
                    f"point outside chart domain of {self.name}", value=point
                )
            hit = self.components.at(point, order)
            if len(self._cache) > 4096:
                self._cache.clear()
            self._cache[key] = hit
        return hit


# -- component strategies -----------------------------------------------------


class ExprTableComponents:
    """Structure tensors given componentwise as scalar fields."""

    def __init__(self, g, phi, xi, eta):
        self.g = g  # d x d nested list of ScalarField
        self.phi = phi
        self.xi = xi
        self.eta = eta

    def at(self, point, order):
        def pack(table):
            jets = np.array(
                [[f(point, order) for f in row] for row in table], dtype=object
            )
            return JetTensor.from_jets(jets)

        def pack_vec(vec):
            return JetTensor.from_jets(
                np.array([f(point, order) for f in vec], dtype=object)
            )

        g = pack(self.g)
        # enforce exact symmetry of the metric jets
        g = JetTensor(g.dim, g.order, [0.5 * (p + np.swapaxes(p, -1, -2)) for p in g.parts])
        return StructureJets(g, pack(self.phi), pack_vec(self.xi), pack_vec(self.eta))


class HomotheticComponents:
    """D-homothetic transform of a base structure's components.

    gbar = alpha g + (alpha^2 - alpha) eta (x) eta, phibar = phi,
    xibar = xi / alpha, etabar = alpha eta.
    """

    def __init__(self, base, alpha):
        self.base = base
        self.alpha = float(alpha)

    def at(self, point, order):
        sj = self.base.at(point, order)
        a = self.alpha
        eta_eta = jt_einsum("i,j->ij", sj.eta, sj.eta)
        g = a * sj.g + (a * a - a) * eta_eta
        return StructureJets(g, sj.phi, (1.0 / a) * sj.xi, a * sj.eta)


class AmbientParaKaehler:
    """Flat para-Kaehler R^{2m}: coordinates (x_0..x_{m-1}, y_0..y_{m-1}).

    The product structure swaps the x- and y-blocks; the flat metric is
    +delta on the x-block, -delta on the y-block, zero mixed.
    """

    def __init__(self, m):
        self.m = int(m)
        self.dim = 2 * self.m
        eye = np.eye(self.m)
        zero = np.zeros((self.m, self.m))
        self.product = np.block([[zero, eye], [eye, zero]])  # I
        self.metric = np.block([[eye, zero], [zero, -eye]])
        self.eps = np.diag(self.metric).copy()


class Embedding:
    """Immersion of a (2n+1)-chart into the flat para-Kaehler ambient."""

    def __init__(self, ambient, coords, immersion_asts, normal_asts):
        self.ambient = ambient
        self.coords = tuple(coords)
        self.dim = len(coords)
        self.immersion = list(immersion_asts)
        self.normal = list(normal_asts)
        if len(self.immersion) != ambient.dim:
            raise ValueError("immersion must have one component per ambient axis")
        # tangent basis fields e_a = d iota / d q^a, differentiated once
        # symbolically so every induced quantity still carries full-order jets
        self.tangent = [
            [derivative(comp, a) for comp in self.immersion]
            for a in range(self.dim)
        ]


def induce_structure(embedding, point, order=3):
    """Induced (g, phi, xi, eta) jets at a chart point.

    The paracontact-compatible induced metric is the *negative* of the
    ambient restriction: the ambient pairing gives the tangent space
    signature (n, n+1) and g(xi, xi) = -1, so the sign flip is forced by
    eta(xi) = 1.  With it, every compatibility axiom comes out right.
    """
    from .exprlang import eval_jet

    amb = embedding.ambient
    d = embedding.dim
    eps = amb.eps

    def pack(asts):
        return JetTensor.from_jets(
            np.array([eval_jet(a, point, order) for a in asts], dtype=object)
        )

    iota = pack(embedding.immersion)
    normal = pack(embedding.normal)
    e = JetTensor.from_jets(
        np.array(
            [[eval_jet(a, point, order) for a in row] for row in embedding.tangent],
            dtype=object,
        )
    )  # base (a, C)

    jac = e.value
    if np.linalg.matrix_rank(jac, tol=1e-9) < d:
        raise RankDeficientJacobian(f"immersion Jacobian rank-deficient at {point}")

    def inner(u, v, sub):
        """Paracontact pairing -<u, v>_ambient over the last (ambient) axis."""
        lhs, out = sub.split("->")
        su, sv = lhs.split(",")
        scaled = JetTensor(v.dim, v.order, [p * eps for p in v.parts])
        return -1.0 * jt_einsum(f"{su}C,{sv}C->{out}", u, scaled)

    g = inner(e, e, "a,b->ab")
    g = JetTensor(g.dim, g.order, [0.5 * (p + np.swapaxes(p, -1, -2)) for p in g.parts])
    ginv = jt_metric_inverse(g)

    i_mat = amb.product
    i_n = jt_einsum("CD,D->C", JetTensor.const(i_mat, d, order), normal)
    eta = inner(i_n, e, ",a->a")
    xi = jt_einsum("ab,b->a", ginv, eta)

    # phi^b_a solves  sum_b phi^b_a e_b = -(I e_a - eta_a N); the rhs is
    # tangent, and the overall minus partners the metric flip above so that
    # g(X, phi Y) = d eta(X, Y) comes out with the right sign
    i_e = jt_einsum("CD,aD->aC", JetTensor.const(i_mat, d, order), e)
    rhs = i_e - jt_einsum("a,C->aC", eta, normal)
    proj = inner(e, rhs, "c,a->ca")
    phi = -1.0 * jt_einsum("bc,ca->ba", ginv, proj)

    return StructureJets(g, phi, xi, eta)


class InducedComponents:
    """Component strategy backed by an embedding."""

    def __init__(self, embedding):
        self.embedding = embedding

    def at(self, point, order):
        return induce_structure(self.embedding, point, order)


# -- builtin catalog ------------------------------------------------------------


def heisenberg_tables(n):
    """Expression tables for the hyperbolic Heisenberg group of dimension 2n+1.

    Coordinates (u_1..u_n, v_1..v_n, t); eta = dt + sum(u_k dv_k - v_k du_k),
    xi = d/dt, g = eta (x) eta + sum(du_k^2 - dv_k^2).  This is the
    ubiquitous left-invariant model normalized so that eta(xi) = 1 and
    g(X, phi Y) equals the antisymmetrized half-derivative of eta exactly.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    coords = [f"u{k}" for k in range(1, n + 1)] + [
        f"v{k}" for k in range(1, n + 1)
    ] + ["t"]
    d = 2 * n + 1
    eta = [f"-v{k}" for k in range(1, n + 1)] + [
        f"u{k}" for k in range(1, n + 1)
    ] + ["1"]
    xi = ["0"] * (d - 1) + ["1"]
    phi = [["0"] * d for _ in range(d)]
    for k in range(n):
        u, v = k, n + k
        phi[v][u] = "1"  # phi d_u = d_v - u d_t
        phi[d - 1][u] = f"-u{k + 1}"
        phi[u][v] = "1"  # phi d_v = d_u + v d_t
        phi[d - 1][v] = f"v{k + 1}"
    flat = [1.0] * n + [-1.0] * n + [0.0]
    g = [["0"] * d for _ in range(d)]
    for i in range(d):
        for j in range(d):
            terms = [f"({eta[i]})*({eta[j]})"]
            if i == j and flat[i] != 0.0:
                terms.append(str(flat[i]))
            g[i][j] = "+".join(terms)
    return coords, g, phi, xi, eta


def builtin_heisenberg(n):
    coords, g, phi, xi, eta = heisenberg_tables(n)
    d = 2 * n + 1

    def table(rows):
        return [[ScalarField.from_expr(s, coords) for s in row] for row in rows]

    comps = ExprTableComponents(
        table(g),
        table(phi),
        [ScalarField.from_expr(s, coords) for s in xi],
        [ScalarField.from_expr(s, coords) for s in eta],
    )
    return CharteredStructure(
        n, coords, comps, Domain.cube(d, 10.0), name=f"heisenberg(n={n})"
    )


def hyperboloid_embedding(n):
    """Graph chart of the unit hyperboloid sum x^2 - sum y^2 = 1.

    Chart coordinates (x_1..x_n, y_0..y_n) with
    x_0 = sqrt(1 - sum x_i^2 + sum y_j^2); the normal is the position
    vector.  Ambient axes are ordered (x_0..x_n, y_0..y_n).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    coords = [f"x{i}" for i in range(1, n + 1)] + [f"y{j}" for j in range(n + 1)]
    radicand_text = "1" + "".join(f"-x{i}^2" for i in range(1, n + 1)) + "".join(
        f"+y{j}^2" for j in range(n + 1)
    )
    x0_text = f"sqrt({radicand_text})"
    immersion_texts = [x0_text] + coords[:]
    asts = [parse(t, coords) for t in immersion_texts]
    ambient = AmbientParaKaehler(n + 1)
    return Embedding(ambient, coords, asts, normal_asts=asts), radicand_text


HYPERBOLOID_GUARD_MIN = 0.1


def builtin_hyperboloid(n):
    embedding, radicand_text = hyperboloid_embedding(n)
    coords = embedding.coords
    radicand_ast = parse(radicand_text, coords)
    from .exprlang import eval_jet

    def guard(point):
        return eval_jet(radicand_ast, point, order=0).value >= HYPERBOLOID_GUARD_MIN

    d = 2 * n + 1
    domain = Domain(
        [[-2.0, 2.0]] * d,
        guard=guard,
        guard_desc=f"{radicand_text} >= {HYPERBOLOID_GUARD_MIN}",
    )
    # probe the origin: radicand 1 there, comfortably inside the guard
    return CharteredStructure(
        n,
        coords,
        InducedComponents(embedding),
        domain,
        name=f"hyperboloid(n={n})",
        probe=np.zeros(d),
    )


BUILTINS = {
    "heisenberg": builtin_heisenberg,
    "hyperboloid": builtin_hyperboloid,
}


def d_homothetic(structure, alpha):
    """D-homothetic transform; preserves the paraSasakian property."""
    if not alpha > 0:
        raise InvalidAlpha(f"alpha must be > 0, got {alpha}")
    if alpha == 1.0:
        return structure
    return CharteredStructure(
        structure.n,
        structure.coords,
        HomotheticComponents(structure, alpha),
        structure.domain,
        name=f"d_homothetic({structure.name}, {alpha:g})",
    )
