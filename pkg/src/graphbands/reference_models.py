"""Closed-form reference models and decoration machinery.

Two small graphs admit pencil-and-paper band sets on the torus and serve
as ground truth for the numerical pipeline: the loop-with-pendant graph
(band density expressible by a one-dimensional quadrature, about 0.64)
and a dihedral-symmetric three-edge graph whose band density (about
0.43) shows the universal constant is shape-dependent, not literally
universal.  The reflection coefficient of a pendant decoration explains
why whole families of graphs share one band set: a decoration enters the
secular equation only through a unimodular phase, which a change of
variables absorbs into one torus coordinate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .bond_system import vertex_scattering
from .graph_model import GraphError, MagneticGraph

TWO_PI = 2.0 * np.pi
UNITARITY_TOL = 1e-10
_RESONANCE_RTOL = 1e-10
_MC_CHUNK = 1 << 19


@dataclass(frozen=True)
class ReferenceValue:
    """Reference number with provenance and an error scale.

    ``error_bound`` is a rigorous bound for quadrature values and one
    standard error for Monte Carlo values; ``method`` says which.
    """

    value: float
    method: str
    error_bound: float


# ---------------------------------------------------------------------------
# loop with pendant
# ---------------------------------------------------------------------------

def phi_lasso(kappa1, kappa2, alpha):
    """Secular function of the loop-with-pendant graph on the torus,

        2 cos(kappa2) (cos(kappa1) - cos(alpha)) - sin(kappa1) sin(kappa2)

    with kappa1 the loop phase, kappa2 the pendant phase and alpha the
    quasi-momentum.  Zeros in alpha give the dispersion relation.
    """
    kappa1, kappa2, alpha = np.broadcast_arrays(
        np.asarray(kappa1, float), np.asarray(kappa2, float),
        np.asarray(alpha, float))
    out = (2.0 * np.cos(kappa2) * (np.cos(kappa1) - np.cos(alpha))
           - np.sin(kappa1) * np.sin(kappa2))
    return out if out.ndim else float(out)


def lasso_membership(kappa1, kappa2):
    """Band-set indicator of the loop-with-pendant graph on the torus.

    Solving phi = 0 for cos(alpha) gives a real quasi-momentum exactly
    when

        |2 cos(kappa2) cos(kappa1) - sin(kappa1) sin(kappa2)|
            <= |2 cos(kappa2)|.

    The inequality remains correct in the limit cos(kappa2) = 0, where
    membership degenerates to sin(kappa1) = 0.
    """
    kappa1 = np.asarray(kappa1, dtype=float)
    kappa2 = np.asarray(kappa2, dtype=float)
    lhs = np.abs(2.0 * np.cos(kappa2) * np.cos(kappa1)
                 - np.sin(kappa1) * np.sin(kappa2))
    inside = lhs <= np.abs(2.0 * np.cos(kappa2))
    return inside if inside.ndim else bool(inside)


def lasso_reference_density() -> ReferenceValue:
    """Band density of the loop-with-pendant graph by quadrature.

    Integrating the membership indicator over the torus reduces to

        p = (2 / pi^2) * integral_0^pi arctan(2 cot(kappa / 2)) dkappa,

    evaluated adaptively with absolute error below 1e-8.
    """
    def integrand(kappa):
        return np.arctan2(2.0, np.tan(0.5 * kappa))

    val, err = quad(integrand, 0.0, np.pi, epsabs=1e-11, epsrel=1e-11,
                    limit=200)
    scale = 2.0 / np.pi ** 2
    bound = scale * err
    if bound > 1e-8:
        raise ArithmeticError("quadrature failed to reach 1e-8 accuracy")
    return ReferenceValue(value=scale * val, method="quadrature",
                          error_bound=bound)


# ---------------------------------------------------------------------------
# dihedral three-edge graph
# ---------------------------------------------------------------------------

def dihedral_secular(kappa1, kappa2, kappa3, alpha):
    """Secular function of the dihedral three-edge periodic graph,

        sin(k1 + k2 + k3) - (1/2) sin(k1) sin(k2) sin(k3)
            - sin(k1) - cos(alpha) (sin(k2) + sin(k3)).
    """
    kappa1, kappa2, kappa3, alpha = np.broadcast_arrays(
        np.asarray(kappa1, float), np.asarray(kappa2, float),
        np.asarray(kappa3, float), np.asarray(alpha, float))
    s1, s2, s3 = np.sin(kappa1), np.sin(kappa2), np.sin(kappa3)
    out = (np.sin(kappa1 + kappa2 + kappa3) - 0.5 * s1 * s2 * s3
           - s1 - np.cos(alpha) * (s2 + s3))
    return out if out.ndim else float(out)


def dihedral_membership(kappa1, kappa2, kappa3):
    """Band-set indicator of the dihedral graph: a real quasi-momentum
    solves the secular equation iff

        |sin(k1+k2+k3) - (1/2) sin k1 sin k2 sin k3 - sin k1|
            <= |sin k2 + sin k3|.
    """
    kappa1 = np.asarray(kappa1, dtype=float)
    kappa2 = np.asarray(kappa2, dtype=float)
    kappa3 = np.asarray(kappa3, dtype=float)
    s2, s3 = np.sin(kappa2), np.sin(kappa3)
    lhs = np.abs(np.sin(kappa1 + kappa2 + kappa3)
                 - 0.5 * np.sin(kappa1) * s2 * s3 - np.sin(kappa1))
    inside = lhs <= np.abs(s2 + s3)
    return inside if inside.ndim else bool(inside)


def dihedral_density(samples: int, seed: int) -> ReferenceValue:
    """Monte Carlo band density of the dihedral graph.

    Uniform torus sampling of the closed-form indicator; the Philox
    stream makes the value a pure function of (samples, seed).
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    rng = np.random.Generator(np.random.Philox(seed))
    hits = 0
    done = 0
    while done < samples:
        n = min(_MC_CHUNK, samples - done)
        kappa = rng.uniform(0.0, TWO_PI, size=(n, 3))
        hits += int(np.count_nonzero(
            dihedral_membership(kappa[:, 0], kappa[:, 1], kappa[:, 2])))
        done += n
    p = hits / samples
    se = float(np.sqrt(p * (1.0 - p) / samples))
    return ReferenceValue(value=p, method="monte_carlo", error_bound=se)


# ---------------------------------------------------------------------------
# decorations
# ---------------------------------------------------------------------------

class InteriorResonanceError(ArithmeticError):
    """The decoration has an internal standing wave at this momentum, so
    its reflection coefficient is not defined."""


def effective_reflection(decoration: MagneticGraph, entry_vertex, k: float):
    """Reflection coefficient of a flux-free decoration seen from outside.

    The decoration hangs off the rest of the graph by a single edge
    arriving at ``entry_vertex``; a wave entering there returns with
    amplitude Theta(k) of modulus one.  In the secular equation the whole
    decoration can be replaced by this phase, so graphs differing by a
    decoration have band sets related by a shift of one torus coordinate;
    that is the mechanism behind their equal band densities.

    The entry vertex is treated with degree one higher than inside the
    decoration (the attachment edge counts).  Raises
    :class:`InteriorResonanceError` at momenta where the interior wave
    system is singular.
    """
    if entry_vertex not in decoration.vertices:
        raise GraphError("entry vertex %r not in decoration" % (entry_vertex,))
    if decoration.generators and any(any(e.flux) for e in decoration.edges):
        raise GraphError("decoration must be flux-free")
    E = decoration.edge_count
    if E == 0:
        return complex(1.0)
    if not decoration.is_bound:
        raise GraphError("decoration has unbound length slots")

    n = 2 * E
    tails = [e.tail for e in decoration.edges] + [e.head for e in decoration.edges]
    heads = [e.head for e in decoration.edges] + [e.tail for e in decoration.edges]

    S = np.zeros((n, n))
    entry_degree = None
    for v in decoration.vertices:
        incoming = [b for b in range(n) if heads[b] == v]
        outgoing = [b for b in range(n) if tails[b] == v]
        d = len(incoming) + (1 if v == entry_vertex else 0)
        if v == entry_vertex:
            entry_degree = d
        if not incoming:
            continue
        back, fwd = vertex_scattering(d)
        for b in incoming:
            rev = (b + E) % n
            for bp in outgoing:
                S[bp, b] = back if bp == rev else fwd

    back_w, fwd_w = vertex_scattering(entry_degree)
    source = np.array([fwd_w if tails[b] == entry_vertex else 0.0
                       for b in range(n)], dtype=complex)

    lengths = np.concatenate([decoration.lengths] * 2)
    phases = np.exp(1j * k * lengths)
    M = np.eye(n, dtype=complex) - S * phases[None, :]
    sv = np.linalg.svd(M, compute_uv=False)
    if sv[-1] <= _RESONANCE_RTOL * sv[0]:
        raise InteriorResonanceError(
            "decoration is resonant at k=%r (singular interior system)" % (k,))
    x = np.linalg.solve(M, source)

    returning = phases * x
    theta = back_w + fwd_w * sum(returning[b] for b in range(n)
                                 if heads[b] == entry_vertex)
    theta = complex(theta)
    if abs(abs(theta) - 1.0) > UNITARITY_TOL:
        raise InteriorResonanceError(
            "reflection lost unitarity at k=%r (|Theta| = %.12f), "
            "momentum is too close to an interior resonance"
            % (k, abs(theta)))
    return theta
