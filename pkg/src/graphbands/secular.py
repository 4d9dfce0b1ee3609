"""Secular determinant of a magnetic graph.

The graph spectrum at quasi-momentum alpha is the zero set in k of

    F(k; alpha) = det(I - exp(i(A + k L)) S)

with A the diagonal of bond flux phases, L the diagonal of bond lengths
and S the bond scattering matrix.  The same determinant evaluated with an
arbitrary phase vector kappa in place of kL gives the torus secular
function Phi(kappa; alpha), whose zero set lifts the spectrum to the
torus of edge phases.

The batched evaluator here is the kernel everything else is built on:
band scans, quasi-momentum polynomial extraction and Monte Carlo torus
sampling all reduce to evaluating stacks of these determinants.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .bond_system import BondSystem, unitary_at

# target number of scratch matrix entries per chunk of the batched kernel
_CHUNK_BUDGET = 4_000_000


@dataclass(frozen=True)
class SecularValue:
    """Value of the secular determinant at one evaluation point."""

    value: complex

    @property
    def magnitude(self) -> float:
        return abs(self.value)


def eval_secular(bs: BondSystem, k: float, alpha=()) -> SecularValue:
    """F(k; alpha) at a single momentum and quasi-momentum."""
    U = unitary_at(bs, k, alpha)
    return SecularValue(complex(np.linalg.det(np.eye(bs.n_bonds) - U)))


def eval_phi(bs: BondSystem, kappa, alpha=()) -> SecularValue:
    """Torus secular function Phi(kappa; alpha) for per-edge phases kappa."""
    kappa = np.asarray(kappa, dtype=float)
    if kappa.shape != (bs.n_edges,):
        raise ValueError("expected %d edge phases, got shape %r"
                         % (bs.n_edges, kappa.shape))
    alpha = np.atleast_1d(np.asarray(alpha, dtype=float))
    phase = bs.bond_flux @ alpha + kappa[bs.edge_of_bond]
    U = np.exp(1j * phase)[:, None] * bs.scattering
    return SecularValue(complex(np.linalg.det(np.eye(bs.n_bonds) - U)))


def _secular_block(S, bond_phases, alpha_phases):
    """det(I - exp(i(p + a)) S) for rows p of bond_phases and rows a of
    alpha_phases; returns shape (n, NA)."""
    n2 = S.shape[0]
    expo = bond_phases[:, None, :] + alpha_phases[None, :, :]
    M = np.exp(1j * expo)[..., :, None] * S
    M *= -1.0
    idx = np.arange(n2)
    M[..., idx, idx] += 1.0
    return np.linalg.det(M)


def secular_values(bs: BondSystem, bond_phases, alphas=None,
                   threads: int | None = None) -> np.ndarray:
    """Batched secular determinants.

    Parameters
    ----------
    bond_phases : (n, 2E) array
        Flux-free diagonal phase exponents, one row per evaluation point
        (``k * bond_lengths`` for momentum scans, lifted torus phases for
        torus work).
    alphas : (NA, J) array, optional
        Quasi-momentum rows; flux phases are added internally.  Defaults
        to the single row alpha = 0.
    threads : int, optional
        Evaluate chunks on a thread pool.  numpy releases the GIL inside
        the determinant batches, so this scales for large point sets.

    Returns
    -------
    (n, NA) complex array of determinant values.
    """
    bond_phases = np.asarray(bond_phases, dtype=float)
    if bond_phases.ndim != 2 or bond_phases.shape[1] != bs.n_bonds:
        raise ValueError("bond_phases must have shape (n, %d)" % bs.n_bonds)
    if alphas is None:
        alphas = np.zeros((1, bs.generators))
    alphas = np.asarray(alphas, dtype=float)
    if alphas.ndim == 1:
        alphas = alphas[:, None] if bs.generators == 1 else alphas[None, :]
    if alphas.shape[1] != bs.generators:
        raise ValueError("alphas must have shape (NA, %d)" % bs.generators)

    alpha_phases = alphas @ bs.bond_flux.T           # (NA, 2E)
    n = bond_phases.shape[0]
    per_point = alpha_phases.shape[0] * bs.n_bonds ** 2
    chunk = max(1, _CHUNK_BUDGET // max(per_point, 1))
    blocks = [(i, min(i + chunk, n)) for i in range(0, n, chunk)]

    out = np.empty((n, alpha_phases.shape[0]), dtype=complex)
    if threads and threads > 1 and len(blocks) > 1:
        def work(span):
            i, j = span
            out[i:j] = _secular_block(bs.scattering, bond_phases[i:j],
                                      alpha_phases)
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(work, blocks))
    else:
        for i, j in blocks:
            out[i:j] = _secular_block(bs.scattering, bond_phases[i:j],
                                      alpha_phases)
    return out


def scattering_parity(bs: BondSystem) -> int:
    """det S, always +1 or -1 for the real orthogonal bond matrix."""
    d = np.linalg.det(bs.scattering)
    sign = int(np.sign(d.real))
    if abs(d - sign) > 1e-8:
        raise ValueError("bond scattering determinant %r is not +-1" % (d,))
    return sign


def real_secular_values(bs: BondSystem, kappas, alpha=()) -> np.ndarray:
    """Real-valued secular function on torus phase rows ``kappas``.

    exp(-i sum_e kappa_e) * Phi(kappa; alpha) is real when det S = +1 and
    purely imaginary when det S = -1 (a consequence of time-reversal
    symmetry of the bond matrix), so the appropriate component is a real
    analytic function with exactly the zeros of Phi.  Useful for
    sign-change bracketing and root counting.
    """
    kappas = np.asarray(kappas, dtype=float)
    single = kappas.ndim == 1
    kappas = np.atleast_2d(kappas)
    alpha = np.atleast_1d(np.asarray(alpha, dtype=float))
    phases = kappas[:, bs.edge_of_bond]
    vals = secular_values(bs, phases, alpha[None, :])[:, 0]
    vals = vals * np.exp(-1j * kappas.sum(axis=1))
    out = vals.real if scattering_parity(bs) == 1 else vals.imag
    return out[0] if single else out
