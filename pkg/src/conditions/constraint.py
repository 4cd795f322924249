"""
Block constraint systems of a single path.

Evaluating Lx = 0 on the agents of a path tau_1 .. tau_{rho+1} whose endpoints are related by
x_1 = s x_{rho+1} gives Gamma_0. With v_i = x_{i+1} - s_i x_i the columns transform to
(x_1, v_1 .. v_rho) and, when s = alpha_rho, the system splits into [A_bar], R = [-alpha_i I] and
Q = blkdiag(-s_i A_i); rank[R; Q] = rank R + rank(Q (I - R^+ R)).
"""
import logging
from typing import Optional, Sequence, Tuple

import numpy as np
import scipy.linalg as sla

from src.config import DEFAULT_TOLERANCES, Tolerances
from src.models.conditions import ConstraintSystem, RankSplit
from src.models.subspace import SubspaceBasis
from src.models.topology import PathDescriptor
from src.utils.linalg import complement_projector, numerical_null_space, numerical_rank

logger = logging.getLogger(__name__)


def endpoint_matrix(b_kl: SubspaceBasis, b_km: SubspaceBasis, tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """A_bar = I - P with P the projector onto span(B_Kl) cap span(B_Km)."""
    inter = b_kl.intersect(b_km, tol=tol.rank)
    return complement_projector(inter.columns)


def constraint_system(weights: Sequence[np.ndarray], edge_signs: Sequence[int], a_bar: np.ndarray,
                      relation_sign: int, nbs_index: Optional[int] = None, path_nodes: Sequence[str] = (),
                      tol: Tolerances = DEFAULT_TOLERANCES) -> ConstraintSystem:
    weights = tuple(np.asarray(w, dtype=float) for w in weights)
    rho = len(weights)
    if rho == 0:
        raise ValueError("a path has at least one edge")
    if len(edge_signs) != rho:
        raise ValueError("one sign per edge is required")
    d = weights[0].shape[0]
    a_bar = np.asarray(a_bar, dtype=float)
    eye = np.eye(d)

    gamma0 = np.zeros(((rho + 2) * d, (rho + 1) * d))
    gamma0[0:d, 0:d] = a_bar
    gamma0[d:2 * d, 0:d] = eye
    gamma0[d:2 * d, rho * d:(rho + 1) * d] = -relation_sign * eye
    for i, (a, s) in enumerate(zip(weights, edge_signs)):
        row = (i + 2) * d
        gamma0[row:row + d, i * d:(i + 1) * d] = a
        gamma0[row:row + d, (i + 1) * d:(i + 2) * d] = -s * a

    alphas = np.cumprod(edge_signs)
    q = sla.block_diag(*[-s * a for a, s in zip(weights, edge_signs)])
    fields = {}
    if relation_sign == alphas[-1]:
        r = np.hstack([-alpha * eye for alpha in alphas])
        fields["r"] = r
        fields["q"] = q
        fields["gamma_bar"] = q @ (np.eye(rho * d) - sla.pinv(r) @ r)
    else:
        top = np.hstack([2 * eye] + [alpha * eye for alpha in alphas])
        middle = np.hstack([a_bar, np.zeros((d, rho * d))])
        bottom = np.hstack([np.zeros((rho * d, d)), q])
        fields["q"] = q
        fields["gamma_bar0"] = np.vstack([top, middle, bottom])
        if nbs_index is not None:
            common = numerical_null_space(np.vstack([a_bar, weights[nbs_index]]), tol.rank, n_cols=d)
            fields["a_hat"] = complement_projector(common)

    return ConstraintSystem(
        path_nodes=tuple(path_nodes),
        d=d,
        weights=weights,
        edge_signs=tuple(int(s) for s in edge_signs),
        relation_sign=int(relation_sign),
        a_bar=a_bar,
        gamma0=gamma0,
        nbs_index=nbs_index,
        **fields,
    )


def build_path_constraint(path: PathDescriptor, a_bar: np.ndarray, relation_sign: int,
                          tol: Tolerances = DEFAULT_TOLERANCES) -> ConstraintSystem:
    """Gamma_0 of a connecting path; the relation sign refers to the path's own endpoints."""
    nbs_index = path.nbs_edges[0] if len(path.nbs_edges) == 1 else None
    return constraint_system(
        [e.magnitude for e in path.edges],
        path.edge_signs,
        a_bar,
        relation_sign,
        nbs_index=nbs_index,
        path_nodes=path.nodes,
        tol=tol,
    )


def path_rows(system: ConstraintSystem) -> np.ndarray:
    """The edge rows of Gamma_0 alone: the path's own edge-wise null conditions."""
    return system.gamma0[2 * system.d:, :]


def change_of_variables(system: ConstraintSystem) -> np.ndarray:
    """T with x = T (x_1, v_1 .. v_rho): x_{k+1} = alpha_k x_1 + sum_{i<=k} alpha_k alpha_i v_i."""
    d, rho = system.d, system.rho
    alphas = (1,) + system.alphas
    t = np.zeros(((rho + 1) * d, (rho + 1) * d))
    eye = np.eye(d)
    for k in range(rho + 1):
        rows = slice(k * d, (k + 1) * d)
        t[rows, 0:d] = alphas[k] * eye
        for i in range(1, k + 1):
            t[rows, i * d:(i + 1) * d] = alphas[k] * alphas[i] * eye
    return t


def transformed_system(system: ConstraintSystem) -> np.ndarray:
    """
    Gamma_0 after the column operations.

    Primary case: [[A_bar, 0], [0, R], [0, Q]] in the row order of Gamma_0.
    Balancing-edge case: Gamma_bar_0 = [[2I, alpha_1 I .. alpha_rho I], [A_bar, 0], [0, Q]].
    """
    if system.primary_case:
        d, rho = system.d, system.rho
        top = np.hstack([system.a_bar, np.zeros((d, rho * d))])
        middle = np.hstack([np.zeros((d, d)), system.r])
        bottom = np.hstack([np.zeros((rho * d, d)), system.q])
        return np.vstack([top, middle, bottom])
    return system.gamma_bar0


def balancing_path_vectors(system: ConstraintSystem, tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """
    Columns of D_bar (1 (x) B_A_hat): node signs follow the edge signs along the path except across
    the balancing edge, times a basis of null(A_hat). Every column lies in null(Gamma_0).
    """
    if system.nbs_index is None or system.a_hat is None:
        raise ValueError("the system has no single balancing edge")
    sigma = [1]
    for i, s in enumerate(system.edge_signs):
        sigma.append(-s * sigma[-1] if i == system.nbs_index else s * sigma[-1])
    basis = numerical_null_space(system.a_hat, tol.rank, n_cols=system.d)
    return np.kron(np.asarray(sigma, dtype=float).reshape(-1, 1), basis)


def rank_split(r: np.ndarray, q: np.ndarray, tol: Tolerances = DEFAULT_TOLERANCES) -> RankSplit:
    """(rank R, rank(Q - Q R^+ R), rank [R; Q])."""
    r = np.asarray(r, dtype=float)
    q = np.asarray(q, dtype=float)
    residual = q - q @ sla.pinv(r) @ r
    split = RankSplit(
        numerical_rank(r, tol.rank),
        numerical_rank(residual, tol.rank),
        numerical_rank(np.vstack([r, q]), tol.rank),
    )
    if not split.identity_holds:
        logger.warning(f"Rank split identity off: {split}")
    return split


def nullity(matrix: np.ndarray, tol: Tolerances = DEFAULT_TOLERANCES) -> int:
    return matrix.shape[1] - numerical_rank(matrix, tol.rank)


def nullity_pair(system: ConstraintSystem, tol: Tolerances = DEFAULT_TOLERANCES) -> Tuple[int, int]:
    """(nullity of Gamma_0, nullity of its transformed form); equal by construction."""
    return nullity(system.gamma0, tol), nullity(transformed_system(system), tol)
