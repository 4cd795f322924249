"""
Per-pair and per-path checks of the path criteria.

For a continent pair every connecting path P forces x_l - e x_m into null(P), e its effective sign.
Splitting the paths by e gives two groups; the pair converges to x_l = x_m (or x_l = -x_m) only
when exactly one of the group subspaces S_I, S_II is trivial.
"""
import logging
from typing import Optional, Sequence, Tuple

import numpy as np

from src.config import DEFAULT_TOLERANCES, Tolerances
from src.exception.analysis import MultipleNBSEdgesOnPathError
from src.models.conditions import PathGroups
from src.models.subspace import SubspaceBasis, intersection_of, sum_of
from src.models.topology import PathDescriptor
from src.utils.linalg import numerical_rank

logger = logging.getLogger(__name__)


def group_and_check_eq4(paths: Sequence[PathDescriptor], b_kl: SubspaceBasis, b_km: SubspaceBasis,
                        tol: Tolerances = DEFAULT_TOLERANCES, pair: Optional[Tuple[int, int]] = None) -> PathGroups:
    """
    Group paths by effective sign and test that exactly one of S_I, S_II is {0}.

    A pair without connecting paths holds vacuously.
    """
    d = b_kl.ambient
    if pair is None:
        pair = paths[0].pair if paths else (-1, -1)
    group_i = tuple(p for p in paths if p.effective_sign > 0)
    group_ii = tuple(p for p in paths if p.effective_sign < 0)
    base = sum_of([b_kl, b_km], d, tol.rank)
    s_i = intersection_of([base] + [p.null_space for p in group_i], d, tol.rank)
    s_ii = intersection_of([base] + [p.null_space for p in group_ii], d, tol.rank)

    if not paths:
        return PathGroups(pair, group_i, group_ii, s_i, s_ii, holds=True, relation=None)

    relation = None
    if s_i.is_trivial and not s_ii.is_trivial:
        relation = 1
    elif s_ii.is_trivial and not s_i.is_trivial:
        relation = -1
    logger.debug(f"Pair {pair}: |I|={len(group_i)} dim S_I={s_i.rank}, |II|={len(group_ii)} dim S_II={s_ii.rank}")
    return PathGroups(pair, group_i, group_ii, s_i, s_ii, holds=relation is not None, relation=relation)


def check_null_independence(path: PathDescriptor, tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
    """True iff the edges' null bases, concatenated, have full column rank."""
    cols = [b.columns for b in path.edge_nulls if b.rank > 0]
    if not cols:
        return True
    stacked = np.hstack(cols)
    return numerical_rank(stacked, tol.rank) == stacked.shape[1]


def endpoint_intersection(b_kl: SubspaceBasis, b_km: SubspaceBasis,
                          tol: Tolerances = DEFAULT_TOLERANCES) -> SubspaceBasis:
    return b_kl.intersect(b_km, tol=tol.rank)


def check_nbs_path_condition(path: PathDescriptor, b_kl: SubspaceBasis, b_km: SubspaceBasis,
                             tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
    """
    True iff every edge of the path other than its balancing edge has a null space meeting
    span(B_Kl) cap span(B_Km) only in 0. Paths without a balancing edge pass trivially.

    Raises:
        MultipleNBSEdgesOnPathError: the path carries more than one balancing edge.
    """
    if len(path.nbs_edges) > 1:
        raise MultipleNBSEdgesOnPathError([(path.edges[k].u, path.edges[k].v) for k in path.nbs_edges])
    if not path.nbs_edges:
        return True
    endpoint = endpoint_intersection(b_kl, b_km, tol)
    for k, null in enumerate(path.edge_nulls):
        if k in path.nbs_edges:
            continue
        if not null.intersect(endpoint, tol=tol.rank).is_trivial:
            return False
    return True
