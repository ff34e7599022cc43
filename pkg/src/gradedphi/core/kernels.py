"""Vectorised quantifier searches shared by the prime-style predicates.

Every search returns the canonically least violating tuple (lexicographic in
carrier order of the quantified elements) or None.
"""

from __future__ import annotations

import numpy as np


def pair_violation(act, in_k, excluded, coef_ok, coefs, elems):
    """First (r, m) with rm in K - excluded, m not in K and r not coef_ok.

    ``coefs`` and ``elems`` are sorted index arrays of the quantified ring and
    module elements; the three boolean arrays are indexed by carrier element.
    """
    if len(coefs) == 0 or len(elems) == 0:
        return None
    prod = act[np.ix_(coefs, elems)]
    viol = in_k[prod] & ~excluded[prod]
    viol &= ~in_k[elems][None, :]
    viol &= ~coef_ok[coefs][:, None]
    hits = np.argwhere(viol)
    if len(hits) == 0:
        return None
    i, j = hits[0]
    return int(coefs[i]), int(elems[j])


def triple_violation(mul, act, in_k, excluded, target, colon, coefs, elems):
    """First (x, y, m) with xym in K - excluded and xm, ym not in target, xy not in colon."""
    if len(coefs) == 0 or len(elems) == 0:
        return None
    xy = mul[np.ix_(coefs, coefs)]
    xym = act[xy[:, :, None], elems[None, None, :]]
    viol = in_k[xym] & ~excluded[xym]
    viol &= ~colon[xy][:, :, None]
    xm_out = ~target[act[np.ix_(coefs, elems)]]
    viol &= xm_out[:, None, :]
    viol &= xm_out[None, :, :]
    hits = np.argwhere(viol)
    if len(hits) == 0:
        return None
    i, j, k = hits[0]
    return int(coefs[i]), int(coefs[j]), int(elems[k])
