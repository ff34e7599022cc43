"""Slow reference implementations written straight from the definitions.

They only read the Cayley tables element by element, never the vectorized
kernels, so agreement with the package is an independent check.
"""

from __future__ import annotations

import itertools


def members(mask: int) -> set[int]:
    return {i for i in range(mask.bit_length()) if mask >> i & 1}


def component_sets(S) -> list[set[int]]:
    return [members(c) for c in S.components]


def homogeneous(S) -> list[int]:
    comps = component_sets(S)
    return sorted({x for c in comps for x in c})


def decompose(S, x: int) -> tuple[int, ...]:
    """The unique (x_g) with x_g in S_g summing to x, by exhaustive search."""
    comps = [sorted(c) for c in component_sets(S)]
    found = []
    for combo in itertools.product(*comps):
        total = S.zero
        for c in combo:
            total = int(S.add_table[total, c])
        if total == x:
            found.append(combo)
    assert len(found) == 1, (x, found)
    return found[0]


def is_submodule(M, elems: set[int]) -> bool:
    if M.zero not in elems:
        return False
    for a in elems:
        for b in elems:
            if int(M.add_table[a, b]) not in elems:
                return False
        for r in range(M.ring.order):
            if int(M.act_table[r, a]) not in elems:
                return False
    return True


def is_graded(M, elems: set[int]) -> bool:
    return all(set(decompose(M, x)) <= elems for x in elems)


def graded_submodules(M) -> list[frozenset[int]]:
    """Every graded submodule, by testing every subset containing 0 (small M only)."""
    n = M.order
    assert n <= 12, "subset oracle is exponential"
    others = [x for x in range(n) if x != M.zero]
    out = []
    for k in range(len(others) + 1):
        for extra in itertools.combinations(others, k):
            s = {M.zero, *extra}
            if is_submodule(M, s) and is_graded(M, s):
                out.append(frozenset(s))
    return out


def colon(M, K: set[int]) -> set[int]:
    return {r for r in range(M.ring.order) if all(int(M.act_table[r, m]) in K for m in range(M.order))}


def power(R, x: int, n: int) -> int:
    r = R.one
    for _ in range(n):
        r = int(R.mul_table[r, x])
    return r


def some_power_in(R, x: int, I: set[int]) -> bool:
    return any(power(R, x, n) in I for n in range(1, R.order + 1))


def graded_radical(R, I: set[int]) -> set[int]:
    if len(I) == R.order:
        return set(I)
    return {x for x in range(R.order) if all(some_power_in(R, c, I) for c in decompose(R, x))}


def prime_violation(M, K: set[int], excluded: set[int]):
    hr, hm = homogeneous(M.ring), homogeneous(M)
    col = colon(M, K)
    for r in hr:
        for m in hm:
            rm = int(M.act_table[r, m])
            if rm in K and rm not in excluded and m not in K and r not in col:
                return (r, m)
    return None


def graded_primes(M, subs) -> list[frozenset[int]]:
    return [P for P in subs if len(P) < M.order and prime_violation(M, set(P), set()) is None]


def grad_M(M, K: set[int], subs) -> set[int]:
    out = set(range(M.order))
    for P in graded_primes(M, subs):
        if K <= P:
            out &= P
    return out


def decide(family: str, M, K: set[int], excluded: set[int], subs, g: int | None = None) -> bool:
    """The defining implication of ``family`` with guard K minus ``excluded``."""
    R = M.ring
    if g is None:
        coefs, elems = homogeneous(R), homogeneous(M)
    else:
        coefs = sorted(component_sets(R)[R.group.identity])
        elems = sorted(component_sets(M)[g])
    col = colon(M, K)
    guard = lambda v: v in K and v not in excluded
    if family in ("prime", "primary"):
        ok = col if family == "prime" else graded_radical(R, col)
        return not any(guard(int(M.act_table[r, m])) and m not in K and r not in ok
                       for r in coefs for m in elems)
    target = K if family == "2-absorbing" else grad_M(M, K, subs)
    for x in coefs:
        for y in coefs:
            xy = int(R.mul_table[x, y])
            for m in elems:
                if (guard(int(M.act_table[xy, m])) and int(M.act_table[x, m]) not in target
                        and int(M.act_table[y, m]) not in target and xy not in col):
                    return False
    return True


def localization_order(M, S: list[int]) -> int:
    """Number of classes of pairs (m, s) under m/s ~ m'/s' iff u(s'm - sm') = 0 for some u in S."""
    R = M.ring
    neg = {a: next(b for b in range(M.order) if int(M.add_table[a, b]) == M.zero)
           for a in range(M.order)}
    pairs = [(m, s) for m in range(M.order) for s in S]

    def same(p, q):
        (m, s), (n, t) = p, q
        diff = int(M.add_table[int(M.act_table[t, m]), neg[int(M.act_table[s, n])]])
        return any(int(M.act_table[u, diff]) == M.zero for u in S)

    reps: list[tuple[int, int]] = []
    for p in pairs:
        if not any(same(p, q) for q in reps):
            reps.append(p)
    return len(reps)


def localized_members(M, S: list[int], K: set[int]) -> int:
    """|S^{-1}K| counted as classes of pairs (k, s), k in K."""
    R = M.ring
    neg = {a: next(b for b in range(M.order) if int(M.add_table[a, b]) == M.zero)
           for a in range(M.order)}

    def same(p, q):
        (m, s), (n, t) = p, q
        diff = int(M.add_table[int(M.act_table[t, m]), neg[int(M.act_table[s, n])]])
        return any(int(M.act_table[u, diff]) == M.zero for u in S)

    reps: list[tuple[int, int]] = []
    for p in [(k, s) for k in sorted(K) for s in S]:
        if not any(same(p, q) for q in reps):
            reps.append(p)
    return len(reps)


def additive_span(S, elems: set[int]) -> set[int]:
    out = {S.zero} | set(elems)
    while True:
        new = {int(S.add_table[a, b]) for a in out for b in out} | out
        if new == out:
            return out
        out = new


def submodule_power(M, K: set[int], n: int) -> set[int]:
    """K^n = (K:M)^n M for a multiplication module."""
    R = M.ring
    I = colon(M, K)
    In = {R.one}
    for _ in range(n):
        In = additive_span(R, {int(R.mul_table[a, b]) for a in In for b in I})
    return additive_span(M, {int(M.act_table[a, m]) for a in In for m in range(M.order)})
