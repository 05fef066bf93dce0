"""Rewrites of a system that never decrease the last generated term.

Each rewrite returns a new :class:`System` or raises :class:`RewriteRejected`
when its precondition fails.  Index moves are expressed as renamings of
indices; ``psi`` and ``pi`` follow the moved index.
"""

from __future__ import annotations

from typing import Iterator, Mapping

from .systems import System, generate, theta


class RewriteRejected(ValueError):
    pass


def rename(S: System, moves: Mapping[int, int]) -> System:
    """Move indices simultaneously (``old -> new``) keeping their roles."""
    f = lambda x: moves.get(x, x)  # noqa: E731
    return System(
        S.n,
        {f(i): f(j) for i, j in S.psi.items()},
        {f(i): f(k) for i, k in S.pi.items()},
    )


def next_nonordinary(S: System, r: int) -> int | None:
    later = [t for t in S.L if t > r]
    return min(later) if later else None


def improve_shift_right(S: System, r: int) -> System:
    """Move exceptional ``r`` right, next to the following non-ordinary index."""
    if r not in S.I:
        raise RewriteRejected(f"{r} is not exceptional")
    ell = next_nonordinary(S, r)
    if ell in S.bad:
        raise RewriteRejected(f"next non-ordinary index {ell} is bad")
    if ell == r + 1:
        return S
    return rename(S, {r: ell - 1})


def improve_swap(S: System, r: int) -> System:
    """Swap exceptional ``r`` with the penalty/fine index ``r + 1``.

    If ``r + 2`` is ordinary the exceptional index jumps to ``r + 2``,
    otherwise to ``r + 1``; the penalty/fine index takes ``r``.
    """
    if not 2 <= r <= S.n - 2:
        raise RewriteRejected(f"r={r} outside 2..n-2")
    if r not in S.I:
        raise RewriteRejected(f"{r} is not exceptional")
    if r + 1 not in S.J | S.K:
        raise RewriteRejected(f"{r + 1} is neither penalty nor fine")
    if r + 1 in (S.psi[r], S.pi[r]):
        raise RewriteRejected(f"{r + 1} belongs to {r}")
    if r + 2 in S.bad:
        raise RewriteRejected(f"{r + 2} is bad")
    target = r + 2 if r + 2 not in S.L else r + 1
    return rename(S, {r: target, r + 1: r})


def improve_separate(S: System, p: int, q: int) -> System:
    """Rearrange ``[p, q]`` so its exceptional indices follow its penalty indices.

    Alternates a right shift and a swap until done; indices outside the
    segment and the sizes of ``I``, ``J`` inside it are unchanged.
    """
    if not 2 <= p <= q < S.n:
        raise RewriteRejected(f"need 2 <= p <= q < n (p={p}, q={q}, n={S.n})")
    if q + 1 not in S.L or q + 1 in S.bad:
        raise RewriteRejected(f"{q + 1} must be non-ordinary and not bad")
    seg = range(p, q + 1)
    if any(k in S.K for k in seg):
        raise RewriteRejected("segment contains a fine index")
    inside = sorted(i for i in S.I if p <= i <= q)
    if any(i in S.bad for i in inside[1:]):
        raise RewriteRejected("a non-least exceptional index in the segment is bad")
    while True:
        I1 = sorted(i for i in S.I if p <= i <= q)
        J1 = sorted(j for j in S.J if p <= j <= q)
        if not I1 or not J1 or min(I1) > max(J1):
            return S
        i0 = I1[0]
        j = min(x for x in J1 if x > i0)
        i = max(x for x in I1 if x < j)
        S = improve_shift_right(S, i)
        S = improve_swap(S, j - 1)


def improve_reassign(S: System, i1: int, i2: int) -> System:
    """Exchange the penalties of ``i1 < i2`` so the later one gets the smaller penalty."""
    if not (i1 in S.I and i2 in S.I and i1 < i2):
        raise RewriteRejected(f"need exceptional i1 < i2, got {i1}, {i2}")
    j1, j2 = S.psi[i1], S.psi[i2]
    if j1 > j2:
        return S
    if not j1 > S.pi[i2]:
        raise RewriteRejected(f"penalty {j1} does not exceed pi({i2})={S.pi[i2]}")
    psi = dict(S.psi)
    psi[i1], psi[i2] = j2, j1
    return System(S.n, psi, S.pi)


def improve_reassign_chain(S: System, indices) -> System:
    """Give ``i_1 < ... < i_k`` their penalties in decreasing order.

    Built from pairwise exchanges; rejected if the target assignment is not
    a valid system.
    """
    idx = sorted(indices)
    if any(i not in S.I for i in idx):
        raise RewriteRejected("all indices must be exceptional")
    targets = sorted((S.psi[i] for i in idx), reverse=True)
    goal = dict(S.psi)
    goal.update(zip(idx, targets))
    try:
        System(S.n, goal, S.pi)
    except ValueError as exc:
        raise RewriteRejected(f"target assignment is not a system: {exc}") from exc
    for top in range(len(idx) - 1, 0, -1):
        ik, want = idx[top], targets[top]
        if S.psi[ik] != want:
            it = S.psi_inv[want]
            S = improve_reassign(S, it, ik)
    return S


def is_selected(S: System, k: int) -> bool:
    """``k`` is a fine index whose influence segment touches no other fine index."""
    if k not in S.K:
        return False
    pre = [i for i, kk in S.pi.items() if kk == k]
    lo, hi = S.d[k], max(S.psi[i] for i in pre)
    seg = range(lo, hi + 1)
    return (
        {S.pi[i] for i in S.I if i in seg} == {k}
        and {S.pi[S.psi_inv[j]] for j in S.J if j in seg} == {k}
        and {x for x in S.K if x in seg} == {k}
    )


def select_fine_steps(S: System) -> Iterator[tuple[str, System]]:
    """Yield ``(step, system)`` after each stage of the fine-index selection."""
    if len(S.K) < 2:
        raise RewriteRejected("needs at least two fine indices")
    size = len(S.K)
    yield "start", S

    def anchor(S: System) -> tuple[int, int]:
        i0 = max(S.bad)
        return i0, S.pi[i0]

    # 1: no fine index strictly between i0 and k0
    while True:
        i0, k0 = anchor(S)
        between = sorted(k for k in S.K if i0 < k < k0)
        if not between:
            break
        k = between[0]
        pi = {i: (k if i0 <= i <= k and kk == k0 else kk) for i, kk in S.pi.items()}
        S = System(S.n, S.psi, pi)
        yield "step1", S
        if len(S.K) < size:
            return

    # 2: every exceptional index in [i0, k0] points at k0
    pi = {i: (k0 if i0 <= i <= k0 else kk) for i, kk in S.pi.items()}
    S = System(S.n, S.psi, pi)
    yield "step2", S

    # 3: no penalty index inside [i0, k0]
    S = improve_separate(S, i0, k0 - 1)
    i0, k0 = anchor(S)
    yield "step3", S

    # 4: penalties of I1 decrease left to right
    I1 = sorted(i for i in S.I if i0 <= i <= k0)
    S = improve_reassign_chain(S, I1)
    yield "step4", S

    # 5: k0 is the only fine index in [i0, j0]
    js = [S.psi[i] for i in I1]
    others = sorted(k for k in S.K if k != k0 and i0 <= k <= js[0])
    if others:
        k = others[0]
        s0 = max(s for s in range(len(I1)) if js[s] > k)
        pi = dict(S.pi)
        for s in range(s0 + 1):
            pi[I1[s]] = k
        S = System(S.n, S.psi, pi)
        yield "step5", S
        if len(S.K) < size:
            return
        i0, k0 = anchor(S)
        I1 = sorted(i for i in S.I if i0 <= i <= k0)

    # 6: the penalties in [i0, j0] are exactly those of I1
    while True:
        js = [S.psi[i] for i in I1]
        own = set(js)
        hit = None
        for s in reversed(range(len(I1))):
            cands = sorted(j for j in S.J if j not in own and i0 < j < js[s])
            if cands:
                hit = (s, cands[0])
                break
        if hit is None:
            break
        s, j = hit
        S = improve_reassign(S, S.psi_inv[j], I1[s])
        yield "step6", S

    # 7: push foreign exceptional indices out of [k0, j0]
    j0 = max(S.psi[i] for i in I1)
    expected = set(I1) | {S.psi[i] for i in I1} | {k0}
    if {t for t in S.L if i0 <= t <= j0} != expected:
        f0 = min(t for t in S.L if t > j0)
        S = improve_separate(S, k0 + 1, f0 - 1)
        yield "step7", S


def improve_select_fine(S: System) -> System:
    """Improve ``S`` until it has fewer fine indices or a selected one."""
    out = S
    for _, out in select_fine_steps(S):
        pass
    return out


def select_fine_done(before: System, after: System) -> bool:
    """Fewer fine indices, or a selected one with no bad index at or after it."""
    if len(after.K) < len(before.K):
        return True
    return any(is_selected(after, k) and all(d < k for d in after.bad) for k in after.K)


def lemma_4_5_conditions(S: System, S2: System, ell: int) -> bool:
    """Conditions (1)-(3) of the improvement lemma at ``ell`` for ``S -> S2``."""
    y, y2 = generate(S).values, generate(S2).values
    n = S.n
    if not 2 <= ell <= n:
        return False
    if y2[ell - 1] < y[ell - 1] or y2[ell] < y[ell]:
        return False
    for i in range(ell + 1, n + 1):
        t, t2 = theta(S, i), theta(S2, i)
        if t >= ell - 1 and t2 != t:
            return False
        if t < ell - 1 and y2[t2] < y[t]:
            return False
    return True


def dominates_from(S: System, S2: System, start: int) -> bool:
    y, y2 = generate(S).values, generate(S2).values
    return all(y2[i] >= y[i] for i in range(max(start, 0), S.n + 1))


REWRITES = ("shift_right", "swap", "separate", "reassign", "select_fine")


def sample_application(rng, kind: str, max_n: int = 12, tries: int = 100_000):
    """Draw a random system and apply rewrite ``kind`` to it.

    Returns ``(before, after, ell)`` where ``ell`` is the index at which the
    improvement lemma applies, or ``None`` for composite rewrites.
    """
    from .systems import random_system

    if kind not in REWRITES:
        raise ValueError(f"unknown rewrite {kind!r}")
    for _ in range(tries):
        if kind == "select_fine":
            S = random_system(rng, rng.randint(7, max_n))
            if len(S.K) < 2:
                continue
            return S, improve_select_fine(S), None
        S = random_system(rng, rng.randint(4, max_n))
        if not S.I:
            continue
        try:
            if kind == "shift_right":
                r = rng.choice(sorted(S.I))
                return S, improve_shift_right(S, r), next_nonordinary(S, r)
            if kind == "swap":
                r = rng.choice(sorted(S.I))
                S = improve_shift_right(S, r)
                r = next_nonordinary(S, r) - 1 if r + 1 not in S.L else r
                return S, improve_swap(S, r), r + 2
            if kind == "separate":
                # favour segments holding an exceptional index before a penalty
                pairs = [(i, t) for i in S.I for t in S.L
                         if t not in S.bad and any(i < j < t for j in S.J)
                         and not any(i <= k < t for k in S.K)]
                if not pairs:
                    continue
                i, t = rng.choice(pairs)
                lo = max([k + 1 for k in S.K if k < i] + [2])
                p, q = rng.randint(lo, i), t - 1
                return S, improve_separate(S, p, q), None
            if kind == "reassign":
                if len(S.I) < 2:
                    continue
                i1, i2 = sorted(rng.sample(sorted(S.I), 2))
                return S, improve_reassign(S, i1, i2), max(S.psi[i1], S.psi[i2])
        except RewriteRejected:
            continue
    raise RuntimeError(f"no applicable instance of {kind} after {tries} draws")
