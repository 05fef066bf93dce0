"""Abstract index systems and the integer sequences they generate.

A system on indices ``0..n`` marks some indices in ``{2..n}`` as exceptional
(``I``), penalty (``J``) or fine (``K``), with a bijection ``psi: I -> J`` and
a surjection ``pi: I -> K`` satisfying ``i < pi(i) < psi(i)``.  Both maps are
stored; ``I``, ``J`` and ``K`` are read off them.  Each index ``r >= 2`` has a
back-reference ``theta(r) < r`` and the generated sequence obeys
``x[r] = x[r-1] + x[theta(r)]``.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from types import MappingProxyType
from typing import Iterator, Mapping, Sequence

from .forks import all_forks, classify
from .report import Report
from .words import PeriodicWord, fibonacci


class InvalidSystem(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class System:
    n: int
    psi: Mapping[int, int]
    pi: Mapping[int, int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "psi", MappingProxyType(dict(self.psi)))
        object.__setattr__(self, "pi", MappingProxyType(dict(self.pi)))
        self._validate()

    def _validate(self) -> None:
        n, psi, pi = self.n, self.psi, self.pi
        if n < 0:
            raise InvalidSystem(f"n={n} is negative")
        if set(psi) != set(pi):
            raise InvalidSystem("psi and pi must share the exceptional domain")
        if len(set(psi.values())) != len(psi):
            raise InvalidSystem(f"psi is not injective: {dict(psi)}")
        I, J, K = self.I, self.J, self.K
        for x in I | J | K:
            if not 2 <= x <= n:
                raise InvalidSystem(f"index {x} outside 2..{n}")
        if I & J or I & K or J & K:
            raise InvalidSystem(f"I={sorted(I)} J={sorted(J)} K={sorted(K)} overlap")
        for i in I:
            if not i < pi[i] < psi[i]:
                raise InvalidSystem(f"need {i} < pi={pi[i]} < psi={psi[i]}")

    @classmethod
    def empty(cls, n: int) -> "System":
        return cls(n, {}, {})

    def _key(self):
        return (self.n, tuple(sorted(self.psi.items())), tuple(sorted(self.pi.items())))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, System) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"System(n={self.n}, psi={dict(self.psi)}, pi={dict(self.pi)})"

    @cached_property
    def I(self) -> frozenset[int]:
        return frozenset(self.psi)

    @cached_property
    def J(self) -> frozenset[int]:
        return frozenset(self.psi.values())

    @cached_property
    def K(self) -> frozenset[int]:
        return frozenset(self.pi.values())

    @cached_property
    def L(self) -> frozenset[int]:
        """Non-ordinary indices."""
        return self.I | self.J | self.K

    @cached_property
    def psi_inv(self) -> dict[int, int]:
        return {j: i for i, j in self.psi.items()}

    @cached_property
    def d(self) -> dict[int, int]:
        """Least exceptional preimage of each fine index."""
        out: dict[int, int] = {}
        for i, k in self.pi.items():
            out[k] = min(out.get(k, i), i)
        return out

    @cached_property
    def bad(self) -> frozenset[int]:
        return frozenset(self.d.values())

    def role(self, r: int) -> str:
        if r in self.I:
            return "exceptional"
        if r in self.J:
            return "penalty"
        if r in self.K:
            return "fine"
        return "ordinary"

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "I": sorted(self.I),
            "J": sorted(self.J),
            "K": sorted(self.K),
            "psi": {str(i): j for i, j in sorted(self.psi.items())},
            "pi": {str(i): k for i, k in sorted(self.pi.items())},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "System":
        S = cls(int(data["n"]), {int(i): int(j) for i, j in data["psi"].items()},
                {int(i): int(k) for i, k in data["pi"].items()})
        for name in ("I", "J", "K"):
            if name in data and set(data[name]) != set(getattr(S, name)):
                raise InvalidSystem(f"{name} disagrees with psi/pi")
        return S


def theta(S: System, r: int) -> int:
    if not 2 <= r <= S.n:
        raise IndexError(f"theta undefined at r={r} (n={S.n})")
    if r in S.I:
        return r - 1
    if r in S.J:
        return S.psi_inv[r] - 1
    if r in S.K:
        return S.d[r] - 2
    return r - 2


@dataclass(frozen=True)
class GeneratedSequence:
    values: tuple
    system: System
    start: tuple

    def __getitem__(self, i):
        return self.values[i]

    def __len__(self) -> int:
        return len(self.values)

    @property
    def last(self):
        return self.values[-1]


def generate(S: System, x0=1, x1=2) -> GeneratedSequence:
    """The sequence of ``S`` started from ``(x0, x1)``; ``(1, 2)`` by default."""
    xs = [x0, x1][: S.n + 1]
    for r in range(2, S.n + 1):
        xs.append(xs[r - 1] + xs[theta(S, r)])
    return GeneratedSequence(tuple(xs), S, (x0, x1))


def from_word(W: PeriodicWord) -> System:
    table = classify(all_forks(W))
    return System(table.n, table.psi, table.pi)


def verify_majorization(W: PeriodicWord) -> Report:
    table = classify(all_forks(W))
    S = System(table.n, table.psi, table.pi)
    y = generate(S).values
    rep = Report(data={"z": list(table.z), "y": list(y)})
    rep.check("majorization", all(z <= yy for z, yy in zip(table.z, y)), f"z={table.z} y={y}")
    return rep


def run_length_formula(y: GeneratedSequence, k: int, t: int) -> int:
    """``F(t+1) y[k-1] + F(t) y[k-2]``, valid when ``k..k+t`` are all ordinary."""
    S = y.system
    if k < 2 or t < -1 or k + t > S.n:
        raise ValueError(f"need k >= 2, t >= -1, k+t <= n (k={k}, t={t}, n={S.n})")
    if any(r in S.L for r in range(k, k + t + 1)):
        raise ValueError(f"indices {k}..{k + t} are not all ordinary")
    return fibonacci(t + 1) * y[k - 1] + fibonacci(t) * y[k - 2]


def ordinary_runs(S: System) -> list[tuple[int, int]]:
    """Maximal runs ``k..k+t`` of ordinary indices within ``2..n``, as ``(k, t)``."""
    runs = []
    r = 2
    while r <= S.n:
        if r in S.L:
            r += 1
            continue
        k = r
        while r + 1 <= S.n and r + 1 not in S.L:
            r += 1
        runs.append((k, r - k))
        r += 1
    return runs


def shift_left(S: System) -> System:
    if 2 in S.L:
        raise InvalidSystem("index 2 must be ordinary to shift left")
    return System(S.n - 1, {i - 1: j - 1 for i, j in S.psi.items()}, {i - 1: k - 1 for i, k in S.pi.items()})


def _completions(n: int, I: Sequence[int]) -> Iterator[System]:
    """All systems with exceptional set exactly ``I``."""
    free = [x for x in range(2, n + 1) if x not in I]
    m = len(I)

    def assign_psi(pos: int, used: tuple[int, ...]):
        if pos == m:
            yield used
            return
        i = I[pos]
        for j in free:
            if j >= i + 2 and j not in used:
                yield from assign_psi(pos + 1, used + (j,))

    for js in assign_psi(0, ()):
        Jset = set(js)
        choices = [[k for k in range(i + 1, j) if k not in Jset and k not in I] for i, j in zip(I, js)]
        psi = dict(zip(I, js))
        for ks in product(*choices):
            yield System(n, psi, dict(zip(I, ks)))


def enumerate_systems(n: int) -> Iterator[System]:
    """Every system on ``0..n``, the empty one first."""
    idx = list(range(2, n + 1))

    def subsets(start: int, chosen: tuple[int, ...]):
        yield chosen
        for p in range(start, len(idx)):
            yield from subsets(p + 1, chosen + (idx[p],))

    by_size: dict[int, list[tuple[int, ...]]] = {}
    for I in subsets(0, ()):
        by_size.setdefault(len(I), []).append(I)
    for size in sorted(by_size):
        for I in by_size[size]:
            yield from _completions(n, I)


MAX_ENUMERATION_N = 11


def verify_theorem_4_15(n: int, budget: int = 50_000_000) -> Report:
    """Exhaustively check ``max y_n == F(n+1)`` over all systems, attained by the empty one."""
    if n > MAX_ENUMERATION_N:
        raise BudgetExceeded(f"enumeration budget exceeded: n={n} > {MAX_ENUMERATION_N}")
    best = None
    witness = None
    count = 0
    for S in enumerate_systems(n):
        count += 1
        if count > budget:
            raise BudgetExceeded(f"enumeration budget exceeded: more than {budget} systems")
        yn = generate(S).last
        if best is None or yn > best:
            best, witness = yn, S
    fib = fibonacci(n + 1)
    rep = Report(data={
        "n": n,
        "max_yn": best,
        "fib": fib,
        "witness_system": witness.to_dict(),
        "count_enumerated": count,
    })
    rep.check("bound", best == fib, f"max y_n={best} F(n+1)={fib}")
    rep.check("empty_attains", generate(System.empty(n)).last == fib)
    return rep


def _admissible(a, b) -> bool:
    return 0 <= a <= b <= 2 * a


def verify_lemma_4_13(S: System, a, b) -> bool:
    """Single-fine case: the empty system's last term dominates ``S``'s from ``(a, b)``."""
    if len(S.K) != 1:
        raise ValueError("needs exactly one fine index")
    if not _admissible(a, b):
        raise ValueError(f"start ({a}, {b}) is not admissible")
    return generate(System.empty(S.n), a, b).last >= generate(S, a, b).last


def decomposition_holds(S: System, a, b) -> bool:
    """``P(a, b) == (b/2) P(1, 2) + (a - b/2) P(1, 0)`` term by term, exactly."""
    half = Fraction(b, 2)
    lhs = generate(S, a, b).values
    p12 = generate(S, 1, 2).values
    p10 = generate(S, 1, 0).values
    return all(x == half * p + (a - half) * q for x, p, q in zip(lhs, p12, p10))


def random_system(rng: random.Random, n: int, m: int | None = None, tries: int = 200) -> System:
    """A random system on ``0..n``; ``m`` exceptional indices if given (best effort)."""
    # I, J and at least one fine index fit in 2..n
    top = max(0, (n - 2) // 2)
    for _ in range(tries):
        size = rng.randint(0, top) if m is None else m
        pool = list(range(2, n + 1))
        I = sorted(rng.sample(pool, size)) if size <= len(pool) else None
        if I is None:
            continue
        free = [x for x in pool if x not in I]
        psi: dict[int, int] = {}
        ok = True
        for i in rng.sample(I, len(I)):
            cands = [j for j in free if j >= i + 2 and j not in psi.values()]
            if not cands:
                ok = False
                break
            psi[i] = rng.choice(cands)
        if not ok:
            continue
        J = set(psi.values())
        pi: dict[int, int] = {}
        for i in rng.sample(I, len(I)):
            cands = [k for k in range(i + 1, psi[i]) if k not in J and k not in psi]
            if not cands:
                ok = False
                break
            reuse = [k for k in cands if k in pi.values()]
            pi[i] = rng.choice(reuse) if reuse and rng.random() < 0.5 else rng.choice(cands)
        if ok:
            return System(n, psi, pi)
    raise ValueError(f"could not sample a system with n={n}, m={m}")
