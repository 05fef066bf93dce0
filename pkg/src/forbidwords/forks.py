"""Forks (bispecial factors) of a periodic word and their significance table.

A finite factor ``v`` of ``W`` is a fork when ``va``, ``vb``, ``av`` and ``bv``
all occur in ``W``; the whole word ``W`` is a fork as well and is represented
by the :data:`ROOT` sentinel.  Forks are listed by significance (number of
cyclic occurrences in the period), ROOT first with significance 1 and the
empty word last with significance ``|u|``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Union

from .canonical import canonical_system
from .report import Report
from .words import ALPHABET, PeriodicWord, cyclic_windows, is_factor, significance

EXCEPTIONAL = "exceptional"
PENALTY = "penalty"
FINE = "fine"
ORDINARY = "ordinary"
BOUNDARY = "boundary"


class _Root:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "ROOT"

    def __reduce__(self):
        return (_Root, ())


ROOT = _Root()
Fork = Union[str, _Root]


class ClassificationError(RuntimeError):
    """A fork-table property that should hold for every periodic word failed."""


def fork_str(f: Fork) -> str:
    return "<ROOT>" if f is ROOT else f


def fork_significance(W: PeriodicWord, f: Fork) -> int:
    return 1 if f is ROOT else significance(W, f)


def contained(p: Fork, q: Fork) -> bool:
    """Factor order on forks: ``p`` occurs in ``q`` (everything occurs in ROOT)."""
    if q is ROOT:
        return True
    if p is ROOT:
        return False
    return p in q


def is_fork(W: PeriodicWord, v: str) -> bool:
    return all(is_factor(W, w) for x in ALPHABET for w in (v + x, x + v))


def least_fork(W: PeriodicWord, v: str) -> Fork:
    """The smallest fork containing the factor ``v`` (``r(v)``).

    A factor with a single right (left) extension occurs inside every fork
    together with that extension, so extending until both sides branch
    reaches ``r(v)``.  Forks are shorter than the period, so once the
    extension reaches ``|u|`` letters the answer is ROOT.
    """
    if not is_factor(W, v):
        raise ValueError(f"{v!r} is not a factor of {W}")
    d = len(W.period)
    while len(v) < d:
        right = [x for x in ALPHABET if is_factor(W, v + x)]
        if len(right) == 1:
            v = v + right[0]
            continue
        left = [x for x in ALPHABET if is_factor(W, x + v)]
        if len(left) == 1:
            v = left[0] + v
            continue
        return v
    return ROOT


def finite_forks(W: PeriodicWord) -> list[str]:
    d = len(W.period)
    wins = [cyclic_windows(W, k) for k in range(d + 1)]
    return [
        v
        for k in range(d)
        for v in wins[k]
        if all(v + x in wins[k + 1] and x + v in wins[k + 1] for x in ALPHABET)
    ]


def _order_key(W: PeriodicWord, v: str) -> tuple[int, int, str]:
    return (significance(W, v), -len(v), v)


@dataclass(frozen=True)
class ForkTable:
    word: PeriodicWord
    entries: tuple[Fork, ...]
    z: tuple[int, ...]
    roles: tuple[str, ...]
    psi: dict[int, int] = field(default_factory=dict)
    pi: dict[int, int] = field(default_factory=dict)
    # letter x with r(v_psi(i) x) == v_(i-1), per exceptional index i
    orientation: dict[int, str] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.entries) - 1

    def index(self, f: Fork) -> int:
        return self.entries.index(f)

    def indices(self, role: str) -> list[int]:
        return [i for i, r in enumerate(self.roles) if r == role]

    @property
    def exceptional(self) -> list[int]:
        return self.indices(EXCEPTIONAL)

    def to_dict(self) -> dict:
        return {
            "word": self.word.period,
            "entries": [fork_str(f) for f in self.entries],
            "z": list(self.z),
            "roles": list(self.roles),
            "psi": {str(i): j for i, j in sorted(self.psi.items())},
            "pi": {str(i): k for i, k in sorted(self.pi.items())},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def all_forks(W: PeriodicWord) -> ForkTable:
    """Every fork of ``W`` ordered by (significance, longer first, lexicographic)."""
    forks = sorted(finite_forks(W), key=lambda v: _order_key(W, v))
    entries: tuple[Fork, ...] = (ROOT, *forks)
    z = tuple(fork_significance(W, f) for f in entries)
    roles = tuple(BOUNDARY if i < 2 else ORDINARY for i in range(len(entries)))
    return ForkTable(W, entries, z, roles)


def _fine_index(table: ForkTable, i: int, j: int, x: str, C: frozenset[str]) -> int | None:
    W, z, entries = table.word, table.z, table.entries
    vj = entries[j]
    for k in range(i + 1, j):
        vk = entries[k]
        if vk is ROOT or len(vk) <= len(vj) or not vk.endswith(vj):
            continue
        if z[k] > z[k - 1] + z[i - 2] or z[k] >= z[j]:
            continue
        if k >= 2 and z[k] > z[k - 1] + z[k - 2]:
            continue
        if not any(y + vk + x in C for y in ALPHABET):
            continue
        if fork_significance(W, least_fork(W, vk + x)) > z[i - 2]:
            continue
        return k
    return None


def classify(table: ForkTable, check: bool = True) -> ForkTable:
    """Label exceptional, penalty and fine indices and attach the maps between them.

    Raises :class:`ClassificationError` (with the offending indices) if an
    index cannot be assigned or, with ``check``, if any clause of
    :func:`verify_theorem_3_16` fails.
    """
    W, z, entries = table.word, table.z, table.entries
    C = canonical_system(W)
    exceptional = [i for i in range(2, len(z)) if z[i] > z[i - 1] + z[i - 2]]
    psi: dict[int, int] = {}
    pi: dict[int, int] = {}
    orientation: dict[int, str] = {}
    for i in exceptional:
        prev = entries[i - 1]
        if prev is ROOT:
            raise ClassificationError(f"exceptional index {i} follows ROOT")
        prefix = next(prev[:m] for m in range(len(prev) - 1, -1, -1) if prev[:m] in entries)
        j = table.index(prefix)
        x = prev[len(prefix)]
        psi[i] = j
        orientation[i] = x
        k = _fine_index(table, i, j, x, C)
        if k is None:
            raise ClassificationError(f"no fine index for exceptional {i} (penalty {j}) in {W}")
        pi[i] = k
    roles = list(table.roles)
    for i in exceptional:
        roles[i] = EXCEPTIONAL
    for k in pi.values():
        roles[k] = FINE
    for j in psi.values():
        roles[j] = PENALTY
    out = replace(table, roles=tuple(roles), psi=psi, pi=pi, orientation=orientation)
    if check:
        report = verify_theorem_3_16(out)
        if not report.ok:
            raise ClassificationError(f"{W}: " + "; ".join(report.failures))
    return out


def verify_theorem_3_16(table: ForkTable) -> Report:
    W, z, entries = table.word, table.z, table.entries
    n = table.n
    rep = Report()
    rep.check("z0", z[0] == 1)
    if n >= 1:
        rep.check("z1", z[1] == 2, f"z1={z[1]}")
        rep.check("zn", entries[n] == "" and z[n] == len(W.period))
    rep.check("monotone", all(z[i - 1] <= z[i] for i in range(1, n + 1)))
    rep.check("doubling", all(z[i] <= 2 * z[i - 1] for i in range(1, n + 1)))

    exceptional = [i for i in range(2, n + 1) if z[i] > z[i - 1] + z[i - 2]]
    rep.check("exceptional_set", sorted(table.psi) == exceptional == table.exceptional)
    for i in exceptional:
        if i not in table.psi or i not in table.pi:
            rep.check("assigned", False, f"i={i}")
            continue
        j, k = table.psi[i], table.pi[i]
        x = table.orientation[i]
        y = "b" if x == "a" else "a"
        rep.check("order", i < k < j, f"i={i} k={k} j={j}")
        rep.check("prop_3_9", z[j] <= z[j - 1] + z[i - 1], f"i={i} j={j}")
        rep.check("prop_3_11", z[k] <= z[k - 1] + z[i - 2] and z[k] < z[j] and j >= i + 2, f"i={i} k={k} j={j}")
        vi, vj = entries[i], entries[j]
        rep.check(
            "prop_3_7",
            z[i] == 2 * z[i - 1]
            and z[i - 1] > z[i - 2]
            and least_fork(W, vi + "a") == entries[i - 1]
            and least_fork(W, vi + "b") == entries[i - 1],
            f"i={i}",
        )
        ra, rb = least_fork(W, vj + x), least_fork(W, vj + y)
        rep.check(
            "prop_3_13",
            ra == entries[i - 1] and fork_significance(W, ra) < fork_significance(W, rb),
            f"i={i} j={j}",
        )
    penalties = list(table.psi.values())
    rep.check("psi_injective", len(set(penalties)) == len(penalties), f"psi={table.psi}")
    rep.check("pi_psi_disjoint", not set(table.pi.values()) & set(penalties), f"pi={table.pi} psi={table.psi}")
    rep.check(
        "regular",
        not (set(penalties) | set(table.pi.values())) & set(exceptional),
        f"psi={table.psi} pi={table.pi}",
    )
    return rep


def verify_lemma_2_8(W: PeriodicWord) -> Report:
    c = len(canonical_system(W))
    n = len(finite_forks(W))
    rep = Report(data={"canonical_size": c, "finite_forks": n})
    # every fork has exactly two right extensions over {a, b}
    rep.check("lemma_2_8", c >= 1 + n * (2 - 1), f"|C|={c} forks={n}")
    rep.check("equality", c == n + 1, f"|C|={c} forks={n}")
    return rep
