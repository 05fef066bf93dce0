"""Exhaustive sweep over binary periods, one representative per symmetry class.

Rotating the period or swapping the two letters changes neither the
canonical system size nor the fork structure, so each class is visited once
through its lexicographically least member.
"""

from __future__ import annotations

import csv
import io
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .canonical import canonical_system, verify_prop_2_4
from .forks import ClassificationError, all_forks, classify, finite_forks, verify_theorem_3_16
from .systems import System, generate
from .words import PeriodicWord, fibonacci, least_rotation, swap_letters

log = logging.getLogger(__name__)

CHECKS = ("fibonacci", "forks", "lemma_2_8", "prop_2_4", "theorem_3_16", "majorization")
DEFAULT_MAX_LEN = 21
MAX_LEN_GUARD = 28


def lyndon_words(n: int) -> Iterator[str]:
    """Binary Lyndon words of length ``n`` in lexicographic order."""
    w = [-1]
    while w:
        w[-1] += 1
        m = len(w)
        if m == n:
            yield "".join("ab"[c] for c in w)
        while len(w) < n:
            w.append(w[len(w) - m])
        while w and w[-1] == 1:
            w.pop()


def class_key(u: str) -> str:
    return min(least_rotation(u), least_rotation(swap_letters(u)))


def symmetry_classes(max_len: int, min_len: int = 2) -> Iterator[str]:
    """Least representatives of primitive periods up to rotation and letter swap."""
    for n in range(min_len, max_len + 1):
        for u in lyndon_words(n):
            if least_rotation(swap_letters(u)) >= u:
                yield u


def check_word(u: str, checks: Iterable[str] = CHECKS) -> dict:
    """Run the named checks on ``(u)^inf``; returns size data and failures."""
    checks = set(checks)
    W = PeriodicWord(u)
    c = len(canonical_system(W))
    out = {"word": u, "n": c, "failures": []}

    def fail(name: str, detail: str) -> None:
        out["failures"].append({"word": u, "check": name, "detail": detail})

    if "fibonacci" in checks and len(u) > fibonacci(c):
        fail("fibonacci", f"|u|={len(u)} > F({c})={fibonacci(c)}")
    if checks & {"forks", "lemma_2_8"}:
        nf = len(finite_forks(W))
        if "forks" in checks and len(u) > fibonacci(nf + 1):
            fail("forks", f"|u|={len(u)} > F({nf}+1)")
        if "lemma_2_8" in checks and c != nf + 1:
            fail("lemma_2_8", f"|C|={c} forks={nf}")
    if "prop_2_4" in checks and not verify_prop_2_4(W, len(u) + 2):
        fail("prop_2_4", "factor/avoidance mismatch")
    if checks & {"theorem_3_16", "majorization"}:
        try:
            table = classify(all_forks(W), check=False)
        except ClassificationError as exc:
            fail("theorem_3_16", str(exc))
            return out
        if "theorem_3_16" in checks:
            rep = verify_theorem_3_16(table)
            if not rep.ok:
                fail("theorem_3_16", "; ".join(rep.failures))
        if "majorization" in checks:
            try:
                y = generate(System(table.n, table.psi, table.pi)).values
            except ValueError as exc:
                fail("majorization", str(exc))
            else:
                if any(z > yy for z, yy in zip(table.z, y)):
                    fail("majorization", f"z={table.z} y={y}")
    return out


def _check_chunk(args: tuple[list[str], tuple[str, ...]]) -> list[dict]:
    words, checks = args
    return [check_word(u, checks) for u in words]


@dataclass
class SweepReport:
    max_len: int
    per_n: dict[int, dict] = field(default_factory=dict)
    words_scanned: int = 0
    failures: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures and all(row["bound_met"] for row in self.per_n.values())

    def add(self, result: dict) -> None:
        self.words_scanned += 1
        self.failures.extend(result["failures"])
        n, u = result["n"], result["word"]
        row = self.per_n.get(n)
        # words arrive by (length, lex); keep the first longest one
        if row is None or len(u) > row["max_period"]:
            self.per_n[n] = {"max_period": len(u), "witness": u, "fib": fibonacci(n), "bound_met": len(u) <= fibonacci(n)}

    def to_dict(self) -> dict:
        return {
            "max_len": self.max_len,
            "per_n": {str(n): dict(self.per_n[n]) for n in sorted(self.per_n)},
            "words_scanned": self.words_scanned,
            "failures": list(self.failures),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "max_period", "witness", "fib", "bound_met"])
        for n in sorted(self.per_n):
            row = self.per_n[n]
            w.writerow([n, row["max_period"], row["witness"], row["fib"], str(row["bound_met"]).lower()])
        return buf.getvalue()


def sweep(max_len: int = DEFAULT_MAX_LEN, checks: Iterable[str] = CHECKS, jobs: int = 1,
          chunk_size: int = 512) -> SweepReport:
    if max_len < 2:
        raise ValueError("max_len must be at least 2")
    if max_len > MAX_LEN_GUARD:
        raise ValueError(f"max_len {max_len} exceeds the guard of {MAX_LEN_GUARD}")
    if max_len > DEFAULT_MAX_LEN:
        log.warning("max_len=%d: expect roughly %dx the runtime of max_len=%d",
                    max_len, 2 ** (max_len - DEFAULT_MAX_LEN), DEFAULT_MAX_LEN)
    wanted = set(checks)
    if wanted - set(CHECKS):
        raise ValueError(f"unknown checks: {sorted(wanted - set(CHECKS))}")
    checks = tuple(c for c in CHECKS if c in wanted)
    report = SweepReport(max_len)
    words = list(symmetry_classes(max_len))
    chunks = [(words[i : i + chunk_size], checks) for i in range(0, len(words), chunk_size)]
    if jobs <= 1:
        results = map(_check_chunk, chunks)
        for chunk in results:
            for r in chunk:
                report.add(r)
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for chunk in pool.map(_check_chunk, chunks):
                for r in chunk:
                    report.add(r)
    return report
