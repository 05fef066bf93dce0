"""The Fibonacci-length periods that need the fewest forbidden words.

``s0 = a``, ``t0 = b``, ``s(i+1) = s(i) s(i) t(i)``, ``t(i+1) = s(i) t(i)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .canonical import canonical_system
from .report import Report
from .words import PeriodicWord, fibonacci, is_primitive


@dataclass(frozen=True)
class ExtremalPair:
    s: str
    t: str
    i: int


def gen_extremal(i: int) -> ExtremalPair:
    if i < 0:
        raise ValueError("generation index must be non-negative")
    s, t = "a", "b"
    for _ in range(i):
        s, t = s + s + t, s + t
    return ExtremalPair(s, t, i)


def extremal_row(i: int) -> dict:
    p = gen_extremal(i)
    return {
        "i": i,
        "s": p.s,
        "t": p.t,
        "len_s": len(p.s),
        "len_t": len(p.t),
        "C_s": len(canonical_system(PeriodicWord(p.s))),
        "C_t": len(canonical_system(PeriodicWord(p.t))),
    }


def verify_extremal(i: int) -> Report:
    if i < 1:
        raise ValueError("verification starts at generation 1")
    p, prev = gen_extremal(i), gen_extremal(i - 1)
    rep = Report(data={"i": i})
    rep.check("recurrence", p.s == prev.s + prev.s + prev.t and p.t == prev.s + prev.t)
    rep.check("primitive", is_primitive(p.s) and is_primitive(p.t))
    rep.check("len_t", len(p.t) == fibonacci(2 * i), f"|t|={len(p.t)}")
    rep.check("len_s", len(p.s) == fibonacci(2 * i + 1), f"|s|={len(p.s)}")
    ct = len(canonical_system(PeriodicWord(p.t)))
    cs = len(canonical_system(PeriodicWord(p.s)))
    rep.data.update(C_t=ct, C_s=cs)
    rep.check("C_t", ct == 2 * i, f"|C(t^inf)|={ct}")
    rep.check("C_s", cs == 2 * i + 1, f"|C(s^inf)|={cs}")
    # with these sizes the periods meet |u| <= F(|C|) with equality
    rep.check("bound_t", len(p.t) == fibonacci(ct))
    rep.check("bound_s", len(p.s) == fibonacci(cs))
    return rep
