"""Kodaira fiber types and candidate fiber configurations of rational elliptic surfaces."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import total_ordering

FINITE_TYPES = ("II", "III", "IV", "IV*", "III*", "II*")
_FINITE_EULER = {"II": 2, "III": 3, "IV": 4, "IV*": 8, "III*": 9, "II*": 10}
_FINITE_ROOT_RANK = {"II": 0, "III": 1, "IV": 2, "IV*": 6, "III*": 7, "II*": 8}
_ORDER = ("I", "I*") + FINITE_TYPES

J_CLASSES = ("0", "1", "inf", "generic")


class InconsistentFiber(ValueError):
    pass


@total_ordering
@dataclass(frozen=True)
class KodairaType:
    family: str  # "I", "I*" or one of FINITE_TYPES
    k: int = 0

    def __post_init__(self) -> None:
        if self.family not in _ORDER:
            raise ValueError(f"unknown Kodaira family {self.family!r}")
        if self.k < 0 or (self.family in FINITE_TYPES and self.k != 0):
            raise ValueError("bad index for Kodaira type")

    def __str__(self) -> str:
        if self.family == "I":
            return f"I{self.k}"
        if self.family == "I*":
            return f"I*{self.k}"
        return self.family

    def __lt__(self, other: "KodairaType") -> bool:
        return (_ORDER.index(self.family), self.k) < (_ORDER.index(other.family), other.k)

    @classmethod
    def parse(cls, text: str) -> "KodairaType":
        t = text.strip().replace("_", "")
        if t in FINITE_TYPES:
            return cls(t)
        if t.startswith("I*"):
            return cls("I*", int(t[2:] or 0))
        if t.startswith("I") and t[1:].isdigit():
            return cls("I", int(t[1:]))
        raise ValueError(f"cannot parse Kodaira type {text!r}")


def I(k: int) -> KodairaType:  # noqa: E743
    return KodairaType("I", k)


def I_star(k: int) -> KodairaType:
    return KodairaType("I*", k)


def euler_char(t: KodairaType) -> int:
    if t.family == "I":
        return t.k
    if t.family == "I*":
        return t.k + 6
    return _FINITE_EULER[t.family]


def fiber_root_rank(t: KodairaType) -> int:
    """Rank of the root lattice spanned by the fiber components missing the zero section."""
    if t.family == "I":
        return max(t.k - 1, 0)
    if t.family == "I*":
        return 4 + t.k
    return _FINITE_ROOT_RANK[t.family]


def _candidates(j_class: str, degree: int) -> tuple:
    if j_class == "inf":
        return (I(degree), I_star(degree))
    if j_class == "0":
        return {0: (I(0), I_star(0)), 1: (KodairaType("II"), KodairaType("IV*")), 2: (KodairaType("IV"), KodairaType("II*"))}[
            degree % 3
        ]
    if j_class == "1":
        return {0: (I(0), I_star(0)), 1: (KodairaType("III"), KodairaType("III*"))}[degree % 2]
    return (I(0), I_star(0))


def kodaira_type(j_class: str, local_degree: int, euler: int) -> KodairaType:
    """Fiber type from the value of J at the point, its local degree and the Euler number."""
    j_class = {"oo": "inf", "infinity": "inf", "∞": "inf"}.get(str(j_class), str(j_class))
    if j_class not in J_CLASSES:
        raise InconsistentFiber(f"unknown J class {j_class!r}")
    if local_degree < 0:
        raise InconsistentFiber("local degree must be nonnegative")
    if j_class == "generic":
        if local_degree != 0:
            raise InconsistentFiber("a generic J value has local degree 0")
    elif local_degree < 1:
        raise InconsistentFiber("special J values need local degree >= 1")
    for t in _candidates(j_class, local_degree):
        if euler_char(t) == euler:
            return t
    raise InconsistentFiber(f"no fiber with J={j_class}, degree {local_degree}, Euler number {euler}")


def valid_triples(max_degree: int = 12) -> list:
    """All (j_class, degree, euler) accepted by :func:`kodaira_type` with degree <= max_degree."""
    out = []
    for j in J_CLASSES:
        degs = [0] if j == "generic" else range(1, max_degree + 1)
        for d in degs:
            for t in _candidates(j, d):
                out.append((j, d, euler_char(t)))
    return out


# ---------------------------------------------------------------------------
# configurations


def singular_types(max_euler: int = 12) -> list:
    out = [I(k) for k in range(1, max_euler + 1)]
    out += [I_star(k) for k in range(0, max_euler - 5)]
    out += [KodairaType(f) for f in FINITE_TYPES if _FINITE_EULER[f] <= max_euler]
    return sorted(out)


def j_degree(types) -> int:
    return sum(t.k for t in types if t.family in ("I", "I*"))


def _over_zero_minimum(types) -> int:
    return sum(1 for t in types if t.family in ("II", "IV*")) + 2 * sum(1 for t in types if t.family in ("IV", "II*"))


def _over_one_minimum(types) -> int:
    return sum(1 for t in types if t.family in ("III", "III*"))


@dataclass(frozen=True)
class FiberConfiguration:
    types: tuple  # sorted KodairaTypes
    d: int  # degree of J
    fibers: tuple = field(default=())  # witness (type, J class, local degree) per fiber
    filler: dict = field(default_factory=dict, compare=False, hash=False)

    def __str__(self) -> str:
        return "[" + ", ".join(str(t) for t in self.types) + "]"

    @property
    def euler(self) -> int:
        return sum(euler_char(t) for t in self.types)

    @property
    def root_rank(self) -> int:
        return sum(fiber_root_rank(t) for t in self.types)


def check_configuration(types) -> tuple:
    """(ok, reason) for the four constraints on a multiset of singular fibers."""
    types = tuple(sorted(types))
    if sum(euler_char(t) for t in types) != 12:
        return False, "Euler numbers do not sum to 12"
    d = j_degree(types)
    if not 0 < d <= 12:
        return False, "J must be nonconstant of degree at most 12"
    s0 = _over_zero_minimum(types)
    if d < s0 or (d - s0) % 3:
        return False, "no degree assignment over J = 0"
    s1 = _over_one_minimum(types)
    if d < s1 or (d - s1) % 2:
        return False, "no degree assignment over J = 1"
    if sum(fiber_root_rank(t) for t in types) > 8:
        return False, "root rank exceeds 8"
    return True, "ok"


def _witness(types) -> tuple:
    fibers = []
    for t in types:
        if t.family in ("I", "I*") and t.k > 0:
            fibers.append((t, "inf", t.k))
        elif t.family in ("II", "IV*"):
            fibers.append((t, "0", 1))
        elif t.family in ("IV", "II*"):
            fibers.append((t, "0", 2))
        elif t.family in ("III", "III*"):
            fibers.append((t, "1", 1))
        else:
            fibers.append((t, "generic", 0))
    d = j_degree(types)
    filler = {"0": d - _over_zero_minimum(types), "1": d - _over_one_minimum(types)}
    return tuple(fibers), filler


def enumerate_configurations() -> list:
    """All candidate configurations (necessary conditions only), deterministic order."""
    kinds = singular_types()
    out = []

    def rec(start: int, remaining: int, acc: list) -> None:
        if remaining == 0:
            ok, _ = check_configuration(acc)
            if ok:
                types = tuple(sorted(acc))
                fibers, filler = _witness(types)
                out.append(FiberConfiguration(types, j_degree(types), fibers, filler))
            return
        for i in range(start, len(kinds)):
            t = kinds[i]
            x = euler_char(t)
            if x <= remaining:
                acc.append(t)
                rec(i, remaining - x, acc)
                acc.pop()

    rec(0, 12, [])
    out.sort(key=lambda c: c.types)
    return out
