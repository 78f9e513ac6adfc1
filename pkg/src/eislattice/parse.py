"""Parser for symbolic Eisenstein scalars and lattice vectors.

Grammar (whitespace ignored)::

    expr   := term (("+" | "-") term)*
    term   := unary ("*"? unary)*
    unary  := "-" unary | power
    power  := atom ("^" integer)?
    atom   := integer | "w" | "th" | basis | "(" expr ")"
    basis  := "r" digits ("'" | "''")? | "e" | "f"

w is the primitive sixth root of unity and th = w - w^-1.  Unprimed r_i are
basis vectors of the named lattice; r_i', r_i'', e and f are the frame
coordinates of Lambda = Lambda^4 + Lambda^4 + H.  Raw JSON (a list of
[a, b] pairs) is accepted as well.
"""

from __future__ import annotations

import json
import re

from .lattice import LatticeVector, standard_lattice
from .ring import ONE, OMEGA, THETA, ZERO, Eis, parse_eis

_TOKEN = re.compile(r"\s*(?:(\d+)|(th|w|r\d+(?:'')?'?|e|f)|(.))")


class ParseError(ValueError):
    pass


def _tokens(text: str) -> list:
    out = []
    pos = 0
    text = text.replace("−", "-").replace("ω", "w").replace("θ", "th")
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("name", name))
        elif op is not None and op.strip():
            if op not in "+-*^()":
                raise ParseError(f"unexpected character {op!r}")
            out.append(("op", op))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str) -> None:
        self.toks = _tokens(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def expect(self, op: str) -> None:
        if self.take() != ("op", op):
            raise ParseError(f"expected {op!r}")

    def parse(self):
        v = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input at token {self.peek()[1]!r}")
        return v

    def expr(self):
        v = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            w = self.term()
            v = _add(v, w if op == "+" else _neg(w))
        return v

    def term(self):
        v = self.unary()
        while True:
            if self.peek() == ("op", "*"):
                self.take()
            elif not (self.peek()[0] == "name" or self.peek() == ("op", "(")):
                break
            v = _mul(v, self.unary())  # "*" may be omitted, as in 2w or th(r1 + r2)
        return v

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return _neg(self.unary())
        return self.power()

    def power(self):
        v = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            sign = 1
            if self.peek() == ("op", "-"):
                self.take()
                sign = -1
            kind, n = self.take()
            if kind != "num":
                raise ParseError("exponent must be an integer")
            if not isinstance(v, Eis):
                raise ParseError("only scalars can be raised to a power")
            n *= sign
            if n < 0:
                if v.norm() != 1:
                    raise ParseError("negative powers need a unit")
                v, n = v.conjugate(), -n
            out = ONE
            for _ in range(n):
                out = out * v
            return out
        return v

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return Eis(val)
        if kind == "name":
            if val == "w":
                return OMEGA
            if val == "th":
                return THETA
            return {val: ONE}
        if (kind, val) == ("op", "("):
            v = self.expr()
            self.expect(")")
            return v
        raise ParseError(f"unexpected token {val!r}")


def _neg(v):
    return -v if isinstance(v, Eis) else {k: -c for k, c in v.items()}


def _add(v, w):
    if isinstance(v, Eis) and isinstance(w, Eis):
        return v + w
    if isinstance(v, Eis) or isinstance(w, Eis):
        if (v if isinstance(v, Eis) else w) == 0:
            return w if isinstance(v, Eis) else v
        raise ParseError("cannot add a scalar and a vector")
    out = dict(v)
    for k, c in w.items():
        out[k] = out.get(k, ZERO) + c
    return out


def _mul(v, w):
    if isinstance(v, Eis) and isinstance(w, Eis):
        return v * w
    if isinstance(v, Eis):
        return {k: v * c for k, c in w.items()}
    if isinstance(w, Eis):
        return {k: w * c for k, c in v.items()}
    raise ParseError("cannot multiply two vectors")


def parse_scalar(text: str) -> Eis:
    text = text.strip()
    if text.startswith("["):
        return parse_eis(json.loads(text))
    v = _Parser(text).parse()
    if not isinstance(v, Eis):
        raise ParseError("expected a scalar")
    return v


def _frame_slot(name: str) -> int | None:
    if name in ("e", "f"):
        return {"e": 8, "f": 9}[name]
    m = re.fullmatch(r"r(\d+)('{1,2})", name)
    if not m:
        return None
    i = int(m.group(1))
    if not 1 <= i <= 4:
        raise ParseError(f"{name}: frame vectors have indices 1..4")
    return (i - 1) + (0 if m.group(2) == "'" else 4)


def parse_vector(text: str, lattice: str | None = None) -> LatticeVector:
    """Vector from symbolic text or a JSON coordinate list.

    Frame names (primes, e, f) force the lattice Lambda; otherwise the
    named lattice (default lambda4) is used.
    """
    text = text.strip()
    if text.startswith("["):
        coords = [parse_eis(c) for c in json.loads(text)]
        lat = standard_lattice(lattice or "lambda4")
        if len(coords) != lat.rank:
            raise ParseError(f"expected {lat.rank} coordinates, got {len(coords)}")
        return lat.vector(coords)
    v = _Parser(text).parse()
    if isinstance(v, Eis):
        if v == 0:
            raise ParseError("give the zero vector as a JSON list")
        raise ParseError("expected a vector, got a scalar")
    frame = [k for k in v if _frame_slot(k) is not None]
    if frame:
        if len(frame) != len(v):
            raise ParseError("cannot mix frame and plain basis names")
        if lattice not in (None, "Lambda"):
            raise ParseError("frame names belong to the lattice Lambda")
        lat = standard_lattice("Lambda")
        coords = [ZERO] * lat.rank
        for k, c in v.items():
            coords[_frame_slot(k)] = coords[_frame_slot(k)] + c
        return lat.vector(coords)
    lat = standard_lattice(lattice or "lambda4")
    coords = [ZERO] * lat.rank
    for k, c in v.items():
        i = int(k[1:])
        if not 1 <= i <= lat.rank:
            raise ParseError(f"{k} is not a basis vector of a rank {lat.rank} lattice")
        coords[i - 1] = coords[i - 1] + c
    return lat.vector(coords)
