"""Polynomials over F_p: parsing, Groebner bases, normal forms.

This is the bridge from a textual ring description such as
``k[x,y]/(x^2, y^2)`` to the finite multiplication table consumed by
:mod:`tatebetti.artinalg`.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import NotArtinian, NotLocal, ParseError
from .exactfield import PrimeField

__all__ = [
    "MonomialOrder",
    "PolyRing",
    "Polynomial",
    "GroebnerBasis",
    "parse_poly",
    "buchberger",
    "normal_form",
    "standard_monomials",
    "build_quotient_algebra",
]

Monomial = tuple  # exponent vector, one entry per variable

DEFAULT_CAP = 10_000


@dataclass(frozen=True)
class MonomialOrder:
    """``degrevlex`` or ``lex``; variable precedence is the ring's variable order."""

    kind: str = "degrevlex"

    def __post_init__(self):
        if self.kind not in ("degrevlex", "lex"):
            raise ValueError(f"unknown monomial order {self.kind!r}")

    def key(self, m: Monomial):
        if self.kind == "lex":
            return m
        return (sum(m), tuple(-e for e in reversed(m)))


class PolyRing:
    """k[x1..xn] with a fixed monomial order."""

    def __init__(self, variables: Sequence[str], p: int, order: MonomialOrder | str = "degrevlex"):
        self.vars = tuple(variables)
        if len(set(self.vars)) != len(self.vars):
            raise ValueError(f"duplicate variable names in {self.vars}")
        for v in self.vars:
            if not re.fullmatch(r"[A-Za-z][A-Za-z0-9]*", v):
                raise ValueError(f"bad variable name {v!r}")
        self.field = p if isinstance(p, PrimeField) else PrimeField(p)
        self.p = self.field.p
        self.order = order if isinstance(order, MonomialOrder) else MonomialOrder(order)
        self.nvars = len(self.vars)

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.vars == other.vars
            and self.p == other.p
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.vars, self.p, self.order))

    def __repr__(self):
        return f"PolyRing({list(self.vars)}, p={self.p}, order={self.order.kind!r})"

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.monomial((0,) * self.nvars)

    def monomial(self, exps: Monomial, coeff: int = 1) -> "Polynomial":
        return Polynomial(self, {tuple(exps): coeff})

    def gen(self, i: int) -> "Polynomial":
        e = [0] * self.nvars
        e[i] = 1
        return self.monomial(tuple(e))

    def parse(self, text: str) -> "Polynomial":
        return parse_poly(text, self.vars, self.p, order=self.order)


class Polynomial:
    """Immutable sparse polynomial: a map monomial -> nonzero residue."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        p = ring.p
        self.ring = ring
        self.terms = {tuple(m): c % p for m, c in terms.items() if c % p}

    # -- inspection -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def lead_monomial(self) -> Monomial:
        return max(self.terms, key=self.ring.order.key)

    def lead_coeff(self) -> int:
        return self.terms[self.lead_monomial()]

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: self.ring.order.key(t[0]), reverse=True)

    def monic(self) -> "Polynomial":
        inv = self.ring.field.inv_scalar(self.lead_coeff())
        return self.scale(inv)

    # -- arithmetic -------------------------------------------------------

    def scale(self, c: int) -> "Polynomial":
        return Polynomial(self.ring, {m: v * c for m, v in self.terms.items()})

    def shift(self, mono: Monomial, c: int = 1) -> "Polynomial":
        """c * mono * self."""
        return Polynomial(
            self.ring, {tuple(a + b for a, b in zip(m, mono)): v * c for m, v in self.terms.items()}
        )

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Polynomial(self.ring, out)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = self.ring.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __repr__(self):
        return f"Polynomial({str(self)!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            factors = []
            for v, e in zip(self.ring.vars, m):
                if e == 1:
                    factors.append(v)
                elif e > 1:
                    factors.append(f"{v}^{e}")
            if c != 1 or not factors:
                factors.insert(0, str(c))
            parts.append("*".join(factors))
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9]*)|(.))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("nat", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(("var", m.group(2), start))
        elif m.group(3) in "+-*^":
            tokens.append((m.group(3), m.group(3), start))
        else:
            raise ParseError(f"unexpected character {m.group(3)!r}", text, start)
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    # poly   := ["-"] term (("+"|"-") term)*
    # term   := coeff ("*" factor)* | factor ("*" factor)*
    # factor := var ("^" nat)?

    def __init__(self, text, ring):
        self.text = text
        self.ring = ring
        self.index = {v: i for i, v in enumerate(ring.vars)}
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind):
        tok = self.tokens[self.i]
        if tok[0] != kind:
            want = {"nat": "a number", "var": "a variable", "end": "end of input"}.get(kind, repr(kind))
            got = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {want}, found {got}", self.text, tok[2])
        self.i += 1
        return tok

    def poly(self):
        sign = 1
        if self.peek()[0] == "-":
            self.take("-")
            sign = -1
        out = self.term().scale(sign)
        while self.peek()[0] in "+-":
            op = self.take(self.peek()[0])[0]
            t = self.term()
            out = out + t if op == "+" else out - t
        self.take("end")
        return out

    def term(self):
        exps = [0] * self.ring.nvars
        coeff = 1
        if self.peek()[0] == "nat":
            coeff = int(self.take("nat")[1])
        else:
            self.factor(exps)
        while self.peek()[0] == "*":
            self.take("*")
            self.factor(exps)
        return self.ring.monomial(tuple(exps), coeff)

    def factor(self, exps):
        _, name, pos = self.take("var")
        if name not in self.index:
            raise ParseError(f"unknown variable {name!r}", self.text, pos)
        e = 1
        if self.peek()[0] == "^":
            self.take("^")
            e = int(self.take("nat")[1])
        exps[self.index[name]] += e


def parse_poly(text: str, variables: Sequence[str], p: int, order="degrevlex") -> Polynomial:
    """Parse ``text`` into a polynomial over F_p in the given variables.

    >>> str(parse_poly("3*x*y + x*y", ["x", "y"], 101))
    '4*x*y'
    """
    ring = PolyRing(variables, p, order)
    if not text.strip():
        raise ParseError("empty polynomial", text, 0)
    return _Parser(text, ring).poly()


# ---------------------------------------------------------------------------
# Groebner bases


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def _quotient(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


@dataclass(frozen=True)
class GroebnerBasis:
    generators: tuple
    ring: PolyRing
    reduced: bool = True
    leads: tuple = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "leads", tuple(g.lead_monomial() for g in self.generators))

    @property
    def order(self) -> MonomialOrder:
        return self.ring.order

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)


def _reduce(f: Polynomial, basis: Sequence[Polynomial], leads=None) -> Polynomial:
    """Full reduction of f modulo basis (remainder of multivariate division)."""
    ring = f.ring
    key = ring.order.key
    if leads is None:
        leads = [g.lead_monomial() for g in basis]
    lcs = [ring.field.inv_scalar(g.terms[m]) for g, m in zip(basis, leads)]
    work = dict(f.terms)
    rem: dict = {}
    p = ring.p
    while work:
        m = max(work, key=key)
        c = work[m]
        for g, lm, inv in zip(basis, leads, lcs):
            if _divides(lm, m):
                q = _quotient(m, lm)
                factor = c * inv % p
                for gm, gc in g.terms.items():
                    t = tuple(a + b for a, b in zip(gm, q))
                    v = (work.get(t, 0) - factor * gc) % p
                    if v:
                        work[t] = v
                    else:
                        work.pop(t, None)
                break
        else:
            rem[m] = c
            del work[m]
    return Polynomial(ring, rem)


def _spoly(f: Polynomial, g: Polynomial) -> Polynomial:
    lf, lg = f.lead_monomial(), g.lead_monomial()
    lcm = _lcm(lf, lg)
    a = f.shift(_quotient(lcm, lf), f.ring.field.inv_scalar(f.lead_coeff()))
    b = g.shift(_quotient(lcm, lg), g.ring.field.inv_scalar(g.lead_coeff()))
    return a - b


def _interreduce(G: list[Polynomial]) -> list[Polynomial]:
    G = [g.monic() for g in G if not g.is_zero()]
    # drop generators whose leading monomial is divisible by another's
    minimal: list[Polynomial] = []
    for i, g in enumerate(G):
        lg = g.lead_monomial()
        redundant = False
        for j, h in enumerate(G):
            if i == j:
                continue
            lh = h.lead_monomial()
            if _divides(lh, lg) and (lh != lg or j < i):
                redundant = True
                break
        if not redundant:
            minimal.append(g)
    out = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1 :]
        lead = g.lead_monomial()
        tail = Polynomial(g.ring, {m: c for m, c in g.terms.items() if m != lead})
        r = _reduce(tail, others) if others else tail
        out.append(r + g.ring.monomial(lead))
    key = minimal[0].ring.order.key if minimal else None
    out.sort(key=lambda h: key(h.lead_monomial()))
    return out


def buchberger(gens: Iterable[Polynomial], order: MonomialOrder | str | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Pairs with coprime leading monomials are skipped (Buchberger's first
    criterion); no further pair elimination is attempted.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("buchberger needs at least one polynomial to know the ring")
    ring = gens[0].ring
    if order is not None:
        order = order if isinstance(order, MonomialOrder) else MonomialOrder(order)
        if order != ring.order:
            ring = PolyRing(ring.vars, ring.field, order)
            gens = [Polynomial(ring, g.terms) for g in gens]
    for g in gens:
        if g.ring.vars != ring.vars or g.ring.p != ring.p:
            raise ValueError("all generators must share one polynomial ring")
    G = [g.monic() for g in gens if not g.is_zero()]
    if not G:
        return GroebnerBasis((), ring)
    pairs = [(i, j) for j in range(len(G)) for i in range(j)]
    while pairs:
        i, j = pairs.pop(0)
        li, lj = G[i].lead_monomial(), G[j].lead_monomial()
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue
        r = _reduce(_spoly(G[i], G[j]), G)
        if not r.is_zero():
            G.append(r.monic())
            k = len(G) - 1
            pairs.extend((a, k) for a in range(k))
    return GroebnerBasis(tuple(_interreduce(G)), ring)


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    """Unique remainder of f modulo the Groebner basis G."""
    if f.ring != G.ring:
        if f.ring.vars != G.ring.vars or f.ring.p != G.ring.p:
            raise ValueError("polynomial and basis live in different rings")
        f = Polynomial(G.ring, f.terms)
    if not G.generators:
        return f
    return _reduce(f, G.generators, G.leads)


def standard_monomials(G: GroebnerBasis, cap: int = DEFAULT_CAP) -> list[Monomial]:
    """Monomials not divisible by any leading monomial, in increasing order.

    Raises NotArtinian when the quotient is infinite dimensional or larger
    than ``cap``.
    """
    n = G.ring.nvars
    leads = G.leads
    if any(all(e == 0 for e in m) for m in leads):
        return []
    bounds = []
    for v in range(n):
        pure = [m[v] for m in leads if all(e == 0 for k, e in enumerate(m) if k != v) and m[v] > 0]
        if not pure:
            raise NotArtinian(f"no power of {G.ring.vars[v]} lies in the leading ideal; quotient is infinite")
        bounds.append(min(pure))
    out = []
    # the box bound is exact for monomial ideals and an upper bound otherwise
    for m in itertools.product(*(range(b) for b in bounds)):
        if not any(_divides(lm, m) for lm in leads):
            out.append(tuple(m))
            if len(out) > cap:
                raise NotArtinian(f"more than {cap} standard monomials")
    out.sort(key=G.ring.order.key)
    return out


def build_quotient_algebra(G: GroebnerBasis, cap: int = DEFAULT_CAP):
    """The Artinian local algebra k[x]/I for the reduced Groebner basis G of I."""
    from .artinalg import LocalAlgebra

    ring = G.ring
    basis = standard_monomials(G, cap)
    if not basis:
        raise NotLocal("the ideal is the whole ring; the quotient is zero")
    d = len(basis)
    index = {m: i for i, m in enumerate(basis)}
    F = ring.field

    def coords(f: Polynomial) -> np.ndarray:
        v = np.zeros(d, dtype=np.int64)
        for m, c in normal_form(f, G).terms.items():
            v[index[m]] = c
        return v

    mult = np.zeros((d, d, d), dtype=np.int64)
    for i, a in enumerate(basis):
        for j in range(i, d):
            b = basis[j]
            v = coords(ring.monomial(tuple(x + y for x, y in zip(a, b))))
            mult[i, j] = v
            mult[j, i] = v
    gen_coords = np.array([coords(ring.gen(i)) for i in range(ring.nvars)], dtype=np.int64).reshape(
        ring.nvars, d
    )
    return LocalAlgebra(
        field=F,
        variables=ring.vars,
        basis_exps=tuple(basis),
        mult=mult,
        gen_coords=gen_coords,
        groebner=G,
    )
