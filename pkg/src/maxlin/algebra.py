"""Exact multivariate polynomials over the rationals, binomial generators of
distributive lattices, monomial parameterizations, and a Buchberger check.

Rational coefficients are ``fractions.Fraction`` (always reduced, positive
denominator). Variables are named by family and index; the fixed total order
on variables is (family name, index tuple), compared lexicographically.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .errors import ParseError, UnboundVariableError, UnmappedVariableError
from .poset import State, StateLattice, incomparable_pairs, lattice_meet_join, state_leq
from .report import Report

Scalar = Union[int, Fraction]

FAMILIES = ("alpha", "p", "q", "t", "theta", "x")


class Variable:
    """A named indexed variable, totally ordered by (family, index).

    Instances are interned (one object per name) with a precomputed sort key
    and hash: variables are compared and hashed millions of times inside the
    Buchberger loop, and interning lets those comparisons short-circuit on
    identity.
    """

    __slots__ = ("family", "index", "_key", "_hash")

    _interned: dict[tuple, "Variable"] = {}

    def __new__(cls, family: str, index: tuple[int, ...] = ()):
        key = (family, tuple(index))
        cached = cls._interned.get(key)
        if cached is not None:
            return cached
        if family not in FAMILIES:
            raise ValueError(f"unknown variable family {family!r}")
        obj = super().__new__(cls)
        object.__setattr__(obj, "family", family)
        object.__setattr__(obj, "index", key[1])
        object.__setattr__(obj, "_key", key)
        object.__setattr__(obj, "_hash", hash(key))
        cls._interned[key] = obj
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("Variable is immutable")

    def __eq__(self, other) -> bool:
        return self is other or (isinstance(other, Variable) and self._key == other._key)

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Variable") -> bool:
        return self._key < other._key

    def __le__(self, other: "Variable") -> bool:
        return self._key <= other._key

    def __gt__(self, other: "Variable") -> bool:
        return self._key > other._key

    def __ge__(self, other: "Variable") -> bool:
        return self._key >= other._key

    def __repr__(self) -> str:
        return f"Variable({self.family!r}, {self.index!r})"

    def key_text(self) -> str:
        """Machine form used by the polynomial grammar, e.g. q[01011], theta[3,1]."""
        if self.family == "t":
            return "t"
        if self.family in ("p", "q"):
            return f"{self.family}[{state_digits(self.index)}]"
        return f"{self.family}[{','.join(str(i) for i in self.index)}]"

    def display_text(self) -> str:
        """Display form with superscripted vertex, e.g. theta1^(3), x0^(1)."""
        if self.family == "t":
            return "t"
        if self.family in ("p", "q"):
            return f"{self.family}{state_digits(self.index)}"
        if len(self.index) == 1:
            return f"{self.family}{self.index[0]}"
        i, j = self.index
        return f"{self.family}{j}^({i})"


def p_var(state: State) -> Variable:
    return Variable("p", tuple(state))


def q_var(state: State) -> Variable:
    return Variable("q", tuple(state))


def t_var() -> Variable:
    return Variable("t")


def theta_var(i: int, j: int) -> Variable:
    return Variable("theta", (i, j))


def alpha_var(i: int, j: int) -> Variable:
    return Variable("alpha", (i, j))


def x_var(i: int, r: int) -> Variable:
    return Variable("x", (i, r))


def x_ground_var(i: int) -> Variable:
    """Single-index x variable used when the lattice is a plain ideal lattice."""
    return Variable("x", (i,))


def state_digits(state: Sequence[int]) -> str:
    if any(not 0 <= v <= 9 for v in state):
        raise ValueError(f"state {tuple(state)} has entries outside 0..9")
    return "".join(str(v) for v in state)


def parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {text!r}: {exc}") from None


def fraction_text(value: Scalar) -> str:
    return str(Fraction(value))


# ---------------------------------------------------------------------------
# monomials: sorted tuples of (Variable, positive exponent)

Monomial = tuple[tuple[Variable, int], ...]

EMPTY_MONOMIAL: Monomial = ()

_ZERO = Fraction(0)


def mono_from_dict(exps: Mapping[Variable, int]) -> Monomial:
    return tuple(sorted((v, e) for v, e in exps.items() if e))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    """Merge two sorted monomials; exponents are positive so nothing drops."""
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        va, ea = a[i]
        vb, eb = b[j]
        if va == vb:
            out.append((va, ea + eb))
            i += 1
            j += 1
        elif va < vb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def mono_divides(a: Monomial, b: Monomial) -> bool:
    exps = dict(b)
    return all(exps.get(v, 0) >= e for v, e in a)


def mono_div(num: Monomial, den: Monomial) -> Monomial:
    """Quotient of sorted monomials; raises if den does not divide num."""
    if not den:
        return num
    out = []
    j = 0
    ld = len(den)
    for v, e in num:
        if j < ld and den[j][0] == v:
            e -= den[j][1]
            j += 1
            if e < 0:
                raise ValueError(f"{den} does not divide {num}")
            if e:
                out.append((v, e))
        else:
            out.append((v, e))
    if j < ld:
        raise ValueError(f"{den} does not divide {num}")
    return tuple(out)


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        va, ea = a[i]
        vb, eb = b[j]
        if va == vb:
            out.append((va, ea if ea >= eb else eb))
            i += 1
            j += 1
        elif va < vb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


# ---------------------------------------------------------------------------
# polynomials


class Polynomial:
    """Sparse polynomial with Fraction coefficients in canonical form: no zero
    coefficients stored, monomials keyed by their sorted variable tuples."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for mono, coeff in terms.items():
                c = coeff if type(coeff) is Fraction else Fraction(coeff)
                if c:
                    clean[mono] = c
        self.terms: dict[Monomial, Fraction] = clean

    @classmethod
    def _raw(cls, terms: dict[Monomial, Fraction]) -> "Polynomial":
        """Trusting constructor for internal arithmetic: the dict must already
        be canonical (Fraction coefficients, no zeros)."""
        poly = cls.__new__(cls)
        poly.terms = terms
        return poly

    # construction helpers

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls()

    @classmethod
    def one(cls) -> "Polynomial":
        return cls({EMPTY_MONOMIAL: 1})

    @classmethod
    def constant(cls, c: Scalar) -> "Polynomial":
        return cls({EMPTY_MONOMIAL: c})

    @classmethod
    def from_variable(cls, v: Variable) -> "Polynomial":
        return cls({((v, 1),): 1})

    @classmethod
    def from_term(cls, mono: Monomial, coeff: Scalar) -> "Polynomial":
        return cls({mono: coeff})

    # ring structure

    @staticmethod
    def _coerce(value) -> "Polynomial | None":
        if isinstance(value, Polynomial):
            return value
        if isinstance(value, (int, Fraction)):
            return Polynomial.constant(value)
        return None

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for mono, coeff in other.terms.items():
            value = terms.get(mono)
            if value is None:
                terms[mono] = coeff
            else:
                value = value + coeff
                if value:
                    terms[mono] = value
                else:
                    del terms[mono]
        return Polynomial._raw(terms)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = mono_mul(m1, m2)
                value = terms.get(mono)
                value = c1 * c2 if value is None else value + c1 * c2
                if value:
                    terms[mono] = value
                else:
                    del terms[mono]
        return Polynomial._raw(terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Polynomial":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError(f"exponent must be a nonnegative integer, got {exponent!r}")
        result = Polynomial.one()
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def _mul_term(self, mono: Monomial, coeff: Scalar) -> "Polynomial":
        c = coeff if type(coeff) is Fraction else Fraction(coeff)
        if not c:
            return Polynomial._raw({})
        return Polynomial._raw(
            {mono_mul(m, mono): cc * c for m, cc in self.terms.items()}
        )

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def variables(self) -> set[Variable]:
        return {v for mono in self.terms for v, _ in mono}

    def total_degree(self) -> int:
        return max((mono_degree(m) for m in self.terms), default=0)

    # evaluation and substitution

    def evaluate(self, assignment: Mapping[Variable, Scalar]) -> Fraction:
        """Exact evaluation; every variable must be assigned a rational."""
        total = Fraction(0)
        for mono, coeff in self.terms.items():
            value = coeff
            for v, e in mono:
                if v not in assignment:
                    raise UnboundVariableError(f"no value for variable {v.key_text()}")
                value = value * Fraction(assignment[v]) ** e
            total += value
        return total

    def substitute(self, mapping: Mapping[Variable, "Polynomial | Scalar"]) -> "Polynomial":
        """Replace mapped variables by polynomials; others pass through."""
        out = Polynomial.zero()
        for mono, coeff in self.terms.items():
            term = Polynomial.constant(coeff)
            for v, e in mono:
                image = mapping.get(v)
                if image is None:
                    term = term._mul_term(((v, e),), 1)
                else:
                    image_poly = self._coerce(image)
                    if image_poly is None:
                        raise TypeError(f"bad substitution image for {v.key_text()}")
                    term = term * image_poly**e
            out = out + term
        return out

    # emission

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(
            self.terms.items(), key=lambda mc: (mono_degree(mc[0]), mc[0]), reverse=True
        )

    def to_text(self, style: str = "grammar") -> str:
        if self.is_zero:
            return "0"
        render = (lambda v: v.display_text()) if style == "display" else (lambda v: v.key_text())
        parts: list[str] = []
        for mono, coeff in self.sorted_terms():
            factors = [render(v) + (f"^{e}" if e > 1 else "") for v, e in mono]
            mag = abs(coeff)
            if mag != 1 or not factors:
                factors.insert(0, fraction_text(mag))
            body = "*".join(factors)
            if not parts:
                parts.append(body if coeff > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(parts)

    def to_json_list(self) -> list[dict]:
        return [
            {
                "coeff": fraction_text(coeff),
                "vars": {v.key_text(): e for v, e in mono},
            }
            for mono, coeff in self.sorted_terms()
        ]

    def __repr__(self) -> str:
        return f"Polynomial({self.to_text()})"


# ---------------------------------------------------------------------------
# polynomial grammar
#
#   poly   := ['-'] term (('+'|'-') term)*
#   term   := factor ('*' factor)*
#   factor := coefficient | variable ['^' int]
#   variable := 't' | family '[' indices ']'
#
# p/q indices are digit strings ("q[01011]"); theta/alpha/x take one or two
# comma-separated integers ("theta[3,1]", "x[2]").

_TOKEN = re.compile(r"\s*(\d+|[A-Za-z_]+|.)")


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        tok = m.group(1)
        if tok.strip():
            tokens.append(tok)
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None:
            raise ParseError(f"unexpected end of polynomial in {self.text!r}")
        if expected is not None and tok != expected:
            raise ParseError(f"expected {expected!r} but found {tok!r} in {self.text!r}")
        self.pos += 1
        return tok

    def parse(self) -> Polynomial:
        poly = self.parse_term(self.parse_sign())
        while self.peek() in ("+", "-"):
            poly = poly + self.parse_term(self.parse_sign())
        if self.peek() is not None:
            raise ParseError(f"trailing junk {self.peek()!r} in {self.text!r}")
        return poly

    def parse_sign(self) -> int:
        sign = 1
        while self.peek() in ("+", "-"):
            if self.take() == "-":
                sign = -sign
        return sign

    def parse_term(self, sign: int) -> Polynomial:
        poly = Polynomial.constant(sign)
        poly = poly * self.parse_factor()
        while self.peek() == "*":
            self.take("*")
            poly = poly * self.parse_factor()
        return poly

    def parse_factor(self) -> Polynomial:
        tok = self.peek()
        if tok is None:
            raise ParseError(f"unexpected end of polynomial in {self.text!r}")
        if tok.isdigit():
            return Polynomial.constant(self.parse_rational())
        return self.parse_power()

    def parse_rational(self) -> Fraction:
        num = int(self.take())
        if self.peek() == "/":
            self.take("/")
            den = self.take()
            if not den.isdigit() or int(den) == 0:
                raise ParseError(f"bad denominator {den!r} in {self.text!r}")
            return Fraction(num, int(den))
        return Fraction(num)

    def parse_power(self) -> Polynomial:
        var = self.parse_variable()
        exp = 1
        if self.peek() == "^":
            self.take("^")
            digits = self.take()
            if not digits.isdigit():
                raise ParseError(f"bad exponent {digits!r} in {self.text!r}")
            exp = int(digits)
        return Polynomial.from_term(((var, exp),) if exp else EMPTY_MONOMIAL, 1)

    def parse_variable(self) -> Variable:
        name = self.take()
        if name == "t":
            return t_var()
        if name not in FAMILIES:
            raise ParseError(f"unknown variable family {name!r} in {self.text!r}")
        self.take("[")
        first = self.take()
        if not first.isdigit():
            raise ParseError(f"bad index {first!r} in {self.text!r}")
        if name in ("p", "q"):
            self.take("]")
            return Variable(name, tuple(int(c) for c in first))
        if self.peek() == ",":
            self.take(",")
            second = self.take()
            if not second.isdigit():
                raise ParseError(f"bad index {second!r} in {self.text!r}")
            self.take("]")
            return Variable(name, (int(first), int(second)))
        self.take("]")
        return Variable(name, (int(first),))


def parse_polynomial(text: str) -> Polynomial:
    """Parse one polynomial in the text grammar, e.g.
    "q[01011]*q[10111] - q[00011]*q[11111]" or "1/2*p[00]^2 - p[01]"."""
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# monomial orders


class MonomialOrder:
    """A monomial order over a fixed variable universe.

    Variables rank by the package-wide variable order (family, then index),
    so q-variables rank by the lexicographic order of their states, which is
    a linear extension of the lattice order. Kinds: "degrevlex" (default),
    "deglex", "lex".
    """

    KINDS = ("degrevlex", "deglex", "lex")

    def __init__(self, variables: Iterable[Variable], kind: str = "degrevlex"):
        if kind not in self.KINDS:
            raise ValueError(f"unknown monomial order {kind!r}")
        self.kind = kind
        self.variables = tuple(sorted(set(variables)))

    def compare(self, a: Monomial, b: Monomial) -> int:
        """-1, 0, or 1 as a <, =, > b under the order.

        Monomials are sorted by the variable order, which is also the rank
        order here, so both scans run directly on the sorted tuples.
        """
        if a == b:
            return 0
        if self.kind in ("degrevlex", "deglex"):
            da, db = mono_degree(a), mono_degree(b)
            if da != db:
                return -1 if da < db else 1
        if self.kind == "degrevlex":
            # equal degree: the monomial with the smaller exponent on the
            # smallest differing variable is the larger one
            i = j = 0
            la, lb = len(a), len(b)
            while i < la or j < lb:
                if i < la and (j >= lb or a[i][0] < b[j][0]):
                    return -1
                if j < lb and (i >= la or b[j][0] < a[i][0]):
                    return 1
                ea, eb = a[i][1], b[j][1]
                if ea != eb:
                    return 1 if ea < eb else -1
                i += 1
                j += 1
            return 0
        # lex and the deglex tie-break: scan from the largest variable down
        i, j = len(a) - 1, len(b) - 1
        while i >= 0 or j >= 0:
            if i >= 0 and (j < 0 or a[i][0] > b[j][0]):
                return 1
            if j >= 0 and (i < 0 or b[j][0] > a[i][0]):
                return -1
            ea, eb = a[i][1], b[j][1]
            if ea != eb:
                return 1 if ea > eb else -1
            i -= 1
            j -= 1
        return 0

    def leading_term(self, poly: Polynomial) -> tuple[Monomial, Fraction]:
        if poly.is_zero:
            raise ValueError("the zero polynomial has no leading term")
        best: Monomial | None = None
        for mono in poly.terms:
            if best is None or self.compare(mono, best) > 0:
                best = mono
        return best, poly.terms[best]


# ---------------------------------------------------------------------------
# binomial generators of a distributive lattice


@dataclass(frozen=True)
class BinomialGenerator:
    """q_g*q_h - q_meet*q_join for one incomparable lattice pair (g, h)."""

    g: State
    h: State
    meet: State
    join: State

    @classmethod
    def from_pair(cls, g: State, h: State) -> "BinomialGenerator":
        if state_leq(g, h) or state_leq(h, g):
            raise ValueError(f"states {g} and {h} are comparable")
        meet, join = lattice_meet_join(g, h)
        return cls(g=g, h=h, meet=meet, join=join)

    def polynomial(self) -> Polynomial:
        return Polynomial(
            {
                mono_mul(((q_var(self.g), 1),), ((q_var(self.h), 1),)): 1,
                mono_mul(((q_var(self.meet), 1),), ((q_var(self.join), 1),)): -1,
            }
        )

    def to_text(self) -> str:
        return (
            f"q[{state_digits(self.g)}]*q[{state_digits(self.h)}]"
            f" - q[{state_digits(self.meet)}]*q[{state_digits(self.join)}]"
        )

    def to_json_dict(self) -> dict:
        return {
            "pair": [state_digits(self.g), state_digits(self.h)],
            "meet": state_digits(self.meet),
            "join": state_digits(self.join),
            "polynomial": self.to_text(),
        }


def hibi_generators(lattice: StateLattice) -> list[BinomialGenerator]:
    """One binomial per incomparable pair, in the deterministic pair order;
    empty for chains."""
    return [BinomialGenerator.from_pair(g, h) for g, h in incomparable_pairs(lattice)]


# ---------------------------------------------------------------------------
# monomial parameterizations


@dataclass(frozen=True)
class MonomialMap:
    """Assignment of every lattice q-variable to a squarefree monomial that
    contains the homogenizing variable t with exponent 1."""

    images: dict[Variable, Monomial]

    def image(self, var: Variable) -> Monomial:
        return self.images[var]

    def __contains__(self, var: Variable) -> bool:
        return var in self.images


def monomial_map(lattice: StateLattice, k: int | None = None) -> MonomialMap:
    """q_g -> t * prod of x[i, r] over the order ideal that g corresponds to
    in the product of the underlying poset with a (k-1)-chain; coordinate i
    of a state is taken to belong to vertex i+1."""
    if k is None:
        k = lattice.k
    if k != lattice.k:
        raise ValueError(f"lattice has k={lattice.k}, not {k}")
    images: dict[Variable, Monomial] = {}
    for g in lattice:
        exps: dict[Variable, int] = {t_var(): 1}
        for idx, v in enumerate(g):
            for r in range(k - v - 1):
                exps[x_var(idx + 1, r)] = 1
        images[q_var(g)] = mono_from_dict(exps)
    return MonomialMap(images)


def ideal_monomial_map(lattice: StateLattice) -> MonomialMap:
    """q_g -> t * prod of x[i] over the members of the order ideal g, for a
    lattice whose states are 0-1 ideal indicators."""
    if lattice.k != 2:
        raise ValueError("ideal lattices carry 0-1 indicators, so k must be 2")
    images: dict[Variable, Monomial] = {}
    for g in lattice:
        exps: dict[Variable, int] = {t_var(): 1}
        for idx, bit in enumerate(g):
            if bit:
                exps[x_ground_var(idx + 1)] = 1
        images[q_var(g)] = mono_from_dict(exps)
    return MonomialMap(images)


def substitute(poly: Polynomial, mmap: MonomialMap) -> Polynomial:
    """Apply a monomial map to a polynomial in q-variables; non-q variables
    pass through untouched.

    Raises:
        UnmappedVariableError: a q-variable is missing from the map.
    """
    for v in poly.variables():
        if v.family == "q" and v not in mmap:
            raise UnmappedVariableError(f"variable {v.key_text()} is not in the map")
    mapping = {v: Polynomial.from_term(m, 1) for v, m in mmap.images.items()}
    return poly.substitute(mapping)


def verify_vanishing(generators: Sequence[BinomialGenerator], mmap: MonomialMap) -> Report:
    """Check that every generator maps to the zero polynomial."""
    mapping = {v: Polynomial.from_term(m, 1) for v, m in mmap.images.items()}
    failures = []
    for gen in generators:
        poly = gen.polynomial()
        for v in poly.variables():
            if v.family == "q" and v not in mmap:
                raise UnmappedVariableError(f"variable {v.key_text()} is not in the map")
        image = poly.substitute(mapping)
        if not image.is_zero:
            failures.append(f"{gen.to_text()} maps to {image.to_text()}")
    detail = f"{len(generators)} generators map to 0" if not failures else ""
    return Report("vanishing", total=len(generators), failures=failures, detail=detail)


def pullback_to_p(poly: Polynomial, lattice: StateLattice) -> Polynomial:
    """Replace every q_g by the sum of p_h over lattice states h <= g and
    expand to canonical form."""
    mapping: dict[Variable, Polynomial] = {}
    for v in poly.variables():
        if v.family != "q":
            continue
        g = v.index
        if g not in lattice:
            raise UnmappedVariableError(f"state {state_digits(g)} is not in the lattice")
        mapping[v] = Polynomial(
            {((p_var(h), 1),): 1 for h in lattice if state_leq(h, g)}
        )
    return poly.substitute(mapping)


def evaluate_at_distribution(poly: Polynomial, probs: Mapping[State, Scalar]) -> Fraction:
    """Evaluate a polynomial in p-variables at a distribution, exactly."""
    assignment = {p_var(g): Fraction(v) for g, v in probs.items()}
    return poly.evaluate(assignment)


# ---------------------------------------------------------------------------
# Buchberger criterion


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    mf, cf = order.leading_term(f)
    mg, cg = order.leading_term(g)
    lcm = mono_lcm(mf, mg)
    return f._mul_term(mono_div(lcm, mf), Fraction(1, 1) / cf) - g._mul_term(
        mono_div(lcm, mg), Fraction(1, 1) / cg
    )


class _ReductionContext:
    """Precomputed leading terms plus, when every leading monomial is a
    squarefree quadratic (the lattice-binomial case), an index from variable
    pairs to the first basis element with that leading monomial."""

    def __init__(self, basis: Sequence[Polynomial], order: MonomialOrder):
        self.order = order
        self.terms = [b.terms for b in basis]
        self.leads = [order.leading_term(b) for b in basis]
        self.pair_index: dict[tuple[Variable, Variable], int] | None = {}
        for i, (mono, _) in enumerate(self.leads):
            if len(mono) != 2 or mono[0][1] != 1 or mono[1][1] != 1:
                self.pair_index = None
                break
            key = (mono[0][0], mono[1][0])
            if key not in self.pair_index:
                self.pair_index[key] = i

    def find_divisor(self, mono: Monomial) -> int | None:
        if self.pair_index is not None:
            best: int | None = None
            count = len(mono)
            for a in range(count):
                va = mono[a][0]
                for b in range(a + 1, count):
                    idx = self.pair_index.get((va, mono[b][0]))
                    if idx is not None and (best is None or idx < best):
                        best = idx
            return best
        for i, (lead, _) in enumerate(self.leads):
            if mono_divides(lead, mono):
                return i
        return None

    def lead_of(self, terms: dict[Monomial, Fraction]) -> Monomial:
        compare = self.order.compare
        best: Monomial | None = None
        for mono in terms:
            if best is None or compare(mono, best) > 0:
                best = mono
        return best

    def reduce_terms(self, work: dict[Monomial, Fraction]) -> dict[Monomial, Fraction]:
        """Standard division algorithm on a mutable term dict: cancel the
        leading term against the first basis element whose leading monomial
        divides it, moving irreducible leading terms to the remainder."""
        remainder: dict[Monomial, Fraction] = {}
        while work:
            mono = self.lead_of(work)
            coeff = work.pop(mono)
            i = self.find_divisor(mono)
            if i is None:
                remainder[mono] = coeff
                continue
            lead_mono, lead_coeff = self.leads[i]
            factor = mono_div(mono, lead_mono)
            scale = coeff if lead_coeff == 1 else coeff / lead_coeff
            for m, c in self.terms[i].items():
                if m == lead_mono:
                    continue
                key = mono_mul(m, factor)
                delta = scale if c == 1 else (-scale if c == -1 else scale * c)
                value = work.get(key)
                value = -delta if value is None else value - delta
                if value:
                    work[key] = value
                else:
                    work.pop(key, None)
        return remainder


def reduce_modulo(
    poly: Polynomial, basis: Sequence[Polynomial], order: MonomialOrder
) -> Polynomial:
    """Remainder of the standard division algorithm modulo a basis list."""
    ctx = _ReductionContext(basis, order)
    return Polynomial._raw(ctx.reduce_terms(dict(poly.terms)))


def default_lattice_order(
    generators: Sequence[BinomialGenerator], kind: str = "degrevlex"
) -> MonomialOrder:
    variables: set[Variable] = set()
    for gen in generators:
        for state in (gen.g, gen.h, gen.meet, gen.join):
            variables.add(q_var(state))
    return MonomialOrder(variables, kind=kind)


def buchberger_check(
    generators: Sequence[BinomialGenerator], order: MonomialOrder | None = None
) -> Report:
    """Check the Buchberger criterion: the S-polynomial of every generator
    pair reduces to 0 modulo the generator set, so the set is a Groebner
    basis under the given order (degree-reverse-lexicographic over the
    lattice's linear extension by default)."""
    if order is None:
        order = default_lattice_order(generators)
    polys = [gen.polynomial() for gen in generators]
    ctx = _ReductionContext(polys, order)
    failures = []
    pairs = 0
    for i in range(len(polys)):
        mi, ci = ctx.leads[i]
        terms_i = ctx.terms[i]
        for j in range(i + 1, len(polys)):
            pairs += 1
            mj, cj = ctx.leads[j]
            lcm = mono_lcm(mi, mj)
            factor_i, factor_j = mono_div(lcm, mi), mono_div(lcm, mj)
            work: dict[Monomial, Fraction] = {}
            for m, c in terms_i.items():
                key = mono_mul(m, factor_i)
                coeff = c if ci == 1 else c / ci
                work[key] = work.get(key, _ZERO) + coeff
            for m, c in ctx.terms[j].items():
                key = mono_mul(m, factor_j)
                coeff = c if cj == 1 else c / cj
                value = work.get(key, _ZERO) - coeff
                if value:
                    work[key] = value
                else:
                    work.pop(key, None)
            remainder = ctx.reduce_terms(work)
            if remainder:
                text = Polynomial._raw(remainder).to_text()
                failures.append(
                    f"S-polynomial of {generators[i].to_text()} and "
                    f"{generators[j].to_text()} leaves {text}"
                )
    detail = f"{pairs} S-polynomials reduce to 0" if not failures else ""
    return Report("groebner", total=pairs, failures=failures, detail=detail)
