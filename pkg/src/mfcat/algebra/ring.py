"""Polynomial rings (optionally modulo an ideal) and their elements."""

from __future__ import annotations

from operator import add

from ..errors import MFError, RingMismatch
from .field import FieldSpec
from .groebner import TermOrder, groebner, reduce_vector


class RingContext:
    """``field[variables] / defining_ideal`` with a fixed monomial order.

    Elements are kept in normal form with respect to the reduced Groebner
    basis of the defining ideal, so equality is equality of normal forms.
    """

    def __init__(self, field: FieldSpec, variables=(), order: str = "grevlex",
                 defining_ideal=()):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise MFError(f"variable names must be distinct: {variables}")
        self.field = field
        self.variables = variables
        self.nvars = len(variables)
        self.order = order
        self.term_order = TermOrder(order)
        self.zero_exp = (0,) * self.nvars
        self._ideal_raw = ()
        raw = []
        for g in defining_ideal:
            if isinstance(g, Poly):
                if g.ring.variables != variables or g.ring.field != field:
                    raise RingMismatch("defining ideal generator from another ring")
                raw.append(g.terms)
            elif isinstance(g, str):
                from .parse import parse_poly

                raw.append(parse_poly(g, self).terms)
            else:
                raw.append(dict(g))
        gb = groebner(
            [{(0, e): c for e, c in t.items()} for t in raw],
            self.term_order, field.p, ideal_mode=True,
        )
        self._ideal_raw = tuple(vec for vec, _ in gb)
        self._ideal_key = tuple(
            tuple(sorted((e, field.fmt(c)) for (_, e), c in vec.items())) for vec in self._ideal_raw
        )

    # -- identity -----------------------------------------------------------
    def _key(self):
        return (self.field, self.variables, self.order, self._ideal_key)

    def __eq__(self, other):
        return isinstance(other, RingContext) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"RingContext({self})"

    def __str__(self):
        s = f"{self.field}[{','.join(self.variables)}]"
        if self._ideal_raw:
            s += "/(" + ", ".join(str(g) for g in self.ideal_gb) + ")"
        if self.order != "grevlex":
            s += f" {self.order}"
        return s

    # -- structure ----------------------------------------------------------
    @property
    def has_ideal(self) -> bool:
        return bool(self._ideal_raw)

    @property
    def is_zero_ring(self) -> bool:
        return any(all(not any(e) for (_, e) in vec) for vec in self._ideal_raw)

    @property
    def ambient(self) -> RingContext:
        """The polynomial ring without the defining ideal."""
        if not self._ideal_raw:
            return self
        amb = self.__dict__.get("_ambient")
        if amb is None:
            amb = RingContext(self.field, self.variables, self.order)
            self.__dict__["_ambient"] = amb
        return amb

    @property
    def ideal_gb(self) -> tuple:
        """Reduced Groebner basis of the defining ideal, as ambient polynomials."""
        amb = self.ambient
        return tuple(Poly(amb, {e: c for (_, e), c in vec.items()}, normal=True)
                     for vec in self._ideal_raw)

    def quotient(self, *gens) -> RingContext:
        """This ring modulo additional generators."""
        extra = [g.terms if isinstance(g, Poly) else g for g in gens]
        base = [{e: c for (_, e), c in vec.items()} for vec in self._ideal_raw]
        return RingContext(self.field, self.variables, self.order, base + extra)

    def with_order(self, order: str) -> RingContext:
        base = [{e: c for (_, e), c in vec.items()} for vec in self._ideal_raw]
        return RingContext(self.field, self.variables, order, base)

    # -- element construction -----------------------------------------------
    def reduce_terms(self, terms: dict) -> dict:
        if not self._ideal_raw:
            return terms
        vec = {(0, e): c for e, c in terms.items()}
        rem = reduce_vector(vec, self._ideal_raw, self.term_order, self.field.p)
        return {e: c for (_, e), c in rem.items()}

    def poly(self, terms: dict) -> Poly:
        f = self.field
        clean = {}
        for e, c in terms.items():
            c = f(c)
            if c:
                clean[tuple(e)] = c
        return Poly(self, clean)

    def const(self, value) -> Poly:
        c = self.field(value)
        return Poly(self, {self.zero_exp: c} if c else {})

    @property
    def zero(self) -> Poly:
        return Poly(self, {}, normal=True)

    @property
    def one(self) -> Poly:
        return self.const(1)

    def var(self, name: str) -> Poly:
        try:
            i = self.variables.index(name)
        except ValueError:
            raise MFError(f"unknown variable {name!r} in {self}") from None
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): self.field(1)})

    def gens(self):
        return [self.var(v) for v in self.variables]

    def __call__(self, value) -> Poly:
        if isinstance(value, Poly):
            if value.ring == self:
                return value
            if value.ring.variables == self.variables and value.ring.field == self.field:
                return Poly(self, dict(value.terms))
            raise RingMismatch(f"cannot coerce element of {value.ring} into {self}")
        if isinstance(value, str):
            from .parse import parse_poly

            return parse_poly(value, self)
        return self.const(value)


class Poly:
    """Immutable sparse polynomial in normal form over a :class:`RingContext`."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: RingContext, terms: dict, normal: bool = False):
        if not normal and ring._ideal_raw:
            terms = ring.reduce_terms(terms)
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- coercion helpers ---------------------------------------------------
    def _other(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.ring is not self.ring and other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other
        return self.ring.const(other)

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = self._other(other)
        p = self.ring.field.p
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if p:
                v %= p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly(self.ring, out, normal=True)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.field.p
        if p:
            return Poly(self.ring, {e: (-c) % p for e, c in self.terms.items()}, normal=True)
        return Poly(self.ring, {e: -c for e, c in self.terms.items()}, normal=True)

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = self.ring.field(other)
            p = self.ring.field.p
            if not c:
                return self.ring.zero
            if p:
                return Poly(self.ring, {e: a * c % p for e, a in self.terms.items()}, normal=True)
            return Poly(self.ring, {e: a * c for e, a in self.terms.items()}, normal=True)
        other = self._other(other)
        p = self.ring.field.p
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(map(add, e1, e2))
                v = out.get(e, 0) + c1 * c2
                if p:
                    v %= p
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Poly(self.ring, out, normal=not self.ring._ideal_raw)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        try:
            return self.terms == self.ring.const(other).terms
        except (TypeError, ValueError, ZeroDivisionError):
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset((e, int(c) if self.ring.field.p else c)
                                        for e, c in self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- inspection ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        """Field element if the polynomial is constant, else ``None``."""
        if not self.terms:
            return self.ring.field(0)
        if self.is_constant():
            return self.terms[self.ring.zero_exp]
        return None

    def sorted_terms(self):
        """``(exp, coeff)`` pairs in descending monomial order."""
        key = self.ring.term_order.mono_key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_term(self):
        if not self.terms:
            return None
        key = self.ring.term_order.mono_key
        e = max(self.terms, key=key)
        return e, self.terms[e]

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def variables_used(self):
        return {self.ring.variables[i] for e in self.terms for i, x in enumerate(e) if x}

    # -- evaluation / substitution ------------------------------------------
    def evaluate(self, point):
        """Value at a point given as a sequence of field elements."""
        f = self.ring.field
        p = f.p
        pt = [f(v) for v in point]
        total = f(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(pt, e):
                if k:
                    v = v * (pow(x, k, p) if p else x**k)
            total = total + v
            if p:
                total %= p
        return total

    def substitute(self, images, target: RingContext) -> Poly:
        """Image under the ring map sending the i-th variable to ``images[i]``."""
        out = target.zero
        powers = [dict() for _ in images]
        for e, c in self.terms.items():
            term = target.const(target.field(self.ring.field.to_fraction(c)))
            for i, k in enumerate(e):
                if k:
                    pw = powers[i].get(k)
                    if pw is None:
                        pw = images[i] ** k
                        powers[i][k] = pw
                    term = term * pw
            out = out + term
        return out

    # -- text -----------------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        fmt = self.ring.field.fmt
        names = self.ring.variables
        parts = []
        for e, c in self.sorted_terms():
            cs = fmt(c)
            neg = cs.startswith("-")
            if neg:
                cs = cs[1:]
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k
            )
            if not mono:
                body = cs
            elif cs == "1":
                body = mono
            else:
                body = f"{cs}*{mono}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"Poly({self})"
