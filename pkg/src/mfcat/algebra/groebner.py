"""Buchberger's algorithm on sparse vectors of a free module.

A vector is a dict mapping terms ``(pos, exp)`` to nonzero field elements,
where ``exp`` is an exponent tuple.  Polynomials are vectors supported in
position 0.  Terms are compared position-over-term: a smaller position
index is larger, ties are broken by the monomial order.

Everything here is field-agnostic through the prime ``p`` (0 means the
rationals, coefficients are then ``gmpy2.mpq``).
"""

from __future__ import annotations

import heapq
from operator import add, sub

__all__ = [
    "TermOrder",
    "leading_term",
    "axpy",
    "reduce_vector",
    "groebner",
    "is_divisible",
]


class TermOrder:
    """Sort keys for module terms; larger key means larger term."""

    __slots__ = ("name", "_cache")

    def __init__(self, name: str = "grevlex"):
        if name not in ("grevlex", "lex"):
            raise ValueError(f"unknown monomial order {name!r}")
        self.name = name
        self._cache = {}

    def key(self, term):
        k = self._cache.get(term)
        if k is None:
            pos, e = term
            if self.name == "grevlex":
                k = (-pos, sum(e)) + tuple(-x for x in reversed(e))
            else:
                k = (-pos,) + tuple(e)
            self._cache[term] = k
        return k

    def mono_key(self, exp):
        return self.key((0, exp))


def leading_term(vec, order: TermOrder):
    return max(vec, key=order.key)


def is_divisible(e, d) -> bool:
    return all(a >= b for a, b in zip(e, d))


def axpy(f, c, shift, g, p):
    """In place ``f += c * x^shift * g``."""
    if not any(shift):
        for t, a in g.items():
            v = f.get(t, 0) + c * a
            if p:
                v %= p
            if v:
                f[t] = v
            else:
                f.pop(t, None)
        return
    for (pos, e), a in g.items():
        t = (pos, tuple(map(add, e, shift)))
        v = f.get(t, 0) + c * a
        if p:
            v %= p
        if v:
            f[t] = v
        else:
            f.pop(t, None)


def _scale(f, c, p):
    if p:
        return {t: a * c % p for t, a in f.items()}
    return {t: a * c for t, a in f.items()}


def _inv(a, p):
    return pow(int(a), -1, p) if p else 1 / a


class _Elt:
    __slots__ = ("vec", "lt", "tag", "active")

    def __init__(self, vec, lt, tag):
        self.vec = vec
        self.lt = lt
        self.tag = tag
        self.active = True


class _Reducer:
    """Leading-term index over a growing list of monic elements."""

    def __init__(self):
        self.by_pos = {}

    def add(self, elt):
        self.by_pos.setdefault(elt.lt[0], []).append(elt)

    def find(self, term):
        pos, e = term
        for g in self.by_pos.get(pos, ()):
            if g.active is not None and is_divisible(e, g.lt[1]):
                return g
        return None


def _reduce(f, reducer: _Reducer, order, p, tag=None):
    """Full normal form of ``f``; ``tag`` (if given) is updated alongside."""
    f = dict(f)
    rem = {}
    key = order.key
    while f:
        t = max(f, key=key)
        c = f[t]
        g = reducer.find(t)
        if g is None:
            rem[t] = f.pop(t)
            continue
        shift = tuple(map(sub, t[1], g.lt[1]))
        axpy(f, -c, shift, g.vec, p)
        if tag is not None and g.tag is not None:
            axpy(tag, -c, shift, g.tag, p)
    return rem


def reduce_vector(f, basis, order: TermOrder, p: int, quotients=False):
    """Normal form of ``f`` modulo a list of vectors assumed to be a GB.

    With ``quotients=True`` returns ``(remainder, q)`` where ``q`` is a vector
    over positions ``0..len(basis)-1`` and ``f = sum q_k basis_k + remainder``.
    """
    red = _Reducer()
    for k, b in enumerate(basis):
        lt = leading_term(b, order)
        inv = _inv(b[lt], p)
        vec = _scale(b, inv, p)
        tag = {(k, tuple(0 for _ in lt[1])): inv} if quotients else None
        red.add(_Elt(vec, lt, tag))
    if not quotients:
        return _reduce(f, red, order, p)
    acc = {}
    rem = _reduce(f, red, order, p, tag=acc)
    # acc holds minus the quotients
    return rem, {t: (-a) % p if p else -a for t, a in acc.items()}


def _lcm(a, b):
    return tuple(map(max, a, b))


def groebner(gens, order: TermOrder, p: int, *, tags=None, ideal_mode=False,
             reduced=True):
    """Groebner basis of the submodule generated by ``gens``.

    ``tags``: optional list of vectors carried along linearly with each
    generator (used to express basis elements in terms of the input).
    ``ideal_mode`` enables the coprime-leading-term criterion, which is only
    valid for ideals.  Returns a list of ``(vec, tag)`` sorted by descending
    leading term; with ``reduced=True`` the basis is the reduced one.
    """
    G = []
    red = _Reducer()
    live = {}
    heap = []
    seq = 0
    key = order.key

    def update(h_idx):
        nonlocal seq
        h = G[h_idx]
        hp, he = h.lt
        cand = []
        for i in range(h_idx):
            g = G[i]
            if not g.active or g.lt[0] != hp:
                continue
            ge = g.lt[1]
            coprime = ideal_mode and not any(min(x, y) for x, y in zip(ge, he))
            cand.append((i, _lcm(ge, he), coprime))
        kept = []
        while cand:
            i, L, cop = cand.pop()
            if cop:
                kept.append((i, L, cop))
                continue
            if any(is_divisible(L, L2) for _, L2, _ in cand) or any(
                is_divisible(L, L2) for _, L2, _ in kept
            ):
                continue
            kept.append((i, L, cop))
        for (i, j), L in list(live.items()):
            if G[i].lt[0] != hp or not is_divisible(L, he):
                continue
            if _lcm(G[i].lt[1], he) != L and _lcm(G[j].lt[1], he) != L:
                del live[(i, j)]
        for i, L, cop in kept:
            if cop:
                continue
            live[(i, h_idx)] = L
            heapq.heappush(heap, (key((hp, L)), seq, i, h_idx))
            seq += 1
        for g in G[:h_idx]:
            if g.active and g.lt[0] == hp and is_divisible(g.lt[1], he):
                g.active = False

    def insert(vec, tag):
        lt = max(vec, key=key)
        inv = _inv(vec[lt], p)
        elt = _Elt(_scale(vec, inv, p), lt, _scale(tag, inv, p) if tag is not None else None)
        G.append(elt)
        red.add(elt)
        update(len(G) - 1)

    for k, g in enumerate(gens):
        if not g:
            continue
        tag = dict(tags[k]) if tags is not None else None
        h = _reduce(g, red, order, p, tag=tag)
        if h:
            insert(h, tag)

    while heap:
        _, _, i, j = heapq.heappop(heap)
        L = live.pop((i, j), None)
        if L is None:
            continue
        gi, gj = G[i], G[j]
        si = tuple(map(sub, L, gi.lt[1]))
        sj = tuple(map(sub, L, gj.lt[1]))
        s = {}
        axpy(s, 1, si, gi.vec, p)
        axpy(s, -1, sj, gj.vec, p)
        tag = None
        if tags is not None:
            tag = {}
            axpy(tag, 1, si, gi.tag, p)
            axpy(tag, -1, sj, gj.tag, p)
        if not s:
            continue
        h = _reduce(s, red, order, p, tag=tag)
        if h:
            insert(h, tag)

    basis = [g for g in G if g.active]
    if reduced:
        # interreduce tails against the other minimal elements
        fin = _Reducer()
        for g in basis:
            fin.add(g)
        for g in basis:
            lt = g.lt
            lc = g.vec[lt]
            tail = dict(g.vec)
            del tail[lt]
            tag = dict(g.tag) if g.tag is not None else None
            g.active = None  # exclude itself while reducing its own tail
            tail = _reduce(tail, fin, order, p, tag=tag)
            g.active = True
            tail[lt] = lc
            g.vec = tail
            g.tag = tag
    basis.sort(key=lambda g: key(g.lt), reverse=True)
    return [(g.vec, g.tag) for g in basis]
