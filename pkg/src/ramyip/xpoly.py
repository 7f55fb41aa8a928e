"""Laurent polynomials over the X lattice with exact rational coefficients.

An XPoly maps classical lattice points of X to CoeffRat values; powers of
delta are folded into the coefficient as powers of q.  Zero coefficients are
never stored, so equality is dictionary equality.
"""

from __future__ import annotations

from .coeffring import CoeffRat, CoeffRing, InexactDivision
from .rootdata import Vec, vec_add, vec_sub


def _grlex(v: Vec) -> tuple:
    return (sum(v), v)


class XPoly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: CoeffRing, terms: dict[Vec, CoeffRat] | None = None):
        self.ring = ring
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero(ring: CoeffRing) -> "XPoly":
        return XPoly(ring, {})

    @staticmethod
    def one(ring: CoeffRing, rank: int) -> "XPoly":
        return XPoly(ring, {(0,) * rank: ring.one})

    @staticmethod
    def monomial(ring: CoeffRing, key: Vec, coeff: CoeffRat | None = None) -> "XPoly":
        return XPoly(ring, {tuple(key): coeff if coeff is not None else ring.one})

    # -- ring-like protocol ----------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, XPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: "XPoly") -> "XPoly":
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k)
            s = c if s is None else s + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return XPoly(self.ring, out)

    def __neg__(self) -> "XPoly":
        return XPoly(self.ring, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "XPoly") -> "XPoly":
        return self + (-other)

    def scale(self, c: CoeffRat) -> "XPoly":
        if not c:
            return XPoly(self.ring, {})
        return XPoly(self.ring, {k: v * c for k, v in self.terms.items()})

    def mono_shift(self, key: Vec, coeff: CoeffRat | None = None) -> "XPoly":
        """Multiply by coeff * X^key."""
        out = {}
        for k, c in self.terms.items():
            c2 = c if coeff is None else c * coeff
            if c2:
                out[vec_add(k, key)] = c2
        return XPoly(self.ring, out)

    def __mul__(self, other: "XPoly") -> "XPoly":
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out: dict[Vec, CoeffRat] = {}
        for k1, c1 in a.items():
            for k2, c2 in b.items():
                k = vec_add(k1, k2)
                p = c1 * c2
                s = out.get(k)
                s = p if s is None else s + p
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return XPoly(self.ring, out)

    def coeff(self, key: Vec) -> CoeffRat:
        return self.terms.get(tuple(key), self.ring.zero)

    def map_keys(self, fn) -> "XPoly":
        """Apply (key, coeff) -> (key', coeff') over all terms."""
        out: dict[Vec, CoeffRat] = {}
        for k, c in self.terms.items():
            k2, c2 = fn(k, c)
            s = out.get(k2)
            s = c2 if s is None else s + c2
            if s:
                out[k2] = s
            else:
                out.pop(k2, None)
        return XPoly(self.ring, out)

    def map_coeffs(self, fn, ring: CoeffRing | None = None) -> "XPoly":
        out = XPoly(ring or self.ring, {})
        for k, c in self.terms.items():
            c2 = fn(c)
            if c2:
                out.terms[k] = c2
        return out

    # -- rendering ----------------------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _grlex(kv[0]), reverse=True)

    def to_str(self, key_fmt=None) -> str:
        if not self.terms:
            return "0"
        fmt = key_fmt or (lambda k: "(" + ",".join(str(x) for x in k) + ")")
        parts = []
        for k, c in self.sorted_terms():
            cs = c.to_str()
            mono = "X^" + fmt(k) if any(k) else ""
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            else:
                if "+" in cs or (cs.count("-") - cs.startswith("-")) > 0 or "/" in cs:
                    cs = f"({cs})"
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> list:
        return [{"x_exponents": list(k), "coeff": c.to_json()} for k, c in self.sorted_terms()]

    def __repr__(self):
        return f"XPoly({self.to_str()})"


def common_denominator(f: XPoly) -> CoeffRat:
    """The lcm of all coefficient denominators, as a ring element.

    Scaling by it clears every denominator, after which the coefficient
    arithmetic of operator applications never leaves the polynomial ring.
    """
    from .coeffring import poly_exact_div, poly_gcd, poly_mul
    ring = f.ring
    unit = {(0,) * ring.nvars: 1}
    acc = dict(unit)
    for c in f.terms.values():
        if c.den == unit:
            continue
        g = poly_gcd(acc, c.den)
        extra = poly_exact_div(c.den, g)
        acc = poly_mul(acc, extra)
    return CoeffRat(ring, acc, dict(unit))


def exact_divide(p: XPoly, d: XPoly) -> XPoly:
    """Quotient p/d in the Laurent ring; raises InexactDivision otherwise."""
    if not d:
        raise ZeroDivisionError("division by the zero polynomial")
    if not p:
        return XPoly(p.ring, {})
    rank = len(next(iter(p.terms)))

    def min_exps(terms):
        lo = [min(k[i] for k in terms) for i in range(rank)]
        return tuple(lo)

    mu_p = min_exps(p.terms)
    mu_d = min_exps(d.terms)
    pp = {vec_sub(k, mu_p): c for k, c in p.terms.items()}
    dd = {vec_sub(k, mu_d): c for k, c in d.terms.items()}
    lead_d = max(dd, key=_grlex)
    lc_d = dd[lead_d]
    quot: dict[Vec, CoeffRat] = {}
    rem = dict(pp)
    while rem:
        lead_r = max(rem, key=_grlex)
        qk = vec_sub(lead_r, lead_d)
        if any(x < 0 for x in qk):
            raise InexactDivision("leading term not divisible")
        qc = rem[lead_r] / lc_d
        quot[qk] = qc
        for k, c in dd.items():
            kk = vec_add(qk, k)
            s = rem.get(kk)
            s = -(qc * c) if s is None else s - qc * c
            if s:
                rem[kk] = s
            else:
                rem.pop(kk, None)
    shift = vec_sub(mu_p, mu_d)
    return XPoly(p.ring, {vec_add(k, shift): c for k, c in quot.items()})
