"""Exact coefficient arithmetic.

Scalars are rational functions over the integers in q^(1/m) and the active
Hecke parameters of a datum.  A value is a pair of integer Laurent-free
polynomials (num, den) kept in a canonical normal form, so that equality of
values is literal equality of their term dictionaries.

Monomials are exponent tuples over the ring's variable list; variable 0 is
always the q-variable, whose exponent counts powers of q^(1/m).
"""

from __future__ import annotations

from math import gcd as _igcd
from typing import Iterable, Mapping

Monomial = tuple[int, ...]
Poly = dict[Monomial, int]


class DivergentLimit(ArithmeticError):
    """A one-variable limit does not exist (negative valuation)."""


class InexactDivision(ArithmeticError):
    """Division that was required to be exact left a remainder."""


# ---------------------------------------------------------------------------
# raw polynomial helpers (dict monomial -> int, no stored zeros)
# ---------------------------------------------------------------------------

def _grlex_key(mono: Monomial) -> tuple:
    return (sum(mono), mono)


def poly_add(a: Poly, b: Poly) -> Poly:
    out = dict(a)
    for m, c in b.items():
        s = out.get(m, 0) + c
        if s:
            out[m] = s
        else:
            out.pop(m, None)
    return out


def poly_neg(a: Poly) -> Poly:
    return {m: -c for m, c in a.items()}


def poly_sub(a: Poly, b: Poly) -> Poly:
    return poly_add(a, poly_neg(b))


def poly_mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    out: Poly = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = tuple(x + y for x, y in zip(m1, m2))
            s = out.get(m, 0) + c1 * c2
            if s:
                out[m] = s
            else:
                del out[m]
    return out


def poly_scale(a: Poly, c: int) -> Poly:
    if c == 0:
        return {}
    return {m: c * v for m, v in a.items()}


def poly_mono_mul(a: Poly, mono: Monomial, c: int = 1) -> Poly:
    if c == 0:
        return {}
    return {tuple(x + y for x, y in zip(m, mono)): c * v for m, v in a.items()}


def poly_content(a: Poly) -> int:
    g = 0
    for c in a.values():
        g = _igcd(g, c)
        if g == 1:
            return 1
    return g


def poly_min_exps(a: Poly) -> Monomial:
    it = iter(a)
    lo = list(next(it))
    for m in it:
        for i, e in enumerate(m):
            if e < lo[i]:
                lo[i] = e
    return tuple(lo)


def poly_leading(a: Poly) -> tuple[Monomial, int]:
    m = max(a, key=_grlex_key)
    return m, a[m]


def poly_exact_div(a: Poly, b: Poly) -> Poly | None:
    """Quotient a/b over Z if the division is exact, else None.

    Single-divisor division by leading terms under graded lex; exposes the
    remainder check through the None return.
    """
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return {}
    lb_m, lb_c = poly_leading(b)
    rem = dict(a)
    quot: Poly = {}
    while rem:
        lm, lc = poly_leading(rem)
        qm = tuple(x - y for x, y in zip(lm, lb_m))
        if any(e < 0 for e in qm) or lc % lb_c != 0:
            return None
        qc = lc // lb_c
        quot[qm] = qc
        rem = poly_sub(rem, poly_mono_mul(b, qm, qc))
    return quot


# ---------------------------------------------------------------------------
# multivariate gcd: monomial/integer content split + primitive PRS recursion
# ---------------------------------------------------------------------------

def _max_deg(a: Poly, var: int) -> int:
    return max(m[var] for m in a)


def _to_univariate(a: Poly, var: int) -> list[Poly]:
    """Coefficient list of a viewed as a polynomial in variable `var`."""
    coeffs: list[Poly] = [{} for _ in range(_max_deg(a, var) + 1)]
    for m, c in a.items():
        key = m[:var] + (0,) + m[var + 1:]
        coeffs[m[var]][key] = c
    return coeffs


def _from_univariate(coeffs: list[Poly], var: int) -> Poly:
    out: Poly = {}
    for d, p in enumerate(coeffs):
        for m, c in p.items():
            out[m[:var] + (d,) + m[var + 1:]] = c
    return out


def _uni_trim(coeffs: list[Poly]) -> list[Poly]:
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


def _uni_pseudo_rem(A: list[Poly], B: list[Poly]) -> list[Poly]:
    dB = len(B) - 1
    lB = B[-1]
    R = [dict(p) for p in A]
    while len(R) - 1 >= dB and R:
        dR = len(R) - 1
        lR = R[-1]
        R = [poly_mul(p, lB) for p in R[:-1]]
        shift = dR - dB
        for i, bc in enumerate(B[:-1]):
            R[shift + i] = poly_sub(R[shift + i], poly_mul(lR, bc))
        R = _uni_trim(R)
        if not R:
            break
    return R


def _poly_list_gcd(ps: Iterable[Poly]) -> Poly:
    g: Poly = {}
    for p in ps:
        if not p:
            continue
        g = p if not g else poly_gcd(g, p)
        if len(g) == 1 and poly_content(g) == 1 and not any(poly_min_exps(g)):
            break
    return g


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Gcd over Z, normalized to positive leading (graded lex) coefficient."""
    if not a:
        return _positive_leading(dict(b))
    if not b:
        return _positive_leading(dict(a))
    ca, cb = poly_content(a), poly_content(b)
    ma, mb = poly_min_exps(a), poly_min_exps(b)
    mg = tuple(min(x, y) for x, y in zip(ma, mb))
    cg = _igcd(ca, cb)
    a = poly_mono_mul(a, tuple(-e for e in ma))
    b = poly_mono_mul(b, tuple(-e for e in mb))
    a = {m: c // ca for m, c in a.items()}
    b = {m: c // cb for m, c in b.items()}
    if len(a) == 1 or len(b) == 1:
        core = _one_like(a)
    else:
        # the heuristic integer gcd is fastest on small operands; its
        # evaluation integers blow up once the operands are large or the
        # coefficients very big, where the word-sized modular route wins
        small = len(a) + len(b) <= 200 and \
            max(_max_norm(a), _max_norm(b)).bit_length() <= 8192
        order = (_heu_gcd, _modular_gcd) if small else (_modular_gcd, _heu_gcd)
        core = order[0](a, b)
        if core is None:
            core = order[1](a, b)
        if core is None:
            core = _core_gcd(a, b)
    return _positive_leading(poly_mono_mul(core, mg, cg))


# -- modular gcd core ---------------------------------------------------------
#
# All arithmetic happens mod word-sized primes; a nontrivial candidate is
# lifted with balanced residues and verified by exact division over Z, so a
# returned factor is always correct.  The coprimality shortcut is certified
# by two primes that do not divide either graded-lex leading coefficient
# (those divide the leading coefficient of any common factor).

_MOD_PRIMES = (1073741789, 1073741783, 1073741741, 1073741723, 1073741719,
               1073741717)


def _fp_reduce(a: Poly, p: int) -> Poly:
    out = {}
    for m, c in a.items():
        r = c % p
        if r:
            out[m] = r
    return out


def _fp_eval_var(a: Poly, var: int, alpha: int, p: int) -> Poly:
    pows = {0: 1}
    out: Poly = {}
    for m, c in a.items():
        e = m[var]
        pe = pows.get(e)
        if pe is None:
            pe = pow(alpha, e, p)
            pows[e] = pe
        key = m[:var] + (0,) + m[var + 1:]
        s = (out.get(key, 0) + c * pe) % p
        if s:
            out[key] = s
        else:
            out.pop(key, None)
    return out


def _fp_univariate(a: Poly, var: int) -> list[int]:
    out = [0] * (_max_deg(a, var) + 1)
    for m, c in a.items():
        out[m[var]] = c
    return out


def _fp_euclid(fa: list[int], fb: list[int], p: int) -> list[int]:
    while fb:
        # fa mod fb
        fb_lead_inv = pow(fb[-1], -1, p)
        fa = fa[:]
        while len(fa) >= len(fb) and fa:
            if fa[-1]:
                q = fa[-1] * fb_lead_inv % p
                off = len(fa) - len(fb)
                for i, bc in enumerate(fb):
                    fa[off + i] = (fa[off + i] - q * bc) % p
            while fa and not fa[-1]:
                fa.pop()
        fa, fb = fb, fa
    inv = pow(fa[-1], -1, p)
    return [c * inv % p for c in fa]


def _fp_div_exact(a: Poly, b: Poly, p: int) -> Poly | None:
    if not a:
        return {}
    lead_b = max(b, key=_grlex_key)
    inv = pow(b[lead_b], -1, p)
    rem = dict(a)
    quot: Poly = {}
    while rem:
        lead_r = max(rem, key=_grlex_key)
        qm = tuple(x - y for x, y in zip(lead_r, lead_b))
        if any(e < 0 for e in qm):
            return None
        qc = rem[lead_r] * inv % p
        quot[qm] = qc
        for m, c in b.items():
            k = tuple(x + y for x, y in zip(qm, m))
            s = (rem.get(k, 0) - qc * c) % p
            if s:
                rem[k] = s
            else:
                rem.pop(k, None)
    return quot


def _fp_monic(g: Poly, p: int) -> Poly:
    lead = max(g, key=_grlex_key)
    if g[lead] == 1:
        return g
    inv = pow(g[lead], -1, p)
    return {m: c * inv % p for m, c in g.items()}


def _gcd_fp(a: Poly, b: Poly, p: int, depth: int = 0) -> Poly | None:
    """Monic gcd of a, b over F_p, or None when bad evaluations pile up."""
    if not a or not b or depth > 10:
        return None
    nvars = len(next(iter(a)))
    degs = [(v, _max_deg(a, v), _max_deg(b, v)) for v in range(nvars)]
    vars_in = [v for v, da, db in degs if da > 0 or db > 0]
    if not vars_in:
        return _one_like(a)
    if all(min(da, db) == 0 for _, da, db in degs):
        # every variable is missing from one side: a common factor is constant
        return _one_like(a)
    if len(vars_in) == 1:
        v = vars_in[0]
        g = _fp_euclid(_fp_univariate(a, v), _fp_univariate(b, v), p)
        zero = (0,) * nvars
        return {zero[:v] + (d,) + zero[v + 1:]: c for d, c in enumerate(g) if c}
    # eliminate the variable with the smallest degree bound for the gcd;
    # a variable on one side only has bound 0 and needs a single sample
    u = min(vars_in, key=lambda v: (min(degs[v][1], degs[v][2]), -v))
    du = min(degs[u][1], degs[u][2])
    samples: list[tuple[int, Poly]] = []
    best_lead = None
    ones_seen = 0
    alpha = 0
    tries = 0
    unit = _one_like(a)
    while tries < du + 25:
        alpha += 1
        tries += 1
        aa = _fp_eval_var(a, u, alpha, p)
        bb = _fp_eval_var(b, u, alpha, p)
        if not aa or not bb:
            continue
        g = _gcd_fp(aa, bb, p, depth + 1)
        if g is None:
            continue
        if g == unit:
            ones_seen += 1
            if ones_seen >= 2:
                return unit
            continue
        lead = _grlex_key(max(g, key=_grlex_key))
        if best_lead is None or lead < best_lead:
            best_lead = lead
            samples = [(alpha, g)]
        elif lead == best_lead:
            samples.append((alpha, g))
        if len(samples) == du + 1:
            cand = _fp_interpolate(samples, u, p, nvars)
            if cand and _fp_div_exact(a, cand, p) is not None \
                    and _fp_div_exact(b, cand, p) is not None:
                return _fp_monic(cand, p)
            return None
    return None


def _fp_interpolate(samples, u: int, p: int, nvars: int) -> Poly:
    """Lagrange interpolation in variable u of mod-p polynomial values."""
    out: Poly = {}
    pts = [alpha for alpha, _ in samples]
    for j, (alpha_j, gj) in enumerate(samples):
        # ell_j(u) as a dense coefficient list
        ell = [1]
        denom = 1
        for k, alpha_k in enumerate(pts):
            if k == j:
                continue
            new = [0] * (len(ell) + 1)
            for i, c in enumerate(ell):
                new[i] = (new[i] - c * alpha_k) % p
                new[i + 1] = (new[i + 1] + c) % p
            ell = new
            denom = denom * (alpha_j - alpha_k) % p
        scale = pow(denom, -1, p)
        for i, c in enumerate(ell):
            if not c:
                continue
            w = c * scale % p
            for m, cc in gj.items():
                key = m[:u] + (i,) + m[u + 1:]
                s = (out.get(key, 0) + w * cc) % p
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
    return out


def _balanced_lift(a: Poly, p: int) -> Poly:
    half = p // 2
    return {m: (c - p if c > half else c) for m, c in a.items()}


def _modular_gcd(a: Poly, b: Poly) -> Poly | None:
    """Verified gcd of primitive cores via mod-p computation, or None."""
    la = a[max(a, key=_grlex_key)]
    lb = b[max(b, key=_grlex_key)]
    scale = _igcd(la, lb)
    ones = 0
    for p in _MOD_PRIMES:
        if la % p == 0 or lb % p == 0:
            continue
        gp = _gcd_fp(_fp_reduce(a, p), _fp_reduce(b, p), p)
        if gp is None:
            continue
        if len(gp) == 1 and not any(next(iter(gp))):
            ones += 1
            if ones >= 2:
                return _one_like(a)
            continue
        cand = _balanced_lift({m: c * (scale % p) % p for m, c in gp.items()}, p)
        cc = poly_content(cand)
        if cc > 1:
            cand = {m: c // cc for m, c in cand.items()}
        if poly_exact_div(a, cand) is not None and poly_exact_div(b, cand) is not None:
            return _positive_leading(cand)
    return None


def _max_norm(p: Poly) -> int:
    return max(abs(c) for c in p.values())


def _eval_var(p: Poly, var: int, xi: int) -> Poly:
    out: Poly = {}
    for m, c in p.items():
        key = m[:var] + (0,) + m[var + 1:]
        s = out.get(key, 0) + c * xi ** m[var]
        if s:
            out[key] = s
        else:
            del out[key]
    return out


def _balanced_digits(p: Poly, var: int, xi: int) -> Poly:
    """Reconstruct a polynomial in `var` from base-xi digits of coefficients."""
    out: Poly = {}
    half = xi // 2
    work = dict(p)
    d = 0
    while work:
        nxt: Poly = {}
        for m, c in work.items():
            r = c % xi
            if r > half:
                r -= xi
            if r:
                out[m[:var] + (d,) + m[var + 1:]] = r
            q = (c - r) // xi
            if q:
                nxt[m] = q
        work = nxt
        d += 1
        if d > 4000:
            return {}
    return out


def _heu_gcd(a: Poly, b: Poly, depth: int = 0) -> Poly | None:
    """Heuristic gcd by integer evaluation; verified by exact division."""
    nvars = len(next(iter(a)))
    var = -1
    best = 1 << 60
    for v in range(nvars):
        da, db = _max_deg(a, v), _max_deg(b, v)
        if da > 0 or db > 0:
            dm = max(da, db)
            if dm < best:
                best, var = dm, v
    if var < 0:
        g = _igcd(poly_content(a), poly_content(b))
        return {(0,) * nvars: g}
    xi = 2 * min(_max_norm(a), _max_norm(b)) + 2
    for _ in range(6):
        if xi.bit_length() * max(_max_deg(a, var), _max_deg(b, var)) > 600_000:
            return None
        fa = _eval_var(a, var, xi)
        fb = _eval_var(b, var, xi)
        if fa and fb:
            gamma = _heu_gcd(fa, fb, depth + 1) if depth < 12 else None
            if gamma:
                cand = _balanced_digits(gamma, var, xi)
                if cand:
                    if depth == 0:
                        # the top-level core inputs are primitive, so the true
                        # gcd is too; at deeper levels the integer content
                        # carries the evaluated variables and must be kept
                        cc = poly_content(cand)
                        if cc > 1:
                            cand = {m: c // cc for m, c in cand.items()}
                    cand = _positive_leading(cand)
                    if poly_exact_div(a, cand) is not None and \
                            poly_exact_div(b, cand) is not None:
                        return cand
        xi = xi * 73794 // 27011 + 1
    return None


def _positive_leading(p: Poly) -> Poly:
    if p and poly_leading(p)[1] < 0:
        return poly_neg(p)
    return p


def _core_gcd(a: Poly, b: Poly) -> Poly:
    """Gcd of primitive, monomial-free polynomials."""
    if len(a) == 1 or len(b) == 1:
        # primitive single terms are units once content and monomial are gone
        return _one_like(a)
    if a == b:
        return dict(a)
    nvars = len(next(iter(a)))
    var = -1
    for v in range(nvars - 1, -1, -1):
        if _max_deg(a, v) > 0 and _max_deg(b, v) > 0:
            var = v
            break
    if var < 0:
        # no variable occurs in both beyond degree 0: only integers can divide both
        return _one_like(a)
    A = _uni_trim(_to_univariate(a, var))
    B = _uni_trim(_to_univariate(b, var))
    if len(A) < len(B):
        A, B = B, A
    cont_a = _poly_list_gcd(A)
    cont_b = _poly_list_gcd(B)
    cont = poly_gcd(cont_a, cont_b)
    A = [_exact(p, cont_a) for p in A]
    B = [_exact(p, cont_b) for p in B]
    while True:
        R = _uni_pseudo_rem(A, B)
        if not R:
            break
        rc = _poly_list_gcd(R)
        A, B = B, [_exact(p, rc) for p in R]
        if len(B) == 1:
            break
    if len(B) == 1:
        # primitive parts are coprime; gcd is the content part only
        return poly_mul(cont, _one_like(a)) if cont else _one_like(a)
    g = poly_mul(cont, _from_univariate(B, var))
    # gcd of primitive inputs is primitive up to integer sign
    cg = poly_content(g)
    if cg > 1:
        g = {m: c // cg for m, c in g.items()}
    return g


def _one_like(p: Poly) -> Poly:
    n = len(next(iter(p)))
    return {(0,) * n: 1}


def _exact(p: Poly, d: Poly) -> Poly:
    if not p:
        return {}
    q = poly_exact_div(p, d)
    if q is None:
        raise InexactDivision("internal gcd bookkeeping produced a non-divisor")
    return q


# ---------------------------------------------------------------------------
# the ring and its fractions
# ---------------------------------------------------------------------------

class CoeffRing:
    """Rational functions in q^(1/m) and a fixed tuple of parameter names.

    Instances are immutable; all arithmetic happens on CoeffRat values that
    remember their ring.
    """

    def __init__(self, params: Iterable[str], m: int = 1):
        self.vars: tuple[str, ...] = ("q",) + tuple(params)
        self.m = int(m)
        if self.m < 1:
            raise ValueError("m must be a positive integer")
        self.nvars = len(self.vars)
        self._index = {v: i for i, v in enumerate(self.vars)}
        unit: Poly = {(0,) * self.nvars: 1}
        self.one = CoeffRat(self, dict(unit), dict(unit), _normalized=True)
        self.zero = CoeffRat(self, {}, dict(unit), _normalized=True)

    def __repr__(self):
        return f"CoeffRing(vars={self.vars}, m={self.m})"

    def __eq__(self, other):
        return isinstance(other, CoeffRing) and self.vars == other.vars and self.m == other.m

    def __hash__(self):
        return hash((self.vars, self.m))

    def index(self, name: str) -> int:
        return self._index[name]

    def integer(self, n: int) -> "CoeffRat":
        if n == 0:
            return self.zero
        return CoeffRat(self, {(0,) * self.nvars: int(n)}, {(0,) * self.nvars: 1}, _normalized=True)

    def monomial(self, exps: Mapping[str, int] | None = None, coeff: int = 1) -> "CoeffRat":
        """Laurent monomial coeff * prod var^exp; negative exponents allowed."""
        e = [0] * self.nvars
        for name, k in (exps or {}).items():
            e[self._index[name]] = int(k)
        return CoeffRat(self, {tuple(e): int(coeff)}, {(0,) * self.nvars: 1})

    def q_power(self, num_over_m: int) -> "CoeffRat":
        """q^(num_over_m / m), an integer power of the internal q-variable."""
        return self.monomial({"q": num_over_m})

    def var(self, name: str) -> "CoeffRat":
        return self.monomial({name: 1})

    def from_exponent_vector(self, exps: Iterable[int], coeff: int = 1) -> "CoeffRat":
        e = tuple(int(x) for x in exps)
        if len(e) != self.nvars:
            raise ValueError("exponent vector length mismatch")
        return CoeffRat(self, {e: int(coeff)}, {(0,) * self.nvars: 1})


class CoeffRat:
    """An exact rational function in normal form.

    Normal form: num/den are integer polynomials with nonnegative exponents,
    no monomial common to every term of both, gcd(num, den) = 1, common
    integer content removed, and the graded-lex leading coefficient of den
    positive.  Equality and hashing are syntactic on that form.
    """

    __slots__ = ("ring", "num", "den", "_hash")

    def __init__(self, ring: CoeffRing, num: Poly, den: Poly, _normalized: bool = False):
        self.ring = ring
        if not _normalized:
            num, den = _normal_form(num, den)
        self.num = num
        self.den = den
        self._hash = None

    # -- basic protocol ----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.integer(other)
        if not isinstance(other, CoeffRat):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((frozenset(self.num.items()), frozenset(self.den.items())))
        return self._hash

    def __bool__(self):
        return bool(self.num)

    def __repr__(self):
        return f"CoeffRat({self.to_str()})"

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "CoeffRat":
        if isinstance(other, CoeffRat):
            return other
        if isinstance(other, int):
            return self.ring.integer(other)
        raise TypeError(f"cannot coerce {other!r}")

    def __add__(self, other):
        other = self._coerce(other)
        if not self.num:
            return other
        if not other.num:
            return self
        g = poly_gcd(self.den, other.den)
        db = _exact(self.den, g)
        dd = _exact(other.den, g)
        num = poly_add(poly_mul(self.num, dd), poly_mul(other.num, db))
        den = poly_mul(self.den, dd)
        return CoeffRat(self.ring, num, den)

    __radd__ = __add__

    def __neg__(self):
        return CoeffRat(self.ring, poly_neg(self.num), dict(self.den), _normalized=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if not self.num or not other.num:
            return self.ring.zero
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        num = poly_mul(_exact(self.num, g1), _exact(other.num, g2))
        den = poly_mul(_exact(self.den, g2), _exact(other.den, g1))
        return CoeffRat(self.ring, num, den)

    __rmul__ = __mul__

    def inverse(self) -> "CoeffRat":
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        return CoeffRat(self.ring, dict(self.den), dict(self.num))

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k == 0:
            return self.ring.one
        base = self if k > 0 else self.inverse()
        out = base
        for _ in range(abs(k) - 1):
            out = out * base
        return out

    # -- structure ----------------------------------------------------------

    def is_monomial(self) -> bool:
        return len(self.num) == 1 and len(self.den) == 1

    def valuation(self, name: str) -> int:
        """Order in the named variable: min exponent of num minus den."""
        if not self.num:
            raise ValueError("valuation of zero")
        i = self.ring.index(name)
        vn = min(m[i] for m in self.num)
        vd = min(m[i] for m in self.den)
        return vn - vd

    def substitute(self, images: Mapping[str, "CoeffRat"], target: CoeffRing | None = None) -> "CoeffRat":
        """Apply a monomial substitution: each named variable maps to a
        Laurent monomial (or 1) of the target ring; unnamed variables map to
        their same-named counterparts."""
        tgt = target or self.ring
        vecs: list[tuple[Monomial, int]] = []
        unit_m = (0,) * tgt.nvars
        for name in self.ring.vars:
            if name in images:
                img = images[name]
                if img.ring is not tgt and img.ring != tgt:
                    raise ValueError("substitution image in wrong ring")
                if not img.is_monomial():
                    raise ValueError("only monomial substitutions are supported")
                (mn, cn), = img.num.items()
                (md, cd), = img.den.items()
                if abs(cn) != 1 or cd != 1:
                    raise ValueError("substitution image must be a unit monomial")
                vecs.append((tuple(a - b for a, b in zip(mn, md)), cn))
            elif name in tgt._index:
                v = [0] * tgt.nvars
                v[tgt.index(name)] = 1
                vecs.append((tuple(v), 1))
            else:
                raise ValueError(f"variable {name} has no image in target ring")

        def push(p: Poly) -> Poly:
            out: Poly = {}
            for m, c in p.items():
                acc = list(unit_m)
                sign = 1
                for e, (vec, s) in zip(m, vecs):
                    if e:
                        for i, x in enumerate(vec):
                            acc[i] += e * x
                        if s < 0 and e % 2:
                            sign = -sign
                key = tuple(acc)
                s2 = out.get(key, 0) + sign * c
                if s2:
                    out[key] = s2
                else:
                    del out[key]
            return out

        return CoeffRat(tgt, push(self.num), push(self.den))

    def star(self) -> "CoeffRat":
        """Invert every variable (q -> q^-1and v -> v^-1 for each parameter)."""
        inv = {name: self.ring.monomial({name: -1}) for name in self.ring.vars}
        return self.substitute(inv)

    # -- limits --------------------------------------------------------------

    def limit_zero(self, name: str) -> "CoeffRat":
        """Exact limit as the named variable goes to 0."""
        if not self.num:
            return self
        i = self.ring.index(name)
        vn = min(m[i] for m in self.num)
        vd = min(m[i] for m in self.den)
        if vn > vd:
            return self.ring.zero
        if vn < vd:
            raise DivergentLimit(f"pole of order {vd - vn} at {name}=0")
        num = {m[:i] + (0,) + m[i + 1:]: c for m, c in self.num.items() if m[i] == vn}
        den = {m[:i] + (0,) + m[i + 1:]: c for m, c in self.den.items() if m[i] == vd}
        return CoeffRat(self.ring, num, den)

    def limit_infinity(self, name: str) -> "CoeffRat":
        return self.substitute({name: self.ring.monomial({name: -1})}).limit_zero(name)

    # -- rendering -----------------------------------------------------------

    def _poly_str(self, p: Poly) -> str:
        if not p:
            return "0"
        parts = []
        for mono in sorted(p, key=_grlex_key, reverse=True):
            c = p[mono]
            factors = []
            for name, e in zip(self.ring.vars, mono):
                if e == 0:
                    continue
                if name == "q" and self.ring.m > 1:
                    if e % self.ring.m == 0:
                        e = e // self.ring.m
                    else:
                        factors.append(f"q^({e}/{self.ring.m})")
                        continue
                factors.append(name if e == 1 else f"{name}^{e}")
            body = "*".join(factors)
            if not body:
                term = str(abs(c))
            elif abs(c) == 1:
                term = body
            else:
                term = f"{abs(c)}*{body}"
            parts.append(("- " if c < 0 else "+ ") + term)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else ("-" + s[2:])

    def to_str(self) -> str:
        ns = self._poly_str(self.num)
        if self.den == {(0,) * self.ring.nvars: 1}:
            return ns
        ds = self._poly_str(self.den)
        if len(self.num) > 1:
            ns = f"({ns})"
        return f"{ns}/({ds})"

    def to_json(self) -> dict:
        def enc(p: Poly):
            return [[list(m), c] for m, c in sorted(p.items(), key=lambda kv: _grlex_key(kv[0]))]
        return {"num": enc(self.num), "den": enc(self.den)}


def _normal_form(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    num = {m: c for m, c in num.items() if c}
    den = {m: c for m, c in den.items() if c}
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        n = len(next(iter(den)))
        return {}, {(0,) * n: 1}
    lo_n = poly_min_exps(num)
    lo_d = poly_min_exps(den)
    shift = tuple(-min(a, b) for a, b in zip(lo_n, lo_d))
    if any(shift):
        num = poly_mono_mul(num, shift)
        den = poly_mono_mul(den, shift)
    g = poly_gcd(num, den)
    if len(g) > 1 or poly_content(g) > 1 or any(poly_min_exps(g)):
        num = _exact(num, g)
        den = _exact(den, g)
    if poly_leading(den)[1] < 0:
        num, den = poly_neg(num), poly_neg(den)
    return num, den


# ---------------------------------------------------------------------------
# module-level limit operations (the CLI/tests entry points)
# ---------------------------------------------------------------------------

def limit_v0(c: CoeffRat, var: str = "v") -> CoeffRat:
    return c.limit_zero(var)


def limit_vinf(c: CoeffRat, var: str = "v") -> CoeffRat:
    return c.limit_infinity(var)


def limit_q0(c: CoeffRat) -> CoeffRat:
    return c.limit_zero("q")


def limit_qinf(c: CoeffRat) -> CoeffRat:
    return c.limit_infinity("q")


def equalize_parameters(c: CoeffRat, target: CoeffRing) -> CoeffRat:
    """Send every Hecke parameter of c's ring to the single parameter v."""
    images = {name: target.var("v") for name in c.ring.vars[1:]}
    images["q"] = target.var("q")
    return c.substitute(images, target)
