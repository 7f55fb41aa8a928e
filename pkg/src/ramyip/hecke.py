"""The polynomial-module action of the double affine Hecke algebra.

Operators are implemented directly as functions on XPoly values: the
generators T_i (i over the affine X nodes), their inverses, multiplication by
X monomials, and the length-zero automorphisms.  Derived operators cover
T_w, Y^mu, the Y-side generators T_i^Y and pi^Y, and the group elements X^w.
The eigenvalue of Y^mu on E_lambda is computed combinatorially and serves as
the independent oracle for the alcove-path formula.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .coeffring import CoeffRat, CoeffRing
from .rootdata import (
    AffineWeight, DoubleAffineDatum, FractionalExponent, Vec, X_SIDE, Y_SIDE,
    dot, mat_vec, vec_neg,
)
from .weyl import FinWeyl, WeylElem, groups, u_lambda_elem
from .xpoly import XPoly, exact_divide


class HeckeOps:
    """DAHA operators on the polynomial module, for one coefficient ring.

    params: 'generic' uses the datum's active parameter alphabet, 'equal'
    collapses every Hecke parameter to the single variable v.
    """

    def __init__(self, datum: DoubleAffineDatum, params: str = "generic"):
        if params not in ("generic", "equal"):
            raise ValueError("params must be 'generic' or 'equal'")
        self.datum = datum
        self.equal = params == "equal"
        self.ring: CoeffRing = datum.equal_ring if self.equal else datum.ring
        self.gx, self.gy = groups(datum)
        self.rank = datum.rank
        self.one = XPoly.one(self.ring, self.rank)
        self._vfin_cache: dict = {}

    # -- parameters -----------------------------------------------------------

    def _sym(self, symbol: str) -> CoeffRat:
        name = self.datum.param_subs.get(symbol, symbol)
        if name == "1":
            return self.ring.one
        return self.ring.var("v" if self.equal else name)

    def v_node_x(self, node: int) -> CoeffRat:
        return self._sym(self.datum._orbit_symbol[self.datum.side_x.node_orbit(node)])

    def v2_node_x(self, node: int) -> CoeffRat:
        if node not in self.datum.S_X:
            return self.v_node_x(node)
        return self._sym("vz" if node == 0 else "v2")

    def v_node_y(self, node: int) -> CoeffRat:
        if node != 0:
            return self.v_node_x(node)
        return self.v2_node_x(self.datum._short_simple_x())

    def v2_node_y(self, node: int) -> CoeffRat:
        if node not in self.datum.S_Y:
            return self.v_node_y(node)
        if node == 0:
            return self.v2_node_x(0)
        return self.v_node_x(0)

    def v_orbit(self, tag: str) -> CoeffRat:
        return self._sym(self.datum._orbit_symbol[tag])

    def v_weyl_x(self, w: WeylElem) -> CoeffRat:
        """v_w = product of v_beta over the inversions of w in W(X~)."""
        out = self.ring.one
        for tag, k in self.gx.inversion_orbit_counts(w).items():
            if k:
                out = out * self.v_orbit(tag) ** k
        return out

    def v_finite(self, fin: FinWeyl) -> CoeffRat:
        """v_u for a finite element, via its classical X-side inversions."""
        out = self._vfin_cache.get(fin.mx)
        if out is None:
            out = self.ring.one
            for r in self.datum.X.finite_inversions(fin.mx):
                out = out * self.v_orbit("short" if r.short else "long")
            self._vfin_cache[fin.mx] = out
        return out

    # -- X-side generators -------------------------------------------------------

    def x_monomial(self, lam: Vec, delta_num: int = 0) -> XPoly:
        return XPoly.monomial(self.ring, tuple(lam), self.ring.q_power(delta_num))

    def alpha_x_monomial(self, i: int, mult: int = 1) -> XPoly:
        a = self.gx.alpha(i)
        return self.x_monomial(tuple(mult * c for c in a.classical), mult * a.delta_num)

    def s_iq(self, i: int, f: XPoly) -> XPoly:
        """The action of s_i in W_a(X~) on the module (with its q shift)."""
        s = self.gx.simple(i)
        gx = self.gx

        def step(k, c):
            img = gx.act(s, AffineWeight(X_SIDE, k, 0))
            return img.classical, c * self.ring.q_power(img.delta_num)
        return f.map_keys(step)

    def apply_ti(self, i: int, f: XPoly) -> XPoly:
        """T_i f per the nonreduced commutation relation; division is exact."""
        vi = self.v_node_x(i)
        sf = self.s_iq(i, f)
        g = f - sf
        out = sf.scale(vi)
        if not g:
            return out
        if i in self.datum.S_X:
            v2 = self.v2_node_x(i)
            divisor = self.one - self.alpha_x_monomial(i, 2)
            quot = exact_divide(g, divisor)
            numer = self.one.scale(vi - vi.inverse()) + \
                self.alpha_x_monomial(i).scale(v2 - v2.inverse())
            return out + numer * quot
        divisor = self.one - self.alpha_x_monomial(i)
        quot = exact_divide(g, divisor)
        return out + quot.scale(vi - vi.inverse())

    def apply_ti_inv(self, i: int, f: XPoly) -> XPoly:
        vi = self.v_node_x(i)
        return self.apply_ti(i, f) - f.scale(vi - vi.inverse())

    def apply_pi_x(self, k: int, f: XPoly) -> XPoly:
        pi = self.gx.pi_elements()[k]
        gx = self.gx

        def step(key, c):
            img = gx.act(pi, AffineWeight(X_SIDE, key, 0))
            return img.classical, c * self.ring.q_power(img.delta_num)
        return f.map_keys(step)

    def apply_tw(self, w: WeylElem, f: XPoly) -> XPoly:
        k, word = self.gx.reduced_word(w)
        for i in reversed(word):
            f = self.apply_ti(i, f)
        return self.apply_pi_x(k, f) if k else f

    def apply_tw_inv(self, w: WeylElem, f: XPoly) -> XPoly:
        k, word = self.gx.reduced_word(w)
        if k:
            inv = self.gx.inv(self.gx.pi_elements()[k])
            kk = next(n for n, p in self.gx.pi_elements().items() if p == inv)
            f = self.apply_pi_x(kk, f)
        for i in word:
            f = self.apply_ti_inv(i, f)
        return f

    def apply_tword(self, word, f: XPoly, inverse: bool = False) -> XPoly:
        """T-product over a classical word (0-based finite indices)."""
        if inverse:
            for i in word:
                f = self.apply_ti_inv(i + 1, f)
        else:
            for i in reversed(word):
                f = self.apply_ti(i + 1, f)
        return f

    def apply_t_finite(self, fin: FinWeyl, f: XPoly, inverse: bool = False) -> XPoly:
        word = self.datum.X.word_of(fin.mx)
        return self.apply_tword(word, f, inverse=inverse)

    # -- Y operators ----------------------------------------------------------------

    def _dominant_complement(self, beta: Vec) -> Vec:
        """A short dominant nu in Y with beta + nu dominant."""
        Ydat = self.datum.Y
        if Ydat.is_dominant(beta):
            return (0,) * self.rank
        two_rho = Ydat.two_rho_vec
        k = 0
        for i in range(self.rank):
            val = dot(Ydat.alphacheck[i], beta)
            if val < 0:
                k = max(k, (-val + 1) // 2)
        best = tuple(k * r for r in two_rho)
        best_len = dot(Ydat.two_rho_check, best)
        bound = max(abs(x) for x in best)
        from itertools import product
        for cand in product(range(0, min(bound, 4) + 1), repeat=self.rank):
            if not any(cand):
                continue
            if dot(Ydat.two_rho_check, cand) >= best_len:
                continue
            if Ydat.is_dominant(cand) and \
                    Ydat.is_dominant(tuple(a + b for a, b in zip(beta, cand))):
                best = cand
                best_len = dot(Ydat.two_rho_check, cand)
        return best

    def apply_ymu(self, mu, f: XPoly) -> XPoly:
        """Y^mu for mu in Y plus an optional delta part (AffineWeight allowed)."""
        if isinstance(mu, AffineWeight):
            if mu.side != Y_SIDE:
                raise ValueError("Y^mu needs a Y-side weight")
            dnum = mu.delta_num
            beta = mu.classical
        else:
            dnum = 0
            beta = tuple(mu)
        nu = self._dominant_complement(beta)
        mu_plus = tuple(b + r for b, r in zip(beta, nu))
        if any(nu):
            f = self.apply_tw_inv(self.gx.translation(nu), f)
        if any(mu_plus):
            f = self.apply_tw(self.gx.translation(mu_plus), f)
        if dnum:
            f = f.scale(self.ring.q_power(-dnum))
        return f

    def apply_t0y_inv(self, f: XPoly) -> XPoly:
        """(T_0^Y)^{-1} = X^vartheta T_{s_vartheta}."""
        th = self.datum.X.vartheta
        word = self.datum.X.word_of(self._reflection_mat_x(th))
        f = self.apply_tword(word, f)
        return f.mono_shift(th.vec)

    def apply_t0y(self, f: XPoly) -> XPoly:
        th = self.datum.X.vartheta
        f = f.mono_shift(vec_neg(th.vec))
        word = self.datum.X.word_of(self._reflection_mat_x(th))
        return self.apply_tword(word, f, inverse=True)

    def _reflection_mat_x(self, root):
        n = self.rank
        cols = []
        for b in range(n):
            e = tuple(int(k == b) for k in range(n))
            cols.append(tuple(x - root.covec[b] * y for x, y in zip(e, root.vec)))
        return tuple(tuple(cols[b][r] for b in range(n)) for r in range(n))

    def apply_ti_y(self, i: int, f: XPoly, inverse: bool = False) -> XPoly:
        if i == 0:
            return self.apply_t0y_inv(f) if inverse else self.apply_t0y(f)
        return self.apply_ti_inv(i, f) if inverse else self.apply_ti(i, f)

    def apply_pi_y(self, k: int, f: XPoly) -> XPoly:
        """pi_k^Y = X^{omega_k} T_{u_k^{-1}} with u_k = u_{omega_k}."""
        if k == 0:
            return f
        om = self.datum.X.omega_in_lattice(k - 1)
        if om is None:
            raise ValueError(f"omega_{k} is not in the X lattice")
        u, word = u_lambda_elem(self.datum, om)
        f = self.apply_tword(word, f)  # application-order word = product word of u^{-1}
        return f.mono_shift(om)

    # -- X^w -------------------------------------------------------------------------

    def xw_on_one(self, u: WeylElem) -> tuple[CoeffRat, Vec]:
        """X^u applied to 1: the scalar v_dir(u) and the weight wt(u)."""
        k, word = self.gy.reduced_word(u)
        prefix = self.gy.pi_elements()[k]
        signs = []
        for i in word:
            a = self.gy.act(prefix, self.gy.alpha(i))
            signs.append(1 if not self.gy.is_negative(
                AffineWeight(Y_SIDE, a.classical, 0)) else -1)
            prefix = self.gy.mul(prefix, self.gy.simple(i))
        f = self.one
        for i, eps in zip(reversed(word), reversed(signs)):
            f = self.apply_ti_y(i, f, inverse=(eps == -1))
        f = self.apply_pi_y(k, f)
        if len(f.terms) != 1:
            raise AssertionError("X^w applied to 1 is not a monomial")
        (key, c), = f.terms.items()
        return c, key

    # -- eigenvalues --------------------------------------------------------------------

    def chi(self, mu: AffineWeight, lam: Vec) -> CoeffRat:
        """The eigenvalue of Y^mu on the polynomial indexed by lam."""
        if mu.side != Y_SIDE:
            raise ValueError("chi needs a Y-side weight")
        datum = self.datum
        qnum = -mu.delta_num - datum.side_x.pairing_num(mu.classical, lam)
        u, _ = u_lambda_elem(datum, lam)
        beta_moved = mat_vec(u.my, mu.classical)
        Ydat = datum.Y
        es = dot(Ydat.two_rho_check_shortco, beta_moved)
        el = dot(Ydat.two_rho_check_longco, beta_moved)
        if self.equal:
            return self.ring.monomial({"q": qnum, "v": es + el})
        if datum.dual_rule and not Ydat.single_length:
            es, el = el, es  # dual untwisted swaps the coroot classes
        exps = {"q": qnum}
        if datum.side_x.r0_nonempty:
            if datum.side_x.split_class_short:
                if es % 2:
                    raise FractionalExponent("odd short-parameter exponent under the zero-orbit substitution")
                exps["vs"] = es // 2
                exps["v0"] = es // 2
                if el:
                    exps["vl"] = el
            else:
                if el % 2:
                    raise FractionalExponent("odd long-parameter exponent under the zero-orbit substitution")
                exps["vl"] = el // 2
                exps["v0"] = el // 2
                if es:
                    exps["vs"] = es
        else:
            if es:
                exps["vs"] = es
            if el:
                exps["vl"] = el
        return self.ring.monomial(exps)

    def y_basis(self) -> list[AffineWeight]:
        """Dominant generators of Y plus -delta.

        For Y = P these are the fundamental weights.  For Y = Q the
        fundamental weights need not lie in Y, so a short dominant generating
        set is used instead; since mu -> Y^mu and mu -> chi_{mu,lam} are group
        homomorphisms, checking generators is exactly as strong as a basis.
        """
        n = self.rank
        Ydat = self.datum.Y
        if Ydat.lattice == "P":
            gens = [tuple(int(i == k) for i in range(n)) for k in range(n)]
        else:
            from itertools import combinations, product
            cands = [v for v in product(range(4), repeat=n)
                     if any(v) and Ydat.is_dominant(v)]
            cands.sort(key=lambda v: dot(Ydat.two_rho_check, v))
            gens = []
            for v in cands:
                gens.append(v)
                if _spans_lattice(gens, n):
                    break
            else:
                raise AssertionError("no dominant generating set found")
        out = [AffineWeight(Y_SIDE, g, 0) for g in gens]
        out.append(AffineWeight(Y_SIDE, (0,) * n, -self.datum.m))
        return out

    def verify_eigen(self, lam: Vec, E: XPoly) -> "EigenReport":
        from .xpoly import common_denominator
        E = E.scale(common_denominator(E))  # polynomial coefficients from here on
        checks = []
        ok = True
        for mu in self.y_basis():
            lhs = self.apply_ymu(mu, E)
            val = self.chi(mu, lam)
            rhs = E.scale(val)
            if lhs == rhs:
                checks.append(EigenCheck(mu, val, True, None))
            else:
                ok = False
                diff = lhs - rhs
                first = min(diff.terms, key=lambda k: (sum(k), k))
                checks.append(EigenCheck(mu, val, False, first))
        return EigenReport(tuple(lam), ok, checks)


def _spans_lattice(gens, n: int) -> bool:
    """Do the integer vectors generate all of Z^n (maximal-minor gcd 1)?"""
    from itertools import combinations
    from math import gcd
    if len(gens) < n:
        return False
    g = 0
    for rows in combinations(gens, n):
        det = _int_det([list(r) for r in rows])
        g = gcd(g, det)
        if g == 1:
            return True
    return g == 1


def _int_det(m) -> int:
    from fractions import Fraction
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = a[col][col]
        for r in range(col + 1, n):
            if a[r][col]:
                f = a[r][col] / inv
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    assert det.denominator == 1
    return int(det)


@dataclass
class EigenCheck:
    mu: AffineWeight
    eigenvalue: CoeffRat
    passed: bool
    first_bad_monomial: Vec | None


@dataclass
class EigenReport:
    lam: Vec
    passed: bool
    checks: list[EigenCheck] = field(default_factory=list)

    def summary(self) -> str:
        if self.passed:
            return f"OK ({len(self.checks)} eigenvalue checks)"
        bad = [c for c in self.checks if not c.passed]
        lines = [f"FAIL ({len(bad)}/{len(self.checks)} eigenvalue checks failed)"]
        for c in bad:
            lines.append(f"  mu={c.mu.classical}+{c.mu.delta_num}/m*delta "
                         f"first differing monomial X^{c.first_bad_monomial}")
        return "\n".join(lines)
