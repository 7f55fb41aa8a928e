"""The alcove-path evaluation of nonsymmetric and symmetric polynomials.

Each fold position carries two precomputed coefficient factors (one per fold
sign); a depth-first walk over the fold tree accumulates their products and
sums the terms X^wt(p) v_dir(p) * product into an XPoly.  The symmetric
polynomial is computed both by Hecke symmetrization and by the alcove-path
sum over minimal coset representatives, and the two routes must agree.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .coeffring import CoeffRat
from .hecke import HeckeOps
from .rootdata import (
    DoubleAffineDatum, MIXED_A2N2, MIXED_A2N2_DAGGER, Vec,
    build_datum, dot, mat_vec,
)
from .weyl import FinWeyl, WeylElem, group_y, m_lambda
from .paths import AlcovePath, PathFamily, family_for_weight
from .xpoly import XPoly, common_denominator


class NotDominant(ValueError):
    pass


class VariantRequiresKoornwinder(ValueError):
    pass


@dataclass
class EvalResult:
    """X^u(E~_lambda) together with its normalization."""

    datum: DoubleAffineDatum
    lam: Vec
    u: WeylElem
    family: PathFamily
    u_lam: FinWeyl
    tilde: XPoly
    norm_scalar: CoeffRat

    @property
    def normalized(self) -> XPoly:
        return self.tilde.scale(self.norm_scalar)


def _fold_factors(hecke: HeckeOps, fam: PathFamily):
    """(plus, minus) coefficient factors for each word position."""
    ring = hecke.ring
    plus, minus = [], []
    m = hecke.datum.m
    for k in range(fam.ell):
        i = fam.word[k]
        beta = fam.betas[k]
        if beta.delta_num % m:
            raise AssertionError("inversion root with fractional delta degree")
        xi = hecke.chi(beta.neg(), (0,) * hecke.rank)
        vy = hecke.v_node_y(i)
        v2y = hecke.v2_node_y(i)
        c = vy.inverse() - vy
        d = v2y.inverse() - v2y
        den = (ring.one - xi * xi).inverse()
        plus.append((c + d * xi) * den)
        minus.append((c * xi * xi + d * xi) * den)
    return tuple(plus), tuple(minus)


def _cleared_factors(hecke: HeckeOps, fam: PathFamily):
    """Per-position numerators over the common denominator prod (1 - xi_j^2).

    A fold at j contributes its 2-term numerator, a crossing contributes the
    factor (1 - xi_j^2) itself, so every path term is polynomial and the
    division happens once per weight at the end.
    """
    ring = hecke.ring
    m = hecke.datum.m
    num_plus, num_minus, skip = [], [], []
    denom = ring.one
    for k in range(fam.ell):
        i = fam.word[k]
        beta = fam.betas[k]
        if beta.delta_num % m:
            raise AssertionError("inversion root with fractional delta degree")
        xi = hecke.chi(beta.neg(), (0,) * hecke.rank)
        vy = hecke.v_node_y(i)
        v2y = hecke.v2_node_y(i)
        c = vy.inverse() - vy
        d = v2y.inverse() - v2y
        num_plus.append(c + d * xi)
        num_minus.append(c * xi * xi + d * xi)
        cyc = ring.one - xi * xi
        skip.append(cyc)
        denom = denom * cyc
    return tuple(num_plus), tuple(num_minus), tuple(skip), denom


def _balanced_sum(terms: list[CoeffRat], zero: CoeffRat) -> CoeffRat:
    """Pairwise reduction keeps the operands of each addition of similar
    size, which keeps the gcd cancellations cheap."""
    work = terms
    while len(work) > 1:
        nxt = [work[i] + work[i + 1] if i + 1 < len(work) else work[i]
               for i in range(0, len(work), 2)]
        work = nxt
    return work[0] if work else zero


def _accumulate(hecke: HeckeOps, fam: PathFamily, factors,
                first_fold: int | None = None) -> dict[Vec, CoeffRat]:
    """Polynomial numerator sums per weight, over the common denominator.

    The walk follows the word position by position: a crossing multiplies by
    the position's cyclotomic factor, a fold by its numerator, so every leaf
    term is a polynomial and the lone division happens in the caller.  When
    first_fold is given, only the paths whose smallest fold sits there are
    visited (0 means the foldless path).
    """
    num_plus, num_minus, skip, _ = factors
    gy = fam.gy
    ell = fam.ell
    from .rootdata import AffineWeight, Y_SIDE
    alphas = [gy.alpha(i) for i in fam.word]
    simples = [gy.simple(i) for i in fam.word]
    bags: dict[Vec, list[CoeffRat]] = {}

    def leaf(u_elem, prod):
        bags.setdefault(u_elem.trans, []).append(prod * hecke.v_finite(u_elem.fin))

    def rec(k, u_elem, prod):
        if k == ell:
            leaf(u_elem, prod)
            return
        rec(k + 1, gy.mul(u_elem, simples[k]), prod * skip[k])
        img = gy.act(u_elem, alphas[k])
        neg = gy.is_negative(AffineWeight(Y_SIDE, img.classical, 0))
        rec(k + 1, u_elem, prod * (num_minus[k] if neg else num_plus[k]))

    u0 = gy.mul(fam.u, gy.pi_elements()[fam.pi_node])
    if first_fold is None:
        rec(0, u0, hecke.ring.one)
    else:
        prod = hecke.ring.one
        u_elem = u0
        for k in range(first_fold - 1 if first_fold else ell):
            prod = prod * skip[k]
            u_elem = gy.mul(u_elem, simples[k])
        if first_fold == 0:
            leaf(u_elem, prod)
        else:
            k = first_fold - 1
            img = gy.act(u_elem, alphas[k])
            neg = gy.is_negative(AffineWeight(Y_SIDE, img.classical, 0))
            prod = prod * (num_minus[k] if neg else num_plus[k])
            rec(k + 1, u_elem, prod)
    acc: dict[Vec, CoeffRat] = {}
    for key in sorted(bags):
        total = _balanced_sum(bags[key], hecke.ring.zero)
        if total:
            acc[key] = total
    return acc


_FORK_CTX: dict = {}


def _fork_worker(first_fold: int):
    hecke, fam, factors = _FORK_CTX["args"]
    return _accumulate(hecke, fam, factors, first_fold=first_fold)


def evaluate_E(datum: DoubleAffineDatum, lam: Vec, u: WeylElem | None = None,
               params: str = "generic", word=None, jobs: int = 1) -> EvalResult:
    """The alcove-path expansion of X^u(E~_lambda) over m_lambda.

    Results are cached on the datum (the inputs are immutable).
    """
    cache = getattr(datum, "_eval_cache", None)
    if cache is None:
        cache = datum._eval_cache = {}
    key = (tuple(lam), u, params, tuple(word) if word is not None else None)
    hit = cache.get(key)
    if hit is not None:
        return hit
    hecke = HeckeOps(datum, params)
    fam, u_lam = family_for_weight(datum, tuple(lam), u, word)
    factors = _cleared_factors(hecke, fam)
    if jobs > 1 and fam.ell >= 2:
        acc = _parallel_accumulate(hecke, fam, factors, jobs)
    else:
        acc = _accumulate(hecke, fam, factors)
    denom = factors[3]
    tilde = XPoly(hecke.ring, {k: c / denom for k, c in acc.items()})
    norm = hecke.v_finite(fam.w.fin).inverse()
    out = EvalResult(datum, tuple(lam), fam.u, fam, u_lam, tilde, norm)
    cache[key] = out
    return out


def _parallel_accumulate(hecke, fam, factors, jobs: int) -> dict[Vec, CoeffRat]:
    import multiprocessing as mp

    _FORK_CTX["args"] = (hecke, fam, factors)
    blocks = list(range(0, fam.ell + 1))
    try:
        with mp.get_context("fork").Pool(min(jobs, os.cpu_count() or 1)) as pool:
            results = pool.map(_fork_worker, blocks)
    finally:
        _FORK_CTX.clear()
    acc: dict[Vec, CoeffRat] = {}
    for block in results:
        for key, val in block.items():
            cur = acc.get(key)
            cur = val if cur is None else cur + val
            if cur:
                acc[key] = cur
            else:
                acc.pop(key, None)
    return acc


# ---------------------------------------------------------------------------
# symmetric polynomials
# ---------------------------------------------------------------------------

def w0_coset_reps(datum: DoubleAffineDatum, lam: Vec) -> list[FinWeyl]:
    """Minimum-length representatives of W_0 / Stab(lam), by orbit BFS."""
    gy = group_y(datum)
    start = tuple(lam)
    seen = {start: gy.fin_id}
    order = [gy.fin_id]
    frontier = [(start, gy.fin_id)]
    while frontier:
        nxt = []
        for vec, fin in frontier:
            for i in range(datum.rank):
                v2 = mat_vec(datum.X.s_mat[i], vec)
                if v2 not in seen:
                    f2 = gy.fin_mul(gy.gens[i], fin)
                    seen[v2] = f2
                    order.append(f2)
                    nxt.append((v2, f2))
        frontier = nxt
    return order


def stabilizer(datum: DoubleAffineDatum, lam: Vec) -> list[FinWeyl]:
    gy = group_y(datum)
    out = []
    for mx in datum.X.elements():
        if mat_vec(mx, tuple(lam)) == tuple(lam):
            word = datum.X.word_of(mx)
            out.append(gy.fin_from_word(word))
    return out


@dataclass
class PResult:
    lam: Vec
    via_hecke: XPoly
    via_paths: XPoly

    @property
    def poly(self) -> XPoly:
        return self.via_hecke


def evaluate_P(datum: DoubleAffineDatum, lam: Vec, params: str = "generic",
               jobs: int = 1) -> PResult:
    """P_lambda两 ways: Hecke symmetrization of E_lambda, and the direct
    alcove-path sum over minimal coset representatives."""
    lam = tuple(lam)
    if not datum.X.is_dominant(lam):
        raise NotDominant(f"{lam} is not dominant")
    hecke = HeckeOps(datum, params)
    gy = group_y(datum)
    base = evaluate_E(datum, lam, params=params, jobs=jobs)
    E = base.normalized
    reps = w0_coset_reps(datum, lam)

    D = common_denominator(E)
    cleared = E.scale(D)
    total = XPoly.zero(hecke.ring)
    for fin in reps:
        term = hecke.apply_t_finite(fin, cleared)
        total = total + term.scale(hecke.v_finite(fin))
    total = total.scale(D.inverse())

    total_paths = XPoly.zero(hecke.ring)
    for fin in reps:
        u_elem = gy.from_finite(fin)
        res = evaluate_E(datum, lam, u=u_elem, params=params, jobs=jobs)
        pref = hecke.v_finite(gy.fin_mul(fin, base.family.w.fin)).inverse()
        total_paths = total_paths + res.tilde.scale(pref)

    if total != total_paths:
        raise AssertionError("the two symmetric routes disagree")
    return PResult(lam, total, total_paths)


def oversymmetrized_P(datum: DoubleAffineDatum, lam: Vec, params: str = "generic") -> XPoly:
    """The full-group symmetrization formula, for cross-checking."""
    lam = tuple(lam)
    hecke = HeckeOps(datum, params)
    gy = group_y(datum)
    base = evaluate_E(datum, lam, params=params)
    E = base.normalized
    D = common_denominator(E)
    cleared = E.scale(D)
    total = XPoly.zero(hecke.ring)
    for mx in datum.X.elements():
        fin = gy.fin_from_word(datum.X.word_of(mx))
        total = total + hecke.apply_t_finite(fin, cleared).scale(hecke.v_finite(fin))
    total = total.scale(D.inverse())
    denom = hecke.ring.zero
    for fin in stabilizer(datum, lam):
        v = hecke.v_finite(fin)
        denom = denom + v * v
    return total.scale(denom.inverse())


# ---------------------------------------------------------------------------
# mixed types
# ---------------------------------------------------------------------------

def mixed_datum(variant: str, n: int) -> DoubleAffineDatum:
    if variant not in (MIXED_A2N2, MIXED_A2N2_DAGGER):
        raise VariantRequiresKoornwinder(f"unknown mixed variant {variant!r}")
    return build_datum(("B", n), ("B", n), "Q", "Q", variant)


def evaluate_E_mixed(datum: DoubleAffineDatum, u: WeylElem | None, lam: Vec,
                     check_closed_form: bool = True) -> EvalResult:
    """E_lambda for a mixed datum, cross-checked against the equal-parameter
    closed form built from the J^0-split factors."""
    if datum.affine_class not in (MIXED_A2N2, MIXED_A2N2_DAGGER):
        raise VariantRequiresKoornwinder(
            "mixed evaluation needs a datum with a mixed affine class")
    res = evaluate_E(datum, tuple(lam), u=u)
    if check_closed_form:
        eq = evaluate_E(datum, tuple(lam), u=u, params="equal")
        closed = mixed_closed_form(datum, datum.affine_class, eq.family, eq.u_lam)
        if eq.normalized != closed:
            raise AssertionError("mixed closed form disagrees with the specialized formula")
    return res


def mixed_closed_form(datum: DoubleAffineDatum, variant: str, fam: PathFamily,
                      u_lam: FinWeyl) -> XPoly:
    """The direct equal-parameter expansion of the mixed nonsymmetric
    polynomial, with the J^0 positions carrying their own factors."""
    hecke = HeckeOps(datum, "equal")
    ring = hecke.ring
    v = ring.var("v")
    two_rho = datum.Y.two_rho_check
    m = datum.m

    xi = []
    for k in range(fam.ell):
        beta = fam.betas[k]
        if beta.delta_num % m:
            raise AssertionError("inversion root with fractional delta degree")
        xi.append(ring.monomial({"q": beta.delta_num,
                                 "v": -dot(two_rho, beta.classical)}))

    acc: dict[Vec, CoeffRat] = {}
    pref0 = v.inverse() ** datum.X.length_of(u_lam.mx)
    for p in fam.paths():
        prod = ring.one
        ok = True
        for j, s in zip(p.J, p.fold_signs):
            x = xi[j - 1]
            if fam.is_zero_orbit[j - 1]:
                if variant == MIXED_A2N2:
                    prod = prod * (x / (ring.one - x * x))
                elif s > 0:
                    prod = prod * (ring.one / (ring.one - x * x))
                else:
                    prod = prod * (x * x / (ring.one - x * x))
            else:
                if s > 0:
                    prod = prod * (ring.one / (ring.one - x))
                else:
                    prod = prod * (x / (ring.one - x))
        term = prod * pref0 * v ** p.dir_length * (v.inverse() - v) ** len(p.J)
        key = p.wt
        cur = acc.get(key)
        cur = term if cur is None else cur + term
        if cur:
            acc[key] = cur
        else:
            acc.pop(key, None)
    return XPoly(ring, acc)


def embed_pc_weight(datum: DoubleAffineDatum, lam: Vec) -> Vec:
    """The classical weight lattice of the 2n-node mixed system maps onto
    Q(B_n) identically in ambient coordinates; internal coordinates coincide."""
    return tuple(lam)
