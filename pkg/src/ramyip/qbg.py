"""Quantum Bruhat graphs and the four limit specializations.

The graph lives on the finite Weyl group with edges labeled by positive
Y-roots; Bruhat edges raise length by one, quantum edges drop it by
<2rho^vee, alpha> - 1.  The v->0, v->infinity, q->0, q->infinity limits of
the nonsymmetric polynomials are direct combinatorial sums over subsets of
alcove paths, and each is cross-checked against the exact symbolic limit of
the full evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coeffring import CoeffRat, equalize_parameters
from .evaluate import evaluate_E, w0_coset_reps
from .paths import AlcovePath, PathFamily, family_for_weight
from .rootdata import (
    DoubleAffineDatum, MIXED_A2N2, MIXED_A2N2_DAGGER, Mat, Vec,
    dot, mat_mul, vec_neg,
)
from .weyl import FinWeyl, WeylElem, group_y
from .xpoly import XPoly


class TooLarge(ValueError):
    pass


BRUHAT = "bruhat"
QUANTUM = "quantum"


@dataclass
class QBGraph:
    datum: DoubleAffineDatum
    vertices: tuple[Mat, ...]                      # Y-side matrices of W_0
    lengths: dict[Mat, int]
    edges: dict[tuple[Mat, Vec], tuple[str, Mat]]  # (w, alpha) -> (kind, w s_alpha)

    def edge_kind(self, w_my: Mat, alpha: Vec) -> str | None:
        e = self.edges.get((w_my, alpha))
        return e[0] if e else None

    def edge_count(self, kind: str) -> int:
        return sum(1 for k, _ in self.edges.values() if k == kind)

    def to_dot(self) -> str:
        Y = self.datum.Y
        names = {m: "w" + str(i) for i, m in enumerate(self.vertices)}
        lines = ["digraph qbg {"]
        for m in self.vertices:
            word = Y.word_of(m)
            label = "e" if not word else ".".join(f"s{i+1}" for i in word)
            lines.append(f'  {names[m]} [label="{label}"];')
        amb = Y.name[:1] in "BCD"
        for (w, alpha), (kind, tgt) in sorted(self.edges.items()):
            if amb:
                lab = ",".join(str(x) for x in Y.to_ambient(alpha))
            else:
                lab = ",".join(str(x) for x in alpha)
            style = "solid" if kind == BRUHAT else "dashed"
            lines.append(f'  {names[w]} -> {names[tgt]} [label="{lab}", style={style}];')
        lines.append("}")
        return "\n".join(lines)


def build_qbg(datum: DoubleAffineDatum) -> QBGraph:
    cached = getattr(datum, "_qbg", None)
    if cached is not None:
        return cached
    Y = datum.Y
    elements = Y.elements()
    if len(elements) > 10_000:
        raise TooLarge(f"finite Weyl group of order {len(elements)}")
    lengths = {m: Y.length_of(m) for m in elements}
    refl = {}
    for r in Y.positive_roots:
        n = Y.rank
        cols = []
        for b in range(n):
            e = tuple(int(k == b) for k in range(n))
            cols.append(tuple(x - r.covec[b] * y for x, y in zip(e, r.vec)))
        refl[r.vec] = (tuple(tuple(cols[b][rr] for b in range(n)) for rr in range(n)), r)
    two_rho = Y.two_rho_check
    edges = {}
    for w in elements:
        lw = lengths[w]
        for alpha, (smat, root) in refl.items():
            tgt = mat_mul(w, smat)
            lt = lengths[tgt]
            if lt == lw + 1:
                edges[(w, alpha)] = (BRUHAT, tgt)
            elif lt == lw - dot(two_rho, alpha) + 1:
                edges[(w, alpha)] = (QUANTUM, tgt)
    graph = QBGraph(datum, elements, lengths, edges)
    datum._qbg = graph
    return graph


# ---------------------------------------------------------------------------
# path classification
# ---------------------------------------------------------------------------

@dataclass
class PathClass:
    accepted: bool
    kinds: tuple[str, ...] = ()
    rejected_step: int | None = None


def classify_path(p: AlcovePath, direction: str = "forward",
                  variant: str | None = None) -> PathClass:
    """Does the direction sequence of p trace a (reverse) path in QB?

    variant A2n2 additionally rejects Bruhat edges on odd-delta fold roots,
    A2n2-dagger rejects quantum edges on them.
    """
    fam = p.family
    graph = build_qbg(fam.datum)
    kinds = []
    for mstep, j in enumerate(p.J):
        src = p.zs[mstep].fin.my
        tgt = p.zs[mstep + 1].fin.my
        label = vec_neg(fam.betas[j - 1].classical)
        if direction == "forward":
            edge = graph.edges.get((src, label))
            expect = tgt
        else:
            edge = graph.edges.get((tgt, label))
            expect = src
        if edge is None or edge[1] != expect:
            return PathClass(False, tuple(kinds), mstep + 1)
        kind = edge[0]
        if variant == MIXED_A2N2 and fam.is_zero_orbit[j - 1] and kind == BRUHAT:
            return PathClass(False, tuple(kinds), mstep + 1)
        if variant == MIXED_A2N2_DAGGER and fam.is_zero_orbit[j - 1] and kind == QUANTUM:
            return PathClass(False, tuple(kinds), mstep + 1)
        kinds.append(kind)
    return PathClass(True, tuple(kinds), None)


def quantum_paths(fam: PathFamily, direction: str = "forward",
                  variant: str | None = None):
    for p in fam.paths():
        if classify_path(p, direction, variant).accepted:
            yield p


# ---------------------------------------------------------------------------
# the four specializations
# ---------------------------------------------------------------------------

def _variant_of(datum) -> str | None:
    if datum.affine_class in (MIXED_A2N2, MIXED_A2N2_DAGGER):
        return datum.affine_class
    return None


def E_at_v0(datum: DoubleAffineDatum, lam: Vec, u: WeylElem | None = None) -> XPoly:
    """Sum over quantum alcove paths of X^wt q^deg(qwt); mixed data prune
    their forbidden edges and use the variant quantum weight."""
    variant = _variant_of(datum)
    fam, _ = family_for_weight(datum, tuple(lam), u)
    ring = datum.equal_ring
    out = XPoly.zero(ring)
    for p in quantum_paths(fam, "forward", variant):
        deg = p.q_degree(variant)
        out = out + XPoly.monomial(ring, p.wt, ring.q_power(deg * datum.m))
    return out


def P_at_v0(datum: DoubleAffineDatum, lam: Vec) -> XPoly:
    gy = group_y(datum)
    if not datum.X.is_dominant(tuple(lam)):
        raise ValueError(f"{lam} is not dominant")
    ring = datum.equal_ring
    out = XPoly.zero(ring)
    for fin in w0_coset_reps(datum, tuple(lam)):
        out = out + E_at_v0(datum, lam, u=gy.from_finite(fin))
    return out


def E_at_vinf(datum: DoubleAffineDatum, lam: Vec) -> XPoly:
    """E_lambda(X; q^{-1}; infinity): reverse quantum paths, qwt* degrees."""
    fam, _ = family_for_weight(datum, tuple(lam))
    ring = datum.equal_ring
    out = XPoly.zero(ring)
    for p in quantum_paths(fam, "reverse", _variant_of(datum)):
        out = out + XPoly.monomial(ring, p.wt, ring.q_power(p.q_degree(star=True) * datum.m))
    return out


def E_at_q0(datum: DoubleAffineDatum, lam: Vec, u: WeylElem | None = None) -> XPoly:
    """X^u E_lambda(X; 0; v): all-positive-fold paths."""
    fam, u_lam = family_for_weight(datum, tuple(lam), u)
    ring = datum.equal_ring
    v = ring.var("v")
    pref = v.inverse() ** datum.X.length_of(u_lam.mx)
    out = XPoly.zero(ring)
    for p in fam.paths():
        if p.J_minus:
            continue
        c = pref * v ** p.dir_length * (v.inverse() - v) ** len(p.J)
        out = out + XPoly.monomial(ring, p.wt, c)
    return out


def E_at_qinf(datum: DoubleAffineDatum, lam: Vec) -> XPoly:
    """E_lambda(X; infinity; v^{-1}): all-negative-fold paths.

    The prefactor is v^(l(u_lam) - l(w_0)), which is what the star-duality
    and q=0 steps compose to; the exact-limit check pins it down.
    """
    fam, u_lam = family_for_weight(datum, tuple(lam))
    ring = datum.equal_ring
    v = ring.var("v")
    X = datum.X
    lw0 = X.length_of(X.w0())
    pref = v ** (X.length_of(u_lam.mx) - lw0)
    out = XPoly.zero(ring)
    for p in fam.paths():
        if p.J_plus:
            continue
        lw0dir = X.length_of(mat_mul(X.w0(), p.dir.mx))
        c = pref * v ** lw0dir * (v.inverse() - v) ** len(p.J)
        out = out + XPoly.monomial(ring, p.wt, c)
    return out


# ---------------------------------------------------------------------------
# exact-limit cross-checks
# ---------------------------------------------------------------------------

def _limit_poly(f: XPoly, op) -> XPoly:
    out = XPoly.zero(f.ring)
    for k, c in f.terms.items():
        c2 = op(c)
        if c2:
            out.terms[k] = c2
    return out


def symbolic_v0(datum, lam, u=None) -> XPoly:
    """lim_{v->0} v^{-l(dir(u) u_lam^{-1})} X^u(E~_lambda) at equal parameters."""
    res = evaluate_E(datum, tuple(lam), u=u, params="equal")
    gy = group_y(datum)
    udir = res.u.fin if u is not None else gy.fin_id
    ell = datum.X.length_of(mat_mul(udir.mx, res.family.w.fin.mx))
    ring = datum.equal_ring
    pref = ring.var("v").inverse() ** ell
    return _limit_poly(res.tilde.scale(pref), lambda c: c.limit_zero("v"))


def symbolic_vinf(datum, lam) -> XPoly:
    res = evaluate_E(datum, tuple(lam), params="equal")
    ring = datum.equal_ring
    qinv = {"q": ring.monomial({"q": -1}), "v": ring.monomial({"v": -1})}
    return _limit_poly(res.normalized,
                       lambda c: c.substitute(qinv).limit_zero("v"))


def symbolic_q0(datum, lam, u=None) -> XPoly:
    res = evaluate_E(datum, tuple(lam), u=u, params="equal")
    return _limit_poly(res.normalized, lambda c: c.limit_zero("q"))


def symbolic_qinf(datum, lam) -> XPoly:
    res = evaluate_E(datum, tuple(lam), params="equal")
    ring = datum.equal_ring
    vinv = {"v": ring.monomial({"v": -1})}
    return _limit_poly(res.normalized,
                       lambda c: c.substitute(vinv).limit_infinity("q"))


def check_limits(datum, lam, u=None, skip_q_limits: bool = False) -> dict[str, bool]:
    """The master limit-consistency property for one weight."""
    out = {}
    out["v0"] = E_at_v0(datum, lam, u) == symbolic_v0(datum, lam, u)
    if u is None:
        out["vinf"] = E_at_vinf(datum, lam) == symbolic_vinf(datum, lam)
    if not skip_q_limits:
        out["q0"] = E_at_q0(datum, lam, u) == symbolic_q0(datum, lam, u)
        if u is None:
            out["qinf"] = E_at_qinf(datum, lam) == symbolic_qinf(datum, lam)
    return out


# ---------------------------------------------------------------------------
# fold tree export
# ---------------------------------------------------------------------------

def fold_tree_dot(fam: PathFamily, quantum_only: bool = True,
                  variant: str | None = None) -> str:
    X = fam.datum.X
    lines = ["digraph foldtree {"]
    names = {}

    def node(p: AlcovePath) -> str:
        key = p.J
        if key not in names:
            names[key] = "p" + ("_".join(str(j) for j in key) or "0")
            word = X.word_of(p.dir.mx)
            dir_lab = ".".join(f"s{i+1}" for i in word) or "e"
            jlab = "{" + ",".join(str(j) for j in key) + "}"
            lines.append(f'  {names[key]} [label="{dir_lab}\\n{jlab}"];')
        return names[key]

    for p in fam.paths():
        if quantum_only and not classify_path(p, "forward", variant).accepted:
            continue
        me = node(p)
        if p.J:
            parent_J = p.J[:-1]
            if parent_J in names:
                b = fam.betas[p.J[-1] - 1]
                lab = ",".join(str(x) for x in b.classical) + f";{b.delta_num // fam.datum.m}d"
                lines.append(f"  {names[parent_J]} -> {me} [label=\"{lab}\"];")
    lines.append("}")
    return "\n".join(lines)
