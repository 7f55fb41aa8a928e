"""Alcove paths: a reduced word with a chosen set of folds.

A PathFamily fixes u, w, a reduced word of w, and the inversion roots
beta_1..beta_ell; each subset J of positions is an alcove path p_J with its
z-sequence, per-fold signs, end, weight, direction, and quantum weights.
Enumeration is a streaming depth-first walk of the fold tree (parent = drop
the largest fold), which visits subsets in lexicographic order.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rootdata import AffineWeight, DoubleAffineDatum, Vec, Y_SIDE, dot, vec_add
from .weyl import AffineGroup, FinWeyl, WeylElem, WordNotReduced, group_y, m_lambda


class PathFamily:
    """All alcove paths over one reduced word of w, started at u."""

    def __init__(self, datum: DoubleAffineDatum, u: WeylElem, w: WeylElem,
                 word: tuple[int, ...] | None = None):
        self.datum = datum
        self.gy: AffineGroup = group_y(datum)
        self.u = u
        self.w = w
        if word is None:
            self.pi_node, self.word = self.gy.reduced_word(w)
        else:
            word = tuple(word)
            prod = self.gy.from_word(word)
            pi = self.gy.mul(w, self.gy.inv(prod))
            if self.gy.length(w) != len(word) or self.gy.length(pi) != 0:
                raise WordNotReduced(f"{word} is not a reduced word for the element")
            self.pi_node = next(k for k, p in self.gy.pi_elements().items() if p == pi)
            self.word = word
        self.ell = len(self.word)
        self.z0 = self.gy.mul(u, w)

        betas: list[AffineWeight] = [None] * self.ell
        suffix = self.gy.ident
        for k in range(self.ell, 0, -1):
            betas[k - 1] = self.gy.act(suffix, self.gy.alpha(self.word[k - 1]))
            suffix = self.gy.mul(suffix, self.gy.simple(self.word[k - 1]))
        self.betas = tuple(betas)
        self.s_betas = tuple(self.gy.s_beta(b) for b in self.betas)
        side_y = datum.side_y
        self.is_zero_orbit = tuple(side_y.classify(b)[1] == "zero_orbit" for b in self.betas)

    # -- per-path data ----------------------------------------------------------

    def _classical_positive(self, x: AffineWeight) -> bool:
        return not self.gy.is_negative(AffineWeight(Y_SIDE, x.classical, 0))

    def fold_sign(self, z_new: WeylElem, j: int) -> int:
        """Sign of the fold at position j (1-based), z_new the element after it."""
        img = self.gy.act(z_new, self.betas[j - 1])
        return 1 if self._classical_positive(img) else -1

    def root_path(self) -> "AlcovePath":
        return AlcovePath(self, (), (), (self.z0,))

    def extend(self, p: "AlcovePath", j: int) -> "AlcovePath":
        """Add a new largest fold at position j."""
        z_new = self.gy.mul(p.zs[-1], self.s_betas[j - 1])
        sign = self.fold_sign(z_new, j)
        return AlcovePath(self, p.J + (j,), p.fold_signs + (sign,), p.zs + (z_new,))

    def paths(self):
        """All 2^ell alcove paths, in lexicographic order of sorted J."""
        def rec(p: "AlcovePath"):
            yield p
            start = p.J[-1] + 1 if p.J else 1
            for j in range(start, self.ell + 1):
                yield from rec(self.extend(p, j))
        yield from rec(self.root_path())


@dataclass(frozen=True)
class AlcovePath:
    family: PathFamily
    J: tuple[int, ...]
    fold_signs: tuple[int, ...]
    zs: tuple[WeylElem, ...]

    @property
    def end(self) -> WeylElem:
        return self.zs[-1]

    @property
    def wt(self) -> Vec:
        return self.end.trans

    @property
    def dir(self) -> FinWeyl:
        return self.end.fin

    @property
    def dir_length(self) -> int:
        return self.family.datum.X.length_of(self.dir.mx)

    def sign_of(self, j: int) -> int:
        return self.fold_signs[self.J.index(j)]

    @property
    def J_plus(self) -> tuple[int, ...]:
        return tuple(j for j, s in zip(self.J, self.fold_signs) if s > 0)

    @property
    def J_minus(self) -> tuple[int, ...]:
        return tuple(j for j, s in zip(self.J, self.fold_signs) if s < 0)

    @property
    def J_zero(self) -> tuple[int, ...]:
        """Folds whose root lies in the odd-delta orbit (the i_j = 0 letters)."""
        return tuple(j for j in self.J if self.family.is_zero_orbit[j - 1])

    def _sum_roots(self, js, double=()) -> AffineWeight:
        fam = self.family
        n = fam.datum.rank
        acc = AffineWeight(Y_SIDE, (0,) * n, 0)
        for j in js:
            acc = acc.add(fam.betas[j - 1])
        for j in double:
            b = fam.betas[j - 1]
            acc = acc.add(b).add(b)
        return acc

    def qwt(self, variant: str | None = None) -> AffineWeight:
        """Sum of fold roots feeding the q-power of the v->0 limit."""
        if variant is None:
            return self._sum_roots(self.J_minus)
        z = set(self.J_zero)
        if variant == "A2n2":
            js = sorted(z | set(self.J_minus))
            return self._sum_roots(js)
        if variant == "A2n2-dagger":
            minus = [j for j in self.J_minus if j not in z]
            dbl = [j for j in self.J_minus if j in z]
            return self._sum_roots(minus, double=dbl)
        raise ValueError(f"unknown variant {variant!r}")

    def qwt_star(self) -> AffineWeight:
        return self._sum_roots(self.J_plus)

    def q_degree(self, variant: str | None = None, star: bool = False) -> int:
        w = self.qwt_star() if star else self.qwt(variant)
        m = self.family.datum.m
        if w.delta_num % m:
            raise AssertionError("quantum weight has fractional delta degree")
        return w.delta_num // m

    def order(self, variant: str | None = None) -> int:
        """Order in v of this path's equal-parameter summand.

        The plain version is the order inside X^u(E~_lambda); mixed variants
        include the -l(u_lambda^{-1}) shift of their normalized closed forms.
        """
        fam = self.family
        two_rho = fam.datum.Y.two_rho_check
        pair = dot(two_rho, self.qwt(variant).classical)
        base = self.dir_length - len(self.J) - pair
        if variant is None:
            return base
        u_fin = fam.datum.X.length_of(fam.w.fin.mx)  # w = m_lambda has fin = u_lambda^{-1}
        return base - u_fin

    def eps_sequence(self) -> tuple[int, ...]:
        """The signs eps_1..eps_ell along the path (folds and crossings)."""
        fam = self.family
        out = []
        zi = 0
        for k in range(1, fam.ell + 1):
            if zi < len(self.J) and self.J[zi] == k:
                out.append(self.fold_signs[zi])
                zi += 1
            else:
                img = fam.gy.act(self.zs[zi], fam.betas[k - 1])
                out.append(-1 if fam._classical_positive(img) else 1)
        return tuple(out)

    def describe(self) -> dict:
        """Row data matching the quantum-path table columns."""
        return {
            "J": list(self.J),
            "signs": "".join("+" if s > 0 else "-" for s in self.eps_sequence()),
            "dir_word": [i + 1 for i in self.family.datum.X.word_of(self.dir.mx)],
            "wt": list(self.wt),
            "q_power": self.q_degree(),
        }


def family_for_weight(datum, lam: Vec, u: WeylElem | None = None,
                      word=None) -> tuple[PathFamily, FinWeyl]:
    """The path family over m_lambda, plus u_lambda."""
    gy = group_y(datum)
    m, u_lam = m_lambda(datum, lam)
    fam = PathFamily(datum, u if u is not None else gy.ident, m, word)
    return fam, u_lam


def enumerate_paths(datum, u: WeylElem, w: WeylElem, word=None):
    """Stream all alcove paths of B(u; w) over the canonical or given word."""
    yield from PathFamily(datum, u, w, word).paths()
