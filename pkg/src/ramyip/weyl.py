"""Affine and extended affine Weyl group elements and their combinatorics.

Elements of W(X~) = W_0 |x Y and W(Y~) = X |x W_0 are stored in the semidirect
product form w = t_mu . u with mu in the translation lattice and u a finite
Weyl element kept as a pair of integer matrices (one acting on X coordinates,
one on Y coordinates).  The length-zero subgroup Pi is recovered on demand.

Affine node labels are 0..n with 0 the distinguished affine node; classical
node i corresponds to index i-1 of the finite datum.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rootdata import (
    AffineWeight, DoubleAffineDatum, Mat, SideMismatch, Vec, X_SIDE, Y_SIDE,
    mat_id, mat_inv_int, mat_mul, mat_vec, vec_add, vec_neg, vec_scale, dot,
)


class WordNotReduced(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class FinWeyl:
    """A finite Weyl element as its matrix on X and on Y coordinates."""

    mx: Mat
    my: Mat


@dataclass(frozen=True, slots=True)
class WeylElem:
    side: str
    trans: Vec
    fin: FinWeyl


class AffineGroup:
    """Operations for one side's (extended) affine Weyl group."""

    def __init__(self, datum: DoubleAffineDatum, side_name: str):
        self.datum = datum
        self.side = datum.side(side_name)
        self.name = side_name
        self.own = self.side.own          # classical datum acted upon
        self.trans_datum = self.side.trans
        n = datum.rank
        self.fin_id = FinWeyl(mat_id(n), mat_id(n))
        self.ident = WeylElem(side_name, (0,) * n, self.fin_id)
        self.gens = tuple(FinWeyl(datum.X.s_mat[i], datum.Y.s_mat[i]) for i in range(n))
        self._simple_cache: list[WeylElem] | None = None
        self._pi_cache: dict | None = None
        self._sbeta_cache: dict = {}

    # -- finite part helpers ---------------------------------------------------

    def own_mat(self, f: FinWeyl) -> Mat:
        return f.mx if self.name == X_SIDE else f.my

    def trans_mat(self, f: FinWeyl) -> Mat:
        return f.my if self.name == X_SIDE else f.mx

    def fin_mul(self, a: FinWeyl, b: FinWeyl) -> FinWeyl:
        return FinWeyl(mat_mul(a.mx, b.mx), mat_mul(a.my, b.my))

    def fin_inv(self, a: FinWeyl) -> FinWeyl:
        return FinWeyl(mat_inv_int(a.mx), mat_inv_int(a.my))

    def fin_from_word(self, word, applied_last_first: bool = False) -> FinWeyl:
        """Product of classical generators (0-based indices).

        With applied_last_first the word lists reflections in application
        order, i.e. the element is s_{word[-1]} ... s_{word[0]}.
        """
        f = self.fin_id
        seq = reversed(word) if applied_last_first else word
        for i in seq:
            f = self.fin_mul(f, self.gens[i])
        return f

    # -- constructors ------------------------------------------------------------

    def translation(self, mu: Vec) -> WeylElem:
        return WeylElem(self.name, tuple(mu), self.fin_id)

    def from_finite(self, f: FinWeyl) -> WeylElem:
        return WeylElem(self.name, (0,) * self.datum.rank, f)

    def simple(self, i: int) -> WeylElem:
        """The affine simple reflection s_i, i in 0..n."""
        if self._simple_cache is None:
            cache = []
            th_word = self.own.word_of(self._theta_matrix())
            s_theta = self.fin_from_word(th_word)
            cache.append(WeylElem(self.name, self.side.s0_trans, s_theta))
            for k in range(self.datum.rank):
                cache.append(self.from_finite(self.gens[k]))
            self._simple_cache = cache
        return self._simple_cache[i]

    def _theta_matrix(self) -> Mat:
        th = self.side.theta
        n = self.datum.rank
        cols = []
        for b in range(n):
            e = tuple(int(k == b) for k in range(n))
            cols.append(tuple(x - th.covec[b] * y for x, y in zip(e, th.vec)))
        return tuple(tuple(cols[b][r] for b in range(n)) for r in range(n))

    def from_word(self, word, pi: WeylElem | None = None) -> WeylElem:
        w = pi if pi is not None else self.ident
        for i in word:
            w = self.mul(w, self.simple(i))
        return w

    # -- group law ---------------------------------------------------------------

    def mul(self, a: WeylElem, b: WeylElem) -> WeylElem:
        if a.side != self.name or b.side != self.name:
            raise SideMismatch("element from the wrong group")
        shifted = mat_vec(self.trans_mat(a.fin), b.trans)
        return WeylElem(self.name, vec_add(a.trans, shifted), self.fin_mul(a.fin, b.fin))

    def inv(self, a: WeylElem) -> WeylElem:
        fi = self.fin_inv(a.fin)
        return WeylElem(self.name, vec_neg(mat_vec(self.trans_mat(fi), a.trans)), fi)

    # -- actions -----------------------------------------------------------------

    def act(self, w: WeylElem, x: AffineWeight) -> AffineWeight:
        if w.side != self.name or x.side != self.name:
            raise SideMismatch("action requires matching sides")
        classical = mat_vec(self.own_mat(w.fin), x.classical)
        dnum = x.delta_num - self.side.pairing_num(w.trans, classical)
        return AffineWeight(self.name, classical, dnum)

    def act_classical(self, w: WeylElem, v: Vec) -> Vec:
        return mat_vec(self.own_mat(w.fin), v)

    def is_negative(self, x: AffineWeight) -> bool:
        if x.delta_num != 0:
            return x.delta_num < 0
        coords = self.own.root_coords_alpha(x.classical)
        return all(c <= 0 for c in coords) and any(c < 0 for c in coords)

    def alpha(self, i: int) -> AffineWeight:
        """The affine simple root alpha_i as an affine weight."""
        if i == 0:
            return AffineWeight(self.name, vec_neg(self.side.theta.vec), self.side.m)
        return AffineWeight(self.name, self.own.alpha[i - 1], 0)

    # -- length and inversions -----------------------------------------------------

    def _inversion_counts(self, w: WeylElem):
        """Yield (classical root, u(root), count, boundary) data for Inv(w)."""
        mu = w.trans
        m = self.side.m
        for root in self.own.roots:
            rm = self.side.r_mult(root)
            img = mat_vec(self.own_mat(w.fin), root.vec)
            cnum = self.side.pairing_num(mu, img)
            if cnum % m:
                raise AssertionError("non-integral pairing on a root")
            c = cnum // m
            if c % rm:
                raise AssertionError("pairing not a multiple of the root's delta step")
            amin = 0 if root.positive else rm
            strict = max(0, (c - amin) // rm) if c > amin else 0
            img_neg = not self.own._is_positive_root_vec(img)
            boundary = 1 if (c >= amin and img_neg) else 0
            yield root, rm, amin, strict, boundary

    def length(self, w: WeylElem) -> int:
        return sum(s + b for _, _, _, s, b in self._inversion_counts(w))

    def inversions(self, w: WeylElem) -> list[AffineWeight]:
        """Inv(w) as explicit affine roots a*delta + beta."""
        out = []
        m = self.side.m
        for root, rm, amin, strict, boundary in self._inversion_counts(w):
            mu_c = self.side.pairing_num(w.trans, mat_vec(self.own_mat(w.fin), root.vec)) // m
            a_vals = [amin + k * rm for k in range(strict)]
            if boundary:
                a_vals.append(mu_c)
            for a in a_vals:
                out.append(AffineWeight(self.name, root.vec, a * m))
        out.sort(key=lambda x: (x.delta_num, x.classical))
        return out

    def inversion_orbit_counts(self, w: WeylElem) -> dict[str, int]:
        counts = {"short": 0, "long": 0, "zero_orbit": 0}
        for x in self.inversions(w):
            sign, orbit = self.side.classify(x)
            counts[orbit] += 1
        return counts

    # -- Pi, reduced words ------------------------------------------------------------

    def pi_elements(self) -> dict[int, WeylElem]:
        """The length-zero subgroup, keyed by special node (0 = identity)."""
        if self._pi_cache is None:
            out = {0: self.ident}
            for k in range(1, self.datum.rank + 1):
                om = self.trans_datum.omega_in_lattice(k - 1)
                if om is None:
                    continue
                _, word = self.trans_datum.u_lambda(om)
                u = self.fin_from_word(word, applied_last_first=True)
                cand = self.mul(self.translation(om), self.from_finite(self.fin_inv(u)))
                if self.length(cand) == 0:
                    out[k] = cand
            self._pi_cache = out
        return self._pi_cache

    def pi_node_action(self, k: int) -> tuple[int, ...]:
        """The affine node permutation of pi_k: image of each i in 0..n."""
        pi = self.pi_elements()[k]
        images = []
        simples = [self.alpha(i) for i in range(self.datum.rank + 1)]
        for i in range(self.datum.rank + 1):
            img = self.act(pi, simples[i])
            for j, a in enumerate(simples):
                if img == a:
                    images.append(j)
                    break
            else:
                raise AssertionError("length-zero element did not permute the simple roots")
        return tuple(images)

    def descent(self, w: WeylElem) -> int | None:
        """Smallest affine i with w(alpha_i) negative, if any."""
        for i in range(self.datum.rank + 1):
            if self.is_negative(self.act(w, self.alpha(i))):
                return i
        return None

    def reduced_word(self, w: WeylElem) -> tuple[int, tuple[int, ...]]:
        """Canonical (pi-node, word) with w = pi . s_{word[0]} ... s_{word[-1]}.

        Greedy: repeatedly strip the smallest-index right descent.
        """
        word_rev = []
        cur = w
        cap = self.length(w) + 1
        while True:
            i = self.descent(cur)
            if i is None:
                break
            word_rev.append(i)
            cur = self.mul(cur, self.simple(i))
            if len(word_rev) > cap:
                raise AssertionError("descent stripping failed to terminate")
        for k, pi in self.pi_elements().items():
            if pi == cur:
                return k, tuple(reversed(word_rev))
        raise AssertionError("length-zero remainder is not in Pi")

    def check_reduced(self, pi_node: int, word) -> WeylElem:
        w = self.from_word(word, self.pi_elements()[pi_node])
        if self.length(w) != len(word):
            raise WordNotReduced(f"word of length {len(word)} for an element of length {self.length(w)}")
        return w

    # -- reflections -------------------------------------------------------------------

    def s_beta(self, beta: AffineWeight) -> WeylElem:
        """The reflection across the affine root beta = a*delta + b."""
        key = (beta.classical, beta.delta_num)
        cached = self._sbeta_cache.get(key)
        if cached is not None:
            return cached
        root = self.own.root(beta.classical)
        if root is None or beta.delta_num % self.side.m:
            raise ValueError(f"{beta} is not an affine real root")
        a = beta.delta_num // self.side.m
        fin = self.fin_from_word(self.own.word_of(self._reflection_matrix(root)))
        mu = self.side._solve_trans_vector(vec_scale(root.covec, -a))
        elem = WeylElem(self.name, mu, fin)
        self._sbeta_cache[key] = elem
        return elem

    def _reflection_matrix(self, root) -> Mat:
        n = self.datum.rank
        cols = []
        for b in range(n):
            e = tuple(int(k == b) for k in range(n))
            cols.append(tuple(x - root.covec[b] * y for x, y in zip(e, root.vec)))
        return tuple(tuple(cols[b][r] for b in range(n)) for r in range(n))


# ---------------------------------------------------------------------------
# datum-level conveniences
# ---------------------------------------------------------------------------

def groups(datum: DoubleAffineDatum) -> tuple[AffineGroup, AffineGroup]:
    gx = getattr(datum, "_group_x", None)
    if gx is None:
        gx = AffineGroup(datum, X_SIDE)
        gy = AffineGroup(datum, Y_SIDE)
        datum._group_x, datum._group_y = gx, gy
    return datum._group_x, datum._group_y


def group_x(datum) -> AffineGroup:
    return groups(datum)[0]


def group_y(datum) -> AffineGroup:
    return groups(datum)[1]


def u_lambda_elem(datum, lam: Vec) -> tuple[FinWeyl, tuple[int, ...]]:
    """Shortest finite element sending lam (in X) to the antidominant chamber."""
    gy = group_y(datum)
    _, word = datum.X.u_lambda(lam)
    return gy.fin_from_word(word, applied_last_first=True), word


def m_lambda(datum, lam: Vec) -> tuple[WeylElem, FinWeyl]:
    """The minimum-length element of t_lam W_0 in W(Y~), and u_lam."""
    gy = group_y(datum)
    u, _ = u_lambda_elem(datum, lam)
    m = gy.mul(gy.translation(lam), gy.from_finite(gy.fin_inv(u)))
    return m, u


def wt_dir(w: WeylElem) -> tuple[Vec, FinWeyl]:
    """The decomposition w = t_wt . dir of a W(Y~) element."""
    if w.side != Y_SIDE:
        raise SideMismatch("wt/dir applies to W(Y~) elements")
    return w.trans, w.fin


def translation_inversion_formula(datum, mu) -> dict[str, int]:
    """Predicted orbit counts of Inv(t_mu) for dominant mu in Y.

    The closed forms pair mu against the short/long positive coroot sums,
    with the classes swapped in (two-length) dual untwisted type and the
    split class halved when the odd-delta orbit is present.
    """
    Y = datum.Y
    if not Y.is_dominant(tuple(mu)):
        raise ValueError(f"{mu} is not dominant in Y")
    es = dot(Y.two_rho_check_shortco, tuple(mu))
    el = dot(Y.two_rho_check_longco, tuple(mu))
    if datum.dual_rule and not Y.single_length:
        es, el = el, es
    counts = {"short": es, "long": el, "zero_orbit": 0}
    side = datum.side_x
    if side.r0_nonempty:
        cls = "short" if side.split_class_short else "long"
        if counts[cls] % 2:
            raise AssertionError("split-orbit count is odd")
        counts[cls] //= 2
        counts["zero_orbit"] = counts[cls]
    return counts


def render_element(group: AffineGroup, w: WeylElem) -> str:
    k, word = group.reduced_word(w)
    parts = []
    if k:
        parts.append(f"pi_{k}")
    parts.extend(f"s{i}" for i in word)
    return "*".join(parts) if parts else "id"
