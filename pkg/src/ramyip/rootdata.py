"""Cartan data, finite root data, and the double affine datum.

The double affine datum pairs two finite root data (X, Y) with identified
Weyl groups.  Everything downstream (affine Weyl groups, Hecke parameters,
alcove paths) is keyed off one immutable DoubleAffineDatum.

Coordinate conventions: vectors live in the basis of simple roots when the
lattice is Q and of fundamental weights when it is P; coroots and other
coweights are integer row functionals on those coordinates.  Ambient e_i
coordinates exist only as an I/O conversion for types B, C, D.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .coeffring import CoeffRing, CoeffRat

Vec = tuple[int, ...]
Mat = tuple[Vec, ...]


class IncompatibleTypes(ValueError):
    pass


class LatticeUnsupported(ValueError):
    pass


class SideMismatch(ValueError):
    pass


class FractionalExponent(ArithmeticError):
    pass


# ---------------------------------------------------------------------------
# small integer linear algebra
# ---------------------------------------------------------------------------

def mat_id(n: int) -> Mat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(a: Mat, b: Mat) -> Mat:
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0])))
        for i in range(len(a))
    )


def mat_vec(a: Mat, v: Vec) -> Vec:
    return tuple(sum(a[i][k] * v[k] for k in range(len(v))) for i in range(len(a)))


def row_mat(row: Vec, a: Mat) -> Vec:
    return tuple(sum(row[k] * a[k][j] for k in range(len(row))) for j in range(len(a[0])))


def vec_add(u: Vec, v: Vec) -> Vec:
    return tuple(x + y for x, y in zip(u, v))


def vec_sub(u: Vec, v: Vec) -> Vec:
    return tuple(x - y for x, y in zip(u, v))


def vec_neg(u: Vec) -> Vec:
    return tuple(-x for x in u)


def vec_scale(u: Vec, c: int) -> Vec:
    return tuple(c * x for x in u)


def dot(row: Vec, v: Vec) -> int:
    return sum(x * y for x, y in zip(row, v))


def mat_inv_int(a: Mat) -> Mat:
    """Inverse of an integer matrix that is invertible over Z."""
    n = len(a)
    work = [[Fraction(a[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
            for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if work[r][col] != 0)
        work[col], work[piv] = work[piv], work[col]
        pv = work[col][col]
        work[col] = [x / pv for x in work[col]]
        for r in range(n):
            if r != col and work[r][col]:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            x = work[i][j + n]
            if x.denominator != 1:
                raise ValueError("matrix is not invertible over Z")
            row.append(int(x))
        out.append(tuple(row))
    return tuple(out)


def solve_rational(a: list[list[Fraction]], b: list[Fraction]) -> list[Fraction]:
    n = len(a)
    work = [row[:] + [b[i]] for i, row in enumerate(a)]
    for col in range(n):
        piv = next(r for r in range(col, n) if work[r][col] != 0)
        work[col], work[piv] = work[piv], work[col]
        pv = work[col][col]
        work[col] = [x / pv for x in work[col]]
        for r in range(n):
            if r != col and work[r][col]:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
    return [work[i][n] for i in range(n)]


# ---------------------------------------------------------------------------
# Cartan data
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CartanDatum:
    """A generalized Cartan matrix over an ordered node set."""

    nodes: tuple
    matrix: Mat

    def __post_init__(self):
        n = len(self.nodes)
        a = self.matrix
        if len(a) != n or any(len(r) != n for r in a):
            raise ValueError("Cartan matrix shape does not match node set")
        for i in range(n):
            if a[i][i] != 2:
                raise ValueError(f"a[{i}][{i}] != 2")
            for j in range(n):
                if i != j:
                    if a[i][j] > 0:
                        raise ValueError("off-diagonal Cartan entries must be <= 0")
                    if (a[i][j] < 0) != (a[j][i] < 0):
                        raise ValueError("asymmetric zero pattern in Cartan matrix")


def cartan_matrix(letter: str, n: int) -> Mat:
    """Cartan matrix a[i][j] = <alpha_i^vee, alpha_j> of a finite type."""
    if n < 1:
        raise IncompatibleTypes("rank must be >= 1")
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
    def join(i, j, aij=-1, aji=-1):
        a[i][j], a[j][i] = aij, aji

    if letter == "A":
        for i in range(n - 1):
            join(i, i + 1)
    elif letter == "B":
        if n < 2:
            raise IncompatibleTypes("B_n needs n >= 2")
        for i in range(n - 2):
            join(i, i + 1)
        join(n - 2, n - 1, -1, -2)  # alpha_n short
    elif letter == "C":
        if n < 2:
            raise IncompatibleTypes("C_n needs n >= 2")
        for i in range(n - 2):
            join(i, i + 1)
        join(n - 2, n - 1, -2, -1)  # alpha_n long
    elif letter == "D":
        if n < 3:
            raise IncompatibleTypes("D_n needs n >= 3")
        for i in range(n - 2):
            join(i, i + 1)
        join(n - 3, n - 1)
    elif letter == "E":
        if n not in (6, 7, 8):
            raise IncompatibleTypes("E_n needs n in {6,7,8}")
        # chain 0-1-2-...-(n-2), with node n-1 attached to node 2
        for i in range(n - 2):
            join(i, i + 1)
        join(2, n - 1)
    elif letter == "F":
        if n != 4:
            raise IncompatibleTypes("F_n needs n = 4")
        join(0, 1)
        join(1, 2, -1, -2)
        join(2, 3)
    elif letter == "G":
        if n != 2:
            raise IncompatibleTypes("G_n needs n = 2")
        join(0, 1, -3, -1)  # alpha_1 short, alpha_2 long
    else:
        raise IncompatibleTypes(f"unknown type letter {letter!r}")
    return tuple(tuple(r) for r in a)


def symmetrizer(a: Mat) -> tuple[int, ...]:
    """Minimal positive integers d with d_i a_ij = d_j a_ji, normalized min 1."""
    n = len(a)
    d = [Fraction(0)] * n
    d[0] = Fraction(1)
    changed = True
    while changed:
        changed = False
        for i in range(n):
            for j in range(n):
                if a[i][j] and d[i] and not d[j]:
                    d[j] = d[i] * a[i][j] / a[j][i]
                    changed = True
    if any(x == 0 for x in d):
        raise IncompatibleTypes("Cartan matrix is not irreducible")
    den = lcm(*(x.denominator for x in d))
    ints = [int(x * den) for x in d]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints]
    lo = min(ints)
    if lo != 1:
        ints = [x // lo for x in ints] if all(x % lo == 0 for x in ints) else ints
    return tuple(ints)


# ---------------------------------------------------------------------------
# finite root datum
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Root:
    vec: Vec
    covec: Vec
    short: bool
    positive: bool


class FiniteRootDatum:
    """A finite root datum realized over the lattice P or Q of its type."""

    def __init__(self, cartan: Mat, lattice: str, name: str = "?"):
        if lattice not in ("P", "Q"):
            raise LatticeUnsupported(
                f"lattice {lattice!r}: only the weight lattice P and root lattice Q are supported")
        self.cartan = cartan
        self.lattice = lattice
        self.name = name
        self.rank = n = len(cartan)
        self.sym = symmetrizer(cartan)
        self.single_length = len(set(self.sym)) == 1
        self.twist = max(self.sym)

        if lattice == "Q":
            self.alpha = tuple(tuple(int(i == k) for i in range(n)) for k in range(n))
            self.alphacheck = tuple(tuple(cartan[k][j] for j in range(n)) for k in range(n))
            inv = [solve_rational([[Fraction(cartan[i][j]) for j in range(n)] for i in range(n)],
                                  [Fraction(int(i == k)) for i in range(n)]) for k in range(n)]
            # omega_k = sum_j inv[k][j] alpha_j
            self.omega_frac = tuple(tuple(inv[k][j] for j in range(n)) for k in range(n))
        else:
            self.alpha = tuple(tuple(cartan[j][k] for j in range(n)) for k in range(n))
            self.alphacheck = tuple(tuple(int(i == k) for i in range(n)) for k in range(n))
            self.omega_frac = tuple(tuple(Fraction(int(i == k)) for i in range(n)) for k in range(n))

        self.s_mat = tuple(self._reflection_matrix(i) for i in range(n))
        self._build_roots()
        self._w0 = None
        self._elements = None

    # -- construction helpers -------------------------------------------------

    def _reflection_matrix(self, i: int) -> Mat:
        n = self.rank
        cols = []
        for b in range(n):
            e = tuple(int(k == b) for k in range(n))
            cols.append(vec_sub(e, vec_scale(self.alpha[i], self.alphacheck[i][b])))
        return tuple(tuple(cols[b][r] for b in range(n)) for r in range(n))

    def _build_roots(self):
        n = self.rank
        seen: dict[Vec, tuple[Vec, bool]] = {}
        frontier = [(self.alpha[i], self.alphacheck[i], self.sym[i] == 1) for i in range(n)]
        for v, cv, sh in frontier:
            seen[v] = (cv, sh)
        while frontier:
            nxt = []
            for v, cv, sh in frontier:
                for i in range(n):
                    v2 = mat_vec(self.s_mat[i], v)
                    if v2 not in seen:
                        cv2 = row_mat(cv, self.s_mat[i])
                        seen[v2] = (cv2, sh)
                        nxt.append((v2, cv2, sh))
            frontier = nxt
        roots = []
        for v, (cv, sh) in seen.items():
            pos = self._is_positive_root_vec(v)
            roots.append(Root(v, cv, sh if not self.single_length else True, pos))
        roots.sort(key=lambda r: (not r.positive, sum(abs(x) for x in r.vec), r.vec))
        self.roots = tuple(roots)
        self.positive_roots = tuple(r for r in roots if r.positive)
        self._root_index = {r.vec: r for r in roots}

        dom = [r for r in self.positive_roots if all(dot(self.alphacheck[i], r.vec) >= 0 for i in range(self.rank))]
        shorts = [r for r in dom if r.short]
        longs = [r for r in dom if not r.short]
        self.vartheta = shorts[0] if shorts else dom[0]
        self.highest_root = longs[0] if longs else dom[0]

        zero = (0,) * n
        self.two_rho_vec = zero
        trs, trl, tr = zero, zero, zero
        for r in self.positive_roots:
            self.two_rho_vec = vec_add(self.two_rho_vec, r.vec)
            tr = vec_add(tr, r.covec)
            if self.single_length or not r.short:
                trs = vec_add(trs, r.covec)  # coroots of long roots are short
            else:
                trl = vec_add(trl, r.covec)
        self.two_rho_check = tr
        self.two_rho_check_shortco = trs
        self.two_rho_check_longco = trl

    def _is_positive_root_vec(self, v: Vec) -> bool:
        # positive roots have nonnegative coordinates in the alpha basis
        c = self.root_coords_alpha(v)
        return all(x >= 0 for x in c)

    def root_coords_alpha(self, v: Vec) -> tuple[Fraction, ...]:
        """Coordinates of a lattice vector in the simple-root basis."""
        n = self.rank
        if self.lattice == "Q":
            return tuple(Fraction(x) for x in v)
        a = [[Fraction(self.alpha[j][i]) for j in range(n)] for i in range(n)]
        return tuple(solve_rational(a, [Fraction(x) for x in v]))

    # -- queries ---------------------------------------------------------------

    def root(self, v: Vec) -> Root | None:
        return self._root_index.get(v)

    def is_dominant(self, v: Vec) -> bool:
        return all(dot(self.alphacheck[i], v) >= 0 for i in range(self.rank))

    def is_antidominant(self, v: Vec) -> bool:
        return all(dot(self.alphacheck[i], v) <= 0 for i in range(self.rank))

    def omega_in_lattice(self, i: int) -> Vec | None:
        co = self.omega_frac[i]
        if all(x.denominator == 1 for x in co):
            return tuple(int(x) for x in co)
        return None

    def u_lambda(self, lam: Vec) -> tuple[Mat, tuple[int, ...]]:
        """Shortest w with w(lam) antidominant, as (matrix, word).

        The word lists simple reflections in application order, i.e.
        w = s_{word[-1]} ... s_{word[0]}.
        """
        x = lam
        word = []
        u = mat_id(self.rank)
        while True:
            for i in range(self.rank):
                if dot(self.alphacheck[i], x) > 0:
                    x = mat_vec(self.s_mat[i], x)
                    u = mat_mul(self.s_mat[i], u)
                    word.append(i)
                    break
            else:
                return u, tuple(word)

    def w0(self) -> Mat:
        if self._w0 is None:
            self._w0 = self.u_lambda(self.two_rho_vec)[0]
        return self._w0

    def finite_inversions(self, mat: Mat) -> tuple[Root, ...]:
        out = []
        for r in self.positive_roots:
            if not self._is_positive_root_vec(mat_vec(mat, r.vec)):
                out.append(r)
        return tuple(out)

    def length_of(self, mat: Mat) -> int:
        return len(self.finite_inversions(mat))

    def elements(self) -> tuple[Mat, ...]:
        """All of W_0 by breadth-first closure over the generators."""
        if self._elements is None:
            seen = {mat_id(self.rank)}
            frontier = list(seen)
            while frontier:
                nxt = []
                for m in frontier:
                    for s in self.s_mat:
                        m2 = mat_mul(s, m)
                        if m2 not in seen:
                            seen.add(m2)
                            nxt.append(m2)
                frontier = nxt
            self._elements = tuple(sorted(seen, key=lambda m: (self.length_of(m), m)))
        return self._elements

    def word_of(self, mat: Mat) -> tuple[int, ...]:
        """A reduced word for a finite element (greedy right descents)."""
        word = []
        m = mat
        ident = mat_id(self.rank)
        while m != ident:
            for i in range(self.rank):
                if not self._is_positive_root_vec(mat_vec(m, self.alpha[i])):
                    word.append(i)
                    m = mat_mul(m, self.s_mat[i])
                    break
            else:
                raise ValueError("element has no descent but is not the identity")
        return tuple(reversed(word))

    # -- ambient coordinates for B/C/D ----------------------------------------

    def _ambient_table(self) -> tuple[tuple[Fraction, ...], ...] | None:
        n = self.rank
        letter = self.name[:1]
        if letter not in "BCD":
            return None
        e = lambda *idx: tuple(Fraction(1) if k in idx else Fraction(0) for k in range(n))
        alpha_amb = []
        for i in range(n - 1):
            alpha_amb.append(tuple(Fraction(int(k == i)) - Fraction(int(k == i + 1)) for k in range(n)))
        if letter == "B":
            alpha_amb.append(e(n - 1))
        elif letter == "C":
            alpha_amb.append(tuple(2 * x for x in e(n - 1)))
        else:
            alpha_amb.append(tuple(Fraction(int(k == n - 2)) + Fraction(int(k == n - 1)) for k in range(n)))
        return tuple(alpha_amb)

    def to_ambient(self, v: Vec) -> tuple[Fraction, ...]:
        amb = self._ambient_table()
        if amb is None:
            raise ValueError(f"type {self.name} has no ambient coordinates")
        coords = self.root_coords_alpha(v)
        n = self.rank
        out = [Fraction(0)] * n
        for c, av in zip(coords, amb):
            for k in range(n):
                out[k] += c * av[k]
        return tuple(out)

    def from_ambient(self, ev) -> Vec:
        amb = self._ambient_table()
        if amb is None:
            raise ValueError(f"type {self.name} has no ambient coordinates")
        n = self.rank
        a = [[amb[j][i] for j in range(n)] for i in range(n)]
        coords = solve_rational(a, [Fraction(x) for x in ev])
        # coords are in the alpha basis; convert to the internal basis
        if self.lattice == "Q":
            vals = coords
        else:
            # v = sum c_j alpha_j; internal coords are <alpha_i^vee, v>
            vals = [sum(coords[j] * self.cartan[i][j] for j in range(n)) for i in range(n)]
        if any(x.denominator != 1 for x in vals):
            raise ValueError(f"vector {tuple(ev)} is not in the {self.lattice}-lattice of {self.name}")
        return tuple(int(x) for x in vals)


# ---------------------------------------------------------------------------
# affine weights
# ---------------------------------------------------------------------------

X_SIDE = "X"
Y_SIDE = "Y"


@dataclass(frozen=True, slots=True)
class AffineWeight:
    """classical + (delta_num/m) * delta on the given side."""

    side: str
    classical: Vec
    delta_num: int = 0

    def __post_init__(self):
        if self.side not in (X_SIDE, Y_SIDE):
            raise SideMismatch(f"unknown side {self.side!r}")

    def add(self, other: "AffineWeight") -> "AffineWeight":
        if other.side != self.side:
            raise SideMismatch("cannot add weights from different sides")
        return AffineWeight(self.side, vec_add(self.classical, other.classical),
                            self.delta_num + other.delta_num)

    def neg(self) -> "AffineWeight":
        return AffineWeight(self.side, vec_neg(self.classical), -self.delta_num)

    def is_zero(self) -> bool:
        return self.delta_num == 0 and not any(self.classical)


# ---------------------------------------------------------------------------
# the double affine datum
# ---------------------------------------------------------------------------

UNTWISTED = "untwisted"
DUAL_UNTWISTED = "dual-untwisted"
KOORNWINDER = "koornwinder"
MIXED_A2N2 = "A2n2"
MIXED_A2N2_DAGGER = "A2n2-dagger"

AFFINE_CLASSES = (UNTWISTED, DUAL_UNTWISTED, KOORNWINDER, MIXED_A2N2, MIXED_A2N2_DAGGER)


class SideData:
    """Per-side affine information: the classical datum acting on this side's
    weights plus the translation lattice (the other side's datum)."""

    def __init__(self, name: str, own: FiniteRootDatum, trans: FiniteRootDatum,
                 gram_num: Mat, m: int, dual_rule: bool):
        self.name = name                  # X_SIDE or Y_SIDE
        self.own = own                    # roots acted upon live in this datum
        self.trans = trans                # translations live in this datum
        self.gram_num = gram_num          # m * (trans basis vector, own basis vector)
        self.m = m
        self.dual_rule = dual_rule        # delta multiples follow the dual untwisted rule
        # theta of the affinization: highest root if untwisted, dominant short if dual
        self.theta = own.vartheta if dual_rule else own.highest_root
        # alpha_0 = delta - theta; its coroot functional restricted to classical part
        self.alpha0_covec = vec_neg(self.theta.covec)
        self.s0_trans = self._solve_trans_vector(self.theta.covec)
        # R^0 data: does the W(affine)-orbit of the theta length class split by parity
        self.split_class_short: bool | None = None
        self._compute_orbit_split()

    # pairing of mu in trans lattice with x in own lattice, times m
    def pairing_num(self, mu: Vec, x: Vec) -> int:
        total = 0
        for a, ma in enumerate(mu):
            if ma:
                row = self.gram_num[a]
                total += ma * dot(row, x)
        return total

    def pairing(self, mu: Vec, x: Vec) -> Fraction:
        return Fraction(self.pairing_num(mu, x), self.m)

    def _solve_trans_vector(self, covec: Vec) -> Vec:
        """The translation-lattice vector mu with (mu, x) = <covec, x> for all x."""
        n = self.own.rank
        a = [[Fraction(self.gram_num[r][c], self.m) for r in range(n)] for c in range(n)]
        sol = solve_rational(a, [Fraction(covec[c]) for c in range(n)])
        if any(s.denominator != 1 for s in sol):
            raise IncompatibleTypes("affine reflection translation is not a lattice vector")
        return tuple(int(s) for s in sol)

    def r_mult(self, root: Root) -> int:
        """Allowed delta multiples for roots over this classical root."""
        if not self.dual_rule or root.short or self.own.single_length:
            return 1
        return self.own.twist

    def _compute_orbit_split(self):
        # For each length class, the group of delta-shifts under translations by
        # the full trans lattice is g*Z; the class splits iff g == 2r.
        classes = {True: [], False: []}
        for r in self.own.positive_roots:
            classes[r.short].append(r)
        n = self.trans.rank
        basis = [tuple(int(i == k) for i in range(n)) for k in range(n)]
        for short, roots in classes.items():
            if not roots:
                continue
            g = 0
            for mu in basis:
                for r in roots:
                    val = self.pairing(mu, r.vec)
                    if val.denominator != 1:
                        raise IncompatibleTypes("root pairings must be integral")
                    g = gcd(g, int(val))
            rm = self.r_mult(roots[0])
            if g == 2 * rm:
                if self.split_class_short is not None:
                    raise IncompatibleTypes("more than one affine orbit splits")
                self.split_class_short = short
            elif g != rm:
                raise IncompatibleTypes(f"unexpected shift group {g} for r = {rm}")

    @property
    def r0_nonempty(self) -> bool:
        return self.split_class_short is not None

    # -- affine root classification -------------------------------------------

    def classify(self, x: AffineWeight) -> tuple[str, str | None]:
        """(not_root|positive|negative, short|long|zero_orbit|None) for x."""
        if x.side != self.name:
            raise SideMismatch("weight belongs to the other side")
        root = self.own.root(x.classical)
        if root is None or x.delta_num % self.m != 0:
            return ("not_root", None)
        a = x.delta_num // self.m
        rm = self.r_mult(root)
        if a % rm != 0:
            return ("not_root", None)
        sign = "positive" if (a > 0 or (a == 0 and root.positive)) else "negative"
        if self.split_class_short == root.short and (a // rm) % 2 != 0:
            orbit = "zero_orbit"
        else:
            orbit = "short" if root.short else "long"
        return (sign, orbit)

    def doubled_root_node(self, x: AffineWeight, doubled: frozenset[int]) -> int | None:
        """If x = 2*beta for a root beta in the orbit of a doubled node's root,
        the node label; otherwise None."""
        if any(c % 2 for c in x.classical) or x.delta_num % 2:
            return None
        half = AffineWeight(x.side, tuple(c // 2 for c in x.classical), x.delta_num // 2)
        sign, orbit = self.classify(half)
        if sign == "not_root":
            return None
        for node in doubled:
            tag = self.node_orbit(node)
            if tag == orbit:
                return node
        return None

    def node_orbit(self, node: int) -> str:
        """Orbit tag of alpha_node of the affinization (node 0 is affine)."""
        if node == 0:
            aff = AffineWeight(self.name, vec_neg(self.theta.vec), self.m)
        else:
            aff = AffineWeight(self.name, self.own.alpha[node - 1], 0)
        sign, orbit = self.classify(aff)
        if sign == "not_root":
            raise AssertionError("simple root failed to classify")
        return orbit


class DoubleAffineDatum:
    """Everything fixed by the choice of (X, Y), lattices, and affine class."""

    def __init__(self, type_x, type_y, lattice_x: str, lattice_y: str, affine_class: str):
        if affine_class not in AFFINE_CLASSES:
            raise IncompatibleTypes(f"unknown affine class {affine_class!r}")
        lx, nx = type_x
        ly, ny = type_y
        ax = cartan_matrix(lx, nx)
        ay = cartan_matrix(ly, ny)
        CartanDatum(tuple(range(nx)), ax)
        CartanDatum(tuple(range(ny)), ay)
        if nx != ny:
            raise IncompatibleTypes("X and Y must have equal rank")
        transposed = tuple(tuple(ax[j][i] for j in range(nx)) for i in range(nx))
        if affine_class == UNTWISTED:
            dual = {"A": "A", "B": "C", "C": "B", "D": "D", "E": "E", "F": "F", "G": "G"}
            if (ly, ny) != (dual[lx], nx):
                raise IncompatibleTypes(
                    f"untwisted class requires dual Cartan data; Y should be {dual[lx]}{nx}")
            ay = transposed  # node-for-node identification of the Weyl groups
        else:
            if ay != ax:
                raise IncompatibleTypes(f"{affine_class} requires equal Cartan data")
        if affine_class in (KOORNWINDER, MIXED_A2N2, MIXED_A2N2_DAGGER):
            if lx != "B" or ly != "B" or lattice_x != "Q" or lattice_y != "Q":
                raise IncompatibleTypes(
                    f"{affine_class} is defined over the Koornwinder datum (Q(B_n), Q(B_n))")

        self.affine_class = affine_class
        self.dual_rule = affine_class != UNTWISTED
        self.X = FiniteRootDatum(ax, lattice_x, f"{lx}{nx}")
        self.Y = FiniteRootDatum(ay, lattice_y, f"{ly}{ny}")
        self.rank = nx

        gx, m = self._gram(self.Y, self.X)     # (Y basis, X basis)
        gy, m2 = self._gram(self.X, self.Y)    # (X basis, Y basis)
        if m != m2 or gy != tuple(tuple(gx[j][i] for j in range(nx)) for i in range(nx)):
            raise IncompatibleTypes("the two pairings disagree; datum is inconsistent")
        self.m = m

        self.side_x = SideData(X_SIDE, self.X, self.Y, gx, m, self.dual_rule)
        self.side_y = SideData(Y_SIDE, self.Y, self.X, gy, m, self.dual_rule)

        self.S_X = self._doubled_nodes(self.X, self.side_x)
        self.S_Y = self._doubled_nodes(self.Y, self.side_y)

        self._setup_parameters()

    # -- pairing ---------------------------------------------------------------

    def _gram(self, src: FiniteRootDatum, dst: FiniteRootDatum) -> tuple[Mat, int]:
        """Rows: m * (src basis vector, dst basis vector) via the equivariant
        embedding of the src root lattice into dst coweights."""
        n = self.rank
        if self.dual_rule:
            gammas = src.sym
        else:
            gammas = (1,) * n
        rows = []
        dens = []
        a = [[Fraction(src.alpha[j][i]) for j in range(n)] for i in range(n)]
        for b in range(n):
            e = [Fraction(int(i == b)) for i in range(n)]
            coords = solve_rational(a, e)  # src basis vector in src alpha coords
            row = []
            for c in range(n):
                val = sum(coords[j] * gammas[j] * dst.alphacheck[j][c] for j in range(n))
                row.append(val)
                dens.append(val.denominator)
            rows.append(row)
        m = lcm(*dens) if dens else 1
        return tuple(tuple(int(v * m) for v in row) for row in rows), m

    def pairing(self, mu: Vec, lam: Vec) -> Fraction:
        """(mu, lam) for mu in Y and lam in X."""
        return self.side_x.pairing(mu, lam)

    # -- doubled nodes and parameters -------------------------------------------

    def _doubled_nodes(self, fin: FiniteRootDatum, side: SideData) -> frozenset[int]:
        if fin.lattice != "Q":
            return frozenset()
        out = set()
        n = fin.rank
        for i in range(1, n + 1):
            row = fin.alphacheck[i - 1]
            if all(dot(row, fin.alpha[j]) % 2 == 0 for j in range(n)):
                out.add(i)
        row0 = side.alpha0_covec
        if all(dot(row0, fin.alpha[j]) % 2 == 0 for j in range(n)):
            out.add(0)
        return frozenset(out)

    def _setup_parameters(self):
        sx = self.side_x
        base: list[str] = ["vs"]
        if not self.X.single_length:
            base.append("vl")
        if sx.r0_nonempty:
            base.append("v0")
        if self.S_X - {0}:
            base.append("v2")
        if 0 in self.S_X:
            base.append("vz")

        # orbit tag -> raw symbol, on the X side
        self._orbit_symbol = {"short": "vs",
                              "long": "vl" if not self.X.single_length else "vs",
                              "zero_orbit": "v0"}

        subs: dict[str, str] = {}
        if self.affine_class == MIXED_A2N2:
            subs = {"vz": "v0", "v2": "1"}
        elif self.affine_class == MIXED_A2N2_DAGGER:
            subs = {"vz": "1", "v2": "vs"}
        elif self.affine_class in (UNTWISTED, DUAL_UNTWISTED) and self.S_X:
            # reduce: each doubled parameter collapses onto its underlying root
            if "v2" in base:
                node = next(iter(self.S_X - {0}))
                subs["v2"] = self._orbit_symbol[sx.node_orbit(node)]
            if "vz" in base:
                subs["vz"] = self._orbit_symbol[sx.node_orbit(0)]
        self.param_subs = subs

        active = [p for p in base if subs.get(p, p) != "1" and p not in subs]
        self.active_params = tuple(active)
        self.ring = CoeffRing(self.active_params, self.m)
        self.equal_ring = CoeffRing(("v",), self.m)
        self._resolve_cache: dict[str, CoeffRat] = {}

    def param(self, symbol: str) -> CoeffRat:
        """The ring value of a raw parameter symbol after class substitutions."""
        c = self._resolve_cache.get(symbol)
        if c is None:
            name = self.param_subs.get(symbol, symbol)
            c = self.ring.one if name == "1" else self.ring.var(name)
            self._resolve_cache[symbol] = c
        return c

    # X-side parameter of a node of the affine diagram of X~
    def v_node_x(self, node: int) -> CoeffRat:
        return self.param(self._orbit_symbol[self.side_x.node_orbit(node)])

    def v2_node_x(self, node: int) -> CoeffRat:
        if node not in self.S_X:
            return self.v_node_x(node)
        return self.param("vz" if node == 0 else "v2")

    def _short_simple_x(self) -> int:
        for i in range(1, self.rank + 1):
            if self.X.sym[i - 1] == 1:
                return i
        return 1

    # Y-side parameters through the dual dictionary
    def v_node_y(self, node: int) -> CoeffRat:
        if node != 0:
            return self.v_node_x(node)
        j = self._short_simple_x()
        return self.v2_node_x(j)

    def v2_node_y(self, node: int) -> CoeffRat:
        if node not in self.S_Y:
            return self.v_node_y(node)
        if node == 0:
            if 0 not in self.S_X:
                raise IncompatibleTypes("doubled 0 on the Y side without one on the X side")
            return self.v2_node_x(0)
        return self.v_node_x(0)

    def v_orbit_x(self, tag: str) -> CoeffRat:
        return self.param(self._orbit_symbol[tag])

    # -- serialization -----------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "schema": "dad-v1",
            "type_x": self.X.name, "type_y": self.Y.name,
            "lattice_x": self.X.lattice, "lattice_y": self.Y.lattice,
            "affine_class": self.affine_class,
            "cartan_x": [list(r) for r in self.X.cartan],
            "cartan_y": [list(r) for r in self.Y.cartan],
            "m": self.m,
            "doubled_x": sorted(self.S_X), "doubled_y": sorted(self.S_Y),
            "orbits_x": {"zero_orbit_nonempty": self.side_x.r0_nonempty,
                         "split_class_short": self.side_x.split_class_short},
            "orbits_y": {"zero_orbit_nonempty": self.side_y.r0_nonempty,
                         "split_class_short": self.side_y.split_class_short},
            "active_params": list(self.active_params),
            "param_subs": dict(self.param_subs),
        }

    def __repr__(self):
        return (f"DoubleAffineDatum({self.X.name}/{self.X.lattice}, "
                f"{self.Y.name}/{self.Y.lattice}, {self.affine_class})")

    def side(self, name: str) -> SideData:
        if name == X_SIDE:
            return self.side_x
        if name == Y_SIDE:
            return self.side_y
        raise SideMismatch(f"unknown side {name!r}")


def build_datum(type_x, type_y, lattice_x: str = "P", lattice_y: str = "P",
                affine_class: str = UNTWISTED) -> DoubleAffineDatum:
    """Construct and validate a double affine datum.

    type_x/type_y are (letter, rank) pairs; lattices are 'P' or 'Q'.
    """
    return DoubleAffineDatum(type_x, type_y, lattice_x, lattice_y, affine_class)


def is_affine_root(datum: DoubleAffineDatum, x: AffineWeight) -> tuple[str, str | None]:
    return datum.side(x.side).classify(x)
