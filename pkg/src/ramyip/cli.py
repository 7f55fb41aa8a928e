"""Batch command-line front end.

Subcommands: compute-e, compute-p, paths, qbg, and verify {eigen, limits,
duality, ord}.  Output is deterministic byte-for-byte for a fixed job; the
RAMYIP_SEED environment variable is accepted and ignored (nothing here is
randomized).  Validation failures exit with status 2 and a one-line
diagnostic naming the offending field.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass
from fractions import Fraction

from .duality import check_dual_coefficients, check_path_bijection, check_star_identity
from .evaluate import evaluate_E, evaluate_P
from .hecke import HeckeOps
from .paths import family_for_weight
from .qbg import (
    E_at_q0, E_at_qinf, E_at_v0, E_at_vinf, P_at_v0, build_qbg, check_limits,
    classify_path, fold_tree_dot,
)
from .rootdata import (
    DUAL_UNTWISTED, KOORNWINDER, MIXED_A2N2, MIXED_A2N2_DAGGER, UNTWISTED,
    DoubleAffineDatum, build_datum,
)
from .weyl import group_y
from .xpoly import XPoly


class JobError(ValueError):
    def __init__(self, field: str, message: str):
        super().__init__(f"field {field}: {message}")
        self.field = field


@dataclass
class JobSpec:
    """A parsed, validated job; round-trips through its JSON form."""

    type: str
    weight: tuple[int, ...] | None
    spec: str = "full"
    symmetric: bool = False
    basis: str = "auto"
    u_word: tuple[int, ...] | None = None
    word: tuple[int, ...] | None = None
    lattice_x: str | None = None
    lattice_y: str | None = None
    fmt: str = "text"
    jobs: int = 1

    def to_json(self) -> dict:
        d = asdict(self)
        d["weight"] = list(self.weight) if self.weight is not None else None
        d["u_word"] = list(self.u_word) if self.u_word is not None else None
        d["word"] = list(self.word) if self.word is not None else None
        return d

    @staticmethod
    def from_json(d: dict) -> "JobSpec":
        return JobSpec(
            type=d["type"],
            weight=tuple(d["weight"]) if d.get("weight") is not None else None,
            spec=d.get("spec", "full"),
            symmetric=bool(d.get("symmetric", False)),
            basis=d.get("basis", "auto"),
            u_word=tuple(d["u_word"]) if d.get("u_word") is not None else None,
            word=tuple(d["word"]) if d.get("word") is not None else None,
            lattice_x=d.get("lattice_x"),
            lattice_y=d.get("lattice_y"),
            fmt=d.get("fmt", "text"),
            jobs=int(d.get("jobs", 1)),
        )


def parse_type(spec: str, lattice_x: str | None, lattice_y: str | None) -> DoubleAffineDatum:
    """Affine type strings: A2, B3, ... (untwisted), D3^2 (dual untwisted),
    K2 (Koornwinder), A4^2 and A4^2+ (mixed)."""
    s = spec.strip()
    mixed_dagger = s.endswith("+") or s.lower().endswith("dag")
    base = s.rstrip("+")
    if base.lower().endswith("dag"):
        base = base[:-3]
    try:
        if "^" in base:
            head, sup = base.split("^", 1)
            letter, rank = head[0].upper(), int(head[1:])
            sup = int(sup)
        else:
            letter, rank = base[0].upper(), int(base[1:])
            sup = 1
    except (ValueError, IndexError):
        raise JobError("type", f"cannot parse affine type {spec!r}")
    if letter == "K":
        return build_datum(("B", rank), ("B", rank), "Q", "Q", KOORNWINDER)
    if letter == "A" and sup == 2:
        if rank % 2:
            raise JobError("type", "mixed types need an even subscript A_{2n}^{(2)}")
        cls = MIXED_A2N2_DAGGER if mixed_dagger else MIXED_A2N2
        return build_datum(("B", rank // 2), ("B", rank // 2), "Q", "Q", cls)
    if letter == "D" and sup == 2:
        n = rank - 1
        if n < 1:
            raise JobError("type", "D_m^{(2)} needs m >= 2")
        lx = lattice_x or "Q"
        ly = lattice_y or "Q"
        return build_datum(("B", n), ("B", n), lx, ly, DUAL_UNTWISTED)
    if sup != 1:
        raise JobError("type", f"unsupported twisted type {spec!r}")
    dual = {"A": "A", "B": "C", "C": "B", "D": "D", "E": "E", "F": "F", "G": "G"}
    if letter not in dual:
        raise JobError("type", f"unknown type letter {letter!r}")
    return build_datum((letter, rank), (dual[letter], rank),
                       lattice_x or "P", lattice_y or "P", UNTWISTED)


def parse_weight(datum: DoubleAffineDatum, text: str, basis: str) -> tuple[int, ...]:
    try:
        vals = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise JobError("weight", f"expected comma-separated integers, got {text!r}")
    if len(vals) != datum.rank:
        raise JobError("weight", f"expected {datum.rank} coordinates, got {len(vals)}")
    X = datum.X
    if basis == "auto":
        basis = "ambient" if X.name[:1] in "BCD" else "fundamental"
    if basis == "ambient":
        try:
            return X.from_ambient(vals)
        except ValueError as e:
            raise JobError("weight", str(e))
    if basis == "root":
        out = [sum(X.alpha[j][i] * vals[j] for j in range(X.rank)) for i in range(X.rank)]
        return tuple(out)
    if basis == "fundamental":
        if X.lattice == "P":
            return vals
        from .rootdata import solve_rational
        a = [[Fraction(X.cartan[i][j]) for j in range(X.rank)] for i in range(X.rank)]
        sol = solve_rational(a, [Fraction(v) for v in vals])
        if any(x.denominator != 1 for x in sol):
            raise JobError("weight", f"{vals} is not in the root lattice")
        return tuple(int(x) for x in sol)
    raise JobError("basis", f"unknown basis {basis!r}")


def weight_formatter(datum: DoubleAffineDatum):
    X = datum.X
    if X.name[:1] in "BCD":
        def fmt(k):
            amb = X.to_ambient(k)
            return "(" + ",".join(str(int(x)) if x.denominator == 1 else str(x)
                                  for x in amb) + ")"
        return fmt
    return lambda k: "(" + ",".join(str(x) for x in k) + ")"


def render_poly(datum: DoubleAffineDatum, poly: XPoly, fmt: str,
                norm=None, extra: dict | None = None) -> str:
    if fmt == "json":
        doc = {
            "schema": "poly-v1",
            "terms": poly.to_json(),
            "normalization_scalar": norm.to_json() if norm is not None else None,
            "datum_ref": datum.to_json(),
        }
        doc.update(extra or {})
        return json.dumps(doc, sort_keys=True)
    return poly.to_str(weight_formatter(datum))


def _build_u(datum, job: JobSpec):
    gy = group_y(datum)
    if job.u_word is None:
        return None
    for i in job.u_word:
        if not (0 <= i <= datum.rank):
            raise JobError("u", f"node {i} out of range 0..{datum.rank}")
    return gy.from_word(job.u_word)


def run_compute_e(datum, job: JobSpec) -> str:
    u = _build_u(datum, job)
    if job.spec == "full":
        res = evaluate_E(datum, job.weight, u=u, word=job.word, jobs=job.jobs)
        return render_poly(datum, res.normalized, job.fmt, norm=res.norm_scalar,
                           extra={"spec": "full"})
    fns = {"v0": lambda: E_at_v0(datum, job.weight, u),
           "vinf": lambda: E_at_vinf(datum, job.weight),
           "q0": lambda: E_at_q0(datum, job.weight, u),
           "qinf": lambda: E_at_qinf(datum, job.weight)}
    if job.spec not in fns:
        raise JobError("spec", f"unknown specialization {job.spec!r}")
    if job.spec in ("vinf", "qinf") and u is not None:
        raise JobError("u", f"--u is not meaningful for spec {job.spec}")
    return render_poly(datum, fns[job.spec](), job.fmt, extra={"spec": job.spec})


def run_compute_p(datum, job: JobSpec) -> str:
    if job.spec == "full":
        res = evaluate_P(datum, job.weight, jobs=job.jobs)
        return render_poly(datum, res.poly, job.fmt, extra={"spec": "full", "symmetric": True})
    if job.spec == "v0":
        return render_poly(datum, P_at_v0(datum, job.weight), job.fmt,
                           extra={"spec": "v0", "symmetric": True})
    raise JobError("spec", "compute-p supports specs full and v0")


def run_paths(datum, job: JobSpec, quantum_only: bool) -> str:
    u = _build_u(datum, job)
    fam, _ = family_for_weight(datum, job.weight, u, job.word)
    fmt_wt = weight_formatter(datum)
    if job.fmt == "dot":
        return fold_tree_dot(fam, quantum_only=quantum_only)
    rows = []
    for p in fam.paths():
        cls = classify_path(p)
        if quantum_only and not cls.accepted:
            continue
        d = p.describe()
        d["wt"] = fmt_wt(p.wt)
        d["quantum"] = cls.accepted
        rows.append(d)
    if job.fmt == "json":
        return json.dumps({"schema": "paths-v1", "word": list(fam.word),
                           "pi": fam.pi_node, "rows": rows,
                           "datum_ref": datum.to_json()}, sort_keys=True)
    lines = [f"# word: pi_{fam.pi_node} {list(fam.word)}"]
    lines.append(f"{'J':<14}{'signs':<{fam.ell + 3}}{'dir':<14}{'wt':<14}q^")
    for d in rows:
        jlab = "{" + ",".join(str(j) for j in d["J"]) + "}"
        dirlab = ".".join(f"s{i}" for i in d["dir_word"]) or "e"
        lines.append(f"{jlab:<14}{d['signs']:<{fam.ell + 3}}{dirlab:<14}{d['wt']:<14}{d['q_power']}")
    return "\n".join(lines)


def run_qbg(datum, fmt: str) -> str:
    graph = build_qbg(datum)
    if fmt == "dot":
        return graph.to_dot()
    rows = []
    Y = datum.Y
    for (w, alpha), (kind, tgt) in sorted(graph.edges.items()):
        rows.append({
            "from": list(Y.word_of(w)), "to": list(Y.word_of(tgt)),
            "label": list(alpha), "kind": kind,
        })
    if fmt == "json":
        return json.dumps({"schema": "qbg-v1", "vertices": len(graph.vertices),
                           "edges": rows, "datum_ref": datum.to_json()}, sort_keys=True)
    lines = [f"# {len(graph.vertices)} vertices, {len(rows)} edges"]
    for r in rows:
        src = ".".join(f"s{i+1}" for i in r["from"]) or "e"
        tgt = ".".join(f"s{i+1}" for i in r["to"]) or "e"
        lines.append(f"{src} -> {tgt}  label={tuple(r['label'])}  {r['kind']}")
    return "\n".join(lines)


def run_verify(kind: str, datum, job: JobSpec) -> tuple[str, bool]:
    if kind == "eigen":
        res = evaluate_E(datum, job.weight, jobs=job.jobs)
        hecke = HeckeOps(datum)
        rep = hecke.verify_eigen(job.weight, res.normalized)
        return rep.summary(), rep.passed
    if kind == "limits":
        # the 0-node parameter of A2n2 vanishes from positive-fold factors, so
        # the q-limit path formulas do not apply to that class
        out = check_limits(datum, job.weight, skip_q_limits=datum.affine_class == MIXED_A2N2)
        ok = all(out.values())
        body = ", ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in sorted(out.items()))
        return (f"OK ({body})" if ok else f"FAIL ({body})"), ok
    if kind == "duality":
        r1 = check_dual_coefficients(datum, job.weight)
        r2 = check_star_identity(datum, job.weight)
        r3 = check_path_bijection(datum, job.weight)
        ok = r1 and r2 and r3
        body = f"coefficients={'ok' if r1 else 'FAIL'}, star={'ok' if r2 else 'FAIL'}, " \
               f"bijection={'ok' if r3 else 'FAIL'}"
        return (f"OK ({body})" if ok else f"FAIL ({body})"), ok
    if kind == "ord":
        fam, _ = family_for_weight(datum, job.weight)
        base = fam.root_path().order()
        total = bad = 0
        for p in fam.paths():
            total += 1
            o = p.order()
            accepted = classify_path(p).accepted
            if o < base or (o == base) != accepted:
                bad += 1
        msg = f"{total} fold subsets, minimum order {base}"
        return (f"OK ({msg})" if bad == 0 else f"FAIL ({bad} bad paths; {msg})"), bad == 0
    raise JobError("verify", f"unknown verification {kind!r}")


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ramyip",
        description="Exact Macdonald-Koornwinder polynomials via alcove paths.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, weight=True):
        p.add_argument("--type", required=True, help="affine type, e.g. A2, C2, G2, D3^2, K2, A4^2, A4^2+")
        if weight:
            p.add_argument("--weight", required=True, help="comma-separated coordinates")
            p.add_argument("--basis", default="auto", choices=["auto", "ambient", "fundamental", "root"])
        p.add_argument("--lattice-x", dest="lattice_x", choices=["P", "Q"])
        p.add_argument("--lattice-y", dest="lattice_y", choices=["P", "Q"])
        p.add_argument("--format", dest="fmt", default="text", choices=["text", "json", "dot"])
        p.add_argument("--jobs", type=int, default=1)

    pe = sub.add_parser("compute-e", help="nonsymmetric polynomial")
    common(pe)
    pe.add_argument("--spec", default="full", choices=["full", "v0", "vinf", "q0", "qinf"])
    pe.add_argument("--u", help="comma-separated affine word for the twist X^u")
    pe.add_argument("--word", help="explicit reduced word for m_lambda")

    pp = sub.add_parser("compute-p", help="symmetric polynomial")
    common(pp)
    pp.add_argument("--spec", default="full", choices=["full", "v0"])

    pa = sub.add_parser("paths", help="list alcove paths")
    common(pa)
    pa.add_argument("--u", help="comma-separated affine word for the starting twist")
    pa.add_argument("--word", help="explicit reduced word for m_lambda")
    pa.add_argument("--quantum-only", action="store_true")

    pq = sub.add_parser("qbg", help="quantum Bruhat graph")
    common(pq, weight=False)

    pv = sub.add_parser("verify", help="run a verification oracle")
    pv.add_argument("kind", choices=["eigen", "limits", "duality", "ord"])
    common(pv)
    return ap


def _job_from_args(args) -> JobSpec:
    return JobSpec(
        type=args.type,
        weight=None,
        basis=getattr(args, "basis", "auto"),
        spec=getattr(args, "spec", "full"),
        u_word=tuple(int(x) for x in args.u.split(",")) if getattr(args, "u", None) else None,
        word=tuple(int(x) for x in args.word.split(",")) if getattr(args, "word", None) else None,
        lattice_x=args.lattice_x,
        lattice_y=args.lattice_y,
        fmt=args.fmt,
        jobs=args.jobs,
    )


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        job = _job_from_args(args)
        datum = parse_type(job.type, job.lattice_x, job.lattice_y)
        if hasattr(args, "weight"):
            job.weight = parse_weight(datum, args.weight, job.basis)
        assert job == JobSpec.from_json(json.loads(json.dumps(job.to_json())))
        if args.command == "compute-e":
            print(run_compute_e(datum, job))
        elif args.command == "compute-p":
            job.symmetric = True
            print(run_compute_p(datum, job))
        elif args.command == "paths":
            print(run_paths(datum, job, args.quantum_only))
        elif args.command == "qbg":
            print(run_qbg(datum, job.fmt))
        elif args.command == "verify":
            msg, ok = run_verify(args.kind, datum, job)
            print(msg)
            return 0 if ok else 1
        return 0
    except JobError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
