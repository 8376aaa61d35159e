"""Command-line interface: ``python -m swduality <command> ...``.

Exit codes: 0 success / all checks pass, 1 a verification failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, Sequence

from . import grothendieck as G
from . import quiver as Qv
from . import rseries as RS
from .arith import SpectralParam
from .denominators import AlgebraTag, denom, denom_zeros, format_factored
from .klr import rmatrix as KR
from .klr.modules import CONVOLUTION_CAP, SizeCapError, graded_dim, segment_module
from .segments import Multisegment, Segment

__all__ = ["main", "build_parser", "parse_range"]


class UsageError(Exception):
    pass


def parse_range(text: str) -> List[int]:
    """'3' -> [3]; '3..8' -> [3, ..., 8] (inclusive)."""
    t = str(text).strip()
    try:
        if ".." in t:
            lo, hi = t.split("..")
            lo, hi = int(lo), int(hi)
            if lo > hi:
                raise UsageError(f"empty range {text!r}")
            return list(range(lo, hi + 1))
        return [int(t)]
    except ValueError:
        raise UsageError(f"cannot parse range {text!r}") from None


def parse_seg(text: str) -> Segment:
    t = text.strip()
    if t.startswith("("):
        return Segment.parse(t)
    try:
        a, b = (int(x) for x in t.split(","))
    except ValueError:
        raise UsageError(f"cannot parse segment {text!r}; expected 'a,b'") from None
    return Segment(a, b)


def parse_param(text: str) -> SpectralParam:
    try:
        return SpectralParam.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _dumps(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def _gd(d):
    return {str(k): v for k, v in sorted(d.items())}


def _caps(args) -> dict:
    caps = {
        "convolution_cap": CONVOLUTION_CAP,
        "composition_cap": KR.COMPOSITION_CAP,
        "yang_baxter_cap": KR.YANG_BAXTER_CAP,
    }
    if getattr(args, "config", None):
        try:
            with open(args.config) as fh:
                user = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from None
        unknown = set(user) - set(caps)
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        caps.update({k: int(v) for k, v in user.items()})
    return caps


# ---------------------------------------------------------------------------
# commands; each returns (text, exit_code)
# ---------------------------------------------------------------------------


def cmd_denom(args):
    tag = AlgebraTag(args.family, args.N)
    text = format_factored(tag, args.k, args.l)
    if args.format == "text":
        return text + "\n", 0
    poly = denom(tag, args.k, args.l)
    data = {
        "schema": "swduality.denom/1",
        "family": tag.family,
        "N": tag.N,
        "k": args.k,
        "l": args.l,
        "factored": text,
        "degree": poly.degree() if not poly.is_zero() else 0,
        "zeros": [{"sign": x.sign, "exp": x.exp} for x in denom_zeros(tag, args.k, args.l)],
        "coefficients": [c.to_json() for c in poly.coeffs],
    }
    return _dumps(data), 0


def cmd_quiver(args):
    tag = AlgebraTag(args.family, args.N)
    w = Qv.build_s0_window(tag, args.pmin, args.pmax)
    if args.format == "dot":
        return Qv.to_dot(w), 0
    if args.format == "json":
        return Qv.to_json(w), 0
    if args.format == "csv":
        return Qv.to_csv(w), 0
    lines = [f"{tag.family} N={tag.N} p in [{args.pmin},{args.pmax}]: {len(w.vertices)} vertices, {w.n_arrows()} arrows"]
    for u in w.vertices:
        for v in w.vertices:
            m = w.multiplicity(u, v)
            if m:
                lines.append(f"{u.label()} -> {v.label()} x{m}")
    return "\n".join(lines) + "\n", 0


def cmd_pi2(args):
    reports = []
    for N in parse_range(args.N):
        rep = Qv.check_pi2_isomorphism(N, args.pmin, args.pmax)
        reports.append(rep)
        if args.fail_fast and not rep.ok:
            break
    ok = all(r.ok for r in reports)
    if args.format == "json":
        text = _dumps({"schema": "swduality.pi2/1", "ok": ok, "reports": [r.to_dict() for r in reports]})
    else:
        lines = []
        for r in reports:
            status = "pass" if r.ok else "FAIL"
            lines.append(f"N={r.N} p in [{r.pmin},{r.pmax}]: {status} ({r.n_vertices} vertices, {r.n_arrows} arrows)")
            lines += [f"  {f}" for f in r.failures]
        text = "\n".join(lines) + "\n"
    return text, 0 if ok else 1


def cmd_rseries(args):
    definition = RS.PsiDefinition.parse(args.psi_def)
    a_range = parse_range(args.a_range)
    suites = []
    for N in parse_range(args.N):
        suite = RS.run_suite(N, definition, a_range)
        suites.append(suite)
        if args.fail_fast and not suite["ok"]:
            break
    ok = all(s["ok"] for s in suites)
    if args.format == "json":
        text = _dumps({"schema": "swduality.rseries-report/1", "ok": ok, "suites": suites})
    else:
        lines = []
        for s in suites:
            status = "pass" if s["ok"] else "FAIL"
            lines.append(f"N={s['N']} psi-def={s['psi_def']}: {status} ({s['n_checks'] - s['n_failed']}/{s['n_checks']} checks)")
            for c in s["checks"]:
                if not c["ok"]:
                    lines.append(f"  failed {c['check']} {c['params']}")
        text = "\n".join(lines) + "\n"
    return text, 0 if ok else 1


def _need_segs(args, n):
    segs = [parse_seg(s) for s in (args.seg or [])]
    if len(segs) != n:
        raise UsageError(f"expected exactly {n} --seg arguments, got {len(segs)}")
    return segs


def cmd_klr_compose(args):
    caps = _caps(args)
    s1, s2 = _need_segs(args, 2)
    rep = KR.composition_report(s1, s2, cap=caps["composition_cap"])
    if args.format == "json":
        text = _dumps({"schema": "swduality.klr.compose/1", **rep.to_dict()})
    else:
        lines = [
            f"L{s1} o L{s2}: case {rep.case}, s={rep.s}, degree={rep.degree}",
            f"  kernel   {_gd(rep.kernel)}",
            f"  image    {_gd(rep.image)}",
            f"  cokernel {_gd(rep.cokernel)}",
            f"  head     {rep.head}",
            f"  {'pass' if rep.ok else 'FAIL'}",
        ]
        lines += [f"  {f}" for f in rep.failures]
        text = "\n".join(lines) + "\n"
    return text, 0 if rep.ok else 1


def cmd_klr_rmatrix(args):
    caps = _caps(args)
    s1, s2 = _need_segs(args, 2)
    M, N = segment_module(s1.a, s1.b), segment_module(s2.a, s2.b)
    res = KR.renormalized_r(M, N, cap=caps["convolution_cap"])
    entries = sorted((i, j, c) for i, j, c in res.r.entries())
    data = {
        "schema": "swduality.klr.rmatrix/1",
        "segments": [str(s1), str(s2)],
        "s": res.s,
        "degree": res.degree,
        "src": {"dim": res.src.dim, "labels": [list(x) for x in res.src.labels], "degrees": res.src.degrees},
        "dst": {"dim": res.dst.dim, "labels": [list(x) for x in res.dst.labels], "degrees": res.dst.degrees},
        "src_gdim": _gd(graded_dim(res.src)),
        "dst_gdim": _gd(graded_dim(res.dst)),
        "entries": [[i, j, [str(c.numerator), str(c.denominator)]] for i, j, c in entries],
        "homogeneous": res.r.is_homogeneous(res.degree),
    }
    ok = data["homogeneous"] and bool(entries)
    if args.format == "json":
        return _dumps(data), 0 if ok else 1
    lines = [
        f"r: L{s1} o L{s2} -> L{s2} o L{s1}  (dim {res.src.dim} -> {res.dst.dim})",
        f"  s={res.s} degree={res.degree} homogeneous={data['homogeneous']}",
    ]
    lines += [f"  [{i},{j}] = {c}" for i, j, c in entries]
    return "\n".join(lines) + "\n", 0 if ok else 1


def cmd_klr_yb(args):
    caps = _caps(args)
    s1, s2, s3 = _need_segs(args, 3)
    rep = KR.yang_baxter_check(s1, s2, s3, cap=caps["yang_baxter_cap"])
    if args.format == "json":
        text = _dumps({"schema": "swduality.klr.yangbaxter/1", **rep.to_dict()})
    else:
        text = (
            f"Yang-Baxter L{s1},L{s2},L{s3} (dim {rep.dim}): {'pass' if rep.ok else 'FAIL'}"
            f", all r isomorphisms: {rep.all_isomorphisms}, s={rep.s_values}\n"
        )
    return text, 0 if rep.ok else 1


def _class_json(c: G.SimpleClassTN):
    return c.to_dict()


def cmd_kt_canonicalize(args):
    segs = [parse_seg(s) for s in (args.seg or [])]
    c = G.canonicalize_class(Multisegment(tuple(segs)), args.N)
    status = G.simple_image_status(segs, args.N)
    if args.format == "json":
        return _dumps({"schema": "swduality.ktheory.class/1", "class": _class_json(c), "image": status.value}), 0
    return f"{c}\n", 0


def cmd_kt_decompose(args):
    s1, s2 = _need_segs(args, 2)
    dec = G.decompose_two_segment_product(s1, s2, args.N)
    if args.format == "json":
        data = {
            "schema": "swduality.ktheory.decompose/1",
            "N": args.N,
            "segments": [str(s1), str(s2)],
            "factors": [{"class": _class_json(c), "multiplicity": m, "dim": G.dim_class(1, c)} for c, m in dec],
        }
        return _dumps(data), 0
    return "".join(f"{c}: {m}\n" for c, m in dec), 0


def cmd_kt_dim(args):
    segs = [parse_seg(s) for s in (args.seg or [])]
    c = G.canonicalize_class(Multisegment(tuple(segs)), args.N)
    sides = [args.t] if args.t else [1, 2]
    dims = {t: G.dim_class(t, c) for t in sides}
    if args.format == "json":
        data = {"schema": "swduality.ktheory.dim/1", "class": _class_json(c), "dims": {str(t): d for t, d in dims.items()}}
        return _dumps(data), 0
    return "".join(f"dim F{t}({c}) = {d}\n" for t, d in dims.items()), 0


def cmd_kt_fusion(args):
    x, y, z = parse_param(args.x), parse_param(args.y), parse_param(args.z)
    cond = G.hom_fusion_check(args.i, x, args.j, y, args.k, z, args.N)
    if args.format == "json":
        data = {
            "schema": "swduality.ktheory.fusion/1",
            "N": args.N,
            "i": args.i, "x": str(x), "j": args.j, "y": str(y), "k": args.k, "z": str(z),
            "condition": cond.value,
        }
        return _dumps(data), 0
    return cond.value + "\n", 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


class _Formatter(argparse.HelpFormatter):
    """Fixed wrapping width so usage and error text do not depend on the terminal."""

    def __init__(self, prog):
        super().__init__(prog, width=80)


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        kwargs.setdefault("formatter_class", _Formatter)
        super().__init__(*args, **kwargs)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="swduality", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, formats=("text", "json")):
        sp.add_argument("--format", choices=formats, default="text")
        sp.add_argument("--out", metavar="FILE", help="write output to FILE instead of stdout")
        sp.add_argument("--config", metavar="FILE", help="JSON file overriding size caps")

    sp = sub.add_parser("denom", help="denominator d_{k,l}(z)")
    sp.add_argument("--family", choices=["A1", "A2"], required=True)
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--l", type=int, required=True)
    common(sp)
    sp.set_defaults(func=cmd_denom)

    sp = sub.add_parser("quiver", help="restricted pole quiver on an exponent window")
    sp.add_argument("--family", choices=["A1", "A2"], required=True)
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--pmin", type=int, required=True)
    sp.add_argument("--pmax", type=int, required=True)
    common(sp, ("text", "json", "dot", "csv"))
    sp.set_defaults(func=cmd_quiver)

    sp = sub.add_parser("pi2-verify", help="check that pi2 is a quiver isomorphism")
    sp.add_argument("--N", required=True, help="integer or inclusive range a..b")
    sp.add_argument("--pmin", type=int, required=True)
    sp.add_argument("--pmax", type=int, required=True)
    sp.add_argument("--fail-fast", action="store_true")
    common(sp)
    sp.set_defaults(func=cmd_pi2)

    sp = sub.add_parser("verify-rseries", help="verify the commuting-family rational identities")
    sp.add_argument("--N", required=True, help="integer or inclusive range a..b")
    sp.add_argument("--psi-def", choices=["g", "product"], default="g")
    sp.add_argument("--a-range", default="-8..8", help="range of a for the phi and main-identity checks")
    sp.add_argument("--fail-fast", action="store_true")
    common(sp)
    sp.set_defaults(func=cmd_rseries)

    sp = sub.add_parser("klr", help="quiver Hecke algebra computations")
    ksub = sp.add_subparsers(dest="klr_command", required=True)
    for name, func, help_ in (
        ("compose", cmd_klr_compose, "graded kernel/image/cokernel of r for two segments"),
        ("rmatrix", cmd_klr_rmatrix, "renormalized R-matrix of two segment modules"),
        ("yangbaxter", cmd_klr_yb, "Yang-Baxter check for three segment modules"),
    ):
        kp = ksub.add_parser(name, help=help_)
        kp.add_argument("--seg", action="append", metavar="a,b", help="segment (repeatable)")
        kp.add_argument("--fail-fast", action="store_true")
        common(kp)
        kp.set_defaults(func=func)

    sp = sub.add_parser("ktheory", help="classes in the localized category at q=1")
    tsub = sp.add_subparsers(dest="kt_command", required=True)
    kp = tsub.add_parser("canonicalize", help="canonical simple class of a multisegment")
    kp.add_argument("--N", type=int, required=True)
    kp.add_argument("--seg", action="append", metavar="a,b")
    common(kp)
    kp.set_defaults(func=cmd_kt_canonicalize)
    kp = tsub.add_parser("decompose", help="composition factors of a two-segment product")
    kp.add_argument("--N", type=int, required=True)
    kp.add_argument("--seg", action="append", metavar="a,b")
    common(kp)
    kp.set_defaults(func=cmd_kt_decompose)
    kp = tsub.add_parser("dim", help="dimension of the image of a class")
    kp.add_argument("--N", type=int, required=True)
    kp.add_argument("--t", type=int, choices=[1, 2])
    kp.add_argument("--seg", action="append", metavar="a,b")
    common(kp)
    kp.set_defaults(func=cmd_kt_dim)
    kp = tsub.add_parser("fusion-check", help="which fusion condition holds for (i,x),(j,y) -> (k,z)")
    kp.add_argument("--N", type=int, required=True)
    for name in ("i", "j", "k"):
        kp.add_argument(f"--{name}", type=int, required=True)
    for name in ("x", "y", "z"):
        kp.add_argument(f"--{name}", required=True, help="'(-q)^p', '-(-q)^p' or 's,p'")
    common(kp)
    kp.set_defaults(func=cmd_kt_fusion)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        text, code = args.func(args)
    except (UsageError, SizeCapError, ValueError, IndexError) as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
