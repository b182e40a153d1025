"""Command-line interface.

Exit codes: 0 success, 1 internal error or failed check, 2 usage/parse
error, 3 a falsification candidate for the conjectured multiplicity rule.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__, config
from .atypicality import atypicality_matrix, nabla_profile
from .cache import load_matrix, store_matrix
from .characters import char_g0, char_kac, char_simple, decompose_g0, smallest_constituent
from .errors import CapExceededError, ConjectureFalsified, GlkacError, WeightParseError
from .klmatrix import assemble_Aq, invert_unitriangular, specialize, window_between
from .multiplicity import column_q, row
from .verify import FAULTS, run_all
from .weights import Weight, format_weight, is_dominant, parse_weight

EXIT_OK, EXIT_INTERNAL, EXIT_USAGE, EXIT_FALSIFIED = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _alg(text: str) -> tuple[int, int]:
    try:
        m, n = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected m,n, got {text!r}") from None
    if m < 1 or n < 1:
        raise argparse.ArgumentTypeError("m and n must be positive")
    return m, n


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _weight(args, text: str, name: str = "weight") -> Weight:
    if text is None:
        raise UsageError(f"--{name} is required")
    w = parse_weight(text, args.alg)
    if args.alg is None:
        args.alg = w.shape
    return w


def _dominant(args, text, name="weight") -> Weight:
    w = _weight(args, text, name)
    if not is_dominant(w):
        raise UsageError(f"{format_weight(w)} is not dominant")
    return w


def _emit(args, payload, text_lines):
    if args.format == "json":
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write("\n".join(text_lines) + "\n")


def _roots(rs) -> str:
    return "{" + ", ".join(str(r) for r in rs) + "}"


# ------------------------------------------------------------- commands

def cmd_atyp(args) -> int:
    mu = _dominant(args, args.mu or args.weight, "mu")
    p = nabla_profile(mu)
    if p.typical:
        _emit(args, {**p.to_json(), "typical": True, "r": 0}, [f"{format_weight(mu, 'tuple')}: typical, r=0"])
        return EXIT_OK
    mat = atypicality_matrix(mu)
    width = max(len(str(x)) for x in mat.ravel())
    lines = [f"mu = {format_weight(mu, 'tuple')}", "atypicality matrix:"]
    lines += ["  " + " ".join(str(x).rjust(width) for x in r) for r in mat.tolist()]
    lines.append(f"gamma = ({', '.join(str(g) for g in p.gamma)}), r={p.r}")
    for i, (d, nb) in enumerate(zip(p.delta_sets, p.nabla_sets), start=1):
        lines.append(f"Delta(gamma{i}) = {_roots(d)}")
        lines.append(f"nabla(gamma{i}) = {_roots(nb)}")
    lines.append(f"k = ({', '.join(map(str, p.k))})")
    for a in range(p.r):
        for b in range(a + 1, p.r):
            word = "connected" if p.connected[a][b] else "disconnected"
            lines.append(f"gamma{a + 1}, gamma{b + 1}: {word}")
    lines.append(f"mu_0 = {format_weight(p.mu_zero, 'tuple')}")
    payload = {**p.to_json(), "typical": False, "r": p.r, "matrix": mat.tolist()}
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_column(args) -> int:
    mu = _dominant(args, args.mu or args.weight, "mu")
    col = column_q(mu)
    r = col.profile.r
    cells = [
        ("".join(map(str, e.theta)) or "-", format_weight(e.mu_theta, "tuple"), format_weight(e.lambda_theta, "tuple"), str(e.coeff))
        for e in col.entries
    ]
    w1 = max(len("theta:"), *(len(c[0]) for c in cells))
    w2 = max(len("mu_theta:"), *(len(c[1]) for c in cells))
    w3 = max(len("lambda_theta:"), *(len(c[2]) for c in cells))
    head = f"{'theta:'.ljust(w1)}  {'mu_theta:'.ljust(w2)}  {'lambda_theta:'.ljust(w3)}"
    if args.q:
        head += "  coeff:"
    lines = [f"mu = {format_weight(mu, 'tuple')}, r={r}", head.rstrip()]
    for t, a, b, c in cells:
        line = f"{t.ljust(w1)}  {a.ljust(w2)}  {b.ljust(w3)}"
        lines.append((line + f"  {c}") if args.q else line.rstrip())
    payload = col.to_json()
    if not args.q:
        for e in payload["entries"]:
            e["coeff"] = [1]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_row(args) -> int:
    lam = _dominant(args, args.weight or args.mu, "weight")
    terms = row(lam)
    order = sorted(terms, key=lambda w: (-sum((len(w.vector) - 1 - p) * x for p, x in enumerate(w.vector)), w.vector))
    lines = [f"lambda = {format_weight(lam, 'tuple')}"]
    lines += [f"  {format_weight(mu, 'tuple')}: {terms[mu]}" for mu in order]
    payload = {
        "lambda": lam.to_json(),
        "terms": [{"mu": mu.to_json(), "coeff": terms[mu].to_list()} for mu in order],
    }
    _emit(args, payload, lines)
    return EXIT_OK


def _parse_specialize(text: str) -> int:
    key, _, val = text.partition("=")
    if key.strip() != "q" or not val.strip():
        raise UsageError(f"--specialize expects q=<int>, got {text!r}")
    try:
        return int(val)
    except ValueError:
        raise UsageError(f"--specialize expects an integer value, got {val!r}") from None


def cmd_matrix(args) -> int:
    lo = _weight(args, args.lo, "lo")
    hi = _weight(args, args.hi, "hi")
    value = _parse_specialize(args.specialize) if args.specialize else None
    kind = "K" if args.invert else "A"
    M = load_matrix(args.cache, kind, lo, hi) if args.cache else None
    if M is None:
        M = assemble_Aq(window_between(lo, hi))
        if args.invert:
            M = invert_unitriangular(M)
        if args.cache:
            store_matrix(args.cache, kind, lo, hi, M)
    idx = {w: i for i, w in enumerate(M.window)}
    items = sorted(M.entries.items(), key=lambda kv: (idx[kv[0][0]], idx[kv[0][1]]))
    lines = [f"{kind}_q on window [{format_weight(lo, 'tuple')}, {format_weight(hi, 'tuple')}], {len(M.window)} weights"]
    if value is None:
        payload = M.to_json()
        lines += [f"  {format_weight(r, 'tuple')} {format_weight(c, 'tuple')}: {p}" for (r, c), p in items]
    else:
        vals = specialize(M, value)
        payload = {
            "window": [w.to_json() for w in M.window],
            "q": value,
            "entries": [
                {"row": r.to_json(), "col": c.to_json(), "value": vals[(r, c)]}
                for (r, c), _ in items
                if (r, c) in vals
            ],
        }
        lines[0] += f", q={value}"
        lines += [
            f"  {format_weight(r, 'tuple')} {format_weight(c, 'tuple')}: {vals[(r, c)]}"
            for (r, c), _ in items
            if (r, c) in vals
        ]
    _emit(args, payload, lines)
    return EXIT_OK


_CHARS = {"kac": char_kac, "simple": char_simple, "g0": char_g0}


def _character(args):
    w = _dominant(args, args.weight or args.mu, "weight")
    return w, _CHARS[args.kind](w)


def cmd_char(args) -> int:
    w, chi = _character(args)
    lines = [f"ch {args.kind} {format_weight(w, 'tuple')}: {len(chi)} weights, dim {chi.total()}"]
    for v, c in zip(chi.weights.tolist(), chi.mults.tolist()):
        lines.append(f"  {format_weight(Weight.from_vector(v, chi.m), 'tuple')}: {c}")
    _emit(args, chi.to_json(), lines)
    return EXIT_OK


def cmd_decompose(args) -> int:
    w, chi = _character(args)
    dec = decompose_g0(chi)
    low = smallest_constituent(dec)
    order = sorted(dec, key=lambda x: x.vector, reverse=True)
    lines = [f"g0-constituents of ch {args.kind} {format_weight(w, 'tuple')}:"]
    lines += [f"  {format_weight(x, 'tuple')}: {dec[x]}" for x in order]
    if low is not None:
        lines.append(f"smallest constituent: {format_weight(low, 'tuple')}")
    payload = {
        "weight": w.to_json(),
        "kind": args.kind,
        "constituents": [{"weight": x.to_json(), "mult": dec[x]} for x in order],
        "smallest": low.to_json() if low is not None else None,
    }
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_verify(args) -> int:
    only = None
    if args.only:
        only = {int(x) for x in args.only.split(",")}
    report = run_all(quick=args.quick, fault=args.inject_fault, cache_dir=args.cache, only=only)
    _emit(args, report.to_json(timings=args.timings), report.lines())
    return report.exit_code


# ------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--alg", type=_alg, default=None, help="algebra as m,n (inferred from the weight if omitted)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--cache", default=None, metavar="DIR", help="directory for cached window matrices")
    common.add_argument("--cap-window", type=_positive, default=None, metavar="N")
    common.add_argument("--cap-odd", type=_positive, default=None, metavar="N")
    common.add_argument("--cap-patterns", type=_positive, default=None, metavar="N")

    parser = argparse.ArgumentParser(prog="glkac", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"glkac {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    for name, func, help_ in [
        ("atyp", cmd_atyp, "atypicality data of a dominant weight"),
        ("column", cmd_column, "theta table of a composition-factor column"),
    ]:
        p = add(name, func, help_)
        p.add_argument("--mu")
        p.add_argument("--weight", help=argparse.SUPPRESS)
        if name == "column":
            p.add_argument("--q", action="store_true", help="show coefficients (-q)^|theta|")

    p = add("row", cmd_row, "q-multiplicities a_{lambda,mu}(q) for fixed lambda")
    p.add_argument("--weight", "--lambda", dest="weight")
    p.add_argument("--mu", help=argparse.SUPPRESS)

    p = add("matrix", cmd_matrix, "A_q (or its inverse K_q) on an order interval")
    p.add_argument("--lo", required=True)
    p.add_argument("--hi", required=True)
    p.add_argument("--invert", action="store_true")
    p.add_argument("--specialize", metavar="q=V")

    for name, func, help_ in [
        ("char", cmd_char, "Kac, simple or even character"),
        ("decompose", cmd_decompose, "decompose a character into even irreducibles"),
    ]:
        p = add(name, func, help_)
        p.add_argument("--kind", choices=sorted(_CHARS), default="simple" if name == "decompose" else None,
                       required=name == "char")
        p.add_argument("--weight")
        p.add_argument("--mu", help=argparse.SUPPRESS)

    p = add("verify", cmd_verify, "run the verification checks")
    p.add_argument("--quick", action="store_true", help="fewer random samples")
    p.add_argument("--inject-fault", choices=FAULTS, default=None, help="harness self-test")
    p.add_argument("--only", default=None, help="comma-separated check numbers")
    p.add_argument("--timings", action="store_true", help="include timings in JSON output")
    return parser


_WEIGHT_OPTS = {"--mu", "--weight", "--lambda", "--lo", "--hi"}


def _glue_weight_args(argv):
    """Turn ``--lo -1,-1|1,1`` into ``--lo=-1,-1|1,1`` so argparse accepts leading minus signs."""
    out, it = [], iter(argv)
    for tok in it:
        if tok in _WEIGHT_OPTS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_glue_weight_args(argv))
    if args.alg is not None and max(args.alg) > config.caps().max_mn:
        parser.error(f"algebra {args.alg} exceeds the size guard")
    updates = {
        key: val
        for key, val in (("window", args.cap_window), ("odd_factor", args.cap_odd), ("patterns", args.cap_patterns))
        if val is not None
    }
    try:
        with config.override(**updates):
            return args.func(args)
    except (UsageError, WeightParseError, ValueError) as exc:
        print(f"glkac {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConjectureFalsified as exc:
        print(f"glkac {args.command}: falsification candidate: {exc}", file=sys.stderr)
        return EXIT_FALSIFIED
    except CapExceededError as exc:
        print(f"glkac {args.command}: cap exceeded: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except GlkacError as exc:
        print(f"glkac {args.command}: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
