"""``fpnkit`` command line.

    fpnkit suite <name> [--windows 2,4,8] [--seed N] [--samples N] [--format human|jsonl]
    fpnkit reduce '<(4; 1), (6; 2)>'
    fpnkit member '<(2; 2)>' '(0; 2)'
    fpnkit classify module.txt --level 2 [--windows 2,4,8]
    fpnkit ext P.txt Q.txt --degree 1
    fpnkit tor P.txt Q.txt --degree 1

A JSON config file (``--config``) may set ``windows``, ``seed``, ``samples``
and ``format``; flags override it.  When ``FPNKIT_OUTPUT_DIR`` is set, suite
reports are also written to ``$FPNKIT_OUTPUT_DIR/<suite>.<jsonl|txt>``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .errors import FpnkitError
from .io import load_presentation, parse_ideal
from .modules import classify_fp, ext_group, tor_group
from .rings import format_u, parse_u
from .suites import SUITES, ConfigError, SuiteConfig, run_suite
from .unitification import bezout_reduce, ideal_membership

OUTPUT_ENV = "FPNKIT_OUTPUT_DIR"


def _windows(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"windows must be comma-separated integers: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fpnkit", description="Finitely n-presented module toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("suite", help="run a named claim suite")
    s.add_argument("name", choices=SUITES + ("all",))
    s.add_argument("--windows", type=_windows)
    s.add_argument("--seed", type=int)
    s.add_argument("--samples", type=int)
    s.add_argument("--format", choices=("human", "jsonl"))
    s.add_argument("--config", type=Path)

    r = sub.add_parser("reduce", help="principal generator of an ideal of U")
    r.add_argument("ideal")

    m = sub.add_parser("member", help="ideal membership in U with witness")
    m.add_argument("ideal")
    m.add_argument("element")

    c = sub.add_parser("classify", help="FP_n certificate of a presentation file")
    c.add_argument("presentation", type=Path)
    c.add_argument("--level", type=int, required=True)
    c.add_argument("--windows", type=_windows, default=(2, 4, 8, 16))

    for name in ("ext", "tor"):
        e = sub.add_parser(name, help=f"{name.capitalize()} between two presentation files")
        e.add_argument("P", type=Path)
        e.add_argument("Q", type=Path)
        e.add_argument("--degree", type=int, default=1)
        e.add_argument("--windows", type=_windows, default=())
    return p


def _suite_config(name: str, args) -> SuiteConfig:
    opts: dict = {}
    if args.config is not None:
        try:
            opts.update(json.loads(args.config.read_text()))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from None
        unknown = set(opts) - {"windows", "seed", "samples", "format"}
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    for key in ("windows", "seed", "samples", "format"):
        v = getattr(args, key)
        if v is not None:
            opts[key] = v
    if "windows" in opts:
        opts["windows"] = tuple(opts["windows"])
    return SuiteConfig(name, **opts)


def _cmd_suite(args, out) -> int:
    names = SUITES if args.name == "all" else (args.name,)
    code = 0
    for name in names:
        cfg = _suite_config(name, args)
        rep = run_suite(name, cfg)
        text = rep.render()
        out.write(text)
        target = os.environ.get(OUTPUT_ENV)
        if target:
            d = Path(target)
            d.mkdir(parents=True, exist_ok=True)
            ext = "jsonl" if cfg.format == "jsonl" else "txt"
            (d / f"{name}.{ext}").write_text(text)
        code = max(code, rep.exit_code)
    return code


def _cmd_reduce(args, out) -> int:
    r = bezout_reduce(parse_ideal(args.ideal))
    out.write(f"{format_u(r.generator)}\n")
    out.write(f"branch: {r.branch}\n")
    for g, c in zip(r.ideal.generators, r.forward):
        out.write(f"  {format_u(g)} = {format_u(r.generator)} * {format_u(c)}\n")
    combo = " + ".join(f"{format_u(g)} * {format_u(k)}" for g, k in zip(r.ideal.generators, r.backward))
    out.write(f"  {format_u(r.generator)} = {combo}\n")
    return 0 if r.verify() else 1


def _cmd_member(args, out) -> int:
    I = parse_ideal(args.ideal)
    x = parse_u(args.element)
    res = ideal_membership(I, x)
    if res.member:
        combo = " + ".join(f"{format_u(g)} * {format_u(k)}" for g, k in zip(I.generators, res.coefficients))
        out.write(f"true\n  {format_u(x)} = {combo}\n")
    else:
        out.write(f"false\n  obstruction: {res.obstruction}\n")
    return 0


def _cmd_classify(args, out) -> int:
    P = load_presentation(args.presentation)
    windows = args.windows if P.ring.windowed else ()
    cert = classify_fp(P, args.level, windows)
    out.write(f"{P.label or args.presentation.name}: {cert.verdict}\n")
    out.write(f"level verified: {cert.level_verified}\n")
    for (stage, w), n in sorted(cert.stage_generator_counts.items(), key=lambda kv: (kv[0][0], kv[0][1] or 0)):
        where = f" window {w}" if w is not None else ""
        out.write(f"  stage {stage}{where}: {n} generators\n")
    if cert.tail_obstruction is not None:
        out.write(f"  tail obstruction: {cert.tail_obstruction}\n")
    return 0


def _cmd_homological(args, out, fn) -> int:
    P, Q = load_presentation(args.P), load_presentation(args.Q)
    v = fn(P, Q, args.degree, args.windows)
    out.write(f"{v}\n")
    if v.witness is not None:
        out.write(f"  witness: {v.witness}\n")
    if not v.exact:
        out.write("  note: computed from a window-restricted resolution\n")
    return 0


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        if args.command == "suite":
            return _cmd_suite(args, out)
        if args.command == "reduce":
            return _cmd_reduce(args, out)
        if args.command == "member":
            return _cmd_member(args, out)
        if args.command == "classify":
            return _cmd_classify(args, out)
        if args.command == "ext":
            return _cmd_homological(args, out, ext_group)
        return _cmd_homological(args, out, tor_group)
    except (FpnkitError, OSError) as exc:
        sys.stderr.write(f"fpnkit: {type(exc).__name__}: {exc}\n")
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
