"""Command-line front end: ``lorenz-zeta <subcommand> ...``.

Exit status: 0 success, 1 a verification failed, 2 usage or parse error,
3 computational error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Callable, Iterable, Optional, TextIO

from .errors import BoundTooLarge, ComputationError, InputError, IoFailure
from .graph import DEFAULT_CYCLE_BUDGET
from .linkring import DEFAULT_DEGREE, link_det, verify_williams_exp, verify_williams_factorization
from .symbolic import (
    DEFAULT_ENUM_BOUND,
    KneadingPair,
    enumerate_admissible_pairs,
    is_admissible_pair,
    parse_pair,
    parse_word,
    star_pair,
    star_word,
)
from .template import build_template
from .twist import (
    DEFAULT_ORDER,
    orbit_census,
    sullivan_series,
    twist_char_poly,
    verify_sullivan_exp_identity,
    verify_sullivan_factorization,
)

ENV_PREFIX = "LORENZ_ZETA_"
DEFAULT_SWEEP_LEN = 4


@dataclass(frozen=True)
class RunConfig:
    truncation_order: int = DEFAULT_ORDER
    cycle_budget: int = DEFAULT_CYCLE_BUDGET
    max_enum_len: int = DEFAULT_ENUM_BOUND
    series_degree: int = DEFAULT_DEGREE
    output: str = "text"

    def __post_init__(self):
        for f in fields(self):
            val = getattr(self, f.name)
            if f.name == "output":
                if val not in ("text", "json"):
                    raise InputError(f"output must be text or json, not {val!r}")
            elif f.name == "series_degree":
                if val < 0:
                    raise InputError("series_degree must be nonnegative")
            elif val < 1:
                raise InputError(f"{f.name} must be positive")


def _coerce(name: str, raw: str):
    if name == "output":
        return raw.strip().lower()
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"{name} expects an integer, got {raw!r}") from None


def read_config_file(path: Path) -> dict:
    known = {f.name for f in fields(RunConfig)}
    out = {}
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise IoFailure(f"cannot read config {path}: {exc}") from exc
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or key not in known:
            raise InputError(f"{path}:{lineno}: bad config line {line!r}")
        out[key] = _coerce(key, value.strip())
    return out


def load_config(
    flags: Optional[dict] = None, env: Optional[dict] = None, config_path: Optional[Path] = None
) -> RunConfig:
    """Merge sources: flags > environment > config file > defaults."""
    env = os.environ if env is None else env
    values: dict = {}
    path = config_path or (Path(env[ENV_PREFIX + "CONFIG"]) if env.get(ENV_PREFIX + "CONFIG") else None)
    if path is not None:
        values.update(read_config_file(path))
    for f in fields(RunConfig):
        raw = env.get(ENV_PREFIX + f.name.upper())
        if raw is not None:
            values[f.name] = _coerce(f.name, raw)
    values.update({k: v for k, v in (flags or {}).items() if v is not None})
    return replace(RunConfig(), **values)


def generate_corpus(max_x: int, max_y: int, out_path, bound: int = DEFAULT_ENUM_BOUND) -> int:
    """Write every admissible pair with bounded lengths, one per line; return the count."""
    if max_x > bound or max_y > bound:
        raise BoundTooLarge(f"bounds ({max_x}, {max_y}) exceed max_enum_len={bound}")
    pairs = enumerate_admissible_pairs(max_x, max_y, bound)
    try:
        with open(out_path, "w", encoding="utf-8") as fh:
            for p in pairs:
                fh.write(f"{p}\n")
    except OSError as exc:
        raise IoFailure(f"cannot write {out_path}: {exc}") from exc
    return len(pairs)


def _matrix_lines(rows) -> list[str]:
    return ["  " + " ".join(str(v) for v in row) for row in rows]


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(message)


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--order", type=int, help="series truncation order (Sullivan)")
    common.add_argument("--degree", type=int, help="letter-degree for the exp-trace series")
    common.add_argument("--budget", type=int, help="cap on the number of simple cycles")
    common.add_argument("--config", type=Path, help="key=value configuration file")
    common.add_argument("--out", type=Path, help="output file (corpus)")

    parser = _Parser(prog="lorenz-zeta", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("admissible", parents=[common], help="test a pair for admissibility")
    p.add_argument("pair")
    p = sub.add_parser("star", parents=[common], help="*-product of a pair with a pair or word")
    p.add_argument("pair")
    p.add_argument("operand")
    for name, text in (
        ("template", "Markov cells and transition matrices"),
        ("zeta-w", "Williams link-det"),
        ("zeta-s", "twist determinant and Sullivan series"),
        ("orbits", "closed-orbit and twist census"),
    ):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("pair")
    p = sub.add_parser("verify", parents=[common], help="check an identity, or sweep a corpus")
    p.add_argument("identity", choices=["williams", "sullivan", "exp-w", "exp-s"])
    p.add_argument("pairs", nargs="*")
    p.add_argument("--max-len", type=int, default=DEFAULT_SWEEP_LEN, help="component length bound of a sweep")
    p = sub.add_parser("corpus", parents=[common], help="write the admissible pairs of bounded length")
    p.add_argument("--max-x", type=int, required=True)
    p.add_argument("--max-y", type=int, required=True)
    return parser


def _emit(out: TextIO, cfg: RunConfig, payload: dict, lines: Iterable[str]) -> None:
    if cfg.output == "json":
        out.write(json.dumps(payload) + "\n")
    else:
        for line in lines:
            out.write(line + "\n")


def _cmd_admissible(args, cfg, out):
    p = parse_pair(args.pair, verify=False)
    ok = is_admissible_pair(p.x, p.y)
    _emit(out, cfg, {"pair": str(p), "admissible": ok}, [f"{p} {'is' if ok else 'is not'} admissible"])
    return 0


def _cmd_star(args, cfg, out):
    p = parse_pair(args.pair)
    if "," in args.operand:
        q = parse_pair(args.operand, verify=False)
        r = star_pair(p, q)
        _emit(out, cfg, {"product": str(r), "admissible": r.verified}, [f"{p} * {q} = {r}"])
    else:
        u = parse_word(args.operand)
        w = star_word(p, u)
        _emit(out, cfg, {"word": str(w)}, [f"{p} * {u} = {w}"])
    return 0


def _cmd_template(args, cfg, out):
    t = build_template(parse_pair(args.pair))
    lines = [f"template {t.pair}: {len(t)} cells"]
    lines.append("points: " + " ".join(str(pt.word) for pt in t.points))
    lines += [f"  cell {i + 1}: [{c.lower.word}, {c.upper.word}] {c.side}" for i, c in enumerate(t.cells)]
    lines += ["transition:"] + _matrix_lines(t.transition)
    lines += ["labels:"] + _matrix_lines(t.labels)
    _emit(out, cfg, t.to_dict(), lines)
    return 0


def _cmd_zeta_w(args, cfg, out):
    p = parse_pair(args.pair)
    e = link_det(build_template(p), cfg.cycle_budget)
    _emit(out, cfg, {"pair": str(p), "link_det": e.to_dict()}, [f"link-det = {e}"])
    return 0


def _cmd_zeta_s(args, cfg, out):
    p = parse_pair(args.pair)
    t = build_template(p)
    det = twist_char_poly(t)
    det_t = det.specialize(2, 2)
    series = sullivan_series(t, cfg.truncation_order)
    payload = {"pair": str(p), "det_uv": det.to_dict(), "det_t": det_t.to_dict(), "series": series.to_dict()}
    _emit(out, cfg, payload, [f"det(I - A(u,v)) = {det}", f"det(I - A(t)) = {det_t}", f"zeta_S(t) = {series}"])
    return 0


def _cmd_orbits(args, cfg, out):
    p = parse_pair(args.pair)
    c = orbit_census(build_template(p), cfg.truncation_order)
    lines = [f"census of {p} up to twist {c.order}"]
    lines += [f"  period {n}: {k} orbits" for n, k in c.orbits.items()]
    lines += [f"  twist {q}: T={c.twists[q]} weighted={c.weighted[q]}" for q in c.twists if c.twists[q] or c.weighted[q]]
    _emit(out, cfg, {"pair": str(p), **c.to_dict()}, lines)
    return 0


def _sweep_pairs(max_len: int, cfg: RunConfig) -> list[KneadingPair]:
    if max_len > cfg.max_enum_len:
        raise BoundTooLarge(f"--max-len {max_len} exceeds max_enum_len={cfg.max_enum_len}")
    pairs = enumerate_admissible_pairs(max_len, max_len, cfg.max_enum_len)
    return [p for p in pairs if len(p.x) + len(p.y) >= 3]


def _cmd_verify(args, cfg, out):
    kind = args.identity
    binary = kind in ("williams", "sullivan")
    want = 2 if binary else 1
    if args.pairs and len(args.pairs) != want:
        raise _Usage(f"verify {kind} takes {want} pair(s) or none for a sweep")
    if args.pairs:
        instances = [tuple(parse_pair(s) for s in args.pairs)]
    else:
        corpus = _sweep_pairs(args.max_len, cfg)
        instances = [(o, i) for o in corpus for i in corpus] if binary else [(p,) for p in corpus]

    check: Callable
    if kind == "williams":
        check = lambda o, i: verify_williams_factorization(o, i, cfg.cycle_budget)  # noqa: E731
    elif kind == "sullivan":
        check = verify_sullivan_factorization
    elif kind == "exp-w":
        check = lambda p: verify_williams_exp(build_template(p), cfg.series_degree, cfg.cycle_budget)  # noqa: E731
    else:
        check = lambda p: verify_sullivan_exp_identity(build_template(p), cfg.truncation_order)  # noqa: E731

    results = []
    lines = []
    for inst in instances:
        report = check(*inst)
        label = " * ".join(str(p) for p in inst)
        results.append({"instance": label, **report.to_dict()})
        lines.append(f"{'PASS' if report.passed else 'FAIL'} {kind} {label}")
        if len(instances) == 1 or not report.passed:
            lines.append(f"  lhs = {report.lhs}")
            lines.append(f"  rhs = {report.rhs}")
            if report.detail:
                lines.append(f"  {report.detail}")
    failed = sum(not r["pass"] for r in results)
    lines.append(f"{len(results) - failed}/{len(results)} passed")
    _emit(out, cfg, {"identity": kind, "pass": failed == 0, "results": results}, lines)
    return 0 if failed == 0 else 1


def _cmd_corpus(args, cfg, out):
    if args.out is None:
        pairs = enumerate_admissible_pairs(args.max_x, args.max_y, cfg.max_enum_len)
        for p in pairs:
            out.write(f"{p}\n")
        return 0
    n = generate_corpus(args.max_x, args.max_y, args.out, cfg.max_enum_len)
    _emit(out, cfg, {"path": str(args.out), "count": n}, [f"wrote {n} pairs to {args.out}"])
    return 0


_COMMANDS = {
    "admissible": _cmd_admissible,
    "star": _cmd_star,
    "template": _cmd_template,
    "zeta-w": _cmd_zeta_w,
    "zeta-s": _cmd_zeta_s,
    "orbits": _cmd_orbits,
    "verify": _cmd_verify,
    "corpus": _cmd_corpus,
}


def run(argv: list[str], stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
    """Parse ``argv``, dispatch, and return the exit status."""
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    try:
        args = _build_parser().parse_args(argv)
        cfg = load_config(
            {
                "truncation_order": args.order,
                "cycle_budget": args.budget,
                "series_degree": args.degree,
                "output": "json" if args.json else None,
            },
            config_path=args.config,
        )
        return _COMMANDS[args.command](args, cfg, out)
    except _Usage as exc:
        err.write(f"lorenz-zeta: usage error: {exc}\n")
        return 2
    except InputError as exc:
        err.write(f"lorenz-zeta: {type(exc).__name__}: {exc}\n")
        return 2
    except ComputationError as exc:
        err.write(f"lorenz-zeta: {type(exc).__name__}: {exc}\n")
        return 3


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
