"""Command-line surface: map, trace, check, invariant, canon, render.

Exact event times never print as floats: a rational root prints as "p/q",
an irrational one as its integer polynomial plus an isolating interval and
branch, so logs are reproducible and order-certifying.  Set BRAIDGAMMA_MAX_N
to lift or lower the strand-count cap (default 10).
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import random
import sys
import warnings
from dataclasses import dataclass

from . import geom2d, geom3d
from .braids import BraidWord, parse_braid, print_braid, relation_instances
from .errors import BraidGammaError, UnstableWarning
from .exact import rat_from_str, rat_to_str
from .generators import BraidGen
from .homs import HomConfig, map_braid
from .words import (
    free_reduce,
    invariant,
    invariant_equal,
    parse_word,
    word_to_text,
)


@dataclass(frozen=True)
class RunConfig:
    """Validated flag bundle; built before any computation starts."""

    subcommand: str
    n: int | None
    r: int
    target: str
    formula_mode: str
    assembly: str
    out: str | None
    fmt: str
    seed: int

    def __post_init__(self):
        if self.n is not None:
            cap = _max_n()
            if not 1 <= self.n <= cap:
                raise BraidGammaError(
                    f"n={self.n} outside 1..{cap} (cap from BRAIDGAMMA_MAX_N)"
                )
        if self.r < 1:
            raise BraidGammaError(f"need --r >= 1, got {self.r}")
        if self.target != "gammar" and self.r != 1:
            raise BraidGammaError("--r above 1 needs --target gammar")

    def hom(self) -> HomConfig:
        return HomConfig(
            self.n,
            target=self.target,
            r=self.r,
            formula_mode=self.formula_mode,
            assembly=self.assembly,
        )


def _max_n() -> int:
    raw = os.environ.get("BRAIDGAMMA_MAX_N", "10")
    try:
        return int(raw)
    except ValueError:
        raise BraidGammaError(f"BRAIDGAMMA_MAX_N must be an integer, got {raw!r}") from None


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="braidgamma", description=__doc__)
    sub = top.add_subparsers(dest="subcommand", required=True)

    def common(p, need_n=False):
        p.add_argument("-n", type=int, required=need_n, default=None, help="strand count")
        p.add_argument("--target", choices=("g", "gamma", "gammar"), default="gamma")
        p.add_argument("--r", type=int, default=1, help="slot count for target gammar")
        p.add_argument("--mode", choices=("literal", "traced"), default="literal")
        p.add_argument("--assembly", choices=("flip", "doubled"), default="flip")
        p.add_argument("--format", choices=("text", "json"), default="text", dest="fmt")
        p.add_argument("--out", default=None, help="write output here instead of stdout")
        p.add_argument("--seed", type=int, default=0, help="seed for sampled comparisons")

    p_map = sub.add_parser("map", help="image of a braid word under the chosen map")
    common(p_map, need_n=True)
    p_map.add_argument("word", nargs="?", default=None, help="braid word text")
    p_map.add_argument("--in", dest="infile", default=None, help="file with the braid word")

    p_trace = sub.add_parser("trace", help="trace a choreography JSON file")
    common(p_trace)
    p_trace.add_argument("choreo", help="choreography JSON path")

    p_check = sub.add_parser("check", help="verify relation preservation")
    common(p_check, need_n=True)
    p_check.add_argument(
        "--relation3",
        choices=("printed", "inverted", "both"),
        default="printed",
        help="which form of the third relation family to check",
    )
    p_check.add_argument(
        "--compare-modes",
        action="store_true",
        help="also report literal vs traced images (generators plus seeded words)",
    )

    p_inv = sub.add_parser("invariant", help="invariant class of a group word")
    common(p_inv, need_n=True)
    p_inv.add_argument("word", nargs="?", default=None)
    p_inv.add_argument("--in", dest="infile", default=None)

    p_canon = sub.add_parser("canon", help="canonicalize a group word")
    common(p_canon)
    p_canon.add_argument("word")

    p_render = sub.add_parser("render", help="render one SVG frame of a choreography")
    common(p_render)
    p_render.add_argument("choreo", help="choreography JSON path")
    p_render.add_argument("--t", required=True, help='frame time, rational "p/q"')
    p_render.add_argument("--circle", default=None, help='overlay circumcircle of "j,p,q"')

    return top


def _emit(rc: RunConfig, payload, text_lines):
    body = (
        json.dumps(payload, indent=2, sort_keys=True) + "\n"
        if rc.fmt == "json"
        else "\n".join(text_lines) + "\n"
    )
    if rc.out:
        with open(rc.out, "w", encoding="utf-8") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)


def _invariant_payload(cls):
    return {
        "zero": cls.is_zero(),
        "coords": [
            f"[{item[0]}]{item[1]}" if isinstance(item, tuple) else str(item)
            for item in cls.nonzero_letters()
        ],
    }


def _read_word_arg(args) -> str:
    if args.word is not None:
        return args.word
    if args.infile is not None:
        with open(args.infile, "r", encoding="utf-8") as fh:
            return fh.read()
    raise BraidGammaError("provide a word argument or --in FILE")


def _cmd_map(rc: RunConfig, args) -> int:
    cfg = rc.hom()
    braid_word = parse_braid(_read_word_arg(args), rc.n)
    raw = map_braid(cfg, braid_word, reduced=False)
    red = free_reduce(raw)
    cls = invariant(red, rc.n)
    payload = {
        "input": print_braid(braid_word),
        "n": rc.n,
        "target": rc.target,
        "r": rc.r,
        "mode": rc.formula_mode,
        "word": word_to_text(raw),
        "reduced": word_to_text(red),
        "invariant": _invariant_payload(cls),
    }
    _emit(
        rc,
        payload,
        [
            f"input:     {payload['input']}",
            f"word:      {payload['word']}",
            f"reduced:   {payload['reduced']}",
            f"invariant: {cls}",
        ],
    )
    return 0


def _time_payload(root) -> dict:
    if root.is_rational():
        return {"exact": rat_to_str(root.exact)}
    return {
        "poly": list(root.poly),
        "interval": [rat_to_str(root.lo), rat_to_str(root.hi)],
        "branch": root.sigma,
    }


def _cmd_trace(rc: RunConfig, args) -> int:
    ch = geom2d.load_choreography(args.choreo)
    dim3 = isinstance(ch, geom3d.Choreo3)
    if ch.n > _max_n():
        raise BraidGammaError(f"choreography has n={ch.n} above the cap {_max_n()}")
    if dim3 and rc.target == "gammar":
        raise BraidGammaError("target gammar needs inside counts; spatial traces have none")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", UnstableWarning)
        if dim3:
            events = geom3d.trace3(ch)
            # order-free target: every coplanarity moment contributes a letter;
            # cyclic target: only special moments carry a cyclic order
            chosen = events if rc.target == "g" else [e for e in events if e.special]
            word = geom2d.events_to_word(chosen, rc.target, rc.r)
            ev_payload = [
                {
                    "segment": e.segment,
                    "time": rat_to_str(e.time),
                    "subset": str(e.subset),
                    "quad": str(e.quad) if e.quad is not None else None,
                    "convex": e.convex,
                    "one_sided": e.one_sided,
                    "special": e.special,
                    "side": e.side,
                }
                for e in events
            ]
        else:
            events = geom2d.trace(ch)
            word = geom2d.events_to_word(events, rc.target, rc.r)
            ev_payload = [
                {
                    "segment": e.segment,
                    "time": _time_payload(e.time),
                    "quad": str(e.quad),
                    "subset": str(e.subset),
                    "inside": e.inside,
                    "collinear_wall": e.collinear_wall,
                }
                for e in events
            ]
    red = free_reduce(word)
    cls = invariant(red, ch.n)
    payload = {
        "n": ch.n,
        "dim": 3 if dim3 else 2,
        "loop": ch.loop,
        "target": rc.target,
        "events": ev_payload,
        "word": word_to_text(word),
        "reduced": word_to_text(red),
        "invariant": _invariant_payload(cls),
        "warnings": [str(w.message) for w in caught],
    }
    lines = [f"{len(ev_payload)} events"]
    lines += [f"  {json.dumps(e, sort_keys=True)}" for e in ev_payload]
    lines += [
        f"word:      {payload['word']}",
        f"reduced:   {payload['reduced']}",
        f"invariant: {cls}",
    ]
    lines += [f"warning: {w}" for w in payload["warnings"]]
    _emit(rc, payload, lines)
    return 0


def _cmd_check(rc: RunConfig, args) -> int:
    cfg = rc.hom()
    variants = {"printed": (False,), "inverted": (True,), "both": (False, True)}[
        args.relation3
    ]
    results = []
    for inverted in variants:
        for inst in relation_instances(rc.n, family3_inverted=inverted):
            if inverted and inst.family != "3inv":
                continue
            ok = invariant_equal(map_braid(cfg, inst.lhs), map_braid(cfg, inst.rhs), rc.n)
            results.append(
                {
                    "family": inst.family,
                    "indices": list(inst.indices),
                    "lhs": print_braid(inst.lhs),
                    "rhs": print_braid(inst.rhs),
                    "ok": ok,
                }
            )
    failed = sum(1 for r in results if not r["ok"])
    payload = {
        "n": rc.n,
        "target": rc.target,
        "r": rc.r,
        "mode": rc.formula_mode,
        "assembly": rc.assembly,
        "relation3": args.relation3,
        "instances": results,
        "passed": len(results) - failed,
        "failed": failed,
    }
    lines = [
        f"{r['family']} {tuple(r['indices'])}: {'ok' if r['ok'] else 'FAIL'}"
        for r in results
    ]
    lines.append(f"passed {payload['passed']} / {len(results)}")
    if args.compare_modes:
        rows = _compare_modes(rc)
        payload["compare_modes"] = rows
        for row in rows:
            lines.append(
                "compare {}: letters={} multiset={} invariant={}".format(
                    row["input"], row["letters_equal"],
                    row["multiset_equal"], row["invariant_equal"],
                )
            )
    _emit(rc, payload, lines)
    return 0 if failed == 0 else 1


def _compare_modes(rc: RunConfig) -> list[dict]:
    """Literal vs traced images: every generator, then a few seeded random
    words.  Disagreements are reported, never reconciled."""
    lit = rc.hom()
    tra = HomConfig(
        rc.n, target=rc.target, r=rc.r, formula_mode="traced", assembly=rc.assembly
    )
    inputs = [
        BraidWord(rc.n, (BraidGen(i, j),))
        for i, j in itertools.combinations(range(1, rc.n + 1), 2)
    ]
    rng = random.Random(rc.seed)
    for _ in range(5):
        letters = []
        for _ in range(rng.randrange(1, 4)):
            i, j = sorted(rng.sample(range(1, rc.n + 1), 2))
            letters.append(BraidGen(i, j, rng.choice((-1, 1))))
        inputs.append(BraidWord(rc.n, tuple(letters)))
    out = []
    for w in inputs:
        a = map_braid(lit, w)
        b = map_braid(tra, w)
        out.append(
            {
                "input": print_braid(w) or "(empty)",
                "letters_equal": a.letters == b.letters,
                "multiset_equal": sorted(map(str, a.letters)) == sorted(map(str, b.letters)),
                "invariant_equal": invariant_equal(a, b, rc.n),
                "literal_length": len(a.letters),
                "traced_length": len(b.letters),
            }
        )
    return out


def _cmd_invariant(rc: RunConfig, args) -> int:
    word = parse_word(_read_word_arg(args), rc.r if rc.target == "gammar" else None)
    cls = invariant(word, rc.n)
    payload = {
        "n": rc.n,
        "kind": cls.kind,
        "r": cls.r,
        "word": word_to_text(word),
        "invariant": _invariant_payload(cls),
    }
    _emit(rc, payload, [f"word:      {payload['word']}", f"invariant: {cls}"])
    return 0


def _cmd_canon(rc: RunConfig, args) -> int:
    word = parse_word(args.word, rc.r if rc.target == "gammar" else None)
    payload = {"word": word_to_text(word)}
    _emit(rc, payload, [payload["word"]])
    return 0


def _cmd_render(rc: RunConfig, args) -> int:
    ch = geom2d.load_choreography(args.choreo)
    from .svg import render_frame

    circle = None
    if args.circle:
        parts = args.circle.split(",")
        if len(parts) != 3:
            raise BraidGammaError('--circle wants three comma-separated indices "j,p,q"')
        circle = tuple(int(v) for v in parts)
    data = render_frame(ch, rat_from_str(args.t), circle)
    if not rc.out:
        raise BraidGammaError("render needs --out FILE")
    with open(rc.out, "wb") as fh:
        fh.write(data)
    return 0


_COMMANDS = {
    "map": _cmd_map,
    "trace": _cmd_trace,
    "check": _cmd_check,
    "invariant": _cmd_invariant,
    "canon": _cmd_canon,
    "render": _cmd_render,
}


def run(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    rc = RunConfig(
        subcommand=args.subcommand,
        n=args.n,
        r=args.r if args.target == "gammar" else 1,
        target=args.target,
        formula_mode=args.mode,
        assembly=args.assembly,
        out=args.out,
        fmt=args.fmt,
        seed=args.seed,
    )
    return _COMMANDS[rc.subcommand](rc, args)


def main(argv=None) -> int:
    try:
        return run(argv)
    except BraidGammaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
