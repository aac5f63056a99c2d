"""Command-line entry point.

Exit codes: 0 success, 1 checked failure (axiom fail, invalid certificate),
2 usage error. All randomness flows through --seed; identical invocations
produce byte-identical files.
"""

from __future__ import annotations

import argparse
import sys

from . import games, representations as rp, serialize as sz, strategies as st
from . import topology as tp
from .errors import TopogameError

SPACE_KINDS = ("rational-line", "real-line", "cantor")


def parse_space(value: str) -> tp.SpacePresentation:
    if value in SPACE_KINDS:
        return tp.SpacePresentation(value)
    with open(value) as f:
        return sz.space_from_obj(sz.loads(f.read()))


def _space_arg(p: argparse.ArgumentParser) -> None:
    p.add_argument("--space", required=True,
                   help="rational-line | real-line | cantor | path to a "
                        "space descriptor file")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="topogame")
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("simulate", help="run a full seeded game")
    _space_arg(p)
    p.add_argument("--mode", choices=games.MODES, default="bm")
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--rounds", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")

    p = sub.add_parser("play", help="replay scripted first-player moves "
                                    "against an engine")
    _space_arg(p)
    p.add_argument("--mode", choices=games.MODES, default="bm")
    p.add_argument("--alpha", required=True)
    p.add_argument("--moves", required=True,
                   help="file with a JSON list of first-player moves")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")

    p = sub.add_parser("compile-rep", help="compile a strategy into a "
                                           "carrier fragment")
    _space_arg(p)
    p.add_argument("--mode", choices=games.MODES, default="bm")
    p.add_argument("--strategy", required=True)
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--branching", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")

    p = sub.add_parser("check-rep", help="run the axiom checkers on a "
                                         "fragment file")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--system", choices=("pi", "d"), default="pi")
    p.add_argument("--max-directed", type=int, default=3)
    p.add_argument("--base-prefix", type=int, default=16)

    p = sub.add_parser("extract-chain", help="extract a dominating chain "
                                             "from a directed id list")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--ids", required=True, help="comma-separated element ids")

    p = sub.add_parser("product", help="product of fragment files")
    p.add_argument("--in", dest="infiles", action="append", required=True)
    p.add_argument("--out")

    p = sub.add_parser("verify", help="verify a transcript file")
    p.add_argument("--in", dest="infile", required=True)

    p = sub.add_parser("serve", help="run the session service")
    p.add_argument("--port", type=int, default=8765)
    p.add_argument("--static-dir")
    return ap


def _emit(text: str, out) -> None:
    if out:
        with open(out, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def execute(argv) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        return _dispatch(args)
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except TopogameError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


def _dispatch(args) -> int:
    if args.verb == "simulate":
        space = parse_space(args.space)
        alpha = st.resolve(args.alpha, space, args.mode, games.ALPHA, args.seed)
        beta = st.resolve(args.beta, space, args.mode, games.BETA, args.seed)
        t = games.simulate(space, alpha, beta, args.rounds, args.seed,
                           args.mode)
        _emit(games.transcript_to_text(t), args.out)
        return 0

    if args.verb == "play":
        space = parse_space(args.space)
        alpha = st.resolve(args.alpha, space, args.mode, games.ALPHA, args.seed)
        with open(args.moves) as f:
            entries = [games.move_from_obj(o) for o in sz.loads(f.read())]
        play = games.PartialPlay(args.mode)
        for m in entries:
            play = games.step(play, m, space)
            play = games.step(play, alpha.respond(play), space)
        cert = games.build_certificate(space, play, alpha)
        t = games.Transcript(space, args.mode, alpha.id, "scripted",
                             args.seed, play.rounds_played, play, cert,
                             rep=getattr(alpha, "rep", None))
        _emit(games.transcript_to_text(t), args.out)
        return 0

    if args.verb == "compile-rep":
        space = parse_space(args.space)
        s = st.resolve(args.strategy, space, args.mode, games.ALPHA, args.seed)
        rep = rp.compile_rep(s, space, args.mode, args.depth, args.branching)
        _emit(sz.dumps_canonical(rp.rep_to_obj(rep)), args.out)
        return 0

    if args.verb == "check-rep":
        rep = rp.load_rep(args.infile)
        system = "piD" if args.system == "pi" else "D"
        bounds = rp.CheckBounds(base_prefix=args.base_prefix,
                                max_directed_size=args.max_directed)
        report = rp.check_axioms(rep, system, rep.space, bounds)
        sys.stdout.write(report.render())
        return 0 if report.all_pass() else 1

    if args.verb == "extract-chain":
        rep = rp.load_rep(args.infile)
        chain = rp.extract_chain(rep, args.ids.split(","))
        sys.stdout.write(sz.dumps_canonical({"chain": chain}))
        return 0

    if args.verb == "product":
        reps = [rp.load_rep(f) for f in args.infiles]
        prod = rp.product_rep(reps, [r.space for r in reps])
        _emit(sz.dumps_canonical(rp.rep_to_obj(prod)), args.out)
        return 0

    if args.verb == "verify":
        with open(args.infile) as f:
            t = games.transcript_from_text(f.read())
        return 0 if games.verify_transcript(t) else 1

    if args.verb == "serve":
        from .serve import run_server
        run_server(args.port, static_dir=args.static_dir)
        return 0

    return 2


def main() -> None:
    sys.exit(execute(sys.argv[1:]))


if __name__ == "__main__":
    main()
