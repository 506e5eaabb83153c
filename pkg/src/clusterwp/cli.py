"""JSON command-line front end.

Exit status is 0 on success, 1 when a verification fails (the report carries
a replayable witness) and 2 for malformed input.  Indices are 0-based.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .cluster import ExchangeMatrix, Seed, apply_word, block_partition
from .forms import compatible_form_basis, pullback_verify, solve_poisson_star
from .laurent import LaurentnessError
from .surface import (
    BUILDERS,
    IdealTriangulation,
    TriangulationError,
    builder,
    classify,
    exchange_matrix_of,
    flip,
)
from .verify import (
    Report,
    corank_check,
    random_allowed_word,
    representative_subsets,
    shear_tau_check,
    thm34_check,
)

BATTERIES = ("corank", "representative", "shear-tau", "thm34", "pullback")


class InputError(Exception):
    """Malformed command-line input; reported with exit status 2."""


def _matrix_json(M) -> list[list[str]]:
    return [[str(Fraction(x)) for x in row] for row in M.tolist()]


def _load(text: str | None):
    if text is None:
        raise InputError("--input is required for this command")
    stripped = text.strip()
    try:
        if stripped[:1] in "{[":
            return json.loads(stripped)
        return json.loads(Path(text).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read input: {exc}") from None


def _load_matrix(text: str | None) -> ExchangeMatrix:
    data = _load(text)
    if isinstance(data, dict):
        data = data.get("Z")
    try:
        return ExchangeMatrix(data)
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad exchange matrix: {exc}") from None


def _load_seed(text: str | None) -> Seed:
    data = _load(text)
    try:
        if isinstance(data, list):
            return Seed.initial(ExchangeMatrix(data))
        return Seed.from_dict(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad seed: {exc}") from None


def _load_surface(args) -> IdealTriangulation:
    try:
        if args.surface:
            return builder(args.surface)
        if args.input:
            return IdealTriangulation.from_dict(_load(args.input))
    except (KeyError, TypeError, TriangulationError) as exc:
        raise InputError(f"bad triangulation: {exc}") from None
    raise InputError("give --surface NAME or --input TRIANGULATION")


def _parse_word(text: str | None) -> list:
    if text is None or text.strip() == "":
        return []
    text = text.strip()
    if text.startswith("["):
        try:
            items = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"bad word: {exc}") from None
    else:
        items = [x.strip() for x in text.split(",") if x.strip()]
    return [int(x) if isinstance(x, int) or (isinstance(x, str) and x.lstrip("-").isdigit()) else x
            for x in items]


def _int_word(word: Sequence, n: int) -> list[int]:
    for i in word:
        if not isinstance(i, int) or not 0 <= i < n:
            raise InputError(f"mutation index {i!r} out of range for n={n}")
    return list(word)


def _surface_word(tri: IdealTriangulation, word: Sequence) -> list[int]:
    try:
        return [tri.edge_index(e) for e in word]
    except TriangulationError as exc:
        raise InputError(str(exc)) from None


# commands --------------------------------------------------------------------


def cmd_mutate(args) -> tuple[dict, int]:
    seed = _load_seed(args.input)
    word = _int_word(_parse_word(args.word), seed.n)
    out = apply_word(seed, word)
    return out.to_dict(), 0


def cmd_z_of(args) -> tuple[dict, int]:
    tri = _load_surface(args)
    Z = exchange_matrix_of(tri)
    return {"surface": tri.name, "edges": list(tri.edge_names), "Z": Z.tolist()}, 0


def cmd_flip(args) -> tuple[dict, int]:
    tri = _load_surface(args)
    word = _surface_word(tri, _parse_word(args.word))
    cur = tri
    matrices = [exchange_matrix_of(cur).tolist()]
    for e in word:
        cur = flip(cur, e)
        matrices.append(exchange_matrix_of(cur).tolist())
    names = list(tri.edge_names)
    return {
        "surface": tri.name,
        "word": [names[e] for e in word],
        "edges": names,
        "labels": {names[e]: cur.labels[e].format(names) for e in range(cur.n_edges)},
        "matrices": matrices,
        "triangulation": cur.to_dict(),
    }, 0


def cmd_form_basis(args) -> tuple[dict, int]:
    Z = _load_matrix(args.input)
    cf = compatible_form_basis(Z)
    return {
        "n": Z.n,
        "blocks": [list(c) for c in block_partition(Z).classes],
        "r": cf.block_count,
        "nonzero_blocks": cf.dimension,
        "zero_blocks": [list(c) for c in cf.zero_blocks],
        "basis": [_matrix_json(B) for B in cf.basis],
    }, 0


def cmd_poisson_solve(args) -> tuple[dict, int]:
    Z = _load_matrix(args.input)
    basis = solve_poisson_star(Z, seed=args.seed)
    return {"n": Z.n, "dimension": len(basis), "basis": [_matrix_json(B) for B in basis]}, 0


def cmd_builders(args) -> tuple[dict, int]:
    if args.name:
        try:
            tri = builder(args.name)
        except TriangulationError as exc:
            raise InputError(str(exc)) from None
        return tri.to_dict(include_labels=False), 0
    out = []
    for name in BUILDERS:
        tri = builder(name)
        c = classify(tri)
        out.append({"name": name, "genus": tri.genus, "punctures": tri.punctures,
                    "edges": tri.n_edges, "nice": c.nice, "perfect": c.perfect})
    return {"builders": out}, 0


def _words(tri: IdealTriangulation, args, rng: random.Random) -> list[list[int]]:
    # the given word, or the starting triangulation itself, is always checked
    words = [_surface_word(tri, _parse_word(args.word)) if args.word is not None else []]
    for _ in range(args.random_words):
        words.append(random_allowed_word(tri, rng.randint(0, args.max_len), rng))
    return words


def _after(tri: IdealTriangulation, word: Sequence[int]) -> IdealTriangulation:
    for e in word:
        tri = flip(tri, e)
    return tri


def _replay(rep: Report, tri: IdealTriangulation, word: Sequence[int], cur: IdealTriangulation) -> Report:
    names = list(tri.edge_names)
    rep.surface = tri.name
    rep.word = [names[e] for e in word]
    if not rep.passed:
        rep.witness.setdefault("Z", exchange_matrix_of(cur).tolist())
    return rep


def _battery(name: str, tri: IdealTriangulation, args, rng: random.Random) -> list[Report]:
    reports = []
    if name == "pullback":
        Z = _load_matrix(args.input) if args.input and not args.surface else exchange_matrix_of(tri)
        cf = compatible_form_basis(Z)
        for _ in range(max(args.random_words, 1)):
            word = [rng.randrange(Z.n) for _ in range(rng.randint(0, min(args.max_len, 4)))]
            for b, B in enumerate(cf.basis):
                ok = pullback_verify(B, Z, word, trials=args.trials, seed=rng.randrange(2**31))
                reports.append(Report("pullback", tri.name if tri else "", ok, word,
                                      {"basis_index": b, "form": _matrix_json(B), "Z": Z.tolist()}))
        return reports
    for word in _words(tri, args, rng):
        if name == "thm34":
            reports.append(thm34_check(tri, word))
            continue
        cur = _after(tri, word)
        if name == "corank":
            reports.append(_replay(corank_check(cur), tri, word, cur))
        elif name == "representative":
            subs = list(representative_subsets(cur))
            bad = [s for s in subs if not (s.unicyclic_odd and s.restriction_nondegenerate)]
            ok = bool(subs) and not bad and all(len(s.S) == cur.punctures for s in subs)
            witness = {"count": len(subs),
                       "first": subs[0].to_dict(cur) if subs else None,
                       "failures": [s.to_dict(cur) for s in bad]}
            reports.append(_replay(Report("representative", cur.name, ok, witness=witness), tri, word, cur))
        elif name == "shear-tau":
            if classify(cur).perfect:
                reports.append(_replay(shear_tau_check(cur), tri, word, cur))
    return reports


def cmd_verify(args) -> tuple[dict, int]:
    rng = random.Random(args.seed)
    tri = None
    if args.surface or (args.input and args.battery != "pullback"):
        tri = _load_surface(args)
    elif args.battery != "pullback":
        raise InputError("verify needs --surface NAME or --input TRIANGULATION")
    if args.battery == "pullback" and tri is None and not args.input:
        raise InputError("pullback needs --surface or --input Z")
    names = BATTERIES if args.battery == "all" else (args.battery,)
    reports = []
    for name in names:
        if tri is None and name != "pullback":
            continue
        if name == "shear-tau" and not classify(tri).perfect and args.battery == "all":
            continue
        if name == "shear-tau" and not classify(tri).perfect:
            raise InputError(f"shear-tau needs a perfect triangulation; {tri.name} is not")
        reports.extend(_battery(name, tri, args, rng))
    failures = [r.to_dict() for r in reports if not r.passed]
    out = {
        "battery": args.battery,
        "surface": tri.name if tri else None,
        "seed": args.seed,
        "checks": len(reports),
        "pass": not failures,
        "failures": failures,
    }
    if args.full:
        out["reports"] = [r.to_dict() for r in reports]
    return out, 0 if not failures else 1


# argument parsing ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="JSON file path or inline JSON")
    common.add_argument("--word", help="comma-separated indices or edge names, or a JSON list")
    common.add_argument("--trials", type=int, default=10, help="evaluation trials for pullback checks")
    common.add_argument("--seed", type=int, default=0, help="seed of the single random generator")
    common.add_argument("--max-len", type=int, default=8, help="maximum random word length")
    common.add_argument("--surface", help="builder surface name, e.g. torus1, sphere4, genus2")
    common.add_argument("--random-words", type=int, default=0, help="number of random words to check")
    common.add_argument("--json-indent", type=int, default=None)

    p = argparse.ArgumentParser(prog="clusterwp", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("mutate", parents=[common], help="apply a mutation word to a seed")
    sub.add_parser("z-of", parents=[common], help="exchange matrix of a triangulation")
    sub.add_parser("flip", parents=[common], help="flip along a word and report labels")
    sub.add_parser("form-basis", parents=[common], help="compatible 2-form basis of Z")
    sub.add_parser("poisson-solve", parents=[common], help="brackets compatible over the star of Z")
    v = sub.add_parser("verify", parents=[common], help="run a verification battery")
    v.add_argument("battery", choices=BATTERIES + ("all",))
    v.add_argument("--full", action="store_true", help="include passing reports in the output")
    b = sub.add_parser("builders", parents=[common], help="list builder surfaces or emit one")
    b.add_argument("name", nargs="?")
    return p


COMMANDS = {
    "mutate": cmd_mutate,
    "z-of": cmd_z_of,
    "flip": cmd_flip,
    "form-basis": cmd_form_basis,
    "poisson-solve": cmd_poisson_solve,
    "verify": cmd_verify,
    "builders": cmd_builders,
}


def run(argv: Sequence[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    indent = args.json_indent
    try:
        if args.trials < 1 or args.max_len < 0 or args.random_words < 0:
            raise InputError("--trials must be positive; --max-len and --random-words nonnegative")
        out, status = COMMANDS[args.command](args)
    except InputError as exc:
        out, status = {"error": str(exc)}, 2
    except (TriangulationError, LaurentnessError, IndexError, ValueError) as exc:
        out, status = {"error": f"{type(exc).__name__}: {exc}"}, 2
    stdout.write(json.dumps(out, indent=indent) + "\n")
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
