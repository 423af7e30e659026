"""Command-line interface: ``stratamon <command> [--inline JSON | --file PATH] ...``."""
from __future__ import annotations

import argparse
import json
import logging
import os
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional, Sequence

from .block import GroupSpec, block_monoid, block_to_congruence, is_elementary
from .errors import InputError, StratamonError
from .extraction import classify_atom, coordinates, extraction_grade, in_D, mu
from .hilbert import apery, hilbert_basis
from .monoid import Monoid, monoid_from_json
from .oracle import brute_apery, brute_atoms, brute_lambda, enum_monoid
from .stratify import decompose, parametrize, peel_strong_atoms, stratify, verify_bijection

log = logging.getLogger("stratamon")

COMMANDS = (
    "hilbert", "apery", "lambda", "classify", "coords", "stratify", "decompose",
    "parametrize", "verify", "block", "oracle", "reproduce",
)
REPRODUCIBLE = ("elliott-mod7", "mod11-counterexample")
_FLAT_LIST = re.compile(r"\[([^\[\]{}\"]*)\]")


@dataclass(frozen=True)
class RunConfig:
    command: str
    source: Optional[Any]
    box: int
    fmt: str


def _rat(q) -> str:
    if isinstance(q, float):
        return "inf"
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _vecs(vs) -> list:
    return [list(v) for v in vs]


def _parse_json(text: str, what: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{what}: invalid JSON ({exc.msg})") from exc


def _vector(text: Optional[str], what: str) -> tuple:
    if text is None:
        raise InputError(f"missing {what}")
    v = _parse_json(text, what)
    if not isinstance(v, list):
        raise InputError(f"{what} must be a JSON list")
    return tuple(v)


def _vectors(text: Optional[str], what: str) -> list:
    if text is None:
        raise InputError(f"missing {what}")
    vs = _parse_json(text, what)
    if not isinstance(vs, list) or not all(isinstance(v, list) for v in vs):
        raise InputError(f"{what} must be a JSON list of lists")
    return [tuple(v) for v in vs]


def _source(args) -> Optional[Any]:
    if args.inline is not None and args.file is not None:
        raise InputError("give exactly one of --inline and --file")
    if args.inline is not None:
        return _parse_json(args.inline, "--inline")
    if args.file is not None:
        try:
            with open(args.file, encoding="utf-8") as fh:
                return _parse_json(fh.read(), args.file)
        except OSError as exc:
            raise InputError(f"cannot read {args.file}: {exc.strerror}") from exc
    return None


def _monoid(cfg: RunConfig) -> Monoid:
    if cfg.source is None:
        raise InputError("a monoid is required (--inline JSON or --file PATH)")
    return monoid_from_json(cfg.source)


# ---------------------------------------------------------------- commands


def _cmd_hilbert(cfg, args):
    return _vecs(hilbert_basis(_monoid(cfg)).atoms)


def _cmd_apery(cfg, args):
    M = _monoid(cfg)
    ap = apery(M, _vectors(args.base, "--base"), cfg.box)
    return {"base": _vecs(ap.base), "elements": _vecs(ap.elements), "complete": ap.complete, "box": list(ap.box)}


def _cmd_lambda(cfg, args):
    M = _monoid(cfg)
    x, y = _vector(args.x, "--x"), _vector(args.y, "--y")
    return {"x": list(x), "y": list(y), "lambda": _rat(extraction_grade(M, x, y))}


def _cmd_classify(cfg, args):
    M = _monoid(cfg)
    return [classify_atom(M, a).to_json() for a in hilbert_basis(M).atoms]


def _cmd_coords(cfg, args):
    x = _vector(args.element, "--element")
    Q = _vectors(args.base, "--base")
    return {
        "element": list(x),
        "base": _vecs(Q),
        "coordinates": [_rat(t) for t in coordinates(x, Q)],
        "in_D": in_D(x, Q),
        "mu": mu(x, Q),
    }


def _cmd_stratify(cfg, args):
    return stratify(_monoid(cfg), cfg.box).to_json()


def _cmd_decompose(cfg, args):
    M = _monoid(cfg)
    S = stratify(M, cfg.box)
    rep = decompose(M, S, _vector(args.element, "--element"))
    out = rep.to_json()
    out["strata"] = [_vecs(H) for H in S.layers]
    return out


def _cmd_parametrize(cfg, args):
    M = _monoid(cfg)
    S = stratify(M, cfg.box)
    if not S.complete:
        raise InputError(f"stratification failed at stage {S.failure.stage}: {S.failure.reason}")
    return parametrize(M, S).to_json()


def _cmd_verify(cfg, args):
    M = _monoid(cfg)
    S = stratify(M, cfg.box)
    if not S.complete:
        raise InputError(f"stratification failed at stage {S.failure.stage}: {S.failure.reason}")
    return verify_bijection(M, parametrize(M, S), cfg.box)


def _cmd_block(cfg, args):
    if cfg.source is None:
        raise InputError("a group description is required (--inline JSON or --file PATH)")
    G = GroupSpec.from_json(cfg.source)
    system = block_to_congruence(G)
    M = block_monoid(G)
    atoms = []
    for a in hilbert_basis(M).atoms:
        atoms.append({
            "atom": list(a),
            "elementary": is_elementary(G, a),
            "strong": classify_atom(M, a).strong,
        })
    return {
        "system": {"dim": system.dim, "rows": [{"coeffs": list(c), "mod": d} for c, d in system.rows]},
        "atoms": atoms,
    }


def _cmd_oracle(cfg, args):
    M = _monoid(cfg)
    what = args.what
    if what == "enum":
        return _vecs(sorted(enum_monoid(M, cfg.box)))
    if what == "atoms":
        return _vecs(sorted(brute_atoms(M, cfg.box)))
    if what == "apery":
        return _vecs(brute_apery(M, _vectors(args.base, "--base"), cfg.box))
    if what == "lambda":
        return _rat(brute_lambda(M, _vector(args.x, "--x"), _vector(args.y, "--y"), args.max_den))
    raise InputError(f"unknown oracle query {what!r}")


def reproduce(name: str, box: int = 40) -> dict:
    """End-to-end runs of the two worked instances."""
    if name == "elliott-mod7":
        M = monoid_from_json({"kind": "elliott", "a": 1, "b": 2, "c": 7})
        S = stratify(M, box)
        P = parametrize(M, S)
        return {
            "monoid": M.to_json(),
            "hilbert_basis": _vecs(hilbert_basis(M).atoms),
            "apery_H1": _vecs(apery(M, S.layers[0], box).elements),
            "stratification": S.to_json(),
            "parametrization": P.to_json(),
            "constraints": [str(k) for k in P.constraints],
            "bijection": {k: v for k, v in verify_bijection(M, P, box).items() if k in ("bijective", "box", "members")},
        }
    if name == "mod11-counterexample":
        M = monoid_from_json({"kind": "congruence", "dim": 3, "rows": [{"coeffs": [4, 5, 8], "mod": 11}]})
        peel = peel_strong_atoms(M)
        return {
            "monoid": M.to_json(),
            "hilbert_basis": _vecs(hilbert_basis(M).atoms),
            "apery_H1_size": len(apery(M, peel[0].atoms, box).elements),
            "stratification": stratify(M, box).to_json(),
            "strong_atom_layers": [
                {
                    "stage": i + 1,
                    "atoms": _vecs(st.atoms),
                    "independent": st.independent,
                    "relation": str(st.relation) if st.relation else None,
                }
                for i, st in enumerate(peel)
            ],
        }
    raise InputError(f"unknown reproduction {name!r}; choose from {', '.join(REPRODUCIBLE)}")


def _cmd_reproduce(cfg, args):
    return reproduce(args.name, cfg.box)


HANDLERS = {name: globals()[f"_cmd_{name}"] for name in COMMANDS}


# ---------------------------------------------------------------- plumbing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--inline", help="monoid (or group) description as JSON")
    common.add_argument("--file", help="path to a JSON description")
    common.add_argument("--box", type=int, default=40, help="search box bound (default 40)")
    common.add_argument("--format", dest="fmt", choices=("json", "pretty"), default="json")

    p = argparse.ArgumentParser(prog="stratamon", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        if name in ("apery", "coords", "oracle"):
            sp.add_argument("--base", help="JSON list of vectors")
        if name in ("decompose", "coords"):
            sp.add_argument("--element", help="JSON vector")
        if name in ("lambda", "oracle"):
            sp.add_argument("--x", help="JSON vector")
            sp.add_argument("--y", help="JSON vector")
        if name == "oracle":
            sp.add_argument("what", choices=("enum", "atoms", "apery", "lambda"))
            sp.add_argument("--max-den", type=int, default=60)
        if name == "reproduce":
            sp.add_argument("name", choices=REPRODUCIBLE)
    return p


def _emit(obj: Any, fmt: str, stream) -> None:
    if fmt == "pretty":
        text = json.dumps(obj, indent=2, ensure_ascii=False)
        # keep flat lists of scalars (vectors) on one line
        text = _FLAT_LIST.sub(lambda m: "[" + ", ".join(t.strip() for t in m.group(1).split(",")) + "]", text)
        stream.write(text + "\n")
    else:
        stream.write(json.dumps(obj, separators=(",", ":"), ensure_ascii=False) + "\n")


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    level = os.environ.get("STRATAMON_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), stream=err)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    try:
        if args.box < 1:
            raise InputError("--box must be at least 1")
        cfg = RunConfig(args.command, _source(args), args.box, args.fmt)
        result = HANDLERS[cfg.command](cfg, args)
    except StratamonError as exc:
        _emit({"error": exc.kind, "message": str(exc), "exit_code": exc.exit_code}, args.fmt, err)
        return exc.exit_code
    _emit(result, args.fmt, out)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
