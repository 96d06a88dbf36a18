"""Command-line front end: build, functor, check, homology and verify-paper."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from .combinators import FiberProduct, coslice_under, join, opposite, product, slice_over
from .correspondence import Correspondence, SliceObject, correspondence_from_map
from .corpus import parse_spec
from .homology import homology
from .kernel import SimplicialError, SMap, SSet, TruncationError
from .lifting import CLASS_TAGS, FibrationClass, check_class
from . import subdivision as sub


class InputError(Exception):
    pass


# ---------------------------------------------------------------- JSON envelopes


def slice_to_json(S: SliceObject) -> dict[str, Any]:
    """A slice object; over a product the two factors are stored so the product can be rebuilt."""
    out: dict[str, Any] = {"map": S.structure.to_json()}
    if isinstance(S.base, FiberProduct) and S.base.f is None:
        out["left"] = S.base.left.to_json()
        out["right"] = S.base.right.to_json()
    return out


def slice_from_json(data: dict[str, Any]) -> SliceObject:
    if "map" not in data:
        raise InputError("expected a slice object with a 'map' entry")
    f = SMap.from_json(data["map"])
    if "left" in data and "right" in data:
        P = product(SSet.from_json(data["left"]), SSet.from_json(data["right"]))
        if not P.same_as(f.target):
            raise InputError("the stored factors do not rebuild the target of the map")
        f = SMap(f.source, P, f.assignment)
    problems = f.validate()
    if problems:
        raise InputError("invalid structure map: " + problems[0])
    return SliceObject(f.source, f)


def correspondence_to_json(X: Correspondence) -> dict[str, Any]:
    return {"correspondence": X.structure.to_json()}


def correspondence_from_json(data: dict[str, Any]) -> Correspondence:
    raw = data.get("correspondence", data.get("map"))
    if raw is None:
        raise InputError("expected a 'correspondence' entry holding a map to Delta^1")
    X = correspondence_from_map(SMap.from_json(raw))
    problems = X.validate()
    if problems:
        raise InputError("invalid correspondence: " + problems[0])
    return X


def read_json(path: str) -> dict[str, Any]:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def read_sset(spec: str) -> SSet:
    S = parse_spec(spec)
    problems = S.validate()
    if problems:
        raise InputError(f"{spec}: " + problems[0])
    return S


def emit(payload: dict[str, Any], output: str | None) -> None:
    text = json.dumps(payload, indent=1, sort_keys=False)
    if output:
        Path(output).write_text(text + "\n")
    else:
        print(text)


def note(msg: str) -> None:
    print(msg, file=sys.stderr)


# ---------------------------------------------------------------- build


BUILDERS = ("spec", "join", "product", "opposite", "tw", "sd2", "slice", "coslice")


def cmd_build(args: argparse.Namespace) -> int:
    kind = args.construction
    if kind in ("join", "product"):
        if not (args.a and args.b):
            raise InputError(f"build {kind} needs --a and --b")
        A, B = read_sset(args.a), read_sset(args.b)
        S = join(A, B) if kind == "join" else product(A, B)
        note(f"{kind}: counts {S.counts()}")
        emit(S.to_json(), args.output)
        return 0
    spec = args.input or args.a
    if not spec:
        raise InputError(f"build {kind} needs --input")
    X = read_sset(spec)
    if kind == "spec":
        emit(X.to_json(), args.output)
    elif kind == "opposite":
        emit(opposite(X).to_json(), args.output)
    elif kind in ("tw", "sd2"):
        T = sub.tw(X) if kind == "tw" else sub.sd2(X)
        note(f"{kind}: counts {T.total.counts()}")
        emit(slice_to_json(T), args.output)
    else:
        if not args.vertex:
            raise InputError(f"build {kind} needs --vertex")
        try:
            S, proj = slice_over(X, args.vertex) if kind == "slice" else coslice_under(X, args.vertex)
        except SimplicialError as exc:
            raise InputError(str(exc)) from exc
        emit(slice_to_json(SliceObject(S, proj)), args.output)
    return 0


# ---------------------------------------------------------------- functor


FUNCTORS = (
    "sigma-shriek",
    "delta-shriek",
    "a-shriek",
    "d-shriek",
    "a-star",
    "d-star",
    "a-lower-star",
    "d-lower-star",
)


def cmd_functor(args: argparse.Namespace) -> int:
    data = read_json(args.input)
    name = args.name
    if name in ("a-star", "d-star"):
        Y = correspondence_from_json(data)
        out = sub.a_star_degreewise(Y) if name == "a-star" else sub.d_star_degreewise(Y)
        note(f"{name}: counts {out.total.counts()}")
        emit(slice_to_json(out), args.output)
        return 0
    X = slice_from_json(data)
    if not isinstance(X.base, FiberProduct):
        raise InputError(f"{name} expects an object over a product (store 'left' and 'right')")
    if name in ("sigma-shriek", "delta-shriek"):
        C = sub.sigma_shriek(X) if name == "sigma-shriek" else sub.delta_shriek(X)
        note(f"{name}: counts {C.counts()}")
        emit({"map": C.structure.to_json()}, args.output)
    elif name in ("a-shriek", "d-shriek"):
        Y = sub.a_shriek(X) if name == "a-shriek" else sub.d_shriek(X)
        note(f"{name}: counts {Y.total.counts()}")
        emit(correspondence_to_json(Y), args.output)
    else:
        Y = sub.a_lower_star(X, args.cap) if name == "a-lower-star" else sub.d_lower_star(X, args.cap)
        note(f"{name}: counts {Y.total.counts()} (complete for restriction through {args.cap})")
        emit(correspondence_to_json(Y), args.output)
    return 0


# ---------------------------------------------------------------- check


def _map_and_class(data: dict[str, Any], tag: str) -> tuple[SMap, FibrationClass]:
    if tag == "bifibration-map":
        if "base" not in data or "map" not in data:
            raise InputError("bifibration-map needs {'map': f, 'base': slice object of the target}")
        f = SMap.from_json(data["map"])
        T = slice_from_json(data["base"])
        if not isinstance(T.base, FiberProduct):
            raise InputError("the target must lie over a product")
        f = SMap(f.source, T.total, f.assignment)
        from .kernel import compose_maps

        return f, FibrationClass(tag, compose_maps(T.base.pr1, T.structure), compose_maps(T.base.pr2, T.structure))
    if "map" in data:
        return slice_from_json(data).structure, FibrationClass(tag)
    return SMap.from_json(data), FibrationClass(tag)


def cmd_check(args: argparse.Namespace) -> int:
    data = read_json(args.map)
    f, cls = _map_and_class(data, args.klass)
    problems = f.validate()
    if problems:
        raise InputError("invalid map: " + problems[0])
    try:
        verdict = check_class(f, cls, args.cap)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    payload = verdict.to_json(with_witness=not args.witness)
    if verdict.witness is not None and args.witness:
        Path(args.witness).write_text(json.dumps(verdict.witness.to_json(), indent=1) + "\n")
        payload["witness_file"] = args.witness
    emit(payload, args.output)
    return 0 if verdict.certified else 1


# ---------------------------------------------------------------- homology


def cmd_homology(args: argparse.Namespace) -> int:
    S = read_sset(args.input)
    h = homology(S)
    if args.json:
        emit(h.to_json(), args.output)
        return 0
    lines = [f"{'k':>3}  H_k"]
    for k in range(max(len(h.betti), 1)):
        lines.append(f"{k:>3}  {h.group(k)}")
    lines.append(f"euler characteristic {h.euler}, components {h.components}")
    text = "\n".join(lines)
    if args.output:
        Path(args.output).write_text(text + "\n")
    else:
        print(text)
    return 0


# ---------------------------------------------------------------- verify-paper


def cmd_verify(args: argparse.Namespace) -> int:
    from .verification import cases, run_cases, select

    names = select(args.filter)
    if not names:
        note(f"no case matches {args.filter!r}")
        return 2
    if args.list:
        for n in names:
            print(f"{n}  [{cases()[n].anchor}]")
        return 0
    results = run_cases(names, args.cap, args.jobs)
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.name}  ({r.seconds:.2f}s)  {r.detail}")
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} cases passed at cap {args.cap}")
    if args.output:
        report = {
            "cap": args.cap,
            "passed": len(results) - len(failed),
            "failed": len(failed),
            "cases": [r.to_json() for r in results],
        }
        Path(args.output).write_text(json.dumps(report, indent=1) + "\n")
    return 1 if failed else 0


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="simpset", description="Finite simplicial sets, correspondences and lifting checks.")
    subs = p.add_subparsers(dest="command", required=True)

    b = subs.add_parser("build", help="construct a simplicial set or slice object")
    b.add_argument("construction", choices=BUILDERS)
    b.add_argument("--a")
    b.add_argument("--b")
    b.add_argument("--input")
    b.add_argument("--vertex")
    b.add_argument("--output")
    b.set_defaults(func=cmd_build)

    f = subs.add_parser("functor", help="apply a restriction or extension functor")
    f.add_argument("name", choices=FUNCTORS)
    f.add_argument("--input", required=True)
    f.add_argument("--cap", type=int, default=2)
    f.add_argument("--output")
    f.set_defaults(func=cmd_functor)

    c = subs.add_parser("check", help="decide a lifting property up to a dimension cap")
    c.add_argument("--class", dest="klass", required=True, choices=CLASS_TAGS)
    c.add_argument("--cap", type=int)
    c.add_argument("--map", required=True)
    c.add_argument("--witness")
    c.add_argument("--output")
    c.set_defaults(func=cmd_check)

    h = subs.add_parser("homology", help="integral homology")
    h.add_argument("--input", required=True)
    h.add_argument("--json", action="store_true")
    h.add_argument("--output")
    h.set_defaults(func=cmd_homology)

    v = subs.add_parser("verify-paper", help="run the verification corpus")
    v.add_argument("--filter")
    v.add_argument("--cap", type=int, default=3)
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--output")
    v.add_argument("--list", action="store_true")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, SimplicialError, TruncationError, KeyError) as exc:
        note(f"error: {exc}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
