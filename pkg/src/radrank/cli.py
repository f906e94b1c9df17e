"""Command-line front end.

Every subcommand loads its inputs, runs one library operation, and emits
either short text or (with --json) a Report object carrying the command, an
input digest, and the results.  Output is byte-deterministic for fixed
inputs; wall-clock timing is therefore opt-in via --timing.  Exit status: 0
for a computed result, 1 for a negative verdict on a decision command, 2 for
usage, format, or precondition problems.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from typing import Optional, Sequence

from . import claborn, rank as rank_ops, semilattice
from .cones import GeneratorSet, max_weak_reay
from .model import Model, dumps_model, enumerate_v, v_membership, validate
from .ratlin import parse_vector


def _digest(parts: Sequence[str]) -> str:
    h = hashlib.sha256()
    for part in parts:
        h.update(part.encode("utf-8"))
        h.update(b"\0")
    return "sha256:" + h.hexdigest()


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _load(path: str) -> tuple[Model, str]:
    text = _read(path)
    from .model import loads_model

    return loads_model(text), text


def _support_text(support) -> str:
    return "{" + ",".join(sorted(support)) + "}"


def _parse_support(text: str) -> list[str]:
    ids = [part for part in text.split(",") if part]
    if not ids:
        raise ValueError(f"empty support argument: {text!r}")
    return ids


def _family_json(family) -> list[list[str]]:
    return [sorted(s) for s in family]


# --- handlers ----------------------------------------------------------------
# each returns (exit code, results dict, text lines, digest parts)

def _cmd_validate(ns) -> tuple[int, dict, list[str], list[str]]:
    m, text = _load(ns.model)
    report = validate(m)
    results = {
        "positively_spanning": report.positively_spanning,
        "witness_rich": report.witness_rich,
        "linear_rank": report.linear_rank,
    }
    lines = [
        f"positively_spanning: {str(report.positively_spanning).lower()}",
        f"witness_rich: {str(report.witness_rich).lower()}",
        f"linear_rank: {report.linear_rank}",
    ]
    code = 0 if report.positively_spanning else 1
    return code, results, lines, ["validate", text]


def _cmd_v_member(ns) -> tuple[int, dict, list[str], list[str]]:
    m, text = _load(ns.model)
    support = _parse_support(ns.support)
    verdict = v_membership(m, support)
    results = {"support": sorted(set(support)), "member": verdict}
    return (
        0 if verdict else 1,
        results,
        [str(verdict).lower()],
        ["v-member", ns.support, text],
    )


def _cmd_enumerate_v(ns) -> tuple[int, dict, list[str], list[str]]:
    m, text = _load(ns.model)
    members = enumerate_v(m)
    results = {"members": _family_json(members), "count": len(members)}
    lines = [_support_text(s) for s in members]
    return 0, results, lines, ["enumerate-v", text]


def _cmd_coprime(ns) -> tuple[int, dict, list[str], list[str]]:
    m, text = _load(ns.model)
    supports = [_parse_support(s) for s in ns.supports]
    raw = semilattice.product_coprime_raw(m, supports)
    by_supports = semilattice.product_coprime_supports(supports)
    results = {
        "supports": [sorted(set(s)) for s in supports],
        "raw": raw,
        "supports_criterion": by_supports,
    }
    lines = [
        f"raw: {str(raw).lower()}",
        f"supports_criterion: {str(by_supports).lower()}",
    ]
    return 0 if raw else 1, results, lines, ["coprime", *ns.supports, text]


def _cmd_mprop(ns) -> tuple[int, dict, list[str], list[str]]:
    m, text = _load(ns.model)
    families = semilattice.mprop(m)
    results = {
        "families": [
            {
                "prime": semilattice.theta(m, family),
                "members": _family_json(family),
            }
            for family in families
        ]
    }
    lines = [
        f"{semilattice.theta(m, family)}: "
        + " ".join(_support_text(s) for s in family)
        for family in families
    ]
    return 0, results, lines, ["mprop", text]


def _cmd_inv(ns) -> tuple[int, dict, list[str], list[str]]:
    m, text = _load(ns.model)
    delta = list(ns.primes)
    enum_side = rank_ops.inv_enum(m, delta)
    cone_side = rank_ops.inv_cone(m, delta)
    results = {
        "delta": sorted(set(delta)),
        "inverses": sorted(enum_side),
        "agreement": enum_side == cone_side,
    }
    lines = [f"inv({_support_text(delta)}) = {_support_text(enum_side)}"]
    return 0, results, lines, ["inv", *sorted(set(delta)), text]


def _cmd_rank(ns) -> tuple[int, dict, list[str], list[str]]:
    m, text = _load(ns.model)
    value = rank_ops.recover_rank(m)
    return 0, {"rank": value}, [f"rank = {value}"], ["rank", text]


def _cmd_iso(ns) -> tuple[int, dict, list[str], list[str]]:
    ma, text_a = _load(ns.model_a)
    mb, text_b = _load(ns.model_b)
    mapping = semilattice.find_iso(ma, mb)
    parts = ["iso", text_a, text_b]
    if mapping is None:
        return 1, {"isomorphism": None}, ["no isomorphism"], parts
    results = {"isomorphism": {k: mapping[k] for k in sorted(mapping)}}
    lines = [f"{k} -> {mapping[k]}" for k in sorted(mapping)]
    return 0, results, lines, parts


def _cmd_extend_iso(ns) -> tuple[int, dict, list[str], list[str]]:
    ma, text_a = _load(ns.model_a)
    mb, text_b = _load(ns.model_b)
    phi_text = _read(ns.phi)
    try:
        doc = json.loads(phi_text)
    except json.JSONDecodeError as exc:
        raise ValueError(
            f"phi file: line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from None
    if not isinstance(doc, list):
        raise ValueError("phi file must be a JSON array of support pairs")
    pairs = []
    for i, item in enumerate(doc):
        if (
            not isinstance(item, list)
            or len(item) != 2
            or not all(isinstance(side, list) for side in item)
        ):
            raise ValueError(f"phi[{i}]: expected a pair of id arrays")
        pairs.append((item[0], item[1]))
    eta, verified = semilattice.extend_iso(ma, mb, pairs)
    results = {
        "eta": {k: eta[k] for k in sorted(eta)},
        "verified": verified,
    }
    lines = [f"{k} -> {eta[k]}" for k in sorted(eta)]
    lines.append(f"verified: {str(verified).lower()}")
    parts = ["extend-iso", text_a, text_b, phi_text]
    return 0 if verified else 1, results, lines, parts


_FAMILIES = {"d1": claborn.gen_d1, "d2": claborn.gen_d2, "d3": claborn.gen_d3}


def _cmd_gen(ns) -> tuple[int, dict, list[str], list[str]]:
    m = _FAMILIES[ns.family](ns.k)
    text = dumps_model(m)
    from .model import model_to_dict

    results = {"model": model_to_dict(m)}
    parts = ["gen", ns.family, str(ns.k)]
    if ns.output:
        with open(ns.output, "w", encoding="utf-8") as handle:
            handle.write(text)
        return 0, results, [f"wrote {ns.output}"], parts
    return 0, results, [text.rstrip("\n")], parts


def _cmd_reay(ns) -> tuple[int, dict, list[str], list[str]]:
    text = _read(ns.vectors)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(
            f"vectors file: line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from None
    if isinstance(doc, dict):
        vectors = doc.get("vectors")
        labels = doc.get("labels")
    else:
        vectors, labels = doc, None
    if not isinstance(vectors, list):
        raise ValueError("vectors file must hold an array of vectors")
    parsed = [parse_vector(v) for v in vectors]
    gens = GeneratorSet.from_vectors(parsed, labels)
    s, blocks = max_weak_reay(gens)
    results = {
        "cardinality": s,
        "blocks": [sorted(block) for block in blocks],
    }
    lines = [f"s = {s}"]
    if blocks:
        lines.append("blocks: " + " | ".join(_support_text(b) for b in blocks))
    return 0, results, lines, ["reay", text]


_HANDLERS = {
    "validate": _cmd_validate,
    "v-member": _cmd_v_member,
    "enumerate-v": _cmd_enumerate_v,
    "coprime": _cmd_coprime,
    "mprop": _cmd_mprop,
    "inv": _cmd_inv,
    "rank": _cmd_rank,
    "iso": _cmd_iso,
    "extend-iso": _cmd_extend_iso,
    "gen": _cmd_gen,
    "reay": _cmd_reay,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="radrank",
        description="Support posets and rank recovery for class-data models.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON Report")
    common.add_argument(
        "--timing", action="store_true", help="include wall-clock timing"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check class data")
    p.add_argument("model")

    p = sub.add_parser("v-member", parents=[common], help="support membership")
    p.add_argument("model")
    p.add_argument("support", help="comma-separated prime ids, e.g. P0,P1")

    p = sub.add_parser("enumerate-v", parents=[common], help="list all supports")
    p.add_argument("model")

    p = sub.add_parser("coprime", parents=[common], help="tuple coprimality")
    p.add_argument("model")
    p.add_argument("supports", nargs="+", help="two or more comma-separated supports")

    p = sub.add_parser("mprop", parents=[common], help="maximal product-proper families")
    p.add_argument("model")

    p = sub.add_parser("inv", parents=[common], help="almost-inverses of a prime set")
    p.add_argument("model")
    p.add_argument("primes", nargs="*", help="prime ids (empty set allowed)")

    p = sub.add_parser("rank", parents=[common], help="recover rank from the poset")
    p.add_argument("model")

    p = sub.add_parser("iso", parents=[common], help="search for a prime bijection")
    p.add_argument("model_a")
    p.add_argument("model_b")

    p = sub.add_parser(
        "extend-iso", parents=[common], help="transport a support-map isomorphism"
    )
    p.add_argument("model_a")
    p.add_argument("model_b")
    p.add_argument("phi", help="JSON array of [source ids, target ids] pairs")

    p = sub.add_parser("gen", parents=[common], help="emit a generator model")
    p.add_argument("family", choices=sorted(_FAMILIES))
    p.add_argument("--k", type=int, required=True, help="number of primes (>= 2)")
    p.add_argument("--output", "-o", help="write the model here instead of stdout")

    p = sub.add_parser("reay", parents=[common], help="maximum weak Reay partition")
    p.add_argument("vectors", help="JSON array of vectors of rational strings")

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    handler = _HANDLERS[ns.command]
    started = time.perf_counter()
    try:
        code, results, lines, digest_parts = handler(ns)
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    elapsed_ms = (time.perf_counter() - started) * 1000.0
    if ns.json:
        report = {
            "command": ns.command,
            "inputs": {"digest": _digest(digest_parts)},
            "results": results,
        }
        if ns.timing:
            report["timing_ms"] = round(elapsed_ms, 3)
        print(json.dumps(report, indent=2))
    else:
        for line in lines:
            print(line)
        if ns.timing:
            print(f"timing_ms: {elapsed_ms:.3f}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
