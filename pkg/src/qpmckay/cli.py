"""Command line interface: qpmckay <subcommand> [flags].

Exit status 0 on success, 1 on a domain error (the error class name is
printed on stderr), 2 on a usage error. Vertex names on the command line use
"p" for a prime: 0p is 0', 3p is 3'. The QPW_LOG environment variable sets
the log level (DEBUG, INFO, WARNING, ...).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import QPMcKayError, UnsupportedParam, VerificationFailed
from .geomreport import dual_graph, flop_graph_check
from .grouprep import GroupSpec, build_group, character_table
from .mckay import mckay_qp
from .mutclass import apply_word, enumerate_class, expected_class_size, graph_to_dict, graph_to_dot
from .qp import QP, adjacency_signature, eliminated_arrows, mutate, qp_from_json, qp_to_dict, qp_to_dot, qp_to_json
from .qp import reduce as reduce_qp
from .stability import cone_equal, reflection_cone

log = logging.getLogger("qpmckay")

EMITS = {
    "group": ("chars", "classes"),
    "mckay": ("json", "dot"),
    "mutate": ("json", "dot"),
    "enumerate": ("dot", "json"),
    "chambers": ("inequalities", "rays", "json"),
    "dualgraph": ("dot", "json"),
    "verify": ("text", "json"),
}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    family: Optional[str] = None
    n: Optional[int] = None
    word: tuple[str, ...] = ()
    emit: str = "text"
    output: Optional[str] = None
    from_json: Optional[str] = None
    all_checks: bool = False
    verbosity: str = field(default_factory=lambda: os.environ.get("QPW_LOG", "WARNING"))


def parse_vertex(name: str) -> str:
    return name.replace("p", "'")


def parse_word(text: Optional[str]) -> tuple[str, ...]:
    if not text:
        return ()
    return tuple(parse_vertex(x) for x in text.replace(",", " ").split())


def _spec(cfg: RunConfig) -> GroupSpec:
    if cfg.family is None:
        raise UsageError("--family is required")
    if cfg.family in ("C", "D") and cfg.n is None:
        raise UsageError(f"--n is required for family {cfg.family}")
    return GroupSpec(cfg.family, cfg.n or 0)


def _load_qp(cfg: RunConfig) -> QP:
    if cfg.from_json:
        text = sys.stdin.read() if cfg.from_json == "-" else open(cfg.from_json, encoding="utf-8").read()
        return qp_from_json(text)
    return mckay_qp(_spec(cfg))


def _check_word(qp: QP, word: Sequence[str]) -> None:
    ids = set(qp.quiver.vertex_ids())
    bad = [k for k in word if k not in ids]
    if bad:
        raise UsageError(f"unknown vertices {bad}; known: {sorted(ids)}")


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# subcommands


def cmd_group(cfg: RunConfig) -> str:
    model = build_group(_spec(cfg))
    if cfg.emit == "classes":
        return "".join(f"{c.name}\t{c.size}\n" for c in model.classes)
    rows = ["\t" + "\t".join(c.name for c in model.classes)]
    for label, row in zip(model.labels(), character_table(model)):
        rows.append(label + "\t" + "\t".join(str(x) for x in row))
    return "\n".join(rows) + "\n"


def cmd_mckay(cfg: RunConfig) -> str:
    qp = _load_qp(cfg)
    return qp_to_dot(qp) if cfg.emit == "dot" else qp_to_json(qp) + "\n"


def cmd_mutate(cfg: RunConfig) -> str:
    qp = _load_qp(cfg)
    _check_word(qp, cfg.word)
    steps = []
    for k in cfg.word:
        nxt = mutate(qp, k)
        steps.append({"vertex": k, "eliminated": sorted(eliminated_arrows_after_premutation(qp, k, nxt))})
        log.info("mutated at %s", k)
        qp = nxt
    if cfg.emit == "dot":
        return qp_to_dot(qp)
    out = {
        "word": list(cfg.word),
        "eliminated": steps[-1]["eliminated"] if steps else [],
        "steps": steps,
        "qp": qp_to_dict(qp),
    }
    return _dump(out)


def eliminated_arrows_after_premutation(qp: QP, k: str, result: QP) -> list[str]:
    """Arrows of the premutation removed by the reduction step."""
    from .qp import premutate

    return eliminated_arrows(premutate(qp, k), result)


def _graph(cfg: RunConfig):
    if cfg.from_json:
        return enumerate_class(_load_qp(cfg))
    spec = _spec(cfg)
    if spec.family in ("Octahedral", "Icosahedral"):
        raise UnsupportedParam(f"no mutation class for {spec.family}: every non-trivial vertex is excluded")
    return enumerate_class(mckay_qp(spec), expected_class_size(spec))


def cmd_enumerate(cfg: RunConfig) -> str:
    g = _graph(cfg)
    return graph_to_dot(g) if cfg.emit == "dot" else _dump(graph_to_dict(g))


def _chamber_payload(spec: GroupSpec, word: tuple[str, ...]):
    from .resolutions import resolution_of_word, skeleton_chamber

    root = mckay_qp(spec)
    cone = reflection_cone(root, word)
    skeleton = None
    try:
        res = resolution_of_word(spec, word)
        if spec.family != "Cyclic" or spec.param == 3:
            skeleton = skeleton_chamber(res)
    except ValueError:
        res = None
    return cone, res, skeleton


def cmd_chambers(cfg: RunConfig) -> str:
    spec = _spec(cfg)
    _check_word(mckay_qp(spec), cfg.word)
    cone, res, skeleton = _chamber_payload(spec, cfg.word)
    if cfg.emit == "inequalities":
        return "".join(line + "\n" for line in cone.inequalities())
    if cfg.emit == "rays":
        return "".join(" ".join(str(x) for x in r) + "\n" for r in cone.rays)
    out = cone.to_dict()
    out["word"] = list(cfg.word)
    out["resolution"] = res.name if res else None
    out["skeletonAgrees"] = None if skeleton is None else cone_equal(cone, skeleton)
    return _dump(out)


def cmd_dualgraph(cfg: RunConfig) -> str:
    qp = _load_qp(cfg)
    _check_word(qp, cfg.word)
    qp = apply_word(qp, cfg.word)
    dg = dual_graph(qp)
    return dg.to_dot() if cfg.emit == "dot" else _dump(dg.to_dict())


def cmd_verify(cfg: RunConfig) -> str:
    from .qp import qp_from_dict
    from .resolutions import resolution_of_word, skeleton_chamber

    spec = _spec(cfg)
    report: dict = {"group": str(spec)}
    start = time.perf_counter()
    g = _graph(cfg)
    report["qps"] = len(g.nodes)
    expected = expected_class_size(spec)
    report["qpsExpected"] = expected
    report["flopGraph"] = flop_graph_check(g)
    ok = report["flopGraph"] and len(g.nodes) == expected
    if cfg.all_checks:
        involution = True
        for node in g.nodes:
            for e in g.out_edges(node.index):
                back = mutate(g.nodes[e.target].qp, e.vertex)
                involution &= adjacency_signature(back) == node.signature
            involution &= reduce_qp(node.qp).potential == node.qp.potential
        report["involution"] = involution
        serial = all(qp_to_json(qp_from_dict(json.loads(qp_to_json(n.qp)))) == qp_to_json(n.qp) for n in g.nodes)
        report["serialization"] = serial
        chambers = 0
        agree = True
        root = g.root.qp
        for node in g.nodes:
            cone = reflection_cone(root, node.word)
            chambers += 1
            if spec.family != "Cyclic" or spec.param == 3:
                agree &= cone_equal(cone, skeleton_chamber(resolution_of_word(spec, node.word)))
            agree &= cone.facets == len(root.quiver.vertices) - 1
        report["chambers"] = chambers
        report["chambersAgree"] = agree
        ok = ok and involution and serial and agree
    report["seconds"] = round(time.perf_counter() - start, 3)
    report["ok"] = ok
    if cfg.emit == "json":
        text = _dump(report)
    else:
        lines = [f"group {report['group']}", f"QPs: {report['qps']} (expected {expected})"]
        if cfg.all_checks:
            lines.append(f"chambers: {report['chambers']} ({'OK' if report['chambersAgree'] else 'FAIL'})")
            lines.append(f"involution/reduce: {'OK' if report['involution'] else 'FAIL'}")
            lines.append(f"serialization: {'OK' if report['serialization'] else 'FAIL'}")
        lines.append(f"flop-graph: {'OK' if report['flopGraph'] else 'FAIL'}")
        text = "\n".join(lines) + "\n"
    if not ok:
        sys.stdout.write(text)
        raise VerificationFailed(f"verification failed for {spec}")
    return text


COMMANDS = {
    "group": cmd_group,
    "mckay": cmd_mckay,
    "mutate": cmd_mutate,
    "enumerate": cmd_enumerate,
    "chambers": cmd_chambers,
    "dualgraph": cmd_dualgraph,
    "verify": cmd_verify,
}


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qpmckay", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, emits in EMITS.items():
        p = sub.add_parser(name)
        p.add_argument("--family", choices=["C", "D", "T", "O", "I"])
        p.add_argument("--n", type=int)
        p.add_argument("--emit", choices=emits, default=emits[0])
        p.add_argument("--output", "-o", help="write to this file instead of stdout")
        if name in ("mckay", "mutate", "enumerate", "dualgraph"):
            p.add_argument("--from-json", help="read the QP from a JSON file ('-' for stdin)")
        if name in ("mutate", "dualgraph"):
            p.add_argument("--word", default="", help="comma separated vertices, p for prime")
        if name == "chambers":
            p.add_argument("--resolution", default="", help="mutation word reaching the resolution")
        if name == "verify":
            p.add_argument("--all", action="store_true", dest="all_checks")
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    word = getattr(ns, "word", None) or getattr(ns, "resolution", None)
    return RunConfig(
        command=ns.command,
        family=ns.family,
        n=ns.n,
        word=parse_word(word),
        emit=ns.emit,
        output=ns.output,
        from_json=getattr(ns, "from_json", None),
        all_checks=getattr(ns, "all_checks", False),
    )


def run(cfg: RunConfig) -> str:
    return COMMANDS[cfg.command](cfg)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    cfg = config_from_args(ns)
    level = getattr(logging, cfg.verbosity.upper(), logging.WARNING)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        text = run(cfg)
    except UsageError as exc:
        parser.error(str(exc))
    except QPMcKayError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0
