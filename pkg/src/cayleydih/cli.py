"""Command-line front end.

    cayleydih build --group C6 --set "(1);(5)" --out c6.txt
    cayleydih thm2 --group C4xC2 --set "(1,0);(3,0);(0,1)" --factor 0
    cayleydih corollary --group C4xC2 --set "(1,0);(3,0);(0,1)"
    cayleydih thm3 --group "dih(C4)" --set "x(0);x(1)" --factor 0
    cayleydih autgrp --graph c6.txt
    cayleydih regular --graph c6.txt
    cayleydih verify --group "dih(C3)" --set "x(0);x(1);x(2)"
    cayleydih counterexample

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 resource cap.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field

from . import groups as gc
from .autgrp import automorphism_group, enumerate_regular_subgroups, format_report, verify_action
from .cayley import ConnectionSet, Graph, build_cayley_graph, read_graph, to_text, validate_connection_set, write_graph
from .constructions import (
    Thm3Instance,
    corollary_representations,
    split_choices,
    thm2_construct,
    thm3_all_witnesses,
    thm3_construct,
    thm3_find_y,
)
from .errors import (
    CapExceeded,
    CayleyDihError,
    IdentityInSet,
    InternalVerificationFailed,
    MismatchedSpec,
    NotInverseClosed,
    OddOrder,
    OddOrderFactor,
    TooLarge,
    UsageError,
)
from .groups import FactorChoice

VERBS = ("build", "thm2", "corollary", "thm3", "autgrp", "regular", "verify", "counterexample")

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_CAP = 3

COUNTEREXAMPLE_GROUP = "C9xC3"
COUNTEREXAMPLE_SET = "(1,0);(0,1);(8,0);(0,2)"


@dataclass
class Command:
    verb: str
    options: dict = field(default_factory=dict)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cayleydih", description="Cayley graphs on abelian and generalized dihedral groups")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def add(name, help, *flags):
        sp = sub.add_parser(name, help=help)
        if "group" in flags:
            sp.add_argument("--group", help="group spec, e.g. C9xC3 or dih(C4)")
            sp.add_argument("--set", dest="set", help='connection set, e.g. "(1,0);(8,0)"')
        if "graph" in flags:
            sp.add_argument("--graph", help="graph file instead of --group/--set")
        if "factor" in flags:
            sp.add_argument("--factor", help="factor index, or 'none' for thm3 with c = e")
        if "witnesses" in flags:
            sp.add_argument("--all-witnesses", action="store_true", help="list every witness")
        sp.add_argument("--out", help="write the graph file here")
        return sp

    add("build", "build a Cayley graph", "group")
    add("thm2", "abelian -> generalized dihedral", "group", "factor")
    add("corollary", "all generalized dihedral re-representations", "group")
    add("thm3", "generalized dihedral -> abelian", "group", "factor", "witnesses")
    add("autgrp", "automorphism group order", "group", "graph")
    add("regular", "enumerate regular subgroups", "group", "graph")
    add("verify", "cross-check constructions against the oracle", "group")
    add("counterexample", "the C9xC3 graph with a unique regular subgroup")
    return p


def _column_of(argv: list[str], flag: str) -> int:
    """1-based column at which the value of ``flag`` starts in the joined argv."""
    col = 1
    for i, a in enumerate(argv):
        if a == flag and i + 1 < len(argv):
            return col + len(a) + 1
        if a.startswith(flag + "="):
            return col + len(flag) + 1
        col += len(a) + 1
    return 1


def _shift(exc: UsageError, offset: int) -> UsageError:
    return UsageError(exc.message, exc.line, exc.column + offset - 1)


def parse_inputs(argv: list[str]) -> Command:
    ns = _parser().parse_args(argv)
    opts = {k: v for k, v in vars(ns).items() if k != "verb"}
    verb = ns.verb

    if opts.get("group") is not None:
        try:
            opts["group"] = gc.parse_group(opts["group"])
        except UsageError as exc:
            raise _shift(exc, _column_of(argv, "--group")) from None
    if opts.get("set") is not None:
        if opts.get("group") is None:
            raise UsageError("--set needs --group")
        try:
            opts["set"] = gc.parse_element_list(opts["set"], opts["group"])
        except UsageError as exc:
            raise _shift(exc, _column_of(argv, "--set")) from None

    if verb in ("autgrp", "regular"):
        if (opts.get("graph") is None) == (opts.get("set") is None):
            raise UsageError(f"{verb} needs either --graph or --group with --set")
    elif verb != "counterexample" and opts.get("set") is None:
        raise UsageError(f"{verb} needs --group and --set")

    if "factor" in opts:
        opts["factor"] = _parse_factor(opts["factor"], opts.get("group"), verb)
    return Command(verb, opts)


def _parse_factor(text, spec, verb):
    if text is None:
        return None
    if text.strip().lower() == "none":
        if verb != "thm3":
            raise UsageError("--factor none only applies to thm3")
        return "none"
    try:
        i = int(text)
    except ValueError:
        raise UsageError(f"--factor expects an index or 'none', got {text!r}") from None
    if not 0 <= i < len(spec.orders):
        raise UsageError(f"--factor {i} is out of range for {spec}")
    return FactorChoice.for_factor(spec, i)


def _connection_set(opts) -> ConnectionSet:
    return validate_connection_set(opts["group"], opts["set"])


def _graph(opts) -> Graph:
    if opts.get("graph") is not None:
        return read_graph(opts["graph"])
    return build_cayley_graph(_connection_set(opts))


def _maybe_write(opts, g: Graph, lines: list[str]) -> None:
    if opts.get("out"):
        write_graph(g, opts["out"])
        lines.append(f"WROTE {opts['out']}")


def _action_lines(g: Graph, action) -> list[str]:
    lines = action.report_lines()
    if not verify_action(g, action):
        raise InternalVerificationFailed("constructed action failed verification")
    lines.append("VERIFIED regular")
    return lines


def _run_build(opts) -> tuple[int, list[str]]:
    g = build_cayley_graph(_connection_set(opts))
    if opts.get("out"):
        write_graph(g, opts["out"])
        return EXIT_OK, [f"GRAPH {g.digest()}", f"VERTICES {g.n} EDGES {g.edge_count}", f"WROTE {opts['out']}"]
    return EXIT_OK, to_text(g).splitlines()


def _run_thm2(opts):
    s = _connection_set(opts)
    choice = opts.get("factor")
    if choice is None:
        choices = split_choices(s.spec)
        if not choices:
            raise UsageError(f"{s.spec} has no factor of even order")
        choice = choices[0]
    action = thm2_construct(s, choice)
    lines = [f"FACTOR {choice.index} K {choice.k}"] + _action_lines(action.graph, action)
    _maybe_write(opts, action.graph, lines)
    return EXIT_OK, lines


def _run_corollary(opts):
    s = _connection_set(opts)
    lines = []
    reps = corollary_representations(s)
    for choice, action in reps:
        lines.append(f"FACTOR {choice.index} K {choice.k}")
        lines += _action_lines(action.graph, action)
    _maybe_write(opts, reps[0][1].graph, lines)
    return EXIT_OK, lines


def _thm3_instance(spec, factor) -> Thm3Instance:
    return Thm3Instance(spec, None if factor in (None, "none") else factor)


def _run_thm3(opts):
    s = _connection_set(opts)
    inst = _thm3_instance(s.spec, opts.get("factor"))
    lines = [f"K {inst.k}", f"C {inst.c}"]
    if opts.get("all_witnesses"):
        ws = thm3_all_witnesses(inst, s)
        lines.append(f"WITNESSES {len(ws)}")
        lines += [f"WITNESS {w}" for w in ws]
    y = thm3_find_y(inst, s)
    if y is None:
        lines.append("WITNESS none")
        return EXIT_OK, lines
    lines.append(f"USING {y}" if opts.get("all_witnesses") else f"WITNESS {y}")
    action = thm3_construct(Thm3Instance(inst.dihedral_spec, inst.factor, y), s)
    lines += _action_lines(action.graph, action)
    _maybe_write(opts, action.graph, lines)
    return EXIT_OK, lines


def _run_autgrp(opts):
    g = _graph(opts)
    aut = automorphism_group(g)
    lines = [f"GRAPH {aut.graph_hash}", f"VERTICES {g.n} EDGES {g.edge_count}", f"AUT ORDER {aut.aut_order}"]
    _maybe_write(opts, g, lines)
    return EXIT_OK, lines


def _run_regular(opts):
    g = _graph(opts)
    lines = format_report(g, enumerate_regular_subgroups(g)).splitlines()
    _maybe_write(opts, g, lines)
    return EXIT_OK, lines


def _constructions(s: ConnectionSet):
    spec = s.spec
    if spec.is_dihedral:
        options = [None] + [FactorChoice.for_factor(spec, i) for i, n in enumerate(spec.orders) if n % 2 == 0]
        for f in options:
            inst = Thm3Instance(spec, f)
            y = thm3_find_y(inst, s)
            label = f"thm3 factor {'none' if f is None else f.index}"
            if y is None:
                yield label, None
            else:
                yield label, thm3_construct(Thm3Instance(spec, f, y), s)
    else:
        for choice in split_choices(spec):
            yield f"thm2 factor {choice.index}", thm2_construct(s, choice)


def _run_verify(opts):
    s = _connection_set(opts)
    g = build_cayley_graph(s)
    report = enumerate_regular_subgroups(g)
    sets = report.element_sets()
    lines = [f"GRAPH {g.digest()}", f"AUT ORDER {report.aut.aut_order}", f"REGULAR SUBGROUPS {len(sets)}"]
    missing = 0
    for label, action in _constructions(s):
        if action is None:
            lines.append(f"CHECK {label} no-witness")
            continue
        ok = action.group.element_set() in sets
        missing += not ok
        lines.append(f"CHECK {label} {action.nominal} {'found' if ok else 'MISSING'}")
    lines.append(f"MISSING {missing}")
    return (EXIT_FAIL if missing else EXIT_OK), lines


def counterexample_graph() -> Graph:
    spec = gc.parse_group(COUNTEREXAMPLE_GROUP)
    return build_cayley_graph(validate_connection_set(spec, gc.parse_element_list(COUNTEREXAMPLE_SET, spec)))


def _run_counterexample(opts):
    g = counterexample_graph()
    report = enumerate_regular_subgroups(g)
    lines = format_report(g, report).splitlines()
    _maybe_write(opts, g, lines)
    types = [str(r.group_type) for r in report.subgroups]
    if types != [COUNTEREXAMPLE_GROUP]:
        lines.append(f"MISMATCH expected one regular subgroup of type {COUNTEREXAMPLE_GROUP}")
        return EXIT_FAIL, lines
    return EXIT_OK, lines


_RUNNERS = {
    "build": _run_build,
    "thm2": _run_thm2,
    "corollary": _run_corollary,
    "thm3": _run_thm3,
    "autgrp": _run_autgrp,
    "regular": _run_regular,
    "verify": _run_verify,
    "counterexample": _run_counterexample,
}


def run(cmd: Command) -> tuple[int, str]:
    """Execute ``cmd``; returns the exit code and the report text."""
    try:
        code, lines = _RUNNERS[cmd.verb](cmd.options)
    except (CapExceeded, TooLarge) as exc:
        return EXIT_CAP, f"ERROR resource cap: {exc}\n"
    except (UsageError, IdentityInSet, NotInverseClosed, MismatchedSpec, OddOrder, OddOrderFactor) as exc:
        # bad input that only shows up once the group is known
        return EXIT_USAGE, f"ERROR usage: {exc}\n"
    except OSError as exc:
        return EXIT_USAGE, f"ERROR usage: {exc}\n"
    except CayleyDihError as exc:
        return EXIT_FAIL, f"ERROR {type(exc).__name__}: {exc}\n"
    return code, "\n".join(lines) + "\n"


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        cmd = parse_inputs(argv)
    except UsageError as exc:
        sys.stderr.write(f"cayleydih: usage error at {exc}\n")
        return EXIT_USAGE
    code, text = run(cmd)
    (sys.stderr if text.startswith("ERROR") else sys.stdout).write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
