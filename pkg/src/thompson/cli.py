"""Command-line front end: ``thompson <command> [options]``.

Every command takes ``--json`` for a machine-readable report. Exact values are
passed as strings ("3/4", "5/2^4", "1/3"); float literals are refused.

Exit codes: 0 success, 2 parse error, 3 resource cap exceeded, 4 insufficient
computed radius, 5 other precondition failure.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import asdict, dataclass, field

from . import analysis, cayley, constructions, element, graphs, schreier, serialize
from .dyadic import format_number, parse_number, parse_set
from .element import SchemaError

EXIT_OK, EXIT_PARSE, EXIT_RESOURCE, EXIT_RADIUS, EXIT_PRECONDITION = 0, 2, 3, 4, 5


class ParseError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    command: str
    params: dict = field(default_factory=dict)
    out: str | None = None
    max_vertices: int | None = None
    json: bool = False


@dataclass
class RunReport:
    command: str
    config: dict
    result: dict
    timing_seconds: float = 0.0
    seed: int | None = None
    artifact: str | None = field(default=None, repr=False)

    def payload(self) -> dict:
        d = asdict(self)
        d.pop("artifact")
        return d


def _number(text):
    try:
        return parse_number(text)
    except ValueError as e:
        raise ParseError(str(e)) from None


def _numbers(text):
    try:
        return parse_set(text or "")
    except ValueError as e:
        raise ParseError(str(e)) from None


def _word(text):
    try:
        return cayley.parse_word(text)
    except ValueError as e:
        raise ParseError(str(e)) from None


def _words(text):
    return [_word(t) for t in text.split(";") if t.strip()]


def _oracle(kind, params):
    if kind not in schreier.ORACLE_KINDS:
        raise ParseError(f"unknown oracle {kind!r}")
    if kind == "point_stab":
        return schreier.make_oracle(kind, _number(params["point"]))
    if kind in ("tuple_stab", "germ_stab", "germ_stab_commutator"):
        return schreier.make_oracle(kind, _numbers(params.get("set") or ""))
    if kind == "cyclic":
        return schreier.make_oracle(kind, cayley.eval_word(_word(params["element"])))
    return schreier.make_oracle(kind)


def build_graph(text: str, radius: int, max_vertices=None):
    """Graph from a description: "cayley", "orbit:P", "coset:KIND[:DATA]"."""
    head, _, rest = text.partition(":")
    if head == "cayley":
        return cayley.cayley_ball(radius, max_vertices).graph
    if head == "orbit":
        return schreier.orbital_ball(_number(rest), radius, max_vertices)
    if head == "coset":
        kind, _, data = rest.partition(":")
        params = {"point": data, "set": data, "element": data}
        return schreier.coset_ball(_oracle(kind, params), radius, use_key=True,
                                   max_vertices=max_vertices)
    raise ParseError(f"bad graph description {text!r}; use cayley, orbit:P or coset:KIND[:DATA]")


def _artifact_for(path, obj):
    if path is None:
        return None
    if path.endswith(".dot"):
        return graphs.to_dot(obj)
    if path.endswith(".csv"):
        return analysis.table_to_csv(obj)
    return serialize.dumps(obj).decode() + "\n"


# commands: each returns (result dict, artifact object or None, seed)


def cmd_relations_check(p, cfg):
    X0, X1, inv, mul = element.X0, element.X1, element.inverse, element.mul
    a = mul(X0, inv(X1))
    b = mul(mul(inv(X0), X1), X0)
    c = mul(mul(element.power(X0, -2), X1), element.power(X0, 2))
    r1 = element.commutator(a, b).is_identity()
    r2 = element.commutator(a, c).is_identity()
    msg = "both relators = identity" if r1 and r2 else "relator check FAILED"
    return {"relator_1_identity": r1, "relator_2_identity": r2, "message": msg}, None, None


def cmd_cayley_ball(p, cfg):
    ball = cayley.cayley_ball(int(p["radius"]), cfg.max_vertices)
    g = ball.graph
    sizes = [sum(1 for d in g.dist if d <= n) for n in range(ball.radius + 1)]
    return {"radius": ball.radius, "ball_sizes": sizes, "edges": sum(1 for _ in g.edges())}, g, None


def cmd_orbit_graph(p, cfg):
    g = schreier.orbital_ball(_number(p["point"]), int(p["radius"]), cfg.max_vertices)
    return {"point": p["point"], "radius": g.radius_computed, "vertex_count": len(g),
            "vertices": [format_number(v) for v in g.payloads]}, g, None


def cmd_coset_graph(p, cfg):
    H = _oracle(p["oracle"], p)
    g = schreier.coset_ball(H, int(p["radius"]), use_key=bool(p.get("use_key")),
                            max_vertices=cfg.max_vertices)
    return {"oracle": H.name, "radius": g.radius_computed, "vertex_count": len(g)}, g, None


def cmd_chabauty(p, cfg):
    n = int(p["max_radius"])
    g1 = build_graph(p["left"], n, cfg.max_vertices)
    g2 = build_graph(p["right"], n, cfg.max_vertices)
    d = schreier.chabauty_distance(g1, g2, n)
    return {"left": p["left"], "right": p["right"], "distance": str(d),
            "witness_radius": d.witness_radius, "exact": d.exact}, None, None


def cmd_cayley_fragments(p, cfg):
    n = int(p["n"])
    g = build_graph(p["graph"], int(p["radius"]), cfg.max_vertices)
    found = schreier.cayley_fragment_search(g, n, induced=bool(p.get("induced")))
    labels = [format_number(g.payloads[v]) if g.kind == "point" else v for v in found]
    return {"graph": p["graph"], "n": n, "count": len(found), "vertices": labels}, None, None


def cmd_confine_build(p, cfg):
    cs = constructions.build_confining_set(_numbers(p["set"]))
    return {"target": cs.target, "supports": [str(iv) for iv in cs.supports],
            "elements": [element.to_json_obj(g) for g in cs.elements]}, None, None


def cmd_confine_verify(p, cfg):
    S = _numbers(p.get("set") or "")
    H = _oracle(p.get("oracle") or "germ_stab_commutator", p)
    if p.get("elements"):
        P = [cayley.eval_word(w) for w in _words(p["elements"])]
    else:
        P = constructions.build_confining_set(S).elements
    radius = int(p["radius"])
    rep = constructions.verify_confining(H, P, radius)
    result = {"oracle": H.name, "radius": radius, "passed": rep.passed,
              "conjugators_checked": rep.conjugators_checked,
              "witness": rep.witness_word, "note": rep.note}
    if not p.get("elements"):
        ph = constructions.pigeonhole_check(S, P, radius)
        result["pigeonhole_passed"] = ph.passed
    return result, None, None


def cmd_lemma_chain(p, cfg):
    words = _words(p["words"])
    chain = constructions.lemma_interval_chain([cayley.eval_word(w) for w in words])
    return {"order": [cayley.format_word(words[i]) for i in chain.order],
            "inverted": chain.inverted,
            "intervals": [str(u) for u in chain.intervals],
            "images": [str(u) for u in chain.images()],
            "valid": chain.is_valid()}, None, None


def cmd_push_left(p, cfg):
    S = _numbers(p["set"])
    loc = analysis.push_left_locality(S)
    return {"k": loc["k"], "images": [format_number(t) for t in loc["points"]],
            "x1_fixes_images": loc["x1_fixes"]}, None, None


def cmd_germ_check(p, cfg):
    S = _numbers(p["set"])
    seed = int(p.get("seed") or 0)
    rng = random.Random(seed)
    count, length = int(p.get("samples") or 200), int(p.get("length") or 8)
    samples = [cayley.eval_word(cayley.random_word(rng, rng.randint(0, length))) for _ in range(count)]
    rep = constructions.germ_identity_check(S, samples)
    return {"points": [format_number(s) for s in rep.points], "samples": count,
            "agree": rep.all_agree,
            "members": sum(r.in_commutator_germ_stab for r in rep.rows)}, None, seed


def cmd_growth(p, cfg):
    max_n = int(p["max_radius"])
    depth = int(p.get("depth") or max_n + 2)
    seed = int(p.get("seed") or 0)
    g = schreier.orbital_ball(_number(p["point"]), depth, cfg.max_vertices)
    roots = analysis.sample_roots(g, int(p.get("sample_roots") or 1), max_n, seed)
    table = analysis.growth_table(g, roots, max_n, graph_id=f"orbit:{p['point']}")
    est = analysis.uniform_growth_estimate(table)
    return {"point": p["point"], "uniform_lower_bound": table.uniform(),
            "sampled_roots": table.root_labels, "fitted_rate": est.fitted_rate,
            "r_squared": est.r_squared, "classification": est.classification,
            "window": list(est.window)}, table, seed


def cmd_displacement(p, cfg):
    w = _word(p["word"])
    radius = int(p.get("radius") or 12)
    g = schreier.orbital_ball(_number(p["point"]), radius, cfg.max_vertices)
    rep = analysis.displacement(w, g)
    return {"word": rep.word, "word_length": len(w), "max_observed": rep.max_observed,
            "vertices_checked": rep.vertices_checked,
            "vertices_skipped": rep.vertices_skipped}, None, None


def cmd_foelner(p, cfg):
    text = p["set"]
    if not text.startswith("ball:"):
        raise ParseError("--set must look like ball:K")
    k = int(text[5:])
    radius = int(p.get("radius") or k + 1)
    g = schreier.orbital_ball(_number(p["point"]), radius, cfg.max_vertices)
    S = analysis.ball_vertices(g, g.root, k)
    r = analysis.foelner_ratio(g, S)
    return {"point": p["point"], "set": text, "size": len(S),
            "ratio": f"{r.numerator}/{r.denominator}"}, None, None


COMMANDS = {
    "relations-check": cmd_relations_check,
    "cayley-ball": cmd_cayley_ball,
    "orbit-graph": cmd_orbit_graph,
    "coset-graph": cmd_coset_graph,
    "chabauty": cmd_chabauty,
    "cayley-fragments": cmd_cayley_fragments,
    "confine-build": cmd_confine_build,
    "confine-verify": cmd_confine_verify,
    "lemma-chain": cmd_lemma_chain,
    "push-left": cmd_push_left,
    "germ-check": cmd_germ_check,
    "growth": cmd_growth,
    "displacement": cmd_displacement,
    "foelner": cmd_foelner,
}


def run(config: ExperimentConfig) -> RunReport:
    """Dispatch one command; writes ``config.out`` atomically when given."""
    fn = COMMANDS[config.command]
    t0 = time.perf_counter()
    result, obj, seed = fn(config.params, config)
    elapsed = time.perf_counter() - t0
    artifact = None
    if obj is not None:
        if config.out:
            artifact = _artifact_for(config.out, obj)
            serialize.write_atomic(config.out, artifact)
        elif isinstance(obj, graphs.RootedLabelledGraph):
            artifact = graphs.to_dot(obj)
    cfg = {"params": dict(config.params), "out": config.out}
    return RunReport(config.command, cfg, result, round(elapsed, 6), seed, artifact)


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="thompson", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, *opts, graph_out=False):
        sp = sub.add_parser(name)
        for flag, kw in opts:
            sp.add_argument(flag, **kw)
        sp.add_argument("--json", action="store_true", help="machine-readable report")
        sp.add_argument("--max-vertices", type=int, default=None)
        if graph_out:
            sp.add_argument("--out", default=None, help="output file (.dot, .json or .csv)")
        return sp

    req = {"required": True}
    add("relations-check")
    add("cayley-ball", ("--radius", {"type": int, **req}), graph_out=True)
    add("orbit-graph", ("--point", req), ("--radius", {"type": int, **req}), graph_out=True)
    add("coset-graph", ("--oracle", {"choices": schreier.ORACLE_KINDS, **req}),
        ("--set", {}), ("--point", {}), ("--element", {}),
        ("--radius", {"type": int, **req}), ("--use-key", {"action": "store_true"}),
        graph_out=True)
    add("chabauty", ("--left", req), ("--right", req), ("--max-radius", {"type": int, **req}))
    add("cayley-fragments", ("--graph", req), ("--radius", {"type": int, **req}),
        ("--n", {"type": int, **req}), ("--induced", {"action": "store_true"}))
    add("confine-build", ("--set", req))
    add("confine-verify", ("--oracle", {"default": "germ_stab_commutator"}), ("--set", {"default": ""}),
        ("--point", {}), ("--element", {}), ("--elements", {}),
        ("--radius", {"type": int, **req}))
    add("lemma-chain", ("--words", req))
    add("push-left", ("--set", req))
    add("germ-check", ("--set", req), ("--samples", {"type": int, "default": 200}),
        ("--length", {"type": int, "default": 8}), ("--seed", {"type": int, "default": 0}))
    add("growth", ("--point", req), ("--max-radius", {"type": int, **req}),
        ("--sample-roots", {"type": int, "default": 1}), ("--depth", {"type": int}),
        ("--seed", {"type": int, "default": 0}), graph_out=True)
    add("displacement", ("--word", req), ("--point", req), ("--radius", {"type": int, "default": 12}))
    add("foelner", ("--point", req), ("--set", req), ("--radius", {"type": int}))
    return parser


def _human(report: RunReport) -> str:
    lines = [f"{report.command}:"]
    for k, v in report.result.items():
        if isinstance(v, list) and len(v) > 20:
            v = f"[{len(v)} items]"
        lines.append(f"  {k}: {v}")
    return "\n".join(lines)


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    params = {k: v for k, v in vars(args).items()
              if k not in ("command", "json", "max_vertices", "out") and v is not None}
    params = {k: (str(v) if not isinstance(v, bool) else v) for k, v in params.items()}
    config = ExperimentConfig(args.command, params, getattr(args, "out", None),
                              args.max_vertices, args.json)
    try:
        report = run(config)
    except (ParseError, SchemaError) as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except graphs.ResourceError as e:
        print(f"resource cap exceeded: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except graphs.InsufficientRadius as e:
        print(f"insufficient computed radius: {e}", file=sys.stderr)
        return EXIT_RADIUS
    except (ValueError, KeyError) as e:
        print(f"precondition failed: {e}", file=sys.stderr)
        return EXIT_PRECONDITION
    if args.json:
        print(json.dumps(report.payload(), sort_keys=True, default=str))
    elif report.artifact is not None and not config.out:
        sys.stdout.write(report.artifact)
    else:
        print(_human(report))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
