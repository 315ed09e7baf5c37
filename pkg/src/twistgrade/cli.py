"""Command line front end.

Exit codes: 0 success, 1 a mathematical check failed, 2 bad input.
Specs are JSON file paths or ``bundled:NAME`` (see ``twistgrade bundled``).
"""

from __future__ import annotations

import json
import random
import sys
import time
from importlib.metadata import PackageNotFoundError, version

import click

from . import specs
from .cocycle import CocycleError
from .generic_center import exponent_lattice, rank_of_Yf, torsion_of_Y, uv_quotient
from .graded_identities import (GradedPolynomial, IdentityError, ResourceCapError, compute_mu,
                                decide_identity, enumerate_E,
                                homogeneous_decomposition, identity_from_pair,
                                random_elementary_identity, reduce_to_generators)
from .group_core import GroupError, abelian_invariants
from .lambda_recognition import is_on_lambda, verify_component
from .literals import LiteralError
from .scalars import root_order
from .standard_form import (DegenerateCocycleError, StandardFormError, perturb_cocycle, standardize,
                            verify_relations, witness_generating_set)

INPUT_ERRORS = (specs.SpecError, GroupError, CocycleError, LiteralError, IdentityError,
                StandardFormError, KeyError, TypeError, ValueError)


def _version() -> str:
    try:
        return version("artifact")
    except PackageNotFoundError:
        return "unknown"


class Failure(Exception):
    """A mathematical check failed; carries the partial results."""

    def __init__(self, results, message):
        super().__init__(message)
        self.results = results


def _text(obj, indent=0) -> list[str]:
    pad = "  " * indent
    if isinstance(obj, dict):
        out = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                out.append(f"{pad}{k}:")
                out.extend(_text(v, indent + 1))
            else:
                out.append(f"{pad}{k}: {json.dumps(v) if isinstance(v, (dict, list)) else v}")
        return out
    if isinstance(obj, list):
        out = []
        for v in obj:
            if isinstance(v, (dict, list)):
                out.append(f"{pad}-")
                out.extend(_text(v, indent + 1))
            else:
                out.append(f"{pad}- {v}")
        return out
    return [f"{pad}{obj}"]


def _emit(ctx, command, inputs, results, started, status, message=None):
    report = {"command": command,
              "inputs": {k: specs.digest(v) for k, v in inputs.items()},
              "version": _version(),
              "status": status,
              "results": results}
    if message:
        report["message"] = message
    if ctx.obj["timing"]:
        report["timing_seconds"] = round(time.perf_counter() - started, 4)
    if ctx.obj["output"] == "json":
        click.echo(json.dumps(report, indent=2))
    else:
        click.echo("\n".join(_text(report)))


def _run(ctx, command, inputs, body):
    """Run body() and map outcomes onto the report and exit code."""
    started = time.perf_counter()
    try:
        results = body()
    except Failure as exc:
        _emit(ctx, command, inputs, exc.results, started, "failed", str(exc))
        ctx.exit(1)
    except DegenerateCocycleError as exc:
        _emit(ctx, command, inputs, {}, started, "failed", f"degenerate cocycle: {exc}")
        ctx.exit(1)
    except ResourceCapError as exc:
        _emit(ctx, command, inputs, {}, started, "failed", f"resource cap reached: {exc}")
        ctx.exit(1)
    except INPUT_ERRORS as exc:
        msg = exc.args[0] if exc.args else repr(exc)
        click.echo(f"input error: {msg}", err=True)
        ctx.exit(2)
    _emit(ctx, command, inputs, results, started, "ok")


@click.group()
@click.option("--output", type=click.Choice(["json", "text"]), default="json", show_default=True)
@click.option("--seed", type=int, default=0, show_default=True, help="Seed for randomized commands.")
@click.option("--parallel", type=int, default=1, show_default=True,
              help="Worker processes for enumerations.")
@click.option("--timing", is_flag=True, help="Add wall-clock time to the report.")
@click.version_option(_version(), prog_name="twistgrade")
@click.pass_context
def main(ctx, output, seed, parallel, timing):
    """Twisted group algebras, graded identities and standard forms of cocycles."""
    ctx.obj = {"output": output, "seed": seed, "parallel": parallel, "timing": timing}


@main.command("bundled")
@click.pass_context
def cmd_bundled(ctx):
    """List the bundled group and cocycle specs."""
    def body():
        out = {}
        for name in specs.bundled_names():
            doc = specs.load_document(specs.BUNDLED_PREFIX + name)
            out[name] = {"description": doc.get("description", ""), "has_cocycle": "cocycle" in doc}
        return out
    _run(ctx, "bundled", {}, body)


@main.command("validate")
@click.argument("group")
@click.argument("cocycle")
@click.pass_context
def cmd_validate(ctx, group, cocycle):
    """Check the cocycle identity and nondegeneracy."""
    def body():
        G = specs.load_group(group)
        c = specs.load_cocycle(cocycle, G)
        rep = c.validate()
        nondeg, wit = c.is_nondegenerate()
        res = {"group_order": G.order, "conductor": c.conductor,
               "validation": rep.to_json(G), "nondegenerate": nondeg,
               "degenerate_elements": [G.name(g) for g, h in wit.items() if h is None]}
        if not rep.ok:
            raise Failure(res, "cocycle identity fails")
        return res
    _run(ctx, "validate", {"group": group, "cocycle": cocycle}, body)


@main.command("identity")
@click.argument("group")
@click.argument("cocycle")
@click.argument("polynomial")
@click.option("--power", type=int, default=1, show_default=True, help="Decide the given power of the polynomial.")
@click.pass_context
def cmd_identity(ctx, group, cocycle, polynomial, power):
    """Decide whether POLYNOMIAL, e.g. "x(1,a)*x(1,b) + x(1,b)*x(1,a)", is a graded identity."""
    def body():
        G = specs.load_group(group)
        c = specs.load_cocycle(cocycle, G)
        p = GradedPolynomial.parse(polynomial, G) ** power
        comps = homogeneous_decomposition(p, G)
        return {"identity": decide_identity(p, c), "terms": len(p.terms),
                "homogeneous_components": len(comps),
                "component_identities": [decide_identity(q, c) for q in comps]}
    _run(ctx, "identity", {"group": group, "cocycle": cocycle}, body)


@main.command("verify-example")
@click.option("--omega-power", type=click.Choice(["1", "2"]), default="1", show_default=True,
              help="Use omega or omega^2 in f.")
@click.option("--trivial-cocycle", is_flag=True, help="Replace the cocycle by the trivial one.")
@click.pass_context
def cmd_verify_example(ctx, omega_power, trivial_cocycle):
    """Reproduce the S3 x| C6 example end to end."""
    from .cocycle import Cocycle
    from .worked_example import load_example, run_example

    def body():
        G, c = load_example()
        if trivial_cocycle:
            c = Cocycle.trivial(G)
        checks = run_example(c, int(omega_power))
        res = {"checks": [ch.to_json() for ch in checks]}
        bad = [ch.name for ch in checks if not ch.ok]
        if bad:
            raise Failure(res, "failed: " + "; ".join(bad))
        return res
    _run(ctx, "verify-example", {"example": "bundled:s3c6"}, body)


@main.command("lambda")
@click.argument("group")
@click.pass_context
def cmd_lambda(ctx, group):
    """Decide membership in the list and print generator witnesses."""
    def body():
        G = specs.load_group(group)
        w = is_on_lambda(G)
        res = w.to_json(G)
        problems = {str(p): verify_component(G, comp) for p, comp in w.primes.items() if comp.on_list}
        res["witness_problems"] = {k: v for k, v in problems.items() if v}
        if res["witness_problems"]:
            raise Failure(res, "a witness fails its relations")
        return res
    _run(ctx, "lambda", {"group": group}, body)


@main.command("standardize")
@click.argument("group")
@click.argument("cocycle")
@click.pass_context
def cmd_standardize(ctx, group, cocycle):
    """Find generators in which the cocycle takes its standard form."""
    def body():
        G = specs.load_group(group)
        c = specs.load_cocycle(cocycle, G)
        result = standardize(c, witness_generating_set(G))
        res = result.to_json(G)
        if not verify_relations(result, c).ok:
            raise Failure(res, "relations fail after standardization")
        return res
    _run(ctx, "standardize", {"group": group, "cocycle": cocycle}, body)


@main.command("perturb")
@click.argument("group")
@click.argument("cocycle")
@click.pass_context
def cmd_perturb(ctx, group, cocycle):
    """Print a cocycle spec pushed along a random automorphism and twisted by a coboundary."""
    def body():
        G = specs.load_group(group)
        c = specs.load_cocycle(cocycle, G)
        gs = witness_generating_set(G) if G.order > 1 else None
        gens = gs.element_list() if gs and gs.names else G.generating_set()
        c2, phi = perturb_cocycle(c, gens, random.Random(ctx.obj["seed"]))
        doc = specs.load_document(group)
        return {"group": doc.get("group", doc), "cocycle": {"values": c2.values_json()},
                "automorphism_images": {G.name(g): G.name(phi[g]) for g in gens}}
    _run(ctx, "perturb", {"group": group, "cocycle": cocycle}, body)


@main.command("lattice")
@click.argument("group")
@click.argument("cocycle")
@click.option("--full", is_flag=True, help="Use every pair (g,h) instead of h in a generating set.")
@click.option("--rows", is_flag=True, help="Include the exponent rows.")
@click.pass_context
def cmd_lattice(ctx, group, cocycle, full, rows):
    """Rank and torsion of the generic cocycle's value group, and V/U."""
    def body():
        G = specs.load_group(group)
        c = specs.load_cocycle(cocycle, G)
        rank = rank_of_Yf(c, full)
        uv = uv_quotient(G, full)
        ab = [d for d in abelian_invariants(G) if d != 1]
        res = {"group_order": G.order, "rank": rank, "rank_equals_order": rank == G.order,
               "torsion": torsion_of_Y(c, full).to_json(), "uv_quotient": uv,
               "abelian_invariants": ab, "uv_matches_abelianization": sorted(uv) == sorted(ab)}
        if rows:
            res["lattice"] = exponent_lattice(c, full).to_json()
        if not (res["rank_equals_order"] and res["uv_matches_abelianization"]):
            raise Failure(res, "lattice checks failed")
        return res
    _run(ctx, "lattice", {"group": group, "cocycle": cocycle}, body)


@main.command("mu")
@click.argument("group")
@click.argument("cocycle")
@click.option("--max-len", type=int, default=None, help="Longest word length to search.")
@click.option("--max-words", type=int, default=30_000_000, show_default=True)
@click.pass_context
def cmd_mu(ctx, group, cocycle, max_len, max_words):
    """Group of coefficients of elementary identities, compared with the torsion of Y."""
    def body():
        G = specs.load_group(group)
        c = specs.load_cocycle(cocycle, G)
        mu = compute_mu(c, max_len=max_len, max_words=max_words)
        tor = torsion_of_Y(c)
        res = {"mu": mu.to_json(), "torsion": tor.to_json(), "agree": mu.order == tor.order}
        if not res["agree"]:
            raise Failure(res, "mu and the torsion of Y differ")
        return res
    _run(ctx, "mu", {"group": group, "cocycle": cocycle}, body)


def _parse_monomial(text, G):
    p = GradedPolynomial.parse(text, G)
    if len(p.terms) != 1:
        raise IdentityError(f"{text!r} is not a single monomial")
    (m, a), = p.terms.items()
    return m


@main.command("reduce")
@click.argument("group")
@click.argument("cocycle")
@click.option("--z1", help="First monomial, e.g. x(1,a)*x(1,b)*x(1,a).")
@click.option("--z2", help="A congruent rearrangement of z1.")
@click.option("--random-length", type=int, default=None, help="Reduce a seeded random identity of this length.")
@click.option("--max-index", type=int, default=2, show_default=True, help="Index range for random identities.")
@click.pass_context
def cmd_reduce(ctx, group, cocycle, z1, z2, random_length, max_index):
    """Express an elementary identity through identities of length <= ord(G)."""
    def body():
        G = specs.load_group(group)
        c = specs.load_cocycle(cocycle, G)
        if random_length is not None:
            B = random_elementary_identity(c, random_length, max_index, random.Random(ctx.obj["seed"]))
        elif z1 and z2:
            B = identity_from_pair(_parse_monomial(z1, G), _parse_monomial(z2, G), c)
        else:
            raise IdentityError("give --z1 and --z2, or --random-length")
        cert = reduce_to_generators(B, c)
        ok, problems = cert.verify(c)
        res = {"identity": B.to_json(G), "certificate": cert.to_json(G),
               "verified": ok, "problems": problems}
        if not ok:
            raise Failure(res, "certificate does not verify")
        return res
    _run(ctx, "reduce", {"group": group, "cocycle": cocycle}, body)


@main.command("enumerate-e")
@click.argument("group")
@click.argument("cocycle")
@click.option("--max-len", type=int, default=None, help="Longest monomial (default ord(G)).")
@click.option("--max-index", type=int, default=None, help="Largest variable index (default ord(G)).")
@click.option("--limit", type=int, default=100_000, show_default=True, help="Stop with an error beyond this many.")
@click.option("--show", type=int, default=20, show_default=True, help="How many identities to print.")
@click.pass_context
def cmd_enumerate_e(ctx, group, cocycle, max_len, max_index, limit, show):
    """Enumerate elementary identities up to index renaming."""
    def body():
        G = specs.load_group(group)
        c = specs.load_cocycle(cocycle, G)
        count, shown, orders = 0, [], set()
        by_len: dict = {}
        for B in enumerate_E(c, max_len, max_index, limit, workers=ctx.obj["parallel"]):
            count += 1
            by_len[len(B)] = by_len.get(len(B), 0) + 1
            orders.add(root_order(B.coefficient))
            if len(shown) < show:
                shown.append(B.render(G))
        bad = [o for o in orders if G.order % o]
        res = {"count": count, "by_length": {str(k): v for k, v in sorted(by_len.items())},
               "coefficient_orders": sorted(orders), "examples": shown,
               "coefficients_are_ordG_roots": not bad}
        if bad:
            raise Failure(res, "a coefficient is not an ord(G)-th root of unity")
        return res
    _run(ctx, "enumerate-e", {"group": group, "cocycle": cocycle}, body)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
