"""Command-line front end.

Usage pattern: ``iwk --datum preset:GL2 <command> [flags]``.  Output is byte
deterministic; ``--format json`` emits canonical JSON documents, ``--format
table`` aligned text.  Exit status: 0 success, 1 computation error (with a
machine-readable code on stderr), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import emit
from .admissible import (
    adm,
    adm_K,
    adm_very_special,
    closure_poset,
    k_adm,
    tau_of,
    very_special_levels,
)
from .errors import IwkError, err
from .iwahori_weyl import element_from_obj, length, affine_gens
from .levi import find_path, i_mu_b_m, levi_of_newton, minuscule_dominant_rep
from .oracles import admissible_suite, bruhat_suite, length_suite, snf_suite
from .root_datum import PRESETS, build_datum, load_datum_file, preset_names
from .sigma_conj import b_g_mu, newton, straight_elements
from .strata import component_report, kr_basic_flag, strata_table, supp_sigma


def load_datum(spec: str):
    if spec.startswith("preset:"):
        name = spec[len("preset:"):]
        if name in PRESETS:
            return build_datum(name)
        preset_dir = os.environ.get("IWK_PRESET_DIR")
        if preset_dir:
            path = os.path.join(preset_dir, name + ".json")
            if os.path.exists(path):
                return load_datum_file(path)
        raise err("DATUM_ERROR", f"unknown preset {name!r}")
    if os.path.exists(spec):
        return load_datum_file(spec)
    raise err("DATUM_ERROR", f"datum spec {spec!r} is neither preset:NAME nor a file")


def parse_mu(datum, text: str):
    free, _, tors = text.partition(";")
    try:
        head = [int(t) for t in free.split(",")] if free else []
        tail = [int(t) for t in tors.split(",")] if tors else []
    except ValueError:
        raise err("USAGE", f"--mu {text!r}: coordinates must be integers")
    fr = datum.lattice.free_rank
    nt = len(datum.lattice.torsion)
    if len(head) != fr or len(tail) not in (0, nt):
        raise err("USAGE",
                  f"--mu {text!r}: expected {fr} free coordinates"
                  + (f" and optionally {nt} torsion coordinates" if nt else ""))
    return datum.lattice.reduce(tuple(head) + tuple(tail) + (0,) * (nt - len(tail)))


def parse_level(datum, text: str):
    if text == "iwahori":
        return ()
    if text == "very-special":
        levels = very_special_levels(datum)
        if not levels:
            raise err("NOT_VERY_SPECIAL", "datum has no twist-stable very special level")
        return levels[0]
    if text.startswith("K="):
        body = text[2:]
        try:
            k = tuple(sorted({int(t) for t in body.split(",")})) if body else ()
        except ValueError:
            raise err("USAGE", f"--level {text!r}: indices must be integers")
        n = len(affine_gens(datum))
        if any(i < 0 or i >= n for i in k):
            raise err("USAGE", f"--level {text!r}: indices must lie in [0,{n})")
        return k
    raise err("USAGE", f"--level {text!r}: expected iwahori, very-special or K=i,j,...")


def bgmu_rows(datum, mu):
    rows = []
    for e in b_g_mu(datum, mu):
        rows.append({
            "kappa": list(e.invariants.kottwitz),
            "newton": emit.frac_list(e.invariants.newton),
            "basic": e.invariants.is_basic,
            "witness": emit.element_row(datum, e.witness),
        })
    return rows


def _entry_for(datum, mu, index: int):
    entries = b_g_mu(datum, mu)
    if not 0 <= index < len(entries):
        raise err("USAGE", f"--entry {index}: index out of range [0,{len(entries)})")
    return entries[index]


def build_parser():
    p = argparse.ArgumentParser(
        prog="iwk",
        description="Exact Iwahori-Weyl combinatorics: admissible sets, "
                    "twisted-conjugacy invariants, stratum reports.")
    p.add_argument("--datum", default=None,
                   help="preset:NAME or a path to a datum spec JSON file")
    sub = p.add_subparsers(dest="command", required=True)

    def cmd(name, **kw):
        sp = sub.add_parser(name, **kw)
        sp.add_argument("--format", choices=("table", "json", "dot"), default="table")
        return sp

    cmd("presets", help="list built-in datum presets")
    for name in ("adm", "tau", "bgmu", "straight"):
        sp = cmd(name)
        sp.add_argument("--mu", required=True)
    for name in ("adm-k", "ekor", "strata"):
        sp = cmd(name)
        sp.add_argument("--mu", required=True)
        sp.add_argument("--level", required=True)
    sp = cmd("newton")
    sp.add_argument("--element", required=True, help="element JSON {trans, fin_word}")
    sp = cmd("components")
    sp.add_argument("--mu", required=True)
    sp.add_argument("--entry", type=int, required=True)
    sp.add_argument("--level", default="iwahori")
    sp = cmd("levi")
    sp.add_argument("--mu", required=True)
    sp.add_argument("--entry", type=int, required=True)
    sp = cmd("path")
    sp.add_argument("--mu", required=True)
    sp.add_argument("--entry", type=int, required=True)
    sp.add_argument("--from", dest="from_idx", type=int, required=True)
    sp.add_argument("--to", dest="to_idx", type=int, required=True)
    sp = cmd("poset")
    sp.add_argument("--mu", required=True)
    sp.add_argument("--level", default="iwahori")
    sp = cmd("oracle")
    sp.add_argument("--suite", required=True,
                    choices=("length", "bruhat", "admissible", "snf"))
    sp.add_argument("--mu", default=None)
    return p


def run(argv=None) -> tuple[int, str]:
    """Dispatch and return (exit_code, output)."""
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "presets":
        names = preset_names()
        if args.format == "json":
            return 0, emit.json_dumps(names)
        return 0, "\n".join(names) + "\n"

    if args.datum is None:
        raise err("USAGE", "--datum is required for this command")
    datum = load_datum(args.datum)

    if args.command == "adm":
        aset = adm(datum, parse_mu(datum, args.mu))
        if args.format == "json":
            return 0, emit.json_dumps(emit.admissible_rows(datum, aset))
        return 0, emit.admissible_table(datum, aset)

    if args.command in ("adm-k", "ekor"):
        mu = parse_mu(datum, args.mu)
        level = parse_level(datum, args.level)
        aset = k_adm(datum, mu, level) if args.command == "ekor" \
            else adm_K(datum, mu, level)
        if args.format == "json":
            doc = {"level": list(level), "kind": aset.kind,
                   "elements": emit.admissible_rows(datum, aset)}
            return 0, emit.json_dumps(doc)
        return 0, emit.admissible_table(datum, aset)

    if args.command == "tau":
        tau = tau_of(datum, parse_mu(datum, args.mu))
        if args.format == "json":
            return 0, emit.json_dumps(emit.element_row(datum, tau))
        return 0, emit.element_str(datum, tau) + "\n"

    if args.command == "bgmu":
        rows = bgmu_rows(datum, parse_mu(datum, args.mu))
        if args.format == "json":
            return 0, emit.json_dumps(rows)
        table = [[",".join(str(c) for c in r["kappa"]),
                  "(" + ",".join(r["newton"]) + ")",
                  "yes" if r["basic"] else "no",
                  r["witness"]["id"]] for r in rows]
        return 0, emit.render_table(["kappa", "newton", "basic", "witness"], table)

    if args.command == "newton":
        try:
            obj = json.loads(args.element)
        except json.JSONDecodeError as e:
            raise err("USAGE", f"--element is not valid JSON: {e}")
        x = element_from_obj(datum, obj)
        nu, nu_dom = newton(x)
        doc = {"nu": emit.frac_list(nu), "nu_dominant": emit.frac_list(nu_dom)}
        if args.format == "json":
            return 0, emit.json_dumps(doc)
        return 0, f"nu = ({','.join(doc['nu'])})  dominant = ({','.join(doc['nu_dominant'])})\n"

    if args.command == "straight":
        mu = parse_mu(datum, args.mu)
        elems = straight_elements(adm(datum, mu))
        rows = [emit.element_row(datum, x) for x in elems]
        if args.format == "json":
            return 0, emit.json_dumps(rows)
        table = [[r["id"], str(r["length"])] for r in rows]
        return 0, emit.render_table(["element", "length"], table)

    if args.command == "strata":
        mu = parse_mu(datum, args.mu)
        level = parse_level(datum, args.level)
        rows = strata_table(datum, mu, level)
        doc = []
        for r in rows:
            doc.append({
                "kind": r.kind,
                "element": emit.element_row(datum, r.element),
                "length": r.length,
                "supp_sigma": list(r.supp_sigma),
                "basic": r.basic,
                "ekor_member": r.ekor_member,
                "omega_class": list(r.omega_class),
            })
        if args.format == "json":
            return 0, emit.json_dumps(doc)
        table = [[d["kind"], d["element"]["id"], str(d["length"]),
                  ",".join(str(i) for i in d["supp_sigma"]),
                  "yes" if d["basic"] else "no"] for d in doc]
        return 0, emit.render_table(["kind", "element", "length", "supp", "basic"], table)

    if args.command == "components":
        mu = parse_mu(datum, args.mu)
        entry = _entry_for(datum, mu, args.entry)
        level = parse_level(datum, args.level)
        rep = component_report(datum, mu, entry.invariants, level)
        doc = {
            "pi1_sigma": rep.pi1_sigma.describe(),
            "count": rep.count,
            "symbolic": rep.symbolic,
            "status": rep.status,
            "factors": [{"nodes": list(f.nodes), "compact_type": f.compact_type,
                         "mu_noncentral": f.mu_noncentral} for f in rep.factors],
        }
        if args.format == "json":
            return 0, emit.json_dumps(doc)
        lines = [f"pi1^sigma = {doc['pi1_sigma']}  status = {doc['status']}"]
        lines.append(f"count = {doc['count'] if doc['count'] is not None else doc['symbolic']}")
        for f in doc["factors"]:
            lines.append(f"factor {f['nodes']}: compact_type={f['compact_type']} "
                         f"mu_noncentral={f['mu_noncentral']}")
        return 0, "\n".join(lines) + "\n"

    if args.command == "levi":
        mu = parse_mu(datum, args.mu)
        entry = _entry_for(datum, mu, args.entry)
        levi = levi_of_newton(datum, entry.invariants.newton)
        members = i_mu_b_m(datum, mu, entry.invariants, levi)
        doc = {
            "J": list(levi.J),
            "levi_root_count": len(levi.roots),
            "pi1_M": levi.pi1.describe(),
            "I": [list(x) for x in members],
            "minuscule_reps": [list(minuscule_dominant_rep(levi, x)[0]) for x in members],
        }
        if args.format == "json":
            return 0, emit.json_dumps(doc)
        lines = [f"J = {doc['J']}  pi1_M = {doc['pi1_M']}  |roots_M| = {doc['levi_root_count']}"]
        for x, rep in zip(doc["I"], doc["minuscule_reps"]):
            lines.append(f"x = {x}  mu_x = {rep}")
        return 0, "\n".join(lines) + "\n"

    if args.command == "path":
        mu = parse_mu(datum, args.mu)
        entry = _entry_for(datum, mu, args.entry)
        levi = levi_of_newton(datum, entry.invariants.newton)
        members = i_mu_b_m(datum, mu, entry.invariants, levi)
        for idx in (args.from_idx, args.to_idx):
            if not 0 <= idx < len(members):
                raise err("USAGE", f"index {idx} out of range [0,{len(members)})")
        path = find_path(datum, mu, levi, members[args.from_idx], members[args.to_idx])
        if path is None:
            doc = {"path": None}
        else:
            doc = {"path": [{
                "alpha": list(m.alpha.cov),
                "alpha_coroot": list(m.alpha.coroot),
                "r": m.r,
                "from": list(m.from_x),
                "to": list(m.to_x),
            } for m in path]}
        if args.format == "json":
            return 0, emit.json_dumps(doc)
        if doc["path"] is None:
            return 0, "no path\n"
        lines = [f"({','.join(str(c) for c in m['alpha'])}) r={m['r']} -> {m['to']}"
                 for m in doc["path"]]
        return 0, ("\n".join(lines) + "\n") if lines else "empty path\n"

    if args.command == "poset":
        mu = parse_mu(datum, args.mu)
        level = parse_level(datum, args.level)
        aset = adm(datum, mu) if not level else k_adm(datum, mu, level)
        poset = closure_poset(aset)
        tau = tau_of(datum, mu)
        flags = [kr_basic_flag(datum, x, tau) for x in poset.nodes]
        if args.format == "dot":
            return 0, emit.poset_dot(datum, poset, flags)
        doc = {
            "nodes": [emit.element_row(datum, x) for x in poset.nodes],
            "covers": [list(c) for c in poset.covers],
            "basic": flags,
        }
        if args.format == "json":
            return 0, emit.json_dumps(doc)
        table = [[emit.element_str(datum, x), str(length(x)),
                  "yes" if flags[i] else "no"] for i, x in enumerate(poset.nodes)]
        out = emit.render_table(["element", "length", "basic"], table)
        out += "covers: " + " ".join(f"{a}<{b}" for a, b in poset.covers) + "\n"
        return 0, out

    if args.command == "oracle":
        if args.suite == "snf":
            rep = snf_suite()
        elif args.suite == "length":
            rep = length_suite(datum, max_len=4)
        elif args.suite == "bruhat":
            rep = bruhat_suite(datum, max_len=3)
        else:
            if args.mu is None:
                raise err("USAGE", "--suite admissible needs --mu")
            rep = admissible_suite(datum, parse_mu(datum, args.mu))
        doc = {"suite": rep.suite, "checked": rep.checked,
               "mismatches": [repr(m) for m in rep.mismatches]}
        if args.format == "json":
            return 0, emit.json_dumps(doc)
        status = "ok" if rep.ok() else "MISMATCH"
        return 0, f"suite={rep.suite} checked={rep.checked} {status}\n"

    raise err("USAGE", f"unknown command {args.command!r}")


def main(argv=None) -> int:
    try:
        code, out = run(argv)
    except IwkError as e:
        if e.code == "USAGE":
            sys.stderr.write(emit.json_dumps({"error": e.code, "message": e.message}))
            return 2
        sys.stderr.write(emit.json_dumps({"error": e.code, "message": e.message}))
        return 1
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
