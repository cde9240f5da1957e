"""Batch command-line front end with JSON I/O and deterministic seeds.

Exit codes: 0 success, 2 invalid input, 3 property violation found by a
verify suite, 64 usage error.  Identical invocations produce
byte-identical output: all randomized sweeps derive from the single
``--seed`` value, which is embedded in every report.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from fractions import Fraction
from typing import Optional

import cy2stab
from cy2stab import heartlab, homtable, kcharge, nfcalc, pimod, reduction, spectral

__all__ = ["main", "run"]

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_VIOLATION = 3
EXIT_USAGE = 64

_INVALID_INPUT = (
    ValueError,
    KeyError,
    json.JSONDecodeError,
)


def _emit(payload, out_path: Optional[str]) -> None:
    text = json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_line_object(text: str) -> tuple[int, int]:
    """Parse "O(m)[l]" (the shift suffix is optional)."""
    m = re.fullmatch(r"\s*O\((-?\d+)\)(?:\[(-?\d+)\])?\s*", text)
    if not m:
        raise ValueError(f"cannot parse line object {text!r}")
    return int(m.group(1)), int(m.group(2) or 0)


def _load_instance(args) -> dict:
    if args.instance is None:
        raise ValueError("missing --instance")
    if args.instance.strip().startswith("{"):
        return json.loads(args.instance)
    with open(args.instance, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _charge_from_json(data: dict) -> kcharge.CentralCharge:
    if "z_S0" in data or "z_S1" in data:
        # simple-basis form: values on S_0 = O(-1)[1] and S_1 = O_Z
        z_s0 = kcharge.ExactComplex.from_json(data["z_S0"])
        z_s1 = kcharge.ExactComplex.from_json(data["z_S1"])
        # Z(O_Z) = Z(S_1); Z(O_x) = Z(S_0) + Z(S_1)
        return kcharge.CentralCharge(z_s1, z_s0 + z_s1)
    return kcharge.CentralCharge.from_json(data)


def _cmd_homdim(args) -> tuple[int, dict]:
    if args.shift_s or args.shift_t:
        table = homtable.hom_dims_shifted(args.s, args.shift_s, args.t, args.shift_t)
        return EXIT_OK, {"dims": {str(d): v for d, v in sorted(table.items())}}
    dims = homtable.hom_dims_line(args.s, args.t)
    return EXIT_OK, {"dims": dims.to_json()}


def _cmd_kclass(args) -> tuple[int, dict]:
    if args.op == "euler":
        u = kcharge.KClass.from_json(json.loads(args.u))
        v = kcharge.KClass.from_json(json.loads(args.v))
        return EXIT_OK, {"euler": kcharge.euler_form(u, v)}
    if args.op == "twist":
        e = kcharge.KClass.from_json(json.loads(args.u))
        f = kcharge.KClass.from_json(json.loads(args.v))
        return EXIT_OK, {"class": kcharge.twist_on_K(e, f).to_json()}
    if args.op == "sign-p":
        f = kcharge.KClass.from_json(json.loads(args.u))
        e = kcharge.KClass.from_json(json.loads(args.v))
        s, p = kcharge.sign_and_p(f, e)
        return EXIT_OK, {"s": s, "p": p}
    if args.op == "line":
        return EXIT_OK, {
            "class": kcharge.class_of_line_bundle(args.s, args.shift_s).to_json()
        }
    raise ValueError(f"unknown kclass op {args.op!r}")


def _cmd_twist(args) -> tuple[int, dict]:
    nf = nfcalc.twist_line_on_line(args.t, args.s, args.n)
    return EXIT_OK, {"normal_form": nf.to_json()}


def _cmd_reduce(args) -> tuple[int, dict]:
    m, l = _parse_line_object(args.E)
    n, k = _parse_line_object(args.F)
    trace = reduction.reduce_pair(reduction.LinePair(m, l, n, k))
    return EXIT_OK, trace.to_json()


def _module_from_json(data: dict) -> pimod.PiModule:
    return pimod.PiModule.from_json(data)


def _cmd_hn(args) -> tuple[int, dict]:
    inst = _load_instance(args)
    M = _module_from_json(inst["module"])
    Z = _charge_from_json(inst["charge"])
    cat = pimod.PiOracle(M.p)
    filt = heartlab.hn_filter(cat, Z, M)
    return EXIT_OK, {
        "factors": [
            {
                "module": m.to_json(),
                "phase_approx": k.approx(),
                "phase_key": [str(k.offset), k.branch, str(k.slope)],
            }
            for k, m in filt.factors
        ],
        "semistable": filt.is_semistable(),
    }


def _cmd_jh(args) -> tuple[int, dict]:
    inst = _load_instance(args)
    M = _module_from_json(inst["module"])
    Z = _charge_from_json(inst["charge"])
    cat = pimod.PiOracle(M.p)
    blocks = heartlab.jh_blocks(cat, Z, M)
    return EXIT_OK, blocks.to_json()


def _cmd_spectral(args) -> tuple[int, dict]:
    inst = _load_instance(args)
    h0 = _module_from_json(inst["H0"])
    h1 = _module_from_json(inst["H1"])
    e = None
    if inst.get("e"):
        import numpy as np

        w0 = np.array(inst["e"][0], dtype=np.int64).reshape(h0.d0, h1.d0)
        w1 = np.array(inst["e"][1], dtype=np.int64).reshape(h0.d1, h1.d1)
        e = pimod.ExtCocycle(2, h1, h0, (w0, w1))
    obj = spectral.TwoTermObject(h0, h1, e)
    table = spectral.hom_dims_via_E3(obj, obj)
    return EXIT_OK, {
        "self_hom": {str(n): d for n, d in sorted(table.items())},
        "spherical": spectral.sphericality_test(obj),
    }


def _cmd_realize(args) -> tuple[int, dict]:
    res = pimod.realize_line_bundle(args.t, args.p, args.bound)
    if isinstance(res, pimod.Unsupported):
        return EXIT_OK, {
            "t": res.t,
            "supported": False,
            "reason": res.reason,
            "bound": res.bound,
        }
    return EXIT_OK, {
        "t": res.t,
        "supported": True,
        "module": res.module.to_json(),
        "shift": res.shift,
    }


# ---------------------------------------------------------------------------
# verify suites


def _grid_charges(count: int, rng: random.Random) -> list[kcharge.CentralCharge]:
    """Deterministic standard-region charges: Im Z(S_1), Im Z(S_0) > 0."""
    out = []
    while len(out) < count:
        a = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        b = Fraction(rng.randint(1, 6), rng.randint(1, 3))
        c = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        d = Fraction(rng.randint(1, 6), rng.randint(1, 3))
        z_oz = kcharge.ExactComplex.of(a, b)
        z_ox = kcharge.ExactComplex.of(a + c, b + d)
        charge = kcharge.CentralCharge(z_oz, z_ox)
        if charge.is_standard_region():
            out.append(charge)
    return out


def _module_universe(p: int, max_dim: tuple[int, int]):
    from cy2stab.universe import enumerate_iso_classes

    return enumerate_iso_classes(p, max_dim)


def _suite_mukai(seed: int, p: int, max_dim: int = 2) -> dict:
    cat = pimod.PiOracle(p)
    universe = _module_universe(p, (max_dim, max_dim))
    checked = 0
    violations = []
    for B in universe:
        if B.is_zero():
            continue
        for pair in pimod.list_subobjects(B):
            if pair.total_dim in (0, B.total_dim):
                continue
            A, C = pimod.sub_quotient(B, pair)
            if pimod.ext_dims(A, C)[0] != 0:
                continue
            rep = heartlab.mukai_check(cat, A, B, C, pair)
            checked += 1
            if not rep.passed:
                violations.append(
                    {"B": B.to_json(), "witness_dims": pair.dims, "report": rep.to_json()}
                )
    return {"suite": "mukai", "seed": seed, "checked": checked, "violations": violations}


def _suite_chain(seed: int, p: int, max_dim: int = 2) -> dict:
    rng = random.Random(seed)
    cat = pimod.PiOracle(p)
    universe = [M for M in _module_universe(p, (max_dim, max_dim)) if not M.is_zero()]
    charges = _grid_charges(8, rng)
    checked = 0
    violations = []
    for Z in charges:
        for M in universe:
            rep = heartlab.inequality_chain_check(cat, Z, M)
            checked += 1
            if not rep.passed:
                violations.append({"module": M.to_json(), "report": rep.to_json()})
    return {"suite": "chain", "seed": seed, "checked": checked, "violations": violations}


def _suite_rigidity(seed: int, p: int, max_dim: int = 2) -> dict:
    rng = random.Random(seed)
    cat = pimod.PiOracle(p)
    universe = [M for M in _module_universe(p, (max_dim, max_dim)) if not M.is_zero()]
    charges = _grid_charges(6, rng)
    checked = 0
    violations = []
    for Z in charges:
        for M in universe:
            rep = heartlab.rigidity_spherical_audit(cat, Z, M)
            checked += 1
            if not rep.passed:
                violations.append({"module": M.to_json(), "report": rep.to_json()})
    return {
        "suite": "rigidity",
        "seed": seed,
        "checked": checked,
        "violations": violations,
    }


def _suite_twist(seed: int, p: int, max_dim: int = 2) -> dict:
    from cy2stab.universe import twist_lemma_instances

    cat = pimod.PiOracle(p)
    instances = twist_lemma_instances(p, seed=seed, minimum=20)
    checked = 0
    violations = []
    for Z, E, F, universe in instances:
        rep = heartlab.twist_lemma_check(cat, Z, E, F, universe=universe)
        checked += 1
        if not rep.passed or not rep.kclass_certified:
            violations.append(
                {"E": E.to_json(), "F": F.to_json(), "report": rep.to_json()}
            )
    return {"suite": "twist", "seed": seed, "checked": checked, "violations": violations}


_SUITES = {
    "mukai": _suite_mukai,
    "chain": _suite_chain,
    "rigidity": _suite_rigidity,
    "twist": _suite_twist,
}


def _cmd_verify(args) -> tuple[int, dict]:
    report = _SUITES[args.suite](args.seed, args.p, args.max_dim)
    code = EXIT_OK if not report["violations"] else EXIT_VIOLATION
    return code, report


# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cy2stab",
        description="exact stability-condition workbench for the resolved A1 surface",
    )
    parser.add_argument(
        "--version", action="version", version=f"cy2stab schema {cy2stab.SCHEMA_VERSION}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    homdim = sub.add_parser("homdim", help="graded Hom dimensions between line bundles")
    homdim.add_argument("--s", type=int, required=True)
    homdim.add_argument("--t", type=int, required=True)
    homdim.add_argument("--shift-s", dest="shift_s", type=int, default=0)
    homdim.add_argument("--shift-t", dest="shift_t", type=int, default=0)
    homdim.set_defaults(fn=_cmd_homdim)

    kcl = sub.add_parser("kclass", help="K-lattice calculus")
    kcl.add_argument("--op", choices=["euler", "twist", "sign-p", "line"], required=True)
    kcl.add_argument("--u", help='first class as {"a": .., "b": ..}')
    kcl.add_argument("--v", help="second class")
    kcl.add_argument("--s", type=int, default=0, help="twist for --op line")
    kcl.add_argument("--shift-s", dest="shift_s", type=int, default=0)
    kcl.set_defaults(fn=_cmd_kclass)

    tw = sub.add_parser("twist", help="deterministic twist of a line bundle")
    tw.add_argument("--t", type=int, required=True)
    tw.add_argument("--s", type=int, required=True)
    tw.add_argument("--n", type=int, default=0)
    tw.set_defaults(fn=_cmd_twist)

    red = sub.add_parser("reduce", help="reduce a line pair to the standard pair")
    red.add_argument("--E", required=True, help='e.g. "O(0)[1]"')
    red.add_argument("--F", required=True, help='e.g. "O(1)[0]"')
    red.add_argument("--json", action="store_true", help="JSON output (always on)")
    red.set_defaults(fn=_cmd_reduce)

    hn = sub.add_parser("hn", help="Harder-Narasimhan filtration of a module")
    hn.add_argument("--instance", required=True, help="JSON file or inline JSON")
    hn.set_defaults(fn=_cmd_hn)

    jh = sub.add_parser("jh", help="Jordan-Hoelder blocks of a semistable module")
    jh.add_argument("--instance", required=True)
    jh.set_defaults(fn=_cmd_jh)

    spec = sub.add_parser("spectral", help="third-page self-Hom table of a two-term object")
    spec.add_argument("--instance", required=True)
    spec.set_defaults(fn=_cmd_spectral)

    ver = sub.add_parser("verify", help="run a verification suite")
    ver.add_argument("--suite", choices=sorted(_SUITES), required=True)
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--p", type=int, default=pimod.DEFAULT_PRIME)
    ver.add_argument("--max-dim", dest="max_dim", type=int, default=2,
                     help="per-vertex dimension cap for the sweep universe")
    ver.set_defaults(fn=_cmd_verify)

    real = sub.add_parser("realize", help="realize a line bundle in the module model")
    real.add_argument("--t", type=int, required=True)
    real.add_argument("--p", type=int, default=pimod.DEFAULT_PRIME)
    real.add_argument("--bound", type=int, default=6)
    real.set_defaults(fn=_cmd_realize)

    for sp in (homdim, kcl, tw, red, hn, jh, spec, ver, real):
        sp.add_argument("--out", dest="out_path", default=None, help="output path")
    return parser


def run(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        if exc.code == 0:
            return EXIT_OK
        return EXIT_USAGE
    try:
        code, payload = args.fn(args)
    except _INVALID_INPUT as exc:
        _emit({"error": str(exc)}, getattr(args, "out_path", None))
        return EXIT_INVALID
    _emit(payload, args.out_path)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
