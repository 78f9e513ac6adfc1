"""Command-line front end.  Every subcommand prints one JSON document.

Exit codes: 0 success, 1 a verification check failed, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import classify, kodaira, pham, picard, weierstrass
from .lattice import LatticeError, discriminant, psi, signature, standard_lattice
from .parse import ParseError, parse_scalar, parse_vector
from .ring import Eis, gcd, normalize_associate, reduce_mod_theta
from .shortvec import unit_orbit_representatives, vectors_of_norm


class Failed(Exception):
    """Raised by a subcommand whose checks did not all pass; carries the payload."""

    def __init__(self, payload) -> None:
        super().__init__("check failed")
        self.payload = payload


def _json(x):
    if isinstance(x, Eis):
        return x.to_json()
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _json(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_json(v) for v in x]
    if hasattr(x, "to_json"):
        return x.to_json()
    if hasattr(x, "value") and not isinstance(x, (bool, int, float, str)):
        return x.value
    return x


def _vectors_json(vs) -> list:
    return [v.to_json() for v in vs]


# ---------------------------------------------------------------------------
# subcommands


def cmd_ring(args):
    x = parse_scalar(args.x)
    out = {"x": x, "norm": x.norm(), "mod_theta": reduce_mod_theta(x), "associate": normalize_associate(x) if x != 0 else x}
    if args.y is not None:
        y = parse_scalar(args.y)
        out.update({"y": y, "sum": x + y, "product": x * y, "gcd": gcd(x, y)})
    return out


def cmd_lattice(args):
    lat = standard_lattice(args.lattice)
    out = {"name": lat.name, "rank": lat.rank, "signature": list(signature(lat)), "discriminant": discriminant(lat)}
    if args.gram:
        out["gram"] = lat.to_json()["gram"]
    if args.x is not None:
        x = parse_vector(args.x, args.lattice)
        y = parse_vector(args.y, args.lattice) if args.y is not None else x
        out["psi"] = psi(x, y)
    return out


def cmd_shortvec(args):
    lat = standard_lattice(args.lattice)
    vs = vectors_of_norm(lat, args.norm)
    if args.count_only:
        return {"count": len(vs)}
    if args.representatives:
        reps = unit_orbit_representatives(vs)
        return {"count": len(vs), "representatives": _vectors_json(reps)}
    return {"count": len(vs), "vectors": _vectors_json(vs)}


def cmd_group(args):
    from .unitary import orbit, reduce_group_mod_theta, stabilizer_order, unitary_group_lambda4

    if args.lattice != "lambda4":
        raise ValueError("group generation is implemented for lambda4")
    g = unitary_group_lambda4(cap=args.cap)
    lam = standard_lattice("lambda4")
    red = reduce_group_mod_theta(g)
    out = {"order": g.order, "mod_theta_order": len({m.astype("int8").tobytes() for m in red})}
    for label, seed in (("3", lam.vector([1, 0, 0, 0])), ("6", lam.vector([1, 1, 0, 0]))):
        out[f"orbit_{label}"] = len(orbit(g, seed))
        out[f"stabilizer_{label}"] = stabilizer_order(g, seed)
    return out


def cmd_classify(args):
    if args.what == "pair":
        z = parse_vector(args.z, args.lattice)
        r = parse_vector(args.r, args.lattice)
        out = {"psi": psi(r, z), "primitive": classify.pair_is_primitive(z, r)}
        if out["primitive"]:
            out["d_invariant"] = classify.d_invariant(z, r)
        if z.lattice.name == "lambda4":
            out["relative_position"] = classify.relative_position(r, z).value
        return out
    if args.what == "dclass":
        p = classify.dclass_profile(args.type)
        return {"type": classify.IsotropicType(args.type).value, "rank6": p.rank6, "rank9": p.rank9, "lines9": p.lines9, "pool": p.pool, "counts": p.counts}
    if args.what == "span":
        zo = parse_vector(args.z) if args.z else None
        st = classify.span_type_with_zo([parse_vector(t) for t in args.r], zo)
        return {"tag": st.tag, "d_invariants": st.d_invariants, "complement": st.complement, "complement_matches_model": st.complement_matches}
    if args.what == "census":
        return classify.relative_position_census()
    raise ValueError(args.what)


def cmd_decompose(args):
    z = parse_vector(args.z, "lambda4")
    if args.mode == "theta":
        pairs = classify.theta_decompositions(z)
    else:
        pairs = classify.perpendicular_decompositions(z)
    out = {"z": z, "mode": args.mode, "count": len(pairs), "pairs": [[r.to_json(), rp.to_json()] for r, rp in pairs]}
    if args.mode == "theta":
        fl = classify.flag_of(z)
        out["flag"] = {"line": list(fl.v), "plane": [list(b) for b in fl.plane]}
    return out


def cmd_pham(args):
    if args.what == "gram":
        return {"gram": pham.pham_lattice().to_json()["gram"], "normalizing_units": pham.unit_normalize_to_lambda10()}
    checks = {c.name: c.passed for c in pham.verify_braid_and_R()}
    u, z = pham.eisenstein_image()
    checks["psi(z,z) = 6"] = pham.pham_lattice().psi(z, z) == 6
    checks["l0 isotropic"] = pham.isotropic_l0_check()["passed"]
    out = {"checks": checks, "gram": pham.pham_lattice().to_json()["gram"]}
    if args.integral:
        rep = pham.integral_monodromy_report()
        out["integral"] = rep
        checks["integral T^6 = 1"] = rep["T^6 == 1"]
        checks["integral T^3 != 1"] = not rep["T^3 == 1"]
    if not all(checks.values()):
        raise Failed(out)
    return out


def cmd_picard(args):
    import random

    from .verify import eichler_siegel_cases

    m = picard.simple_root_dot_matrix()
    c = picard.affine_e8_cartan()
    cartan = all(m[i][j] == -c[i][j] for i in range(9) for j in range(9))
    bad = eichler_siegel_cases(random.Random(args.seed), args.cases)
    out = {"cartan_is_affine_e8": cartan, "dot_matrix": m, "eichler_siegel_cases": args.cases, "failures": bad}
    if not cartan or any(bad.values()):
        raise Failed(out)
    return out


def _form(text: str, degree: int) -> weierstrass.BinaryForm:
    coeffs = json.loads(text)
    if not isinstance(coeffs, list):
        raise ValueError("a form is a JSON list of coefficients")
    return weierstrass.BinaryForm(degree, tuple(weierstrass._frac(c) for c in coeffs))


def cmd_git(args):
    if args.what == "stability":
        f0, f1 = _form(args.f0, 4), _form(args.f1, 6)
        out = {"pair_stability": weierstrass.pair_stability(f0, f1).name.lower()}
        try:
            d = weierstrass.discriminant_form(f0, f1)
            prof = weierstrass.multiplicity_profile(d)
            out.update(
                {
                    "discriminant": [str(c) for c in d.coeffs],
                    "profile": list(prof),
                    "divisor_stability": weierstrass.divisor_stability(prof).name.lower(),
                }
            )
        except weierstrass.ZeroForm:
            out["discriminant"] = None
        return out
    if args.what == "divisor":
        prof = [int(x) for x in args.profile.split(",")]
        return {"profile": prof, "divisor_stability": weierstrass.divisor_stability(prof).name.lower()}
    if args.what == "j":
        a, b = weierstrass.minimal_ss_j_invariant(Fraction(args.lam), Fraction(args.mu))
        return {"j": [str(a), str(b)]}
    raise ValueError(args.what)


def cmd_kodaira(args):
    if args.what == "type":
        t = kodaira.kodaira_type(args.j, args.deg, args.chi)
        return {"type": str(t), "euler": kodaira.euler_char(t), "root_rank": kodaira.fiber_root_rank(t)}
    configs = kodaira.enumerate_configurations()
    return {
        "count": len(configs),
        "configurations": [
            {"types": [str(t) for t in c.types], "j_degree": c.d, "root_rank": c.root_rank} for c in configs
        ],
    }


def cmd_verify_all(args):
    from .verify import run_checks

    report = run_checks(only=args.only, skip_heavy=args.skip_heavy, seed=args.seed)
    out = report.to_json(timing=not args.no_timing)
    if not report.passed:
        raise Failed(out)
    return out


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="eislattice", description="Eisenstein lattices, monodromy and Kodaira combinatorics")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized sample checks")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("ring", help="Eisenstein integer arithmetic")
    s.add_argument("x")
    s.add_argument("y", nargs="?")
    s.set_defaults(func=cmd_ring)

    s = sub.add_parser("lattice", help="invariants of a named lattice")
    s.add_argument("--lattice", default="lambda4")
    s.add_argument("--gram", action="store_true")
    s.add_argument("--x")
    s.add_argument("--y")
    s.set_defaults(func=cmd_lattice)

    s = sub.add_parser("shortvec", help="vectors of a given norm")
    s.add_argument("--lattice", default="lambda4")
    s.add_argument("--norm", type=int, required=True)
    s.add_argument("--count-only", action="store_true")
    s.add_argument("--representatives", action="store_true", help="one vector per unit orbit")
    s.set_defaults(func=cmd_shortvec)

    s = sub.add_parser("group", help="the unitary group of Lambda^4")
    s.add_argument("action", choices=["generate"])
    s.add_argument("--lattice", default="lambda4")
    s.add_argument("--cap", type=int, default=200000)
    s.set_defaults(func=cmd_group)

    s = sub.add_parser("classify", help="relative positions and sublattice types")
    s.add_argument("what", choices=["pair", "dclass", "span", "census"])
    s.add_argument("--z")
    s.add_argument("--r", action="append", default=[])
    s.add_argument("--type", default="theta")
    s.add_argument("--lattice")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("decompose", help="decompositions of a 6-vector of Lambda^4")
    s.add_argument("what", choices=["six"])
    s.add_argument("--z", required=True)
    s.add_argument("--mode", choices=["theta", "perp"], default="theta")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("pham", help="the Pham module and its monodromy")
    s.add_argument("what", choices=["verify", "gram"])
    s.add_argument("--integral", action="store_true", help="also check the integral rank-50 module")
    s.set_defaults(func=cmd_pham)

    s = sub.add_parser("picard", help="I_{1,9} root and Eichler-Siegel checks")
    s.add_argument("what", choices=["verify"])
    s.add_argument("--cases", type=int, default=1000)
    s.set_defaults(func=cmd_picard)

    s = sub.add_parser("git", help="GIT stability of binary forms")
    s.add_argument("what", choices=["stability", "divisor", "j"])
    s.add_argument("--f0", help="5 coefficients of X^i Y^(4-i), JSON; entries may be [num, den]")
    s.add_argument("--f1", help="7 coefficients of X^i Y^(6-i), JSON")
    s.add_argument("--profile", help="comma separated multiplicities")
    s.add_argument("--lam")
    s.add_argument("--mu")
    s.set_defaults(func=cmd_git)

    s = sub.add_parser("kodaira", help="Kodaira fiber types")
    s.add_argument("what", choices=["type", "enumerate"])
    s.add_argument("--j", choices=["0", "1", "inf", "generic"])
    s.add_argument("--deg", type=int)
    s.add_argument("--chi", type=int)
    s.set_defaults(func=cmd_kodaira)

    s = sub.add_parser("verify-all", help="run the full verification suite")
    s.add_argument("--only", nargs="*", help="check ids to run")
    s.add_argument("--skip-heavy", action="store_true", help="skip the group closure and the pair census")
    s.add_argument("--no-timing", action="store_true", help="omit wall times (byte-stable output)")
    s.set_defaults(func=cmd_verify_all)
    return p


def _require(args, *names) -> None:
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        raise ValueError("missing required options: " + ", ".join("--" + m for m in missing))


_REQUIRED = {
    ("classify", "pair"): ("z", "r"),
    ("git", "stability"): ("f0", "f1"),
    ("git", "divisor"): ("profile",),
    ("git", "j"): ("lam", "mu"),
    ("kodaira", "type"): ("j", "deg", "chi"),
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with status 2 on bad usage
    try:
        req = _REQUIRED.get((args.command, getattr(args, "what", None)), ())
        _require(args, *req)
        if args.command == "classify" and args.what == "pair":
            if len(args.r) != 1:
                raise ValueError("classify pair takes exactly one --r")
            args.r = args.r[0]
        if args.command == "classify" and args.what == "span" and not args.r:
            raise ValueError("classify span needs at least one --r")
        payload = args.func(args)
        code = 0
    except Failed as exc:
        payload, code = exc.payload, 1
    except (ValueError, LatticeError, ParseError, ArithmeticError, KeyError, json.JSONDecodeError) as exc:
        print(f"eislattice: error: {exc}", file=sys.stderr)
        return 2
    print(json.dumps(_json(payload), sort_keys=True, indent=2))
    return code


if __name__ == "__main__":
    sys.exit(main())
