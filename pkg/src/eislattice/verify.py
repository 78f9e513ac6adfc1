"""The full verification suite behind ``eislattice verify-all``."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable

from . import classify, kodaira, pham, picard, weierstrass
from .lattice import (
    check_identification,
    discriminant,
    phi,
    signature,
    standard_lattice,
)
from .linalg import OO, row_span_basis
from .ring import THETA, ZERO, Eis, omega_power, units
from .shortvec import unit_orbit_representatives, vectors_of_norm

SCHEMA_VERSION = 1


@dataclass
class CheckResult:
    id: str
    claim: str
    passed: bool
    witness: object = None
    wall_time: float = 0.0

    def to_json(self, timing: bool = True) -> dict:
        out = {"id": self.id, "claim": self.claim, "status": "pass" if self.passed else "fail", "witness": self.witness}
        if timing:
            out["wall_time_s"] = round(self.wall_time, 3)
        return out


@dataclass
class Check:
    id: str
    claim: str
    run: Callable  # (rng) -> (passed, witness)
    heavy: bool = False


@dataclass
class Report:
    results: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_json(self, timing: bool = True) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "passed": self.passed,
            "checks": [r.to_json(timing) for r in self.results],
        }


def _jsonable(x):
    if isinstance(x, Eis):
        return x.to_json()
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "value") and not isinstance(x, (int, float, bool)):
        return x.value
    return x


# ---------------------------------------------------------------------------
# individual checks


def check_ring(rng):
    us = units()
    ok = len(set(us)) == 6 and THETA * THETA == Eis(-3) and omega_power(6) == 1
    return ok, {"units": len(set(us)), "theta^2": (THETA * THETA).to_json()}


def check_lattice_invariants(rng):
    discs = [discriminant(standard_lattice(f"lambda{k}")) for k in range(1, 11)]
    sigs = {k: signature(standard_lattice(f"lambda{k}")) for k in (4, 5, 10)}
    big = standard_lattice("Lambda")
    ok = (
        discs == [3, 6, 9, 9, 0, -27, -81, -162, -243, -243]
        and sigs[4] == (4, 0, 0)
        and sigs[5] == (4, 0, 1)
        and sigs[10] == (9, 1, 0)
        and signature(big) == (9, 1, 0)
        and discriminant(big) == -243
        and check_identification()
    )
    return ok, {"discriminants": discs, "signatures": {str(k): list(v) for k, v in sigs.items()}}


def check_short_vectors(rng):
    lam = standard_lattice("lambda4")
    counts = {n: len(vectors_of_norm(lam, n)) for n in (3, 6)}
    reps = {n: len(unit_orbit_representatives(vectors_of_norm(lam, n))) for n in (3, 6)}
    return counts == {3: 240, 6: 2160}, {"counts": counts, "unit_orbits": reps}


_GROUP: dict = {}


def _group():
    from .unitary import unitary_group_lambda4

    if "g" not in _GROUP:
        _GROUP["g"] = unitary_group_lambda4()
    return _GROUP["g"]


def check_group_order(rng):
    import numpy as np

    from .unitary import reduce_group_mod_theta

    g = _group()
    red = reduce_group_mod_theta(g)
    images = {m.tobytes() for m in red.astype(np.int8)}
    ident = np.eye(4, dtype=np.int64)
    kernel = [i for i in range(g.order) if np.array_equal(red[i], ident)]
    kmaps = g.unitary_maps(kernel)
    scalars = sorted(
        next(k for k in range(6) if m.matrix == tuple(tuple(omega_power(k) if i == j else ZERO for j in range(4)) for i in range(4)))
        for m in kmaps
    )
    ok = g.order == 155520 and len(images) == 51840 and scalars == [0, 2, 4]
    return ok, {"order": g.order, "mod_theta_order": len(images), "kernel_omega_powers": scalars}


def check_transitivity(rng):
    from .unitary import orbit, stabilizer_order

    g = _group()
    lam = standard_lattice("lambda4")
    out = {}
    ok = True
    for label, seed, size in (("3", lam.vector([1, 0, 0, 0]), 240), ("6", lam.vector([1, 1, 0, 0]), 2160)):
        orb = len(orbit(g, seed))
        stab = stabilizer_order(g, seed)
        out[label] = {"orbit": orb, "stabilizer": stab}
        ok = ok and orb == size and orb * stab == g.order
    return ok, out


FOUR_PERPENDICULAR = ("w*r2+r3", "w*r2+r3+w^-1*r4", "w*r2+r3+w^-2*r4", "w*r1+2*r2-th*r3-r4")


def check_decompositions(rng):
    from .parse import parse_vector

    lam = standard_lattice("lambda4")
    sixes = vectors_of_norm(lam, 6)
    bad = []
    for z in sixes:
        td = classify.theta_decompositions(z)
        pd = classify.perpendicular_decompositions(z)
        lz = row_span_basis([[c for c in b.coords] for b in classify.theta_span(z)], OO)
        same = all(row_span_basis([list(r.coords), list(rp.coords)], OO) == lz for r, rp in td)
        if len(td) != 3 or len(pd) != 4 or not same:
            bad.append(z.to_json())
    z = parse_vector("r1+r2")
    listed = [parse_vector(t) for t in FOUR_PERPENDICULAR]
    pairs = classify.perpendicular_decompositions(z)
    explicit = all(sum(1 for p in pairs if r in p) == 1 for r in listed) and len(pairs) == 4
    return not bad and explicit, {"six_vectors": len(sixes), "failures": bad[:5], "explicit_four": explicit}


def check_flags(rng):
    from . import f3
    from .unitary import f3_symplectic_form

    lam = standard_lattice("lambda4")
    j = f3_symplectic_form(lam)
    counts: dict = {}
    for z in vectors_of_norm(lam, 6):
        fl = classify.flag_of(z)
        counts[(fl.v, fl.plane)] = counts.get((fl.v, fl.plane), 0) + 1
    model = {(tuple(int(x) for x in v), p) for v, p in f3.flags(j)}
    nondeg = sum(1 for p in f3.planes(4) if f3.is_nondegenerate_plane(j, p))
    ok = set(counts) == model and set(counts.values()) == {3} and len(model) == 720 and nondeg == 90
    return ok, {"flags_hit": len(counts), "fiber_sizes": sorted(set(counts.values())), "nondegenerate_planes": nondeg}


def check_census(rng):
    census = classify.relative_position_census()
    f3c = classify.position_counts_f3()
    ok = census["mismatches"] == 0 and all(census["sizes"][k] == 18 * f3c[k] for k in f3c) and all(census["sizes"].values())
    return ok, {"sizes": census["sizes"], "f3_line_counts": f3c, "mismatches": census["mismatches"]}


def check_rank2_types(rng):
    from .parse import parse_vector

    z = parse_vector("r1+r2")
    want = {"r1": 6, "r3": 15, "w*r2+r3": 9, "r4": 18}
    got = {k: int(classify.rank2_type(z.lattice, z, parse_vector(k))) for k in want}
    return got == want, got


def check_dclass(rng):
    t = classify.dclass_profile("theta")
    z = classify.dclass_profile("zero")
    ok = (t.rank6, t.rank9, t.lines9) == (1, 2, 4) and (z.rank6, z.rank9) == (0, 1)
    return ok, {
        "theta": {"rank6": t.rank6, "rank9": t.rank9, "lines9": t.lines9},
        "zero": {"rank6": z.rank6, "rank9": z.rank9, "lines9": z.lines9},
    }


SPAN_EXAMPLES = {
    "(6)": ["r1'"],
    "(9)": ["w*r2'+r3'"],
    "(6,9)": ["r1'", "w*r2'+r3'"],
    "(9,9)": ["w*r2'+r3'", "w*r2'+r3'+w^-1*r4'"],
    "(6,9,9)": ["r1'", "w*r2'+r3'", "w*r2'+r3'+w^-1*r4'"],
}


def check_span_types(rng):
    from .parse import parse_vector

    out = {}
    ok = True
    for tag, texts in SPAN_EXAMPLES.items():
        st = classify.span_type_with_zo([parse_vector(t) for t in texts])
        out[tag] = {"tag": st.tag, "complement": _jsonable(st.complement)}
        ok = ok and st.tag == tag and st.complement_matches
    return ok, out


def check_pham_gram(rng):
    g = pham.gram_in_r_basis()
    n = pham.RANK
    diag = all(g[i][i] == 3 for i in range(n))
    band = all(g[i][j] == 0 for i in range(n) for j in range(n) if abs(i - j) > 1)
    sup = all(g[i][i + 1] in {u * THETA for u in units()} for i in range(n - 1))
    us = pham.unit_normalize_to_lambda10()
    lat = pham.pham_lattice()
    sig, disc = signature(lat), discriminant(lat)
    ok = diag and band and sup and sig == (9, 1, 0) and disc == -243
    return ok, {
        "superdiagonal": [g[i][i + 1].to_json() for i in range(n - 1)],
        "normalizing_units": [u.to_json() for u in us],
        "signature": list(sig),
        "discriminant": disc,
    }


def check_braid(rng):
    checks = pham.verify_braid_and_R()
    return all(c.passed for c in checks), {c.name: c.passed for c in checks}


def check_integral_monodromy(rng):
    rep = pham.integral_monodromy_report()
    ok = rep["T^6 == 1"] and not rep["T^3 == 1"]
    return ok, rep


def check_eisenstein(rng):
    u, z = pham.eisenstein_image()
    lat = pham.pham_lattice()
    nu = lat.psi(u, u)
    nz = lat.psi(z, z)
    l0 = pham.isotropic_l0_check()
    ok = nu == 72 and nz == 6 and l0["passed"]
    return ok, {"u": [c.to_json() for c in u], "z": [c.to_json() for c in z], "psi(u,u)": nu.to_json(), "psi(z,z)": nz.to_json(), "l0": l0["passed"]}


def check_picard_cartan(rng):
    m = picard.simple_root_dot_matrix()
    c = picard.affine_e8_cartan()
    ok = all(m[i][j] == -c[i][j] for i in range(9) for j in range(9))
    ok = ok and all(picard.is_root(a) for a in picard.simple_root_basis())
    return ok, {"dot_matrix": m}


def _random_f_perp(rng, size: int = 3) -> tuple:
    f = picard.anticanonical_f()
    while True:
        u = tuple(rng.randint(-size, size) for _ in range(10))
        # project to f-perp: u.f = 0 by adjusting e_9
        k = picard.dot(u, f)
        u = u[:9] + (u[9] + k,)
        if picard.dot(u, f) == 0:
            return u


def eichler_siegel_cases(rng, cases: int) -> dict:
    f = picard.anticanonical_f()
    bad = {"isometry": 0, "fixes_f": 0, "lift": 0, "additive": 0}
    for _ in range(cases):
        u, v = _random_f_perp(rng), _random_f_perp(rng)
        c = tuple(rng.randint(-5, 5) for _ in range(10))
        d = tuple(rng.randint(-5, 5) for _ in range(10))
        tc, td = picard.eichler_siegel(u, c), picard.eichler_siegel(u, d)
        bad["isometry"] += picard.dot(tc, td) != picard.dot(c, d)
        bad["fixes_f"] += picard.eichler_siegel(u, f) != f
        k = rng.randint(-3, 3)
        bad["lift"] += picard.eichler_siegel(picard.add(u, picard.scale(k, f)), c) != tc
        uv = picard.add(u, v)
        bad["additive"] += picard.eichler_siegel(u, picard.eichler_siegel(v, c)) != picard.eichler_siegel(uv, c)
    return bad


def check_eichler_siegel(rng):
    bad = eichler_siegel_cases(rng, 200)
    return not any(bad.values()), {"cases": 200, "failures": bad}


def random_admissible_pair(rng, size: int = 2) -> tuple:
    """Random u, v in e-perp of Lambda, where e is the isotropic frame vector."""
    big = standard_lattice("Lambda")

    def rnd():
        c = [Eis(rng.randint(-size, size), rng.randint(-size, size)) for _ in range(9)]
        return big.vector(c + [ZERO])

    return rnd(), rnd()


def heisenberg_cases(rng, cases: int) -> dict:
    from .unitary import _matmul, heisenberg_matrix, preserves_form

    big = standard_lattice("Lambda")
    e = big.basis_vector(classify.E_INDEX)
    bad = {"unitarity": 0, "composition": 0}
    for _ in range(cases):
        u, v = random_admissible_pair(rng)
        mu = heisenberg_matrix(big, e.coords, u.coords)
        mv = heisenberg_matrix(big, e.coords, v.coords)
        half = phi(v, u) / 2
        w = [a + b + half * c for a, b, c in zip(u.coords, v.coords, e.coords)]
        mw = heisenberg_matrix(big, e.coords, w)
        bad["unitarity"] += not (preserves_form(big.gram, mu) and preserves_form(big.gram, mv))
        bad["composition"] += _matmul(mu, mv) != mw
    return bad


def check_heisenberg(rng):
    bad = heisenberg_cases(rng, 100)
    return not any(bad.values()), {"cases": 100, "failures": bad}


def check_git(rng):
    X, Y = weierstrass.linear_form(1, 0), weierstrass.linear_form(0, 1)
    ds = weierstrass.DivisorStability
    ps = weierstrass.PairStability
    got = {
        "(1^12)": weierstrass.divisor_stability((1,) * 12),
        "(6,6)": weierstrass.divisor_stability((6, 6)),
        "(7,1,1,1,1,1)": weierstrass.divisor_stability((7, 1, 1, 1, 1, 1)),
        "(X^4,Y^6)": weierstrass.pair_stability(X ** 4, Y ** 6),
        "((XY)^2,(XY)^3)": weierstrass.pair_stability((X * Y) ** 2, (X * Y) ** 3),
        "(X^3Y,X^5Y)": weierstrass.pair_stability(X ** 3 * Y, X ** 5 * Y),
    }
    want = {
        "(1^12)": ds.STABLE,
        "(6,6)": ds.MINIMAL_STRICTLY_SEMISTABLE,
        "(7,1,1,1,1,1)": ds.UNSTABLE,
        "(X^4,Y^6)": ps.STABLE,
        "((XY)^2,(XY)^3)": ps.SEMISTABLE_NOT_STABLE,
        "(X^3Y,X^5Y)": ps.UNSTABLE,
    }
    js = {
        (0, 1): weierstrass.minimal_ss_j_invariant(0, 1),
        (1, 0): weierstrass.minimal_ss_j_invariant(1, 0),
        (-1, 1): weierstrass.minimal_ss_j_invariant(-1, 1),
    }
    ok = got == want and js == {(0, 1): (0, 1), (1, 0): (1, 1), (-1, 1): (1, 0)}
    witness = {k: v.name.lower() for k, v in got.items()}
    witness["j"] = {str(k): [str(x) for x in v] for k, v in js.items()}
    return ok, witness


def check_kodaira_table(rng):
    triples = kodaira.valid_triples(12)
    roundtrip = all(kodaira.euler_char(kodaira.kodaira_type(j, d, x)) == x for j, d, x in triples)
    # totality: every (j, d) has exactly two valid Euler numbers in 0..22
    total = True
    for j in kodaira.J_CLASSES:
        for d in ([0] if j == "generic" else range(1, 13)):
            ok_x = []
            for x in range(0, 23):
                try:
                    kodaira.kodaira_type(j, d, x)
                    ok_x.append(x)
                except kodaira.InconsistentFiber:
                    pass
            total = total and len(ok_x) == 2
    return roundtrip and total, {"valid_triples": len(triples), "roundtrip": roundtrip, "total": total}


def check_kodaira_enumeration(rng):
    K = kodaira.KodairaType
    configs = kodaira.enumerate_configurations()
    names = {c.types for c in configs}
    twelve = tuple([kodaira.I(1)] * 12)
    i9 = tuple(sorted([kodaira.I(9)] + [kodaira.I(1)] * 3))
    no_i10 = not any(kodaira.I(10) in c.types for c in configs)
    rank_ok = all(c.root_rank <= 8 for c in configs)
    revalid = all(kodaira.check_configuration(c.types)[0] for c in configs)
    ok = twelve in names and i9 in names and no_i10 and rank_ok and revalid and len(names) == len(configs)
    ok = ok and tuple(sorted([K("II")] + [kodaira.I(1)] * 10)) in names
    return ok, {"configurations": len(configs), "no_I10": no_i10, "root_rank_ok": rank_ok}


CHECKS = [
    Check("ring.units", "the Eisenstein ring has six units and theta^2 = -3", check_ring),
    Check("lattice.invariants", "Lambda^k discriminants and signatures; Lambda^10 is the frame lattice Lambda", check_lattice_invariants),
    Check("shortvec.counts", "Lambda^4 has 240 3-vectors and 2160 6-vectors", check_short_vectors),
    Check("group.order", "U(Lambda^4) has order 155520 and maps onto Sp(4,3) with kernel mu_3", check_group_order, heavy=True),
    Check("group.transitivity", "U(Lambda^4) is transitive on 3-vectors and on 6-vectors", check_transitivity, heavy=True),
    Check("classify.decompositions", "each 6-vector splits as r + r' in three theta ways and four perpendicular ways", check_decompositions),
    Check("classify.flags", "6-vectors map 3-to-1 onto the 720 flags of F_3^4", check_flags),
    Check("classify.census", "3-vector/6-vector pairs fall into five classes matching F_3 line positions", check_census, heavy=True),
    Check("classify.rank2", "rank-2 types 6, 9, 15, 18 of spans with a 6-vector", check_rank2_types),
    Check("classify.dclass", "ranks of I(6)/I and I(9)/I for the two isotropic types", check_dclass),
    Check("classify.span-types", "spans of z_o with 3-vectors of d-invariant 6 and 9 realize the five model pairs", check_span_types),
    Check("pham.gram", "the Pham module is Lambda^10 after unit rescaling", check_pham_gram),
    Check("pham.braid", "monodromy triflections satisfy the braid relations, R = w eta, R* = eta^-1", check_braid),
    Check("pham.integral-monodromy", "integral monodromy T satisfies T^6 = 1 and T^3 != 1 on the rank-50 module", check_integral_monodromy),
    Check("pham.eisenstein", "the alternating sum of eta^i is 2 theta z with z a 6-vector; l0 is isotropic", check_eisenstein),
    Check("picard.cartan", "simple roots of I_{1,9} form an affine E8 diagram", check_picard_cartan),
    Check("picard.eichler-siegel", "Eichler-Siegel maps are isometries fixing f, lift independent and additive", check_eichler_siegel),
    Check("unitary.heisenberg", "Heisenberg transvections are unitary and compose by the Heisenberg law", check_heisenberg),
    Check("git.stability", "GIT stability of degree-12 divisors and Weierstrass pairs", check_git),
    Check("kodaira.table", "Kodaira type lookup is total and inverse to the Euler number", check_kodaira_table),
    Check("kodaira.enumerate", "candidate fiber configurations obey the Euler, J-degree and E8 rank constraints", check_kodaira_enumeration),
]


def run_checks(only=None, skip_heavy: bool = False, seed: int = 0) -> Report:
    ids = [c.id for c in CHECKS]
    if len(set(ids)) != len(ids):
        raise AssertionError("duplicate check ids")
    if only:
        unknown = set(only) - set(ids)
        if unknown:
            raise ValueError(f"unknown check ids: {sorted(unknown)}")
    report = Report()
    for c in CHECKS:
        if only and c.id not in only:
            continue
        if skip_heavy and c.heavy and not only:
            continue
        rng = random.Random(f"{seed}:{c.id}")
        t0 = time.perf_counter()
        try:
            passed, witness = c.run(rng)
        except Exception as exc:  # a crash counts as a failed check
            passed, witness = False, {"error": f"{type(exc).__name__}: {exc}"}
        report.results.append(CheckResult(c.id, c.claim, bool(passed), _jsonable(witness), time.perf_counter() - t0))
    return report
