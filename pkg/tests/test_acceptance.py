"""Acceptance criteria, one test each, with a PASS/FAIL line per criterion.

The verdict lines are printed as each test runs and repeated in the
"acceptance criteria" section of the pytest terminal summary.  Run alone
with ``pytest tests/test_acceptance.py -v``.
"""

import contextlib
import csv
import io
import math
from fractions import Fraction as F

import numpy as np
import pytest
from acceptance_log import record

from resistor_lattice import (
    Bond,
    BondEdit,
    EditSet,
    FiniteNetwork,
    LatticeKind,
    PerturbedLattice,
    QueryCase,
    Site,
    asymptotic_r0,
    build_factorization,
    get_provider,
    truncate_lattice,
)
from resistor_lattice import fixtures
from resistor_lattice.cli import main as cli_main

SQ, TRI = LatticeKind.SQUARE, LatticeKind.TRIANGULAR
PI = math.pi
SQRT3 = math.sqrt(3.0)


def _cli_rows(*argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli_main([str(a) for a in argv])
    assert code == 0
    return list(csv.DictReader(io.StringIO(buf.getvalue())))


def _table_check(kind, expected):
    rows = _cli_rows("table", kind, 3)
    got = {(int(r["m"]), int(r["n"])): r for r in rows}
    bad = []
    for (m, n), (p, q, s) in expected.items():
        for key in ((m, n), (n, m)):
            r = got[key]
            comps = (F(r["p"]), F(r["q"]), F(r["s"]))
            value = float(p) + float(q) / PI + float(s) * SQRT3 / PI
            if comps != (F(p), F(q), F(s)) or abs(float(r["decimal"]) - value) > 1e-12:
                bad.append(key)
    return len(got), bad


def test_c01_square_table():
    table = {
        (0, 0): (0, 0, 0),
        (0, 1): (F(1, 2), 0, 0),
        (0, 2): (2, -4, 0),
        (0, 3): (F(17, 2), -24, 0),
        (1, 1): (0, 2, 0),
        (1, 2): (F(-1, 2), 4, 0),
        (1, 3): (-4, F(46, 3), 0),
        (2, 2): (0, F(8, 3), 0),
        (2, 3): (F(1, 2), F(4, 3), 0),
        (3, 3): (0, F(46, 15), 0),
    }
    n, bad = _table_check("square", table)
    assert record("C1 square table", n == 16 and not bad, f"{n} entries, mismatches {bad}")


def test_c02_triangular_table():
    table = {
        (0, 0): (0, 0, 0),
        (0, 1): (F(1, 3), 0, 0),
        (0, 2): (F(8, 3), 0, -4),
        (0, 3): (27, 0, -48),
        (1, 1): (F(-2, 3), 0, 2),
        (1, 2): (-5, 0, 10),
        (1, 3): (-70, 0, 128),
        (2, 2): (16, 0, -28),
        (2, 3): (123, 0, -222),
        (3, 3): (-438, 0, F(3978, 5)),
    }
    n, bad = _table_check("triangular", table)
    assert record("C2 triangular table", n == 16 and not bad, f"{n} entries, mismatches {bad}")


def test_c03_four_bond():
    pl = PerturbedLattice(fixtures.four_bond().editset)
    r1 = pl.resistance((1, 0), (1, 1))
    r2 = pl.resistance((1, 0), (0, 1))
    e1 = -(12 - 6 * PI + PI**2) / (2 * (8 - 6 * PI + PI**2))
    e2 = 2 / (PI - 2)
    d = max(abs(r1 - e1), abs(r2 - e2))
    assert record("C3 four-bond", d <= 1e-10, f"R = {r1:.12f}, {r2:.12f}; max dev {d:.1e}")


def test_c04_lake():
    exact = 4 / 3 + 4 / (9 * (4 - PI)) - 64 / (3 * PI) + 4 / (3 * (3 * PI - 4)) + 512 / (9 * PI**2)
    r5 = PerturbedLattice(fixtures.lake5().editset).resistance((0, 2), (3, 0))
    pl7 = PerturbedLattice(fixtures.lake7().editset)
    r7 = pl7.resistance((0, 2), (3, 0))
    d = max(abs(r5 - exact), abs(r7 - exact))
    ok = d <= 1e-10 and len(pl7.working_editset) == 5
    assert record("C4 lake", ok, f"5-bond {r5:.12f}, 7-bond augmented {r7:.12f}; max dev {d:.1e}")


def test_c05_island():
    exact = -36 + 961 / (9 * (8 - PI)) + 2048 / (45 * PI) + 1 / (3 * PI - 8)
    pl = PerturbedLattice(fixtures.island8().editset)
    r = pl.resistance((0, 3), (3, 0))
    d = abs(r - exact)
    ok = d <= 1e-10 and len(pl.restored_bonds) == 1
    assert record("C5 island", ok, f"R = {r:.12f}; dev {d:.1e}")


def test_c06_periodic_chain():
    exact = (9689625 * PI**3 - 76600800 * PI**2 + 172254624 * PI - 85590016) / (
        30 * PI * (37665 * PI**2 - 96528 * PI - 68608)
    )
    perfect = 11073 / 2 - 260848 / (15 * PI)
    pl = PerturbedLattice(fixtures.periodic_chain(4).editset)
    r = pl.resistance((0, 2), (7, 2))
    r0 = pl.perfect_resistance((0, 2), (7, 2))
    d, d0 = abs(r - exact), abs(r0 - perfect)
    ok = d <= 1e-9 and d0 <= 1e-10
    assert record("C6 periodic chain", ok, f"R = {r:.12f} (dev {d:.1e}); perfect {r0:.12f} (dev {d0:.1e})")


def test_c07_triangular_hexagon():
    num = 139968 * SQRT3 - 338256 * PI + 90720 * SQRT3 * PI**2 - 23112 * PI**3 - 660 * SQRT3 * PI**4 + 275 * PI**5
    den = 2 * (-34992 * SQRT3 + 58320 * PI - 7128 * SQRT3 * PI**2 - 1512 * PI**3 + 165 * SQRT3 * PI**4 + 25 * PI**5)
    exact = num / den
    r6 = PerturbedLattice(fixtures.hexagon6().editset).resistance((1, 0), (-1, 0))
    r5 = PerturbedLattice(fixtures.hexagon5().editset).resistance((1, 0), (-1, 0))
    r0 = get_provider(TRI).r0_float((1, 0), (-1, 0))
    d = max(abs(r6 - exact), abs(r5 - exact))
    d0 = abs(r0 - (8 / 3 - 4 * SQRT3 / PI))
    ok = d <= 1e-9 and d0 <= 1e-12
    assert record("C7 triangular hexagon", ok, f"R = {r6:.12f} (dev {d:.1e}); perfect dev {d0:.1e}")


def test_c08_obstacle():
    rows = _cli_rows("sweep", "obstacle_distance", "--start", 0, "--stop", 12)
    vals = [float(r["R"]) for r in rows]
    dmin = vals.index(min(vals))
    ok = abs(vals[0] - 1.9803) <= 5e-4 and dmin == 4
    assert record("C8 obstacle", ok, f"R(0) = {vals[0]:.6f}; minimum at d = {dmin}")


def test_c09_car():
    sc = fixtures.car()
    i, j = sc.queries[0]
    pl = PerturbedLattice(sc.editset)
    r, r0 = pl.resistance(i, j), pl.perfect_resistance(i, j)
    ok = abs(r - 1.5130) <= 5e-4 and abs(r0 - 1.2122) <= 5e-4
    assert record(
        "C9 car", ok, f"R = {r:.6f} (target 1.5130); perfect {r0:.6f} (target 1.2122); edits {len(pl.working_editset)}"
    )


def test_c10_jpa2025():
    sc = fixtures.jpa2025()
    i, j = sc.queries[0]
    pl = PerturbedLattice(sc.editset)
    r, r0 = pl.resistance(i, j), pl.perfect_resistance(i, j)
    n = len(pl.working_editset)
    ok = abs(r - 1.6645) <= 5e-4 and abs(r0 - 1.45186) <= 5e-5 and len(sc.editset) == 84 and n == 81
    assert record(
        "C10 JPA 2025", ok, f"R = {r:.6f} (target 1.6645); perfect {r0:.6f} (target 1.45186); edits 84 -> {n}"
    )


def _sherman_morrison(prov, bond, i, j):
    r = prov.r0_float
    s, e = bond.start, bond.end
    u = lambda x: 0.5 * (r(x, s) - r(x, e))  # noqa: E731
    return r(i, j) + (u(i) - u(j)) ** 2 / (1.0 - r(s, e))


def test_c11_sherman_morrison():
    rng = np.random.default_rng(11)
    worst = 0.0
    for k in range(200):
        kind = SQ if k % 2 == 0 else TRI
        prov = get_provider(kind)
        s = Site(*rng.integers(-5, 6, size=2).tolist())
        dm, dn = kind.offsets[rng.integers(len(kind.offsets))]
        bond = Bond(kind, s, (s.m + dm, s.n + dn))
        fact = build_factorization(prov, EditSet(kind, [BondEdit(bond)]))
        while True:
            i = Site(*rng.integers(-6, 7, size=2).tolist())
            j = Site(*(np.array(i) + rng.integers(-8, 9, size=2)).tolist())
            if i != j and max(abs(j.m - i.m), abs(j.n - i.n)) <= 8:
                break
        worst = max(worst, abs(fact.perturbed_resistance(i, j) - _sherman_morrison(prov, bond, i, j)))
    assert record("C11 Sherman-Morrison", worst <= 1e-12, f"200 cases, max dev {worst:.1e}")


def _random_oracle_case(rng, kind):
    box = 11
    while True:
        n_edits = int(rng.integers(1, 11))
        bonds = {}
        while len(bonds) < n_edits:
            s = Site(*rng.integers(0, box, size=2).tolist())
            dm, dn = kind.offsets[rng.integers(len(kind.offsets))]
            t = (s.m + dm, s.n + dn)
            if 0 <= t[0] < box and 0 <= t[1] < box:
                b = Bond(kind, s, t)
                bonds[b.key] = b
        es = EditSet(kind, [BondEdit(b) for b in bonds.values()])
        pl = PerturbedLattice(es)
        i = Site(*rng.integers(0, box, size=2).tolist())
        j = Site(*rng.integers(0, box, size=2).tolist())
        if i != j and pl.classify(i, j) is QueryCase.INFINITE_BOTH:
            return es, pl, i, j


def test_c12_oracle_equivalence():
    rng = np.random.default_rng(12)
    failures, worst_201 = [], 0.0
    for k in range(20):
        kind = SQ if k < 10 else TRI
        es, pl, i, j = _random_oracle_case(rng, kind)
        rw = pl.resistance(i, j)
        devs = []
        for L in (51, 101, 201):
            net = truncate_lattice(kind, es, (L - 1) // 2, center=(5, 5)).component_of(i)
            devs.append(abs(rw - net.resistance(i, j)))
        worst_201 = max(worst_201, devs[-1])
        if not (devs[0] > devs[1] > devs[2] and devs[2] < 5e-3):
            failures.append((k, devs))
    ok = not failures
    assert record("C12 finite-lattice oracle", ok, f"20 edit sets, max dev at L=201 {worst_201:.2e}; failures {failures}")


def test_c13_property_suites():
    import properties

    outcome = []
    for name, check in properties.ALL_CHECKS.items():
        try:
            check()
            outcome.append((name, True))
        except Exception as exc:  # noqa: BLE001
            outcome.append((name, False))
            print(f"  {name}: {exc!r}")
    failed = [n for n, ok in outcome if not ok]
    n_cases = properties.N_CASES
    detail = f"{len(outcome)} suites x {n_cases} cases; failed: {failed or 'none'}"
    assert record("C13 property suites", not failed, detail)


def test_c14_finite_module():
    tri = FiniteNetwork("abc", [("a", "b", 1), ("b", "c", 1), ("c", "a", 1)])
    cyc = FiniteNetwork(range(4), [(k, (k + 1) % 4, 1.0) for k in range(4)])
    devs = [abs(tri.resistance(u, v) - 2 / 3) for u, v in ("ab", "bc", "ca")]
    devs += [abs(cyc.resistance(0, 1) - 0.75), abs(cyc.resistance(0, 2) - 1.0)]
    rng = np.random.default_rng(14)
    worst_f, worst_pinv = 0.0, 0.0
    for _ in range(100):
        n = int(rng.integers(2, 13))
        edges = [(k, int(rng.integers(0, k)), float(rng.uniform(0.1, 3.0))) for k in range(1, n)]
        for _ in range(int(rng.integers(0, 2 * n))):
            a, b = rng.choice(n, 2, replace=False)
            edges.append((int(a), int(b), float(rng.uniform(0.1, 3.0))))
        net = FiniteNetwork(range(n), edges)
        f = np.ones(n)
        worst_f = max(worst_f, np.abs(net.modified_laplacian() @ f - n * f).max() / n)
        w, V = np.linalg.eigh(-net.laplacian.toarray())
        keep = w > 1e-9 * w.max()
        P = (V[:, keep] / w[keep]) @ V[:, keep].T
        for a in range(n):
            for b in range(n):
                worst_pinv = max(worst_pinv, abs(net.resistance(a, b) - (P[a, a] + P[b, b] - 2 * P[a, b])))
    ok = max(devs) <= 1e-12 and worst_f <= 1e-12 and worst_pinv <= 1e-10
    detail = f"small nets dev {max(devs):.1e}; L'f rel dev {worst_f:.1e}; pseudoinverse dev {worst_pinv:.1e}"
    assert record("C14 finite module", ok, detail)


def test_c15_asymptotic():
    prov = get_provider(SQ)
    pts = [(m, 0) for m in range(5, 31)] + [(0, m) for m in range(5, 31)]
    pts += [(n, n) for n in range(1, 22) if 5 <= n * math.sqrt(2) <= 30]
    worst = max(abs(prov(m, n) - asymptotic_r0(m, n)) for m, n in pts)
    assert record("C15 asymptotic formula", worst <= 2e-3, f"{len(pts)} points, max dev {worst:.2e}")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
