"""The end-to-end check suite behind ``mackey-tor selftest`` and the acceptance tests.

Every check returns a ``CheckResult``; none of them raises on a mismatch.
"""

import random
import time
from dataclasses import dataclass, field
from pathlib import Path

from .checks import (
    burnside_norm_failures,
    golden_report,
    koszul_report,
    resolution_report,
    ring_axiom_failures,
)
from .goldens import GOLDEN_CASES, GOLDEN_DIR, golden_filename, load_golden
from .linalg import IntegerMatrix, homology, kernel_basis, smith_normal_form
from .resolutions import (
    ResolutionSpec,
    build_resolution,
    discover_tail_shifts,
    tail_rank_mismatches,
)
from .rings import GREEN, TAMBARA, burnside, free_green_underlying, free_tambara_fixed
from .tor import compute_tor, oracle_mismatches, rank_growth_report


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""
    seconds: float = 0.0
    data: dict = field(default_factory=dict)

    def line(self):
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name} ({self.seconds:.1f}s) {self.detail}".rstrip()


def _timed(name, fn):
    t = time.perf_counter()
    ok, detail, data = fn()
    return CheckResult(name, ok, detail, time.perf_counter() - t, data)


_cache = {}


def tor_table(flavor, p, D, N, jobs=1):
    key = (flavor, p, D, N)
    if key not in _cache:
        _cache[key] = compute_tor(flavor, p, D, N, jobs=jobs)
    return _cache[key]


def _mismatch_text(bad, limit=4):
    parts = [f"(i={i}, d={d}) got {got} want {want or 0}" for i, d, got, want in bad[:limit]]
    more = f" (+{len(bad) - limit} more)" if len(bad) > limit else ""
    return "; ".join(parts) + more


# -- Tor tables -----------------------------------------------------------------------

def green_p2_table(D=14, N=10, jobs=1):
    def run():
        T = tor_table(GREEN, 2, D, N, jobs)
        bad = oracle_mismatches(T)
        axioms = T.axiom_failures()
        ok = not bad and not axioms
        detail = "all cells match" if ok else _mismatch_text(bad)
        return ok, detail, {"mismatches": bad}
    return _timed(f"green p=2 Tor table (D={D}, N={N})", run)


def green_p3_table(D=12, N=8, jobs=1):
    def run():
        T = tor_table(GREEN, 3, D, N, jobs)
        bad = oracle_mismatches(T)
        ok = not bad and not T.axiom_failures()
        detail = "all cells match" if ok else _mismatch_text(bad)
        return ok, detail, {"mismatches": bad}
    return _timed(f"green p=3 Tor table (D={D}, N={N})", run)


def tambara_table(p, N=13, jobs=1):
    D = 2 * p + 10

    def run():
        T = tor_table(TAMBARA, p, D, N, jobs)
        bad = oracle_mismatches(T)
        report = rank_growth_report(T)
        resid = report["recursion_residual"]
        ok = not bad and not any(resid.values()) and not T.axiom_failures()
        ranks = report["ranks"]
        detail = (f"ranks {[ranks[i] for i in range(N + 1)]}; "
                  f"r_i - 2r_(i-4) - r_(i-5) = {[resid[i] for i in sorted(resid)]}")
        if bad:
            detail = _mismatch_text(bad) + "; " + detail
        return ok, detail, {"mismatches": bad, "ranks": ranks, "residual": resid}
    return _timed(f"tambara p={p} Tor table (D={D}, N={N})", run)


# -- golden differentials --------------------------------------------------------------

def golden_differentials(golden_dir=None):
    folder = Path(golden_dir) if golden_dir else GOLDEN_DIR

    def run():
        failures = []
        for flavor, p, D in GOLDEN_CASES:
            path = folder / golden_filename(flavor, p, D)
            try:
                fl, pp, DD, expected = load_golden(path)
            except (OSError, ValueError, KeyError) as exc:
                failures.append(f"{path.name}: unreadable ({exc.__class__.__name__})")
                continue
            res = build_resolution(ResolutionSpec(fl, pp, DD, 8))
            bad = golden_report(res, expected)
            if bad:
                k, g, got, want = bad[0]
                failures.append(f"{path.name}: k={k} {g}: got {got} want {want}"
                                + (f" (+{len(bad) - 1} more)" if len(bad) > 1 else ""))
        return not failures, "; ".join(failures) or "all listed differentials reproduced", {}
    return _timed("golden reduced differentials", run)


# -- resolutions --------------------------------------------------------------------

def resolution_validity(cases):
    def run():
        problems = []
        for flavor, p, D, N in cases:
            res = tor_table(flavor, p, D, N).resolution
            rep = resolution_report(res)
            if rep["d_squared"]:
                problems.append(f"{flavor} p={p}: d^2 != 0 at {rep['d_squared']}")
            if rep["exactness"]:
                problems.append(f"{flavor} p={p}: homology in degrees {sorted(rep['exactness'])}")
            T = tor_table(flavor, p, D, N)
            h0 = T.identifications
            if any(h0[(0, d)].describe() != ("A ×1" if d == 0 else "0") for d in range(D + 1)):
                problems.append(f"{flavor} p={p}: H_0 is not A")
        return not problems, "; ".join(problems) or f"{len(cases)} resolutions exact, d^2 = 0", {}
    return _timed("resolution validity", run)


def koszul_identities(primes=(3, 5)):
    def run():
        bad, data = [], {}
        for p in primes:
            rep = koszul_report(p)
            data[p] = rep
            for key in ("kernel_element_is_cycle", "equals_res_of_transfer", "orbit_counts_ok",
                        "classical_ranks_ok"):
                if not rep[key]:
                    bad.append(f"p={p}: {key}")
        sizes = "; ".join(f"p={p}: |I_n| = {list(data[p]['orbit_counts'].values())}" for p in primes)
        return not bad, ", ".join(bad) or sizes, data
    return _timed("Koszul identities", run)


def axiom_suites(primes=(2, 3, 5), bound=10):
    def run():
        bad = []
        for p in primes:
            if burnside_norm_failures(p, bound):
                bad.append(f"Burnside norm p={p}")
            for ring, deg in ((burnside(p), 0), (free_green_underlying(p, 6), 4 if p < 5 else 3),
                              (free_tambara_fixed(p, 2 * p + 2), 2 * p + 1)):
                fails = ring_axiom_failures(ring, deg)
                if fails:
                    bad.append(f"{ring!r}: {fails[0][0]}")
        return not bad, ", ".join(bad) or f"zero failures for p in {list(primes)}", {}
    return _timed("axiom suites", run)


def _random_unimodular(n, rng, steps=12):
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        q = rng.randint(-3, 3)
        rows[i] = [a + q * b for a, b in zip(rows[i], rows[j])]
    if n and rng.random() < 0.5:
        k = rng.randrange(n)
        rows[k] = [-a for a in rows[k]]
    return IntegerMatrix(rows, n, n)


def linear_algebra_oracle(count=500, seed=20241016):
    def run():
        rng = random.Random(seed)
        bad = 0
        for _ in range(count):
            m, n = rng.randint(0, 8), rng.randint(0, 8)
            M = IntegerMatrix([[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)], m, n)
            U, D, V = smith_normal_form(M)
            diag = [D[i, i] for i in range(min(m, n))]
            off = any(D[i, j] for i in range(m) for j in range(n) if i != j)
            divides = all(diag[i + 1] % diag[i] == 0 if diag[i] else diag[i + 1] == 0
                          for i in range(len(diag) - 1))
            if (U @ M @ V != D or off or not divides or any(x < 0 for x in diag)
                    or abs(U.det()) != 1 or abs(V.det()) != 1):
                bad += 1
                continue
            # a complex Z^a -> Z^n -> Z^m with d_out = M and d_in built from ker M
            K = kernel_basis(M)
            a = rng.randint(0, 4)
            X = IntegerMatrix([[rng.randint(-3, 3) for _ in range(a)] for _ in range(K.ncols)],
                              K.ncols, a)
            d_in = K @ X
            inv, _ = homology(d_in, M)
            P = _random_unimodular(n, rng)
            Q = _random_unimodular(m, rng)
            R = _random_unimodular(a, rng)
            Pinv = smith_inverse(P)
            inv2, _ = homology(P @ d_in @ R, Q @ M @ Pinv)
            if inv != inv2:
                bad += 1
        return bad == 0, f"{count} random matrices, {bad} failures", {"failures": bad}
    return _timed("linear algebra oracle", run)


def smith_inverse(P):
    """Inverse of a unimodular matrix."""
    from .linalg import smith_normal_form_with_inverse

    U, _, D, V = smith_normal_form_with_inverse(P)
    # U P V = D = diag(+-1), so P^-1 = V D U
    return V @ D @ U


def tail_cross_check():
    def run():
        res_g = tor_table(GREEN, 2, 14, 10).resolution
        res_t2 = tor_table(TAMBARA, 2, 14, 13).resolution
        res_t3 = tor_table(TAMBARA, 3, 16, 13).resolution
        uniform = tail_rank_mismatches(res_g, (0, 0))
        found_g = discover_tail_shifts(res_g)
        found_t = {2: discover_tail_shifts(res_t2), 3: discover_tail_shifts(res_t3)}
        tam_ok = all(found_t[p] for p in found_t)
        ok = not uniform and tam_ok
        detail = (f"green p=2 uniform shift 2i: {len(uniform)} rank mismatches"
                  + (f" (first: k={uniform[0][0]} {uniform[0][1]}@{uniform[0][2]} "
                     f"built {uniform[0][3]} predicted {uniform[0][4]})" if uniform else "")
                  + f"; shifts that match (F_(k-4), F_(k-3)): {found_g}"
                  + f"; tambara shifts (F_(k-4), F_(k-4), F_(k-5)): {found_t}")
        return ok, detail, {"uniform": uniform, "green": found_g, "tambara": found_t}
    return _timed("tail recursions", run)


def run_all(quick=False, golden_dir=None, jobs=1, log=None):
    results = []

    def add(r):
        results.append(r)
        if log:
            log(r.line())

    add(green_p2_table(jobs=jobs))
    if not quick:
        add(green_p3_table(jobs=jobs))
    add(tambara_table(2, jobs=jobs))
    if not quick:
        add(tambara_table(3, jobs=jobs))
    add(golden_differentials(golden_dir))
    cases = [(GREEN, 2, 14, 10), (TAMBARA, 2, 14, 13)]
    if not quick:
        cases += [(GREEN, 3, 12, 8), (TAMBARA, 3, 16, 13)]
    add(resolution_validity(cases))
    if not quick:
        add(koszul_identities())
    add(axiom_suites(primes=(2,) if quick else (2, 3, 5)))
    add(linear_algebra_oracle(100 if quick else 500))
    if not quick:
        add(tail_cross_check())
    return results
