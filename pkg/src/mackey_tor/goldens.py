"""Reduced differentials as written down by hand, for golden comparisons.

Each table maps homological degree k to {generator: {target label: coeff}},
with labels in the notation of ``FreeRModule.format_label``: ``a0`` and
``t*a0`` at the fixed level of a G-generator, ``T(w)`` for the transfer of an
e-generator, ``R(a1)`` for a restriction and ``d0^(1)`` for a conjugate.
Nothing here is computed from a resolution.
"""

import json
from pathlib import Path

from .rings import GREEN, TAMBARA

GOLDEN_DIR = Path(__file__).with_name("data")


def _tp(name, p):
    return {f"t*{name}": 1, name: -p}


def c2_green_reduced(D):
    """The C_2 list; families are cut off at internal degree D."""
    p = 2
    js = [j for j in range(D + 1) if p * (j + 1) <= D]
    dj = [j for j in range(D + 1) if p * (j + 2) <= D]
    zij = [(i, j) for i in range(D + 1) for j in dj if p * (i + j + 2) <= D]
    out = {1: {"z": {}}, 2: {"w": {}}}
    out[3] = {f"a{j}": ({"T(w)": 1} if j == 0 else {}) for j in js}
    out[4] = {f"b{j}": _tp(f"a{j}", p) for j in js}
    out[4].update({f"delta{j}": {f"R(a{j + 1})": -1} for j in dj})
    out[5] = {f"d{j}": {f"R(b{j})": 1} for j in js}
    out[5].update({f"eps{j}": {f"delta{j}^(0)": 1, f"delta{j}^(1)": -1} for j in dj})
    out[6] = {f"f{j}": {f"d{j}^(0)": 1, f"d{j}^(1)": -1} for j in js}
    out[6].update({f"zeta{i}_{j}": ({f"T(eps{j})": 1} if i == 0 else {}) for i, j in zij})
    return out


def tambara_reduced(p):
    return {
        1: {"z": {}, "w": {}},
        2: {"a": {}, "b": {"R(w)": 1}},
        3: {"c": {"R(a)": -1}, "d": {"b^(0)": 1, "b^(1)": -1}},
        4: {"h": {"T(d)": 1}, "f": {"c^(0)": 1, "c^(1)": -1}},
        5: {"m": {"T(f)": 1}, "s": {}, "delta": _tp("h", p)},
        6: {"u": {}, "xi": {"R(s)": 1}, "v": {k: -c for k, c in _tp("m", p).items()},
            "zeta": {"R(delta)": 1}, "theta": _tp("s", p)},
        7: {"alpha": {"R(u)": 1}, "alpha_bar": {"R(v)": 1},
            "beta": {"xi^(0)": 1, "xi^(1)": -1}, "beta_bar": {"zeta^(0)": 1, "zeta^(1)": -1},
            "eps": _tp("u", p), "omega": {"R(theta)": 1}},
    }


def listed_reduced(flavor, p, D):
    if flavor == GREEN and p == 2:
        return c2_green_reduced(D)
    if flavor == TAMBARA:
        return tambara_reduced(p)
    raise ValueError("no hand-written list for this flavor and prime")


# -- files ------------------------------------------------------------------------

GOLDEN_CASES = ((GREEN, 2, 14), (TAMBARA, 2, 14), (TAMBARA, 3, 16))


def golden_filename(flavor, p, D):
    return f"reduced-{flavor}-p{p}-D{D}.json"


def dump_golden(flavor, p, D):
    table = listed_reduced(flavor, p, D)
    data = {"flavor": flavor, "p": p, "max_degree": D,
            "differentials": {str(k): v for k, v in sorted(table.items())}}
    return json.dumps(data, indent=1, sort_keys=True, ensure_ascii=False) + "\n"


def load_golden(path):
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    table = {int(k): v for k, v in data["differentials"].items()}
    return data["flavor"], data["p"], data["max_degree"], table


def golden_diff(machine, expected):
    """[(k, generator, machine image, expected image)] where they disagree."""
    bad = []
    for k in sorted(set(machine) | set(expected)):
        m, e = machine.get(k, {}), expected.get(k, {})
        for g in sorted(set(m) | set(e)):
            if m.get(g) != e.get(g):
                bad.append((k, g, m.get(g), e.get(g)))
    return bad
